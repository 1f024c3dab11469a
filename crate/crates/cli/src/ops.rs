//! Request and response shapes shared by the command line and the HTTP
//! service. Every operation is a pure function of its request.

use std::time::Instant;

use blockade_core::lb::{construction_instance, Construction, DEFAULT_CELL_CAP};
use blockade_core::perturb::{all_polys, certify_epsilon_with, CertifyOptions};
use blockade_core::rational::{self, Rational};
use blockade_core::{
    best_bound, blocks, build_alt_3k, build_c0, build_c0_prime, build_p0, delaunay_edges, greedy_cover_solve, perturb,
    witness_interval, BlockingInstance, Certificate, CircleFamily, EpsilonCertificate, Error, PointSet, Result,
    SolveResult, SolverConfig, TauPolynomial, Verdict, WitnessInterval,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `"auto"` or absent means "certify one"; anything else must be a rational.
pub fn parse_tau(tau: Option<&str>) -> Result<Option<Rational>> {
    match tau {
        None | Some("auto") => Ok(None),
        Some(s) => {
            let t = rational::parse(s)?;
            if t <= Rational::from_integer(0.into()) {
                return Err(Error::InvalidInput(format!("tau must be positive, got {s}")));
            }
            Ok(Some(t))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DelaunayOutput {
    pub edges: Vec<(usize, usize)>,
    pub intervals: Vec<WitnessInterval>,
}

pub fn delaunay(set: &PointSet) -> Result<DelaunayOutput> {
    let edges = delaunay_edges(set)?;
    let intervals = edges.iter().map(|&(i, j)| witness_interval(set, i, j)).collect::<Result<_>>()?;
    Ok(DelaunayOutput { edges, intervals })
}

pub fn blocking(inst: &BlockingInstance) -> Result<Verdict> {
    blocks(inst)
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConstructRequest {
    pub kind: String,
    pub k: i64,
    #[serde(default)]
    pub tau: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructOutput {
    pub kind: String,
    pub k: i64,
    #[serde(with = "rational::serde_opt_rat", skip_serializing_if = "Option::is_none")]
    pub tau: Option<Rational>,
    #[serde(flatten)]
    pub set: PointSet,
    #[serde(flatten)]
    pub family: CircleFamily,
}

pub fn construct(req: &ConstructRequest, deadline: Option<Instant>) -> Result<ConstructOutput> {
    let tau = parse_tau(req.tau.as_deref())?;
    let (kind, set, family, tau) = match req.kind.as_str() {
        "p0" | "collinear" => {
            let (ps, gs) = build_p0(req.k)?;
            ("p0", ps, build_c0(&gs)?, None)
        }
        "c0prime" | "general" => {
            if req.k < 2 {
                return Err(Error::InvalidK(req.k));
            }
            let tau = match tau {
                Some(t) => t,
                None => epsilon(req.k, None, deadline)?.tau_star,
            };
            let (_, gs) = build_p0(req.k)?;
            let fam = build_c0_prime(&gs, &tau)?;
            ("c0prime", perturb(&gs, &tau)?.points, fam, Some(tau))
        }
        "alt3k" => {
            let (ps, fam) = build_alt_3k(req.k)?;
            ("alt3k", ps, fam, None)
        }
        other => return Err(Error::InvalidInput(format!("unknown construction kind {other:?}"))),
    };
    Ok(ConstructOutput { kind: kind.into(), k: req.k, tau, set, family })
}

fn epsilon(k: i64, resume: Option<Rational>, deadline: Option<Instant>) -> Result<EpsilonCertificate> {
    let opts = CertifyOptions { deadline, resume_tau: resume, ..CertifyOptions::default() };
    certify_epsilon_with(k, &opts)
}

#[derive(Debug, Clone, Deserialize)]
pub struct CertifyEpsilonRequest {
    pub k: i64,
    #[serde(default)]
    pub resume_tau: Option<String>,
    #[serde(default)]
    pub emit_polys: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpsilonOutput {
    #[serde(flatten)]
    pub certificate: EpsilonCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<TauPolynomial>>,
}

pub fn certify_epsilon(req: &CertifyEpsilonRequest, deadline: Option<Instant>) -> Result<EpsilonOutput> {
    let resume = req.resume_tau.as_deref().map(rational::parse).transpose()?;
    let certificate = epsilon(req.k, resume, deadline)?;
    let polys = if req.emit_polys {
        let (_, gs) = build_p0(req.k)?;
        Some(all_polys(&gs))
    } else {
        None
    };
    Ok(EpsilonOutput { certificate, polys })
}

#[derive(Debug, Clone, Deserialize)]
pub struct CertifyLbRequest {
    pub construction: Construction,
    pub k: i64,
    #[serde(default)]
    pub tau: Option<String>,
    #[serde(default)]
    pub explain: bool,
}

pub fn certify_lb_certificate(req: &CertifyLbRequest, deadline: Option<Instant>) -> Result<Certificate> {
    let mut tau = parse_tau(req.tau.as_deref())?;
    if req.construction == Construction::General && tau.is_none() {
        if req.k < 2 {
            return Err(Error::InvalidK(req.k));
        }
        tau = Some(epsilon(req.k, None, deadline)?.tau_star);
    }
    let (ps, fam, tau) = construction_instance(req.construction, req.k, tau)?;
    let mut cert = best_bound(&ps, &fam, DEFAULT_CELL_CAP)?;
    cert.tau = tau;
    Ok(cert)
}

/// The certificate as JSON; without `explain` the per-group reports, the
/// overlap graph and the cell hypergraph are left out.
pub fn certify_lb(req: &CertifyLbRequest, deadline: Option<Instant>) -> Result<Value> {
    let cert = certify_lb_certificate(req, deadline)?;
    let mut v = serde_json::to_value(&cert).map_err(|e| Error::InvalidInput(e.to_string()))?;
    if !req.explain {
        if let Some(obj) = v.as_object_mut() {
            for key in ["groups", "overlaps", "hypergraph"] {
                obj.remove(key);
            }
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, Deserialize)]
pub struct SolveRequest {
    #[serde(rename = "P")]
    pub p: PointSet,
    #[serde(default)]
    pub config: SolverConfig,
}

pub fn solve(req: &SolveRequest) -> Result<SolveResult> {
    greedy_cover_solve(&req.p, &req.config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_parsing() {
        assert_eq!(parse_tau(Some("auto")).unwrap(), None);
        assert_eq!(parse_tau(Some("1/4096")).unwrap(), Some(rational::rat(1, 4096)));
        assert!(parse_tau(Some("-1/2")).is_err());
        assert!(parse_tau(Some("x")).is_err());
    }

    #[test]
    fn p0_output_is_a_point_set() {
        let out = construct(&ConstructRequest { kind: "p0".into(), k: 1, tau: None }, None).unwrap();
        let v = serde_json::to_value(&out).unwrap();
        assert_eq!(v["points"][0]["x"], "9/1");
        assert_eq!(v["circles"].as_array().unwrap().len(), 4);
        let back: PointSet = serde_json::from_value(v).unwrap();
        assert_eq!(back, out.set);
    }

    #[test]
    fn unknown_kind() {
        let r = construct(&ConstructRequest { kind: "hexagon".into(), k: 1, tau: None }, None);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn explain_toggles_detail() {
        let req = CertifyLbRequest { construction: Construction::Collinear, k: 1, tau: None, explain: false };
        let v = certify_lb(&req, None).unwrap();
        assert_eq!(v["bound"], 2);
        assert!(v.get("groups").is_none());
        let v = certify_lb(&CertifyLbRequest { explain: true, ..req }, None).unwrap();
        assert!(v["groups"].is_array() && v["overlaps"].is_array());
    }
}
