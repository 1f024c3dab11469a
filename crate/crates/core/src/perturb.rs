//! Certified choice of the perturbation parameter.
//!
//! Under the map `y ↦ y + σ·τ·x³` (σ = +1 bottom, −1 top) every orientation
//! determinant becomes a polynomial of degree ≤ 1 in τ and every
//! cocircularity determinant one of degree ≤ 3. A rational τ below every
//! positive root of all of them puts the point set in general position;
//! the remaining conditions (convexity, empty circles, overlap structure,
//! hull containment of the F1/F3 and G1/G3 crossings) are checked exactly at
//! the chosen τ, halving until they hold.

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::construct::{build_c0_prime, build_p0, perturb, CircleFamily, Gadget, Role};
use crate::delaunay::PointSet;
use crate::error::{Error, Result};
use crate::geom::{circle_intersections, orient, ExactPoint, Sign, SqrtPoint};
use crate::hull::{convex_hull, in_convex_position};
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::region::is_realizable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyKind {
    Collinearity,
    Cocircularity,
}

/// `A + Bτ + Cτ² + Dτ³` attached to a tuple of point indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauPolynomial {
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: [Rational; 4],
    pub kind: PolyKind,
    pub witness: Vec<usize>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[Rational; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(4))?;
    for r in c {
        seq.serialize_element(&rational::format(r))?;
    }
    seq.end()
}

impl TauPolynomial {
    pub fn eval(&self, tau: &Rational) -> Rational {
        self.to_poly().eval(tau)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.to_vec())
    }

    pub fn is_identically_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn witness_label(&self) -> String {
        let ids: Vec<String> = self.witness.iter().map(|i| i.to_string()).collect();
        format!("{:?}({})", self.kind, ids.join(","))
    }
}

/// A point together with its perturbation direction.
#[derive(Debug, Clone)]
pub struct TauPoint {
    pub index: usize,
    pub point: ExactPoint,
    pub sigma: i8,
}

impl TauPoint {
    fn s(&self) -> Rational {
        let x = &self.point.x;
        rational::int(self.sigma as i64) * x * x * x
    }

    pub fn at(&self, tau: &Rational) -> ExactPoint {
        ExactPoint::new(self.point.x.clone(), &self.point.y + tau * self.s())
    }
}

/// `det` of the 3×3 matrix with rows `1`, `x`, `z`.
fn det3(x: [&Rational; 3], z: [&Rational; 3]) -> Rational {
    (x[1] - x[0]) * (z[2] - z[0]) - (x[2] - x[0]) * (z[1] - z[0])
}

/// Determinant of a square matrix by fraction-producing elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let piv = m[c][c].clone();
        acc *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for j in c..n {
                let v = &f * &m[c][j];
                m[r][j] -= v;
            }
        }
    }
    acc
}

/// 4×4 determinant whose rows are `1`, `x` and the two given rows.
fn det4(x: &[Rational; 4], r3: &[Rational; 4], r4: &[Rational; 4]) -> Rational {
    det(vec![vec![Rational::one(); 4], x.to_vec(), r3.to_vec(), r4.to_vec()])
}

pub fn collinearity_poly(p: &TauPoint, q: &TauPoint, r: &TauPoint) -> TauPolynomial {
    let x = [&p.point.x, &q.point.x, &r.point.x];
    let a = det3(x, [&p.point.y, &q.point.y, &r.point.y]);
    let (sp, sq, sr) = (p.s(), q.s(), r.s());
    let b = det3(x, [&sp, &sq, &sr]);
    TauPolynomial {
        coeffs: [a, b, Rational::zero(), Rational::zero()],
        kind: PolyKind::Collinearity,
        witness: vec![p.index, q.index, r.index],
    }
}

/// Cocircularity determinant with rows `1, x, y + τs, x² + (y + τs)²`,
/// expanded by multilinearity in its last two rows.
pub fn cocircularity_poly(p: &TauPoint, q: &TauPoint, r: &TauPoint, s: &TauPoint) -> TauPolynomial {
    let pts = [p, q, r, s];
    let x: [Rational; 4] = pts.map(|t| t.point.x.clone());
    let y: [Rational; 4] = pts.map(|t| t.point.y.clone());
    let sv: [Rational; 4] = pts.map(|t| t.s());
    let lift: [Rational; 4] = std::array::from_fn(|i| &x[i] * &x[i] + &y[i] * &y[i]);
    let two_ys: [Rational; 4] = std::array::from_fn(|i| rational::int(2) * &y[i] * &sv[i]);
    let s2: [Rational; 4] = std::array::from_fn(|i| &sv[i] * &sv[i]);

    let a = det4(&x, &y, &lift);
    let b = det4(&x, &sv, &lift) + det4(&x, &y, &two_ys);
    let c = det4(&x, &sv, &two_ys) + det4(&x, &y, &s2);
    let d = det4(&x, &sv, &s2);
    TauPolynomial {
        coeffs: [a, b, c, d],
        kind: PolyKind::Cocircularity,
        witness: pts.iter().map(|t| t.index).collect(),
    }
}

/// A rational `b ∈ (0, 1]` strictly below every positive root of every
/// polynomial.
pub fn positive_root_bound(polys: &[TauPolynomial]) -> Result<Rational> {
    let one = Rational::one();
    let mut b = one.clone();
    for tp in polys {
        if tp.is_identically_zero() {
            return Err(Error::IdenticallyZero(tp.witness_label()));
        }
        let g = tp.to_poly().positive_root_gap(&one).expect("nonzero polynomial");
        if g < b {
            b = g;
        }
    }
    Ok(b)
}

/// Closed form of `det(1, x, x³)` over `(p, q, r)`.
pub fn vandermonde_b(p: &Rational, q: &Rational, r: &Rational) -> Rational {
    (q - p) * (r - p) * (r - q) * (p + q + r)
}

/// Closed form of `det(1, x, x³, x⁶)` over `(p, q, r, s)`: the 4-point
/// Vandermonde product times the Schur polynomial `h₃h₁ − h₄`.
pub fn vandermonde_d(p: &Rational, q: &Rational, r: &Rational, s: &Rational) -> Rational {
    let xs = [p, q, r, s];
    let mut v = Rational::one();
    for i in 0..4 {
        for j in i + 1..4 {
            v *= xs[j] - xs[i];
        }
    }
    // h[i][d]: complete homogeneous polynomial of degree d in the first i variables
    let mut h = vec![vec![Rational::one(); 5]; 5];
    for d in 1..5 {
        h[0][d] = Rational::zero();
    }
    for i in 1..5 {
        for d in 1..5 {
            h[i][d] = &h[i - 1][d] + xs[i - 1] * &h[i][d - 1];
        }
    }
    v * (&h[4][3] * &h[4][1] - &h[4][4])
}

/// Gadget points with their perturbation signs, in `build_p0` order.
pub fn tau_points(gadgets: &[Gadget]) -> Vec<TauPoint> {
    let mut out = Vec::new();
    for g in gadgets {
        for (p, s) in [(&g.ell, 1), (&g.m, 1), (&g.r, 1), (&g.t, -1)] {
            out.push(TauPoint { index: out.len(), point: p.clone(), sigma: s });
        }
    }
    out
}

/// Every collinearity and cocircularity polynomial of the construction.
/// Grows as `O(n⁴)` in the number of points.
pub fn all_polys(gadgets: &[Gadget]) -> Vec<TauPolynomial> {
    let pts = tau_points(gadgets);
    let n = pts.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(collinearity_poly(&pts[i], &pts[j], &pts[k]));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    out.push(cocircularity_poly(&pts[i], &pts[j], &pts[k], &pts[l]));
                }
            }
        }
    }
    out
}

/// x-order patterns of a cocircular quadruple with bottom points `p < q`
/// and top points `r < s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiveCase {
    /// `p < r < s < q`
    Nested,
    /// `p < r < q = s`
    RightShared,
    /// `p < r < q < s`
    Interleaved,
    /// `p = r < q < s`
    LeftShared,
    /// `r < p < q < s`
    Enclosing,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiveCaseEntry {
    pub witness: [usize; 4],
    pub case: Option<FiveCase>,
    pub nonzero: bool,
}

fn classify(p: &Rational, q: &Rational, r: &Rational, s: &Rational) -> Option<FiveCase> {
    if p < r && r < s && s < q {
        Some(FiveCase::Nested)
    } else if p < r && r < q && q == s {
        Some(FiveCase::RightShared)
    } else if p < r && r < q && q < s {
        Some(FiveCase::Interleaved)
    } else if p == r && r < q && q < s {
        Some(FiveCase::LeftShared)
    } else if r < p && p < q && q < s {
        Some(FiveCase::Enclosing)
    } else {
        None
    }
}

/// Finds every cocircular two-bottom/two-top quadruple of the unperturbed
/// set, records its x-order case, and checks that its polynomial is not
/// identically zero and that one of the triples `pqr`, `qrs` has distinct
/// abscissae.
pub fn five_case_audit(gadgets: &[Gadget]) -> Vec<FiveCaseEntry> {
    let pts = tau_points(gadgets);
    let bottom: Vec<&TauPoint> = pts.iter().filter(|p| p.sigma > 0).collect();
    let top: Vec<&TauPoint> = pts.iter().filter(|p| p.sigma < 0).collect();
    let mut out = Vec::new();
    for (i, p) in bottom.iter().enumerate() {
        for q in &bottom[i + 1..] {
            for (j, r) in top.iter().enumerate() {
                for s in &top[j + 1..] {
                    let poly = cocircularity_poly(p, q, r, s);
                    if !poly.coeffs[0].is_zero() {
                        continue;
                    }
                    let (px, qx, rx, sx) = (&p.point.x, &q.point.x, &r.point.x, &s.point.x);
                    let distinct3 = |a: &Rational, b: &Rational, c: &Rational| a != b && b != c && a != c;
                    let nonzero = !poly.is_identically_zero() && (distinct3(px, qx, rx) || distinct3(qx, rx, sx));
                    out.push(FiveCaseEntry {
                        witness: [p.index, q.index, r.index, s.index],
                        case: classify(px, qx, rx, sx),
                        nonzero,
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditResult {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpsilonCertificate {
    pub k: i64,
    #[serde(with = "rational::serde_rat")]
    pub tau_star: Rational,
    #[serde(with = "rational::serde_rat")]
    pub positive_root_bound: Rational,
    pub audited_conditions: Vec<String>,
    pub audits: Vec<AuditResult>,
    pub halvings: u32,
    pub polynomial_count: usize,
    pub five_cases: Vec<FiveCaseEntry>,
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub max_halvings: u32,
    pub deadline: Option<Instant>,
    /// Restart the halving search from this τ.
    pub resume_tau: Option<Rational>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { max_halvings: 200, deadline: None, resume_tau: None }
    }
}

/// No three points collinear and no four cocircular, checked directly.
pub fn general_position_violations(points: &PointSet) -> (usize, usize) {
    let p = &points.points;
    let n = p.len();
    let mut col = 0;
    let mut cocirc = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(&p[i], &p[j], &p[k]) == Sign::Zero {
                    col += 1;
                }
                for l in k + 1..n {
                    let rows: Vec<Vec<Rational>> = vec![
                        vec![Rational::one(); 4],
                        [i, j, k, l].iter().map(|&a| p[a].x.clone()).collect(),
                        [i, j, k, l].iter().map(|&a| p[a].y.clone()).collect(),
                        [i, j, k, l].iter().map(|&a| &p[a].x * &p[a].x + &p[a].y * &p[a].y).collect(),
                    ];
                    if det(rows).is_zero() {
                        cocirc += 1;
                    }
                }
            }
        }
    }
    (col, cocirc)
}

fn lower_crossing(fam: &CircleFamily, a: Role, b: Role, gadget: usize, top: &ExactPoint) -> Option<SqrtPoint> {
    let ca = &fam.find(a, gadget)?.circle;
    let cb = &fam.find(b, gadget)?.circle;
    let t = SqrtPoint::rational(top.clone());
    let pts = circle_intersections(ca, cb);
    // both circles pass through the top point; the other crossing is the lower one
    let others: Vec<SqrtPoint> = pts.into_iter().filter(|p| !p.same_as(&t)).collect();
    others.into_iter().reduce(|u, v| if u.y().cmp_sign(&v.y()) == Sign::Negative { u } else { v })
}

/// Conditions checked at a candidate τ. The first failure stops the round.
fn audit_at(gadgets: &[Gadget], tau: &Rational) -> Vec<AuditResult> {
    let mut out = Vec::new();
    let set = perturb(gadgets, tau).expect("tau is non-negative").points;
    let convex = in_convex_position(&set.points);
    out.push(AuditResult { id: "convex-position".into(), passed: convex, detail: String::new() });
    if !convex {
        return out;
    }
    let fam = match build_c0_prime(gadgets, tau) {
        Ok(f) => f,
        Err(e) => {
            out.push(AuditResult { id: "emptiness".into(), passed: false, detail: e.to_string() });
            return out;
        }
    };
    out.push(AuditResult { id: "emptiness".into(), passed: true, detail: String::new() });

    let hull = convex_hull(&set.points);
    let mut unexpected = Vec::new();
    for (i, a) in fam.circles.iter().enumerate() {
        for b in &fam.circles[i + 1..] {
            let allowed = a.gadget == b.gadget && a.role.group().is_some() && a.role.group() == b.role.group();
            if !allowed && is_realizable(&[&a.circle, &b.circle], &hull) {
                unexpected.push(format!("{}~{}", a.name(), b.name()));
            }
        }
    }
    out.push(AuditResult { id: "area-overlaps".into(), passed: unexpected.is_empty(), detail: unexpected.join(" ") });
    if !unexpected.is_empty() {
        return out;
    }

    let moved: Vec<Gadget> = gadgets.iter().map(|g| g.perturbed(tau)).collect();
    let mut bad = Vec::new();
    for g in &moved[1..moved.len() - 1] {
        for (a, b, tag) in [(Role::F1, Role::F3, "eps"), (Role::G1, Role::G3, "eps'")] {
            match lower_crossing(&fam, a, b, g.index, &g.t) {
                Some(x) if hull.strictly_inside_sqrt(&x) => {}
                _ => bad.push(format!("{tag}_{}", g.index)),
            }
        }
    }
    out.push(AuditResult { id: "crossings-inside-hull".into(), passed: bad.is_empty(), detail: bad.join(" ") });
    out
}

pub fn certify_epsilon(k: i64) -> Result<EpsilonCertificate> {
    certify_epsilon_with(k, &CertifyOptions::default())
}

pub fn certify_epsilon_with(k: i64, opts: &CertifyOptions) -> Result<EpsilonCertificate> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    let (_, gadgets) = build_p0(k)?;
    let polys = all_polys(&gadgets);
    let bound = positive_root_bound(&polys)?;
    let five = five_case_audit(&gadgets);
    if let Some(e) = five.iter().find(|e| !e.nonzero) {
        return Err(Error::IdenticallyZero(format!("cocircular quadruple {:?}", e.witness)));
    }

    let mut tau = opts.resume_tau.clone().unwrap_or_else(|| rational::pow2(-2 * k - 4));
    if !tau.is_positive() {
        return Err(Error::InvalidInput("resume tau must be positive".into()));
    }
    let mut halvings = 0u32;
    let half = rational::rat(1, 2);
    let mut last_failure = String::from("tau never dropped below the root bound");
    loop {
        if halvings > opts.max_halvings {
            return Err(Error::BudgetExhausted(last_failure));
        }
        if let Some(d) = opts.deadline {
            if Instant::now() >= d {
                return Err(Error::Interrupted { resume_tau: rational::format(&tau) });
            }
        }
        if tau >= bound {
            tau *= &half;
            halvings += 1;
            continue;
        }
        let audits = audit_at(&gadgets, &tau);
        if let Some(f) = audits.iter().find(|a| !a.passed) {
            last_failure = format!("{} at tau = {}: {}", f.id, rational::format(&tau), f.detail);
            tau *= &half;
            halvings += 1;
            continue;
        }
        let set = perturb(&gadgets, &tau)?.points;
        let (col, cocirc) = general_position_violations(&set);
        let mut all = vec![AuditResult {
            id: "general-position".into(),
            passed: col == 0 && cocirc == 0,
            detail: format!("{col} collinear triples, {cocirc} cocircular quadruples"),
        }];
        all.extend(audits);
        all.push(AuditResult {
            id: "five-case".into(),
            passed: true,
            detail: format!("{} cocircular mixed quadruples", five.len()),
        });
        if col != 0 || cocirc != 0 {
            // cannot happen below the root bound; treat as a construction bug
            return Err(Error::IdenticallyZero(all[0].detail.clone()));
        }
        return Ok(EpsilonCertificate {
            k,
            tau_star: tau,
            positive_root_bound: bound,
            audited_conditions: all.iter().map(|a| a.id.clone()).collect(),
            audits: all,
            halvings,
            polynomial_count: polys.len(),
            five_cases: five,
        });
    }
}

/// Whether every audit passes at a caller-supplied τ.
pub fn audit_tau(k: i64, tau: &Rational) -> Result<Vec<AuditResult>> {
    let (_, gadgets) = build_p0(k)?;
    Ok(audit_at(&gadgets, tau))
}
