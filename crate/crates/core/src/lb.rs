//! Lower-bound certificates for exterior blocking.
//!
//! Every circle of an audited family passes through two points of `P` and
//! has an empty interior, so each one needs a blocker inside its blocking
//! area (open disk minus the closed hull). Two bounds follow: the largest
//! subfamily with pairwise disjoint areas, and the minimum number of points
//! hitting every area, solved exactly over the maximal realizable
//! signatures of the local circle arrangement.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::{build_alt_3k, build_c0, build_c0_prime, build_p0, perturb, CircleFamily};
use crate::cover::{components, max_independent_set, min_set_cover};
use crate::delaunay::PointSet;
use crate::error::{Error, Result};
use crate::geom::{in_circle_sign, ExactCircle, ExactPoint, Sign};
use crate::hull::{convex_hull, ConvexChain};
use crate::perturb::certify_epsilon;
use crate::rational::{self, Rational};
use crate::region::{is_realizable, sample_point};

/// Default cap on realizable signatures explored per group.
pub const DEFAULT_CELL_CAP: usize = 50_000;

#[derive(Debug, Clone)]
pub struct BlockingArea {
    pub circle: ExactCircle,
    pub hull: ConvexChain,
}

impl BlockingArea {
    pub fn new(circle: ExactCircle, hull: ConvexChain) -> Self {
        BlockingArea { circle, hull }
    }

    pub fn is_empty(&self) -> bool {
        !is_realizable(&[&self.circle], &self.hull)
    }
}

/// True iff the two open blocking areas do not meet.
pub fn areas_disjoint(a: &BlockingArea, b: &BlockingArea) -> bool {
    !is_realizable(&[&a.circle, &b.circle], &a.hull)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Disjointness,
    HittingSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub id: usize,
    pub sample: ExactPoint,
    /// Indices of the family circles whose blocking area contains the cell.
    pub signature: Vec<usize>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CellHypergraph {
    pub cells: Vec<Cell>,
    pub circle_to_cells: Vec<Vec<usize>>,
}

impl CellHypergraph {
    /// Recomputes every sample's membership from scratch.
    pub fn audit(&self, circles: &CircleFamily, hull: &ConvexChain) -> Result<()> {
        for cell in &self.cells {
            if !hull.strictly_outside(&cell.sample) {
                return Err(Error::InvalidInput(format!("cell {} sample is not outside the hull", cell.id)));
            }
            let sig: Vec<usize> = circles
                .circles
                .iter()
                .enumerate()
                .filter(|(_, c)| in_circle_sign(&c.circle, &cell.sample) == Sign::Negative)
                .map(|(i, _)| i)
                .collect();
            if sig != cell.signature {
                return Err(Error::InvalidInput(format!("cell {} signature mismatch", cell.id)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub circles: Vec<String>,
    pub disjointness: usize,
    pub hitting: Option<usize>,
    pub cells: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    #[serde(rename = "P")]
    pub points: PointSet,
    pub circles: CircleFamily,
    pub bound: usize,
    pub method: Method,
    pub disjointness_bound: usize,
    #[serde(with = "rational::serde_opt_rat", skip_serializing_if = "Option::is_none")]
    pub tau: Option<Rational>,
    pub groups: Vec<GroupReport>,
    /// Pairs of circles whose blocking areas overlap.
    pub overlaps: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<CellHypergraph>,
}

struct Prepared {
    hull: ConvexChain,
    names: Vec<String>,
    overlap: Vec<Vec<bool>>,
    groups: Vec<Vec<usize>>,
}

fn prepare(points: &PointSet, circles: &CircleFamily) -> Result<Prepared> {
    points.check_distinct()?;
    circles.audit_emptiness(points)?;
    let hull = convex_hull(&points.points);
    let names: Vec<String> = circles.circles.iter().map(|c| c.name()).collect();
    let n = circles.len();
    for (i, fc) in circles.circles.iter().enumerate() {
        if !is_realizable(&[&fc.circle], &hull) {
            return Err(Error::InvalidInput(format!(
                "blocking area of {} is empty, so no exterior blocking set exists",
                names[i]
            )));
        }
    }
    let mut overlap = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let o = is_realizable(&[&circles.circles[i].circle, &circles.circles[j].circle], &hull);
            overlap[i][j] = o;
            overlap[j][i] = o;
        }
    }
    let big_adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| overlap[i][j]).collect()).collect();
    let groups = graph_components(n, &big_adj);
    Ok(Prepared { hull, names, overlap, groups })
}

fn graph_components(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if n <= 128 {
        let masks: Vec<u128> = adj.iter().map(|l| l.iter().fold(0u128, |m, &j| m | 1 << j)).collect();
        return components(n, &masks);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            for &w in &adj[comp[k]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out
}

fn local_adj(group: &[usize], overlap: &[Vec<bool>]) -> Result<Vec<u128>> {
    if group.len() > 128 {
        return Err(Error::ArrangementOverflow { cells: group.len(), cap: 128 });
    }
    Ok(group
        .iter()
        .map(|&a| group.iter().enumerate().filter(|(_, &b)| overlap[a][b]).fold(0u128, |m, (j, _)| m | 1 << j))
        .collect())
}

fn overlap_pairs(prep: &Prepared) -> Vec<(String, String)> {
    let n = prep.names.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if prep.overlap[i][j] {
                out.push((prep.names[i].clone(), prep.names[j].clone()));
            }
        }
    }
    out
}

fn disjoint_count(prep: &Prepared) -> Result<(usize, Vec<usize>)> {
    let mut total = 0;
    let mut per = Vec::new();
    for g in &prep.groups {
        let adj = local_adj(g, &prep.overlap)?;
        let m = max_independent_set(g.len(), &adj).len();
        per.push(m);
        total += m;
    }
    Ok((total, per))
}

/// Largest subfamily whose blocking areas are pairwise disjoint.
pub fn disjointness_bound(points: &PointSet, circles: &CircleFamily) -> Result<Certificate> {
    let prep = prepare(points, circles)?;
    let (total, per) = disjoint_count(&prep)?;
    let groups = prep
        .groups
        .iter()
        .zip(&per)
        .map(|(g, &d)| GroupReport {
            circles: g.iter().map(|&i| prep.names[i].clone()).collect(),
            disjointness: d,
            hitting: None,
            cells: 0,
        })
        .collect();
    Ok(Certificate {
        points: points.clone(),
        circles: circles.clone(),
        bound: total,
        method: Method::Disjointness,
        disjointness_bound: total,
        tau: None,
        groups,
        overlaps: overlap_pairs(&prep),
        hypergraph: None,
    })
}

/// All realizable signatures of one group, as local bitmasks.
fn realizable_sets(
    group: &[usize],
    adj: &[u128],
    circles: &CircleFamily,
    hull: &ConvexChain,
    cap: usize,
) -> Result<Vec<u128>> {
    let mut out = Vec::new();
    let mut stack: Vec<(u128, usize)> = (0..group.len()).map(|i| (1u128 << i, i)).collect();
    stack.reverse();
    while let Some((set, last)) = stack.pop() {
        out.push(set);
        if out.len() > cap {
            return Err(Error::ArrangementOverflow { cells: out.len(), cap });
        }
        for j in (last + 1..group.len()).rev() {
            if adj[j] & set != set {
                continue;
            }
            let ext = set | 1u128 << j;
            let cs: Vec<&ExactCircle> =
                (0..group.len()).filter(|b| ext >> b & 1 == 1).map(|b| &circles.circles[group[b]].circle).collect();
            if is_realizable(&cs, hull) {
                stack.push((ext, j));
            }
        }
    }
    Ok(out)
}

pub fn hitting_set_bound(points: &PointSet, circles: &CircleFamily) -> Result<Certificate> {
    hitting_set_bound_with_cap(points, circles, DEFAULT_CELL_CAP)
}

/// Exact minimum hitting set over the maximal realizable signatures.
pub fn hitting_set_bound_with_cap(points: &PointSet, circles: &CircleFamily, cap: usize) -> Result<Certificate> {
    let prep = prepare(points, circles)?;
    let (disjoint_total, per) = disjoint_count(&prep)?;
    let mut graph = CellHypergraph { cells: Vec::new(), circle_to_cells: vec![Vec::new(); circles.len()] };
    let mut total = 0;
    let mut groups = Vec::new();
    for (g, &dis) in prep.groups.iter().zip(&per) {
        let adj = local_adj(g, &prep.overlap)?;
        let sets = realizable_sets(g, &adj, circles, &prep.hull, cap)?;
        let all: HashSet<u128> = sets.iter().copied().collect();
        let maximal: Vec<u128> = sets
            .iter()
            .copied()
            .filter(|&s| (0..g.len()).all(|j| s >> j & 1 == 1 || !all.contains(&(s | 1u128 << j))))
            .collect();
        let (h, _) = min_set_cover(g.len(), &maximal).expect("every circle is realizable on its own");
        for &s in &maximal {
            let members: Vec<usize> = (0..g.len()).filter(|b| s >> b & 1 == 1).map(|b| g[b]).collect();
            let cs: Vec<&ExactCircle> = members.iter().map(|&i| &circles.circles[i].circle).collect();
            let sample = sample_point(&cs, &prep.hull)?;
            let id = graph.cells.len();
            for &i in &members {
                graph.circle_to_cells[i].push(id);
            }
            graph.cells.push(Cell { id, sample, signature: members });
        }
        total += h;
        groups.push(GroupReport {
            circles: g.iter().map(|&i| prep.names[i].clone()).collect(),
            disjointness: dis,
            hitting: Some(h),
            cells: maximal.len(),
        });
    }
    graph.audit(circles, &prep.hull)?;
    Ok(Certificate {
        points: points.clone(),
        circles: circles.clone(),
        bound: total,
        method: Method::HittingSet,
        disjointness_bound: disjoint_total,
        tau: None,
        groups,
        overlaps: overlap_pairs(&prep),
        hypergraph: Some(graph),
    })
}

/// Hitting-set bound, or the disjointness bound when the arrangement is too large.
pub fn best_bound(points: &PointSet, circles: &CircleFamily, cap: usize) -> Result<Certificate> {
    match hitting_set_bound_with_cap(points, circles, cap) {
        Err(Error::ArrangementOverflow { .. }) => disjointness_bound(points, circles),
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Collinear,
    General,
    Alt3k,
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "collinear" => Ok(Construction::Collinear),
            "general" => Ok(Construction::General),
            "alt3k" => Ok(Construction::Alt3k),
            _ => Err(Error::InvalidInput(format!("unknown construction {s:?}"))),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Collinear => "collinear",
            Construction::General => "general",
            Construction::Alt3k => "alt3k",
        })
    }
}

/// Point set and audited circle family of a named construction. For the
/// perturbed construction `tau` defaults to the certified value.
pub fn construction_instance(
    kind: Construction,
    k: i64,
    tau: Option<Rational>,
) -> Result<(PointSet, CircleFamily, Option<Rational>)> {
    match kind {
        Construction::Collinear => {
            let (ps, gs) = build_p0(k)?;
            Ok((ps, build_c0(&gs)?, None))
        }
        Construction::Alt3k => {
            let (ps, fam) = build_alt_3k(k)?;
            Ok((ps, fam, None))
        }
        Construction::General => {
            if k < 2 {
                return Err(Error::InvalidK(k));
            }
            let tau = match tau {
                Some(t) => t,
                None => certify_epsilon(k)?.tau_star,
            };
            let (_, gs) = build_p0(k)?;
            let fam = build_c0_prime(&gs, &tau)?;
            Ok((perturb(&gs, &tau)?.points, fam, Some(tau)))
        }
    }
}

pub fn certify_construction(kind: Construction, k: i64, tau: Option<Rational>) -> Result<Certificate> {
    let (ps, fam, tau) = construction_instance(kind, k, tau)?;
    let mut cert = best_bound(&ps, &fam, DEFAULT_CELL_CAP)?;
    cert.tau = tau;
    Ok(cert)
}
