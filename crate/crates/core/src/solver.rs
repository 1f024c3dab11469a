//! Upper-bound search for blocking sets.
//!
//! Exploration runs in `f64`: witness intervals of the surviving edges are
//! rounded once per round and candidate blockers are scored by how many of
//! them they would close. The chosen candidate is snapped to a rational and
//! the verdict is always recomputed exactly.

use std::f64::consts::PI;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::delaunay::{
    blocks, delaunay_edges_unchecked, BlockingInstance, Bound, EdgeFrame, PointSet, Verdict, WitnessInterval,
};
use crate::error::{Error, Result};
use crate::geom::{orient, ExactPoint, Sign};
use crate::hull::{convex_hull, in_convex_position, ConvexChain};
use crate::lb::Certificate;
use crate::perturb::general_position_violations;
use crate::rational::{self, Rational};

const SNAP_DEN: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub exterior_only: bool,
    pub candidate_density: usize,
    pub max_rounds: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { exterior_only: false, candidate_density: 4, max_rounds: 200, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    #[serde(rename = "Q")]
    pub q: PointSet,
    pub verified: bool,
    pub size: usize,
    /// Number of unblocked edges of `P` before each round.
    pub unblocked_history: Vec<usize>,
}

/// Outward unit normal of each hull edge, rounded to rationals.
fn unit_normal(a: &ExactPoint, b: &ExactPoint) -> (Rational, Rational) {
    let (dx, dy) = b.sub(a);
    let (fx, fy) = (rational::to_f64(&dy), -rational::to_f64(&dx));
    let len = fx.hypot(fy);
    (rational::snap(fx / len, SNAP_DEN), rational::snap(fy / len, SNAP_DEN))
}

/// One point just outside the midpoint of every hull edge.
pub fn midpoint_heuristic(p: &PointSet, offset: &Rational) -> Result<PointSet> {
    if !offset.is_positive() {
        return Err(Error::InvalidInput("offset must be positive".into()));
    }
    if p.len() < 3 || !in_convex_position(&p.points) {
        return Err(Error::NotConvexPosition);
    }
    let hull = convex_hull(&p.points);
    let mut q = PointSet::default();
    for (i, (a, b)) in hull.edges().enumerate() {
        let n = unit_normal(a, b);
        q.push(a.midpoint(b).offset(&n, offset), Some(format!("q_{i}")));
    }
    Ok(q)
}

/// Vertices of a regular `n`-gon with circumradius 1, first vertex at the
/// top, snapped to rationals.
pub fn regular_ngon(n: usize) -> PointSet {
    let mut ps = PointSet::default();
    for i in 0..n {
        let a = PI / 2.0 + 2.0 * PI * i as f64 / n as f64;
        ps.push(
            ExactPoint::new(rational::snap(a.cos(), SNAP_DEN), rational::snap(a.sin(), SNAP_DEN)),
            Some(format!("p_{i}")),
        );
    }
    ps
}

#[derive(Debug, Clone, Copy)]
struct FInterval {
    lo: f64,
    hi: f64,
}

fn bound_f64(b: &Bound) -> f64 {
    match b {
        Bound::NegInf => f64::NEG_INFINITY,
        Bound::PosInf => f64::INFINITY,
        Bound::Finite(r) => rational::to_f64(r),
    }
}

struct FFrame {
    p: (f64, f64),
    mid: (f64, f64),
    n: (f64, f64),
}

impl FFrame {
    fn new(p: &ExactPoint, q: &ExactPoint) -> FFrame {
        let (px, py) = p.to_f64();
        let (qx, qy) = q.to_f64();
        FFrame { p: (px, py), mid: ((px + qx) / 2.0, (py + qy) / 2.0), n: (-(qy - py), qx - px) }
    }

    fn center(&self, t: f64) -> (f64, f64) {
        (self.mid.0 + t * self.n.0, self.mid.1 + t * self.n.1)
    }

    /// Interval after adding `s`, or `None` when it becomes empty.
    fn restrict(&self, iv: FInterval, s: (f64, f64)) -> Option<FInterval> {
        let d2 = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2);
        let alpha = d2(self.mid, s) - d2(self.mid, self.p);
        let beta = 2.0 * (self.n.0 * (self.p.0 - s.0) + self.n.1 * (self.p.1 - s.1));
        let mut out = iv;
        if beta == 0.0 {
            if alpha < 0.0 {
                return None;
            }
        } else if beta > 0.0 {
            out.lo = out.lo.max(-alpha / beta);
        } else {
            out.hi = out.hi.min(-alpha / beta);
        }
        (out.lo <= out.hi).then_some(out)
    }
}

struct Surviving {
    frame: FFrame,
    iv: FInterval,
}

fn surviving_edges(p: &PointSet, q: &PointSet) -> (Vec<(usize, usize)>, Vec<Surviving>) {
    let all = p.concat(q);
    let edges: Vec<(usize, usize)> = delaunay_edges_unchecked(&p.points)
        .into_iter()
        .filter(|&(i, j)| !exact_interval(&all.points, i, j).is_empty())
        .collect();
    let surv = edges
        .iter()
        .map(|&(i, j)| {
            let w = exact_interval(&all.points, i, j);
            Surviving {
                frame: FFrame::new(&p.points[i], &p.points[j]),
                iv: FInterval { lo: bound_f64(&w.lo), hi: bound_f64(&w.hi) },
            }
        })
        .collect();
    (edges, surv)
}

fn exact_interval(points: &[ExactPoint], i: usize, j: usize) -> WitnessInterval {
    let frame = EdgeFrame::new(&points[i], &points[j]);
    let mut w = WitnessInterval::full((i, j));
    for (s, pt) in points.iter().enumerate() {
        if s != i && s != j {
            w.apply(&frame.constraint(pt));
        }
    }
    w
}

/// Parameters spread over a (possibly unbounded) interval.
fn params(iv: FInterval, density: usize) -> Vec<f64> {
    let k = density.max(1);
    match (iv.lo.is_finite(), iv.hi.is_finite()) {
        (true, true) => (0..=k + 1).map(|s| iv.lo + (iv.hi - iv.lo) * s as f64 / (k + 1) as f64).collect(),
        (true, false) => (0..=k).map(|s| iv.lo + 4f64.powi(s as i32) - 1.0).collect(),
        (false, true) => (0..=k).map(|s| iv.hi - 4f64.powi(s as i32) + 1.0).collect(),
        (false, false) => (0..=2 * k).map(|s| (s as f64 - k as f64) * 2.0).collect(),
    }
}

fn candidates(surv: &[Surviving], density: usize, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for e in surv {
        let len = e.frame.n.0.hypot(e.frame.n.1);
        let (ux, uy) = (e.frame.n.0 / len, e.frame.n.1 / len);
        for t in params(e.iv, density) {
            let c = e.frame.center(t);
            let r = ((c.0 - e.frame.p.0).powi(2) + (c.1 - e.frame.p.1).powi(2)).sqrt();
            // just inside the circle where it crosses the bisector
            for side in [1.0, -1.0] {
                for shrink in [0.98, 0.9, 0.6] {
                    out.push((c.0 + side * shrink * r * ux, c.1 + side * shrink * r * uy));
                }
            }
            for _ in 0..density {
                let a: f64 = rng.gen_range(0.0..2.0 * PI);
                let rad: f64 = r * rng.gen_range(0.5..0.99);
                out.push((c.0 + rad * a.cos(), c.1 + rad * a.sin()));
            }
        }
        for off in [0.01, 0.1, 0.3] {
            for side in [1.0, -1.0] {
                out.push((e.frame.mid.0 + side * off * e.frame.n.0, e.frame.mid.1 + side * off * e.frame.n.1));
            }
        }
    }
    out.retain(|c| c.0.is_finite() && c.1.is_finite());
    out
}

fn admissible(x: &ExactPoint, all: &PointSet, p: &PointSet, hull: &ConvexChain, exterior: bool) -> bool {
    if all.points.contains(x) || (exterior && hull.strictly_inside(x)) {
        return false;
    }
    // A blocker on a line through two points of P degenerates the instance
    // (a point on a chord blocks that chord alone); keep away from them.
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            if orient(&p.points[i], &p.points[j], x) == Sign::Zero {
                return false;
            }
        }
    }
    true
}

/// `(edges closed, intervals shrunk)` if `x` were added.
fn score(surv: &[Surviving], x: (f64, f64)) -> (usize, usize) {
    let (mut killed, mut shrunk) = (0, 0);
    for e in surv {
        match e.frame.restrict(e.iv, x) {
            None => killed += 1,
            Some(iv) if iv.lo != e.iv.lo || iv.hi != e.iv.hi => shrunk += 1,
            Some(_) => {}
        }
    }
    (killed, shrunk)
}

/// Greedy blocker placement with exact verification after every round.
pub fn greedy_cover_solve(p: &PointSet, cfg: &SolverConfig) -> Result<SolveResult> {
    if p.len() < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    if cfg.candidate_density < 1 {
        return Err(Error::InvalidInput("candidate_density must be at least 1".into()));
    }
    p.check_distinct()?;
    let hull = convex_hull(&p.points);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut q = PointSet::default();
    let mut history = Vec::new();
    let mut verified = false;

    for _ in 0..cfg.max_rounds {
        let (edges, surv) = surviving_edges(p, &q);
        history.push(edges.len());
        if edges.is_empty() {
            verified = true;
            break;
        }
        let all = p.concat(&q);
        let mut cands: Vec<ExactPoint> = candidates(&surv, cfg.candidate_density, &mut rng)
            .into_iter()
            .map(|(x, y)| ExactPoint::new(rational::snap(x, SNAP_DEN), rational::snap(y, SNAP_DEN)))
            .collect();
        cands.sort();
        cands.dedup();
        let best = cands
            .into_par_iter()
            .filter(|x| admissible(x, &all, p, &hull, cfg.exterior_only))
            .map(|x| (score(&surv, x.to_f64()), x))
            // highest score, then smallest (x, y): a total order, so the reduction is deterministic
            .reduce_with(|a, b| match a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)) {
                std::cmp::Ordering::Less => b,
                _ => a,
            });
        match best {
            Some(((0, 0), _)) | None => break,
            Some((_, x)) => {
                let label = format!("q_{}", q.len());
                q.push(x, Some(label));
            }
        }
    }
    if !verified {
        verified = blocks(&BlockingInstance::new(p.clone(), q.clone(), cfg.exterior_only))?.is_blocked();
    }
    if verified {
        q = prune(p, q, cfg.exterior_only)?;
    }
    Ok(SolveResult { size: q.len(), q, verified, unblocked_history: history })
}

/// Drops blockers that are not needed, last ones first.
fn prune(p: &PointSet, mut q: PointSet, exterior: bool) -> Result<PointSet> {
    let mut i = q.len();
    while i > 0 {
        i -= 1;
        let mut trial = q.clone();
        trial.points.remove(i);
        trial.labels.remove(i);
        if blocks(&BlockingInstance::new(p.clone(), trial.clone(), exterior))?.is_blocked() {
            q = trial;
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeAttempt {
    pub strategy: String,
    pub size: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub best_size: Option<usize>,
    pub best: Option<PointSet>,
    /// `"matched"` when a verified set of size `n` was found.
    pub status: String,
    pub attempts: Vec<ProbeAttempt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_exterior_bound: Option<usize>,
}

/// Looks for a blocking set of size `|P|`, escalating effort up to `budget`
/// attempts. Never claims a refutation.
pub fn conjecture_probe(p: &PointSet, budget: usize) -> Result<ProbeReport> {
    if !in_convex_position(&p.points) {
        return Err(Error::NotConvexPosition);
    }
    let n = p.len();
    let mut attempts = Vec::new();
    let mut best: Option<PointSet> = None;
    fn consider(
        strategy: String,
        q: PointSet,
        ok: bool,
        attempts: &mut Vec<ProbeAttempt>,
        best: &mut Option<PointSet>,
    ) {
        attempts.push(ProbeAttempt { strategy, size: q.len(), verified: ok });
        if ok && best.as_ref().is_none_or(|b| q.len() < b.len()) {
            *best = Some(q);
        }
    }
    let budget = budget.max(1);
    if n >= 3 {
        for off in [rational::rat(1, 100), rational::rat(1, 1000)] {
            if attempts.len() >= budget {
                break;
            }
            let q = midpoint_heuristic(p, &off)?;
            let ok = blocks(&BlockingInstance::new(p.clone(), q.clone(), false))?.is_blocked();
            consider(format!("midpoint offset {}", rational::format(&off)), q, ok, &mut attempts, &mut best);
        }
    }
    let mut density = 1;
    let mut seed = 0;
    while attempts.len() < budget && best.as_ref().is_none_or(|b| b.len() > n) {
        let cfg = SolverConfig { exterior_only: false, candidate_density: density, max_rounds: 4 * n + 8, seed };
        let r = greedy_cover_solve(p, &cfg)?;
        consider(format!("greedy density {density} seed {seed}"), r.q, r.verified, &mut attempts, &mut best);
        density *= 2;
        seed += 1;
    }
    let best_size = best.as_ref().map(|b| b.len());
    let status = if best_size == Some(n) { "matched" } else { "inconclusive-exceeds" };
    Ok(ProbeReport { n, best_size, best, status: status.into(), attempts, certified_exterior_bound: None })
}

/// Outcome of the iterative-deepening search over certificate cells.
#[derive(Debug, Clone, Serialize)]
pub struct CellSearch {
    pub min_points: usize,
    pub points: Vec<ExactPoint>,
    pub verdict: Verdict,
}

/// Smallest number of cell sample points hitting every certificate circle,
/// found by trying all `k`-subsets of cells for increasing `k`. The chosen
/// samples are then handed to the exact verifier.
pub fn exhaustive_cell_search(cert: &Certificate) -> Result<CellSearch> {
    let graph =
        cert.hypergraph.as_ref().ok_or_else(|| Error::InvalidInput("certificate has no cell hypergraph".into()))?;
    let m = cert.circles.len();
    let cells = &graph.cells;
    for k in 1..=m {
        let mut idx: Vec<usize> = (0..k).collect();
        if k > cells.len() {
            break;
        }
        loop {
            let mut hit = vec![false; m];
            for &c in &idx {
                for &s in &cells[c].signature {
                    hit[s] = true;
                }
            }
            if hit.iter().all(|&h| h) {
                let pts: Vec<ExactPoint> = idx.iter().map(|&c| cells[c].sample.clone()).collect();
                let q = PointSet::new(pts.clone());
                let verdict = blocks(&BlockingInstance::new(cert.points.clone(), q, true))?;
                return Ok(CellSearch { min_points: k, points: pts, verdict });
            }
            // next k-combination in lexicographic order
            let mut i = k;
            while i > 0 && idx[i - 1] == cells.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Err(Error::NoSolution("cells do not cover every circle".into()))
}

/// Size check for a verified blocking set: at least `|P|` points when `P` is
/// in general position, at least `|P| − 1` otherwise.
pub fn meets_size_bound(p: &PointSet, q: &PointSet) -> bool {
    let need = match general_position_violations(p) {
        (0, 0) => p.len(),
        _ => p.len().saturating_sub(1),
    };
    q.len() >= need
}
