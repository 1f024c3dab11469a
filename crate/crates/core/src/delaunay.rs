//! Delaunay graph and blocking predicates via witness intervals.
//!
//! Circles through an edge `pq` are parameterized by their center
//! `M + t·n`, where `M` is the midpoint of `pq` and `n = (q − p)⟂`. The
//! parameter `t` is the signed distance of the center from `M` measured in
//! units of `‖q − p‖`, which keeps every breakpoint rational. A third point
//! excludes an open ray of parameters (the circles that contain it in their
//! open interior); the edge is in the Delaunay graph iff the closed
//! intersection of the remaining rays is nonempty.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dot, ExactCircle, ExactPoint};
use crate::hull::convex_hull;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    pub points: Vec<ExactPoint>,
    pub labels: Vec<Option<String>>,
}

impl PointSet {
    pub fn new(points: Vec<ExactPoint>) -> Self {
        let labels = vec![None; points.len()];
        PointSet { points, labels }
    }

    pub fn with_labels(points: Vec<ExactPoint>, labels: Vec<Option<String>>) -> Self {
        assert_eq!(points.len(), labels.len());
        PointSet { points, labels }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn push(&mut self, p: ExactPoint, label: Option<String>) {
        self.points.push(p);
        self.labels.push(label);
    }

    pub fn label(&self, i: usize) -> String {
        self.labels[i].clone().unwrap_or_else(|| format!("#{i}"))
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Fails with `IdenticalPoints` when two points coincide.
    pub fn check_distinct(&self) -> Result<()> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]));
        for w in idx.windows(2) {
            if self.points[w[0]] == self.points[w[1]] {
                return Err(Error::IdenticalPoints(format!(
                    "{} and {} are both {}",
                    self.label(w[0]),
                    self.label(w[1]),
                    self.points[w[0]]
                )));
            }
        }
        Ok(())
    }

    pub fn concat(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.points.extend(other.points.iter().cloned());
        out.labels.extend(other.labels.iter().cloned());
        out
    }
}

#[derive(Serialize, Deserialize)]
struct PointDto {
    #[serde(with = "rational::serde_rat")]
    x: Rational,
    #[serde(with = "rational::serde_rat")]
    y: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PointSetDto {
    points: Vec<PointDto>,
}

impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = PointSetDto {
            points: self
                .points
                .iter()
                .zip(&self.labels)
                .map(|(p, l)| PointDto { x: p.x.clone(), y: p.y.clone(), label: l.clone() })
                .collect(),
        };
        dto.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = PointSetDto::deserialize(d)?;
        let (points, labels) = dto.points.into_iter().map(|p| (ExactPoint::new(p.x, p.y), p.label)).unzip();
        Ok(PointSet { points, labels })
    }
}

/// Extended rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Finite(r) => write!(f, "{}", rational::format(r)),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// How one extra point restricts the admissible center parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    /// The point is never strictly inside a circle through the edge.
    Everything,
    /// The point lies strictly inside the open segment: no circle is empty.
    Nothing,
    /// Admissible parameters form `[b, +∞)`.
    AtLeast(Rational),
    /// Admissible parameters form `(−∞, b]`.
    AtMost(Rational),
}

/// Frame of the circle pencil through `p` and `q`.
#[derive(Debug, Clone)]
pub struct EdgeFrame {
    pub p: ExactPoint,
    pub mid: ExactPoint,
    pub normal: (Rational, Rational),
}

impl EdgeFrame {
    pub fn new(p: &ExactPoint, q: &ExactPoint) -> Self {
        let (dx, dy) = q.sub(p);
        EdgeFrame { p: p.clone(), mid: p.midpoint(q), normal: (-dy, dx) }
    }

    pub fn center(&self, t: &Rational) -> ExactPoint {
        self.mid.offset(&self.normal, t)
    }

    pub fn circle(&self, t: &Rational) -> ExactCircle {
        let c = self.center(t);
        let r = c.dist_sq(&self.p);
        ExactCircle { center: c, radius_sq: r }
    }

    /// `s` is strictly inside circle(t) iff `α + β·t < 0`.
    pub fn constraint(&self, s: &ExactPoint) -> Constraint {
        let alpha = self.mid.dist_sq(s) - self.mid.dist_sq(&self.p);
        let beta = rational::int(2) * dot(&self.normal, &self.p.sub(s));
        if beta.is_zero() {
            return if alpha.is_negative() { Constraint::Nothing } else { Constraint::Everything };
        }
        let b = -alpha / &beta;
        if beta.is_positive() {
            Constraint::AtLeast(b)
        } else {
            Constraint::AtMost(b)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessInterval {
    pub edge: (usize, usize),
    pub lo: Bound,
    pub hi: Bound,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl WitnessInterval {
    pub fn full(edge: (usize, usize)) -> Self {
        WitnessInterval { edge, lo: Bound::NegInf, hi: Bound::PosInf, lo_closed: false, hi_closed: false }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn apply(&mut self, c: &Constraint) {
        match c {
            Constraint::Everything => {}
            Constraint::Nothing => {
                self.lo = Bound::PosInf;
                self.hi = Bound::NegInf;
            }
            Constraint::AtLeast(b) => {
                let b = Bound::Finite(b.clone());
                if b > self.lo {
                    self.lo = b;
                }
            }
            Constraint::AtMost(b) => {
                let b = Bound::Finite(b.clone());
                if b < self.hi {
                    self.hi = b;
                }
            }
        }
        self.lo_closed = matches!(self.lo, Bound::Finite(_));
        self.hi_closed = matches!(self.hi, Bound::Finite(_));
    }

    /// A parameter well inside the interval, `None` when empty.
    pub fn representative(&self) -> Option<Rational> {
        if self.is_empty() {
            return None;
        }
        let one = rational::int(1);
        Some(match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => (a + b) / rational::int(2),
            (Bound::Finite(a), _) => a + one,
            (_, Bound::Finite(b)) => b - one,
            _ => Rational::zero(),
        })
    }
}

fn interval_unchecked(points: &[ExactPoint], i: usize, j: usize) -> WitnessInterval {
    let frame = EdgeFrame::new(&points[i], &points[j]);
    let mut w = WitnessInterval::full((i, j));
    for (s, pt) in points.iter().enumerate() {
        if s == i || s == j {
            continue;
        }
        w.apply(&frame.constraint(pt));
        if w.is_empty() {
            break;
        }
    }
    w
}

/// Admissible center parameters of empty circles through points `i`, `j`.
pub fn witness_interval(set: &PointSet, i: usize, j: usize) -> Result<WitnessInterval> {
    if i == j || i >= set.len() || j >= set.len() {
        return Err(Error::InvalidInput(format!("bad edge ({i}, {j}) for {} points", set.len())));
    }
    set.check_distinct()?;
    Ok(interval_unchecked(&set.points, i, j))
}

/// Edges of the Delaunay graph: pairs appearing in at least one Delaunay
/// triangulation. Pairs are reported with `i < j`.
pub fn delaunay_edges(set: &PointSet) -> Result<Vec<(usize, usize)>> {
    set.check_distinct()?;
    Ok(delaunay_edges_unchecked(&set.points))
}

pub(crate) fn delaunay_edges_unchecked(points: &[ExactPoint]) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !interval_unchecked(points, i, j).is_empty() {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockingInstance {
    #[serde(rename = "P")]
    pub p: PointSet,
    #[serde(rename = "Q")]
    pub q: PointSet,
    #[serde(default)]
    pub exterior_only: bool,
}

impl BlockingInstance {
    pub fn new(p: PointSet, q: PointSet, exterior_only: bool) -> Self {
        BlockingInstance { p, q, exterior_only }
    }

    pub fn combined(&self) -> PointSet {
        self.p.concat(&self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Blocked,
    Unblocked { edges: Vec<(usize, usize)> },
    ExteriorViolation { points: Vec<usize> },
}

impl Verdict {
    pub fn is_blocked(&self) -> bool {
        matches!(self, Verdict::Blocked)
    }
}

/// Is the pair `(i, j)` of `P` non-adjacent in every Delaunay triangulation
/// of `P ∪ Q`?
pub fn is_blocked_edge(inst: &BlockingInstance, i: usize, j: usize) -> Result<bool> {
    if i >= inst.p.len() || j >= inst.p.len() {
        return Err(Error::InvalidInput(format!("({i}, {j}) does not index P")));
    }
    Ok(witness_interval(&inst.combined(), i, j)?.is_empty())
}

pub fn blocks(inst: &BlockingInstance) -> Result<Verdict> {
    let all = inst.combined();
    all.check_distinct()?;
    if inst.exterior_only {
        let hull = convex_hull(&inst.p.points);
        let inside: Vec<usize> = (0..inst.q.len()).filter(|&k| hull.strictly_inside(&inst.q.points[k])).collect();
        if !inside.is_empty() {
            return Ok(Verdict::ExteriorViolation { points: inside });
        }
    }
    // Adding points never creates new P–P edges, so only edges of DT(P) can survive.
    let unblocked: Vec<(usize, usize)> = delaunay_edges_unchecked(&inst.p.points)
        .into_iter()
        .filter(|&(i, j)| !interval_unchecked(&all.points, i, j).is_empty())
        .collect();
    Ok(if unblocked.is_empty() { Verdict::Blocked } else { Verdict::Unblocked { edges: unblocked } })
}
