//! Exact emptiness tests for regions of the form
//! `⋂ open disks ∖ closed convex hull`, and rational points inside them.
//!
//! The closed intersection of finitely many disks is a compact convex set
//! whose extreme points in any direction are either a single disk's extreme
//! point or a pairwise circle intersection. Collecting those candidates for
//! the axis directions and the hull's outward normals is enough to decide
//! both whether the open intersection is nonempty and whether it reaches
//! past the hull.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geom::{circle_intersections, disk_extreme_point, ExactCircle, ExactPoint, Sign, SqrtPoint};
use crate::hull::ConvexChain;
use crate::rational::{self, Rational};

/// Candidate extreme points of the closed intersection of `circles`.
fn candidates(circles: &[&ExactCircle], hull: &ConvexChain) -> Vec<SqrtPoint> {
    let one = Rational::one();
    let zero = Rational::zero();
    let mut dirs =
        vec![(one.clone(), zero.clone()), (-one.clone(), zero.clone()), (zero.clone(), one.clone()), (zero, -one)];
    dirs.extend(hull.outward_functionals().into_iter().map(|(u, _)| u));

    let mut out: Vec<SqrtPoint> = Vec::new();
    for c in circles {
        for u in &dirs {
            out.push(disk_extreme_point(c, u));
        }
    }
    for (i, a) in circles.iter().enumerate() {
        for b in &circles[i + 1..] {
            out.extend(circle_intersections(a, b));
        }
    }
    out.retain(|x| circles.iter().all(|c| x.power(c).sign() != Sign::Positive));
    out
}

/// Evidence that `⋂ open disks ∖ hull` is nonempty.
#[derive(Debug, Clone)]
pub struct Witness {
    /// Candidates lying in every closed disk (at least two distinct ones).
    pub closure_points: Vec<SqrtPoint>,
    /// Index into `closure_points` of a point strictly outside the hull.
    pub outside: usize,
}

/// `Some` iff the open region `⋂ interior(c) ∖ hull` is nonempty.
pub fn realizable(circles: &[&ExactCircle], hull: &ConvexChain) -> Option<Witness> {
    if circles.is_empty() {
        return None;
    }
    let pts = candidates(circles, hull);
    let first = pts.first()?;
    // Two distinct points of a strictly convex body bound a segment whose
    // midpoint is interior to every disk.
    if pts.iter().all(|p| p.same_as(first)) {
        return None;
    }
    let outside = if hull.is_degenerate() {
        // the plane minus a point or segment: any open set survives
        pts.iter().position(|p| hull.strictly_outside_sqrt(p)).or(Some(0))?
    } else {
        pts.iter().position(|p| hull.strictly_outside_sqrt(p))?
    };
    Some(Witness { closure_points: pts, outside })
}

pub fn is_realizable(circles: &[&ExactCircle], hull: &ConvexChain) -> bool {
    realizable(circles, hull).is_some()
}

/// Checks a candidate blocker position exactly.
pub fn in_region(p: &ExactPoint, circles: &[&ExactCircle], hull: &ConvexChain) -> bool {
    circles.iter().all(|c| Sign::of(&c.power(p)) == Sign::Negative) && hull.strictly_outside(p)
}

/// A rational point strictly inside every disk and strictly outside the
/// hull, found by walking from the outside witness toward an interior point
/// with escalating precision.
pub fn sample_point(circles: &[&ExactCircle], hull: &ConvexChain) -> Result<ExactPoint> {
    let w = realizable(circles, hull).ok_or_else(|| Error::SamplingFailed("region is empty".into()))?;
    let n = rational::int(w.closure_points.len() as i64);
    let mut bits = 64u32;
    while bits <= 2048 {
        let approx: Vec<ExactPoint> = w.closure_points.iter().map(|p| p.approx(bits)).collect();
        let cx = approx.iter().fold(Rational::zero(), |a, p| a + &p.x) / &n;
        let cy = approx.iter().fold(Rational::zero(), |a, p| a + &p.y) / &n;
        let inner = ExactPoint::new(cx, cy);
        if hull.strictly_outside_sqrt(&w.closure_points[w.outside]) {
            let outer = &approx[w.outside];
            let d = inner.sub(outer);
            for j in 1..=(bits as i64 / 2) {
                let z = outer.offset(&d, &rational::pow2(-j));
                if in_region(&z, circles, hull) {
                    return Ok(z);
                }
            }
        }
        if hull.is_degenerate() {
            if let Some(z) = off_segment(&inner, circles, hull, bits) {
                return Ok(z);
            }
        }
        bits *= 2;
    }
    Err(Error::SamplingFailed(format!("no rational point verified for {} circles", circles.len())))
}

/// Nudges an interior point perpendicular to a degenerate hull.
fn off_segment(inner: &ExactPoint, circles: &[&ExactCircle], hull: &ConvexChain, bits: u32) -> Option<ExactPoint> {
    let dir = match hull.vertices.len() {
        2 => {
            let (dx, dy) = hull.vertices[1].sub(&hull.vertices[0]);
            (-dy, dx)
        }
        _ => (Rational::one(), Rational::zero()),
    };
    for j in 0..=(bits as i64) {
        for s in [1, -1] {
            let z = inner.offset(&dir, &(rational::int(s) * rational::pow2(-j)));
            if in_region(&z, circles, hull) {
                return Some(z);
            }
        }
    }
    None
}
