//! Convex hulls with explicit handling of collinear boundary points.

use serde::Serialize;

use crate::geom::{orient, orient_value, ExactPoint, Sign, SqrtExpr, SqrtPoint};
use crate::rational::Rational;

/// Counterclockwise hull. Points lying on the boundary but not at a corner
/// are excluded from `vertices` and listed in `boundary_indices`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexChain {
    pub vertices: Vec<ExactPoint>,
    /// Indices (into the input) of the vertices, same order as `vertices`.
    pub vertex_indices: Vec<usize>,
    /// Input indices of non-vertex points on the hull boundary.
    pub boundary_indices: Vec<usize>,
}

impl ConvexChain {
    pub fn has_collinear_boundary(&self) -> bool {
        !self.boundary_indices.is_empty()
    }

    /// Fewer than three corners: a point or a segment.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn edges(&self) -> impl Iterator<Item = (&ExactPoint, &ExactPoint)> {
        let n = self.vertices.len();
        (0..if n >= 3 { n } else { 0 }).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Outward linear functionals `g(x) = u·x + w`, one per edge; `x` is
    /// strictly outside the hull iff some `g(x) > 0`.
    pub fn outward_functionals(&self) -> Vec<((Rational, Rational), Rational)> {
        self.edges()
            .map(|(a, b)| {
                let (dx, dy) = b.sub(a);
                let u = (dy, -dx);
                let w = -(&u.0 * &a.x + &u.1 * &a.y);
                (u, w)
            })
            .collect()
    }

    pub fn strictly_outside(&self, x: &ExactPoint) -> bool {
        match self.vertices.len() {
            0 => true,
            1 => *x != self.vertices[0],
            2 => !on_segment(&self.vertices[0], &self.vertices[1], x),
            _ => self.edges().any(|(a, b)| orient(a, b, x) == Sign::Negative),
        }
    }

    pub fn strictly_inside(&self, x: &ExactPoint) -> bool {
        !self.is_degenerate() && self.edges().all(|(a, b)| orient(a, b, x) == Sign::Positive)
    }

    pub fn strictly_inside_sqrt(&self, x: &SqrtPoint) -> bool {
        !self.is_degenerate() && self.edges().all(|(a, b)| x.orient_from(a, b) == Sign::Positive)
    }

    pub fn strictly_outside_sqrt(&self, x: &SqrtPoint) -> bool {
        match self.vertices.len() {
            0 => true,
            1 => !x.same_as(&SqrtPoint::rational(self.vertices[0].clone())),
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                if x.orient_from(a, b) != Sign::Zero {
                    return true;
                }
                // on the supporting line: outside iff beyond an endpoint
                let (dx, dy) = b.sub(a);
                let along = x.linear(&(dx.clone(), dy.clone()), &Rational::from_integer(0.into()));
                let at_a = &dx * &a.x + &dy * &a.y;
                let at_b = &dx * &b.x + &dy * &b.y;
                let below = SqrtExpr { a: along.a.clone() - at_a, b: along.b.clone(), c: along.c.clone() };
                let above = SqrtExpr { a: along.a - at_b, b: along.b, c: along.c };
                below.sign() == Sign::Negative || above.sign() == Sign::Positive
            }
            _ => self.edges().any(|(a, b)| x.orient_from(a, b) == Sign::Negative),
        }
    }
}

pub fn on_segment(a: &ExactPoint, b: &ExactPoint, x: &ExactPoint) -> bool {
    if orient(a, b, x) != Sign::Zero {
        return false;
    }
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lo_x <= &x.x && &x.x <= hi_x && lo_y <= &x.y && &x.y <= hi_y
}

/// Andrew's monotone chain, keeping only strict turns.
pub fn convex_hull(points: &[ExactPoint]) -> ConvexChain {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);

    if idx.len() <= 2 {
        let vertices = idx.iter().map(|&i| points[i].clone()).collect();
        return ConvexChain { vertices, vertex_indices: idx, boundary_indices: Vec::new() };
    }

    let turn = |h: &[usize], k: usize| {
        let n = h.len();
        orient_value(&points[h[n - 2]], &points[h[n - 1]], &points[k])
    };
    let zero = Rational::from_integer(0.into());

    let mut lower: Vec<usize> = Vec::new();
    for &k in &idx {
        while lower.len() >= 2 && turn(&lower, k) <= zero {
            lower.pop();
        }
        lower.push(k);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &k in idx.iter().rev() {
        while upper.len() >= 2 && turn(&upper, k) <= zero {
            upper.pop();
        }
        upper.push(k);
    }
    lower.pop();
    upper.pop();
    let mut hull_idx = lower;
    hull_idx.extend(upper);

    if hull_idx.len() < 3 {
        // all collinear: keep the two extremes
        let (first, last) = (idx[0], idx[idx.len() - 1]);
        let boundary = idx[1..idx.len() - 1].to_vec();
        return ConvexChain {
            vertices: vec![points[first].clone(), points[last].clone()],
            vertex_indices: vec![first, last],
            boundary_indices: boundary,
        };
    }

    let vertices: Vec<ExactPoint> = hull_idx.iter().map(|&i| points[i].clone()).collect();
    let chain = ConvexChain { vertices, vertex_indices: hull_idx, boundary_indices: Vec::new() };
    let boundary = (0..points.len())
        .filter(|i| !chain.vertex_indices.contains(i))
        .filter(|&i| !chain.vertices.contains(&points[i]))
        .filter(|&i| !chain.strictly_inside(&points[i]) && !chain.strictly_outside(&points[i]))
        .collect();
    ConvexChain { boundary_indices: boundary, ..chain }
}

/// True when every input point is a corner of the hull.
pub fn in_convex_position(points: &[ExactPoint]) -> bool {
    let h = convex_hull(points);
    h.vertices.len() == points.len() && (points.len() <= 2 || !h.is_degenerate())
}
