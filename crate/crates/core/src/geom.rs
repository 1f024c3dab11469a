//! Exact rational plane geometry.
//!
//! Circles carry their squared radius, so containment, tangency and
//! incidence reduce to rational comparisons. The only irrational
//! quantities that ever show up (circle–circle intersections, extreme
//! points of a disk in a direction) involve a single square root and are
//! represented by [`SqrtExpr`] / [`SqrtPoint`], whose signs are decided
//! exactly by squaring.

use std::fmt;
use std::ops::Neg;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, serde_rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExactPoint {
    #[serde(with = "serde_rat")]
    pub x: Rational,
    #[serde(with = "serde_rat")]
    pub y: Rational,
}

impl ExactPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        ExactPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        ExactPoint::new(rational::int(x), rational::int(y))
    }

    pub fn sub(&self, o: &ExactPoint) -> (Rational, Rational) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn offset(&self, d: &(Rational, Rational), t: &Rational) -> ExactPoint {
        ExactPoint::new(&self.x + &d.0 * t, &self.y + &d.1 * t)
    }

    pub fn dist_sq(&self, o: &ExactPoint) -> Rational {
        let (dx, dy) = self.sub(o);
        &dx * &dx + &dy * &dy
    }

    pub fn midpoint(&self, o: &ExactPoint) -> ExactPoint {
        let half = rational::rat(1, 2);
        ExactPoint::new((&self.x + &o.x) * &half, (&self.y + &o.y) * &half)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.x), rational::to_f64(&self.y))
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactCircle {
    pub center: ExactPoint,
    #[serde(with = "serde_rat")]
    pub radius_sq: Rational,
}

impl ExactCircle {
    pub fn new(center: ExactPoint, radius_sq: Rational) -> Result<Self> {
        if !radius_sq.is_positive() {
            return Err(Error::DegenerateCircle);
        }
        Ok(ExactCircle { center, radius_sq })
    }

    /// `‖p − c‖² − r²`; its sign is the sign of `‖p − c‖ − r`.
    pub fn power(&self, p: &ExactPoint) -> Rational {
        p.dist_sq(&self.center) - &self.radius_sq
    }
}

pub fn cross(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.1 - &a.1 * &b.0
}

pub fn dot(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// Value of `det[[1,1,1],[px,qx,rx],[py,qy,ry]]`, twice the signed area of pqr.
pub fn orient_value(p: &ExactPoint, q: &ExactPoint, r: &ExactPoint) -> Rational {
    cross(&q.sub(p), &r.sub(p))
}

pub fn orient(p: &ExactPoint, q: &ExactPoint, r: &ExactPoint) -> Sign {
    Sign::of(&orient_value(p, q, r))
}

/// −1 strictly inside, 0 on the circle, +1 strictly outside.
pub fn in_circle_sign(c: &ExactCircle, p: &ExactPoint) -> Sign {
    Sign::of(&c.power(p))
}

pub fn circle_from_diameter(a: &ExactPoint, b: &ExactPoint) -> Result<ExactCircle> {
    if a == b {
        return Err(Error::DegenerateCircle);
    }
    ExactCircle::new(a.midpoint(b), a.dist_sq(b) / rational::int(4))
}

/// Circle through `p` and `q` that is tangent at `p` to the line through `p`
/// with direction `tangent_dir`.
///
/// The center is `p + h·n` with `n ⟂ tangent_dir`; equating the distances to
/// `p` and `q` gives `h = ‖q − p‖² / (2 n·(q − p))`.
pub fn circle_through_tangent_at(
    p: &ExactPoint,
    q: &ExactPoint,
    tangent_dir: &(Rational, Rational),
) -> Result<ExactCircle> {
    if tangent_dir.0.is_zero() && tangent_dir.1.is_zero() {
        return Err(Error::NoSolution("zero tangent direction".into()));
    }
    let n = (-tangent_dir.1.clone(), tangent_dir.0.clone());
    let qp = q.sub(p);
    let denom = dot(&n, &qp);
    if denom.is_zero() {
        return Err(Error::NoSolution(format!("{q} lies on the tangent line at {p}")));
    }
    let h = dot(&qp, &qp) / (rational::int(2) * denom);
    let center = p.offset(&n, &h);
    let radius_sq = center.dist_sq(p);
    ExactCircle::new(center, radius_sq)
}

/// Exact sign of `a + b·√c − d` for `c ≥ 0`.
pub fn compare_sqrt_expr(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Sign {
    sqrt_sign(&(a - d), b, c)
}

/// Exact sign of `e + b·√c` for `c ≥ 0`.
pub fn sqrt_sign(e: &Rational, b: &Rational, c: &Rational) -> Sign {
    assert!(!c.is_negative(), "square root of a negative rational");
    let se = Sign::of(e);
    let sb = if c.is_zero() { Sign::Zero } else { Sign::of(b) };
    if sb == Sign::Zero {
        return se;
    }
    if se == Sign::Zero || se == sb {
        return sb;
    }
    // opposite signs: compare e² against b²c
    match Sign::of(&(e * e - b * b * c)) {
        Sign::Positive => se,
        Sign::Negative => sb,
        Sign::Zero => Sign::Zero,
    }
}

/// Exact sign of `a + b·√c + d·√e` for `c, e ≥ 0`.
pub fn two_sqrt_sign(a: &Rational, b: &Rational, c: &Rational, d: &Rational, e: &Rational) -> Sign {
    let s1 = sqrt_sign(a, b, c);
    let s2 = if e.is_zero() { Sign::Zero } else { Sign::of(d) };
    if s2 == Sign::Zero {
        return s1;
    }
    if s1 == Sign::Zero || s1 == s2 {
        return s2;
    }
    // |a + b√c| vs |d√e|: (a + b√c)² − d²e = (a² + b²c − d²e) + 2ab√c
    let lhs = a * a + b * b * c - d * d * e;
    let rad = rational::int(2) * a * b;
    match sqrt_sign(&lhs, &rad, c) {
        Sign::Positive => s1,
        Sign::Negative => s2,
        Sign::Zero => Sign::Zero,
    }
}

/// `a + b·√c`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtExpr {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl SqrtExpr {
    pub fn sign(&self) -> Sign {
        sqrt_sign(&self.a, &self.b, &self.c)
    }

    /// Sign of `self − other`, radicands may differ.
    pub fn cmp_sign(&self, other: &SqrtExpr) -> Sign {
        two_sqrt_sign(&(&self.a - &other.a), &self.b, &self.c, &(-other.b.clone()), &other.c)
    }

    pub fn approx(&self, bits: u32) -> Rational {
        &self.a + &self.b * rational::sqrt_floor(&self.c, bits)
    }
}

/// The point `base + √root · dir`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtPoint {
    pub base: ExactPoint,
    pub dir: (Rational, Rational),
    pub root: Rational,
}

impl SqrtPoint {
    pub fn rational(p: ExactPoint) -> Self {
        SqrtPoint { base: p, dir: (Rational::zero(), Rational::zero()), root: Rational::zero() }
    }

    pub fn x(&self) -> SqrtExpr {
        SqrtExpr { a: self.base.x.clone(), b: self.dir.0.clone(), c: self.root.clone() }
    }

    pub fn y(&self) -> SqrtExpr {
        SqrtExpr { a: self.base.y.clone(), b: self.dir.1.clone(), c: self.root.clone() }
    }

    /// `u·x + w` evaluated at this point.
    pub fn linear(&self, u: &(Rational, Rational), w: &Rational) -> SqrtExpr {
        SqrtExpr { a: &u.0 * &self.base.x + &u.1 * &self.base.y + w, b: dot(u, &self.dir), c: self.root.clone() }
    }

    /// `‖x − c‖² − r²`.
    pub fn power(&self, circle: &ExactCircle) -> SqrtExpr {
        let d = self.base.sub(&circle.center);
        SqrtExpr {
            a: dot(&d, &d) + &self.root * dot(&self.dir, &self.dir) - &circle.radius_sq,
            b: rational::int(2) * dot(&self.dir, &d),
            c: self.root.clone(),
        }
    }

    /// Orientation of `(p, q, self)`.
    pub fn orient_from(&self, p: &ExactPoint, q: &ExactPoint) -> Sign {
        // cross(q − p, x − p) is linear in x: u = (−(qy − py), qx − px)
        let (dx, dy) = q.sub(p);
        let u = (-dy.clone(), dx.clone());
        let w = -(&u.0 * &p.x + &u.1 * &p.y);
        self.linear(&u, &w).sign()
    }

    pub fn same_as(&self, o: &SqrtPoint) -> bool {
        self.x().cmp_sign(&o.x()) == Sign::Zero && self.y().cmp_sign(&o.y()) == Sign::Zero
    }

    pub fn approx(&self, bits: u32) -> ExactPoint {
        ExactPoint::new(self.x().approx(bits), self.y().approx(bits))
    }
}

/// The 0, 1 or 2 intersection points of two circles with distinct centers.
pub fn circle_intersections(c1: &ExactCircle, c2: &ExactCircle) -> Vec<SqrtPoint> {
    let d = c2.center.sub(&c1.center);
    let len_sq = dot(&d, &d);
    if len_sq.is_zero() {
        return Vec::new();
    }
    // foot of the radical line along c1→c2, as a fraction of d
    let s = (&len_sq + &c1.radius_sq - &c2.radius_sq) / (rational::int(2) * &len_sq);
    let h_sq = &c1.radius_sq - &s * &s * &len_sq;
    if h_sq.is_negative() {
        return Vec::new();
    }
    let base = c1.center.offset(&d, &s);
    if h_sq.is_zero() {
        return vec![SqrtPoint::rational(base)];
    }
    let root = h_sq / &len_sq;
    let perp = (-d.1.clone(), d.0.clone());
    let neg = (-perp.0.clone(), -perp.1.clone());
    vec![SqrtPoint { base: base.clone(), dir: perp, root: root.clone() }, SqrtPoint { base, dir: neg, root }]
}

/// The point of the closed disk maximizing `u·x`.
pub fn disk_extreme_point(c: &ExactCircle, u: &(Rational, Rational)) -> SqrtPoint {
    let len_sq = dot(u, u);
    assert!(!len_sq.is_zero(), "direction must be nonzero");
    SqrtPoint { base: c.center.clone(), dir: u.clone(), root: &c.radius_sq / len_sq }
}
