//! Gadget point sets and their witness-circle families.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::delaunay::PointSet;
use crate::error::{Error, Result};
use crate::geom::{circle_from_diameter, circle_through_tangent_at, in_circle_sign, ExactCircle, ExactPoint, Sign};
use crate::rational::{self, Rational};

/// One gadget: three bottom points and a top point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub index: usize,
    pub ell: ExactPoint,
    pub m: ExactPoint,
    pub r: ExactPoint,
    pub t: ExactPoint,
}

impl Gadget {
    /// Unit gadget `{(−2,0), (0,0), (2,0), (0,3)}` scaled by `2^−i` and
    /// shifted right by `3 + 14(1 − 2^−i)`.
    pub fn standard(i: usize) -> Gadget {
        let s = rational::pow2(-(i as i64));
        let off = rational::int(3) + rational::int(14) * (rational::int(1) - &s);
        let zero = Rational::zero();
        let two_s = rational::int(2) * &s;
        Gadget {
            index: i,
            ell: ExactPoint::new(&off - &two_s, zero.clone()),
            m: ExactPoint::new(off.clone(), zero.clone()),
            r: ExactPoint::new(&off + &two_s, zero),
            t: ExactPoint::new(off, rational::int(3) * s),
        }
    }

    /// Bottom points move along `y += τx³`, the top point along `y −= τx³`.
    pub fn perturbed(&self, tau: &Rational) -> Gadget {
        let up = |p: &ExactPoint, sgn: i64| {
            let cube = &p.x * &p.x * &p.x;
            ExactPoint::new(p.x.clone(), &p.y + rational::int(sgn) * tau * cube)
        };
        Gadget { index: self.index, ell: up(&self.ell, 1), m: up(&self.m, 1), r: up(&self.r, 1), t: up(&self.t, -1) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    F1,
    G1,
    F2,
    G2,
    H,
    F3,
    G3,
    I2,
}

impl Role {
    /// Circles whose blocking areas share the left (F) or right (G) side of
    /// a gadget.
    pub fn group(self) -> Option<char> {
        match self {
            Role::F1 | Role::F2 | Role::F3 => Some('F'),
            Role::G1 | Role::G2 | Role::G3 => Some('G'),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCircle {
    pub role: Role,
    pub gadget: usize,
    pub circle: ExactCircle,
    /// Labels of the two construction points the circle passes through.
    pub through: [String; 2],
}

impl FamilyCircle {
    pub fn name(&self) -> String {
        format!("{}^({})", self.role, self.gadget)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CircleFamily {
    pub circles: Vec<FamilyCircle>,
}

impl CircleFamily {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn find(&self, role: Role, gadget: usize) -> Option<&FamilyCircle> {
        self.circles.iter().find(|c| c.role == role && c.gadget == gadget)
    }

    fn push(&mut self, role: Role, gadget: usize, circle: ExactCircle, a: &str, b: &str) {
        self.circles.push(FamilyCircle { role, gadget, circle, through: [a.to_string(), b.to_string()] });
    }

    /// Every circle must have exactly two points of `points` on it and none
    /// strictly inside.
    pub fn audit_emptiness(&self, points: &PointSet) -> Result<()> {
        for fc in &self.circles {
            let mut on = 0;
            for (i, p) in points.points.iter().enumerate() {
                match in_circle_sign(&fc.circle, p) {
                    Sign::Negative => {
                        return Err(Error::EmptinessViolated(format!("{} contains {}", fc.name(), points.label(i))))
                    }
                    Sign::Zero => on += 1,
                    Sign::Positive => {}
                }
            }
            if on != 2 {
                return Err(Error::EmptinessViolated(format!("{} has {on} points on it", fc.name())));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbedSet {
    pub base: Vec<Gadget>,
    #[serde(with = "rational::serde_rat")]
    pub tau: Rational,
    pub points: PointSet,
}

fn check_k(k: i64) -> Result<usize> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    Ok(k as usize)
}

fn gadget_points(gadgets: &[Gadget], with_m: bool) -> PointSet {
    let mut ps = PointSet::default();
    for g in gadgets {
        let i = g.index;
        ps.push(g.ell.clone(), Some(format!("ell_{i}")));
        if with_m {
            ps.push(g.m.clone(), Some(format!("m_{i}")));
        }
        ps.push(g.r.clone(), Some(format!("r_{i}")));
        ps.push(g.t.clone(), Some(format!("t_{i}")));
    }
    ps
}

/// The collinear construction with `4k` points, ordered `ell, m, r, t` per gadget.
pub fn build_p0(k: i64) -> Result<(PointSet, Vec<Gadget>)> {
    let k = check_k(k)?;
    let gadgets: Vec<Gadget> = (1..=k).map(Gadget::standard).collect();
    Ok((gadget_points(&gadgets, true), gadgets))
}

fn x_axis() -> (Rational, Rational) {
    (rational::int(1), Rational::zero())
}

fn lbl(name: &str, i: usize) -> String {
    format!("{name}_{i}")
}

pub fn build_c0(gadgets: &[Gadget]) -> Result<CircleFamily> {
    if gadgets.is_empty() {
        return Err(Error::InvalidK(0));
    }
    let mut fam = CircleFamily::default();
    for (n, g) in gadgets.iter().enumerate() {
        let i = g.index;
        fam.push(Role::F1, i, circle_through_tangent_at(&g.ell, &g.t, &x_axis())?, &lbl("ell", i), &lbl("t", i));
        fam.push(Role::G1, i, circle_through_tangent_at(&g.r, &g.t, &x_axis())?, &lbl("r", i), &lbl("t", i));
        fam.push(Role::F2, i, circle_from_diameter(&g.ell, &g.m)?, &lbl("ell", i), &lbl("m", i));
        fam.push(Role::G2, i, circle_from_diameter(&g.m, &g.r)?, &lbl("m", i), &lbl("r", i));
        if let Some(next) = gadgets.get(n + 1) {
            fam.push(Role::H, i, circle_from_diameter(&g.r, &next.ell)?, &lbl("r", i), &lbl("ell", next.index));
        }
    }
    Ok(fam)
}

/// Circle family of the perturbed construction, solved afresh at `tau`.
///
/// `gadgets` are the unperturbed gadgets; the first and last gadget lose
/// F1 and G1, middle gadgets gain F3 and G3.
pub fn build_c0_prime(gadgets: &[Gadget], tau: &Rational) -> Result<CircleFamily> {
    let k = gadgets.len();
    if k < 2 {
        return Err(Error::InvalidK(k as i64));
    }
    if tau.is_negative() {
        return Err(Error::InvalidInput("tau must be non-negative".into()));
    }
    let gs: Vec<Gadget> = gadgets.iter().map(|g| g.perturbed(tau)).collect();
    let mut fam = CircleFamily::default();
    for n in 0..k {
        let g = &gs[n];
        let i = g.index;
        let middle = n > 0 && n + 1 < k;
        if middle {
            let prev = &gs[n - 1];
            let next = &gs[n + 1];
            let f1 = circle_through_tangent_at(&g.ell, &g.t, &g.ell.sub(&prev.r))?;
            let g1 = circle_through_tangent_at(&g.r, &g.t, &next.ell.sub(&g.r))?;
            fam.push(Role::F1, i, f1, &lbl("ell", i), &lbl("t", i));
            fam.push(Role::G1, i, g1, &lbl("r", i), &lbl("t", i));
        }
        fam.push(Role::F2, i, circle_from_diameter(&g.ell, &g.m)?, &lbl("ell", i), &lbl("m", i));
        fam.push(Role::G2, i, circle_from_diameter(&g.m, &g.r)?, &lbl("m", i), &lbl("r", i));
        if middle {
            let next = &gs[n + 1];
            let f3 = circle_through_tangent_at(&g.t, &g.m, &next.t.sub(&g.t))?;
            let g3 = circle_through_tangent_at(&g.m, &g.t, &g.m.sub(&g.ell))?;
            fam.push(Role::F3, i, f3, &lbl("t", i), &lbl("m", i));
            fam.push(Role::G3, i, g3, &lbl("m", i), &lbl("t", i));
        }
        if n + 1 < k {
            let next = &gs[n + 1];
            fam.push(Role::H, i, circle_from_diameter(&g.r, &next.ell)?, &lbl("r", i), &lbl("ell", next.index));
        }
    }
    let pts = gadget_points(&gs, true);
    fam.audit_emptiness(&pts)?;
    Ok(fam)
}

pub fn perturb(base: &[Gadget], tau: &Rational) -> Result<PerturbedSet> {
    if tau.is_negative() {
        return Err(Error::InvalidInput("tau must be non-negative".into()));
    }
    let moved: Vec<Gadget> = base.iter().map(|g| g.perturbed(tau)).collect();
    Ok(PerturbedSet { base: base.to_vec(), tau: tau.clone(), points: gadget_points(&moved, true) })
}

/// The `3k`-point variant: middle points dropped, F2 and G2 merged into a
/// circle I2 on the diameter `ell r`.
pub fn build_alt_3k(k: i64) -> Result<(PointSet, CircleFamily)> {
    let k = check_k(k)?;
    let gadgets: Vec<Gadget> = (1..=k).map(Gadget::standard).collect();
    let mut fam = CircleFamily::default();
    for (n, g) in gadgets.iter().enumerate() {
        let i = g.index;
        fam.push(Role::F1, i, circle_through_tangent_at(&g.ell, &g.t, &x_axis())?, &lbl("ell", i), &lbl("t", i));
        fam.push(Role::G1, i, circle_through_tangent_at(&g.r, &g.t, &x_axis())?, &lbl("r", i), &lbl("t", i));
        fam.push(Role::I2, i, circle_from_diameter(&g.ell, &g.r)?, &lbl("ell", i), &lbl("r", i));
        if let Some(next) = gadgets.get(n + 1) {
            fam.push(Role::H, i, circle_from_diameter(&g.r, &next.ell)?, &lbl("r", i), &lbl("ell", next.index));
        }
    }
    Ok((gadget_points(&gadgets, false), fam))
}
