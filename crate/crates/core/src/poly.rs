//! Dense univariate polynomials over the rationals and exact isolation of
//! their positive real roots (Descartes' rule with bisection).

use num_traits::{One, Signed, Zero};

use crate::geom::Sign;
use crate::rational::{self, Rational};

/// Coefficients in increasing degree; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> Sign {
        Sign::of(&self.eval(x))
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    /// Drops the factor `x^j` with the largest `j`.
    pub fn strip_zero_roots(&self) -> Poly {
        let j = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Poly::new(self.coeffs[j..].to_vec())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rational::int(i as i64)).collect())
    }

    fn monic(&self) -> Poly {
        let l = self.lead().clone();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len();
        if rem.len() < dd {
            return (Poly::new(Vec::new()), self.clone());
        }
        let mut quo = vec![Rational::zero(); rem.len() - dd + 1];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd - 1] / d.lead();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quo[i] = c;
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Same roots, each with multiplicity one.
    pub fn square_free(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() <= 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// `p(a + s·x)`.
    pub fn compose_linear(&self, a: &Rational, s: &Rational) -> Poly {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        // Horner over polynomials: acc = acc·(a + s x) + c
        for c in self.coeffs.iter().rev() {
            let mut next = vec![Rational::zero(); out.len()];
            for (i, v) in out.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                next[i] += v * a;
                if i + 1 < next.len() {
                    next[i + 1] += v * s;
                }
            }
            next[0] += c;
            out = next;
        }
        Poly::new(out)
    }

    /// Upper bound on the absolute value of every real root.
    pub fn cauchy_bound(&self) -> Rational {
        let l = self.lead().abs();
        let m = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs() / &l).max().unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Descartes bound on the number of roots in the open interval `(a, b)`:
    /// sign variations of `(1 + x)^n p((a + b x) / (1 + x))`.
    pub fn variations_in(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.coeffs.len();
        if n <= 1 {
            return 0;
        }
        // q(y) = p(a + (b − a) y) on (0, 1); then reverse and shift by one.
        let q = self.compose_linear(a, &(b - a));
        let mut rev = q.coeffs.clone();
        rev.resize(n, Rational::zero());
        rev.reverse();
        let shifted = Poly::new(rev).compose_linear(&Rational::one(), &Rational::one());
        sign_variations(&shifted.coeffs)
    }

    /// Disjoint open intervals (or exact points, `lo == hi`) each holding
    /// exactly one positive root of the square-free part.
    pub fn isolate_positive_roots(&self) -> Vec<(Rational, Rational)> {
        let p = self.strip_zero_roots().square_free();
        if p.degree() < 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut stack = vec![(Rational::zero(), p.cauchy_bound())];
        while let Some((a, b)) = stack.pop() {
            match p.variations_in(&a, &b) {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let mid = (&a + &b) / rational::int(2);
                    if p.sign_at(&mid) == Sign::Zero {
                        out.push((mid.clone(), mid.clone()));
                    }
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
        out.sort();
        out
    }

    /// A positive rational strictly below every positive root, capped at
    /// `cap`. `None` for the zero polynomial.
    pub fn positive_root_gap(&self, cap: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        let p = self.strip_zero_roots().square_free();
        let Some((a, b)) = p.isolate_positive_roots().into_iter().next() else {
            return Some(cap.clone());
        };
        let two = rational::int(2);
        if a == b {
            return Some((&a / &two).min(cap.clone()));
        }
        let (mut a, mut b) = (a, b);
        let s0 = p.sign_at(&Rational::zero());
        while a.is_zero() {
            let mid = &b / &two;
            let sm = p.sign_at(&mid);
            if sm == Sign::Zero {
                return Some((&mid / &two).min(cap.clone()));
            }
            if sm == s0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        Some(a.min(cap.clone()))
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

pub fn sign_variations(coeffs: &[Rational]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
