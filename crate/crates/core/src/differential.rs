//! Unreduced differentials `sum c t^i u^a dt + sum c t^i u^b du`.
//!
//! A [`Differential`] is an element of the free module `R dt + R du`; the
//! relation `m u^(m-1) du = p'(t) dt` is only applied by explicit operations.

use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::curve::CurveSpec;
use crate::rational::{q, Rational};
use crate::ring::{Monomial, RingElement};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Differential {
    pub dt: RingElement,
    pub du: RingElement,
}

/// Which generator a monomial differential multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Dt,
    Du,
}

impl Differential {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(dt: RingElement, du: RingElement) -> Self {
        Differential { dt, du }
    }

    pub fn from_dt(dt: RingElement) -> Self {
        Differential { dt, du: RingElement::zero() }
    }

    pub fn from_du(du: RingElement) -> Self {
        Differential { dt: RingElement::zero(), du }
    }

    /// `c t^exp u^grade dt`.
    pub fn dt_term(c: Rational, exp: i64, grade: u32) -> Self {
        Self::from_dt(RingElement::term(c, exp, grade))
    }

    /// `c t^exp u^grade du`.
    pub fn du_term(c: Rational, exp: i64, grade: u32) -> Self {
        Self::from_du(RingElement::term(c, exp, grade))
    }

    pub fn is_zero(&self) -> bool {
        self.dt.is_zero() && self.du.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Differential { dt: self.dt.scale(c), du: self.du.scale(c) }
    }

    /// `f * self` in the free module.
    pub fn mul_ring(&self, f: &RingElement, curve: &CurveSpec) -> Self {
        Differential { dt: f.mul(&self.dt, curve), du: f.mul(&self.du, curve) }
    }

    /// All terms as `(generator, monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Generator, &Monomial, &Rational)> {
        self.dt
            .terms()
            .map(|(k, v)| (Generator::Dt, k, v))
            .chain(self.du.terms().map(|(k, v)| (Generator::Du, k, v)))
    }

    /// Grade of a monomial differential: `a` for `u^a dt`, `b + 1 mod m` for `u^b du`.
    pub fn term_grade(generator: Generator, mono: &Monomial, m: u32) -> u32 {
        match generator {
            Generator::Dt => mono.grade,
            Generator::Du => (mono.grade + 1) % m,
        }
    }

    /// The homogeneous component of u-grade `grade` (mod `m`).
    pub fn grade_part(&self, grade: u32, m: u32) -> Self {
        Differential {
            dt: self.dt.grade_part(grade),
            du: self.du.grade_part((grade + m - 1) % m),
        }
    }

    pub fn grades(&self, m: u32) -> Vec<u32> {
        let mut g: Vec<u32> = self
            .terms()
            .map(|(gen, mono, _)| Self::term_grade(gen, mono, m))
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Smallest and largest t-exponent over both generators.
    pub fn exp_range(&self) -> Option<(i64, i64)> {
        match (self.dt.exp_range(), self.du.exp_range()) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r),
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
        }
    }
}

/// The derivation `d : R -> R dt + R du`,
/// `d(t^j u^l) = j t^(j-1) u^l dt + l t^j u^(l-1) du`.
pub fn derive(f: &RingElement) -> Differential {
    let mut out = Differential::zero();
    for (mono, c) in f.terms() {
        if mono.exp != 0 {
            out.dt.add_term(Monomial::new(mono.exp - 1, mono.grade), c * q(mono.exp));
        }
        if mono.grade != 0 {
            out.du.add_term(
                Monomial::new(mono.exp, mono.grade - 1),
                c * q(i64::from(mono.grade)),
            );
        }
    }
    out
}

/// `f dg`.
pub fn f_dg(f: &RingElement, g: &RingElement, curve: &CurveSpec) -> Differential {
    derive(g).mul_ring(f, curve)
}

/// The generator `m u^(m-1) du - p'(t) dt` of the module relations.
pub fn module_relation(curve: &CurveSpec) -> Differential {
    Differential {
        dt: -curve.p_prime_element(),
        du: RingElement::term(q(i64::from(curve.m())), 0, curve.m() - 1),
    }
}

impl AddAssign<&Differential> for Differential {
    fn add_assign(&mut self, rhs: &Differential) {
        self.dt += &rhs.dt;
        self.du += &rhs.du;
    }
}

impl SubAssign<&Differential> for Differential {
    fn sub_assign(&mut self, rhs: &Differential) {
        self.dt -= &rhs.dt;
        self.du -= &rhs.du;
    }
}

impl Add for &Differential {
    type Output = Differential;
    fn add(self, rhs: &Differential) -> Differential {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Differential {
    type Output = Differential;
    fn sub(self, rhs: &Differential) -> Differential {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Differential {
    type Output = Differential;
    fn add(mut self, rhs: Differential) -> Differential {
        self += &rhs;
        self
    }
}

impl Sub for Differential {
    type Output = Differential;
    fn sub(mut self, rhs: Differential) -> Differential {
        self -= &rhs;
        self
    }
}

impl Neg for &Differential {
    type Output = Differential;
    fn neg(self) -> Differential {
        Differential { dt: -&self.dt, du: -&self.du }
    }
}

impl Neg for Differential {
    type Output = Differential;
    fn neg(self) -> Differential {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_t2u() {
        let f = RingElement::term(q(1), 2, 1);
        let expected = &Differential::dt_term(q(2), 1, 1) + &Differential::du_term(q(1), 2, 0);
        assert_eq!(derive(&f), expected);
    }

    #[test]
    fn derive_constant() {
        assert!(derive(&RingElement::constant(q(5))).is_zero());
    }

    #[test]
    fn derive_inverse_t_u2() {
        let f = RingElement::term(q(1), -1, 2);
        let expected = &Differential::dt_term(q(-1), -2, 2) + &Differential::du_term(q(2), -1, 1);
        assert_eq!(derive(&f), expected);
    }

    #[test]
    fn grade_split() {
        let w = &Differential::dt_term(q(1), 3, 1) + &Differential::du_term(q(1), 0, 1);
        assert_eq!(w.grades(3), vec![1, 2]);
        assert_eq!(w.grade_part(2, 3), Differential::du_term(q(1), 0, 1));
        assert_eq!(w.exp_range(), Some((0, 3)));
    }
}
