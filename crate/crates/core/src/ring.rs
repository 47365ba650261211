//! The ring `R = Q[t, t^-1, u] / (u^m - p(t))`.
//!
//! Elements are stored on the basis `t^i u^l` with `0 <= l < m`, so every
//! product is reduced through `u^m = p(t)` as it is formed.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::curve::CurveSpec;
use crate::rational::{q, Rational};

/// The basis monomial `t^exp u^grade`.
///
/// Field order gives the canonical term order: by u-grade, then t-exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub grade: u32,
    pub exp: i64,
}

impl Monomial {
    pub fn new(exp: i64, grade: u32) -> Self {
        Monomial { grade, exp }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    /// `c t^exp u^grade`. The caller guarantees `grade < m` of the curve in use;
    /// use [`CurveSpec::monomial`] for arbitrary powers of `u`.
    pub fn term(c: Rational, exp: i64, grade: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(Monomial::new(exp, grade), c);
        out
    }

    pub fn t_pow(exp: i64) -> Self {
        Self::term(q(1), exp, 0)
    }

    /// A Laurent polynomial in `t` from `(exponent, coefficient)` pairs.
    pub fn from_t_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(Monomial::new(e, 0), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64, grade: u32) -> Rational {
        self.terms
            .get(&Monomial::new(exp, grade))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shift_t(&self, shift: i64) -> Self {
        RingElement {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (Monomial::new(k.exp + shift, k.grade), v.clone()))
                .collect(),
        }
    }

    /// The set of u-grades present.
    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.terms.keys().map(|k| k.grade).collect();
        g.dedup();
        g
    }

    /// `Some(l)` when every term has u-grade `l`; `None` for zero or mixed elements.
    pub fn homogeneous_grade(&self) -> Option<u32> {
        match self.grades().as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    /// Restriction to a single u-grade.
    pub fn grade_part(&self, grade: u32) -> Self {
        RingElement {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.grade == grade)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn exp_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.exp).min()?;
        let hi = self.terms.keys().map(|k| k.exp).max()?;
        Some((lo, hi))
    }

    /// Product in `R`, rewriting `u^a` for `a >= m` through `u^m = p(t)`.
    pub fn mul(&self, rhs: &RingElement, curve: &CurveSpec) -> RingElement {
        let m = curve.m();
        let mut out = RingElement::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &rhs.terms {
                let c = cx * cy;
                let exp = x.exp + y.exp;
                let g = x.grade + y.grade;
                if g < m {
                    out.add_term(Monomial::new(exp, g), c);
                } else {
                    for (k, a) in curve.coeffs().iter().enumerate() {
                        if !a.is_zero() {
                            out.add_term(Monomial::new(exp + k as i64, g - m), &c * a);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32, curve: &CurveSpec) -> RingElement {
        let mut acc = RingElement::one();
        for _ in 0..n {
            acc = acc.mul(self, curve);
        }
        acc
    }
}

impl CurveSpec {
    /// `p(t)` as a ring element.
    pub fn p_element(&self) -> RingElement {
        RingElement::from_t_terms(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(k, a)| (k as i64, a.clone())),
        )
    }

    /// `p'(t)` as a ring element.
    pub fn p_prime_element(&self) -> RingElement {
        RingElement::from_t_terms(
            self.derivative_coeffs()
                .into_iter()
                .enumerate()
                .map(|(k, a)| (k as i64, a)),
        )
    }

    /// `u^n` reduced to the canonical basis: `p^(n div m) u^(n mod m)`.
    pub fn u_power(&self, n: u32) -> RingElement {
        let m = self.m();
        self.p_element()
            .pow(n / m, self)
            .mul(&RingElement::term(q(1), 0, n % m), self)
    }

    /// `c t^exp u^u_exp` for any `u_exp >= 0`.
    pub fn monomial(&self, c: Rational, exp: i64, u_exp: u32) -> RingElement {
        if u_exp < self.m() {
            RingElement::term(c, exp, u_exp)
        } else {
            self.u_power(u_exp).shift_t(exp).scale(&c)
        }
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl SubAssign<&RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: &RingElement) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, -v.clone());
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(mut self, rhs: RingElement) -> RingElement {
        self += &rhs;
        self
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(mut self, rhs: RingElement) -> RingElement {
        self -= &rhs;
        self
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-Rational::one())
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}
