//! Classes in `Omega^1_R / dR`.
//!
//! Two independent engines compute the class of a differential:
//!
//! * [`reduce_mod_dr`] eliminates `du` and then walks each u-grade with the
//!   `(d+1)`-term recurrence until every exponent lies in the basis window.
//! * [`oracle_reduce`] builds the raw relations (`d` of every monomial and every
//!   monomial multiple of `m u^(m-1) du - p'(t) dt`) inside a finite window of
//!   t-exponents and solves for the basis coordinates by Gaussian elimination.
//!
//! The oracle never uses the recurrence, so agreement between the two is a
//! real check of the rewriter.

mod certificate;
mod oracle;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::curve::CurveSpec;
use crate::differential::Differential;
use crate::ring::Monomial;
use crate::rational::{fmt_rational, Rational};

pub use certificate::{independence_certificate, GradeCertificate, IndependenceCertificate};
pub use oracle::{oracle_reduce, oracle_reduce_auto, OracleError, OracleTable, MAX_WINDOW_RETRIES};
pub use rewrite::{eliminate_du, reduce_mod_dr};

/// A basis class of `Omega^1_R / dR`.
///
/// `Omega0` is the class of `t^-1 dt`; `W { k, l }` is the class of
/// `t^k u^l dt`. The derived order sorts by u-grade, then exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Omega0,
    W { l: u32, k: i64 },
}

impl BasisLabel {
    pub fn w(k: i64, l: u32) -> Self {
        BasisLabel::W { l, k }
    }

    pub fn grade(&self) -> u32 {
        match self {
            BasisLabel::Omega0 => 0,
            BasisLabel::W { l, .. } => *l,
        }
    }

    /// `(t-exponent, u-grade)` of the `dt` monomial this label stands for.
    pub fn monomial(&self) -> (i64, u32) {
        match self {
            BasisLabel::Omega0 => (-1, 0),
            BasisLabel::W { l, k } => (*k, *l),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Omega0 => write!(f, "omega0"),
            BasisLabel::W { l, k } => write!(f, "W({k},{l})"),
        }
    }
}

/// The basis `{t^-1 dt} u {t^k u^l dt : 1 <= l < m, basis_low <= k <= -1}`.
pub fn basis_of(curve: &CurveSpec) -> Vec<BasisLabel> {
    let mut out = vec![BasisLabel::Omega0];
    for l in 1..curve.m() {
        for k in curve.basis_low()..=-1 {
            out.push(BasisLabel::w(k, l));
        }
    }
    out
}

/// `1 + d(m-1)` if `a_0 != 0`, else `1 + (d-1)(m-1)`.
pub fn expected_dimension(curve: &CurveSpec) -> usize {
    let d = curve.degree();
    let per_grade = if curve.has_nonzero_a0() { d } else { d - 1 };
    1 + per_grade * (curve.m() as usize - 1)
}

/// Coordinates of a class over [`basis_of`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DiffClass {
    coords: BTreeMap<BasisLabel, Rational>,
}

impl DiffClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(label: BasisLabel, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_coord(label, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, label: &BasisLabel) -> Rational {
        self.coords.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coords(&self) -> impl Iterator<Item = (&BasisLabel, &Rational)> {
        self.coords.iter()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_coord(&mut self, label: BasisLabel, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(label).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&label);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffClass { coords: self.coords.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.coords.keys().map(BasisLabel::grade).collect();
        g.dedup();
        g
    }

    /// `sum c * t^k u^l dt` over the basis labels; reduces back to `self`.
    pub fn representative(&self) -> Differential {
        let mut out = Differential::zero();
        for (label, c) in &self.coords {
            let (k, l) = label.monomial();
            out.dt.add_term(Monomial::new(k, l), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("class serializes")
    }
}

#[derive(Serialize)]
struct WCoordJson {
    k: i64,
    l: u32,
    c: String,
}

#[derive(Serialize)]
struct DiffClassJson {
    omega0: String,
    w: Vec<WCoordJson>,
}

impl Serialize for DiffClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let json = DiffClassJson {
            omega0: fmt_rational(&self.coord(&BasisLabel::Omega0)),
            w: self
                .coords
                .iter()
                .filter_map(|(label, c)| match label {
                    BasisLabel::Omega0 => None,
                    BasisLabel::W { l, k } => Some(WCoordJson { k: *k, l: *l, c: fmt_rational(c) }),
                })
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl fmt::Display for DiffClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, c)) in self.coords.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            write!(f, "{}*{}", fmt_rational(&c.abs()), label)?;
        }
        Ok(())
    }
}

impl AddAssign<&DiffClass> for DiffClass {
    fn add_assign(&mut self, rhs: &DiffClass) {
        for (k, v) in &rhs.coords {
            self.add_coord(*k, v.clone());
        }
    }
}

impl SubAssign<&DiffClass> for DiffClass {
    fn sub_assign(&mut self, rhs: &DiffClass) {
        for (k, v) in &rhs.coords {
            self.add_coord(*k, -v.clone());
        }
    }
}

impl Add for &DiffClass {
    type Output = DiffClass;
    fn add(self, rhs: &DiffClass) -> DiffClass {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &DiffClass {
    type Output = DiffClass;
    fn sub(self, rhs: &DiffClass) -> DiffClass {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for DiffClass {
    type Output = DiffClass;
    fn add(mut self, rhs: DiffClass) -> DiffClass {
        self += &rhs;
        self
    }
}

impl Neg for &DiffClass {
    type Output = DiffClass;
    fn neg(self) -> DiffClass {
        DiffClass { coords: self.coords.iter().map(|(k, v)| (*k, -v.clone())).collect() }
    }
}

/// Closed range of t-exponents used by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "window lo {lo} > hi {hi}");
        Window { lo, hi }
    }

    pub fn contains(&self, exp: i64) -> bool {
        self.lo <= exp && exp <= self.hi
    }

    pub fn width(&self) -> i64 {
        self.hi - self.lo + 1
    }

    /// Covers the support, the basis exponents and a margin of `d + 2` on each side.
    pub fn default_for(support: Option<(i64, i64)>, curve: &CurveSpec) -> Self {
        let d = curve.degree() as i64;
        let (lo, hi) = support.unwrap_or((-1, -1));
        let lo = lo.min(-d);
        let hi = hi.max(-1);
        Window::new(lo - (d + 2), hi + (d + 2))
    }

    /// Roughly doubles the width, keeping the window centred.
    pub fn enlarged(&self) -> Self {
        let grow = self.width() / 2 + 1;
        Window::new(self.lo - grow, self.hi + grow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn bases_of_presets() {
        let elliptic = CurveSpec::from_ints(2, &[0, 1, -1, 1]).unwrap();
        assert_eq!(
            basis_of(&elliptic),
            vec![BasisLabel::Omega0, BasisLabel::w(-2, 1), BasisLabel::w(-1, 1)]
        );
        let djkm = CurveSpec::from_ints(2, &[36, 0, -13, 0, 1]).unwrap();
        assert_eq!(basis_of(&djkm).len(), 5);
        let three = CurveSpec::from_ints(2, &[0, 4, 1]).unwrap();
        assert_eq!(basis_of(&three), vec![BasisLabel::Omega0, BasisLabel::w(-1, 1)]);
    }

    #[test]
    fn dimension_formula() {
        for m in 2..=5 {
            for d in 1..=6usize {
                let mut with_a0 = vec![1i64; d + 1];
                with_a0[0] = 2;
                let c = CurveSpec::from_ints(m, &with_a0).unwrap();
                assert_eq!(basis_of(&c).len(), 1 + d * (m as usize - 1));
                assert_eq!(expected_dimension(&c), basis_of(&c).len());
                let mut without = vec![1i64; d + 1];
                without[0] = 0;
                let c = CurveSpec::from_ints(m, &without).unwrap();
                assert_eq!(basis_of(&c).len(), 1 + (d - 1) * (m as usize - 1));
            }
        }
    }

    #[test]
    fn class_json_shape() {
        let mut c = DiffClass::single(BasisLabel::Omega0, q(1));
        c.add_coord(BasisLabel::w(-2, 1), Rational::new(1.into(), 5.into()));
        assert_eq!(
            c.to_json().to_string(),
            r#"{"omega0":"1","w":[{"c":"1/5","k":-2,"l":1}]}"#
        );
        assert_eq!(DiffClass::zero().to_json().to_string(), r#"{"omega0":"0","w":[]}"#);
    }

    #[test]
    fn class_arithmetic_cancels() {
        let a = DiffClass::single(BasisLabel::w(-1, 2), q(3));
        assert!((&a - &a).is_zero());
        assert_eq!((&a + &a).coord(&BasisLabel::w(-1, 2)), q(6));
        assert_eq!(a.grades(), vec![2]);
    }
}
