//! Superelliptic curve data `u^m = p(t)`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{fmt_rational, q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("m = {0} is too small: the exponent of u must be at least 2")]
    MTooSmall(i64),
    #[error("p(t) has degree 0: at least one non-constant coefficient is required")]
    DegreeZero,
    #[error("p(t) is not monic: leading coefficient is {0}, expected 1")]
    NotMonic(String),
    #[error("a0 and a1 are both zero: 0 would be a root of p(t) of multiplicity >= 2")]
    BothA0A1Zero,
}

/// Validated pair `(m, p)` with `p = a_0 + a_1 t + ... + a_d t^d`.
///
/// Invariants: `m >= 2`, `d >= 1`, `a_d = 1` and `(a_0, a_1) != (0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    m: u32,
    coeffs: Vec<Rational>,
}

pub fn make_curve(m: i64, coeffs: Vec<Rational>) -> Result<CurveSpec, CurveError> {
    CurveSpec::new(m, coeffs)
}

impl CurveSpec {
    pub fn new(m: i64, coeffs: Vec<Rational>) -> Result<Self, CurveError> {
        if m < 2 {
            return Err(CurveError::MTooSmall(m));
        }
        if coeffs.len() < 2 {
            return Err(CurveError::DegreeZero);
        }
        let lead = coeffs.last().expect("len >= 2");
        if !lead.is_one() {
            return Err(CurveError::NotMonic(fmt_rational(lead)));
        }
        if coeffs[0].is_zero() && coeffs[1].is_zero() {
            return Err(CurveError::BothA0A1Zero);
        }
        let m = u32::try_from(m).map_err(|_| CurveError::MTooSmall(m))?;
        Ok(CurveSpec { m, coeffs })
    }

    pub fn from_ints(m: i64, coeffs: &[i64]) -> Result<Self, CurveError> {
        Self::new(m, coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_0, ..., a_d`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn a(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// Whether `a_0 != 0`, which decides the size of the basis window.
    pub fn has_nonzero_a0(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Lowest `k` with `t^k u^l dt` in the basis: `-d` if `a_0 != 0`, else `-(d-1)`.
    pub fn basis_low(&self) -> i64 {
        let d = self.degree() as i64;
        if self.has_nonzero_a0() {
            -d
        } else {
            -(d - 1)
        }
    }

    /// Coefficients `k a_k` of `p'(t)`, indexed by the power `k - 1`.
    pub fn derivative_coeffs(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * q(k as i64))
            .collect()
    }

    /// `p(t)` rendered in the ring-element grammar (descending powers).
    pub fn p_string(&self) -> String {
        let mut out = String::new();
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a < &Rational::zero();
            let abs = if neg { -a } else { a.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&abs), mono));
            }
        }
        out
    }

    pub fn summary(&self) -> CurveSummary {
        CurveSummary {
            m: self.m,
            d: self.degree(),
            coeffs: self.coeffs.iter().map(fmt_rational).collect(),
            p: self.p_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSummary {
    pub m: u32,
    pub d: usize,
    pub coeffs: Vec<String>,
    pub p: String,
}

impl std::fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "u^{} = {}", self.m, self.p_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn elliptic_half_is_valid() {
        let b = frac(1, 2);
        let c = CurveSpec::new(2, vec![q(0), q(1), -(q(2) * b), q(1)]).unwrap();
        assert_eq!(c.coeffs(), &[q(0), q(1), q(-1), q(1)]);
        assert_eq!(c.degree(), 3);
        assert_eq!(c.basis_low(), -2);
        assert_eq!(c.p_string(), "t^3 - t^2 + t");
    }

    #[test]
    fn djkm_is_valid() {
        let c = CurveSpec::from_ints(2, &[36, 0, -13, 0, 1]).unwrap();
        assert!(c.has_nonzero_a0());
        assert_eq!(c.basis_low(), -4);
    }

    #[test]
    fn rejections_name_the_invariant() {
        assert_eq!(
            CurveSpec::from_ints(3, &[0, 0, 1, 1]),
            Err(CurveError::BothA0A1Zero)
        );
        assert_eq!(CurveSpec::from_ints(1, &[1, 1]), Err(CurveError::MTooSmall(1)));
        assert_eq!(CurveSpec::from_ints(2, &[1]), Err(CurveError::DegreeZero));
        assert_eq!(CurveSpec::from_ints(2, &[]), Err(CurveError::DegreeZero));
        assert_eq!(
            CurveSpec::from_ints(2, &[1, 2]),
            Err(CurveError::NotMonic("2".into()))
        );
    }

    #[test]
    fn derivative() {
        let c = CurveSpec::from_ints(2, &[1, -4, 1]).unwrap();
        assert_eq!(c.derivative_coeffs(), vec![q(-4), q(2)]);
    }
}
