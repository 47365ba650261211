//! Named hyperelliptic presets, the Pollaczek and Gegenbauer families, and
//! dimension diagnostics.

use std::ops::RangeInclusive;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, CurveSpec, CurveSummary};
use crate::differential::Differential;
use crate::omega::{basis_of, independence_certificate, reduce_mod_dr, BasisLabel, DiffClass};
use crate::poly::Poly;
use crate::rational::{fmt_rational, frac, q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("recursion denominator k + gamma vanishes at k = {k}")]
    ZeroDenominator { k: i64 },
    #[error("P_{index} is not divisible by b^2 - 1 (remainder {remainder})")]
    DivisibilityFailure { index: i64, remainder: String },
    #[error("a three-term recursion needs two initial polynomials, got {0}")]
    MissingInitials(usize),
}

impl From<CurveError> for FamilyError {
    fn from(e: CurveError) -> Self {
        FamilyError::BadParameter(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FourPointParam {
    B(Rational),
    A(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresetId {
    /// `u^2 = t^3 - 2b t^2 + t`.
    Elliptic(Rational),
    /// `u^2 = (t^2 - b^2)(t^2 - c^2)`.
    Djkm(Rational, Rational),
    /// `u^2 = t^2 + 4t`.
    ThreePoint,
    /// `u^2 = t^2 - 2b t + 1`, or given `a`, `b = (a+1)/(a-1)`.
    FourPoint(FourPointParam),
}

impl PresetId {
    pub fn name(&self) -> &'static str {
        match self {
            PresetId::Elliptic(_) => "elliptic",
            PresetId::Djkm(..) => "djkm",
            PresetId::ThreePoint => "threepoint",
            PresetId::FourPoint(_) => "fourpoint",
        }
    }
}

/// `b` for the 4-point ring given `a`.
pub fn fourpoint_b(a: &Rational) -> Result<Rational, FamilyError> {
    if a.is_zero() || a.is_one() {
        return Err(FamilyError::BadParameter(format!(
            "a must not be 0 or 1 (got {})",
            fmt_rational(a)
        )));
    }
    Ok((a + q(1)) / (a - q(1)))
}

pub fn preset_curve(id: &PresetId) -> Result<CurveSpec, FamilyError> {
    match id {
        PresetId::Elliptic(b) => Ok(CurveSpec::new(2, vec![q(0), q(1), -(b * q(2)), q(1)])?),
        PresetId::Djkm(b, c) => {
            if b == c || *b == -c {
                return Err(FamilyError::BadParameter(format!(
                    "b must not equal c or -c (b = {}, c = {})",
                    fmt_rational(b),
                    fmt_rational(c)
                )));
            }
            if b.is_zero() || c.is_zero() {
                return Err(FamilyError::BadParameter(
                    "b and c must be nonzero (0 would be a double root of p)".into(),
                ));
            }
            let b2 = b * b;
            let c2 = c * c;
            Ok(CurveSpec::new(2, vec![&b2 * &c2, q(0), -(b2 + c2), q(0), q(1)])?)
        }
        PresetId::ThreePoint => Ok(CurveSpec::from_ints(2, &[0, 4, 1])?),
        PresetId::FourPoint(param) => {
            let b = match param {
                FourPointParam::B(b) => b.clone(),
                FourPointParam::A(a) => fourpoint_b(a)?,
            };
            if b.is_one() || b == -Rational::one() {
                return Err(FamilyError::BadParameter("b must not be 1 or -1".into()));
            }
            Ok(CurveSpec::new(2, vec![q(1), -(b * q(2)), q(1)])?)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `(k+g) P_k = 2[(k+l+a+g-1) b + beta] P_{k-1} - (k+2l+g-2) P_{k-2}`.
    Pollaczek {
        lambda: Rational,
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
    },
    /// `k C_k = 2(k+l-1) b C_{k-1} - (k+2l-2) C_{k-2}`.
    Gegenbauer { lambda: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeqSpec {
    pub family: Family,
    pub initials: Vec<Poly>,
}

impl PolySeqSpec {
    pub fn pollaczek(lambda: Rational, alpha: Rational, beta: Rational, gamma: Rational, initials: Vec<Poly>) -> Self {
        PolySeqSpec { family: Family::Pollaczek { lambda, alpha, beta, gamma }, initials }
    }

    /// Standard initials `C_0 = 1`, `C_1 = 2 lambda b`.
    pub fn gegenbauer(lambda: Rational) -> Self {
        let c1 = Poly::new(vec![q(0), &lambda * q(2)]);
        PolySeqSpec { family: Family::Gegenbauer { lambda }, initials: vec![Poly::constant(q(1)), c1] }
    }

    /// `p_k` and `q_k` of the elliptic transfer with `beta` as a parameter.
    pub fn elliptic_transfer(beta: Rational) -> (Self, Self) {
        let mk = |init: Vec<Poly>| Self::pollaczek(frac(-1, 2), q(0), beta.clone(), frac(1, 2), init);
        (
            mk(vec![Poly::zero(), Poly::constant(q(1))]),
            mk(vec![Poly::constant(q(1)), Poly::zero()]),
        )
    }

    /// `(numerator, denominator)` with `denominator * P_k = numerator * P_{k-1} - second * P_{k-2}`.
    fn step(&self, k: i64) -> (Poly, Rational, Rational) {
        let kq = q(k);
        match &self.family {
            Family::Pollaczek { lambda, alpha, beta, gamma } => {
                let lin = Poly::new(vec![beta * q(2), (&kq + lambda + alpha + gamma - q(1)) * q(2)]);
                (lin, &kq + gamma, &kq + lambda * q(2) + gamma - q(2))
            }
            Family::Gegenbauer { lambda } => {
                let lin = Poly::new(vec![q(0), (&kq + lambda - q(1)) * q(2)]);
                (lin, kq.clone(), &kq + lambda * q(2) - q(2))
            }
        }
    }
}

/// `P_0, ..., P_{k_max}`.
pub fn poly_seq(spec: &PolySeqSpec, k_max: usize) -> Result<Vec<Poly>, FamilyError> {
    if spec.initials.len() < 2 {
        return Err(FamilyError::MissingInitials(spec.initials.len()));
    }
    let mut out: Vec<Poly> = spec.initials.iter().take(k_max + 1).cloned().collect();
    for k in out.len()..=k_max {
        let (lin, denom, second) = spec.step(k as i64);
        if denom.is_zero() {
            return Err(FamilyError::ZeroDenominator { k: k as i64 });
        }
        let next = &(&lin * &out[k - 1]) - &out[k - 2].scale(&second);
        out.push(next.scale(&(Rational::one() / denom)));
    }
    Ok(out)
}

/// Coefficients of `z^0..z^k_max` in `(1 - 2bz + z^2)^(-lambda)`, expanded
/// binomially in `w = -2bz + z^2`.
pub fn gegenbauer_series(lambda: &Rational, k_max: usize) -> Vec<Poly> {
    let s = -lambda;
    let mut out = vec![Poly::zero(); k_max + 1];
    let w: Vec<Poly> = vec![Poly::zero(), Poly::from_ints(&[0, -2]), Poly::constant(q(1))];
    let mut w_pow = vec![Poly::zero(); k_max + 1];
    w_pow[0] = Poly::constant(q(1));
    let mut binom = Rational::one();
    for n in 0..=k_max {
        if n > 0 {
            binom = binom * (&s - q(n as i64 - 1)) / q(n as i64);
            let mut next = vec![Poly::zero(); k_max + 1];
            for (i, a) in w_pow.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in w.iter().enumerate() {
                    if i + j <= k_max && !b.is_zero() {
                        next[i + j] = &next[i + j] + &(a * b);
                    }
                }
            }
            w_pow = next;
        }
        for (k, c) in w_pow.iter().enumerate() {
            if !c.is_zero() {
                out[k] = &out[k] + &c.scale(&binom);
            }
        }
    }
    out
}

/// `Q_k = -P_{k+2} / (b^2 - 1)` as a polynomial, `P` the `lambda = -1/2`
/// Gegenbauer sequence; fails unless the division is exact.
pub fn qk_fourpoint_poly(k: i64) -> Result<Poly, FamilyError> {
    if k < 0 {
        return Err(FamilyError::BadParameter(format!("k must be >= 0 (got {k})")));
    }
    let seq = poly_seq(&PolySeqSpec::gegenbauer(frac(-1, 2)), k as usize + 2)?;
    let (quot, rem) = seq[k as usize + 2].div_rem(&Poly::from_ints(&[-1, 0, 1]));
    if !rem.is_zero() {
        return Err(FamilyError::DivisibilityFailure { index: k + 2, remainder: rem.to_string() });
    }
    Ok(-&quot)
}

pub fn qk_fourpoint(k: i64, b: &Rational) -> Result<Rational, FamilyError> {
    if b.is_one() || *b == -Rational::one() {
        return Err(FamilyError::BadParameter("b must not be 1 or -1".into()));
    }
    Ok(qk_fourpoint_poly(k)?.eval(b))
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferRow {
    pub b: String,
    pub k: i64,
    /// Coordinates of `[t^(k-2) u dt]` on `W(-1,1)` and `W(-2,1)`.
    pub engine_p: String,
    pub engine_q: String,
    pub recursion_p: String,
    pub recursion_q: String,
    /// `p_k, q_k` as coordinates on `[t^-1 u dt], [t^-2 u dt]`.
    pub basis_reading: bool,
    /// `[t^(k-2) u dt] = p_k [t^(k-1) u dt] + q_k [t^-2 u dt]` verbatim.
    pub literal_reading: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub lambda: String,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub rows: Vec<TransferRow>,
    pub basis_reading_first_divergence: Option<i64>,
    pub literal_reading_first_divergence: Option<i64>,
    /// `beta` solved from the engine's `p_2 = 4(b + beta)/5`, one per sample.
    pub fitted_beta: Vec<String>,
    /// Whether the engine coefficients obey the recursion with the fitted `beta` on the whole range.
    pub fitted_recursion_holds: bool,
}

/// Compares the engine's elliptic reduction with the Pollaczek description
/// `lambda = -1/2, alpha = 0, beta = -1, gamma = 1/2`; a report, never an error.
pub fn pollaczek_transfer_check(b_samples: &[Rational], k_range: RangeInclusive<i64>) -> TransferReport {
    let k_lo = (*k_range.start()).max(0);
    let k_hi = *k_range.end();
    let k_max = k_hi.max(1) as usize;
    let (p_spec, q_spec) = PolySeqSpec::elliptic_transfer(q(-1));
    let p_seq = poly_seq(&p_spec, k_max).expect("gamma = 1/2 never vanishes");
    let q_seq = poly_seq(&q_spec, k_max).expect("gamma = 1/2 never vanishes");
    let plus = BasisLabel::w(-1, 1);
    let minus = BasisLabel::w(-2, 1);

    let mut rows = Vec::new();
    let mut fitted_beta = Vec::new();
    let mut fitted_recursion_holds = true;
    for b in b_samples {
        let curve = preset_curve(&PresetId::Elliptic(b.clone())).expect("elliptic preset");
        let class = |e: i64| reduce_mod_dr(&Differential::dt_term(q(1), e, 1), &curve);
        let c_minus = class(-2);
        let mut engine = Vec::new();
        for k in 0..=k_max as i64 {
            let c = class(k - 2);
            engine.push((c.coord(&plus), c.coord(&minus)));
        }
        for k in k_lo..=k_hi {
            let ku = k as usize;
            let (ep, eq) = &engine[ku];
            let rp = p_seq[ku].eval(b);
            let rq = q_seq[ku].eval(b);
            let basis_reading = *ep == rp && *eq == rq;
            let predicted: DiffClass = &class(k - 1).scale(&rp) + &c_minus.scale(&rq);
            let literal_reading = predicted == class(k - 2);
            rows.push(TransferRow {
                b: fmt_rational(b),
                k,
                engine_p: fmt_rational(ep),
                engine_q: fmt_rational(eq),
                recursion_p: fmt_rational(&rp),
                recursion_q: fmt_rational(&rq),
                basis_reading,
                literal_reading,
            });
        }

        let beta = if k_max >= 2 { &engine[2].0 * frac(5, 4) - b } else { Rational::zero() };
        let (fp, fq) = PolySeqSpec::elliptic_transfer(beta.clone());
        let fp = poly_seq(&fp, k_max).expect("gamma = 1/2");
        let fq = poly_seq(&fq, k_max).expect("gamma = 1/2");
        for (k, (ep, eq)) in engine.iter().enumerate() {
            if fp[k].eval(b) != *ep || fq[k].eval(b) != *eq {
                fitted_recursion_holds = false;
            }
        }
        fitted_beta.push(fmt_rational(&beta));
    }
    let first = |f: &dyn Fn(&TransferRow) -> bool| rows.iter().filter(|r| !f(r)).map(|r| r.k).min();
    TransferReport {
        lambda: "-1/2".into(),
        alpha: "0".into(),
        beta: "-1".into(),
        gamma: "1/2".into(),
        basis_reading_first_divergence: first(&|r| r.basis_reading),
        literal_reading_first_divergence: first(&|r| r.literal_reading),
        rows,
        fitted_beta,
        fitted_recursion_holds,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub curve: CurveSummary,
    pub basis: Vec<String>,
    pub certified: usize,
    pub certificate_pass: bool,
    /// `m(d-1)+1`, or `m(d-1)+1-(m-1)` when `a_0 = 0`.
    pub dimension_formula: i64,
    pub dimension_flagged: bool,
    /// `(m(d-1) - d - gcd(m,d))/2 + 1`; the genus when `p` is squarefree.
    pub genus: String,
    pub squarefree: bool,
    /// `gcd+1` if `a_0 != 0`, `gcd+m` if `a_0 = 0`.
    pub punctures_formula: i64,
    pub two_g_plus_n_minus_1: String,
    pub puncture_flagged: bool,
    /// Points over `t = 0` and `t = infinity`: `m + gcd` if `a_0 != 0`, `1 + gcd` otherwise.
    pub punctures_counted: i64,
    pub two_g_plus_counted_minus_1: String,
}

pub fn dimension_report(curve: &CurveSpec) -> DimensionReport {
    let m = i64::from(curve.m());
    let d = curve.degree() as i64;
    let g_md = m.gcd(&d);
    let a0 = curve.has_nonzero_a0();
    let cert = independence_certificate(curve);
    let certified = basis_of(curve).len();
    let dimension_formula = if a0 { m * (d - 1) + 1 } else { m * (d - 1) + 1 - (m - 1) };
    let genus = frac(m * (d - 1) - d - g_md, 2) + q(1);
    let punctures_formula = if a0 { g_md + 1 } else { g_md + m };
    let punctures_counted = if a0 { g_md + m } else { g_md + 1 };
    let total = |n: i64| &genus * q(2) + q(n - 1);
    let formula_total = total(punctures_formula);
    let p = Poly::new(curve.coeffs().to_vec());
    let squarefree = p.gcd(&p.derivative()).degree() == Some(0);
    DimensionReport {
        curve: curve.summary(),
        basis: basis_of(curve).iter().map(|l| l.to_string()).collect(),
        certified,
        certificate_pass: cert.pass,
        dimension_formula,
        dimension_flagged: dimension_formula != certified as i64,
        genus: fmt_rational(&genus),
        squarefree,
        punctures_formula,
        puncture_flagged: formula_total != q(certified as i64),
        two_g_plus_n_minus_1: fmt_rational(&formula_total),
        punctures_counted,
        two_g_plus_counted_minus_1: fmt_rational(&total(punctures_counted)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let e = preset_curve(&PresetId::Elliptic(frac(1, 2))).unwrap();
        assert_eq!(e, CurveSpec::from_ints(2, &[0, 1, -1, 1]).unwrap());
        let fa = preset_curve(&PresetId::FourPoint(FourPointParam::A(q(3)))).unwrap();
        let fb = preset_curve(&PresetId::FourPoint(FourPointParam::B(q(2)))).unwrap();
        assert_eq!(fa, fb);
        assert_eq!(fa, CurveSpec::from_ints(2, &[1, -4, 1]).unwrap());
        assert_eq!(preset_curve(&PresetId::ThreePoint).unwrap(), CurveSpec::from_ints(2, &[0, 4, 1]).unwrap());
        let dj = preset_curve(&PresetId::Djkm(q(2), q(3))).unwrap();
        assert_eq!(dj, CurveSpec::from_ints(2, &[36, 0, -13, 0, 1]).unwrap());
        assert!(preset_curve(&PresetId::Djkm(q(2), q(-2))).is_err());
        assert!(preset_curve(&PresetId::FourPoint(FourPointParam::B(q(-1)))).is_err());
        assert!(preset_curve(&PresetId::FourPoint(FourPointParam::A(q(1)))).is_err());
    }

    #[test]
    fn gegenbauer_minus_half() {
        let seq = poly_seq(&PolySeqSpec::gegenbauer(frac(-1, 2)), 3).unwrap();
        assert_eq!(seq[0], Poly::constant(q(1)));
        assert_eq!(seq[1], Poly::from_ints(&[0, -1]));
        assert_eq!(seq[2], Poly::new(vec![frac(1, 2), q(0), frac(-1, 2)]));
        assert_eq!(seq, gegenbauer_series(&frac(-1, 2), 3));
    }

    #[test]
    fn gegenbauer_matches_series() {
        for lambda in [frac(-1, 2), q(1), frac(3, 2), frac(-3, 4)] {
            let rec = poly_seq(&PolySeqSpec::gegenbauer(lambda.clone()), 20).unwrap();
            assert_eq!(rec, gegenbauer_series(&lambda, 20));
        }
    }

    #[test]
    fn pollaczek_initials_and_zero_denominator() {
        let (p, qs) = PolySeqSpec::elliptic_transfer(q(-1));
        let p = poly_seq(&p, 4).unwrap();
        let qs = poly_seq(&qs, 4).unwrap();
        assert_eq!((p[0].clone(), p[1].clone()), (Poly::zero(), Poly::constant(q(1))));
        assert_eq!((qs[0].clone(), qs[1].clone()), (Poly::constant(q(1)), Poly::zero()));
        let bad = PolySeqSpec::pollaczek(q(0), q(0), q(0), q(-3), vec![Poly::zero(), Poly::zero()]);
        assert_eq!(poly_seq(&bad, 5), Err(FamilyError::ZeroDenominator { k: 3 }));
    }

    #[test]
    fn fourpoint_q() {
        for k in 0..=20 {
            qk_fourpoint_poly(k).unwrap();
        }
        assert_eq!(qk_fourpoint(0, &q(0)).unwrap(), frac(1, 2));
        assert_eq!(qk_fourpoint(0, &frac(7, 3)).unwrap(), frac(1, 2));
        assert!(matches!(qk_fourpoint(0, &q(1)), Err(FamilyError::BadParameter(_))));
    }

    #[test]
    fn transfer_first_divergence() {
        let report = pollaczek_transfer_check(&[frac(1, 2), q(3)], 0..=6);
        assert_eq!(report.basis_reading_first_divergence, Some(2));
        assert_eq!(report.literal_reading_first_divergence, Some(1));
        assert_eq!(report.fitted_beta, vec!["0", "0"]);
        assert!(report.fitted_recursion_holds);
    }

    #[test]
    fn dimension_flags() {
        let dj = dimension_report(&preset_curve(&PresetId::Djkm(q(2), q(3))).unwrap());
        assert_eq!((dj.certified, dj.dimension_formula, dj.dimension_flagged), (5, 7, true));
        assert!(dj.puncture_flagged);
        assert_eq!(dj.two_g_plus_counted_minus_1, "5");
        let el = dimension_report(&preset_curve(&PresetId::Elliptic(frac(1, 2))).unwrap());
        assert_eq!((el.certified, el.dimension_formula, el.dimension_flagged), (3, 4, true));
        assert_eq!(el.two_g_plus_counted_minus_1, "3");
        let fp = dimension_report(&preset_curve(&PresetId::FourPoint(FourPointParam::B(q(2)))).unwrap());
        assert_eq!((fp.certified, fp.dimension_formula, fp.dimension_flagged), (3, 3, false));
    }
}
