use std::collections::BTreeMap;

use num_traits::Zero;

use super::{oracle_reduce_auto, BasisLabel, DiffClass};
use crate::curve::CurveSpec;
use crate::differential::Differential;
use crate::rational::{q, Rational};
use crate::ring::{Monomial, RingElement};

/// Rewrites every `du` term as `dt` terms, modulo `dR`.
///
/// `t^i u^(m-1) du = (1/m) t^i p'(t) dt` holds exactly in `Omega^1_R`; for
/// `b <= m-2`, `t^i u^b du == -(i/(b+1)) t^(i-1) u^(b+1) dt` because
/// `d(t^i u^(b+1))` is exact.
pub fn eliminate_du(w: &Differential, curve: &CurveSpec) -> Differential {
    let m = curve.m();
    let mut dt = w.dt.clone();
    let p_prime = curve.derivative_coeffs();
    let inv_m = q(1) / q(i64::from(m));
    for (mono, c) in w.du.terms() {
        if mono.grade == m - 1 {
            for (k, a) in p_prime.iter().enumerate() {
                if !a.is_zero() {
                    dt.add_term(Monomial::new(mono.exp + k as i64, 0), c * a * &inv_m);
                }
            }
        } else if mono.exp != 0 {
            let factor = -q(mono.exp) / q(i64::from(mono.grade) + 1);
            dt.add_term(Monomial::new(mono.exp - 1, mono.grade + 1), c * factor);
        }
    }
    Differential::from_dt(dt)
}

/// The grade-`l` relations
/// `r_j = sum_k a_k ((m+l) k + m j) t^(j+k-1) u^l dt == 0 (mod dR)`.
struct Recurrence<'a> {
    curve: &'a CurveSpec,
    l: i64,
}

impl Recurrence<'_> {
    fn coeff(&self, j: i64, k: usize) -> Rational {
        let m = i64::from(self.curve.m());
        let a = self.curve.a(k);
        if a.is_zero() {
            return Rational::zero();
        }
        a * q((m + self.l) * k as i64 + m * j)
    }

    /// Replaces `c x_target` using relation `r_j`, whose term at `x_target`
    /// has index `k_pivot`. Returns `false` if that pivot coefficient vanishes.
    fn apply(
        &self,
        terms: &mut BTreeMap<i64, Rational>,
        target: i64,
        c: &Rational,
        j: i64,
        k_pivot: usize,
    ) -> bool {
        let pivot = self.coeff(j, k_pivot);
        if pivot.is_zero() {
            return false;
        }
        let scale = -(c / pivot);
        for k in 0..=self.curve.degree() {
            if k == k_pivot {
                continue;
            }
            let ck = self.coeff(j, k);
            if ck.is_zero() {
                continue;
            }
            let idx = j + k as i64 - 1;
            debug_assert_ne!(idx, target);
            let e = terms.entry(idx).or_insert_with(Rational::zero);
            *e += &scale * ck;
            if e.is_zero() {
                terms.remove(&idx);
            }
        }
        true
    }
}

/// Coordinates of the class of `w` over the basis.
///
/// Grade 0 keeps only the `t^-1 dt` coefficient. In grade `l >= 1` exponents
/// above `-1` are pushed down with the top term of the recurrence and
/// exponents below the window are pushed up with its bottom term. A vanishing
/// pivot hands that single term to the oracle.
pub fn reduce_mod_dr(w: &Differential, curve: &CurveSpec) -> DiffClass {
    let dt_only = eliminate_du(w, curve);
    let mut out = DiffClass::zero();
    out.add_coord(BasisLabel::Omega0, dt_only.dt.coeff(-1, 0));

    let d = curve.degree();
    let low = curve.basis_low();
    let a0_nonzero = curve.has_nonzero_a0();
    for l in 1..curve.m() {
        let mut terms: BTreeMap<i64, Rational> = dt_only
            .dt
            .terms()
            .filter(|(mono, _)| mono.grade == l)
            .map(|(mono, c)| (mono.exp, c.clone()))
            .collect();
        if terms.is_empty() {
            continue;
        }
        let rec = Recurrence { curve, l: i64::from(l) };

        while let Some((&top, _)) = terms.iter().next_back() {
            if top <= -1 {
                break;
            }
            let c = terms.remove(&top).expect("present");
            // r_j with j + d - 1 = top
            let j = top - d as i64 + 1;
            if !rec.apply(&mut terms, top, &c, j, d) {
                out += &singular_step(top, l, &c, curve);
            }
        }
        while let Some((&bottom, _)) = terms.iter().next() {
            if bottom >= low {
                break;
            }
            let c = terms.remove(&bottom).expect("present");
            let ok = if a0_nonzero {
                rec.apply(&mut terms, bottom, &c, bottom + 1, 0)
            } else {
                rec.apply(&mut terms, bottom, &c, bottom, 1)
            };
            if !ok {
                out += &singular_step(bottom, l, &c, curve);
            }
        }
        for (k, c) in terms {
            out.add_coord(BasisLabel::w(k, l), c);
        }
    }
    out
}

fn singular_step(exp: i64, l: u32, c: &Rational, curve: &CurveSpec) -> DiffClass {
    let term = Differential::from_dt(RingElement::term(c.clone(), exp, l));
    oracle_reduce_auto(&term, curve).expect("oracle resolves a single monomial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn elliptic() -> CurveSpec {
        CurveSpec::from_ints(2, &[0, 1, -1, 1]).unwrap()
    }

    #[test]
    fn du_alone_is_exact() {
        let w = Differential::du_term(q(1), 0, 0);
        assert!(eliminate_du(&w, &elliptic()).is_zero());
    }

    #[test]
    fn t_du_becomes_minus_u_dt() {
        let w = Differential::du_term(q(1), 1, 0);
        assert_eq!(eliminate_du(&w, &elliptic()), Differential::dt_term(q(-1), 0, 1));
    }

    #[test]
    fn top_du_uses_p_prime() {
        // m = 3, p = t^3 + 2t + 5: t^2 u^2 du = (1/3) t^2 (3t^2 + 2) dt
        let c = CurveSpec::from_ints(3, &[5, 2, 0, 1]).unwrap();
        let w = Differential::du_term(q(1), 2, 2);
        let expected = &Differential::dt_term(q(1), 4, 0) + &Differential::dt_term(frac(2, 3), 2, 0);
        assert_eq!(eliminate_du(&w, &c), expected);
    }

    #[test]
    fn basis_elements_are_fixed() {
        let c = elliptic();
        assert_eq!(
            reduce_mod_dr(&Differential::dt_term(q(1), -1, 0), &c),
            DiffClass::single(BasisLabel::Omega0, q(1))
        );
        assert_eq!(
            reduce_mod_dr(&Differential::dt_term(q(3), -2, 1), &c),
            DiffClass::single(BasisLabel::w(-2, 1), q(3))
        );
    }

    #[test]
    fn grade_zero_powers_vanish() {
        let c = elliptic();
        for j in -6..=6 {
            if j != -1 {
                assert!(reduce_mod_dr(&Differential::dt_term(q(1), j, 0), &c).is_zero());
            }
        }
    }

    #[test]
    fn elliptic_t0_u_dt() {
        // r_{-2}: -x_{-2} - 2 x_{-1} + 5 x_0 = 0 for b = 1/2
        let c = elliptic();
        let got = reduce_mod_dr(&Differential::dt_term(q(1), 0, 1), &c);
        let mut expected = DiffClass::single(BasisLabel::w(-1, 1), frac(2, 5));
        expected.add_coord(BasisLabel::w(-2, 1), frac(1, 5));
        assert_eq!(got, expected);
    }
}
