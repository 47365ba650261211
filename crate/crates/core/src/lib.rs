//! Exact computation of `Omega^1_R / dR` for superelliptic rings
//! `R = Q[t, t^-1, u] / (u^m - p(t))`, the universal 2-cocycle on `g (x) R`,
//! and the classical hyperelliptic families.
//!
//! Every coefficient is an exact [`Rational`]. Classes are expressed on the
//! basis `omega0 = [t^-1 dt]` and `W(k,l) = [t^k u^l dt]`.

pub mod cocycle;
pub mod curve;
pub mod differential;
pub mod families;
pub mod lie;
pub mod linalg;
pub mod omega;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod sample;
pub mod text;

pub use cocycle::{
    bracket_ext, check_two_cocycle, cocycle_gamma, commutation_table, prop_q_check, prop_tt_check,
    prop_uu_check, CocycleError, CommutationTable, ExtElement, LoopElement,
};
pub use curve::{make_curve, CurveError, CurveSpec};
pub use differential::{derive, f_dg, Differential, Generator};
pub use families::{
    dimension_report, pollaczek_transfer_check, poly_seq, preset_curve, qk_fourpoint, FamilyError,
    FourPointParam, PolySeqSpec, PresetId,
};
pub use lie::{LieData, LieError};
pub use omega::{
    basis_of, independence_certificate, oracle_reduce, oracle_reduce_auto, reduce_mod_dr,
    BasisLabel, DiffClass, OracleError, Window,
};
pub use poly::Poly;
pub use rational::{parse_rational, Rational};
pub use ring::{Monomial, RingElement};
pub use text::{parse_differential, parse_element, parse_expression, Expression, ParseError};
