use omegadr_core::cocycle::{bracket_ext, cocycle_gamma, ExtElement, LoopElement};
use omegadr_core::differential::{derive, Differential};
use omegadr_core::lie::LieData;
use omegadr_core::omega::{oracle_reduce_auto, reduce_mod_dr};
use omegadr_core::rational::q;
use omegadr_core::ring::RingElement;
use omegadr_core::sample::{random_curve, random_differential, random_element, seeded_rng, SampleConfig};
use omegadr_core::text::{parse_differential, parse_element};
use omegadr_core::CurveSpec;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64, m: u32, d: usize, a0_zero: bool) -> (ChaCha8Rng, CurveSpec) {
    let mut rng = seeded_rng(seed);
    let curve = random_curve(&mut rng, m, d, a0_zero);
    (rng, curve)
}

/// Image of `w` under `dt -> m u^(m-1)`, `du -> p'`: the `dt`-coefficient of
/// `m u^(m-1) w`, which is injective on differentials of the domain `R`.
fn flatten(w: &Differential, curve: &CurveSpec) -> RingElement {
    let m = i64::from(curve.m());
    let lead = curve.monomial(q(m), 0, curve.m() - 1);
    w.dt.mul(&lead, curve) + w.du.mul(&curve.p_prime_element(), curve)
}

fn cells() -> impl Strategy<Value = (u64, u32, usize, bool)> {
    (any::<u64>(), 2u32..=5, 1usize..=6, any::<bool>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms((seed, m, d, z) in cells()) {
        let (mut rng, c) = setup(seed, m, d, z);
        let cfg = SampleConfig::default();
        let f = random_element(&mut rng, &c, &cfg);
        let g = random_element(&mut rng, &c, &cfg);
        let h = random_element(&mut rng, &c, &cfg);
        prop_assert_eq!(f.mul(&g, &c), g.mul(&f, &c));
        prop_assert_eq!(f.mul(&g, &c).mul(&h, &c), f.mul(&g.mul(&h, &c), &c));
        prop_assert_eq!(f.mul(&(&g + &h), &c), f.mul(&g, &c) + f.mul(&h, &c));
    }

    #[test]
    fn leibniz((seed, m, d, z) in cells()) {
        let (mut rng, c) = setup(seed, m, d, z);
        let cfg = SampleConfig::default();
        let f = random_element(&mut rng, &c, &cfg);
        let g = random_element(&mut rng, &c, &cfg);
        let lhs = derive(&f.mul(&g, &c));
        let rhs = derive(&g).mul_ring(&f, &c) + derive(&f).mul_ring(&g, &c);
        prop_assert_eq!(flatten(&lhs, &c), flatten(&rhs, &c));
    }

    #[test]
    fn exact_forms_vanish((seed, m, d, z) in cells()) {
        let (mut rng, c) = setup(seed, m, d, z);
        let h = random_element(&mut rng, &c, &SampleConfig::default());
        prop_assert!(reduce_mod_dr(&derive(&h), &c).is_zero());
    }

    #[test]
    fn rewriter_agrees_with_oracle((seed, m, d, z) in cells()) {
        let (mut rng, c) = setup(seed, m, d, z);
        let w = random_differential(&mut rng, &c, &SampleConfig::default());
        prop_assert_eq!(reduce_mod_dr(&w, &c), oracle_reduce_auto(&w, &c).unwrap());
    }

    #[test]
    fn reduction_is_linear((seed, m, d, z) in cells(), a in -5i64..=5) {
        let (mut rng, c) = setup(seed, m, d, z);
        let cfg = SampleConfig::default();
        let w1 = random_differential(&mut rng, &c, &cfg);
        let w2 = random_differential(&mut rng, &c, &cfg);
        let lhs = reduce_mod_dr(&(w1.scale(&q(a)) + w2.clone()), &c);
        let rhs = &reduce_mod_dr(&w1, &c).scale(&q(a)) + &reduce_mod_dr(&w2, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_idempotent_and_graded((seed, m, d, z) in cells()) {
        let (mut rng, c) = setup(seed, m, d, z);
        let w = random_differential(&mut rng, &c, &SampleConfig::default());
        let class = reduce_mod_dr(&w, &c);
        prop_assert_eq!(reduce_mod_dr(&class.representative(), &c), class.clone());
        let grades = w.grades(c.m());
        for g in class.grades() {
            prop_assert!(grades.contains(&g));
        }
    }

    #[test]
    fn gamma_antisymmetric((seed, m, d, z) in cells()) {
        let (mut rng, c) = setup(seed, m, d, z);
        let cfg = SampleConfig::default();
        let f = random_element(&mut rng, &c, &cfg);
        let g = random_element(&mut rng, &c, &cfg);
        prop_assert!((&cocycle_gamma(&f, &g, &c) + &cocycle_gamma(&g, &f, &c)).is_zero());
    }

    #[test]
    fn bracket_grade_additive((seed, m, d, z) in cells(), i in -6i64..=6, j in -6i64..=6) {
        let (mut rng, c) = setup(seed, m, d, z);
        let a = rand::Rng::gen_range(&mut rng, 0..c.m());
        let b = rand::Rng::gen_range(&mut rng, 0..c.m());
        let lie = LieData::sl2();
        let x = ExtElement::from_loop(LoopElement::basis(1, RingElement::term(q(1), i, a)));
        let y = ExtElement::from_loop(LoopElement::basis(1, RingElement::term(q(1), j, b)));
        let out = bracket_ext(&x, &y, &lie, &c).unwrap();
        for g in out.central.grades() {
            prop_assert_eq!(g, (a + b) % c.m());
        }
    }

    #[test]
    fn print_parse_round_trip((seed, m, d, z) in cells()) {
        let (mut rng, c) = setup(seed, m, d, z);
        let cfg = SampleConfig::default();
        let f = random_element(&mut rng, &c, &cfg);
        let printed = f.to_string();
        let back = parse_element(&printed, &c).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), printed);
        let w = random_differential(&mut rng, &c, &cfg);
        let printed = w.to_string();
        let back = parse_differential(&printed, &c).unwrap();
        prop_assert_eq!(back.to_string(), printed);
    }
}
