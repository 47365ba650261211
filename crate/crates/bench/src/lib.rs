//! Shared inputs for the benchmarks.

use omegadr_core::sample::{derive_seed, random_curve, random_differential, random_element, seeded_rng, SampleConfig};
use omegadr_core::{CurveSpec, Differential, RingElement};

/// A random curve for the grid cell `(m, d)` with `a_0 != 0`, plus `n`
/// random differentials and `n` random ring elements on it.
pub fn workload(m: u32, d: usize, n: usize) -> (CurveSpec, Vec<Differential>, Vec<RingElement>) {
    let mut rng = seeded_rng(derive_seed(42, &[u64::from(m), d as u64]));
    let curve = random_curve(&mut rng, m, d, false);
    let cfg = SampleConfig::default();
    let ws = (0..n).map(|_| random_differential(&mut rng, &curve, &cfg)).collect();
    let fs = (0..n).map(|_| random_element(&mut rng, &curve, &cfg)).collect();
    (curve, ws, fs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workload_is_reproducible() {
        let (c1, w1, f1) = workload(3, 4, 5);
        let (c2, w2, f2) = workload(3, 4, 5);
        assert_eq!((c1, w1, f1), (c2, w2, f2));
    }
}
