//! Fixtures shared by the benchmarks.

use parint_core::rng::SeedSpec;
use parint_core::DiscreteFunction;

/// An `n1 × n2` matrix with entries uniform in `[-1, 1)`, reproducible from `seed`.
pub fn random_matrix(n1: usize, n2: usize, seed: u64) -> DiscreteFunction {
    let mut s = SeedSpec::new(seed).derive();
    let values = (0..n1 * n2).map(|_| 2.0 * s.uniform_f64() - 1.0).collect();
    DiscreteFunction::new(n1, n2, values).expect("finite entries")
}
