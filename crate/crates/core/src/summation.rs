//! Pairwise summation.
//!
//! All norms and means in the crate go through here so that results do not
//! depend on accumulation order beyond a fixed, deterministic tree.

const BLOCK: usize = 64;

/// Pairwise sum of `values`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    pairwise_sum_by(values, |x| x)
}

/// Pairwise sum of `map(v)` over `values`.
pub fn pairwise_sum_by<F>(values: &[f64], map: F) -> f64
where
    F: Fn(f64) -> f64 + Copy,
{
    if values.len() <= BLOCK {
        let mut acc = 0.0;
        for &v in values {
            acc += map(v);
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum_by(&values[..mid], map) + pairwise_sum_by(&values[mid..], map)
}

/// Arithmetic mean with pairwise summation. Returns 0 for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_on_small_input() {
        let v = [1.0, 2.0, 3.0, 4.5];
        assert_eq!(pairwise_sum(&v), 10.5);
    }

    #[test]
    fn beats_naive_accumulation() {
        // 0.1 is inexact in binary; naive summation of 10^6 copies drifts
        // by ~1e-6 relative, pairwise stays near machine precision.
        let v = vec![0.1; 1_000_000];
        let s = pairwise_sum(&v);
        assert!((s - 100_000.0).abs() / 100_000.0 < 1e-12, "{s}");
    }

    #[test]
    fn mapped_sum() {
        let v = [-3.0, 1.0];
        assert_eq!(pairwise_sum_by(&v, f64::abs), 4.0);
        assert_eq!(mean(&[]), 0.0);
    }
}
