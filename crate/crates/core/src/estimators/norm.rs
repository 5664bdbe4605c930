//! Randomized estimation of `‖f‖_{L_q}` from `n` uniform point samples.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::rng::Stream;
use crate::summation::pairwise_sum_by;

/// Moment order used when `p = ∞` and `q = 1`, where any value in `(2, ∞)` is valid.
pub const DEFAULT_P1_INF_ONE: f64 = 3.0;

/// The moment order `p₁` at which the norm estimator's error is controlled:
/// `1/p₁ = 1 + 1/p − 1/q`, except `p = ∞, q = 1` which returns
/// [`DEFAULT_P1_INF_ONE`].
pub fn holder_exponent_p1(p: Exponent, q: f64) -> Result<f64> {
    let q_exp = Exponent::finite(q)?;
    if !q_exp.lt(p) {
        return Err(Error::Domain(format!(
            "p1 is defined for 1 <= q < p, got p = {p}, q = {q}"
        )));
    }
    if p.is_infinite() && q == 1.0 {
        return Ok(DEFAULT_P1_INF_ONE);
    }
    Ok(1.0 / (1.0 + p.recip() - 1.0 / q))
}

/// `((1/n) Σ_{i=1..n} |row[ξ_i]|^q)^{1/q}` with `ξ_i` i.i.d. uniform column
/// indices drawn from `s`. Consumes exactly `n` index draws.
///
/// # Panics
/// If `row` is empty, `n == 0`, or `q` is not a finite number `>= 1`.
pub fn a1_norm_estimate(row: &[f64], q: f64, n: usize, s: &mut Stream) -> f64 {
    assert!(!row.is_empty(), "norm estimate of an empty row");
    assert!(n > 0, "norm estimate needs n >= 1");
    let mut draws = vec![0; n];
    s.fill_indices(row.len(), &mut draws);
    a1_norm_estimate_at(row, q, &draws)
}

/// The norm estimate evaluated at fixed (zero-based) sample positions.
pub fn a1_norm_estimate_at(row: &[f64], q: f64, draws: &[usize]) -> f64 {
    assert!(q.is_finite() && q >= 1.0, "q must be finite and >= 1");
    assert!(!draws.is_empty(), "need at least one sample");
    let samples: Vec<f64> = draws.iter().map(|&j| row[j]).collect();
    let n = samples.len() as f64;
    if q == 2.0 {
        (pairwise_sum_by(&samples, |v| v * v) / n).sqrt()
    } else if q == 1.0 {
        pairwise_sum_by(&samples, f64::abs) / n
    } else {
        (pairwise_sum_by(&samples, |v| v.abs().powf(q)) / n).powf(1.0 / q)
    }
}
