//! Non-adaptive Monte Carlo mean: one shared set of sampled columns for every row.

use super::{BudgetAudit, MeanEstimate};
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::summation::pairwise_sum;
use crate::tensor_space::DiscreteFunction;

/// `⌈n / N1⌉`, the per-row sample count.
pub fn samples_per_row(n: usize, n1: usize) -> usize {
    n.div_ceil(n1)
}

/// Non-adaptive estimate of the row means with nominal budget `n`.
///
/// For `n < N1` the output is zero and no oracle calls are made. Otherwise
/// `L' = ⌈n/N1⌉` columns are drawn once and shared by all rows, and row `i`
/// is estimated by `(1/L') Σ_l f(i, η_l)`. Costs `N1·L' <= 2n` evaluations.
pub fn a2_mean(f: &DiscreteFunction, n: usize, s: &mut Stream) -> Result<MeanEstimate> {
    let (n1, n2) = (f.n1(), f.n2());
    if n >= n1 * n2 {
        return Err(Error::ExactCheaper { n, cells: n1 * n2 });
    }
    if n < n1 {
        return Ok(MeanEstimate {
            values: vec![0.0; n1],
            audit: BudgetAudit::single_stage(0, n, 1),
        });
    }
    let mut columns = vec![0; samples_per_row(n, n1)];
    s.fill_indices(n2, &mut columns);
    let values = a2_mean_with_columns(f, &columns);
    Ok(MeanEstimate {
        values,
        audit: BudgetAudit::single_stage((n1 * columns.len()) as u64, n, 1),
    })
}

/// Row means estimated from the given zero-based column sample.
pub fn a2_mean_with_columns(f: &DiscreteFunction, columns: &[usize]) -> Vec<f64> {
    assert!(!columns.is_empty());
    let mut buf = vec![0.0; columns.len()];
    f.rows()
        .map(|row| {
            for (slot, &j) in buf.iter_mut().zip(columns) {
                *slot = row[j];
            }
            pairwise_sum(&buf) / columns.len() as f64
        })
        .collect()
}
