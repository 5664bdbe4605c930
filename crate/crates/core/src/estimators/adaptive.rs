//! Adaptive two-stage mean estimator.
//!
//! Stage one estimates every row's `L_2` norm from a shared column sample
//! (median over `m` repetitions). Rows whose squared norm estimate exceeds
//! the average receive proportionally more samples in stage two, whose
//! per-row means are again median-boosted over `m` repetitions.

use super::median::median_in_place;
use super::nonadaptive::samples_per_row;
use super::{BudgetAudit, MeanEstimate};
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::summation::{pairwise_sum, pairwise_sum_by};
use crate::tensor_space::DiscreteFunction;

/// Relative slack on the allocation branch test, so that rows whose
/// estimates are equal up to rounding all take the base branch.
const BRANCH_RTOL: f64 = 1e-12;

/// Parameters of the adaptive estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveConfig {
    /// Nominal budget.
    pub n: usize,
    /// Median repetitions.
    pub m: usize,
    /// Moment order for error reporting.
    pub w: f64,
}

impl AdaptiveConfig {
    pub fn new(n: usize, m: usize, w: f64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Domain(format!("need n >= 1 and m >= 1, got n = {n}, m = {m}")));
        }
        if !(w.is_finite() && w >= 1.0) {
            return Err(Error::Domain(format!(
                "moment order w must be finite and >= 1, got {w}"
            )));
        }
        Ok(AdaptiveConfig { n, m, w })
    }
}

/// `m` repetitions × `len` zero-based column indices, repetition-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexTable {
    m: usize,
    len: usize,
    cols: Vec<usize>,
}

impl IndexTable {
    pub fn draw(m: usize, len: usize, n2: usize, s: &mut Stream) -> Self {
        let mut cols = vec![0; m * len];
        s.fill_indices(n2, &mut cols);
        IndexTable { m, len, cols }
    }

    /// Table from explicit repetitions, all of equal length.
    pub fn from_reps(reps: &[Vec<usize>]) -> Self {
        let len = reps.first().map_or(0, Vec::len);
        assert!(reps.iter().all(|r| r.len() == len), "ragged index table");
        IndexTable {
            m: reps.len(),
            len,
            cols: reps.concat(),
        }
    }

    pub fn repetition(&self, k: usize) -> &[usize] {
        &self.cols[k * self.len..(k + 1) * self.len]
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// Output of the norm-estimation stage.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstStage {
    /// `ã_i`, the median `L_2` norm estimate of row `i`.
    pub norms: Vec<f64>,
    pub calls: u64,
}

/// Stage one with budget `n` and `m` repetitions.
///
/// # Panics
/// If `n < N1` or `m == 0`.
pub fn a3_first_stage(f: &DiscreteFunction, n: usize, m: usize, s: &mut Stream) -> FirstStage {
    assert!(n >= f.n1(), "first stage needs n >= N1");
    assert!(m > 0);
    let table = IndexTable::draw(m, samples_per_row(n, f.n1()), f.n2(), s);
    a3_first_stage_with_table(f, &table)
}

pub fn a3_first_stage_with_table(f: &DiscreteFunction, table: &IndexTable) -> FirstStage {
    let len = table.len;
    let mut samples = vec![0.0; len];
    let mut reps = vec![0.0; table.m];
    let norms = f
        .rows()
        .map(|row| {
            for (k, a_ik) in reps.iter_mut().enumerate() {
                for (slot, &j) in samples.iter_mut().zip(table.repetition(k)) {
                    *slot = row[j];
                }
                *a_ik = (pairwise_sum_by(&samples, |v| v * v) / len as f64).sqrt();
            }
            median_in_place(&mut reps)
        })
        .collect();
    FirstStage {
        norms,
        calls: (table.m * f.n1() * len) as u64,
    }
}

/// Per-row sample counts for stage two.
///
/// `n_i = ⌈n/N1⌉` when `ã_i² <= (1/N1) Σ ã_l²`, otherwise `⌈ã_i² n / Σ ã_l²⌉`.
/// Every `n_i >= ⌈n/N1⌉` and `Σ n_i <= 2n + N1`.
///
/// # Panics
/// If `norms` is empty, has a negative entry, or `n < N1`.
pub fn a3_allocate(norms: &[f64], n: usize) -> Vec<usize> {
    let n1 = norms.len();
    assert!(n1 > 0 && n >= n1, "allocation needs n >= N1 >= 1");
    assert!(norms.iter().all(|&a| a >= 0.0), "norm estimates must be nonnegative");
    let base = samples_per_row(n, n1);
    let total = pairwise_sum_by(norms, |a| a * a);
    norms
        .iter()
        .map(|&a| {
            let sq = a * a;
            if n1 as f64 * sq <= total * (1.0 + BRANCH_RTOL) {
                base
            } else {
                // The branch condition guarantees this is at least `base`;
                // the max guards against rounding.
                ((sq * n as f64 / total).ceil() as usize).max(base)
            }
        })
        .collect()
}

/// Adaptive estimate of the row means.
///
/// Stage one reads `s.substream(0)`, stage two `s.substream(1)`; `s` itself
/// is not advanced. Costs at most `6mn` evaluations.
pub fn a3_mean(f: &DiscreteFunction, cfg: &AdaptiveConfig, s: &mut Stream) -> Result<MeanEstimate> {
    let (n1, n2) = (f.n1(), f.n2());
    let AdaptiveConfig { n, m, .. } = *cfg;
    if n >= n1 * n2 {
        return Err(Error::ExactCheaper { n, cells: n1 * n2 });
    }
    if n < n1 {
        return Ok(MeanEstimate {
            values: vec![0.0; n1],
            audit: BudgetAudit::two_stage(0, 0, n, m),
        });
    }
    let first = a3_first_stage(f, n, m, &mut s.substream(0));
    let alloc = a3_allocate(&first.norms, n);
    let longest = *alloc.iter().max().expect("N1 >= 1");
    let table = IndexTable::draw(m, longest, n2, &mut s.substream(1));
    let values = a3_second_stage_with_table(f, &alloc, &table);
    let stage2 = (m * alloc.iter().sum::<usize>()) as u64;
    Ok(MeanEstimate {
        values,
        audit: BudgetAudit::two_stage(first.calls, stage2, n, m),
    })
}

/// Stage two: row `i` averages the first `n_i` columns of each repetition,
/// then takes the median over repetitions.
pub fn a3_second_stage_with_table(f: &DiscreteFunction, alloc: &[usize], table: &IndexTable) -> Vec<f64> {
    assert_eq!(alloc.len(), f.n1());
    let longest = alloc.iter().copied().max().unwrap_or(0);
    assert!(longest <= table.len, "index table shorter than allocation");
    let mut samples = vec![0.0; longest];
    let mut reps = vec![0.0; table.m];
    f.rows()
        .zip(alloc)
        .map(|(row, &n_i)| {
            for (k, b_ik) in reps.iter_mut().enumerate() {
                let cols = &table.repetition(k)[..n_i];
                for (slot, &j) in samples.iter_mut().zip(cols) {
                    *slot = row[j];
                }
                *b_ik = pairwise_sum(&samples[..n_i]) / n_i as f64;
            }
            median_in_place(&mut reps)
        })
        .collect()
}

/// Smallest odd integer `>= (8(w+1)/log₂e) · log₂(N1+N2)`.
///
/// This is the repetition count under which the worst-case guarantee holds;
/// far larger than needed at small sizes.
pub fn default_m(n1: usize, n2: usize, w: f64) -> usize {
    let c = 8.0 * (w + 1.0) / std::f64::consts::LOG2_E;
    let bound = (c * ((n1 + n2) as f64).log2()).ceil().max(1.0) as usize;
    if bound % 2 == 1 {
        bound
    } else {
        bound + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::nonadaptive::a2_mean;
    use crate::rng::SeedSpec;

    #[test]
    fn config_validation() {
        assert!(AdaptiveConfig::new(0, 1, 1.0).is_err());
        assert!(AdaptiveConfig::new(1, 0, 1.0).is_err());
        assert!(AdaptiveConfig::new(1, 1, 0.5).is_err());
        assert!(AdaptiveConfig::new(1, 1, f64::INFINITY).is_err());
        assert!(AdaptiveConfig::new(4, 3, 2.0).is_ok());
    }

    #[test]
    fn first_stage_constant_magnitude_and_zero_rows() {
        let f = DiscreteFunction::from_rows(&[[2.0, -2.0, 2.0, -2.0], [0.0; 4]]).unwrap();
        let out = a3_first_stage(&f, 6, 5, &mut SeedSpec::new(1).derive());
        assert_eq!(out.norms, vec![2.0, 0.0]);
        assert_eq!(out.calls, 5 * 2 * 3);
    }

    #[test]
    fn first_stage_fixed_table() {
        // Single row (0, 2), ⌈n/N1⌉ = 2, m = 3 with draws (1,1), (2,2), (1,2)
        // (one-based): a = (0, 2, √2), median √2.
        let f = DiscreteFunction::from_rows(&[[0.0, 2.0]]).unwrap();
        let table = IndexTable::from_reps(&[vec![0, 0], vec![1, 1], vec![0, 1]]);
        let out = a3_first_stage_with_table(&f, &table);
        assert_eq!(out.norms, vec![2f64.sqrt()]);
        assert_eq!(out.calls, 6);
    }

    #[test]
    fn allocation_examples() {
        assert_eq!(a3_allocate(&[1.5; 4], 10), vec![3; 4]);
        assert_eq!(a3_allocate(&[0.0; 4], 10), vec![3; 4]);
        assert_eq!(a3_allocate(&[0.0, 1.0], 10), vec![5, 10]);
        assert_eq!(a3_allocate(&[1.0, 1.0, 2.0], 12), vec![4, 4, 8]);
        // Equal values whose sum of squares is inexact still take the base branch.
        assert_eq!(a3_allocate(&[0.1; 7], 70), vec![10; 7]);
    }

    #[test]
    #[should_panic]
    fn allocation_rejects_negative() {
        a3_allocate(&[1.0, -0.5], 4);
    }

    #[test]
    fn constant_function_is_exact() {
        let f = DiscreteFunction::constant(3, 20, 1.25);
        for m in [1, 2, 5] {
            let cfg = AdaptiveConfig::new(9, m, 1.0).unwrap();
            let est = a3_mean(&f, &cfg, &mut SeedSpec::new(m as u64).derive()).unwrap();
            assert_eq!(est.values, vec![1.25; 3]);
        }
    }

    #[test]
    fn zero_function_audit() {
        let f = DiscreteFunction::zeros(4, 50);
        let (n, m) = (10, 3);
        let cfg = AdaptiveConfig::new(n, m, 1.0).unwrap();
        let est = a3_mean(&f, &cfg, &mut SeedSpec::new(2).derive()).unwrap();
        assert_eq!(est.values, vec![0.0; 4]);
        // n_i = ⌈n/N1⌉ = 3 everywhere: total = 2·m·N1·⌈n/N1⌉.
        assert_eq!(est.audit.stage1_calls, 36);
        assert_eq!(est.audit.stage2_calls, 36);
        assert_eq!(est.audit.total_calls, 72);
        assert!(est.audit.total_calls <= (6 * m * n) as u64);
    }

    #[test]
    fn below_n1_and_above_cells() {
        let f = DiscreteFunction::constant(4, 3, 1.0);
        let cfg = AdaptiveConfig::new(3, 3, 1.0).unwrap();
        let est = a3_mean(&f, &cfg, &mut SeedSpec::new(0).derive()).unwrap();
        assert_eq!(est.values, vec![0.0; 4]);
        assert_eq!(est.audit.total_calls, 0);
        let cfg = AdaptiveConfig::new(12, 3, 1.0).unwrap();
        assert!(matches!(
            a3_mean(&f, &cfg, &mut SeedSpec::new(0).derive()),
            Err(Error::ExactCheaper { .. })
        ));
    }

    #[test]
    fn single_repetition_with_uniform_magnitudes_matches_nonadaptive() {
        // |f| constant forces the base allocation, so with m = 1 stage two
        // is exactly the non-adaptive estimator on the stage-two stream.
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|i| {
                (0..40)
                    .map(|j| if (i * 31 + j * 17) % 3 == 0 { 1.0 } else { -1.0 })
                    .collect()
            })
            .collect();
        let f = DiscreteFunction::from_rows(&rows).unwrap();
        let n = 23;
        let s = SeedSpec::with_path(11, &[4]).derive();
        let cfg = AdaptiveConfig::new(n, 1, 1.0).unwrap();
        let adaptive = a3_mean(&f, &cfg, &mut s.clone()).unwrap();
        let plain = a2_mean(&f, n, &mut s.substream(1)).unwrap();
        assert_eq!(adaptive.values, plain.values);
    }

    #[test]
    fn default_m_examples() {
        assert_eq!(default_m(1, 1, 1.0), 13);
        assert_eq!(default_m(2, 2, 1.0), 23);
        assert_eq!(default_m(1, 3, 1.0), 23);
        let mut last = 0;
        for total in 2..200 {
            let m = default_m(1, total - 1, 1.0);
            assert!(m >= last && m % 2 == 1);
            last = m;
        }
        assert!(default_m(10, 10, 3.0) >= default_m(10, 10, 1.0));
    }
}
