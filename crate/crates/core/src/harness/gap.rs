//! Equal-budget comparison of the adaptive and non-adaptive estimators.
//!
//! At every budget `n` the dimensions follow [`coupled_dims`], both
//! estimators face all four hard families (tuned to `n`), and each one's
//! error is the maximum over the families. The adaptive estimator runs with
//! nominal budget `⌊n/(6m)⌋`, so its audited calls never exceed `n` while the
//! non-adaptive one spends `N1⌈n/N1⌉ ∈ [n, 2n)`.

use crate::error::{Error, Result};
use crate::estimators::{default_m, AdaptiveConfig, Algorithm};
use crate::exponent::{Exponent, ExponentPair};
use crate::instances::{HardFamily, InstanceSource, InstanceSpec};
use crate::rng::SeedSpec;

use super::envelope::gap_exponent;
use super::fit::{fit_rate, RateFit};
use super::plan::coupled_dims;
use super::trial::{Experiment, TrialRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct GapConfig {
    pub p: Exponent,
    pub q: Exponent,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    /// Median repetitions; `None` picks [`default_m`] per point.
    pub m: Option<usize>,
    pub w: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub err_nonadaptive: f64,
    pub err_adaptive: f64,
    pub ratio: f64,
    /// Largest audited call count of the non-adaptive runs.
    pub budget_nonadaptive: u64,
    /// Largest audited call count of the adaptive runs.
    pub budget_adaptive: u64,
    /// Per-family records, non-adaptive then adaptive for each family.
    pub records: Vec<TrialRecord>,
}

/// A grid point that could not be run, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPoint {
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub rows: Vec<GapRow>,
    pub skipped: Vec<SkippedPoint>,
    /// Fit of `ratio` against `n`.
    pub fit: Result<RateFit>,
    /// The exponent the ratio should grow with.
    pub theory_exponent: f64,
}

/// Nominal budget of the adaptive estimator matched to total budget `n`.
pub fn adaptive_nominal(n: usize, m: usize) -> usize {
    n / (6 * m)
}

/// Runs the gap experiment. Point `k`, family `j` uses seed path `[k, j]`
/// for both estimators, so they see identical instance draws.
pub fn gap_experiment(cfg: &GapConfig) -> Result<GapReport> {
    let pair = ExponentPair::new(cfg.p, cfg.q);
    if !pair.is_adaptive_regime() {
        return Err(Error::Domain(format!(
            "gap experiment needs 2 < p < q, got p = {}, q = {}",
            cfg.p, cfg.q
        )));
    }
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (k, &n) in cfg.n_grid.iter().enumerate() {
        match gap_point(cfg, pair, k, n) {
            Ok(row) => rows.push(row),
            Err(e @ (Error::BudgetViolation { .. } | Error::Io(_))) => return Err(e),
            Err(e) => skipped.push(SkippedPoint {
                n,
                reason: e.to_string(),
            }),
        }
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.ratio)).collect();
    Ok(GapReport {
        rows,
        skipped,
        fit: fit_rate(&points),
        theory_exponent: gap_exponent(pair),
    })
}

fn gap_point(cfg: &GapConfig, pair: ExponentPair, k: usize, n: usize) -> Result<GapRow> {
    let (n1, n2) = coupled_dims(pair, n)?;
    let m = cfg.m.unwrap_or_else(|| default_m(n1, n2, cfg.w));
    let nominal = adaptive_nominal(n, m);
    if nominal == 0 {
        return Err(Error::Domain(format!(
            "n = {n} leaves no budget for {m} repetitions (need n >= {})",
            6 * m
        )));
    }
    let algos = [
        Algorithm::NonAdaptive { n },
        Algorithm::Adaptive(AdaptiveConfig::new(nominal, m, cfg.w)?),
    ];
    let mut records = Vec::with_capacity(8);
    for (j, family) in HardFamily::ALL.into_iter().enumerate() {
        let spec = InstanceSpec::new(family, cfg.p, n, n1, n2)?;
        let seed = SeedSpec::with_path(cfg.seed, &[k as u32, j as u32]);
        for algorithm in algos {
            let exp = Experiment {
                algorithm,
                source: InstanceSource::Hard(spec),
                p: cfg.p,
                q: cfg.q,
                w: cfg.w,
                trials: cfg.trials,
            };
            records.push(exp.estimate(&seed)?);
        }
    }
    let worst = |adaptive: bool| {
        records
            .iter()
            .skip(adaptive as usize)
            .step_by(2)
            .fold((0.0f64, 0u64), |(e, c), r| (e.max(r.mean_err), c.max(r.card_max)))
    };
    let (err_nonadaptive, budget_nonadaptive) = worst(false);
    let (err_adaptive, budget_adaptive) = worst(true);
    Ok(GapRow {
        n,
        n1,
        n2,
        err_nonadaptive,
        err_adaptive,
        ratio: err_nonadaptive / err_adaptive,
        budget_nonadaptive,
        budget_adaptive,
        records,
    })
}
