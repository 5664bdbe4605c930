//! Repeated-trial Monte Carlo estimation of the expected error.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::{AlgoKind, Algorithm};
use crate::exponent::Exponent;
use crate::instances::{InstanceFamily, InstanceSource};
use crate::rng::SeedSpec;
use crate::summation::pairwise_sum;
use crate::tensor_space::{lp_norm, mean_rows};

/// Label under a trial's seed path for the instance stream.
pub const INSTANCE_LABEL: u32 = 0;
/// Label under a trial's seed path for the algorithm stream.
pub const ALGORITHM_LABEL: u32 = 1;

/// One algorithm on one input source, measured in `L_q` with moment order `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub algorithm: Algorithm,
    pub source: InstanceSource,
    /// Input-space exponent; only recorded, the source fixes the inputs.
    pub p: Exponent,
    pub q: Exponent,
    pub w: f64,
    pub trials: usize,
}

/// Aggregated result of one experiment point.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub algo: AlgoKind,
    pub instance: InstanceFamily,
    pub p: Exponent,
    pub q: Exponent,
    pub n1: usize,
    pub n2: usize,
    pub n: usize,
    pub m: usize,
    pub w: f64,
    pub trials: usize,
    pub seed: u64,
    /// `(mean of err^w)^{1/w}`.
    pub mean_err: f64,
    pub stderr: f64,
    pub card_mean: f64,
    pub card_max: u64,
}

/// Errors and oracle-call counts of each trial, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSamples {
    pub errors: Vec<f64>,
    pub calls: Vec<u64>,
}

impl Experiment {
    fn validate(&self) -> Result<()> {
        if self.trials < 2 {
            return Err(Error::Domain(format!("need at least 2 trials, got {}", self.trials)));
        }
        if !(self.w.is_finite() && self.w >= 1.0) {
            return Err(Error::Domain(format!(
                "moment order w must be finite and >= 1, got {}",
                self.w
            )));
        }
        Ok(())
    }

    /// Runs every trial. Trial `t` draws its input from `seed/t/0` and feeds
    /// the algorithm `seed/t/1`; each audit is checked against the budget bound.
    pub fn sample(&self, seed: &SeedSpec) -> Result<TrialSamples> {
        self.validate()?;
        let (n1, _) = self.source.dims();
        let outcomes = (0..self.trials)
            .into_par_iter()
            .map(|t| {
                let trial = seed.child(t as u32);
                let f = self.source.draw(&mut trial.child(INSTANCE_LABEL).derive())?;
                let est = self.algorithm.run(&f, &mut trial.child(ALGORITHM_LABEL).derive())?;
                self.algorithm.check_audit(&est.audit, n1)?;
                let diff: Vec<f64> = mean_rows(&f).iter().zip(&est.values).map(|(s, a)| s - a).collect();
                Ok((lp_norm(&diff, self.q), est.audit.total_calls))
            })
            .collect::<Result<Vec<_>>>()?;
        let (errors, calls) = outcomes.into_iter().unzip();
        Ok(TrialSamples { errors, calls })
    }

    pub fn estimate(&self, seed: &SeedSpec) -> Result<TrialRecord> {
        let samples = self.sample(seed)?;
        let (mean_err, stderr) = moment_summary(&samples.errors, self.w);
        let card_mean = samples.calls.iter().map(|&c| c as f64).sum::<f64>() / samples.calls.len() as f64;
        let card_max = samples.calls.iter().copied().max().unwrap_or(0);
        let (n1, n2) = self.source.dims();
        Ok(TrialRecord {
            algo: self.algorithm.kind(),
            instance: self.source.family(),
            p: self.p,
            q: self.q,
            n1,
            n2,
            n: self.algorithm.nominal_n(),
            m: self.algorithm.repetitions(),
            w: self.w,
            trials: self.trials,
            seed: seed.master_seed,
            mean_err,
            stderr,
            card_mean,
            card_max,
        })
    }
}

/// Estimates `(E err^w)^{1/w}`; see [`Experiment::sample`] for the stream layout.
pub fn estimate_error(experiment: &Experiment, seed: &SeedSpec) -> Result<TrialRecord> {
    experiment.estimate(seed)
}

/// `((1/T) Σ e_t^w)^{1/w}` and its standard error.
///
/// For `w = 1` the standard error is the sample standard deviation over
/// `√T`; for `w > 1` it is propagated through `x ↦ x^{1/w}` to first order.
/// Identical samples give exactly that value and zero spread.
pub fn moment_summary(errors: &[f64], w: f64) -> (f64, f64) {
    let t = errors.len();
    assert!(t >= 2);
    if errors.iter().all(|&e| e == errors[0]) {
        return (errors[0], 0.0);
    }
    let powered: Vec<f64> = if w == 1.0 {
        errors.to_vec()
    } else {
        errors.iter().map(|e| e.powf(w)).collect()
    };
    let mean = pairwise_sum(&powered) / t as f64;
    let var = powered.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (t - 1) as f64;
    let se = (var / t as f64).sqrt();
    if w == 1.0 {
        (mean, se)
    } else {
        let value = mean.powf(1.0 / w);
        let slope = if mean > 0.0 { value / (w * mean) } else { 0.0 };
        (value, slope * se)
    }
}
