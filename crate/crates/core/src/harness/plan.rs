//! Budget grids, dimension rules and budget sweeps.

use crate::error::{Error, Result};
use crate::estimators::{default_m, AdaptiveConfig, AlgoKind, Algorithm};
use crate::exponent::{Exponent, ExponentPair};
use crate::instances::{InstanceFamily, InstanceSource, InstanceSpec, ADMISSIBLE_FRACTION_DENOM};
use crate::rng::SeedSpec;
use crate::tensor_space::DiscreteFunction;

use super::fit::{fit_rate, RateFit};
use super::trial::{Experiment, TrialRecord};

/// Parses `a:b:factor` into the geometric grid `a, a·factor, ...` up to `b`.
pub fn parse_n_grid(text: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, factor] = parts.as_slice() else {
        return Err(Error::Parse(format!(
            "budget grid must look like a:b:factor, got `{text}`"
        )));
    };
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{s}` in budget grid `{text}`")))
    };
    let (a, b, factor) = (num(a)?, num(b)?, num(factor)?);
    if a == 0 || b < a || factor < 2 {
        return Err(Error::Parse(format!(
            "budget grid needs 1 <= a <= b and factor >= 2, got `{text}`"
        )));
    }
    Ok(geometric_grid(a, b, factor))
}

/// `a, a·factor, a·factor², ...` while `<= b`.
pub fn geometric_grid(a: usize, b: usize, factor: usize) -> Vec<usize> {
    assert!(a >= 1 && factor >= 2);
    std::iter::successors(Some(a), |&n| n.checked_mul(factor))
        .take_while(|&n| n <= b)
        .collect()
}

/// Dimensions `(N1, N2)` coupled to the budget so that the adaptive and
/// non-adaptive rates are furthest apart: with
/// `x0 = n^{(1/2 − 1/p)/(1/2 − 1/q)}`, `N1 = ⌈x0⌉` and `N2 = ⌊21n/x0⌋ + 1`.
pub fn coupled_dims(pair: ExponentPair, n: usize) -> Result<(usize, usize)> {
    if !pair.is_adaptive_regime() {
        return Err(Error::Domain(format!(
            "dimension coupling needs 2 < p < q, got p = {}, q = {}",
            pair.p, pair.q
        )));
    }
    if n == 0 {
        return Err(Error::Domain("dimension coupling needs n >= 1".into()));
    }
    let (rp, rq) = (pair.p.recip(), pair.q.recip());
    let nf = n as f64;
    let mut x0 = nf.powf((0.5 - rp) / (0.5 - rq));
    // Snap values that are integers up to rounding, e.g. √1024.
    if (x0 - x0.round()).abs() <= 1e-9 * x0 {
        x0 = x0.round();
    }
    let n1 = x0.ceil() as usize;
    let n2 = (ADMISSIBLE_FRACTION_DENOM as f64 * nf / x0).floor() as usize + 1;
    Ok((n1, n2))
}

/// How the input dimensions depend on the budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DimensionRule {
    Fixed { n1: usize, n2: usize },
    Coupled,
}

/// A budget sweep of one algorithm against one instance family.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub n_grid: Vec<usize>,
    pub dims: DimensionRule,
    pub algo: AlgoKind,
    pub family: InstanceFamily,
    /// Input for the `custom` family.
    pub custom: Option<DiscreteFunction>,
    pub p: Exponent,
    pub q: Exponent,
    pub w: f64,
    /// Median repetitions for the adaptive estimator; `None` picks [`default_m`].
    pub m: Option<usize>,
    pub trials: usize,
    pub seed: u64,
}

/// Records of a sweep plus the power-law fit of `mean_err` against `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub records: Vec<TrialRecord>,
    pub fit: Result<RateFit>,
}

impl ExperimentPlan {
    pub fn pair(&self) -> ExponentPair {
        ExponentPair::new(self.p, self.q)
    }

    pub fn dims_at(&self, n: usize) -> Result<(usize, usize)> {
        match self.dims {
            DimensionRule::Fixed { n1, n2 } => Ok((n1, n2)),
            DimensionRule::Coupled => coupled_dims(self.pair(), n),
        }
    }

    /// The experiment run at budget `n`. Hard instances are tuned to `n`.
    pub fn experiment_at(&self, n: usize) -> Result<Experiment> {
        let (n1, n2) = self.dims_at(n)?;
        let source = match self.family {
            InstanceFamily::Hard(h) => InstanceSource::Hard(InstanceSpec::new(h, self.p, n, n1, n2)?),
            InstanceFamily::Witness => InstanceSource::Witness {
                p: self.p,
                q: self.q,
                n1,
                n2,
            },
            InstanceFamily::Custom => {
                let f = self
                    .custom
                    .clone()
                    .ok_or_else(|| Error::Domain("custom instance needs an input matrix".into()))?;
                if (f.n1(), f.n2()) != (n1, n2) {
                    return Err(Error::Domain(format!(
                        "custom input is {}x{}, expected {n1}x{n2}",
                        f.n1(),
                        f.n2()
                    )));
                }
                InstanceSource::Custom(f)
            }
        };
        let algorithm = match self.algo {
            AlgoKind::Zero => Algorithm::Zero,
            AlgoKind::NonAdaptive => Algorithm::NonAdaptive { n },
            AlgoKind::Adaptive => {
                let m = self.m.unwrap_or_else(|| default_m(n1, n2, self.w));
                Algorithm::Adaptive(AdaptiveConfig::new(n, m, self.w)?)
            }
        };
        Ok(Experiment {
            algorithm,
            source,
            p: self.p,
            q: self.q,
            w: self.w,
            trials: self.trials,
        })
    }

    /// Runs every grid point; point `k` uses seed path `[k]`.
    pub fn run(&self) -> Result<RateReport> {
        let records = self
            .n_grid
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                self.experiment_at(n)?
                    .estimate(&SeedSpec::with_path(self.seed, &[k as u32]))
            })
            .collect::<Result<Vec<_>>>()?;
        let points: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, r.mean_err)).collect();
        let fit = fit_rate(&points);
        Ok(RateReport { records, fit })
    }
}
