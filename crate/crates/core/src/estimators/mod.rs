//! Randomized algorithms for the row-mean problem, with exact oracle-call
//! accounting.

mod adaptive;
mod median;
mod nonadaptive;
mod norm;

pub use adaptive::{
    a3_allocate, a3_first_stage, a3_first_stage_with_table, a3_mean, a3_second_stage_with_table, default_m,
    AdaptiveConfig, FirstStage, IndexTable,
};
pub use median::{median_complex, median_in_place, median_scalar};
pub use nonadaptive::{a2_mean, a2_mean_with_columns, samples_per_row};
pub use norm::{a1_norm_estimate, a1_norm_estimate_at, holder_exponent_p1, DEFAULT_P1_INF_ONE};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::tensor_space::DiscreteFunction;

/// Oracle calls (point evaluations `f(i, j)`) spent by one run, by stage.
/// Repeated reads of the same entry are counted every time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetAudit {
    pub stage1_calls: u64,
    pub stage2_calls: u64,
    pub total_calls: u64,
    pub nominal_n: usize,
    pub repetitions_m: usize,
}

impl BudgetAudit {
    pub fn single_stage(calls: u64, nominal_n: usize, m: usize) -> Self {
        Self::two_stage(calls, 0, nominal_n, m)
    }

    pub fn two_stage(stage1: u64, stage2: u64, nominal_n: usize, m: usize) -> Self {
        BudgetAudit {
            stage1_calls: stage1,
            stage2_calls: stage2,
            total_calls: stage1 + stage2,
            nominal_n,
            repetitions_m: m,
        }
    }
}

/// Output of a mean estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanEstimate {
    pub values: Vec<f64>,
    pub audit: BudgetAudit,
}

/// The trivial algorithm: outputs zero without reading `f`.
pub fn zero_algorithm(f: &DiscreteFunction) -> MeanEstimate {
    MeanEstimate {
        values: vec![0.0; f.n1()],
        audit: BudgetAudit::single_stage(0, 0, 1),
    }
}

/// Algorithm identifiers as used on the command line and in CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgoKind {
    Zero,
    NonAdaptive,
    Adaptive,
}

impl AlgoKind {
    pub fn id(self) -> &'static str {
        match self {
            AlgoKind::Zero => "zero",
            AlgoKind::NonAdaptive => "a2",
            AlgoKind::Adaptive => "a3",
        }
    }
}

impl fmt::Display for AlgoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AlgoKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(AlgoKind::Zero),
            "a2" => Ok(AlgoKind::NonAdaptive),
            "a3" => Ok(AlgoKind::Adaptive),
            other => Err(Error::Domain(format!(
                "unknown algorithm `{other}` (expected zero, a2 or a3)"
            ))),
        }
    }
}

/// A configured estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    Zero,
    NonAdaptive { n: usize },
    Adaptive(AdaptiveConfig),
}

impl Algorithm {
    pub fn kind(&self) -> AlgoKind {
        match self {
            Algorithm::Zero => AlgoKind::Zero,
            Algorithm::NonAdaptive { .. } => AlgoKind::NonAdaptive,
            Algorithm::Adaptive(_) => AlgoKind::Adaptive,
        }
    }

    pub fn nominal_n(&self) -> usize {
        match self {
            Algorithm::Zero => 0,
            Algorithm::NonAdaptive { n } => *n,
            Algorithm::Adaptive(cfg) => cfg.n,
        }
    }

    pub fn repetitions(&self) -> usize {
        match self {
            Algorithm::Adaptive(cfg) => cfg.m,
            _ => 1,
        }
    }

    pub fn run(&self, f: &DiscreteFunction, s: &mut Stream) -> Result<MeanEstimate> {
        match self {
            Algorithm::Zero => Ok(zero_algorithm(f)),
            Algorithm::NonAdaptive { n } => a2_mean(f, *n, s),
            Algorithm::Adaptive(cfg) => a3_mean(f, cfg, s),
        }
    }

    /// Largest admissible oracle-call count on an input with `n1` rows.
    pub fn budget_bound(&self, n1: usize) -> u64 {
        match *self {
            Algorithm::Zero => 0,
            Algorithm::NonAdaptive { n } if n < n1 => 0,
            Algorithm::NonAdaptive { n } => 2 * n as u64,
            Algorithm::Adaptive(cfg) if cfg.n < n1 => 0,
            Algorithm::Adaptive(cfg) => 6 * (cfg.m * cfg.n) as u64,
        }
    }

    /// Fails with [`Error::BudgetViolation`] if `audit` exceeds the bound or
    /// departs from the closed form for the non-adaptive estimator.
    pub fn check_audit(&self, audit: &BudgetAudit, n1: usize) -> Result<()> {
        let bound = self.budget_bound(n1);
        let exact_ok = match *self {
            Algorithm::NonAdaptive { n } if n >= n1 => audit.total_calls == (n1 * n.div_ceil(n1)) as u64,
            _ => true,
        };
        let sum_ok = audit.total_calls == audit.stage1_calls + audit.stage2_calls;
        if audit.total_calls > bound || !exact_ok || !sum_ok {
            return Err(Error::BudgetViolation {
                algo: self.kind().id(),
                calls: audit.total_calls,
                bound,
            });
        }
        Ok(())
    }
}
