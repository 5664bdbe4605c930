//! Experiment driver: error estimation, rate fits, predicted envelopes and
//! the adaptive/non-adaptive gap experiment.

mod csv;
mod envelope;
mod fit;
mod gap;
mod plan;
mod trial;

pub use csv::{fit_line, record_line, write_gap, write_records, GAP_HEADER, RECORD_HEADER};
pub use envelope::{envelope_constant, gap_exponent, predicted_rate, Setting};
pub use fit::{fit_rate, RateFit};
pub use gap::{adaptive_nominal, gap_experiment, GapConfig, GapReport, GapRow, SkippedPoint};
pub use plan::{coupled_dims, geometric_grid, parse_n_grid, DimensionRule, ExperimentPlan, RateReport};
pub use trial::{
    estimate_error, moment_summary, Experiment, TrialRecord, TrialSamples, ALGORITHM_LABEL, INSTANCE_LABEL,
};
