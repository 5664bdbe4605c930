//! CSV output. The record header is fixed; extra information goes on
//! `#`-prefixed comment lines.

use std::io::Write;

use super::fit::RateFit;
use super::gap::GapReport;
use super::trial::TrialRecord;

pub const RECORD_HEADER: &str = "algo,instance,p,q,n1,n2,n,m,w,trials,seed,mean_err,stderr,card_mean,card_max";
pub const GAP_HEADER: &str = "n,n1,n2,err_nonadaptive,err_adaptive,ratio,budget_nonadaptive,budget_adaptive";

pub fn record_line(r: &TrialRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.algo,
        r.instance,
        r.p,
        r.q,
        r.n1,
        r.n2,
        r.n,
        r.m,
        r.w,
        r.trials,
        r.seed,
        r.mean_err,
        r.stderr,
        r.card_mean,
        r.card_max
    )
}

pub fn fit_line(fit: &RateFit) -> String {
    format!(
        "# fit slope={} intercept={} r2={} points={}",
        fit.slope, fit.intercept, fit.r_squared, fit.n_points
    )
}

pub fn write_records<W: Write>(out: &mut W, records: &[TrialRecord]) -> std::io::Result<()> {
    writeln!(out, "{RECORD_HEADER}")?;
    for r in records {
        writeln!(out, "{}", record_line(r))?;
    }
    Ok(())
}

/// The gap table, followed by skipped points and the ratio fit as comments.
pub fn write_gap<W: Write>(out: &mut W, report: &GapReport) -> std::io::Result<()> {
    writeln!(
        out,
        "# worst case over families mu1,mu2,mu3,mu4; adaptive nominal budget floor(n/(6m))"
    )?;
    writeln!(out, "{GAP_HEADER}")?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n, r.n1, r.n2, r.err_nonadaptive, r.err_adaptive, r.ratio, r.budget_nonadaptive, r.budget_adaptive
        )?;
    }
    for s in &report.skipped {
        writeln!(out, "# skipped n={}: {}", s.n, s.reason)?;
    }
    match &report.fit {
        Ok(fit) => writeln!(out, "{}", fit_line(fit))?,
        Err(e) => writeln!(out, "# fit unavailable: {e}")?,
    }
    writeln!(out, "# theory exponent={}", report.theory_exponent)
}
