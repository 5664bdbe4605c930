//! Acceptance suite: one PASS/FAIL line per criterion, with the measured
//! quantity, the pinned tolerance and the wall-clock budget.
//!
//! Criteria listed in `KNOWN_RED` are reported but do not fail the run
//! unless `PARINT_STRICT_ACCEPTANCE=1` is set.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use parint_core::estimators::{a1_norm_estimate, a2_mean, a3_mean, holder_exponent_p1, median_scalar, AdaptiveConfig};
use parint_core::harness::{fit_rate, gap_experiment, DimensionRule, ExperimentPlan, GapConfig};
use parint_core::rng::SeedSpec;
use parint_core::tensor_space::{lp_norm, mean_rows, norm_witness};
use parint_core::{AlgoKind, DiscreteFunction, Error, Exponent, HardFamily, InstanceFamily, InstanceSpec};

/// Criteria whose outcome at desk scale is a documented negative result.
const KNOWN_RED: &[u32] = &[8];

type Check = (u32, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn fin(p: f64) -> Exponent {
    Exponent::finite(p).unwrap()
}

fn c1_witness() -> Outcome {
    let mut worst: f64 = 0.0;
    for (p, q, n1) in [
        (1.0, f64::INFINITY, 8usize),
        (2.0, f64::INFINITY, 16),
        (4.0, f64::INFINITY, 16),
        (2.0, 2.0, 32),
    ] {
        let (pe, qe) = (fin(p), fin(q));
        let f = norm_witness(pe, qe, n1, 7).unwrap();
        let ratio = lp_norm(&mean_rows(&f), qe) / f.norm(pe);
        let expected = (n1 as f64).powf((1.0 / p - 1.0 / q).max(0.0));
        worst = worst.max((ratio - expected).abs() / expected);
    }
    Outcome {
        pass: worst <= 1e-10,
        detail: format!("max relative deviation {worst:.2e} (tol 1e-10)"),
    }
}

fn c2_unbiased() -> Outcome {
    let (n1, n2, n, trials) = (4, 64, 32, 20_000usize);
    // The instance is tuned to an admissible budget; the estimator spends 32.
    let spec = InstanceSpec::new(HardFamily::Mu1, Exponent::TWO, 8, n1, n2).unwrap();
    let f = spec.draw(&mut SeedSpec::new(2).derive());
    let truth = mean_rows(&f);
    let mut sum = vec![0.0; n1];
    let mut sumsq = vec![0.0; n1];
    for t in 0..trials {
        let est = a2_mean(&f, n, &mut SeedSpec::with_path(2, &[t as u32]).derive()).unwrap();
        for i in 0..n1 {
            sum[i] += est.values[i];
            sumsq[i] += est.values[i] * est.values[i];
        }
    }
    let k = trials as f64;
    let worst_z = (0..n1)
        .map(|i| {
            let mean = sum[i] / k;
            let var = (sumsq[i] - k * mean * mean) / (k - 1.0);
            (mean - truth[i]).abs() / (var / k).sqrt()
        })
        .fold(0.0, f64::max);
    Outcome {
        pass: worst_z <= 4.0,
        detail: format!("max |z| {worst_z:.3} over {n1} coordinates (tol 4)"),
    }
}

fn c3_budget() -> Outcome {
    let n2 = 40;
    let mut checks = 0usize;
    let mut failures = Vec::new();
    let mut s = SeedSpec::new(3).derive();
    for n1 in 1..=12usize {
        let values: Vec<f64> = (0..n1 * n2).map(|_| 2.0 * s.uniform_f64() - 1.0).collect();
        let f = DiscreteFunction::new(n1, n2, values).unwrap();
        for n in 1..=200usize {
            let exact_cheaper = n >= n1 * n2;
            match a2_mean(&f, n, &mut s) {
                Err(Error::ExactCheaper { .. }) if exact_cheaper => {}
                Ok(est) if !exact_cheaper => {
                    let calls = est.audit.total_calls;
                    let ok = if n >= n1 {
                        calls == (n1 * n.div_ceil(n1)) as u64 && calls <= 2 * n as u64
                    } else {
                        calls == 0
                    };
                    if !ok {
                        failures.push(format!("a2 n={n} N1={n1} calls={calls}"));
                    }
                }
                other => failures.push(format!("a2 n={n} N1={n1}: {:?}", other.map(|e| e.audit))),
            }
            checks += 1;
            for m in [3usize, 9] {
                let cfg = AdaptiveConfig::new(n, m, 1.0).unwrap();
                match a3_mean(&f, &cfg, &mut s) {
                    Err(Error::ExactCheaper { .. }) if exact_cheaper => {}
                    Ok(est) if !exact_cheaper => {
                        let calls = est.audit.total_calls;
                        let ok = calls <= (6 * m * n) as u64 && (n >= n1 || calls == 0);
                        if !ok {
                            failures.push(format!("a3 n={n} N1={n1} m={m} calls={calls}"));
                        }
                    }
                    other => failures.push(format!("a3 n={n} N1={n1} m={m}: {:?}", other.map(|e| e.audit))),
                }
                checks += 1;
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "{checks} audits, {} violations {:?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    }
}

/// P(Bin(m, 1/4) >= (m+1)/2): the exact failure probability of the median.
fn binomial_upper_tail(m: usize) -> f64 {
    let mut total = 0.0;
    for k in m.div_ceil(2)..=m {
        let mut c = 1.0;
        for j in 0..k {
            c *= (m - j) as f64 / (j + 1) as f64;
        }
        total += c * 0.25f64.powi(k as i32) * 0.75f64.powi((m - k) as i32);
    }
    total
}

fn c4_median() -> Outcome {
    let reps = 100_000usize;
    let (z, eps) = (0.0, 1.0);
    let mut pass = true;
    let mut parts = Vec::new();
    for m in [9usize, 17, 33] {
        let mut s = SeedSpec::with_path(4, &[m as u32]).derive();
        let mut buf = vec![0.0; m];
        let mut failures = 0usize;
        for _ in 0..reps {
            for v in buf.iter_mut() {
                // z - ε (1/4), z + ε (1/2), z + 3ε (1/4): within ε with probability 3/4
                *v = match s.uniform_index(4) {
                    0 => z - eps,
                    1 | 2 => z + eps,
                    _ => z + 3.0 * eps,
                };
            }
            if (median_scalar(&buf) - z).abs() > eps {
                failures += 1;
            }
        }
        let freq = failures as f64 / reps as f64;
        let bound = (-(m as f64) / 8.0).exp();
        let sigma = (bound * (1.0 - bound) / reps as f64).sqrt();
        let limit = bound + 3.0 * sigma;
        pass &= freq <= limit;
        parts.push(format!(
            "m={m}: {freq:.5} <= {limit:.5} (exact {:.5})",
            binomial_upper_tail(m)
        ));
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

/// Exact `(E|‖f‖_2 − estimate|^{p1})^{1/p1}` for a single spike of height
/// `N2^{1/4}` in a row of length `N2`, sampled `n` times: the hit count is
/// Binomial(n, 1/N2) and the estimate is `(K √N2 / n)^{1/2}`.
fn spike_moment_exact(n: usize, n2: usize, p1: f64) -> f64 {
    let truth = (n2 as f64).powf(-0.25);
    let pr = 1.0 / n2 as f64;
    let mut log_pmf = n as f64 * (1.0 - pr).ln();
    let mut total = 0.0;
    for k in 0..=n {
        if k > 0 {
            log_pmf += ((n - k + 1) as f64 / k as f64).ln() + (pr / (1.0 - pr)).ln();
        }
        let est = (k as f64 * (n2 as f64).sqrt() / n as f64).sqrt();
        total += log_pmf.exp() * (truth - est).abs().powf(p1);
    }
    total.powf(1.0 / p1)
}

fn c5_a1_decay() -> Outcome {
    let p1 = holder_exponent_p1(fin(4.0), 2.0).unwrap();
    let trials = 5000;
    let mut points = Vec::new();
    let mut oracle = Vec::new();
    for k in 4..=12 {
        let n = 1usize << k;
        let n2 = n;
        let mut row = vec![0.0; n2];
        row[0] = (n2 as f64).powf(0.25);
        let truth = lp_norm(&row, Exponent::TWO);
        let mut s = SeedSpec::with_path(5, &[k]).derive();
        let moment: f64 = (0..trials)
            .map(|_| (truth - a1_norm_estimate(&row, 2.0, n, &mut s)).abs().powf(p1))
            .sum::<f64>()
            / trials as f64;
        points.push((n as f64, moment.powf(1.0 / p1)));
        oracle.push((n as f64, spike_moment_exact(n, n2, p1)));
    }
    let slope = fit_rate(&points).unwrap().slope;
    let exact = fit_rate(&oracle).unwrap().slope;
    Outcome {
        pass: (slope + 0.25).abs() <= 0.12,
        detail: format!("p1={p1:.4} slope {slope:.4} (target -0.25 ± 0.12; exact-law slope {exact:.4})"),
    }
}

fn c6_plan() -> ExperimentPlan {
    ExperimentPlan {
        n_grid: (8..=13).map(|k| 1usize << k).collect(),
        dims: DimensionRule::Fixed { n1: 4, n2: 1 << 16 },
        algo: AlgoKind::NonAdaptive,
        family: InstanceFamily::Hard(HardFamily::Mu2),
        custom: None,
        p: Exponent::TWO,
        q: Exponent::TWO,
        w: 1.0,
        m: None,
        trials: 2000,
        seed: 6,
    }
}

fn c6_nonadaptive_rate() -> Outcome {
    let fit = c6_plan().run().unwrap().fit.unwrap();
    Outcome {
        pass: (-0.65..=-0.35).contains(&fit.slope),
        detail: format!("slope {:.4}, r2 {:.4} (band [-0.65, -0.35])", fit.slope, fit.r_squared),
    }
}

fn c7_plan(algo: AlgoKind) -> ExperimentPlan {
    ExperimentPlan {
        n_grid: vec![1 << 10, 1 << 12, 1 << 14],
        dims: DimensionRule::Coupled,
        algo,
        family: InstanceFamily::Hard(HardFamily::Mu4),
        custom: None,
        p: fin(4.0),
        q: Exponent::Infinity,
        w: 1.0,
        m: Some(9),
        trials: 500,
        seed: 7,
    }
}

fn c7_adaptive_vs_nonadaptive() -> Outcome {
    let non = c7_plan(AlgoKind::NonAdaptive).run().unwrap().fit.unwrap().slope;
    let ada = c7_plan(AlgoKind::Adaptive).run().unwrap().fit.unwrap().slope;
    Outcome {
        pass: ada <= non - 0.10,
        detail: format!(
            "a3 slope {ada:.4}, a2 slope {non:.4}, difference {:.4} (need <= -0.10)",
            ada - non
        ),
    }
}

fn c8_config() -> GapConfig {
    GapConfig {
        p: fin(4.0),
        q: Exponent::Infinity,
        n_grid: vec![1 << 10, 1 << 12, 1 << 14],
        trials: 500,
        m: Some(9),
        w: 1.0,
        seed: 8,
    }
}

fn c8_gap() -> Outcome {
    let report = gap_experiment(&c8_config()).unwrap();
    let ratios: Vec<f64> = report.rows.iter().map(|r| r.ratio).collect();
    let increasing = report.skipped.is_empty() && ratios.windows(2).all(|w| w[1] > w[0]);
    let slope = report.fit.as_ref().map(|f| f.slope).unwrap_or(f64::NAN);
    Outcome {
        pass: increasing && (0.04..=0.22).contains(&slope),
        detail: format!(
            "ratios {:?}, strictly increasing: {increasing}, slope {slope:.4} (band [0.04, 0.22])",
            ratios.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>()
        ),
    }
}

fn c9_reproducible() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_parint");
    let commands = [
        "norm-op --p 4 --q inf --n1 16",
        "run --algo a2 --instance mu2 --p 2 --q 2 --n1 4 --n2 4096 --n 256 --trials 100 --seed 7",
        "run --algo a3 --instance mu3 --p 3 --q inf --n1 8 --n2 512 --n 64 --m 9 --trials 100 --seed 7",
        "rate --algo a2 --instance mu2 --p 2 --q 2 --n1 4 --n2 65536 --n-grid 256:8192:2 --trials 2000 --seed 6",
        "rate --algo a3 --instance mu4 --p 4 --q inf --n-grid 1024:16384:4 --m 9 --trials 500 --seed 7",
        "gap --p 4 --q inf --n-grid 1024:16384:4 --m 9 --trials 500 --seed 8",
    ];
    let mut mismatches = Vec::new();
    for line in commands {
        let run = || Command::new(exe).args(line.split_whitespace()).output().unwrap();
        let (a, b) = (run(), run());
        if !a.status.success() || a.stdout.is_empty() || a.stdout != b.stdout {
            mismatches.push(line.split_whitespace().next().unwrap());
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!(
            "{} commands byte-identical across reruns, mismatches {mismatches:?}",
            commands.len() - mismatches.len()
        ),
    }
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let strict = std::env::var("PARINT_STRICT_ACCEPTANCE").is_ok_and(|v| v == "1");
    let criteria: [Check; 9] = [
        (1, "operator norm attainment", Duration::from_secs(1), c1_witness),
        (2, "a2 unbiasedness", Duration::from_secs(30), c2_unbiased),
        (3, "budget exactness", Duration::from_secs(10), c3_budget),
        (4, "median tail bound", Duration::from_secs(30), c4_median),
        (5, "a1 moment decay", Duration::from_secs(120), c5_a1_decay),
        (
            6,
            "non-adaptive rate p=q=2",
            Duration::from_secs(120),
            c6_nonadaptive_rate,
        ),
        (
            7,
            "adaptive vs non-adaptive rates",
            Duration::from_secs(600),
            c7_adaptive_vs_nonadaptive,
        ),
        (8, "equal-budget gap", Duration::from_secs(900), c8_gap),
        (9, "reproducibility", Duration::from_secs(600), c9_reproducible),
    ];
    let mut blocking = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = outcome.pass && in_time;
        let known = KNOWN_RED.contains(&id);
        let status = match (pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {id} [{name}]: {status} - {}; {:.2}s (limit {}s)",
            outcome.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !pass && (strict || !known) {
            blocking += 1;
        }
    }
    if blocking == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{blocking} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
