//! Command-line front end: `parint norm-op | run | rate | gap`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use parint_core::estimators::AlgoKind;
use parint_core::harness::{
    fit_line, gap_experiment, parse_n_grid, write_gap, write_records, DimensionRule, ExperimentPlan, GapConfig,
};
use parint_core::tensor_space::operator_norm;
use parint_core::{DiscreteFunction, Error, Exponent, InstanceFamily, SeedSpec};

/// Exit code for bad usage or unmet preconditions.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for a broken internal invariant (oracle budget exceeded).
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "parint", version, about = "Randomized row-mean estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the norm of the row-mean operator from L_p^{N1×N2} to L_q^{N1}.
    NormOp {
        #[arg(long)]
        p: Exponent,
        #[arg(long)]
        q: Exponent,
        #[arg(long)]
        n1: usize,
    },
    /// Estimate the error of one algorithm at one budget.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
        #[arg(long)]
        n: usize,
    },
    /// Sweep a geometric budget grid and fit the error decay.
    Rate {
        #[command(flatten)]
        common: Common,
        /// Fixed dimensions; omit both to couple them to the budget.
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
        /// Budget grid `a:b:factor`.
        #[arg(long)]
        n_grid: String,
    },
    /// Compare both estimators at equal budget on all hard families.
    Gap {
        #[arg(long)]
        p: Exponent,
        #[arg(long)]
        q: Exponent,
        #[arg(long)]
        n_grid: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        w: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    algo: AlgoKind,
    #[arg(long)]
    instance: InstanceFamily,
    /// Matrix for `--instance custom`: a line `N1 N2`, then N1 rows of N2 numbers.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    p: Exponent,
    #[arg(long)]
    q: Exponent,
    /// Median repetitions of the adaptive estimator.
    #[arg(long)]
    m: Option<usize>,
    /// Moment order of the reported error.
    #[arg(long, default_value_t = 1.0)]
    w: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn custom(&self) -> Result<Option<DiscreteFunction>, Error> {
        match (self.instance, &self.file) {
            (InstanceFamily::Custom, Some(path)) => DiscreteFunction::read_text(path).map(Some),
            (InstanceFamily::Custom, None) => Err(Error::Domain("--instance custom needs --file".into())),
            (_, Some(_)) => Err(Error::Domain("--file is only used with --instance custom".into())),
            (_, None) => Ok(None),
        }
    }

    fn plan(&self, n_grid: Vec<usize>, n1: Option<usize>, n2: Option<usize>) -> Result<ExperimentPlan, Error> {
        let custom = self.custom()?;
        let dims = match (n1, n2, &custom) {
            (Some(n1), Some(n2), _) => DimensionRule::Fixed { n1, n2 },
            (None, None, Some(f)) => DimensionRule::Fixed { n1: f.n1(), n2: f.n2() },
            (None, None, None) => DimensionRule::Coupled,
            _ => return Err(Error::Domain("give both --n1 and --n2, or neither".into())),
        };
        if let DimensionRule::Fixed { n1, n2 } = dims {
            if n1 == 0 || n2 == 0 {
                return Err(Error::Domain("--n1 and --n2 must be positive".into()));
            }
        }
        Ok(ExperimentPlan {
            n_grid,
            dims,
            algo: self.algo,
            family: self.instance,
            custom,
            p: self.p,
            q: self.q,
            w: self.w,
            m: self.m,
            trials: self.trials,
            seed: self.seed,
        })
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetViolation { .. } => EXIT_INVARIANT,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::NormOp { p, q, n1 } => {
            if n1 == 0 {
                return Err(Error::Domain("--n1 must be positive".into()));
            }
            println!("{}", operator_norm(p, q, n1));
            Ok(())
        }
        Command::Run { common, n1, n2, n } => {
            let plan = common.plan(vec![n], n1, n2)?;
            if plan.dims == DimensionRule::Coupled {
                return Err(Error::Domain("run needs --n1 and --n2".into()));
            }
            let record = plan.experiment_at(n)?.estimate(&SeedSpec::new(plan.seed))?;
            let mut buf = Vec::new();
            write_records(&mut buf, &[record])?;
            writeln!(
                buf,
                "# streams: trial t draws its input from [t,0] and runs the algorithm on [t,1]"
            )?;
            emit(&buf, common.out.as_ref())
        }
        Command::Rate { common, n1, n2, n_grid } => {
            let grid = parse_n_grid(&n_grid)?;
            let plan = common.plan(grid, n1, n2)?;
            let report = plan.run()?;
            let mut buf = Vec::new();
            write_records(&mut buf, &report.records)?;
            writeln!(
                buf,
                "# streams: point k, trial t draws its input from [k,t,0] and runs the algorithm on [k,t,1]"
            )?;
            match &report.fit {
                Ok(fit) => writeln!(buf, "{}", fit_line(fit))?,
                Err(e) => writeln!(buf, "# fit unavailable: {e}")?,
            }
            emit(&buf, common.out.as_ref())
        }
        Command::Gap {
            p,
            q,
            n_grid,
            m,
            w,
            trials,
            seed,
            out,
        } => {
            let cfg = GapConfig {
                p,
                q,
                n_grid: parse_n_grid(&n_grid)?,
                trials,
                m,
                w,
                seed,
            };
            let report = gap_experiment(&cfg)?;
            let mut buf = Vec::new();
            write_gap(&mut buf, &report)?;
            emit(&buf, out.as_ref())
        }
    }
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}
