use std::path::PathBuf;
use std::process::ExitCode;

use cfperiod::{cmd_cf, cmd_classify, cmd_estimate, cmd_growth, cmd_periods, cmd_props, cmd_schinzel, CliError, Config, Family, JobSpec};
use clap::{Parser, Subcommand};

/// Continued-fraction periods of quadratic irrationals and recurrences over
/// real quadratic fields.
#[derive(Parser)]
#[command(name = "cfperiod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion, period length and first convergents of an element such as "8+6*sqrt(2)".
    Cf { expr: String },
    /// Boundedness classification of a recurrence job.
    Classify {
        job: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Period lengths of D*A_n over the job range.
    ///
    /// CSV columns: n, ell (period length), preperiod_len, a1 (first partial
    /// quotient after a0), status; wall_time_ms with --timing (floats carry 12
    /// significant digits). Trailing "#" lines give the max ell per doubling
    /// window [2^j, 2^(j+1)).
    Periods {
        job: PathBuf,
        #[arg(long)]
        mult: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Exact comparison of alpha^r + alpha^s against the closed-form expansions.
    Props {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        family: Family,
        /// "LO..HI", or "HI" for 1..HI.
        #[arg(long)]
        range: String,
    },
    /// Period lengths of sqrt(f(n)) for an integer polynomial f.
    Schinzel {
        #[arg(long)]
        poly: String,
        /// "LO..HI".
        #[arg(long)]
        range: String,
    },
    /// Growth check |A_n|_v >= |alpha_1|_v^(n(1-eps)) at a place.
    ///
    /// options.place is real:1, real:2, p:P or p:P:I; options.eps is a rational string.
    Growth { job: PathBuf },
    /// Least-squares slope of n,value points over the second half; empirical.
    Estimate {
        csv: PathBuf,
        #[arg(long, default_value_t = cfperiod::DEFAULT_SLOPE_MARGIN)]
        margin: f64,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("range {s:?}: expected LO..HI"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => (1, s.trim().parse().map_err(|_| bad())?),
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn read_job(path: &PathBuf) -> Result<JobSpec, CliError> {
    JobSpec::from_json(&std::fs::read_to_string(path)?)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let cfg = Config::from_env()?;
    match cli.command {
        Command::Cf { expr } => cmd_cf(&expr),
        Command::Classify { job, json } => cmd_classify(&read_job(&job)?, json),
        Command::Periods { job, mult, out, timing } => {
            let csv = cmd_periods(&read_job(&job)?, mult, timing, &cfg)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &csv)?;
                    Ok(format!("wrote {}\n", path.display()))
                }
                None => Ok(csv),
            }
        }
        Command::Props { alpha, family, range } => {
            let (lo, hi) = parse_range(&range)?;
            if lo < 0 {
                return Err(CliError::Usage("props range must be nonnegative".into()));
            }
            cmd_props(&alpha, family, lo as u64, hi as u64)
        }
        Command::Schinzel { poly, range } => {
            let (lo, hi) = parse_range(&range)?;
            cmd_schinzel(&poly, lo, hi)
        }
        Command::Growth { job } => cmd_growth(&read_job(&job)?, &cfg),
        Command::Estimate { csv, margin } => cmd_estimate(&std::fs::read_to_string(csv)?, margin),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
