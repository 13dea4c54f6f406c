//! Command implementations behind the `cfperiod` binary. Every command
//! returns its full textual output so it can be golden-tested.

pub mod commands;
pub mod job;
pub mod parse;

use std::fmt;

pub use commands::*;
pub use job::JobSpec;
pub use parse::{parse_element, ParseError, Value};

pub const DEFAULT_MAX_BITS: u64 = 1 << 20;
pub const DEFAULT_PRECISION_DIGITS: u32 = 60;

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Core(cfperiod_core::Error),
    Usage(String),
    Hypothesis(String),
    TooFewPoints(usize),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error at {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Hypothesis(s) => write!(f, "hypothesis violated: {s}"),
            CliError::TooFewPoints(n) => write!(f, "need at least 16 points, got {n}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cfperiod_core::Error> for CliError {
    fn from(e: cfperiod_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    /// 3 for internal invariant violations, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            _ => 2,
        }
    }
}

/// Guards read from `CFPERIOD_MAX_BITS` and `CFPERIOD_PRECISION_DIGITS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest bit length of any numerator or denominator of a scanned term.
    pub max_bits: u64,
    pub precision_digits: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_bits: DEFAULT_MAX_BITS, precision_digits: DEFAULT_PRECISION_DIGITS }
    }
}

impl Config {
    pub fn from_env() -> Result<Config, CliError> {
        let mut c = Config::default();
        if let Ok(v) = std::env::var("CFPERIOD_MAX_BITS") {
            c.max_bits = v.trim().parse().map_err(|_| CliError::Usage(format!("CFPERIOD_MAX_BITS: bad value {v:?}")))?;
        }
        if let Ok(v) = std::env::var("CFPERIOD_PRECISION_DIGITS") {
            c.precision_digits = v
                .trim()
                .parse()
                .ok()
                .filter(|d| (1..=10_000).contains(d))
                .ok_or_else(|| CliError::Usage(format!("CFPERIOD_PRECISION_DIGITS: bad value {v:?}")))?;
        }
        Ok(c)
    }

    pub fn bits(&self) -> u32 {
        cfperiod_core::numeric::digits_to_bits(self.precision_digits)
    }
}

/// 12 significant digits, positional for moderate magnitudes.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = format!("{x:.11e}");
    let (mant, exp) = e.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return e;
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else {
        let p = point as usize;
        format!("{}.{}", &digits[..p], &digits[p..])
    };
    let body = body.strip_suffix('.').unwrap_or(&body).to_string();
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
