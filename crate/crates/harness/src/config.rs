use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use eulersum_core::oracle::{VerifyConfig, MIN_TERMS};
use serde::Serialize;

/// Environment variable overriding the default precision (decimal digits).
pub const DIGITS_ENV: &str = "EULERSUM_DIGITS";

pub const DEFAULT_DIGITS: u32 = 60;
pub const DEFAULT_MAX_TERMS: u64 = 200_000;
pub const DEFAULT_TOL_DIGITS: u32 = 25;
pub const MIN_DIGITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "latex" => Ok(OutputFormat::Latex),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(ConfigError(format!(
                "unknown format {other:?} (expected text, latex, json or csv)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Latex => "latex",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

/// Configuration rejected before any work is done.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub precision_digits: u32,
    pub max_terms: u64,
    pub tol_digits: u32,
    /// Tolerance for series decaying slower than `n^-3`.
    pub slow_tol_digits: u32,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub pi_form: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_digits: default_digits(),
            max_terms: DEFAULT_MAX_TERMS,
            tol_digits: DEFAULT_TOL_DIGITS,
            slow_tol_digits: slow_tol_for(DEFAULT_MAX_TERMS),
            output_path: None,
            format: OutputFormat::Text,
            pi_form: false,
        }
    }
}

/// Precision from [`DIGITS_ENV`] if set and numeric, else 60.
pub fn default_digits() -> u32 {
    std::env::var(DIGITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DIGITS)
}

/// Slow-series tolerance by budget: 8 digits from 10^4 terms up, 6 below.
pub fn slow_tol_for(max_terms: u64) -> u32 {
    if max_terms >= 10_000 {
        8
    } else {
        6
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.precision_digits < MIN_DIGITS {
            return Err(ConfigError(format!(
                "precision {} is below the floor of {MIN_DIGITS} digits",
                self.precision_digits
            )));
        }
        if self.precision_digits < self.tol_digits + 10 {
            return Err(ConfigError(format!(
                "precision {} must be at least tolerance {} + 10",
                self.precision_digits, self.tol_digits
            )));
        }
        if self.max_terms < MIN_TERMS {
            return Err(ConfigError(format!(
                "max_terms {} is below the minimum {MIN_TERMS}",
                self.max_terms
            )));
        }
        Ok(())
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            digits: self.precision_digits,
            max_terms: self.max_terms,
            tol_digits: self.tol_digits,
            slow_tol_digits: self.slow_tol_digits,
        }
    }
}
