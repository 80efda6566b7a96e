use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("reduced-form prices are undefined for B = 0; solve in the corner regime")]
    CornerRegimeRequired,

    #[error("corner regime requires positive labor (got L = {labor})")]
    NoProduction { labor: f64 },

    #[error("labor supply {labor} outside [0, {population}]")]
    InvalidSupply { labor: f64, population: f64 },

    #[error("no wage tax in [0, 1) balances the MS budget (required t_w = {required})")]
    InfeasibleMsBudget { required: f64 },

    #[error("transfer G = {transfer} cannot be financed at any tax rate")]
    InfeasibleTransfer { transfer: f64 },

    #[error("tax rate {tax} outside [0, 1)")]
    InfeasibleTax { tax: f64 },

    #[error("pinned output {output} infeasible: {reason}")]
    InfeasibleOutput { output: f64, reason: String },

    #[error("inconsistent calibration targets: {0}")]
    InconsistentTargets(String),

    #[error("closure schedule has no value for period {period}")]
    MissingSchedule { period: u32 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("period {period} under closure {closure}: {source}")]
    PeriodFailed {
        period: u32,
        closure: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid comparison: {0}")]
    InvalidComparison(String),

    #[error("trajectory does not cover golden period(s) {missing:?}")]
    Coverage { missing: Vec<u32> },

    #[error("configuration has {} problem(s):\n{}", .0.len(), format_issues(.0))]
    Config(Vec<ConfigIssue>),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed data: {0}")]
    Parse(String),
}

/// A single validation finding, addressed by its dotted key path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIssue {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn format_issues(issues: &[ConfigIssue]) -> String {
    issues.iter().map(|i| format!("  - {i}")).collect::<Vec<_>>().join("\n")
}

impl Error {
    /// True for failures that come from the economics rather than from inputs.
    pub fn is_infeasibility(&self) -> bool {
        match self {
            Error::PeriodFailed { source, .. } => source.is_infeasibility(),
            Error::CornerRegimeRequired
            | Error::NoProduction { .. }
            | Error::InvalidSupply { .. }
            | Error::InfeasibleMsBudget { .. }
            | Error::InfeasibleTransfer { .. }
            | Error::InfeasibleTax { .. }
            | Error::InfeasibleOutput { .. } => true,
            _ => false,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
