use std::path::PathBuf;

use patrol_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", core_message(.0))]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    /// SVG output needs a 2-D point instance.
    #[error("not renderable: {0}")]
    NotRenderable(String),
}

fn core_message(e: &Error) -> String {
    match e {
        Error::InvalidInput(msg) => msg.clone(),
        other => other.to_string(),
    }
}

impl CliError {
    /// Process exit status: 3 for exceeded limits, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(Error::LimitExceeded(_)) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Core(Error::LimitExceeded(_)) => "limit_exceeded",
            Self::Core(Error::Metric(_)) => "metric_violation",
            Self::Core(Error::InfeasibleAssignment { .. }) => "infeasible_assignment",
            Self::Core(Error::NotConnected) => "not_connected",
            Self::Core(Error::PreconditionViolated(_)) => "precondition_violated",
            Self::Core(Error::InvalidInput(_)) | Self::Usage(_) => "invalid_input",
            Self::Read { .. } | Self::Write { .. } => "io",
            Self::Json { .. } => "malformed_json",
            Self::NotRenderable(_) => "not_renderable",
        }
    }
}
