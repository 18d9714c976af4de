use alloc::string::String;
use core::fmt;

/// A metric-axiom failure found while validating a distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation {
    NotSquare { row: usize, len: usize, expected: usize },
    NonzeroDiagonal { site: usize, value: f64 },
    Negative { i: usize, j: usize, value: f64 },
    NonFinite { i: usize, j: usize },
    /// Distinct sites at distance zero.
    Coincident { i: usize, j: usize },
    Asymmetric { i: usize, j: usize, forward: f64, backward: f64 },
    /// `dist[i][j] > dist[i][via] + dist[via][j]`.
    Triangle { i: usize, j: usize, via: usize },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::NotSquare { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            Self::NonzeroDiagonal { site, value } => {
                write!(f, "dist[{site}][{site}] = {value}, expected 0")
            }
            Self::Negative { i, j, value } => write!(f, "dist[{i}][{j}] = {value} is negative"),
            Self::NonFinite { i, j } => write!(f, "dist[{i}][{j}] is not finite"),
            Self::Coincident { i, j } => write!(f, "sites {i} and {j} are at distance 0"),
            Self::Asymmetric { i, j, forward, backward } => {
                write!(f, "dist[{i}][{j}] = {forward} but dist[{j}][{i}] = {backward}")
            }
            Self::Triangle { i, j, via } => write!(
                f,
                "triangle inequality fails on triple ({i}, {j}, {via}): dist[{i}][{j}] > dist[{i}][{via}] + dist[{via}][{j}]"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    InvalidInput(String),
    Metric(MetricViolation),
    /// A desk-scale limit (exact TSP size, oracle size, decider state space) was exceeded.
    LimitExceeded(String),
    InfeasibleAssignment { robots: usize, parts: usize },
    NotConnected,
    PreconditionViolated(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Self::Metric(v) => write!(f, "metric violation: {v}"),
            Self::LimitExceeded(msg) => write!(f, "limit exceeded: {msg}"),
            Self::InfeasibleAssignment { robots, parts } => {
                write!(f, "cannot assign {robots} robots to {parts} parts (need at least one each)")
            }
            Self::NotConnected => f.write_str("graph is not connected"),
            Self::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl From<MetricViolation> for Error {
    fn from(v: MetricViolation) -> Self {
        Self::Metric(v)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
