use clap::ValueEnum;
use patrol_core::{CyclicSolution, MetricSpace, TspAlgorithm};
use serde::{Deserialize, Serialize};

/// Rounds to 12 significant digits so that emitted JSON is stable across
/// platforms and diffable.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum TspChoice {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "tree-double")]
    TreeDouble,
    #[value(name = "2opt")]
    #[serde(rename = "2opt")]
    TwoOpt,
}

impl TspChoice {
    pub fn algorithm(self) -> TspAlgorithm {
        match self {
            Self::Exact => TspAlgorithm::exact(),
            Self::TreeDouble => TspAlgorithm::tree_double(),
            Self::TwoOpt => TspAlgorithm::two_opt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TourReport {
    pub order: Vec<usize>,
    pub length: f64,
}

/// JSON certificate of a cyclic solution. `epsilon` and `bound` are present
/// only for solver output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub k: usize,
    pub tsp: TspChoice,
    pub partition: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    pub tours: Vec<TourReport>,
    pub robots: Vec<usize>,
    pub latency: f64,
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

impl SolutionReport {
    pub fn new(space: &MetricSpace, solution: &CyclicSolution, tsp: TspChoice, epsilon: Option<f64>) -> Self {
        let gamma = tsp.algorithm().gamma();
        let labels = space.labels().map(|names| {
            solution
                .partition
                .parts()
                .iter()
                .map(|part| part.iter().map(|&s| names[s].clone()).collect())
                .collect()
        });
        Self {
            k: solution.robot_count(),
            tsp,
            partition: solution.partition.parts().to_vec(),
            labels,
            tours: solution
                .tours
                .iter()
                .map(|t| TourReport { order: t.order().to_vec(), length: round12(t.length()) })
                .collect(),
            robots: solution.robots.clone(),
            latency: round12(solution.latency),
            gamma,
            epsilon: epsilon.map(round12),
            bound: epsilon.map(|e| round12((1.0 + e) * gamma)),
        }
    }

    /// Largest tour length per robot, recomputed from the listed tours.
    pub fn recomputed_latency(&self) -> f64 {
        self.tours
            .iter()
            .zip(&self.robots)
            .map(|(t, &r)| t.length / r as f64)
            .fold(0.0, f64::max)
    }
}

/// What `evaluate` reads: a partition, optionally with `k` and `tsp`.
/// A [`SolutionReport`] parses as one.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct PartitionFile {
    pub partition: Vec<Vec<usize>>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub tsp: Option<TspChoice>,
}
