use std::fs;
use std::path::Path;

use patrol_core::{Error, MetricSpace, MultiGraph};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// On-disk instance: exactly one of `points` or `matrix`, plus optional labels.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A validated instance. Points are kept for rendering.
#[derive(Debug, Clone)]
pub struct Instance {
    pub space: MetricSpace,
    pub points: Option<Vec<Vec<f64>>>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance, CliError> {
        let (space, points) = match (self.points, self.matrix) {
            (Some(points), None) => (MetricSpace::from_points(&points)?, Some(points)),
            (None, Some(matrix)) => (MetricSpace::from_matrix(&matrix)?, None),
            _ => {
                return Err(Error::InvalidInput(
                    "instance needs exactly one of \"points\" or \"matrix\"".into(),
                )
                .into())
            }
        };
        let space = match self.labels {
            Some(labels) => space.with_labels(labels)?,
            None => space,
        };
        Ok(Instance { space, points })
    }
}

/// Undirected multigraph file: `{"vertices": N, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<MultiGraph, CliError> {
        Ok(MultiGraph::new(self.vertices, self.edges)?)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_owned(), source })
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    read_json::<InstanceFile>(path)?.into_instance()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Instance, CliError> {
        serde_json::from_str::<InstanceFile>(text).unwrap().into_instance()
    }

    #[test]
    fn points_and_matrix() {
        let inst = parse(r#"{"points": [[0,0],[3,4]]}"#).unwrap();
        assert_eq!(inst.space.d(0, 1), 5.0);
        assert!(inst.points.is_some());
        let inst = parse(r#"{"matrix": [[0,2],[2,0]], "labels": ["a","b"]}"#).unwrap();
        assert_eq!(inst.space.d(1, 0), 2.0);
        assert_eq!(inst.space.labels().unwrap()[1], "b");
        assert!(inst.points.is_none());
    }

    #[test]
    fn exactly_one_source() {
        assert!(parse("{}").is_err());
        assert!(parse(r#"{"points": [[0]], "matrix": [[0]]}"#).is_err());
        assert!(serde_json::from_str::<InstanceFile>(r#"{"pts": []}"#).is_err());
    }

    #[test]
    fn metric_errors_surface() {
        let err = parse(r#"{"matrix": [[0,1,5],[1,0,1],[5,1,0]]}"#).unwrap_err();
        assert_eq!(err.kind(), "metric_violation");
        assert_eq!(err.exit_code(), 2);
    }
}
