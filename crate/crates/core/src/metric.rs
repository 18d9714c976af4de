//! Finite metric spaces and their unit-edge subdivision.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::{Error, MetricViolation, Result};

/// Relative slack used when validating floating-point metric axioms.
pub const METRIC_TOLERANCE: f64 = 1e-9;

/// A finite metric space over sites `0..n`, stored as a dense distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    dist: Vec<f64>,
    n: usize,
    labels: Option<Vec<String>>,
}

fn close(a: f64, b: f64) -> bool {
    let scale = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    (a - b).abs() <= METRIC_TOLERANCE * scale
}

impl MetricSpace {
    /// Euclidean distances between the given points.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("point list is empty".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidInput("points must have dimension >= 1".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "point {i} has dimension {}, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!("point {i} has a non-finite coordinate")));
            }
        }
        let n = points.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let sq: f64 = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                let d = libm::sqrt(sq);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        let space = Self { dist, n, labels: None };
        space.validate()?;
        Ok(space)
    }

    /// Validates an explicit distance matrix.
    pub fn from_matrix(matrix: &[Vec<f64>]) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidInput("distance matrix is empty".into()));
        }
        let mut dist = vec![0.0; n * n];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(MetricViolation::NotSquare { row: i, len: row.len(), expected: n }.into());
            }
            for (j, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(MetricViolation::NonFinite { i, j }.into());
                }
                dist[i * n + j] = value;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (forward, backward) = (dist[i * n + j], dist[j * n + i]);
                if !close(forward, backward) {
                    return Err(MetricViolation::Asymmetric { i, j, forward, backward }.into());
                }
                dist[j * n + i] = forward;
            }
        }
        let space = Self { dist, n, labels: None };
        space.validate()?;
        Ok(space)
    }

    fn validate(&self) -> core::result::Result<(), MetricViolation> {
        let n = self.n;
        for i in 0..n {
            let value = self.d(i, i);
            if value != 0.0 {
                return Err(MetricViolation::NonzeroDiagonal { site: i, value });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let value = self.d(i, j);
                if value < 0.0 {
                    return Err(MetricViolation::Negative { i, j, value });
                }
                if i != j && value == 0.0 {
                    return Err(MetricViolation::Coincident { i: i.min(j), j: i.max(j) });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let direct = self.d(i, j);
                for via in 0..n {
                    if via == i || via == j {
                        continue;
                    }
                    let detour = self.d(i, via) + self.d(via, j);
                    if direct > detour && !close(direct, detour) {
                        return Err(MetricViolation::Triangle { i, j, via });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "{} labels given for {} sites",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance between sites `i` and `j`.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.dist.chunks(self.n)
    }

    /// True when every off-diagonal distance is a (positive) integer.
    pub fn is_integral(&self) -> bool {
        self.dist.iter().all(|&d| d == libm::floor(d))
    }

    /// Checks that `sites` are distinct, in-range indices.
    pub(crate) fn check_subset(&self, sites: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.n];
        for &s in sites {
            if s >= self.n {
                return Err(Error::InvalidInput(format!("site {s} out of range (n = {})", self.n)));
            }
            if core::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidInput(format!("site {s} listed twice")));
            }
        }
        Ok(())
    }

    /// Replaces every pair of sites at integer distance `D` by a path of `D`
    /// unit edges through `D - 1` fresh dummy nodes.
    pub fn subdivide_integer(&self) -> Result<UnitGraph> {
        if !self.is_integral() {
            return Err(Error::InvalidInput("all distances must be integers".into()));
        }
        let n = self.n;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let length = self.d(i, j) as usize;
                let mut prev = i;
                for _ in 1..length {
                    let node = adjacency.len();
                    adjacency.push(Vec::with_capacity(2));
                    adjacency[prev].push(node);
                    adjacency[node].push(prev);
                    edges.push((prev, node));
                    prev = node;
                }
                adjacency[prev].push(j);
                adjacency[j].push(prev);
                edges.push((prev, j));
            }
        }
        Ok(UnitGraph { original_count: n, adjacency, edges })
    }
}

/// An integer metric subdivided into unit-length edges. Nodes `0..original_count`
/// are the original sites; the rest are dummies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGraph {
    original_count: usize,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl UnitGraph {
    pub fn original_count(&self) -> usize {
        self.original_count
    }

    pub fn total_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }
}
