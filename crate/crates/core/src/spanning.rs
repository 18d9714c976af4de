//! Minimum spanning forests, heavy-edge removal, and partition coarsening.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;

/// An undirected weighted edge between two sites, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: f64) -> Self {
        Self { u: a.min(b), v: a.max(b), weight }
    }

    /// Lexicographic order on `(weight, u, v)`.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.u.cmp(&other.u))
            .then(self.v.cmp(&other.v))
    }
}

/// A disjoint cover of sites by nonempty parts.
///
/// Parts are kept sorted internally and ordered by their smallest site, so
/// two partitions of the same set compare equal iff they group sites alike.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates that `parts` is a partition of `0..n`.
    pub fn new(parts: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = alloc::vec![false; n];
        for part in &parts {
            if part.is_empty() {
                return Err(Error::InvalidInput("partition has an empty part".into()));
            }
            for &s in part {
                if s >= n {
                    return Err(Error::InvalidInput(format!("site {s} out of range (n = {n})")));
                }
                if core::mem::replace(&mut seen[s], true) {
                    return Err(Error::InvalidInput(format!("site {s} appears in two parts")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&b| !b) {
            return Err(Error::InvalidInput(format!("site {missing} is not covered")));
        }
        Ok(Self::canonical(parts))
    }

    pub(crate) fn canonical(mut parts: Vec<Vec<usize>>) -> Self {
        for part in &mut parts {
            part.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Self { parts }
    }

    pub fn singletons(n: usize) -> Self {
        Self { parts: (0..n).map(|s| alloc::vec![s]).collect() }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn site_count(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn into_parts(self) -> Vec<Vec<usize>> {
        self.parts
    }
}

/// A forest over a set of sites together with its connected components.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningForest {
    sites: Vec<usize>,
    edges: Vec<Edge>,
    components: Vec<Vec<usize>>,
}

impl SpanningForest {
    fn from_edges(sites: Vec<usize>, edges: Vec<Edge>) -> Self {
        let index: BTreeMap<usize, usize> = sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut uf = UnionFind::new(sites.len());
        for e in &edges {
            uf.union(index[&e.u], index[&e.v]);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &s) in sites.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(s);
        }
        let mut components: Vec<Vec<usize>> = groups.into_values().collect();
        for c in &mut components {
            c.sort_unstable();
        }
        components.sort_unstable_by_key(|c| c[0]);
        Self { sites, edges, components }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Connected components, each sorted, ordered by smallest site.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Drops the `count` heaviest edges (all of them if `count` exceeds the
    /// edge count). Among equal weights the lexicographically larger `(u, v)`
    /// goes first. Returns the removed edges and the remaining forest.
    pub fn remove_heaviest(&self, count: usize) -> (Vec<Edge>, SpanningForest) {
        let mut sorted = self.edges.clone();
        sorted.sort_by(Edge::cmp_key);
        let keep = sorted.len().saturating_sub(count);
        let removed = sorted.split_off(keep);
        (removed, SpanningForest::from_edges(self.sites.clone(), sorted))
    }

    /// Number of edges strictly longer than `threshold`.
    pub fn count_long_edges(&self, threshold: f64) -> usize {
        self.edges.iter().filter(|e| e.weight > threshold).count()
    }

    pub fn components_partition(&self) -> Partition {
        Partition { parts: self.components.clone() }
    }
}

/// Kruskal's algorithm over the complete graph on `subset`, scanning edges in
/// `(weight, u, v)` order.
pub fn mst(space: &MetricSpace, subset: &[usize]) -> Result<SpanningForest> {
    if subset.is_empty() {
        return Err(Error::InvalidInput("subset is empty".into()));
    }
    space.check_subset(subset)?;
    let mut sites = subset.to_vec();
    sites.sort_unstable();
    let m = sites.len();
    let mut candidates = Vec::with_capacity(m * (m - 1) / 2);
    for a in 0..m {
        for b in (a + 1)..m {
            candidates.push((a, b, Edge::new(sites[a], sites[b], space.d(sites[a], sites[b]))));
        }
    }
    candidates.sort_by(|x, y| x.2.cmp_key(&y.2));
    let mut uf = UnionFind::new(m);
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    for (a, b, e) in candidates {
        if uf.union(a, b) {
            edges.push(e);
            if edges.len() + 1 == m {
                break;
            }
        }
    }
    Ok(SpanningForest::from_edges(sites, edges))
}

/// Merges the parts of `base` along `edges`: the result is the set of connected
/// components of "each part fully connected" plus the given edges.
pub fn coarsen(base: &Partition, edges: &[Edge]) -> Partition {
    let n = base.parts.iter().flatten().copied().max().map_or(0, |m| m + 1);
    let mut uf = UnionFind::new(n);
    for part in &base.parts {
        for w in part.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for e in edges {
        uf.union(e.u, e.v);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &s in base.parts.iter().flatten() {
        groups.entry(uf.find(s)).or_default().push(s);
    }
    Partition::canonical(groups.into_values().collect())
}
