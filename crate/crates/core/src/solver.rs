//! Cyclic patrol solutions: robot allocation, evaluation of a fixed partition,
//! the MST-coarsening approximation scheme, and an exhaustive oracle.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::spanning::{coarsen, mst, Edge, Partition};
use crate::tsp::{tour_exact, Tour, TspAlgorithm};

/// Oracle limits for [`brute_force_cyclic`].
pub const BRUTE_FORCE_MAX_SITES: usize = 10;
pub const BRUTE_FORCE_MAX_ROBOTS: usize = 5;

/// A partition of the sites, one closed tour per part, and the number of robots
/// spaced evenly along each tour.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicSolution {
    pub partition: Partition,
    pub tours: Vec<Tour>,
    pub robots: Vec<usize>,
    pub latency: f64,
}

impl CyclicSolution {
    pub fn robot_count(&self) -> usize {
        self.robots.iter().sum()
    }
}

/// `max_i lengths[i] / robots[i]`.
pub fn max_ratio(lengths: &[f64], robots: &[usize]) -> f64 {
    lengths
        .iter()
        .zip(robots)
        .map(|(&l, &r)| l / r as f64)
        .fold(0.0, |acc, x| if x > acc { x } else { acc })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub k: usize,
    pub epsilon: f64,
    pub tsp: TspAlgorithm,
    pub parallel: bool,
}

impl SolverConfig {
    pub fn new(k: usize, epsilon: f64, tsp: TspAlgorithm) -> Self {
        Self { k, epsilon, tsp, parallel: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be ≥ 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidInput("epsilon must be a positive finite number".into()));
        }
        Ok(())
    }

    /// `(1 + ε)·γ`.
    pub fn bound_factor(&self) -> f64 {
        (1.0 + self.epsilon) * self.tsp.gamma()
    }

    /// How many of the heaviest MST edges are removed: `⌈k(1 + k/ε)⌉`,
    /// capped at the number of MST edges.
    pub fn removal_count(&self, mst_edges: usize) -> usize {
        let k = self.k as f64;
        let raw = libm::ceil(k * (1.0 + k / self.epsilon));
        if raw >= mst_edges as f64 {
            mst_edges
        } else {
            raw as usize
        }
    }
}

#[derive(PartialEq)]
struct Ratio {
    value: f64,
    index: usize,
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    // max-heap: largest ratio first, then lowest index
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.total_cmp(&other.value).then(other.index.cmp(&self.index))
    }
}

/// Splits `k` robots over tours of the given lengths, minimizing the largest
/// length-per-robot. Starts at one robot each and hands every further robot to
/// the part with the currently largest ratio (lowest index on ties).
pub fn assign_robots(lengths: &[f64], k: usize) -> Result<Vec<usize>> {
    let t = lengths.len();
    if t == 0 {
        return Err(Error::InvalidInput("no tours to assign robots to".into()));
    }
    if k < t {
        return Err(Error::InfeasibleAssignment { robots: k, parts: t });
    }
    let mut robots = vec![1usize; t];
    let mut heap: BinaryHeap<Ratio> =
        lengths.iter().enumerate().map(|(index, &value)| Ratio { value, index }).collect();
    for _ in t..k {
        let Ratio { index, .. } = heap.pop().expect("heap holds one entry per part");
        robots[index] += 1;
        heap.push(Ratio { value: lengths[index] / robots[index] as f64, index });
    }
    Ok(robots)
}

/// Exhaustive counterpart of [`assign_robots`]: tries every composition of `k`
/// into `lengths.len()` positive parts, keeping the first optimum in
/// lexicographic order.
pub fn assign_robots_exhaustive(lengths: &[f64], k: usize) -> Result<Vec<usize>> {
    fn rec(
        lengths: &[f64],
        left: usize,
        current: &mut Vec<usize>,
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        let i = current.len();
        if i + 1 == lengths.len() {
            current.push(left);
            let ratio = max_ratio(lengths, current);
            if best.as_ref().map_or(true, |(b, _)| ratio < *b) {
                *best = Some((ratio, current.clone()));
            }
            current.pop();
            return;
        }
        let remaining_parts = lengths.len() - i - 1;
        for take in 1..=(left - remaining_parts) {
            current.push(take);
            rec(lengths, left - take, current, best);
            current.pop();
        }
    }
    let t = lengths.len();
    if t == 0 {
        return Err(Error::InvalidInput("no tours to assign robots to".into()));
    }
    if k < t {
        return Err(Error::InfeasibleAssignment { robots: k, parts: t });
    }
    let mut best = None;
    rec(lengths, k, &mut Vec::with_capacity(t), &mut best);
    Ok(best.expect("at least one composition exists").1)
}

/// Tours every part with `tsp` and allocates `k` robots greedily.
pub fn evaluate(
    space: &MetricSpace,
    partition: &Partition,
    k: usize,
    tsp: TspAlgorithm,
) -> Result<CyclicSolution> {
    if partition.site_count() != space.len() {
        return Err(Error::InvalidInput(format!(
            "partition covers {} sites but the space has {}",
            partition.site_count(),
            space.len()
        )));
    }
    let tours = partition
        .parts()
        .iter()
        .map(|part| tsp.tour(space, part))
        .collect::<Result<Vec<_>>>()?;
    let lengths: Vec<f64> = tours.iter().map(Tour::length).collect();
    let robots = assign_robots(&lengths, k)?;
    let latency = max_ratio(&lengths, &robots);
    Ok(CyclicSolution { partition: partition.clone(), tours, robots, latency })
}

/// Subsets of `0..m` with at most `cap` elements, in colex order.
fn colex_subsets(m: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for e in 0..m {
        let len = out.len();
        for i in 0..len {
            if out[i].len() < cap {
                let mut s = out[i].clone();
                s.push(e);
                out.push(s);
            }
        }
    }
    out
}

/// The candidate partitions examined by [`solve`], in enumeration order.
///
/// The heaviest `⌈k(1 + k/ε)⌉` MST edges are removed. Together with the
/// remaining forest components they form a tree, so choosing at most `k - 1`
/// removed edges to leave cut, and merging along all others, yields every
/// coarsening of the components into at most `k` parts exactly once.
pub fn candidate_partitions(space: &MetricSpace, config: &SolverConfig) -> Result<Vec<Partition>> {
    config.validate()?;
    let all: Vec<usize> = (0..space.len()).collect();
    let tree = mst(space, &all)?;
    let (removed, rest) = tree.remove_heaviest(config.removal_count(tree.edges().len()));
    let components = rest.components_partition();
    let cuts = colex_subsets(removed.len(), config.k - 1);
    Ok(cuts
        .into_iter()
        .map(|cut| {
            let merge: Vec<Edge> = removed
                .iter()
                .enumerate()
                .filter(|(i, _)| !cut.contains(i))
                .map(|(_, e)| *e)
                .collect();
            coarsen(&components, &merge)
        })
        .collect())
}

/// Best cyclic solution over all MST coarsenings; its latency is within
/// `(1 + ε)·γ` of the optimal cyclic latency.
pub fn solve(space: &MetricSpace, config: &SolverConfig) -> Result<CyclicSolution> {
    let candidates = candidate_partitions(space, config)?;
    let evaluated = evaluate_all(space, &candidates, config)?;
    let mut best: Option<CyclicSolution> = None;
    for solution in evaluated {
        if best.as_ref().map_or(true, |b| solution.latency < b.latency) {
            best = Some(solution);
        }
    }
    Ok(best.expect("the single-part candidate is always present"))
}

#[cfg(feature = "std")]
fn evaluate_all(
    space: &MetricSpace,
    candidates: &[Partition],
    config: &SolverConfig,
) -> Result<Vec<CyclicSolution>> {
    use rayon::prelude::*;
    if config.parallel {
        candidates.par_iter().map(|p| evaluate(space, p, config.k, config.tsp)).collect()
    } else {
        candidates.iter().map(|p| evaluate(space, p, config.k, config.tsp)).collect()
    }
}

#[cfg(not(feature = "std"))]
fn evaluate_all(
    space: &MetricSpace,
    candidates: &[Partition],
    config: &SolverConfig,
) -> Result<Vec<CyclicSolution>> {
    candidates.iter().map(|p| evaluate(space, p, config.k, config.tsp)).collect()
}

/// Optimal cyclic solution by enumerating every partition into at most `k`
/// parts, with exact tours and exhaustive robot allocation.
pub fn brute_force_cyclic(space: &MetricSpace, k: usize) -> Result<CyclicSolution> {
    let n = space.len();
    if k == 0 {
        return Err(Error::InvalidInput("k must be ≥ 1".into()));
    }
    if n > BRUTE_FORCE_MAX_SITES || k > BRUTE_FORCE_MAX_ROBOTS {
        return Err(Error::LimitExceeded(format!(
            "brute force supports n ≤ {BRUTE_FORCE_MAX_SITES} and k ≤ {BRUTE_FORCE_MAX_ROBOTS} (got n = {n}, k = {k})"
        )));
    }
    let mut tours: Vec<Option<Tour>> = vec![None; 1 << n];
    for mask in 1usize..(1 << n) {
        let sites: Vec<usize> = (0..n).filter(|&s| mask & (1 << s) != 0).collect();
        tours[mask] = Some(tour_exact(space, &sites)?);
    }

    // restricted growth strings: block[0] = 0, block[i] ≤ 1 + max(block[..i])
    let mut block = vec![0usize; n];
    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;
    loop {
        let parts = block.iter().copied().max().unwrap_or(0) + 1;
        if parts <= k {
            let mut masks = vec![0usize; parts];
            for (s, &b) in block.iter().enumerate() {
                masks[b] |= 1 << s;
            }
            let lengths: Vec<f64> =
                masks.iter().map(|&m| tours[m].as_ref().expect("tour cached").length()).collect();
            let robots = assign_robots_exhaustive(&lengths, k)?;
            let latency = max_ratio(&lengths, &robots);
            if best.as_ref().map_or(true, |(b, _, _)| latency < *b) {
                best = Some((latency, masks, robots));
            }
        }
        // advance to the next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                let (latency, masks, robots) = best.expect("the one-part partition is feasible");
                let tours: Vec<Tour> =
                    masks.iter().map(|&m| tours[m].clone().expect("tour cached")).collect();
                let parts: Vec<Vec<usize>> =
                    masks.iter().map(|&m| (0..n).filter(|&s| m & (1 << s) != 0).collect()).collect();
                return Ok(CyclicSolution {
                    partition: Partition::canonical(parts),
                    tours,
                    robots,
                    latency,
                });
            }
            i -= 1;
            let prefix_max = block[..i].iter().copied().max().unwrap_or(0);
            if block[i] <= prefix_max && block[i] + 1 < k {
                block[i] += 1;
                for b in &mut block[i + 1..] {
                    *b = 0;
                }
                break;
            }
        }
    }
}
