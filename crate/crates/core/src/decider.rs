//! Exact decision procedure for integer metrics: does some schedule of `k`
//! unit-speed robots keep every site's revisit gap at most `ell`?
//!
//! Robots may be assumed to sit on nodes of the unit-subdivided graph at every
//! integer time, so a schedule is an infinite walk through configurations
//! (robot nodes plus, per site, the time since its last visit). Such a walk
//! exists iff the finite graph of violation-free configurations has a cycle
//! reachable from a start configuration.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::metric::{MetricSpace, UnitGraph};
use crate::tsp::tour_tree_double;

/// Upper bound on `total_count^k · (ell + 1)^n` accepted by [`decide`].
pub const STATE_LIMIT: u128 = 10_000_000;

/// Robots' nodes at one integer time, and per original site the time elapsed
/// since it was last occupied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub positions: Vec<usize>,
    pub deadlines: Vec<usize>,
}

/// A run that follows `prefix` once and then repeats `cycle` forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicWitness {
    pub prefix: Vec<Configuration>,
    pub cycle: Vec<Configuration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    pub witness: Option<PeriodicWitness>,
    /// Number of violation-free configurations reached by the search.
    pub explored: usize,
}

/// Mixed-radix packing of (sorted positions, deadlines) into one integer.
struct Codec {
    sites: usize,
    nodes: u64,
    ell: u64,
    robots: usize,
}

impl Codec {
    fn encode(&self, positions: &[usize], deadlines: &[usize]) -> u64 {
        let mut key = 0u64;
        for &p in positions {
            key = key * self.nodes + p as u64;
        }
        for &d in deadlines {
            key = key * self.ell + d as u64;
        }
        key
    }

    fn decode(&self, mut key: u64) -> Configuration {
        let mut deadlines = vec![0; self.sites];
        for d in deadlines.iter_mut().rev() {
            *d = (key % self.ell) as usize;
            key /= self.ell;
        }
        let mut positions = vec![0; self.robots];
        for p in positions.iter_mut().rev() {
            *p = (key % self.nodes) as usize;
            key /= self.nodes;
        }
        Configuration { positions, deadlines }
    }
}

fn check_limit(total: usize, k: usize, ell: usize, n: usize) -> Result<()> {
    let mut states: u128 = 1;
    let factors = core::iter::repeat(total as u128)
        .take(k)
        .chain(core::iter::repeat(ell as u128 + 1).take(n));
    for f in factors {
        states = states.saturating_mul(f);
        if states > STATE_LIMIT {
            return Err(Error::LimitExceeded(format!(
                "state space {total}^{k} · {}^{n} exceeds {STATE_LIMIT}",
                ell + 1
            )));
        }
    }
    Ok(())
}

/// All successors of `config`: every robot stays or crosses one unit edge.
/// Successors that leave some site unvisited for `ell` steps are dropped.
fn successors(graph: &UnitGraph, codec: &Codec, config: &Configuration, out: &mut Vec<u64>) {
    out.clear();
    let k = config.positions.len();
    let n = codec.sites;
    let ell = codec.ell as usize;
    let options: Vec<Vec<usize>> = config
        .positions
        .iter()
        .map(|&p| core::iter::once(p).chain(graph.neighbors(p).iter().copied()).collect())
        .collect();
    let mut choice = vec![0usize; k];
    let mut next = vec![0usize; k];
    let mut occupied = vec![false; n];
    let mut deadlines = vec![0usize; n];
    'product: loop {
        for r in 0..k {
            next[r] = options[r][choice[r]];
        }
        next.sort_unstable();
        occupied.iter_mut().for_each(|o| *o = false);
        for &p in &next {
            if p < n {
                occupied[p] = true;
            }
        }
        let mut ok = true;
        for s in 0..n {
            if occupied[s] {
                deadlines[s] = 0;
            } else {
                deadlines[s] = config.deadlines[s] + 1;
                if deadlines[s] >= ell {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(codec.encode(&next, &deadlines));
        }
        for r in 0..k {
            choice[r] += 1;
            if choice[r] < options[r].len() {
                continue 'product;
            }
            choice[r] = 0;
        }
        break;
    }
    out.sort_unstable();
    out.dedup();
}

/// Sorted `k`-multisets over `0..n`, in lexicographic order.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] + 1 < n) else { return out };
        let v = cur[i] + 1;
        for c in &mut cur[i..] {
            *c = v;
        }
    }
}

/// Decides whether `k` robots can keep every site's revisit gap at most `ell`
/// on an integer metric. A `true` answer comes with a periodic witness in
/// which robot `r` is tracked at `positions[r]` throughout.
///
/// Every site counts as visited at time 0.
pub fn decide(space: &MetricSpace, k: usize, ell: usize) -> Result<Decision> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be ≥ 1".into()));
    }
    if ell == 0 {
        return Err(Error::InvalidInput("ell must be ≥ 1".into()));
    }
    let graph = space.subdivide_integer()?;
    let n = space.len();
    check_limit(graph.total_count(), k, ell, n)?;
    let codec = Codec { sites: n, nodes: graph.total_count() as u64, ell: ell as u64, robots: k };

    let mut keys: Vec<u64> = Vec::new();
    let mut index: HashMap<u64, u32> = HashMap::new();
    for start in multisets(n, k) {
        let key = codec.encode(&start, &vec![0; n]);
        if !index.contains_key(&key) {
            index.insert(key, keys.len() as u32);
            keys.push(key);
        }
    }
    let starts = keys.len();

    // forward exploration, successor lists in CSR form
    let mut offsets: Vec<usize> = vec![0];
    let mut targets: Vec<u32> = Vec::new();
    let mut buf = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        successors(&graph, &codec, &codec.decode(keys[i]), &mut buf);
        for &key in &buf {
            let next = *index.entry(key).or_insert_with(|| {
                keys.push(key);
                (keys.len() - 1) as u32
            });
            targets.push(next);
        }
        offsets.push(targets.len());
        i += 1;
    }
    let total = keys.len();

    // repeatedly discard configurations with no surviving successor
    let mut out_degree: Vec<usize> = (0..total).map(|i| offsets[i + 1] - offsets[i]).collect();
    let mut pred_offsets = vec![0usize; total + 1];
    for &t in &targets {
        pred_offsets[t as usize + 1] += 1;
    }
    for i in 0..total {
        pred_offsets[i + 1] += pred_offsets[i];
    }
    let mut fill = pred_offsets.clone();
    let mut preds = vec![0u32; targets.len()];
    for src in 0..total {
        for &t in &targets[offsets[src]..offsets[src + 1]] {
            preds[fill[t as usize]] = src as u32;
            fill[t as usize] += 1;
        }
    }
    let mut alive = vec![true; total];
    let mut stack: Vec<usize> = (0..total).filter(|&i| out_degree[i] == 0).collect();
    while let Some(v) = stack.pop() {
        if !core::mem::replace(&mut alive[v], false) {
            continue;
        }
        for &p in &preds[pred_offsets[v]..pred_offsets[v + 1]] {
            let p = p as usize;
            out_degree[p] -= 1;
            if out_degree[p] == 0 && alive[p] {
                stack.push(p);
            }
        }
    }

    let Some(first) = (0..starts).find(|&s| alive[s]) else {
        return Ok(Decision { answer: false, witness: None, explored: total });
    };

    // follow the smallest surviving successor until a configuration repeats
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut walk = Vec::new();
    let mut cur = first;
    while !seen.contains_key(&cur) {
        seen.insert(cur, walk.len());
        walk.push(cur);
        cur = targets[offsets[cur]..offsets[cur + 1]]
            .iter()
            .map(|&t| t as usize)
            .find(|&t| alive[t])
            .expect("surviving configuration has a surviving successor");
    }
    let entry = seen[&cur];
    let sorted: Vec<Configuration> = walk.iter().map(|&i| codec.decode(keys[i])).collect();
    let witness = label_robots(&graph, &sorted, entry);
    Ok(Decision { answer: true, witness: Some(witness), explored: total })
}

/// Matches robots in `from` to nodes in `to` so that each robot stays or
/// crosses one edge.
fn match_moves(graph: &UnitGraph, from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
    fn rec(graph: &UnitGraph, from: &[usize], to: &[usize], used: &mut [bool], out: &mut Vec<usize>) -> bool {
        let r = out.len();
        if r == from.len() {
            return true;
        }
        for j in 0..to.len() {
            if used[j] || !(from[r] == to[j] || graph.is_adjacent(from[r], to[j])) {
                continue;
            }
            used[j] = true;
            out.push(to[j]);
            if rec(graph, from, to, used, out) {
                return true;
            }
            out.pop();
            used[j] = false;
        }
        false
    }
    let mut out = Vec::with_capacity(from.len());
    rec(graph, from, to, &mut vec![false; to.len()], &mut out).then_some(out)
}

/// Turns a lasso of robot multisets into a lasso of labeled configurations.
/// The labeled cycle may span several passes of the unlabeled one.
fn label_robots(graph: &UnitGraph, sorted: &[Configuration], entry: usize) -> PeriodicWitness {
    let period = sorted.len() - entry;
    let mut labeled = vec![sorted[0].clone()];
    let mut entries: Vec<usize> = Vec::new();
    let mut step = 0usize;
    loop {
        if step >= entry && (step - entry) % period == 0 {
            let here = labeled.len() - 1;
            if let Some(&prev) = entries.iter().find(|&&e| labeled[e] == labeled[here]) {
                labeled.pop();
                let cycle = labeled.split_off(prev);
                return PeriodicWitness { prefix: labeled, cycle };
            }
            entries.push(here);
        }
        step += 1;
        let target = if step < sorted.len() { &sorted[step] } else { &sorted[entry + (step - entry) % period] };
        let current = &labeled[labeled.len() - 1];
        let positions = match_moves(graph, &current.positions, &target.positions)
            .expect("consecutive configurations are one move apart");
        labeled.push(Configuration { positions, deadlines: target.deadlines.clone() });
    }
}

/// Smallest integer `ell ≥ 1` for which [`decide`] answers true, or 0 when
/// every site can hold its own robot.
pub fn minimal_latency(space: &MetricSpace, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be ≥ 1".into()));
    }
    if !space.is_integral() {
        return Err(Error::InvalidInput("all distances must be integers".into()));
    }
    let n = space.len();
    if k >= n {
        return Ok(0);
    }
    // one robot on any tour already achieves its length
    let all: Vec<usize> = (0..n).collect();
    let upper = libm::round(tour_tree_double(space, &all)?.length()) as usize;
    for ell in 1..upper {
        if decide(space, k, ell)?.answer {
            return Ok(ell);
        }
    }
    Ok(upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[f64]]) -> MetricSpace {
        MetricSpace::from_matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn two_sites() -> MetricSpace {
        matrix(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn ring4() -> MetricSpace {
        matrix(&[
            &[0.0, 1.0, 2.0, 1.0],
            &[1.0, 0.0, 1.0, 2.0],
            &[2.0, 1.0, 0.0, 1.0],
            &[1.0, 2.0, 1.0, 0.0],
        ])
    }

    #[test]
    fn shuttle_between_two_sites() {
        let d = decide(&two_sites(), 1, 2).unwrap();
        assert!(d.answer);
        let w = d.witness.unwrap();
        assert_eq!(w.cycle.len(), 2);
        assert!(!decide(&two_sites(), 1, 1).unwrap().answer);
    }

    #[test]
    fn ring_with_two_robots() {
        assert!(decide(&ring4(), 2, 2).unwrap().answer);
        assert!(!decide(&ring4(), 2, 1).unwrap().answer);
        assert_eq!(minimal_latency(&ring4(), 2).unwrap(), 2);
    }

    #[test]
    fn minimal_latency_examples() {
        assert_eq!(minimal_latency(&two_sites(), 1).unwrap(), 2);
        assert_eq!(minimal_latency(&two_sites(), 2).unwrap(), 0);
        // parking also satisfies any positive bound
        assert!(decide(&two_sites(), 2, 1).unwrap().answer);
        let tri = matrix(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        assert!(!decide(&tri, 1, 2).unwrap().answer);
        assert!(decide(&tri, 1, 3).unwrap().answer);
        assert_eq!(minimal_latency(&tri, 1).unwrap(), 3);
    }

    #[test]
    fn rejects_bad_inputs() {
        let frac = matrix(&[&[0.0, 1.5], &[1.5, 0.0]]);
        assert!(matches!(decide(&frac, 1, 3), Err(Error::InvalidInput(_))));
        assert!(matches!(decide(&two_sites(), 0, 3), Err(Error::InvalidInput(_))));
        assert!(matches!(decide(&two_sites(), 1, 0), Err(Error::InvalidInput(_))));
        let big = matrix(&[
            &[0.0, 9.0, 9.0, 9.0],
            &[9.0, 0.0, 9.0, 9.0],
            &[9.0, 9.0, 0.0, 9.0],
            &[9.0, 9.0, 9.0, 0.0],
        ]);
        assert!(matches!(decide(&big, 3, 20), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn codec_round_trip() {
        let codec = Codec { sites: 3, nodes: 7, ell: 4, robots: 2 };
        let c = Configuration { positions: vec![2, 6], deadlines: vec![0, 3, 1] };
        assert_eq!(codec.decode(codec.encode(&c.positions, &c.deadlines)), c);
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(3, 2), vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn witness_moves_are_unit_steps() {
        let graph = ring4().subdivide_integer().unwrap();
        let w = decide(&ring4(), 2, 2).unwrap().witness.unwrap();
        let all: Vec<&Configuration> = w.prefix.iter().chain(&w.cycle).chain(w.cycle.first()).collect();
        for pair in all.windows(2) {
            for (a, b) in pair[0].positions.iter().zip(&pair[1].positions) {
                assert!(a == b || graph.is_adjacent(*a, *b));
            }
        }
        for c in &w.cycle {
            assert!(c.deadlines.iter().all(|&d| d <= 2));
        }
    }
}
