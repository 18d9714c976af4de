//! Tours over subsets of sites: exact Held–Karp, MST doubling, and 2-opt.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::spanning::mst;

/// Largest subset the exact solver accepts by default.
pub const DEFAULT_EXACT_LIMIT: usize = 13;

/// A closed tour visiting each site of its support once.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    order: Vec<usize>,
    length: f64,
}

impl Tour {
    /// Builds a tour from a visiting order, computing its closed length.
    pub fn new(space: &MetricSpace, order: Vec<usize>) -> Result<Self> {
        space.check_subset(&order)?;
        let length = cycle_length(space, &order);
        Ok(Self { order, length })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn cycle_length(space: &MetricSpace, order: &[usize]) -> f64 {
    match order.len() {
        0 | 1 => 0.0,
        n => (0..n).map(|i| space.d(order[i], order[(i + 1) % n])).sum(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TspKind {
    Exact,
    TreeDouble,
    /// MST doubling followed by 2-opt refinement.
    TwoOpt,
}

/// A tour-construction strategy with its declared approximation factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TspAlgorithm {
    pub kind: TspKind,
    pub exact_limit: usize,
}

impl TspAlgorithm {
    pub const fn new(kind: TspKind) -> Self {
        Self { kind, exact_limit: DEFAULT_EXACT_LIMIT }
    }

    pub const fn exact() -> Self {
        Self::new(TspKind::Exact)
    }

    pub const fn tree_double() -> Self {
        Self::new(TspKind::TreeDouble)
    }

    pub const fn two_opt() -> Self {
        Self::new(TspKind::TwoOpt)
    }

    /// Worst-case ratio of the produced tour to an optimal one.
    pub fn gamma(&self) -> f64 {
        match self.kind {
            TspKind::Exact => 1.0,
            TspKind::TreeDouble | TspKind::TwoOpt => 2.0,
        }
    }

    pub fn tour(&self, space: &MetricSpace, subset: &[usize]) -> Result<Tour> {
        match self.kind {
            TspKind::Exact => tour_exact_with_limit(space, subset, self.exact_limit),
            TspKind::TreeDouble => tour_tree_double(space, subset),
            TspKind::TwoOpt => Ok(refine_2opt(space, tour_tree_double(space, subset)?)),
        }
    }
}

/// Optimal tour by the Held–Karp dynamic program, for at most
/// [`DEFAULT_EXACT_LIMIT`] sites.
pub fn tour_exact(space: &MetricSpace, subset: &[usize]) -> Result<Tour> {
    tour_exact_with_limit(space, subset, DEFAULT_EXACT_LIMIT)
}

pub fn tour_exact_with_limit(space: &MetricSpace, subset: &[usize], limit: usize) -> Result<Tour> {
    space.check_subset(subset)?;
    if subset.len() > limit {
        return Err(Error::LimitExceeded(format!(
            "exact TSP on {} sites exceeds the limit of {limit}; use tree-double or 2opt",
            subset.len()
        )));
    }
    let mut sites = subset.to_vec();
    sites.sort_unstable();
    if sites.len() <= 3 {
        return Tour::new(space, sites);
    }
    // dp[mask][j]: shortest path from sites[0] through `mask` (over sites[1..])
    // ending at sites[j + 1].
    let m = sites.len() - 1;
    let full = 1usize << m;
    let mut dp = vec![f64::INFINITY; full * m];
    let mut parent = vec![usize::MAX; full * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = space.d(sites[0], sites[j + 1]);
    }
    for mask in 1..full {
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            let cur = dp[mask * m + j];
            if !cur.is_finite() {
                continue;
            }
            for next in 0..m {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let nmask = mask | (1 << next);
                let cand = cur + space.d(sites[j + 1], sites[next + 1]);
                if cand < dp[nmask * m + next] {
                    dp[nmask * m + next] = cand;
                    parent[nmask * m + next] = j;
                }
            }
        }
    }
    let last_mask = full - 1;
    let mut best = f64::INFINITY;
    let mut end = 0;
    for j in 0..m {
        let total = dp[last_mask * m + j] + space.d(sites[j + 1], sites[0]);
        if total < best {
            best = total;
            end = j;
        }
    }
    let mut order = Vec::with_capacity(sites.len());
    let (mut mask, mut j) = (last_mask, end);
    while j != usize::MAX {
        order.push(sites[j + 1]);
        let p = parent[mask * m + j];
        mask &= !(1 << j);
        j = p;
    }
    order.push(sites[0]);
    order.reverse();
    Tour::new(space, order)
}

/// Shortcut preorder walk of the subset's minimum spanning tree; at most
/// twice the optimal length.
pub fn tour_tree_double(space: &MetricSpace, subset: &[usize]) -> Result<Tour> {
    let forest = mst(space, subset)?;
    let sites = forest.sites();
    let index = |s: usize| sites.binary_search(&s).expect("edge endpoint in subset");
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); sites.len()];
    for e in forest.edges() {
        let (a, b) = (index(e.u), index(e.v));
        children[a].push(b);
        children[b].push(a);
    }
    for c in &mut children {
        c.sort_unstable();
    }
    let mut visited = vec![false; sites.len()];
    let mut order = Vec::with_capacity(sites.len());
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if core::mem::replace(&mut visited[v], true) {
            continue;
        }
        order.push(sites[v]);
        stack.extend(children[v].iter().rev().filter(|&&c| !visited[c]));
    }
    Tour::new(space, order)
}

/// First-improvement 2-opt to a local optimum, scanning in index order and
/// stopping after `10 n²` accepted moves.
pub fn refine_2opt(space: &MetricSpace, tour: Tour) -> Tour {
    let n = tour.order.len();
    if n <= 3 {
        return tour;
    }
    let Tour { mut order, length } = tour;
    let tolerance = 1e-12 * if length > 1.0 { length } else { 1.0 };
    let cap = 10 * n * n;
    let mut moves = 0;
    'outer: while moves < cap {
        for i in 0..n - 1 {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (order[i], order[i + 1]);
                let (c, d) = (order[j], order[(j + 1) % n]);
                let delta = space.d(a, c) + space.d(b, d) - space.d(a, b) - space.d(c, d);
                if delta < -tolerance {
                    order[i + 1..=j].reverse();
                    moves += 1;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let length = cycle_length(space, &order);
    Tour { order, length }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn square() -> MetricSpace {
        MetricSpace::from_points(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]])
            .unwrap()
    }

    fn random_points(seed: u64, n: usize) -> MetricSpace {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Vec<f64>> =
            (0..n).map(|_| vec![rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)]).collect();
        MetricSpace::from_points(&pts).unwrap()
    }

    /// Minimum over all cyclic orders fixing the first site.
    fn brute_force_tsp(space: &MetricSpace, sites: &[usize]) -> f64 {
        fn rec(space: &MetricSpace, path: &mut Vec<usize>, rest: &mut Vec<usize>, best: &mut f64) {
            if rest.is_empty() {
                *best = best.min(cycle_length(space, path));
                return;
            }
            for i in 0..rest.len() {
                let s = rest.remove(i);
                path.push(s);
                rec(space, path, rest, best);
                path.pop();
                rest.insert(i, s);
            }
        }
        let mut best = f64::INFINITY;
        rec(space, &mut vec![sites[0]], &mut sites[1..].to_vec(), &mut best);
        best
    }

    fn is_permutation_of(tour: &Tour, subset: &[usize]) -> bool {
        let mut a = tour.order().to_vec();
        let mut b = subset.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    #[test]
    fn exact_square_and_singleton() {
        let sq = square();
        let t = tour_exact(&sq, &[0, 1, 2, 3]).unwrap();
        assert!((t.length() - 4.0).abs() < 1e-12);
        let t = tour_exact(&sq, &[2]).unwrap();
        assert_eq!(t.order(), &[2]);
        assert_eq!(t.length(), 0.0);
        assert_eq!(tour_exact(&sq, &[]).unwrap().length(), 0.0);
    }

    #[test]
    fn exact_matches_permutation_oracle() {
        for seed in 0..5 {
            let m = random_points(seed, 6);
            let all: Vec<usize> = (0..6).collect();
            let t = tour_exact(&m, &all).unwrap();
            assert!(is_permutation_of(&t, &all));
            assert!((t.length() - brute_force_tsp(&m, &all)).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_limit() {
        let m = random_points(1, 15);
        let all: Vec<usize> = (0..15).collect();
        assert!(matches!(tour_exact(&m, &all), Err(Error::LimitExceeded(_))));
        assert!(tour_exact_with_limit(&m, &all[..8], 8).is_ok());
    }

    #[test]
    fn tree_double_bounds() {
        let sq = square();
        let t = tour_tree_double(&sq, &[0, 1, 2, 3]).unwrap();
        assert!(t.length() <= 8.0 + 1e-12);
        let t = tour_tree_double(&sq, &[1, 3]).unwrap();
        assert!((t.length() - 2.0 * sq.d(1, 3)).abs() < 1e-12);
        assert!(tour_tree_double(&sq, &[7]).is_err());

        for seed in 0..10 {
            let m = random_points(100 + seed, 10);
            let all: Vec<usize> = (0..10).collect();
            let approx = tour_tree_double(&m, &all).unwrap();
            let opt = tour_exact(&m, &all).unwrap();
            let tree = mst(&m, &all).unwrap().weight();
            assert!(is_permutation_of(&approx, &all));
            assert!(approx.length() <= 2.0 * opt.length() + 1e-9);
            assert!(approx.length() + 1e-9 >= opt.length());
            assert!(opt.length() + 1e-9 >= tree);
        }
    }

    #[test]
    fn two_opt_uncrosses_square() {
        let sq = square();
        let crossed = Tour::new(&sq, vec![0, 2, 1, 3]).unwrap();
        assert!((crossed.length() - (2.0 + 2.0 * core::f64::consts::SQRT_2)).abs() < 1e-12);
        let t = refine_2opt(&sq, crossed);
        assert!((t.length() - 4.0).abs() < 1e-12);
        assert!(is_permutation_of(&t, &[0, 1, 2, 3]));
        let again = refine_2opt(&sq, t.clone());
        assert_eq!(again.length(), t.length());
    }

    #[test]
    fn two_opt_small_tours_unchanged() {
        let m = random_points(3, 3);
        let t = Tour::new(&m, vec![2, 0, 1]).unwrap();
        assert_eq!(refine_2opt(&m, t.clone()), t);
    }

    #[test]
    fn two_opt_is_locally_minimal() {
        for seed in 0..10 {
            let m = random_points(200 + seed, 12);
            let all: Vec<usize> = (0..12).collect();
            let start = tour_tree_double(&m, &all).unwrap();
            let t = refine_2opt(&m, start.clone());
            assert!(t.length() <= start.length() + 1e-12);
            assert!((t.length() - cycle_length(&m, t.order())).abs() < 1e-9);
            let o = t.order();
            let n = o.len();
            for i in 0..n - 1 {
                for j in (i + 2)..n {
                    if i == 0 && j == n - 1 {
                        continue;
                    }
                    let delta = m.d(o[i], o[j]) + m.d(o[i + 1], o[(j + 1) % n])
                        - m.d(o[i], o[i + 1])
                        - m.d(o[j], o[(j + 1) % n]);
                    assert!(delta >= -1e-9);
                }
            }
        }
    }

    #[test]
    fn gamma_values() {
        assert_eq!(TspAlgorithm::exact().gamma(), 1.0);
        assert_eq!(TspAlgorithm::tree_double().gamma(), 2.0);
        assert_eq!(TspAlgorithm::two_opt().gamma(), 2.0);
    }

    #[test]
    fn tours_respect_diameter_bound() {
        for seed in 0..5 {
            let m = random_points(300 + seed, 7);
            let all: Vec<usize> = (0..7).collect();
            let mut diam: f64 = 0.0;
            for i in 0..7 {
                for j in 0..7 {
                    diam = diam.max(m.d(i, j));
                }
            }
            for alg in [TspAlgorithm::exact(), TspAlgorithm::tree_double(), TspAlgorithm::two_opt()] {
                assert!(alg.tour(&m, &all).unwrap().length() + 1e-9 >= 2.0 * diam);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn exact_is_relabeling_invariant(
                pts in prop::collection::vec((0.0f64..10.0, 0.0f64..10.0), 2..8),
                perm_seed in any::<u64>(),
            ) {
                use rand::{seq::SliceRandom, SeedableRng};
                let pts: Vec<Vec<f64>> = pts.into_iter().map(|(x, y)| vec![x, y]).collect();
                let Ok(m) = MetricSpace::from_points(&pts) else { return Ok(()); };
                let mut perm: Vec<usize> = (0..pts.len()).collect();
                perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
                let shuffled: Vec<Vec<f64>> = perm.iter().map(|&i| pts[i].clone()).collect();
                let m2 = MetricSpace::from_points(&shuffled).unwrap();
                let all: Vec<usize> = (0..pts.len()).collect();
                let a = tour_exact(&m, &all).unwrap().length();
                let b = tour_exact(&m2, &all).unwrap().length();
                prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
            }
        }
    }
}
