//! Multigraph utilities: Eulerization, line graphs, and edge decompositions
//! into 2-paths (plus at most one claw or one leftover edge).

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Odd-vertex count up to which Eulerization pairs odd vertices by an exact
/// subset DP; above it the (identical) tree-parity join is used.
pub const MAX_DP_ODD_VERTICES: usize = 16;

/// Budget for the even-cycle search, in DFS steps.
const CYCLE_SEARCH_BUDGET: usize = 2_000_000;

/// An undirected multigraph. Edge ids are positions in [`MultiGraph::edges`];
/// parallel edges and loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidInput("graph needs at least one vertex".into()));
        }
        if let Some((id, &(u, v))) =
            edges.iter().enumerate().find(|(_, &(u, v))| u >= vertex_count || v >= vertex_count)
        {
            return Err(Error::InvalidInput(format!(
                "edge {id} = ({u}, {v}) has an endpoint outside 0..{vertex_count}"
            )));
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// All vertices lie in one component.
    pub fn is_connected(&self) -> bool {
        let ids: Vec<usize> = (0..self.edges.len()).collect();
        let seen = reach(self, &ids, 0);
        seen.iter().all(|&b| b)
    }

    fn incidence(&self, ids: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &id in ids {
            let (u, v) = self.edges[id];
            adj[u].push((id, v));
            if u != v {
                adj[v].push((id, u));
            }
        }
        adj
    }

    fn shared_vertex(&self, a: usize, b: usize) -> Option<usize> {
        let (a0, a1) = self.edges[a];
        let (b0, b1) = self.edges[b];
        [a0, a1].into_iter().find(|&x| x == b0 || x == b1)
    }
}

/// Vertices reachable from `start` using only edges in `ids`.
fn reach(g: &MultiGraph, ids: &[usize], start: usize) -> Vec<bool> {
    let adj = g.incidence(ids);
    let mut seen = vec![false; g.vertex_count];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &(_, v) in &adj[u] {
            if !core::mem::replace(&mut seen[v], true) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// The edges in `ids` form a single connected piece (isolated vertices ignored).
fn edges_connected(g: &MultiGraph, ids: &[usize]) -> bool {
    let Some(&first) = ids.first() else { return true };
    let seen = reach(g, ids, g.edges[first].0);
    ids.iter().all(|&id| seen[g.edges[id].0])
}

/// A partition of edge ids into 2-paths, plus at most one claw or one
/// leftover edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub two_paths: Vec<(usize, usize)>,
    pub claw: Option<[usize; 3]>,
    pub leftover: Option<usize>,
}

impl Decomposition {
    /// Checks exact cover of `g`'s edges and the shape of every element.
    pub fn check(&self, g: &MultiGraph) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::PreconditionViolated(msg));
        if self.claw.is_some() && self.leftover.is_some() {
            return bad("both a claw and a leftover edge".into());
        }
        let mut count = vec![0usize; g.edge_count()];
        let mut mark = |id: usize| -> Result<()> {
            match count.get_mut(id) {
                Some(c) => {
                    *c += 1;
                    Ok(())
                }
                None => Err(Error::PreconditionViolated(format!("unknown edge id {id}"))),
            }
        };
        for &(a, b) in &self.two_paths {
            mark(a)?;
            mark(b)?;
            if a == b || g.shared_vertex(a, b).is_none() {
                return bad(format!("edges {a} and {b} do not form a 2-path"));
            }
        }
        if let Some(claw) = self.claw {
            for id in claw {
                mark(id)?;
            }
            if claw_center(g, claw).is_none() {
                return bad(format!("edges {claw:?} do not form a claw"));
            }
        }
        if let Some(id) = self.leftover {
            mark(id)?;
        }
        if let Some(id) = count.iter().position(|&c| c != 1) {
            return bad(format!("edge {id} is covered {} times", count[id]));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        2 * self.two_paths.len() + 3 * usize::from(self.claw.is_some()) + usize::from(self.leftover.is_some())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The center of a claw: the only vertex common to all three edges, whose
/// other endpoints are three distinct vertices.
pub fn claw_center(g: &MultiGraph, claw: [usize; 3]) -> Option<usize> {
    let ends = claw.map(|id| g.edges[id]);
    if ends.iter().any(|&(a, b)| a == b) {
        return None;
    }
    let center = [ends[0].0, ends[0].1]
        .into_iter()
        .find(|&c| ends.iter().all(|&(a, b)| a == c || b == c))?;
    let others = ends.map(|(a, b)| if a == center { b } else { a });
    let distinct = others[0] != others[1] && others[0] != others[2] && others[1] != others[2];
    distinct.then_some(center)
}

/// Line graph: one vertex per edge of `g`, two adjacent iff the edges share an
/// endpoint. The result is simple.
pub fn line_graph(g: &MultiGraph) -> MultiGraph {
    let m = g.edge_count();
    let mut edges = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            if g.shared_vertex(a, b).is_some() {
                edges.push((a, b));
            }
        }
    }
    MultiGraph { vertex_count: m.max(1), edges }
}

/// BFS spanning tree over the non-loop edges: parent edge id and depth per vertex.
struct SpanningTree {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl SpanningTree {
    fn bfs(g: &MultiGraph, root: usize) -> Self {
        let ids: Vec<usize> = (0..g.edge_count()).collect();
        let adj = g.incidence(&ids);
        let mut parent = vec![None; g.vertex_count];
        let mut depth = vec![usize::MAX; g.vertex_count];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(id, v) in &adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some((id, u));
                    queue.push_back(v);
                }
            }
        }
        Self { parent, depth }
    }

    #[cfg(test)]
    fn edge_count(&self) -> usize {
        self.parent.iter().flatten().count()
    }

    /// Tree edges on the path between `a` and `b`.
    fn path(&self, mut a: usize, mut b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while a != b {
            let x = if self.depth[a] >= self.depth[b] { &mut a } else { &mut b };
            let (id, up) = self.parent[*x].expect("non-root has a parent");
            out.push(id);
            *x = up;
        }
        out
    }

    fn distance(&self, a: usize, b: usize) -> usize {
        self.path(a, b).len()
    }
}

/// Result of [`eulerize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eulerization {
    /// Ids (in the input graph) of the edges that were duplicated.
    pub duplicated: Vec<usize>,
    /// Input edges followed by one copy of each duplicated edge.
    pub graph: MultiGraph,
}

/// Makes every degree even by duplicating edges along tree paths between a
/// minimum-total-length pairing of the odd vertices.
///
/// At most `E` edges are duplicated; at most `E - 1` when exactly one vertex
/// has degree 1, and at most `E - 2` when none does.
pub fn eulerize(g: &MultiGraph) -> Result<Eulerization> {
    if g.edge_count() == 0 {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let tree = SpanningTree::bfs(g, 0);
    let odd: Vec<usize> = (0..g.vertex_count).filter(|&v| g.degree(v) % 2 == 1).collect();
    let mut duplicated = if odd.len() <= MAX_DP_ODD_VERTICES {
        let pairs = min_pairing(&odd, |a, b| tree.distance(a, b));
        let mut used = vec![false; g.edge_count()];
        let mut dup = Vec::new();
        for (a, b) in pairs {
            for id in tree.path(a, b) {
                assert!(
                    !core::mem::replace(&mut used[id], true),
                    "paths of a minimum pairing are edge-disjoint"
                );
                dup.push(id);
            }
        }
        dup
    } else {
        parity_join(g, &tree, &odd)
    };
    duplicated.sort_unstable();
    let mut edges = g.edges.clone();
    edges.extend(duplicated.iter().map(|&id| g.edges[id]));
    Ok(Eulerization { duplicated, graph: MultiGraph { vertex_count: g.vertex_count, edges } })
}

/// Minimum-weight perfect matching of `items` by DP over subsets.
fn min_pairing(items: &[usize], weight: impl Fn(usize, usize) -> usize) -> Vec<(usize, usize)> {
    let m = items.len();
    if m == 0 {
        return Vec::new();
    }
    let full = (1usize << m) - 1;
    let mut cost = vec![usize::MAX; 1 << m];
    let mut choice = vec![(0usize, 0usize); 1 << m];
    cost[0] = 0;
    for mask in 0..full {
        if cost[mask] == usize::MAX {
            continue;
        }
        let i = (!mask).trailing_zeros() as usize;
        for j in (i + 1)..m {
            if mask & (1 << j) != 0 {
                continue;
            }
            let next = mask | (1 << i) | (1 << j);
            let c = cost[mask] + weight(items[i], items[j]);
            if c < cost[next] {
                cost[next] = c;
                choice[next] = (i, j);
            }
        }
    }
    let mut pairs = Vec::with_capacity(m / 2);
    let mut mask = full;
    while mask != 0 {
        let (i, j) = choice[mask];
        pairs.push((items[i], items[j]));
        mask &= !((1 << i) | (1 << j));
    }
    pairs.reverse();
    pairs
}

/// Tree edges whose lower side holds an odd number of `odd` vertices.
fn parity_join(g: &MultiGraph, tree: &SpanningTree, odd: &[usize]) -> Vec<usize> {
    let mut parity = vec![false; g.vertex_count];
    for &v in odd {
        parity[v] = true;
    }
    let mut order: Vec<usize> = (0..g.vertex_count).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(tree.depth[v]));
    let mut out = Vec::new();
    for v in order {
        if let Some((id, up)) = tree.parent[v] {
            if parity[v] {
                out.push(id);
                parity[up] = !parity[up];
            }
        }
    }
    out
}

/// Peels 2-paths off the connected edge set `ids` following the BFS-tree
/// induction rooted at `anchor`. With an odd edge count the single remaining
/// edge is incident to `anchor`.
fn peel(g: &MultiGraph, ids: &[usize], anchor: usize) -> Result<Decomposition> {
    let mut active: Vec<usize> = ids.to_vec();
    let mut out = Decomposition::default();
    loop {
        match active.len() {
            0 => return Ok(out),
            1 => {
                let (a, b) = g.edges[active[0]];
                if a != anchor && b != anchor {
                    return Err(Error::PreconditionViolated(format!(
                        "last edge {} is not incident to anchor {anchor}",
                        active[0]
                    )));
                }
                out.leftover = Some(active[0]);
                return Ok(out);
            }
            _ => {}
        }
        let (e1, e2) = next_two_path(g, &active, anchor)?;
        out.two_paths.push((e1, e2));
        active.retain(|&id| id != e1 && id != e2);
    }
}

fn next_two_path(g: &MultiGraph, active: &[usize], anchor: usize) -> Result<(usize, usize)> {
    let n = g.vertex_count;
    let adj = g.incidence(active);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut children: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut is_tree = vec![false; g.edge_count()];
    depth[anchor] = 0;
    let mut queue = VecDeque::from([anchor]);
    while let Some(u) = queue.pop_front() {
        for &(id, v) in &adj[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = Some((id, u));
                children[u].push((id, v));
                is_tree[id] = true;
                queue.push_back(v);
            }
        }
    }
    if active.iter().any(|&id| depth[g.edges[id].0] == usize::MAX) {
        return Err(Error::PreconditionViolated(format!(
            "remaining edges are not connected to anchor {anchor}"
        )));
    }
    let mut non_tree: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &id in active {
        if !is_tree[id] {
            let (a, b) = g.edges[id];
            non_tree[a].push(id);
            if a != b {
                non_tree[b].push(id);
            }
        }
    }
    // two non-tree edges at one vertex: removing them keeps the tree intact
    if let Some(v) = (0..n).find(|&v| non_tree[v].len() >= 2) {
        return Ok((non_tree[v][0], non_tree[v][1]));
    }
    let u = (0..n)
        .filter(|&v| v != anchor && depth[v] != usize::MAX && children[v].is_empty())
        .max_by_key(|&v| (depth[v], core::cmp::Reverse(v)))
        .ok_or_else(|| Error::PreconditionViolated("no leaf to peel".into()))?;
    let (e1, w) = parent[u].expect("leaf below the anchor has a parent");
    // (i) the leaf carries a non-tree edge
    if let Some(&e2) = non_tree[u].first() {
        return Ok((e1, e2));
    }
    // (ii) its parent carries one
    if let Some(&e2) = non_tree[w].first() {
        return Ok((e1, e2));
    }
    // (iii) pair with a sibling edge, or with the parent's own tree edge
    if let Some(&(e2, _)) = children[w].iter().find(|&&(id, _)| id != e1) {
        return Ok((e1, e2));
    }
    match parent[w] {
        Some((e2, _)) => Ok((e1, e2)),
        None => Err(Error::PreconditionViolated("single edge left at the anchor".into())),
    }
}

fn check_decomposable(g: &MultiGraph) -> Result<()> {
    if g.has_loops() {
        return Err(Error::InvalidInput("loops are not supported in 2-path decompositions".into()));
    }
    Ok(())
}

/// Splits the edges of a connected graph with an even edge count into 2-paths.
pub fn decompose_even(g: &MultiGraph) -> Result<Decomposition> {
    check_decomposable(g)?;
    if g.edge_count() % 2 != 0 {
        return Err(Error::InvalidInput(format!("edge count {} is odd", g.edge_count())));
    }
    if !g.is_connected() {
        return Err(Error::InvalidInput("graph is not connected".into()));
    }
    let ids: Vec<usize> = (0..g.edge_count()).collect();
    let anchor = g.edges.first().map_or(0, |e| e.0);
    peel(g, &ids, anchor)
}

/// Splits the edges of a connected graph with an odd edge count into 2-paths
/// plus one edge incident to `anchor`.
pub fn decompose_odd_anchored(g: &MultiGraph, anchor: usize) -> Result<Decomposition> {
    check_decomposable(g)?;
    if g.edge_count() % 2 == 0 {
        return Err(Error::InvalidInput(format!("edge count {} is even", g.edge_count())));
    }
    if anchor >= g.vertex_count {
        return Err(Error::InvalidInput(format!("anchor {anchor} is not a vertex")));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let ids: Vec<usize> = (0..g.edge_count()).collect();
    peel(g, &ids, anchor)
}

/// Simple cycles of even length ≥ 4, as edge-id lists in traversal order,
/// found by DFS from each start vertex through higher-numbered vertices.
pub fn even_cycles(g: &MultiGraph, limit: usize) -> Vec<Vec<usize>> {
    struct Search<'a> {
        adj: &'a [Vec<(usize, usize)>],
        start: usize,
        on_path: Vec<bool>,
        path: Vec<usize>,
        found: Vec<Vec<usize>>,
        limit: usize,
        budget: usize,
    }
    impl Search<'_> {
        fn dfs(&mut self, u: usize) {
            let adj = self.adj;
            for &(id, v) in &adj[u] {
                if self.found.len() >= self.limit || self.budget == 0 {
                    return;
                }
                self.budget -= 1;
                if self.path.last() == Some(&id) {
                    continue;
                }
                if v == self.start {
                    let len = self.path.len() + 1;
                    if len >= 4 && len % 2 == 0 && !self.path.contains(&id) {
                        let mut cycle = self.path.clone();
                        cycle.push(id);
                        self.found.push(cycle);
                    }
                } else if v > self.start && !self.on_path[v] {
                    self.on_path[v] = true;
                    self.path.push(id);
                    self.dfs(v);
                    self.path.pop();
                    self.on_path[v] = false;
                }
            }
        }
    }
    let ids: Vec<usize> = (0..g.edge_count()).filter(|&id| g.edges[id].0 != g.edges[id].1).collect();
    let adj = g.incidence(&ids);
    let mut search = Search {
        adj: &adj,
        start: 0,
        on_path: vec![false; g.vertex_count],
        path: Vec::new(),
        found: Vec::new(),
        limit,
        budget: CYCLE_SEARCH_BUDGET,
    };
    for s in 0..g.vertex_count {
        search.start = s;
        search.on_path[s] = true;
        search.dfs(s);
        search.on_path[s] = false;
        if search.found.len() >= limit || search.budget == 0 {
            break;
        }
    }
    search.found
}

/// Splits a connected graph containing an even cycle into 2-paths, or into
/// 2-paths and one claw when the edge count is odd.
pub fn decompose_with_claw(g: &MultiGraph) -> Result<Decomposition> {
    check_decomposable(g)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let cycles = even_cycles(g, 64);
    if cycles.is_empty() {
        return Err(Error::PreconditionViolated("graph contains no even cycle".into()));
    }
    if g.edge_count() % 2 == 0 {
        return decompose_even(g);
    }
    for cycle in &cycles {
        if let Some(d) = claw_split(g, cycle)? {
            return Ok(d);
        }
    }
    Err(Error::PreconditionViolated(
        "no even cycle admits a claw with three distinct leaves".into(),
    ))
}

/// Tries every odd component of `g` minus `cycle` and every attachment vertex.
fn claw_split(g: &MultiGraph, cycle: &[usize]) -> Result<Option<Decomposition>> {
    let mut in_cycle = vec![false; g.edge_count()];
    for &id in cycle {
        in_cycle[id] = true;
    }
    let rest: Vec<usize> = (0..g.edge_count()).filter(|&id| !in_cycle[id]).collect();
    let on_cycle = |v: usize| cycle.iter().any(|&id| g.edges[id].0 == v || g.edges[id].1 == v);

    // components of the remaining edges
    let mut assigned = vec![false; g.edge_count()];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &id in &rest {
        if assigned[id] {
            continue;
        }
        let seen = reach(g, &rest, g.edges[id].0);
        let comp: Vec<usize> = rest.iter().copied().filter(|&e| seen[g.edges[e].0]).collect();
        for &e in &comp {
            assigned[e] = true;
        }
        components.push(comp);
    }

    for comp in components.iter().filter(|c| c.len() % 2 == 1) {
        let mut anchors: Vec<usize> =
            comp.iter().flat_map(|&id| [g.edges[id].0, g.edges[id].1]).filter(|&v| on_cycle(v)).collect();
        anchors.sort_unstable();
        anchors.dedup();
        for v in anchors {
            let mut inner = peel(g, comp, v)?;
            let e = inner.leftover.take().expect("odd component leaves one edge");
            let at_v: Vec<usize> = cycle
                .iter()
                .copied()
                .filter(|&id| g.edges[id].0 == v || g.edges[id].1 == v)
                .collect();
            let claw = [e, at_v[0], at_v[1]];
            if claw_center(g, claw) != Some(v) {
                continue;
            }
            let remainder: Vec<usize> = (0..g.edge_count())
                .filter(|id| !claw.contains(id) && !comp.contains(id))
                .collect();
            debug_assert!(edges_connected(g, &remainder));
            let anchor = remainder.first().map_or(v, |&id| g.edges[id].0);
            let outer = peel(g, &remainder, anchor)?;
            inner.two_paths.extend(outer.two_paths);
            inner.claw = Some(claw);
            return Ok(Some(inner));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
        MultiGraph::new(n, edges.to_vec()).unwrap()
    }

    fn is_eulerian(g: &MultiGraph) -> bool {
        (0..g.vertex_count()).all(|v| g.degree(v) % 2 == 0)
    }

    #[test]
    fn eulerize_examples() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        let e = eulerize(&path).unwrap();
        assert_eq!(e.duplicated, vec![0, 1]);
        assert!(is_eulerian(&e.graph));

        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let e = eulerize(&c4).unwrap();
        assert!(e.duplicated.is_empty());
        assert_eq!(e.graph, c4);

        let pendant = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let e = eulerize(&pendant).unwrap();
        assert!(is_eulerian(&e.graph));
        assert!(e.duplicated.len() <= 3);
        assert!(e.graph.is_connected());
    }

    #[test]
    fn eulerize_errors() {
        assert_eq!(eulerize(&graph(4, &[(0, 1), (2, 3)])), Err(Error::NotConnected));
        assert!(matches!(eulerize(&graph(1, &[])), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn eulerize_with_loops_and_parallels() {
        let g = graph(3, &[(0, 0), (0, 1), (0, 1), (1, 2)]);
        let e = eulerize(&g).unwrap();
        assert!(is_eulerian(&e.graph));
    }

    #[test]
    fn dp_pairing_equals_parity_join() {
        let g = graph(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6), (6, 0), (2, 4)]);
        let tree = SpanningTree::bfs(&g, 0);
        let odd: Vec<usize> = (0..7).filter(|&v| g.degree(v) % 2 == 1).collect();
        let mut a = parity_join(&g, &tree, &odd);
        a.sort_unstable();
        assert_eq!(eulerize(&g).unwrap().duplicated, a);
        assert!(tree.edge_count() == 6);
    }

    #[test]
    fn line_graph_examples() {
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(line_graph(&tri).edges(), &[(0, 1), (0, 2), (1, 2)]);

        let claw = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let l = line_graph(&claw);
        assert_eq!(l.vertex_count(), 3);
        assert_eq!(l.edges(), &[(0, 1), (0, 2), (1, 2)]);

        let p3 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(line_graph(&p3).edges(), &[(0, 1), (1, 2)]);

        let parallel = graph(2, &[(0, 1), (0, 1)]);
        assert_eq!(line_graph(&parallel).edges(), &[(0, 1)]);
    }

    #[test]
    fn even_examples() {
        let p4 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let d = decompose_even(&p4).unwrap();
        d.check(&p4).unwrap();
        assert_eq!(d.two_paths.len(), 2);

        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let d = decompose_even(&c4).unwrap();
        d.check(&c4).unwrap();
        assert_eq!(d.two_paths.len(), 2);

        let bowtie = graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let d = decompose_even(&bowtie).unwrap();
        d.check(&bowtie).unwrap();
        assert_eq!(d.two_paths.len(), 3);

        assert!(matches!(decompose_even(&graph(3, &[(0, 1), (1, 2), (2, 0)])), Err(Error::InvalidInput(_))));
        assert!(matches!(decompose_even(&graph(4, &[(0, 1), (2, 3)])), Err(Error::InvalidInput(_))));
        assert!(matches!(decompose_even(&graph(2, &[(0, 0), (0, 1)])), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn odd_anchored_examples() {
        let edge = graph(2, &[(0, 1)]);
        let d = decompose_odd_anchored(&edge, 1).unwrap();
        assert_eq!(d.leftover, Some(0));
        assert!(d.two_paths.is_empty());

        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        for v in 0..3 {
            let d = decompose_odd_anchored(&tri, v).unwrap();
            d.check(&tri).unwrap();
            assert_eq!(d.two_paths.len(), 1);
            let (a, b) = tri.edges()[d.leftover.unwrap()];
            assert!(a == v || b == v);
        }

        let star = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let d = decompose_odd_anchored(&star, 0).unwrap();
        d.check(&star).unwrap();
        assert_eq!(d.two_paths.len(), 2);
        assert!(d.leftover.is_some());

        assert!(matches!(decompose_odd_anchored(&graph(3, &[(0, 1), (1, 2)]), 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn claw_examples() {
        // 4-cycle 0-1-2-3 with pendant 0-4
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
        let d = decompose_with_claw(&g).unwrap();
        d.check(&g).unwrap();
        let claw = d.claw.unwrap();
        assert_eq!(claw_center(&g, claw), Some(0));
        assert_eq!(d.two_paths.len(), 1);
        let mut rest = [d.two_paths[0].0, d.two_paths[0].1];
        rest.sort_unstable();
        assert_eq!(rest, [1, 2]);

        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let d = decompose_with_claw(&c4).unwrap();
        assert!(d.claw.is_none());
        assert_eq!(d.two_paths.len(), 2);

        // 6-cycle plus pendant 2-path 0-6-7
        let g = graph(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 7)]);
        let d = decompose_with_claw(&g).unwrap();
        d.check(&g).unwrap();
        assert_eq!(d.two_paths.len(), 4);
        assert!(d.claw.is_none());
    }

    #[test]
    fn claw_errors() {
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(decompose_with_claw(&tri), Err(Error::PreconditionViolated(_))));
        assert_eq!(decompose_with_claw(&graph(4, &[(0, 1), (2, 3)])), Err(Error::NotConnected));
    }

    #[test]
    fn diamond_has_even_cycle() {
        // two triangles sharing edge (1,2): only the outer 4-cycle is even
        let g = graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let cycles = even_cycles(&g, 8);
        assert!(!cycles.is_empty());
        assert!(cycles.iter().all(|c| c.len() == 4));
        let d = decompose_with_claw(&g).unwrap();
        d.check(&g).unwrap();
        assert!(d.claw.is_some());
    }

    #[test]
    fn check_rejects_malformed() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let d = Decomposition { two_paths: vec![(0, 1)], ..Default::default() };
        assert!(d.check(&g).is_err());
        let g = graph(3, &[(0, 1), (1, 2)]);
        let d = Decomposition { leftover: Some(0), ..Default::default() };
        assert!(d.check(&g).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Random connected multigraph: a random tree plus extra random edges.
        fn connected(max_v: usize, max_e: usize) -> impl Strategy<Value = MultiGraph> {
            (2..=max_v).prop_flat_map(move |n| {
                let tree = prop::collection::vec(any::<prop::sample::Index>(), n - 1);
                let extra = prop::collection::vec((0..n, 0..n), 0..=(max_e + 1 - n));
                (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
                    let mut edges: Vec<(usize, usize)> =
                        tree.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect();
                    edges.extend(extra.into_iter().filter(|(a, b)| a != b));
                    MultiGraph::new(n, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn every_connected_graph_decomposes(g in connected(8, 12), anchor in any::<prop::sample::Index>()) {
                if g.edge_count() % 2 == 0 {
                    decompose_even(&g).unwrap().check(&g).unwrap();
                } else {
                    let v = anchor.index(g.vertex_count());
                    let d = decompose_odd_anchored(&g, v).unwrap();
                    d.check(&g).unwrap();
                    let (a, b) = g.edges()[d.leftover.unwrap()];
                    prop_assert!(a == v || b == v);
                }
                // claws are only guaranteed on simple graphs
                let mut simple = g.edges().to_vec();
                for e in &mut simple { *e = (e.0.min(e.1), e.0.max(e.1)); }
                simple.sort_unstable();
                simple.dedup();
                let g = MultiGraph::new(g.vertex_count(), simple).unwrap();
                if !even_cycles(&g, 1).is_empty() {
                    decompose_with_claw(&g).and_then(|d| d.check(&g)).unwrap();
                }
            }

            #[test]
            fn line_graph_degree_identity(g in connected(7, 10)) {
                let mut simple = g.edges().to_vec();
                for e in &mut simple { *e = (e.0.min(e.1), e.0.max(e.1)); }
                simple.sort_unstable();
                simple.dedup();
                let g = MultiGraph::new(g.vertex_count(), simple).unwrap();
                let l = line_graph(&g);
                for (id, &(u, v)) in g.edges().iter().enumerate() {
                    prop_assert_eq!(l.degree(id), g.degree(u) + g.degree(v) - 2);
                }
            }
        }
    }
}
