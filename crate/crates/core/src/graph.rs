//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    /// Builds a set from arbitrary ids, sorting and removing duplicates.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Members of a bitmask, for graphs with at most 64 vertices.
    pub fn from_mask(mask: u64) -> Self {
        VertexSet(BitIter(mask).collect())
    }

    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.iter().chain(other.iter()))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.iter().any(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::from_vertices(v)
    }
}

/// Iterates the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// A simple undirected graph. Neighbour lists are kept sorted so that two
/// graphs with the same edge set compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::Domain(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Domain(format!("duplicate edge {u} {}", w[0])));
            }
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    /// Builds a graph, silently dropping self-loops and merging parallel edges.
    pub fn from_edges_lossy<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Graph { adj, m: m / 2 }
    }

    /// Builds a graph from per-vertex bitmasks (n <= 64). The masks must be symmetric.
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        let edges = (0..n).flat_map(|u| BitIter(masks[u]).filter(move |&v| v > u).map(move |v| (u, v)));
        Graph::from_edges_lossy(n, edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `2m / n`, or 0 for the null graph.
    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n() as f64
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        check_vertex(v, self.n())
    }

    /// Per-vertex neighbour bitmasks, available when `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect(),
        )
    }

    /// The subgraph induced by `vertices` (relabelled `0..k` in the given order)
    /// together with the map from new ids back to ids of `self`.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, m }, vertices.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(VertexSet::from_vertices(comp));
        }
        out
    }

    /// True for graphs with exactly one component (the null graph is not connected).
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Some cycle of the graph as a vertex sequence `c_0, ..., c_{k-1}` with
    /// `c_i c_{i+1}` and `c_{k-1} c_0` edges, or `None` for a forest.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        find_cycle_in(self, |_| true)
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}

/// Finds a cycle in the subgraph induced by vertices accepted by `keep`.
pub(crate) fn find_cycle_in(g: &Graph, keep: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for s in 0..n {
        if !keep(s) || depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        // iterative DFS with explicit neighbour cursor
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
            if *cursor >= g.adj[v].len() {
                stack.pop();
                continue;
            }
            let w = g.adj[v][*cursor];
            *cursor += 1;
            if !keep(w) || w == parent[v] {
                continue;
            }
            if depth[w] == usize::MAX {
                parent[w] = v;
                depth[w] = depth[v] + 1;
                stack.push((w, 0));
            } else if depth[w] < depth[v] {
                // back edge v -> ancestor w
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                cycle.reverse();
                return Some(cycle);
            }
        }
    }
    None
}

/// `N_G(S)`: vertices outside `s` with a neighbour in `s`.
pub fn neighbourhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    if s.is_empty() {
        return Err(Error::Domain("neighbourhood of the empty set".into()));
    }
    let mut mark = vec![false; g.n()];
    for v in s.iter() {
        g.check_vertex(v)?;
        mark[v] = true;
    }
    let mut out = Vec::new();
    let mut seen = mark.clone();
    for v in s.iter() {
        for &w in g.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                out.push(w);
            }
        }
    }
    Ok(VertexSet::from_vertices(out))
}

/// Whether `s` is non-empty and induces a connected subgraph.
pub fn is_connected_set(g: &Graph, s: &VertexSet) -> bool {
    let Some(start) = s.first() else {
        return false;
    };
    if s.iter().any(|v| v >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut count = 1;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbours(v) {
            if !seen[w] && s.contains(w) {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == s.len()
}

/// Result of contracting one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Graph,
    /// `map[old] = new`; both endpoints of the contracted edge map to `merged`.
    pub map: Vec<usize>,
    pub merged: usize,
}

/// Contracts the edge `uw`. The merged vertex keeps the smaller endpoint's
/// position; ids above the larger endpoint shift down by one.
pub fn contract_edge(g: &Graph, u: usize, w: usize) -> Result<Contraction> {
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    if !g.has_edge(u, w) {
        return Err(Error::Domain(format!("{u}{w} is not an edge")));
    }
    let (keep, drop) = (u.min(w), u.max(w));
    let map: Vec<usize> = (0..g.n())
        .map(|v| match v.cmp(&drop) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        })
        .collect();
    let edges = g.edges().map(|(a, b)| (map[a], map[b]));
    let graph = Graph::from_edges_lossy(g.n() - 1, edges);
    Ok(Contraction {
        graph,
        map,
        merged: keep,
    })
}

/// Replaces every edge by a path with `times` internal vertices. New vertices
/// are numbered from `n` upwards, edge by edge in lexicographic edge order.
pub fn subdivide(g: &Graph, times: usize) -> Graph {
    let mut next = g.n();
    let mut edges = Vec::with_capacity(g.m() * (times + 1));
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..times {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges_lossy(next, edges)
}

/// Distance layers from `root`: layer `i` holds vertices at distance exactly `i`.
pub fn bfs_layers(g: &Graph, root: usize) -> Result<Vec<VertexSet>> {
    g.check_vertex(root)?;
    let dist = bfs_distances(g, &[root]);
    let depth = dist.iter().filter_map(|d| *d).max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = d {
            layers[*d].push(v);
        }
    }
    Ok(layers.into_iter().map(VertexSet::from_vertices).collect())
}

/// Multi-source BFS distances; `None` for unreachable vertices.
pub fn bfs_distances(g: &Graph, sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap_or(0);
        for &w in g.neighbours(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Whether `s` is dominating: every vertex outside `s` has a neighbour in it.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    let mut covered = vec![false; g.n()];
    for v in s.iter() {
        covered[v] = true;
        for &w in g.neighbours(v) {
            covered[w] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Whether no two members of `s` are adjacent.
pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.neighbours(v).iter().all(|&w| !s.contains(w)))
}
