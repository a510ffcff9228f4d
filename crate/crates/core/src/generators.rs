//! Named graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{subdivide, Graph};

pub fn complete(n: usize) -> Graph {
    Graph::from_edges_lossy(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Cycle `0-1-...-(n-1)-0`; for `n < 3` this degenerates to a path.
pub fn cycle(n: usize) -> Graph {
    let closing = (n >= 3).then_some((n - 1, 0));
    Graph::from_edges_lossy(n, (0..n.saturating_sub(1)).map(|v| (v, v + 1)).chain(closing))
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges_lossy(n, (0..n.saturating_sub(1)).map(|v| (v, v + 1)))
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Graph {
    Graph::from_edges_lossy(k + 1, (1..=k).map(|v| (0, v)))
}

/// The Petersen graph, labelled as in networkx: outer 5-cycle `0..5`,
/// spokes `i - i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges_lossy(10, outer.chain(spokes).chain(inner))
}

/// Complete multipartite graph with the given part sizes, parts numbered consecutively.
pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    let mut part = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let n = part.len();
    let part = &part;
    Graph::from_edges_lossy(
        n,
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| part[u] != part[v]).map(move |v| (u, v))),
    )
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

/// Wheel: hub 0 joined to the cycle on `1..=k`.
pub fn wheel(k: usize) -> Graph {
    let rim = (0..k).map(|i| (1 + i, 1 + (i + 1) % k));
    Graph::from_edges_lossy(k + 1, (1..=k).map(|v| (0, v)).chain(rim))
}

/// `K_n` with every edge subdivided `times` times.
pub fn subdivided_complete(n: usize, times: usize) -> Graph {
    subdivide(&complete(n), times)
}

/// Disjoint union, second graph relabelled after the first.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    Graph::from_edges_lossy(
        a.n() + b.n(),
        a.edges().chain(b.edges().map(|(u, v)| (u + off, v + off))),
    )
}

/// `G(n, p)`: one uniform draw per pair `(u, v)`, `u < v`, in lexicographic order.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

/// Uniform graph with exactly `m` edges.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(m <= pairs.len(), "m = {m} exceeds C({n}, 2)");
    let (chosen, _) = pairs.partial_shuffle(rng, m);
    Graph::from_edges_lossy(n, chosen.iter().copied())
}

/// Adds random edges at vertices of degree below `k` until the minimum degree is at least `k`.
pub fn raise_min_degree<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Graph {
    let n = g.n();
    assert!(n > k, "cannot reach minimum degree {k} on {n} vertices");
    let mut adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    for u in 0..n {
        while deg[u] < k {
            let candidates: Vec<usize> = (0..n).filter(|&v| v != u && !adj[u][v]).collect();
            let &v = candidates
                .choose(rng)
                .expect("a non-neighbour exists while deg < n - 1");
            adj[u][v] = true;
            adj[v][u] = true;
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    Graph::from_edges_lossy(
        n,
        (0..n).flat_map(|u| {
            let row = &adj[u];
            (u + 1..n).filter(move |&v| row[v]).map(move |v| (u, v))
        }),
    )
}

/// Random maximal planar graph built by repeatedly inserting a vertex into a
/// random triangular face (an Apollonian network). Has `3n - 6` edges for `n >= 3`.
pub fn random_apollonian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    Graph::from_edges_lossy(n, edges)
}

/// Random `d`-regular graph by the Steger-Wormald pairing procedure: points are
/// paired one edge at a time, only accepting pairs that keep the graph simple,
/// restarting when no such pair is left.
pub fn random_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::Precondition(format!(
            "no {d}-regular graph on {n} vertices (need d < n and nd even)"
        )));
    }
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    const MAX_RESTARTS: usize = 1000;
    for _ in 0..MAX_RESTARTS {
        if let Some(g) = try_pairing(n, d, rng) {
            return Ok(g);
        }
    }
    Err(Error::Internal(format!(
        "pairing failed {MAX_RESTARTS} times for n = {n}, d = {d}"
    )))
}

fn try_pairing<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Option<Graph> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::with_capacity(n * d / 2);
    while !points.is_empty() {
        let mut tries = 0;
        loop {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            let (u, v) = (points[i], points[j]);
            if i != j && u != v && !adj[u][v] {
                adj[u][v] = true;
                adj[v][u] = true;
                edges.push((u, v));
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                break;
            }
            tries += 1;
            if tries > 64 && !has_suitable_pair(&points, &adj) {
                return None;
            }
        }
    }
    Some(Graph::from_edges_lossy(n, edges))
}

fn has_suitable_pair(points: &[usize], adj: &[Vec<bool>]) -> bool {
    points
        .iter()
        .enumerate()
        .any(|(i, &u)| points[i + 1..].iter().any(|&v| u != v && !adj[u][v]))
}
