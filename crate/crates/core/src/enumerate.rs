//! Isomorphism classes of small graphs, for exhaustive checks.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by adding a vertex
//! with every possible neighbourhood and deduplicated by a canonical code: the
//! smallest edge bitstring over all relabellings that list vertices by
//! non-increasing degree.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order supported; the canonical code fits in a `u32` up to 8.
pub const MAX_ENUMERATION_ORDER: usize = 8;

fn pair_index(i: usize, j: usize) -> usize {
    // position of (i, j), i < j, in the order (0,1), (0,2), (1,2), (0,3), ...
    j * (j - 1) / 2 + i
}

fn canonical_code(masks: &[u8]) -> u32 {
    let n = masks.len();
    let deg: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let slot_degree: Vec<u32> = by_degree.iter().map(|&v| deg[v]).collect();

    let mut best = u32::MAX;
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u8;
    search(masks, &deg, &slot_degree, &mut perm, &mut used, 0, &mut best);
    best
}

fn search(
    masks: &[u8],
    deg: &[u32],
    slot_degree: &[u32],
    perm: &mut Vec<usize>,
    used: &mut u8,
    code: u32,
    best: &mut u32,
) {
    let n = masks.len();
    let k = perm.len();
    if k == n {
        *best = (*best).min(code);
        return;
    }
    for v in 0..n {
        if *used >> v & 1 == 1 || deg[v] != slot_degree[k] {
            continue;
        }
        let mut c = code;
        for (i, &u) in perm.iter().enumerate() {
            if masks[u] >> v & 1 == 1 {
                c |= 1 << pair_index(i, k);
            }
        }
        perm.push(v);
        *used |= 1 << v;
        search(masks, deg, slot_degree, perm, used, c, best);
        *used &= !(1 << v);
        perm.pop();
    }
}

fn code_to_graph(n: usize, code: u32) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if code >> pair_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

fn codes_by_order(max_n: usize) -> Result<Vec<Vec<u32>>> {
    if max_n > MAX_ENUMERATION_ORDER {
        return Err(Error::Domain(format!(
            "enumeration is limited to {MAX_ENUMERATION_ORDER} vertices, got {max_n}"
        )));
    }
    let mut levels: Vec<Vec<u32>> = vec![vec![0]];
    for n in 1..=max_n {
        let mut next = BTreeSet::new();
        for &code in &levels[n - 1] {
            let base = n - 1;
            let mut masks = vec![0u8; n];
            for j in 1..base {
                for i in 0..j {
                    if code >> pair_index(i, j) & 1 == 1 {
                        masks[i] |= 1 << j;
                        masks[j] |= 1 << i;
                    }
                }
            }
            for nbrs in 0..(1u16 << base) {
                let nbrs = nbrs as u8;
                let mut m = masks.clone();
                m[base] = nbrs;
                for i in 0..base {
                    if nbrs >> i & 1 == 1 {
                        m[i] |= 1 << base;
                    }
                }
                next.insert(canonical_code(&m));
            }
        }
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

/// One representative per isomorphism class of graphs on exactly `n` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    let levels = codes_by_order(n)?;
    Ok(levels[n].iter().map(|&c| code_to_graph(n, c)).collect())
}

/// Connected representatives on `1..=max_n` vertices, ordered by size then code.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let levels = codes_by_order(max_n)?;
    Ok((1..=max_n)
        .flat_map(|n| levels[n].iter().map(move |&c| code_to_graph(n, c)))
        .filter(Graph::is_connected)
        .collect())
}

/// All representatives on `1..=max_n` vertices.
pub fn graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let levels = codes_by_order(max_n)?;
    Ok((1..=max_n)
        .flat_map(|n| levels[n].iter().map(move |&c| code_to_graph(n, c)))
        .collect())
}
