//! Vertex colourings and the greedy/degeneracy helpers shared by the constructions.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// A vertex colouring with colours `0..palette_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Colouring {
    pub colours: Vec<usize>,
    pub palette_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColouringViolation {
    WrongLength { expected: usize, found: usize },
    OutOfPalette { vertex: usize, colour: usize },
    Monochromatic { u: usize, v: usize, colour: usize },
}

impl Colouring {
    /// Wraps a colour vector; the palette is `max + 1` (0 for the null graph).
    pub fn from_colours(colours: Vec<usize>) -> Self {
        let palette_size = colours.iter().max().map_or(0, |&c| c + 1);
        Colouring { colours, palette_size }
    }

    /// Number of distinct colours actually used.
    pub fn used_colours(&self) -> usize {
        let mut seen = vec![false; self.palette_size];
        for &c in &self.colours {
            if c < seen.len() {
                seen[c] = true;
            }
        }
        seen.into_iter().filter(|&b| b).count()
    }

    pub fn check(&self, g: &Graph) -> Result<(), ColouringViolation> {
        if self.colours.len() != g.n() {
            return Err(ColouringViolation::WrongLength {
                expected: g.n(),
                found: self.colours.len(),
            });
        }
        for (v, &c) in self.colours.iter().enumerate() {
            if c >= self.palette_size {
                return Err(ColouringViolation::OutOfPalette { vertex: v, colour: c });
            }
        }
        for (u, v) in g.edges() {
            if self.colours[u] == self.colours[v] {
                return Err(ColouringViolation::Monochromatic {
                    u,
                    v,
                    colour: self.colours[u],
                });
            }
        }
        Ok(())
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.check(g).is_ok()
    }

    /// Colour classes `0..palette_size` (possibly empty).
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut classes = vec![Vec::new(); self.palette_size];
        for (v, &c) in self.colours.iter().enumerate() {
            classes[c].push(v);
        }
        classes.into_iter().map(VertexSet::from_vertices).collect()
    }
}

/// Greedy colouring in the given vertex order (smallest free colour).
pub fn greedy_colouring(g: &Graph, order: &[usize]) -> Colouring {
    let n = g.n();
    let mut colours = vec![usize::MAX; n];
    let mut taken: Vec<usize> = Vec::new();
    for (stamp, &v) in order.iter().enumerate() {
        for &w in g.neighbours(v) {
            let c = colours[w];
            if c != usize::MAX {
                if c >= taken.len() {
                    taken.resize(c + 1, usize::MAX);
                }
                taken[c] = stamp;
            }
        }
        colours[v] = (0..)
            .find(|&c| c >= taken.len() || taken[c] != stamp)
            .expect("unbounded");
    }
    Colouring::from_colours(colours)
}

/// Smallest-last ordering: repeatedly remove a minimum-degree vertex (smallest
/// id on ties). Returns the removal order and the degeneracy.
pub fn degeneracy_order(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    let mut low = 0;
    for _ in 0..n {
        low = low.min(maxd);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = *buckets[low].iter().next().expect("non-empty bucket");
        buckets[low].remove(&v);
        removed[v] = true;
        degeneracy = degeneracy.max(low);
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
        low = low.saturating_sub(1);
    }
    (order, degeneracy)
}

/// Greedy colouring in reverse smallest-last order; uses at most degeneracy + 1 colours.
pub fn degeneracy_colouring(g: &Graph) -> Colouring {
    let (mut order, _) = degeneracy_order(g);
    order.reverse();
    greedy_colouring(g, &order)
}
