//! Exact computation of the dominating Hadwiger number on small graphs.
//!
//! `domhad(G[S])` satisfies the recursion
//!
//! ```text
//! domhad(G[S]) = 1 + max { domhad(G[N_S(T)]) : T ⊆ S non-empty, connected }
//! ```
//!
//! with `domhad(empty) = 0`. Base cases short-circuit the search: an edgeless
//! set has value 1, a forest with an edge has value 2, and any cycle gives at
//! least 3 (the model `(C - x - y, {x}, {y})` for an edge `xy` of a cycle `C`),
//! so the last two parts of every certificate are singletons. The value is
//! also capped by `|S|` and by `Δ(G[S]) + 1`.
//!
//! Vertex subsets are `u64` bitmasks; values are memoized per subset.
//! Connected sets are enumerated by anchor: for each anchor `a` in increasing
//! order, sets whose minimum is `a` are grown by the classic
//! extension/exclusion scheme, so every connected set is produced exactly once.
//!
//! The pseudo variant drops connectivity: `T` ranges over all non-empty subsets.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexSet};
use crate::models::{ensure_valid, CliqueModel, Flavour};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_vertices: usize,
    /// Cap on candidate first parts examined, summed over the whole search.
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl SearchBudget {
    /// Default for [`exact_domhad`]: up to 14 vertices.
    pub fn domhad() -> Self {
        SearchBudget {
            max_vertices: 14,
            max_nodes: 200_000_000,
            time_limit: Duration::from_secs(60),
        }
    }

    /// Default for the pseudo and minor searches: up to 10 vertices.
    pub fn small() -> Self {
        SearchBudget {
            max_vertices: 10,
            ..Self::domhad()
        }
    }

    pub fn with_max_vertices(mut self, max_vertices: usize) -> Self {
        self.max_vertices = max_vertices;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_time_limit(mut self, time_limit: Duration) -> Self {
        self.time_limit = time_limit;
        self
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.max_vertices == 0 || self.max_nodes == 0 || self.time_limit.is_zero() {
            return Err(Error::Domain("search budget fields must be positive".into()));
        }
        if g.n() > self.max_vertices.min(64) {
            return Err(Error::Precondition(format!(
                "graph has {} vertices; exact search budget allows at most {}",
                g.n(),
                self.max_vertices.min(64)
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// `t` is the exact optimum.
    Exact,
    /// The budget ran out; `t` is a certified lower bound.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub t: usize,
    pub certificate: CliqueModel,
    pub status: SearchStatus,
    pub nodes: u64,
}

#[derive(Debug)]
struct Exhausted;

struct Limits {
    max_nodes: u64,
    deadline: Instant,
    nodes: u64,
}

impl Limits {
    fn new(budget: &SearchBudget) -> Self {
        Limits {
            max_nodes: budget.max_nodes,
            deadline: Instant::now() + budget.time_limit,
            nodes: 0,
        }
    }

    #[inline]
    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Exhausted);
        }
        if self.nodes & 0x3ff == 0 && Instant::now() > self.deadline {
            return Err(Exhausted);
        }
        Ok(())
    }
}

#[inline]
fn nbr_union(adj: &[u64], set: u64) -> u64 {
    BitIter(set).fold(0, |acc, v| acc | adj[v])
}

/// Maximum degree inside `s`, or `None` when `s` has no edge.
#[inline]
fn max_inner_degree(adj: &[u64], s: u64) -> Option<u32> {
    BitIter(s).map(|v| (adj[v] & s).count_ones()).max().filter(|&d| d > 0)
}

/// Cheap upper bound on the model order inside `s`.
#[inline]
fn upper_bound(adj: &[u64], s: u64) -> u32 {
    if s == 0 {
        return 0;
    }
    let deg_bound = max_inner_degree(adj, s).map_or(1, |d| d + 1);
    deg_bound.min(s.count_ones())
}

fn is_forest_mask(adj: &[u64], s: u64) -> bool {
    let edges: u32 = BitIter(s).map(|v| (adj[v] & s).count_ones()).sum::<u32>() / 2;
    let mut comps = 0;
    let mut left = s;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        loop {
            let grown = comp | (nbr_union(adj, comp) & s);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left &= !comp;
        comps += 1;
    }
    edges + comps == s.count_ones()
}

struct Searcher<'a> {
    adj: &'a [u64],
    connected: bool,
    /// subset -> (value, chosen first part; 0 for base-case values)
    memo: HashMap<u64, (u32, u64)>,
    limits: Limits,
}

impl<'a> Searcher<'a> {
    fn new(adj: &'a [u64], connected: bool, budget: &SearchBudget) -> Self {
        Searcher {
            adj,
            connected,
            memo: HashMap::new(),
            limits: Limits::new(budget),
        }
    }

    /// Base-case lower bound for `s` (and the value when nothing beats it).
    fn base_value(&self, s: u64) -> u32 {
        if s == 0 {
            0
        } else if max_inner_degree(self.adj, s).is_none() {
            1
        } else if !self.connected || is_forest_mask(self.adj, s) {
            2
        } else {
            3
        }
    }

    fn solve(&mut self, s: u64) -> std::result::Result<u32, Exhausted> {
        if let Some(&(v, _)) = self.memo.get(&s) {
            return Ok(v);
        }
        let mut best = self.base_value(s);
        let mut best_first = 0u64;
        let ub = upper_bound(self.adj, s);
        if best < ub {
            let mut candidates = Vec::new();
            self.collect_first_parts(s, &mut candidates)?;
            for t in candidates {
                let rest = nbr_union(self.adj, t) & s & !t;
                if upper_bound(self.adj, rest) < best {
                    continue;
                }
                let value = 1 + self.solve(rest)?;
                if value > best {
                    best = value;
                    best_first = t;
                    if best == ub {
                        break;
                    }
                }
            }
        }
        self.memo.insert(s, (best, best_first));
        Ok(best)
    }

    /// Candidate first parts of `s`, ordered by anchor then discovery.
    fn collect_first_parts(&mut self, s: u64, out: &mut Vec<u64>) -> std::result::Result<(), Exhausted> {
        if self.connected {
            for a in BitIter(s) {
                let below = (1u64 << a) - 1;
                self.grow(s, 1u64 << a, below, out)?;
            }
        } else {
            // all non-empty submasks, by increasing lowest bit then value
            let mut sub = s;
            while sub != 0 {
                self.limits.tick()?;
                out.push(sub);
                sub = (sub - 1) & s;
            }
            out.sort_unstable_by_key(|&m| (m.trailing_zeros(), m));
        }
        Ok(())
    }

    /// Connected sets `P' ⊇ P` inside `s` avoiding `excluded`, each once.
    fn grow(&mut self, s: u64, p: u64, excluded: u64, out: &mut Vec<u64>) -> std::result::Result<(), Exhausted> {
        self.limits.tick()?;
        out.push(p);
        let mut candidates = nbr_union(self.adj, p) & s & !p & !excluded;
        let mut excluded = excluded;
        while candidates != 0 {
            let bit = candidates & candidates.wrapping_neg();
            candidates &= !bit;
            self.grow(s, p | bit, excluded, out)?;
            excluded |= bit;
        }
        Ok(())
    }

    /// Parts (as masks) of a model of order `value(s)` inside `s`.
    fn certificate(&self, s: u64, value: u32, first: u64) -> Vec<u64> {
        if first != 0 {
            let rest = nbr_union(self.adj, first) & s & !first;
            let (rv, rf) = self
                .memo
                .get(&rest)
                .copied()
                .unwrap_or_else(|| (self.base_value(rest), 0));
            let mut parts = vec![first];
            parts.extend(self.certificate(rest, rv, rf));
            return parts;
        }
        base_certificate(self.adj, s, value)
    }
}

fn base_certificate(adj: &[u64], s: u64, value: u32) -> Vec<u64> {
    match value {
        0 => vec![],
        1 => vec![s & s.wrapping_neg()],
        2 => {
            let u = BitIter(s).find(|&u| adj[u] & s != 0).expect("value 2 needs an edge");
            let w = (adj[u] & s).trailing_zeros();
            vec![1u64 << u, 1u64 << w]
        }
        3 => {
            let g = Graph::from_masks(&adj.iter().map(|&a| a & s).collect::<Vec<_>>());
            let cycle = crate::graph::find_cycle_in(&g, |v| s >> v & 1 == 1).expect("value 3 needs a cycle");
            cycle_model_masks(&cycle)
        }
        _ => unreachable!("base values are at most 3"),
    }
}

/// `(C - x - y, {x}, {y})` for the first edge `xy` of the cycle.
fn cycle_model_masks(cycle: &[usize]) -> Vec<u64> {
    let (x, y) = (cycle[0], cycle[1]);
    let rest = cycle[2..].iter().fold(0u64, |m, &v| m | 1 << v);
    vec![rest, 1 << x, 1 << y]
}

fn run(g: &Graph, budget: &SearchBudget, flavour: Flavour, target: Option<usize>) -> Result<SearchResult> {
    budget.validate(g)?;
    if g.n() == 0 {
        return Err(Error::Precondition("exact search needs a non-empty graph".into()));
    }
    let adj = g.adjacency_masks().expect("n <= 64 checked");
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut searcher = Searcher::new(&adj, flavour == Flavour::Dominating, budget);

    // Top level mirrors `solve` but keeps the best completed candidate if the budget runs out.
    let mut best = searcher.base_value(all);
    let mut best_first = 0u64;
    let ub = upper_bound(&adj, all);
    let goal = target.map_or(ub, |t| (t as u32).min(ub));
    let mut status = SearchStatus::Exact;
    if best < goal {
        let mut candidates = Vec::new();
        let outcome = searcher.collect_first_parts(all, &mut candidates).and_then(|_| {
            for t in candidates {
                let rest = nbr_union(&adj, t) & all & !t;
                if upper_bound(&adj, rest) < best {
                    continue;
                }
                let value = 1 + searcher.solve(rest)?;
                if value > best {
                    best = value;
                    best_first = t;
                    if best >= goal {
                        break;
                    }
                }
            }
            Ok(())
        });
        if outcome.is_err() {
            status = SearchStatus::LowerBound;
        }
    }
    // With a target, stopping early at the target still certifies "at least t";
    // report it as exact only when the full optimum was established.
    if target.is_some() && best >= goal && goal < ub {
        status = SearchStatus::LowerBound;
    }
    let parts = searcher.certificate(all, best, best_first);
    let certificate = CliqueModel::new(flavour, parts.into_iter().map(VertexSet::from_mask).collect());
    ensure_valid(g, &certificate, "exact search")?;
    debug_assert_eq!(certificate.order(), best as usize);
    Ok(SearchResult {
        t: best as usize,
        certificate,
        status,
        nodes: searcher.limits.nodes,
    })
}

/// Maximum `t` with a dominating `K_t`-model, with a verified certificate.
/// When the budget runs out the result carries `status = LowerBound`.
pub fn exact_domhad(g: &Graph, budget: &SearchBudget) -> Result<SearchResult> {
    run(g, budget, Flavour::Dominating, None)
}

/// Like [`exact_domhad`] but stops once a model of order `t` is found. A
/// result with `t_found < t` and status `Exact` refutes order `t`.
pub fn dominating_model_at_least(g: &Graph, t: usize, budget: &SearchBudget) -> Result<SearchResult> {
    run(g, budget, Flavour::Dominating, Some(t))
}

/// Maximum order of a dominating pseudo-`K_t`-model (parts need not be connected).
pub fn exact_pseudo_domhad(g: &Graph, budget: &SearchBudget) -> Result<SearchResult> {
    run(g, budget, Flavour::PseudoDominating, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MinorOutcome {
    Found { certificate: CliqueModel },
    Absent,
    Unknown,
}

/// Exact `K_t`-minor test with a plain-model certificate.
///
/// Branch sets are chosen with increasing minimum vertex; each is a connected
/// set whose minimum is its anchor, touching every earlier branch set.
pub fn has_clique_minor(g: &Graph, t: usize, budget: &SearchBudget) -> Result<MinorOutcome> {
    budget.validate(g)?;
    if t == 0 {
        return Err(Error::Domain("minor order must be positive".into()));
    }
    let n = g.n();
    if n < t || g.m() < t * (t - 1) / 2 {
        return Ok(MinorOutcome::Absent);
    }
    let found = |parts: Vec<VertexSet>| -> Result<MinorOutcome> {
        let certificate = CliqueModel::new(Flavour::Plain, parts);
        ensure_valid(g, &certificate, "minor search")?;
        Ok(MinorOutcome::Found { certificate })
    };
    match t {
        1 => return found(vec![VertexSet::singleton(0)]),
        2 => {
            let (u, v) = g.edges().next().expect("m >= 1");
            return found(vec![VertexSet::singleton(u), VertexSet::singleton(v)]);
        }
        3 => {
            return match g.find_cycle() {
                Some(c) => found(cycle_model_masks(&c).into_iter().map(VertexSet::from_mask).collect()),
                None => Ok(MinorOutcome::Absent),
            }
        }
        _ => {}
    }
    let adj = g.adjacency_masks().expect("n <= 64 checked");
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = MinorSearch {
        adj: &adj,
        all,
        t,
        sets: Vec::with_capacity(t),
        limits: Limits::new(budget),
    };
    match search.place(0, 0) {
        Ok(true) => found(search.sets.iter().map(|&m| VertexSet::from_mask(m)).collect()),
        Ok(false) => Ok(MinorOutcome::Absent),
        Err(Exhausted) => Ok(MinorOutcome::Unknown),
    }
}

struct MinorSearch<'a> {
    adj: &'a [u64],
    all: u64,
    t: usize,
    sets: Vec<u64>,
    limits: Limits,
}

impl MinorSearch<'_> {
    /// Places branch set number `sets.len()` with anchor at least `min_anchor`.
    fn place(&mut self, used: u64, min_anchor: usize) -> std::result::Result<bool, Exhausted> {
        let i = self.sets.len();
        if i == self.t {
            return Ok(true);
        }
        let needed = (self.t - i) as u32;
        for a in min_anchor..self.adj.len() {
            let above = self.all & !((1u64 << a) - 1);
            let free = above & !used;
            if free.count_ones() < needed {
                break;
            }
            if used >> a & 1 == 1 {
                continue;
            }
            // the new set must reach every earlier set
            if self.sets.iter().any(|&b| nbr_union(self.adj, b) & free == 0) {
                break;
            }
            let mut found = false;
            self.grow(1u64 << a, used | !above, free, &mut found)?;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn grow(&mut self, p: u64, excluded: u64, free: u64, found: &mut bool) -> std::result::Result<(), Exhausted> {
        self.limits.tick()?;
        let nb = nbr_union(self.adj, p);
        if self.sets.iter().all(|&b| nb & b != 0) {
            let a = p.trailing_zeros() as usize;
            let rest = free & !p;
            let i = self.sets.len();
            let feasible = i + 1 == self.t
                || (rest.count_ones() as usize >= self.t - i - 1
                    && self
                        .sets
                        .iter()
                        .chain(std::iter::once(&p))
                        .all(|&b| nbr_union(self.adj, b) & rest != 0));
            if feasible {
                self.sets.push(p);
                let used = self.all & !rest;
                if self.place(used, a + 1)? {
                    *found = true;
                    return Ok(());
                }
                self.sets.pop();
            }
        }
        let mut candidates = nb & free & !p & !excluded;
        let mut excluded = excluded;
        while candidates != 0 {
            let bit = candidates & candidates.wrapping_neg();
            candidates &= !bit;
            self.grow(p | bit, excluded, free, found)?;
            if *found {
                return Ok(());
            }
            excluded |= bit;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::models::verify_model;

    fn domhad(g: &Graph) -> usize {
        let r = exact_domhad(g, &SearchBudget::domhad().with_max_vertices(16)).unwrap();
        assert_eq!(r.status, SearchStatus::Exact);
        assert!(verify_model(g, &r.certificate).unwrap().is_valid());
        r.t
    }

    #[test]
    fn cycle_has_order_three() {
        assert_eq!(domhad(&cycle(5)), 3);
        assert_eq!(domhad(&cycle(10)), 3);
    }

    #[test]
    fn complete_graphs() {
        for t in 1..=6 {
            let r = exact_domhad(&complete(t), &SearchBudget::domhad()).unwrap();
            assert_eq!(r.t, t);
            assert_eq!(r.certificate.parts.iter().map(VertexSet::len).sum::<usize>(), t);
        }
    }

    #[test]
    fn subdivided_k4_has_order_three() {
        assert_eq!(domhad(&subdivided_complete(4, 1)), 3);
    }

    #[test]
    fn small_families() {
        assert_eq!(domhad(&path(1)), 1);
        assert_eq!(domhad(&path(5)), 2);
        assert_eq!(domhad(&star(5)), 2);
        assert_eq!(domhad(&petersen()), 4);
        assert_eq!(domhad(&complete_bipartite(3, 3)), 4);
        assert_eq!(domhad(&Graph::empty(3)), 1);
    }

    #[test]
    fn pseudo_examples() {
        let b = SearchBudget::small();
        assert_eq!(exact_pseudo_domhad(&Graph::empty(3), &b).unwrap().t, 1);
        let k23 = complete_bipartite(2, 3);
        let r = exact_pseudo_domhad(&k23, &b).unwrap();
        assert!(verify_model(&k23, &r.certificate).unwrap().is_valid());
        assert_eq!(r.t, PSEUDO_K23);
    }

    // Brute force over all assignments of 5 vertices to at most 5 labelled parts or "unused".
    const PSEUDO_K23: usize = 3;

    #[test]
    fn pseudo_k23_oracle() {
        let g = complete_bipartite(2, 3);
        let mut best = 0;
        let n = g.n();
        let mut assign = vec![0usize; n];
        loop {
            // label 0 = unused, k >= 1 = part k - 1
            let t = *assign.iter().max().unwrap();
            let parts: Vec<VertexSet> = (1..=t).map(|k| (0..n).filter(|&v| assign[v] == k).collect()).collect();
            let m = CliqueModel::new(Flavour::PseudoDominating, parts);
            if verify_model(&g, &m).unwrap().is_valid() {
                best = best.max(t);
            }
            let mut i = 0;
            while i < n {
                assign[i] += 1;
                if assign[i] <= n {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        assert_eq!(best, PSEUDO_K23);
    }

    #[test]
    fn minor_examples() {
        let b = SearchBudget::small().with_max_vertices(16);
        assert!(matches!(
            has_clique_minor(&subdivided_complete(4, 1), 4, &b).unwrap(),
            MinorOutcome::Found { .. }
        ));
        assert_eq!(has_clique_minor(&cycle(5), 4, &b).unwrap(), MinorOutcome::Absent);
        assert_eq!(has_clique_minor(&star(6), 3, &b).unwrap(), MinorOutcome::Absent);
        assert!(matches!(
            has_clique_minor(&petersen(), 5, &b).unwrap(),
            MinorOutcome::Found { .. }
        ));
        assert_eq!(has_clique_minor(&complete(5), 6, &b).unwrap(), MinorOutcome::Absent);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = complete(12);
        let r = exact_domhad(&g, &SearchBudget::domhad().with_max_nodes(3)).unwrap();
        assert_eq!(r.status, SearchStatus::LowerBound);
        assert!(r.t >= 3);
        assert!(verify_model(&g, &r.certificate).unwrap().is_valid());
        assert!(exact_domhad(&complete(15), &SearchBudget::domhad()).is_err());
    }

    #[test]
    fn targeted_search() {
        let g = petersen();
        let r = dominating_model_at_least(&g, 3, &SearchBudget::domhad()).unwrap();
        assert!(r.t >= 3);
        let r = dominating_model_at_least(&g, 5, &SearchBudget::domhad()).unwrap();
        assert_eq!((r.t, r.status), (4, SearchStatus::Exact));
    }
}
