//! Certificate-producing constructions.
//!
//! Every function here returns either a model that has already passed
//! [`verify_model`](crate::models::verify_model) or a colouring that has been
//! checked proper; a failed self-check surfaces as [`Error::Internal`].

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::{degeneracy_colouring, Colouring};
use crate::error::{Error, Result};
use crate::graph::{bfs_layers, contract_edge, find_cycle_in, is_connected_set, is_dominating, Graph, VertexSet};
use crate::models::{ensure_valid, CliqueModel, Flavour};

/// Outcome of [`colour_or_model`]: exactly one side is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum DichotomyResult {
    Colouring { colouring: Colouring },
    Model { certificate: CliqueModel },
}

fn require_nonempty(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        Err(Error::Precondition("graph must be non-empty".into()))
    } else {
        Ok(())
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "graph must be connected and non-empty ({} vertices, {} components)",
            g.n(),
            g.components().len()
        )))
    }
}

// ---------------------------------------------------------------------------
// Minimum degree 3 => dominating K4-model
// ---------------------------------------------------------------------------

/// Dominating `K_4`-model in a graph of minimum degree at least 3.
///
/// Works in the component of vertex 0. Starting from any cycle `C`, keeps `C`
/// induced (chords shortcut it) and lets `H` be the largest component of
/// `G - C`. If `G - (V(H) ∪ {z})` still has a cycle for a vertex `z ∈ C`
/// adjacent to `H`, that cycle replaces `C`: the new `G - C` has a component
/// containing `H ∪ {z}`, so `|V(H)|` strictly grows. At the fixed point `H` is
/// the only component of `G - C` and every vertex of `C` sees `H`, so
/// `(H, C - x - y, {x}, {y})` works for any edge `xy` of `C`.
pub fn construct_k4_min_degree3(g: &Graph) -> Result<CliqueModel> {
    require_nonempty(g)?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 3) {
        return Err(Error::Precondition(format!(
            "minimum degree must be at least 3, but vertex {v} has degree {}",
            g.degree(v)
        )));
    }
    let comp = g.components().swap_remove(0);
    let (sub, map) = g.induced(comp.as_slice());
    let model = k4_in_connected(&sub)?.relabel(&map);
    ensure_valid(g, &model, "min-degree-3 construction")?;
    Ok(model)
}

fn k4_in_connected(g: &Graph) -> Result<CliqueModel> {
    let n = g.n();
    let mut cycle = g
        .find_cycle()
        .ok_or_else(|| Error::Internal("minimum degree 3 graph without a cycle".into()))?;
    loop {
        cycle = shortcut_chords(g, cycle);
        let mut on_cycle = vec![false; n];
        for &v in &cycle {
            on_cycle[v] = true;
        }
        let h = largest_component_avoiding(g, &on_cycle);
        if h.is_empty() {
            return Err(Error::Internal("induced cycle with nothing outside it".into()));
        }
        let mut in_h = vec![false; n];
        for &v in &h {
            in_h[v] = true;
        }
        let z = *cycle
            .iter()
            .filter(|&&c| g.neighbours(c).iter().any(|&w| in_h[w]))
            .min()
            .ok_or_else(|| Error::Internal("no cycle vertex touches H in a connected graph".into()))?;
        match find_cycle_in(g, |v| !in_h[v] && v != z) {
            Some(better) => cycle = better,
            None => {
                let (x, y) = (cycle[0], cycle[1]);
                return Ok(CliqueModel::dominating(vec![
                    VertexSet::from_vertices(h),
                    VertexSet::from_vertices(cycle[2..].iter().copied()),
                    VertexSet::singleton(x),
                    VertexSet::singleton(y),
                ]));
            }
        }
    }
}

/// Repeatedly replaces the cycle by the shorter side of a chord until it is induced.
fn shortcut_chords(g: &Graph, mut cycle: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    'outer: loop {
        let k = cycle.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in cycle.iter().enumerate() {
            pos[v] = i;
        }
        for i in 0..k {
            for &w in g.neighbours(cycle[i]) {
                let j = pos[w];
                if j == usize::MAX || j <= i || j == i + 1 || (i == 0 && j == k - 1) {
                    continue;
                }
                // chord between positions i < j
                let inner = j - i + 1;
                let outer = k - (j - i) + 1;
                cycle = if inner <= outer {
                    cycle[i..=j].to_vec()
                } else {
                    cycle[j..].iter().chain(cycle[..=i].iter()).copied().collect()
                };
                continue 'outer;
            }
        }
        return cycle;
    }
}

/// Largest component of `G - blocked` (ties: smallest minimum vertex), sorted.
fn largest_component_avoiding(g: &Graph, blocked: &[bool]) -> Vec<usize> {
    let n = g.n();
    let mut seen = blocked.to_vec();
    let mut best: Vec<usize> = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best.sort_unstable();
    best
}

// ---------------------------------------------------------------------------
// Degree-<=k peeling and the 2n - 3 edge bound
// ---------------------------------------------------------------------------

/// Repeatedly deletes vertices of current degree at most `k` (smallest id
/// first among those available). Returns the deletion order and the remaining
/// core, which has minimum degree above `k` or is empty.
pub fn peel_low_degree(g: &Graph, k: usize) -> (Vec<usize>, VertexSet) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut heap = std::collections::BinaryHeap::new();
    for v in 0..n {
        if deg[v] <= k {
            queued[v] = true;
            heap.push(std::cmp::Reverse(v));
        }
    }
    let mut order = Vec::new();
    while let Some(std::cmp::Reverse(v)) = heap.pop() {
        removed[v] = true;
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] <= k && !queued[w] {
                    queued[w] = true;
                    heap.push(std::cmp::Reverse(w));
                }
            }
        }
    }
    let core = (0..n).filter(|&v| !removed[v]).collect();
    (order, core)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum EdgeBoundVerdict {
    /// `m <= 2n - 3`.
    BoundSatisfied { m: usize, bound: usize },
    /// `m > 2n - 3`, witnessed by a dominating `K_4`-model.
    Witness {
        m: usize,
        bound: usize,
        certificate: CliqueModel,
    },
}

/// Graphs with more than `2n - 3` edges contain a dominating `K_4`-model,
/// found in the min-degree-3 core left after peeling vertices of degree <= 2.
pub fn edge_bound_check(g: &Graph) -> Result<EdgeBoundVerdict> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Domain("edge bound needs at least 2 vertices".into()));
    }
    let (m, bound) = (g.m(), 2 * n - 3);
    if m <= bound {
        return Ok(EdgeBoundVerdict::BoundSatisfied { m, bound });
    }
    let certificate = k4_from_core(g)?
        .ok_or_else(|| Error::Internal(format!("{m} > {bound} edges but peeling emptied the graph")))?;
    Ok(EdgeBoundVerdict::Witness { m, bound, certificate })
}

/// Runs the min-degree-3 construction on the 2-peeling core, if non-empty.
fn k4_from_core(g: &Graph) -> Result<Option<CliqueModel>> {
    let (_, core) = peel_low_degree(g, 2);
    if core.is_empty() {
        return Ok(None);
    }
    let (sub, map) = g.induced(core.as_slice());
    let model = construct_k4_min_degree3(&sub)?.relabel(&map);
    ensure_valid(g, &model, "core K4 construction")?;
    Ok(Some(model))
}

// ---------------------------------------------------------------------------
// Average degree 2^(t-2) => dominating K_t-model
// ---------------------------------------------------------------------------

fn pow2(e: usize) -> f64 {
    2f64.powi(e as i32)
}

/// Dominating `K_t`-model with `root ∈ T_1` in a graph of average degree at
/// least `2^(t-2)`.
///
/// Without a root, the component of largest average degree is used (ties: the
/// one with the smallest vertex) and its smallest vertex is the root. With a
/// root, its component must itself meet the average-degree threshold.
pub fn construct_avg_degree(g: &Graph, t: usize, root: Option<usize>) -> Result<CliqueModel> {
    if t < 2 {
        return Err(Error::Domain("order t must be at least 2".into()));
    }
    if t > 40 {
        return Err(Error::Domain("order t above 40 is not supported".into()));
    }
    let need = pow2(t - 2);
    let avg = g.average_degree();
    if avg < need {
        return Err(Error::Precondition(format!(
            "average degree {avg:.4} is below 2^(t-2) = {need}"
        )));
    }
    let comps = g.components();
    let comp_avg = |c: &VertexSet| -> f64 {
        let twice_m: usize = c.iter().map(|v| g.degree(v)).sum();
        twice_m as f64 / c.len() as f64
    };
    let (comp, root) = match root {
        Some(r) => {
            g.check_vertex(r)?;
            let comp = comps
                .into_iter()
                .find(|c| c.contains(r))
                .expect("every vertex has a component");
            if comp_avg(&comp) < need {
                return Err(Error::Precondition(format!(
                    "the component of root {r} has average degree {:.4} < 2^(t-2) = {need}",
                    comp_avg(&comp)
                )));
            }
            (comp, r)
        }
        None => {
            let mut best = 0;
            for (i, c) in comps.iter().enumerate() {
                if comp_avg(c) > comp_avg(&comps[best]) {
                    best = i;
                }
            }
            let comp = comps.into_iter().nth(best).expect("n > 0 since avg >= 1");
            let r = comp.first().expect("non-empty component");
            (comp, r)
        }
    };
    let (sub, map) = g.induced(comp.as_slice());
    let local_root = comp.as_slice().binary_search(&root).expect("root in its component");
    let parts = avg_degree_model(&sub, local_root, t)?;
    let model = CliqueModel::dominating(parts).relabel(&map);
    ensure_valid(g, &model, "average-degree construction")?;
    if !model.parts[0].contains(root) {
        return Err(Error::Internal(format!("root {root} is not in the first part")));
    }
    Ok(model)
}

/// Recursion on a connected graph; returns parts in local ids with `v` in part 0.
fn avg_degree_model(g: &Graph, v: usize, t: usize) -> Result<Vec<VertexSet>> {
    let n = g.n();
    let need = pow2(t - 2);
    if g.average_degree() < need || !g.is_connected() {
        return Err(Error::Internal(format!(
            "recursion reached a graph with average degree {:.4} < {need} (or disconnected) at t = {t}",
            g.average_degree()
        )));
    }
    if t == 2 {
        let w = g.neighbours(v)[0];
        return Ok(vec![VertexSet::singleton(v), VertexSet::singleton(w)]);
    }
    if (n as f64) <= need + 1.0 {
        // complete graph on n >= t vertices
        let others = (0..n).filter(|&u| u != v).take(t - 1);
        return Ok(std::iter::once(v).chain(others).map(VertexSet::singleton).collect());
    }
    let limit = (1usize << (t - 3)) - 1;
    for &w in g.neighbours(v) {
        let common = common_neighbours(g, v, w);
        if common <= limit {
            let c = contract_edge(g, v, w)?;
            let parts = avg_degree_model(&c.graph, c.merged, t)?;
            // lift: each new vertex stands for its preimage
            let mut preimage = vec![Vec::new(); c.graph.n()];
            for (old, &new) in c.map.iter().enumerate() {
                preimage[new].push(old);
            }
            return Ok(parts
                .into_iter()
                .map(|p| p.iter().flat_map(|x| preimage[x].iter().copied()).collect())
                .collect());
        }
    }
    // every edge at v lies in at least 2^(t-3) triangles
    let nbrs = g.neighbours(v).to_vec();
    let (link, link_map) = g.induced(&nbrs);
    let comp = link.components().swap_remove(0);
    let (piece, piece_map) = link.induced(comp.as_slice());
    let inner = avg_degree_model(&piece, 0, t - 1)?;
    let mut parts = vec![VertexSet::singleton(v)];
    parts.extend(
        inner
            .into_iter()
            .map(|p| p.iter().map(|x| link_map[piece_map[x]]).collect::<VertexSet>()),
    );
    Ok(parts)
}

fn common_neighbours(g: &Graph, u: usize, w: usize) -> usize {
    let (a, b) = (g.neighbours(u), g.neighbours(w));
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

// ---------------------------------------------------------------------------
// Colour or model
// ---------------------------------------------------------------------------

/// Colour budget of [`colour_or_model`] at order `t`: `2^(t-2)` for `t <= 3`,
/// `3 * 2^(t-4)` from `t = 4` on.
pub fn palette_bound(t: usize) -> usize {
    match t {
        0 | 1 => 0,
        2 => 1,
        3 => 2,
        _ => 3usize << (t - 4),
    }
}

enum Local {
    Colours(Vec<usize>),
    Model(Vec<VertexSet>),
}

/// Either a proper colouring with at most [`palette_bound(t)`](palette_bound)
/// colours or a dominating `K_t`-model.
///
/// For `t >= 5`, each component is split into BFS layers from its smallest
/// vertex and every layer is handled at order `t - 1`. A `K_{t-1}`-model inside
/// layer `i` extends to a `K_t`-model by prepending the union of layers
/// `0..i`; otherwise even layers share one palette and odd layers another.
/// Base cases: `t = 2` (an edge or one colour), `t = 3` (a cycle or a
/// 2-coloured forest), `t = 4` (a min-degree-3 core or a 2-degenerate
/// 3-colouring).
pub fn colour_or_model(g: &Graph, t: usize) -> Result<DichotomyResult> {
    if t < 2 {
        return Err(Error::Domain("order t must be at least 2".into()));
    }
    if t > 40 {
        return Err(Error::Domain("order t above 40 is not supported".into()));
    }
    match dichotomy(g, t)? {
        Local::Model(parts) => {
            let certificate = CliqueModel::dominating(parts);
            ensure_valid(g, &certificate, "colour-or-model")?;
            if certificate.order() != t {
                return Err(Error::Internal("dichotomy model has the wrong order".into()));
            }
            Ok(DichotomyResult::Model { certificate })
        }
        Local::Colours(colours) => {
            let colouring = Colouring::from_colours(colours);
            if let Err(v) = colouring.check(g) {
                return Err(Error::Internal(format!("dichotomy colouring is improper: {v:?}")));
            }
            if colouring.palette_size > palette_bound(t) {
                return Err(Error::Internal(format!(
                    "dichotomy colouring uses {} colours, bound is {}",
                    colouring.palette_size,
                    palette_bound(t)
                )));
            }
            Ok(DichotomyResult::Colouring { colouring })
        }
    }
}

fn dichotomy(g: &Graph, t: usize) -> Result<Local> {
    let n = g.n();
    match t {
        2 => Ok(match g.edges().next() {
            Some((u, v)) => Local::Model(vec![VertexSet::singleton(u), VertexSet::singleton(v)]),
            None => Local::Colours(vec![0; n]),
        }),
        3 => Ok(match g.find_cycle() {
            Some(c) => Local::Model(cycle_model(&c)),
            None => Local::Colours(forest_two_colouring(g)),
        }),
        4 => Ok(match k4_from_core(g)? {
            Some(m) => Local::Model(m.parts),
            None => {
                let (mut order, _) = peel_low_degree(g, 2);
                order.reverse();
                Local::Colours(crate::colouring::greedy_colouring(g, &order).colours)
            }
        }),
        _ => {
            let offset = palette_bound(t - 1);
            let mut colours = vec![0; n];
            for comp in g.components() {
                let root = comp.first().expect("components are non-empty");
                let layers = bfs_layers(g, root)?;
                for (i, layer) in layers.iter().enumerate() {
                    let (sub, map) = g.induced(layer.as_slice());
                    match dichotomy(&sub, t - 1)? {
                        Local::Model(parts) => {
                            let prefix: VertexSet = layers[..i].iter().flat_map(VertexSet::iter).collect();
                            let mut all = vec![prefix];
                            all.extend(
                                parts
                                    .into_iter()
                                    .map(|p| p.iter().map(|x| map[x]).collect::<VertexSet>()),
                            );
                            return Ok(Local::Model(all));
                        }
                        Local::Colours(c) => {
                            for (x, col) in c.into_iter().enumerate() {
                                colours[map[x]] = col + (i % 2) * offset;
                            }
                        }
                    }
                }
            }
            Ok(Local::Colours(colours))
        }
    }
}

/// `(C - x - y, {x}, {y})` for the first edge `xy` of a cycle `C`.
fn cycle_model(cycle: &[usize]) -> Vec<VertexSet> {
    vec![
        VertexSet::from_vertices(cycle[2..].iter().copied()),
        VertexSet::singleton(cycle[0]),
        VertexSet::singleton(cycle[1]),
    ]
}

fn forest_two_colouring(g: &Graph) -> Vec<usize> {
    let mut colours = vec![usize::MAX; g.n()];
    for s in 0..g.n() {
        if colours[s] != usize::MAX {
            continue;
        }
        colours[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if colours[w] == usize::MAX {
                    colours[w] = 1 - colours[v];
                    queue.push_back(w);
                }
            }
        }
    }
    colours
}

// ---------------------------------------------------------------------------
// Connected dominating sets
// ---------------------------------------------------------------------------

/// Attempts at the random sampling step before falling back to greedy.
pub const CDS_SAMPLING_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum CdsMethod {
    /// Random sampling with `p = ln(2n) / δ` succeeded on attempt `attempt`.
    Randomized { attempt: usize, p: f64 },
    /// Greedy set cover; no size guarantee.
    Greedy { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectedDominatingSet {
    pub set: VertexSet,
    #[serde(flatten)]
    pub method: CdsMethod,
    /// `3 * (2 p n) - 2` when the randomized route ran.
    pub size_bound: Option<f64>,
}

/// Connected dominating set of a connected graph.
///
/// When `δ > ln(2n)` each vertex is sampled with probability `ln(2n)/δ` until
/// the sample dominates and has at most `2pn` vertices; otherwise (or after
/// [`CDS_SAMPLING_ATTEMPTS`] failures) a greedy dominating set is used. The set
/// is then made connected by joining components through at most two outside
/// vertices at a time, and finally trimmed of redundant vertices.
pub fn find_connected_dominating_set(g: &Graph, seed: u64) -> Result<ConnectedDominatingSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cds_with_rng(g, &mut rng)
}

fn cds_with_rng<R: Rng>(g: &Graph, rng: &mut R) -> Result<ConnectedDominatingSet> {
    require_connected(g)?;
    let n = g.n();
    let ln2n = (2.0 * n as f64).ln();
    let delta = g.min_degree();
    let mut sampled = None;
    let mut fallback_reason = format!("minimum degree {delta} <= ln(2n) = {ln2n:.3}");
    if delta as f64 > ln2n {
        let p = ln2n / delta as f64;
        for attempt in 1..=CDS_SAMPLING_ATTEMPTS {
            let a: VertexSet = (0..n).filter(|_| rng.gen::<f64>() < p).collect();
            if !a.is_empty() && a.len() as f64 <= 2.0 * p * n as f64 && is_dominating(g, &a) {
                sampled = Some((a, attempt, p));
                break;
            }
        }
        fallback_reason = format!("{CDS_SAMPLING_ATTEMPTS} sampling attempts failed");
    }
    let (seed_set, method, size_bound) = match sampled {
        Some((a, attempt, p)) => (
            a,
            CdsMethod::Randomized { attempt, p },
            Some(3.0 * (2.0 * p * n as f64) - 2.0),
        ),
        None => (
            greedy_dominating_set(g),
            CdsMethod::Greedy {
                reason: fallback_reason,
            },
            None,
        ),
    };
    let connected = connectify(g, seed_set)?;
    let set = trim(g, connected);
    if let Some(b) = size_bound {
        if set.len() as f64 > b {
            return Err(Error::Internal(format!(
                "connected dominating set of size {} exceeds {b}",
                set.len()
            )));
        }
    }
    if !is_dominating(g, &set) || !is_connected_set(g, &set) {
        return Err(Error::Internal("connected dominating set failed its own check".into()));
    }
    Ok(ConnectedDominatingSet {
        set,
        method,
        size_bound,
    })
}

/// Greedy set cover on closed neighbourhoods; ties go to the smallest id.
pub fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut left = n;
    let mut chosen = Vec::new();
    while left > 0 {
        let gain = |v: usize| (!covered[v]) as usize + g.neighbours(v).iter().filter(|&&w| !covered[w]).count();
        let best = (0..n).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).expect("n > 0");
        chosen.push(best);
        for w in std::iter::once(best).chain(g.neighbours(best).iter().copied()) {
            if !covered[w] {
                covered[w] = true;
                left -= 1;
            }
        }
    }
    VertexSet::from_vertices(chosen)
}

/// Joins the components of `G[A]` for a dominating `A`, at most two new
/// vertices per merge, so `k` vertices grow to at most `3k - 2`.
fn connectify(g: &Graph, a: VertexSet) -> Result<VertexSet> {
    let n = g.n();
    let mut in_a = vec![false; n];
    for v in a.iter() {
        in_a[v] = true;
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&v| in_a[v]).collect();
        // component of the smallest member inside G[A]
        let mut in_first = vec![false; n];
        let mut stack = vec![members[0]];
        in_first[members[0]] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbours(v) {
                if in_a[w] && !in_first[w] {
                    in_first[w] = true;
                    stack.push(w);
                }
            }
        }
        if members.iter().all(|&v| in_first[v]) {
            return Ok(VertexSet::from_vertices(members));
        }
        // BFS from that component through outside vertices to the nearest other member
        let mut parent = vec![usize::MAX; n];
        let mut queue: VecDeque<usize> = members.iter().copied().filter(|&v| in_first[v]).collect();
        for &v in &queue {
            parent[v] = v;
        }
        let mut hit = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if parent[w] != usize::MAX {
                    continue;
                }
                parent[w] = v;
                if in_a[w] {
                    hit = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        let hit = hit.ok_or_else(|| Error::Internal("dominating set components cannot be joined".into()))?;
        let mut internal = Vec::new();
        let mut x = parent[hit];
        while !in_first[x] {
            internal.push(x);
            x = parent[x];
        }
        if internal.len() > 2 {
            return Err(Error::Internal(format!(
                "joining path needs {} outside vertices; the set is not dominating",
                internal.len()
            )));
        }
        for v in internal {
            in_a[v] = true;
        }
    }
}

/// Drops vertices (largest id first) whose removal keeps the set connected and dominating.
fn trim(g: &Graph, set: VertexSet) -> VertexSet {
    let mut current = set;
    for v in current.clone().into_vec().into_iter().rev() {
        if current.len() == 1 {
            break;
        }
        let candidate: VertexSet = current.iter().filter(|&u| u != v).collect();
        if is_dominating(g, &candidate) && is_connected_set(g, &candidate) {
            current = candidate;
        }
    }
    current
}

// ---------------------------------------------------------------------------
// Dense graphs
// ---------------------------------------------------------------------------

/// `c n + 6 t ln(2n) / c`.
pub fn dense_threshold(n: usize, t: usize, c: f64) -> f64 {
    let n = n as f64;
    c * n + 6.0 / c * t as f64 * (2.0 * n).ln()
}

/// Dominating `K_t`-model in a graph on `n` vertices with `c n > ln(2n)` and
/// minimum degree at least `c n + 6 t ln(2n) / c`: peel a connected
/// dominating set `A` off a component, recurse at `t - 1` on the rest, and
/// prepend `A`.
pub fn construct_dense(g: &Graph, t: usize, c: f64, seed: u64) -> Result<CliqueModel> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (0, 1), got {c}")));
    }
    if t == 0 {
        return Err(Error::Domain("order t must be positive".into()));
    }
    require_nonempty(g)?;
    let n = g.n();
    let ln2n = (2.0 * n as f64).ln();
    if c * n as f64 <= ln2n {
        return Err(Error::Precondition(format!(
            "c n = {:.4} must exceed ln(2n) = {ln2n:.4}",
            c * n as f64
        )));
    }
    let threshold = dense_threshold(n, t, c);
    if (g.min_degree() as f64) < threshold {
        return Err(Error::Precondition(format!(
            "minimum degree {} is below c n + 6 t ln(2n) / c = {threshold:.4}",
            g.min_degree()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..n).collect();
    let parts = dense_model(g, &all, t, n, c, &mut rng)?;
    let model = CliqueModel::dominating(parts);
    ensure_valid(g, &model, "dense construction")?;
    Ok(model)
}

fn dense_model<R: Rng>(
    host: &Graph,
    vertices: &[usize],
    t: usize,
    n_bound: usize,
    c: f64,
    rng: &mut R,
) -> Result<Vec<VertexSet>> {
    let (sub, map) = host.induced(vertices);
    if (sub.min_degree() as f64) < dense_threshold(n_bound, t, c) {
        return Err(Error::Internal(format!(
            "minimum degree {} dropped below the threshold at t = {t}",
            sub.min_degree()
        )));
    }
    let comp = sub.components().swap_remove(0);
    if t == 1 {
        return Ok(vec![VertexSet::singleton(map[comp.as_slice()[0]])]);
    }
    let (piece, piece_map) = sub.induced(comp.as_slice());
    let cds = cds_with_rng(&piece, rng)?;
    let to_host = |x: usize| map[piece_map[x]];
    let a: VertexSet = cds.set.iter().map(to_host).collect();
    let rest: Vec<usize> = (0..piece.n()).filter(|&x| !cds.set.contains(x)).map(to_host).collect();
    let mut parts = vec![a];
    parts.extend(dense_model(host, &rest, t - 1, n_bound, c, rng)?);
    Ok(parts)
}

/// Linear-minimum-degree wrapper: requires `n >= t log2(t) / c^2` and
/// `δ >= 2cn`, then checks that `2cn >= cn + 6 t ln(2n) / c` and `cn > ln(2n)`
/// actually hold for this `n` before delegating to [`construct_dense`]. The
/// asymptotic regime is usually out of reach for small graphs; that case is
/// reported as a precondition error naming both sides.
pub fn construct_linear_min_degree(g: &Graph, t: usize, c: f64, seed: u64) -> Result<CliqueModel> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (0, 1), got {c}")));
    }
    if t < 2 {
        return Err(Error::Domain("order t must be at least 2".into()));
    }
    let n = g.n() as f64;
    let tf = t as f64;
    let size_need = tf * tf.log2() / (c * c);
    if n < size_need {
        return Err(Error::Precondition(format!(
            "n = {n} is below t log2(t) / c^2 = {size_need:.4}"
        )));
    }
    if (g.min_degree() as f64) < 2.0 * c * n {
        return Err(Error::Precondition(format!(
            "minimum degree {} is below 2cn = {:.4}",
            g.min_degree(),
            2.0 * c * n
        )));
    }
    let dense = dense_threshold(g.n(), t, c);
    if 2.0 * c * n < dense || c * n <= (2.0 * n).ln() {
        return Err(Error::Precondition(format!(
            "regime unreachable: 2cn = {:.4} but c n + 6 t ln(2n) / c = {dense:.4}",
            2.0 * c * n
        )));
    }
    construct_dense(g, t, c, seed)
}

// ---------------------------------------------------------------------------
// Regular graphs: pseudo-models by rejection sampling
// ---------------------------------------------------------------------------

/// Largest max/min degree ratio accepted in near-regular mode.
pub const NEAR_REGULAR_RATIO: f64 = 1.1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PseudoModelOutcome {
    Found { certificate: CliqueModel, attempts: usize },
    Exhausted { attempts: usize },
}

/// Dominating pseudo-`K_t`-model of a (near-)regular graph with degree at
/// least `4 t ln t`, by assigning every vertex to a uniform random part until
/// every vertex has a neighbour in every part.
pub fn regular_pseudo_model(
    g: &Graph,
    t: usize,
    seed: u64,
    max_attempts: usize,
    near_regular: bool,
) -> Result<PseudoModelOutcome> {
    if t == 0 {
        return Err(Error::Domain("order t must be positive".into()));
    }
    require_nonempty(g)?;
    let (lo, hi) = (g.min_degree(), g.max_degree());
    if near_regular {
        if lo == 0 || hi as f64 > NEAR_REGULAR_RATIO * lo as f64 {
            return Err(Error::Precondition(format!(
                "degrees range over [{lo}, {hi}], ratio above {NEAR_REGULAR_RATIO}"
            )));
        }
    } else if lo != hi {
        return Err(Error::Precondition(format!(
            "graph is not regular (degrees {lo}..{hi})"
        )));
    }
    let need = 4.0 * t as f64 * (t as f64).ln();
    if (lo as f64) < need {
        return Err(Error::Precondition(format!(
            "degree {lo} is below 4 t ln t = {need:.4}"
        )));
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut part = vec![0usize; n];
    let mut seen = vec![usize::MAX; t];
    for attempt in 1..=max_attempts {
        for p in part.iter_mut() {
            *p = rng.gen_range(0..t);
        }
        // stamp-based "neighbour in every part" test
        let ok = (0..n).all(|v| {
            let mut hits = 0;
            for &w in g.neighbours(v) {
                if seen[part[w]] != v {
                    seen[part[w]] = v;
                    hits += 1;
                }
            }
            hits == t
        });
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        if ok {
            let mut parts = vec![Vec::new(); t];
            for (v, &p) in part.iter().enumerate() {
                parts[p].push(v);
            }
            let certificate = CliqueModel::new(
                Flavour::PseudoDominating,
                parts.into_iter().map(VertexSet::from_vertices).collect(),
            );
            ensure_valid(g, &certificate, "regular pseudo-model")?;
            return Ok(PseudoModelOutcome::Found {
                certificate,
                attempts: attempt,
            });
        }
    }
    Ok(PseudoModelOutcome::Exhausted { attempts: max_attempts })
}

// ---------------------------------------------------------------------------
// Locally minimal colourings
// ---------------------------------------------------------------------------

/// Starts from a degeneracy-order greedy colouring and recolours vertices to
/// smaller free colours until none can move. At that point every vertex of
/// colour `j` has neighbours of all colours `i < j`, so the colour classes,
/// in colour order, are a dominating pseudo-model of order equal to the
/// number of colours used.
pub fn min_sum_colouring_pseudo_model(g: &Graph) -> Result<(Colouring, CliqueModel)> {
    require_nonempty(g)?;
    let n = g.n();
    let mut colours = degeneracy_colouring(g).colours;
    let mut present: Vec<bool> = Vec::new();
    loop {
        let mut changed = false;
        for v in 0..n {
            let cv = colours[v];
            present.clear();
            present.resize(cv, false);
            for &w in g.neighbours(v) {
                if colours[w] < cv {
                    present[colours[w]] = true;
                }
            }
            if let Some(c) = present.iter().position(|&p| !p) {
                colours[v] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let colouring = Colouring::from_colours(colours);
    let parts = colouring.classes();
    if parts.iter().any(VertexSet::is_empty) {
        return Err(Error::Internal("locally minimal colouring skips a colour".into()));
    }
    let model = CliqueModel::new(Flavour::PseudoDominating, parts);
    ensure_valid(g, &model, "min-sum colouring")?;
    Ok((colouring, model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::graph::is_independent;
    use crate::models::verify_model;

    fn valid(g: &Graph, m: &CliqueModel) -> bool {
        verify_model(g, m).unwrap().is_valid()
    }

    #[test]
    fn k4_examples() {
        for g in [complete(4), petersen(), complete_bipartite(3, 3), complete(7), wheel(6)] {
            let m = construct_k4_min_degree3(&g).unwrap();
            assert_eq!(m.order(), 4);
            assert!(valid(&g, &m));
        }
        let err = construct_k4_min_degree3(&cycle(5)).unwrap_err();
        assert!(err.to_string().contains("vertex 0 has degree 2"), "{err}");
    }

    #[test]
    fn chord_shortcutting_gives_induced_cycles() {
        let g = complete(6);
        let c = shortcut_chords(&g, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(c.len(), 3);
        let w = wheel(6);
        let c = shortcut_chords(&w, vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn avg_degree_examples() {
        let m = construct_avg_degree(&complete(4), 3, None).unwrap();
        assert!(valid(&complete(4), &m) && m.order() == 3);
        let m = construct_avg_degree(&complete(8), 4, Some(5)).unwrap();
        assert!(valid(&complete(8), &m) && m.parts[0].contains(5));
        let err = construct_avg_degree(&cycle(6), 4, None).unwrap_err();
        assert!(err.to_string().contains("average degree 2.0000"), "{err}");
    }

    #[test]
    fn avg_degree_with_contractions() {
        // A long cycle with chords forces the contraction branch.
        let mut rng = <ChaCha8Rng as SeedableRng>::seed_from_u64(11);
        for _ in 0..20 {
            let g = gnm(30, 60, &mut rng);
            let m = construct_avg_degree(&g, 4, None).unwrap();
            assert!(valid(&g, &m) && m.order() == 4);
        }
    }

    #[test]
    fn dichotomy_examples() {
        match colour_or_model(&complete(5), 4).unwrap() {
            DichotomyResult::Model { certificate } => assert!(valid(&complete(5), &certificate)),
            other => panic!("expected a model, got {other:?}"),
        }
        let sub = subdivided_complete(4, 1);
        match colour_or_model(&sub, 4).unwrap() {
            DichotomyResult::Colouring { colouring } => {
                assert!(colouring.is_proper(&sub) && colouring.palette_size <= 3)
            }
            other => panic!("expected a colouring, got {other:?}"),
        }
        let tree = star(6);
        match colour_or_model(&tree, 3).unwrap() {
            DichotomyResult::Colouring { colouring } => assert!(colouring.palette_size <= 2),
            other => panic!("expected a colouring, got {other:?}"),
        }
        match colour_or_model(&complete(9), 7).unwrap() {
            DichotomyResult::Model { certificate } => assert_eq!(certificate.order(), 7),
            other => panic!("expected a model, got {other:?}"),
        }
        assert_eq!(palette_bound(4), 3);
        assert_eq!(palette_bound(6), 12);
    }

    #[test]
    fn cds_examples() {
        let k = complete(9);
        let c = find_connected_dominating_set(&k, 1).unwrap();
        assert_eq!(c.set.len(), 1);

        let c6 = cycle(6);
        let c = find_connected_dominating_set(&c6, 2).unwrap();
        assert!(c.set.len() <= 4);
        assert!(is_dominating(&c6, &c.set) && is_connected_set(&c6, &c.set));

        let p = petersen();
        let c = find_connected_dominating_set(&p, 3).unwrap();
        assert!(is_dominating(&p, &c.set) && is_connected_set(&p, &c.set));

        assert!(find_connected_dominating_set(&Graph::empty(2), 0).is_err());
    }

    #[test]
    fn cds_randomized_route_respects_bound() {
        let mut rng = <ChaCha8Rng as SeedableRng>::seed_from_u64(5);
        let g = gnp(200, 0.3, &mut rng);
        let c = find_connected_dominating_set(&g, 9).unwrap();
        assert!(matches!(c.method, CdsMethod::Randomized { .. }));
        assert!(c.set.len() as f64 <= c.size_bound.unwrap());
    }

    #[test]
    fn dense_examples() {
        // K_520, t = 3, c = 0.49: threshold 0.49*520 + 6*3*ln(1040)/0.49 ≈ 510.1 <= 519
        let g = complete(520);
        let m = construct_dense(&g, 3, 0.49, 7).unwrap();
        assert!(valid(&g, &m) && m.order() == 3);

        // K_50 misses the threshold
        let err = construct_dense(&complete(50), 3, 0.5, 0).unwrap_err();
        assert!(err.to_string().contains("below c n + 6 t ln(2n) / c"), "{err}");

        let m = construct_dense(&complete(200), 1, 0.5, 0).unwrap();
        assert_eq!(m.order(), 1);

        let mp = complete_multipartite(&[2; 260]);
        let m = construct_dense(&mp, 3, 0.49, 3).unwrap();
        assert!(valid(&mp, &m));
    }

    #[test]
    fn regular_pseudo_examples() {
        let k = complete(8);
        let PseudoModelOutcome::Found { certificate, .. } = regular_pseudo_model(&k, 2, 1, 100, false).unwrap() else {
            panic!("K8 splits into two parts of size >= 2 quickly");
        };
        assert!(valid(&k, &certificate));
        assert!(regular_pseudo_model(&cycle(6), 3, 0, 10, false).is_err());
        assert!(regular_pseudo_model(&path(6), 1, 0, 10, false).is_err());
    }

    #[test]
    fn linear_regime_is_reported() {
        // n = 300, c = 0.3: 2cn = 180 but cn + 6 t ln(2n) / c ≈ 90 + 511.7
        let g = complete(300);
        let err = construct_linear_min_degree(&g, 4, 0.3, 1).unwrap_err();
        assert!(err.to_string().contains("regime unreachable"), "{err}");
        // n = 2000, c = 0.45, t = 2: 1800 >= 900 + 6*2*ln(4000)/0.45 ≈ 1121
        let g = complete(2000);
        let m = construct_linear_min_degree(&g, 2, 0.45, 1).unwrap();
        assert!(valid(&g, &m) && m.order() == 2);
    }

    #[test]
    fn near_regular_mode() {
        // K_{20,22}: degrees 20 and 22, ratio 1.1
        let g = complete_bipartite(20, 22);
        assert!(regular_pseudo_model(&g, 2, 0, 10, false).is_err());
        let out = regular_pseudo_model(&g, 2, 0, 100, true).unwrap();
        let PseudoModelOutcome::Found { certificate, .. } = out else {
            panic!("two parts are easy at degree 20");
        };
        assert!(valid(&g, &certificate));
    }

    #[test]
    fn min_sum_examples() {
        let (c, m) = min_sum_colouring_pseudo_model(&complete(4)).unwrap();
        assert_eq!((c.palette_size, m.order()), (4, 4));
        let (c, m) = min_sum_colouring_pseudo_model(&cycle(5)).unwrap();
        assert_eq!((c.palette_size, m.order()), (3, 3));
        let (c, m) = min_sum_colouring_pseudo_model(&Graph::empty(4)).unwrap();
        assert_eq!((c.palette_size, m.order()), (1, 1));
        for class in c.classes() {
            assert!(is_independent(&Graph::empty(4), &class));
        }
    }

    #[test]
    fn edge_bound_examples() {
        assert!(matches!(
            edge_bound_check(&complete(5)).unwrap(),
            EdgeBoundVerdict::Witness { .. }
        ));
        assert!(matches!(
            edge_bound_check(&star(7)).unwrap(),
            EdgeBoundVerdict::BoundSatisfied { m: 7, bound: 13 }
        ));
        let octahedron = complete_multipartite(&[2, 2, 2]);
        assert_eq!(octahedron.m(), 12);
        let EdgeBoundVerdict::Witness { certificate, .. } = edge_bound_check(&octahedron).unwrap() else {
            panic!("12 > 9 edges");
        };
        assert!(valid(&octahedron, &certificate));
    }
}
