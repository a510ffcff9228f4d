//! Connected dominating sets paired with independent sets, rooted tree
//! partitions built from them, and the resulting independence-number bound.

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, is_connected_set, is_independent, Graph, VertexSet};
use crate::models::{ensure_valid, verify_model, CliqueModel, Verdict};

/// A connected dominating set `dominating` and an independent `independent ⊆ dominating`
/// with `|dominating| = 2 |independent| - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingPair {
    pub dominating: VertexSet,
    pub independent: VertexSet,
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "graph must be connected and non-empty (has {} vertices, {} components)",
            g.n(),
            g.components().len()
        )))
    }
}

/// Grows `D = I = {min vertex}`: while `D` is not dominating, take the
/// smallest `y` at distance 2 from `D` and the smallest `x` adjacent to both,
/// then add `x, y` to `D` and `y` to `I`.
pub fn dominating_independent_pair(g: &Graph) -> Result<DominatingPair> {
    require_connected(g)?;
    let start = 0;
    let mut dominating = vec![start];
    let mut independent = vec![start];
    loop {
        let dist = bfs_distances(g, &dominating);
        let Some(y) = (0..g.n()).find(|&v| dist[v] == Some(2)) else {
            break;
        };
        let x = g
            .neighbours(y)
            .iter()
            .copied()
            .find(|&x| dist[x] == Some(1))
            .expect("a vertex at distance 2 has a neighbour at distance 1");
        dominating.extend([x, y]);
        independent.push(y);
    }
    Ok(DominatingPair {
        dominating: VertexSet::from_vertices(dominating),
        independent: VertexSet::from_vertices(independent),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Number of nodes on the path to the root, root included (the root has depth 1).
    pub depth: usize,
    pub part: VertexSet,
    pub indep: VertexSet,
}

/// Nodes are stored in preorder; children of a node follow the order of the
/// components they came from (by smallest vertex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePartition {
    pub nodes: Vec<TreeNode>,
}

impl TreePartition {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    /// Maximum node depth.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = &TreeNode> + '_ {
        self.nodes.iter().filter(move |n| n.parent == Some(id))
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> + '_ {
        self.nodes
            .iter()
            .filter(|n| !self.nodes.iter().any(|c| c.parent == Some(n.id)))
    }

    /// Node ids from the root down to `id`.
    pub fn path_to(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// The sequence of parts from the root to `id` as a dominating model.
    pub fn path_model(&self, id: usize) -> CliqueModel {
        CliqueModel::dominating(
            self.path_to(id)
                .into_iter()
                .map(|i| self.nodes[i].part.clone())
                .collect(),
        )
    }

    fn is_ancestor(&self, a: usize, mut d: usize) -> bool {
        loop {
            if a == d {
                return true;
            }
            match self.nodes[d].parent {
                Some(p) => d = p,
                None => return false,
            }
        }
    }
}

/// Builds the tree partition: the root part is the dominating set of
/// [`dominating_independent_pair`], and each component of `G - D` becomes a
/// recursively partitioned subtree.
pub fn tree_partition(g: &Graph) -> Result<TreePartition> {
    require_connected(g)?;
    let mut nodes = Vec::new();
    let all: Vec<usize> = (0..g.n()).collect();
    build_subtree(g, &all, None, 1, &mut nodes)?;
    Ok(TreePartition { nodes })
}

fn build_subtree(
    host: &Graph,
    vertices: &[usize],
    parent: Option<usize>,
    depth: usize,
    nodes: &mut Vec<TreeNode>,
) -> Result<()> {
    // Recursion depth is bounded by n; fine for the graph sizes this is used on.
    let (sub, map) = host.induced(vertices);
    let pair = dominating_independent_pair(&sub)?;
    let id = nodes.len();
    nodes.push(TreeNode {
        id,
        parent,
        depth,
        part: pair.dominating.iter().map(|v| map[v]).collect(),
        indep: pair.independent.iter().map(|v| map[v]).collect(),
    });
    let rest: Vec<usize> = (0..sub.n()).filter(|&v| !pair.dominating.contains(v)).collect();
    let (remainder, rest_map) = sub.induced(&rest);
    for comp in remainder.components() {
        let global: Vec<usize> = comp.iter().map(|v| map[rest_map[v]]).collect();
        build_subtree(host, &global, Some(id), depth + 1, nodes)?;
    }
    Ok(())
}

/// Which tree-partition invariant failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PartitionViolation {
    NotAPartition { vertex: usize },
    PartNotConnected { node: usize },
    BadIndependentSet { node: usize },
    SizeMismatch { node: usize, part: usize, indep: usize },
    CrossEdge { u: usize, v: usize, a: usize, b: usize },
    LeafPathNotDominating { leaf: usize },
}

/// Checks all four invariants: the parts partition `V(G)` into connected
/// sets; each `indep` is an independent subset of its part with
/// `|part| = 2 |indep| - 1`; edges only join ancestor/descendant parts; and
/// every root-to-leaf sequence of parts is a dominating clique model.
pub fn check_tree_partition(g: &Graph, tp: &TreePartition) -> std::result::Result<(), PartitionViolation> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for node in &tp.nodes {
        for v in node.part.iter() {
            if v >= n || owner[v] != usize::MAX {
                return Err(PartitionViolation::NotAPartition { vertex: v });
            }
            owner[v] = node.id;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(PartitionViolation::NotAPartition { vertex: v });
    }
    for node in &tp.nodes {
        if !is_connected_set(g, &node.part) {
            return Err(PartitionViolation::PartNotConnected { node: node.id });
        }
        if !node.indep.iter().all(|v| node.part.contains(v)) || !is_independent(g, &node.indep) {
            return Err(PartitionViolation::BadIndependentSet { node: node.id });
        }
        if node.part.len() + 1 != 2 * node.indep.len() {
            return Err(PartitionViolation::SizeMismatch {
                node: node.id,
                part: node.part.len(),
                indep: node.indep.len(),
            });
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if !tp.is_ancestor(a, b) && !tp.is_ancestor(b, a) {
            return Err(PartitionViolation::CrossEdge { u, v, a, b });
        }
    }
    for leaf in tp.leaves() {
        if !matches!(verify_model(g, &tp.path_model(leaf.id)), Ok(Verdict::Valid)) {
            return Err(PartitionViolation::LeafPathNotDominating { leaf: leaf.id });
        }
    }
    Ok(())
}

/// Either an `h`-colourable induced subgraph on at least `(n + h) / 2`
/// vertices, or a dominating `K_t`-model read off a deep root path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum ColourableOutcome {
    Colourable {
        vertices: VertexSet,
        /// `colours[k]` is the colour of the `k`-th member of `vertices`.
        colours: Vec<usize>,
        h: usize,
    },
    Model {
        certificate: CliqueModel,
    },
}

impl ColourableOutcome {
    /// The colouring of `G[X]` with `X` relabelled `0..|X|` in increasing order.
    pub fn restricted_colouring(&self) -> Option<Colouring> {
        match self {
            ColourableOutcome::Colourable { colours, .. } => Some(Colouring::from_colours(colours.clone())),
            ColourableOutcome::Model { .. } => None,
        }
    }
}

/// Takes `X` as the union of the per-part independent sets of
/// [`tree_partition`], coloured by node depth (colour `depth - 1`). If the tree
/// reaches depth `t`, returns the dominating `K_t`-model on the first `t`
/// parts of a deepest root path instead.
pub fn large_colourable_subgraph(g: &Graph, t: usize) -> Result<ColourableOutcome> {
    if t < 2 {
        return Err(Error::Domain("order t must be at least 2".into()));
    }
    let tp = tree_partition(g)?;
    colourable_from_partition(g, &tp, t)
}

fn colourable_from_partition(g: &Graph, tp: &TreePartition, t: usize) -> Result<ColourableOutcome> {
    let h = tp.height();
    if h >= t {
        let deepest = tp
            .nodes
            .iter()
            .max_by_key(|n| (n.depth, std::cmp::Reverse(n.id)))
            .expect("non-empty");
        let certificate = tp.path_model(deepest.id).prefix(t);
        ensure_valid(g, &certificate, "tree partition path")?;
        return Ok(ColourableOutcome::Model { certificate });
    }
    let mut colour_of: Vec<(usize, usize)> = tp
        .nodes
        .iter()
        .flat_map(|node| node.indep.iter().map(move |v| (v, node.depth - 1)))
        .collect();
    colour_of.sort_unstable();
    let vertices: VertexSet = colour_of.iter().map(|&(v, _)| v).collect();
    let colours = colour_of.into_iter().map(|(_, c)| c).collect();
    Ok(ColourableOutcome::Colourable { vertices, colours, h })
}

/// Independent-set bound for graphs with no dominating `K_t`-model: the
/// largest depth class of [`large_colourable_subgraph`], computed per
/// component so disconnected graphs are accepted. On graphs with no dominating
/// `K_t`-model the result has at least `ceil((n + t - 1) / (2t - 2))` vertices.
/// Returns the model instead when some component's tree reaches depth `t`.
pub fn independence_bound(g: &Graph, t: usize) -> Result<IndependenceOutcome> {
    if t < 2 {
        return Err(Error::Domain("order t must be at least 2".into()));
    }
    if g.n() == 0 {
        return Err(Error::Precondition("graph must be non-empty".into()));
    }
    // colour class -> vertices, accumulated across components
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for comp in g.components() {
        let (sub, map) = g.induced(comp.as_slice());
        let tp = tree_partition(&sub)?;
        match colourable_from_partition(&sub, &tp, t)? {
            ColourableOutcome::Model { certificate } => {
                return Ok(IndependenceOutcome::Model {
                    certificate: certificate.relabel(&map),
                })
            }
            ColourableOutcome::Colourable { vertices, colours, .. } => {
                for (v, c) in vertices.iter().zip(colours) {
                    if c >= classes.len() {
                        classes.resize(c + 1, Vec::new());
                    }
                    classes[c].push(map[v]);
                }
            }
        }
    }
    let best = classes
        .into_iter()
        .enumerate()
        .max_by_key(|(c, class)| (class.len(), std::cmp::Reverse(*c)))
        .map(|(_, class)| VertexSet::from_vertices(class))
        .unwrap_or_default();
    debug_assert!(is_independent(g, &best));
    Ok(IndependenceOutcome::Independent { set: best })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum IndependenceOutcome {
    Independent { set: VertexSet },
    Model { certificate: CliqueModel },
}

/// `ceil((n + t - 1) / (2t - 2))`.
pub fn independence_target(n: usize, t: usize) -> usize {
    (n + t - 1).div_ceil(2 * t - 2)
}
