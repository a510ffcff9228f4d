//! Clique models and their verifiers.
//!
//! Three flavours share one representation:
//!
//! * `plain`: parts connected, every pair of parts joined by an edge (a `K_t` minor).
//! * `dominating`: parts connected and, for `i < j`, every vertex of part `j`
//!   has a neighbour in part `i`.
//! * `pseudo-dominating`: the domination condition without connectivity.
//!
//! Part indices in verdicts are 0-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_connected_set, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavour {
    Plain,
    Dominating,
    PseudoDominating,
}

impl std::fmt::Display for Flavour {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavour::Plain => "plain",
            Flavour::Dominating => "dominating",
            Flavour::PseudoDominating => "pseudo-dominating",
        })
    }
}

/// An ordered sequence of vertex sets `(T_1, ..., T_t)` with a flavour tag.
/// JSON form: `{"flavour": "dominating", "parts": [[0, 1], [2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliqueModel {
    pub flavour: Flavour,
    pub parts: Vec<VertexSet>,
}

impl CliqueModel {
    pub fn new(flavour: Flavour, parts: Vec<VertexSet>) -> Self {
        CliqueModel { flavour, parts }
    }

    pub fn dominating(parts: Vec<VertexSet>) -> Self {
        Self::new(Flavour::Dominating, parts)
    }

    /// One singleton part per vertex, in the given order.
    pub fn singletons(flavour: Flavour, vertices: impl IntoIterator<Item = usize>) -> Self {
        Self::new(flavour, vertices.into_iter().map(VertexSet::singleton).collect())
    }

    /// `t`, the number of parts.
    pub fn order(&self) -> usize {
        self.parts.len()
    }

    pub fn with_flavour(&self, flavour: Flavour) -> Self {
        CliqueModel {
            flavour,
            parts: self.parts.clone(),
        }
    }

    /// Every vertex used by some part.
    pub fn support(&self) -> VertexSet {
        self.parts.iter().flat_map(VertexSet::iter).collect()
    }

    /// Maps every vertex through `map` (e.g. from a subgraph back to its host).
    pub fn relabel(&self, map: &[usize]) -> Self {
        CliqueModel {
            flavour: self.flavour,
            parts: self.parts.iter().map(|p| p.iter().map(|v| map[v]).collect()).collect(),
        }
    }

    /// The first `t` parts.
    pub fn prefix(&self, t: usize) -> Self {
        CliqueModel {
            flavour: self.flavour,
            parts: self.parts[..t.min(self.parts.len())].to_vec(),
        }
    }
}

/// Why a model failed verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    EmptyPart {
        part: usize,
    },
    Overlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
    Disconnected {
        part: usize,
    },
    /// `vertex` lies in part `j` but has no neighbour in part `i < j`.
    NotDominated {
        i: usize,
        j: usize,
        vertex: usize,
    },
    /// Plain models: no edge between parts `i` and `j`.
    NotAdjacent {
        i: usize,
        j: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::EmptyPart { part } => write!(f, "part {part} is empty"),
            Violation::Overlap { vertex, first, second } => {
                write!(f, "vertex {vertex} lies in parts {first} and {second}")
            }
            Violation::Disconnected { part } => write!(f, "part {part} is not connected"),
            Violation::NotDominated { i, j, vertex } => {
                write!(f, "vertex {vertex} of part {j} has no neighbour in part {i}")
            }
            Violation::NotAdjacent { i, j } => write!(f, "no edge between parts {i} and {j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Valid,
    Violation { violation: Violation },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl From<Violation> for Verdict {
    fn from(violation: Violation) -> Self {
        Verdict::Violation { violation }
    }
}

/// Checks `m` against `g` according to its flavour. Out-of-range vertices are
/// a domain error rather than a violation.
pub fn verify_model(g: &Graph, m: &CliqueModel) -> Result<Verdict> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (idx, part) in m.parts.iter().enumerate() {
        if part.is_empty() {
            return Ok(Violation::EmptyPart { part: idx }.into());
        }
        for v in part.iter() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if owner[v] != usize::MAX {
                return Ok(Violation::Overlap {
                    vertex: v,
                    first: owner[v],
                    second: idx,
                }
                .into());
            }
            owner[v] = idx;
        }
    }
    if m.flavour != Flavour::PseudoDominating {
        if let Some(part) = m.parts.iter().position(|p| !is_connected_set(g, p)) {
            return Ok(Violation::Disconnected { part }.into());
        }
    }
    let t = m.parts.len();
    match m.flavour {
        Flavour::Plain => {
            // touches[i][j]: some edge between parts i and j
            let mut touches = vec![vec![false; t]; t];
            for u in 0..n {
                if owner[u] == usize::MAX {
                    continue;
                }
                for &w in g.neighbours(u) {
                    if owner[w] != usize::MAX {
                        touches[owner[u]][owner[w]] = true;
                    }
                }
            }
            for j in 1..t {
                for i in 0..j {
                    if !touches[i][j] {
                        return Ok(Violation::NotAdjacent { i, j }.into());
                    }
                }
            }
        }
        Flavour::Dominating | Flavour::PseudoDominating => {
            let mut seen = vec![false; t];
            for j in 1..t {
                for v in m.parts[j].iter() {
                    seen.iter_mut().for_each(|s| *s = false);
                    for &w in g.neighbours(v) {
                        if owner[w] != usize::MAX {
                            seen[owner[w]] = true;
                        }
                    }
                    if let Some(i) = (0..j).find(|&i| !seen[i]) {
                        return Ok(Violation::NotDominated { i, j, vertex: v }.into());
                    }
                }
            }
        }
    }
    Ok(Verdict::Valid)
}

/// Verifies a model a construction is about to return, turning failure into
/// [`Error::Internal`].
pub(crate) fn ensure_valid(g: &Graph, m: &CliqueModel, what: &str) -> Result<()> {
    match verify_model(g, m)? {
        Verdict::Valid => Ok(()),
        Verdict::Violation { violation } => Err(Error::Internal(format!(
            "{what} produced an invalid {} model: {violation}",
            m.flavour
        ))),
    }
}

/// Exhaustive degree-path search is used up to this order.
pub const DEGREE_PATH_EXACT_LIMIT: usize = 20;

/// Why a graph cannot contain a dominating `K_t`-model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Refutation {
    EmptyGraph,
    /// `t >= max_degree + 2`.
    MaxDegree {
        max_degree: usize,
    },
    /// No path `v_1..v_t` with `deg(v_i) >= i` (`i < t`) and `deg(v_t) >= t - 1`.
    NoDegreePath {
        exhaustive: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DegreePathVerdict {
    /// Not refuted. `path` is a witness path when the exhaustive search ran.
    Possible {
        path: Option<Vec<usize>>,
    },
    Impossible {
        refutation: Refutation,
    },
}

impl DegreePathVerdict {
    pub fn is_impossible(&self) -> bool {
        matches!(self, DegreePathVerdict::Impossible { .. })
    }
}

/// Minimum degree demanded of the `i`-th path vertex (1-based) for order `t`.
fn degree_threshold(i: usize, t: usize) -> usize {
    if i == t {
        t - 1
    } else {
        i
    }
}

/// The corollary test: no dominating `K_t`-model when `t >= Δ + 2`.
pub fn max_degree_refutes(g: &Graph, t: usize) -> bool {
    g.n() > 0 && t >= g.max_degree() + 2
}

/// `walk[i][v]`: a walk `v = w_i, ..., w_t` exists with every `w_k` meeting
/// its threshold. Necessary for the path version.
fn walk_table(g: &Graph, t: usize) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut walk = vec![vec![false; n]; t + 1];
    for v in 0..n {
        walk[t][v] = g.degree(v) >= degree_threshold(t, t);
    }
    for i in (1..t).rev() {
        for v in 0..n {
            walk[i][v] = g.degree(v) >= i && g.neighbours(v).iter().any(|&w| walk[i + 1][w]);
        }
    }
    walk
}

/// Exhaustive search for a degree path `v_1, ..., v_t` (distinct vertices).
/// Walk feasibility per `(vertex, index)` prunes the search.
pub fn find_degree_path(g: &Graph, t: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if t == 0 || t > n {
        return None;
    }
    let walk = walk_table(g, t);
    let mut used = vec![false; n];
    let mut path = Vec::with_capacity(t);

    fn extend(g: &Graph, t: usize, walk: &[Vec<bool>], used: &mut [bool], path: &mut Vec<usize>) -> bool {
        let i = path.len();
        if i == t {
            return true;
        }
        let last = *path.last().expect("non-empty");
        for &w in g.neighbours(last) {
            if !used[w] && walk[i + 1][w] {
                used[w] = true;
                path.push(w);
                if extend(g, t, walk, used, path) {
                    return true;
                }
                path.pop();
                used[w] = false;
            }
        }
        false
    }

    for v in 0..n {
        if !walk[1][v] {
            continue;
        }
        used[v] = true;
        path.push(v);
        if extend(g, t, &walk, &mut used, &mut path) {
            return Some(path);
        }
        path.pop();
        used[v] = false;
    }
    None
}

/// Necessary-condition check for a dominating `K_t`-model.
///
/// `Impossible` is a proof of absence; `Possible` only means the test failed
/// to refute. The exhaustive path search runs for `n <= DEGREE_PATH_EXACT_LIMIT`;
/// larger graphs use the walk relaxation, which is still sound for refutation.
pub fn check_degree_path(g: &Graph, t: usize) -> DegreePathVerdict {
    assert!(t >= 1, "order must be positive");
    if g.n() == 0 {
        return DegreePathVerdict::Impossible {
            refutation: Refutation::EmptyGraph,
        };
    }
    if max_degree_refutes(g, t) {
        return DegreePathVerdict::Impossible {
            refutation: Refutation::MaxDegree {
                max_degree: g.max_degree(),
            },
        };
    }
    if g.n() <= DEGREE_PATH_EXACT_LIMIT {
        match find_degree_path(g, t) {
            Some(path) => DegreePathVerdict::Possible { path: Some(path) },
            None => DegreePathVerdict::Impossible {
                refutation: Refutation::NoDegreePath { exhaustive: true },
            },
        }
    } else if walk_table(g, t)[1].iter().any(|&b| b) {
        DegreePathVerdict::Possible { path: None }
    } else {
        DegreePathVerdict::Impossible {
            refutation: Refutation::NoDegreePath { exhaustive: false },
        }
    }
}
