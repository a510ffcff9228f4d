//! Seeded `G(n, p)` harness: sampling, certified lower bounds on the
//! dominating Hadwiger number, greedy colouring upper bounds, and sweeps.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::colouring::{greedy_colouring, Colouring};
use crate::error::{Error, Result};
use crate::generators::gnp;
use crate::graph::{Graph, VertexSet};
use crate::models::{ensure_valid, CliqueModel};

/// Parameters of one `G(n, p)` sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpSpec {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        check_n_p(n, p)?;
        Ok(GnpSpec { n, p, seed })
    }

    /// `b = 1 / (1 - p)`.
    pub fn b(&self) -> f64 {
        1.0 / (1.0 - self.p)
    }
}

fn check_n_p(n: usize, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    Ok(())
}

/// `log_b n` with `b = 1 / (1 - p)`.
pub fn log_b(n: usize, p: f64) -> f64 {
    (n as f64).ln() / (1.0 / (1.0 - p)).ln()
}

/// The crate-wide RNG: ChaCha8 seeded from a `u64`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Samples `G(n, p)` from a ChaCha8 stream seeded with `spec.seed`.
pub fn sample_gnp(spec: &GnpSpec) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    gnp(spec.n, spec.p, &mut rng)
}

// ---------------------------------------------------------------------------
// Partition lower bound
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Forward,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionBound {
    pub t: usize,
    pub certificate: CliqueModel,
    pub part_size: usize,
    /// Number of parts before repairs.
    pub initial_parts: usize,
    /// Parts dropped because they induce a disconnected subgraph.
    pub bad_parts: usize,
    pub orientation: Orientation,
}

/// `⌈(1 + ε) log_b n⌉`, at least 1.
pub fn part_size(n: usize, epsilon: f64, p: f64) -> usize {
    ((1.0 + epsilon) * log_b(n, p)).ceil().max(1.0) as usize
}

/// Certified lower bound from an equal-size partition.
///
/// Vertices are cut into consecutive blocks of [`part_size`] (leftovers join
/// the last block). Blocks inducing disconnected subgraphs are dropped; the
/// rest are scanned in order and a block is kept only if every kept block
/// before it dominates it. Both the forward and the reversed block order are
/// tried and the larger result wins (forward on ties).
pub fn domhad_lower_bound(g: &Graph, epsilon: f64, p: f64) -> Result<PartitionBound> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    check_n_p(g.n(), p)?;
    domhad_lower_bound_with_part_size(g, part_size(g.n(), epsilon, p))
}

/// [`domhad_lower_bound`] with an explicit block size.
pub fn domhad_lower_bound_with_part_size(g: &Graph, size: usize) -> Result<PartitionBound> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Domain("graph must be non-empty".into()));
    }
    if size == 0 {
        return Err(Error::Domain("part size must be positive".into()));
    }
    let count = (n / size).max(1);
    let mut blocks: Vec<VertexSet> = (0..count)
        .map(|i| {
            let end = if i + 1 == count { n } else { (i + 1) * size };
            VertexSet::from_vertices(i * size..end)
        })
        .collect();
    let before = blocks.len();
    blocks.retain(|b| crate::graph::is_connected_set(g, b));
    let bad_parts = before - blocks.len();

    let forward = repair(g, blocks.iter());
    let reversed = repair(g, blocks.iter().rev());
    let (parts, orientation) = if reversed.len() > forward.len() {
        (reversed, Orientation::Reversed)
    } else {
        (forward, Orientation::Forward)
    };
    let certificate = CliqueModel::dominating(parts);
    ensure_valid(g, &certificate, "partition lower bound")?;
    Ok(PartitionBound {
        t: certificate.order(),
        certificate,
        part_size: size,
        initial_parts: before,
        bad_parts,
        orientation,
    })
}

fn repair<'a>(g: &Graph, blocks: impl Iterator<Item = &'a VertexSet>) -> Vec<VertexSet> {
    let n = g.n();
    let mut kept: Vec<VertexSet> = Vec::new();
    let mut owner = vec![usize::MAX; n];
    for b in blocks {
        let ok = b.iter().all(|v| {
            let mut seen = vec![false; kept.len()];
            let mut hits = 0;
            for &w in g.neighbours(v) {
                let k = owner[w];
                if k != usize::MAX && !seen[k] {
                    seen[k] = true;
                    hits += 1;
                }
            }
            hits == kept.len()
        });
        if ok {
            for v in b.iter() {
                owner[v] = kept.len();
            }
            kept.push(b.clone());
        }
    }
    kept
}

// ---------------------------------------------------------------------------
// Greedy domination chain
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn and_count(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| crate::graph::BitIter(w).map(move |b| i * 64 + b))
    }
    fn zip_with(&self, other: &Bits, f: impl Fn(u64, u64) -> u64) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

/// Dominating model grown part by part.
///
/// With `R` the vertices still usable (initially all), each part starts at a
/// vertex of largest degree in `G[R]` and absorbs neighbours while that brings
/// at least two further vertices of `R` into its neighbourhood. The next `R`
/// is the part's neighbourhood inside `R`, so every later part is dominated by
/// every earlier one.
pub fn greedy_domination_chain(g: &Graph) -> Result<CliqueModel> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Domain("graph must be non-empty".into()));
    }
    let adj: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = Bits::new(n);
            for &w in g.neighbours(v) {
                b.set(w);
            }
            b
        })
        .collect();
    let mut r = Bits::new(n);
    (0..n).for_each(|v| r.set(v));
    let mut parts = Vec::new();
    while r.count() > 0 {
        let start = r
            .iter()
            .max_by_key(|&v| (adj[v].and_count(&r), std::cmp::Reverse(v)))
            .expect("R is non-empty");
        let mut part = vec![start];
        let mut in_part = Bits::new(n);
        in_part.set(start);
        let mut cov = adj[start].zip_with(&r, |a, b| a & b);
        loop {
            let unc = r.zip_with(&cov, |a, b| a & !b).zip_with(&in_part, |a, b| a & !b);
            if unc.count() == 0 {
                break;
            }
            let best = cov
                .iter()
                .map(|c| (adj[c].and_count(&unc), c))
                .max_by_key(|&(gain, c)| (gain, std::cmp::Reverse(c)));
            match best {
                Some((gain, c)) if gain > 1 => {
                    part.push(c);
                    in_part.set(c);
                    cov = cov.zip_with(&adj[c], |a, b| a | b);
                    cov = cov.zip_with(&r, |a, b| a & b).zip_with(&in_part, |a, b| a & !b);
                }
                _ => break,
            }
        }
        parts.push(VertexSet::from_vertices(part));
        r = cov;
    }
    let model = CliqueModel::dominating(parts);
    ensure_valid(g, &model, "greedy domination chain")?;
    Ok(model)
}

// ---------------------------------------------------------------------------
// Colouring upper bound
// ---------------------------------------------------------------------------

pub const DEFAULT_CHI_RESTARTS: usize = 32;

/// Best greedy colouring over `restarts` uniformly random vertex orders.
pub fn chi_upper(g: &Graph, restarts: usize, seed: u64) -> Result<Colouring> {
    if restarts == 0 {
        return Err(Error::Domain("at least one restart is needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(chi_upper_with_rng(g, restarts, &mut rng))
}

fn chi_upper_with_rng<R: Rng>(g: &Graph, restarts: usize, rng: &mut R) -> Colouring {
    let mut order: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<Colouring> = None;
    for _ in 0..restarts {
        order.shuffle(rng);
        let c = greedy_colouring(g, &order);
        if best.as_ref().is_none_or(|b| c.palette_size < b.palette_size) {
            best = Some(c);
        }
    }
    best.expect("restarts > 0")
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

fn default_epsilon() -> f64 {
    0.5
}

fn default_restarts() -> usize {
    DEFAULT_CHI_RESTARTS
}

fn default_max_vertices() -> usize {
    4096
}

/// Sweep description, as read from a grid JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub n: Vec<usize>,
    pub p: Vec<f64>,
    pub trials: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    pub seed: u64,
    /// Orders whose certification rate is reported per cell.
    #[serde(default)]
    pub t: Vec<usize>,
    #[serde(default = "default_restarts")]
    pub chi_restarts: usize,
    /// Cells with more vertices are reported incomplete instead of run.
    #[serde(default = "default_max_vertices")]
    pub max_vertices: usize,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        for &n in &self.n {
            check_n_p(n, 0.5)?;
        }
        for &p in &self.p {
            check_n_p(1, p)?;
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Domain(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.chi_restarts == 0 {
            return Err(Error::Domain("chi_restarts must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Record wall-clock time per trial; makes reports non-reproducible.
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub m: usize,
    pub avg_degree: f64,
    /// Best certified order: the larger of the two bounds below.
    pub domhad_lower: usize,
    pub partition_lower: usize,
    pub chain_lower: usize,
    pub certificate: CliqueModel,
    /// SHA-256 of the certificate's compact JSON.
    pub certificate_sha256: String,
    pub chi_upper: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    fn of(values: impl Iterator<Item = f64> + Clone) -> Option<Summary> {
        let count = values.clone().count();
        if count == 0 {
            return None;
        }
        Some(Summary {
            mean: values.clone().sum::<f64>() / count as f64,
            min: values.clone().fold(f64::INFINITY, f64::min),
            max: values.fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRate {
    pub t: usize,
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub domhad_lower: Summary,
    pub partition_lower: Summary,
    pub chi_upper: Summary,
    pub avg_degree: Summary,
    /// `n / log_b n`.
    pub scale: f64,
    /// Mean `domhad_lower` divided by `scale`.
    pub normalised_mean: f64,
    /// Mean `partition_lower` divided by `scale`.
    pub partition_normalised_mean: f64,
    pub fraction_chi_le_domhad: f64,
    /// Smallest order certified in no trial of the cell.
    pub smallest_uncertified_t: usize,
    pub certified: Vec<CertifiedRate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub n: usize,
    pub p: f64,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub trials: Vec<TrialRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stats: Option<CellStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub grid: Grid,
    pub cells: Vec<CellReport>,
}

/// RNG for `(cell, trial)`: the master seed with stream `cell << 32 | trial`.
pub fn trial_rng(seed: u64, cell: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((cell as u64) << 32) | trial as u64);
    rng
}

pub fn certificate_hash(model: &CliqueModel) -> String {
    let json = serde_json::to_vec(model).expect("models serialize");
    hex::encode(Sha256::digest(json))
}

/// Runs every `(n, p)` cell of the grid; trials run in parallel on the
/// current rayon pool and are merged in `(cell, trial)` order.
pub fn run_sweep(grid: &Grid, options: &SweepOptions) -> Result<ExperimentReport> {
    grid.validate()?;
    let cells_spec: Vec<(usize, f64)> = grid
        .n
        .iter()
        .flat_map(|&n| grid.p.iter().map(move |&p| (n, p)))
        .collect();
    let mut cells = Vec::with_capacity(cells_spec.len());
    for (cell, &(n, p)) in cells_spec.iter().enumerate() {
        if n > grid.max_vertices {
            cells.push(CellReport {
                n,
                p,
                complete: false,
                note: Some(format!("n = {n} exceeds max_vertices = {}", grid.max_vertices)),
                trials: Vec::new(),
                stats: None,
            });
            continue;
        }
        let trials = (0..grid.trials)
            .into_par_iter()
            .map(|trial| run_trial(grid, options, cell, trial, n, p))
            .collect::<Result<Vec<_>>>()?;
        let stats = cell_stats(grid, n, p, &trials);
        cells.push(CellReport {
            n,
            p,
            complete: true,
            note: None,
            trials,
            stats,
        });
    }
    Ok(ExperimentReport {
        grid: grid.clone(),
        cells,
    })
}

fn run_trial(grid: &Grid, options: &SweepOptions, cell: usize, trial: usize, n: usize, p: f64) -> Result<TrialRecord> {
    let started = Instant::now();
    let mut rng = trial_rng(grid.seed, cell, trial);
    let g = gnp(n, p, &mut rng);
    let partition = domhad_lower_bound(&g, grid.epsilon, p)?;
    let chain = greedy_domination_chain(&g)?;
    let certificate = if chain.order() > partition.t {
        chain.clone()
    } else {
        partition.certificate.clone()
    };
    let colouring = chi_upper_with_rng(&g, grid.chi_restarts, &mut rng);
    Ok(TrialRecord {
        trial,
        m: g.m(),
        avg_degree: g.average_degree(),
        domhad_lower: certificate.order(),
        partition_lower: partition.t,
        chain_lower: chain.order(),
        certificate_sha256: certificate_hash(&certificate),
        certificate,
        chi_upper: colouring.palette_size,
        runtime_ms: options.timings.then(|| started.elapsed().as_secs_f64() * 1e3),
    })
}

fn cell_stats(grid: &Grid, n: usize, p: f64, trials: &[TrialRecord]) -> Option<CellStats> {
    let domhad_lower = Summary::of(trials.iter().map(|t| t.domhad_lower as f64))?;
    let scale = n as f64 / log_b(n, p);
    let count = trials.len() as f64;
    let best = trials.iter().map(|t| t.domhad_lower).max().unwrap_or(0);
    let partition_lower = Summary::of(trials.iter().map(|t| t.partition_lower as f64))?;
    let normalise = |x: f64| if scale.is_finite() { x / scale } else { 0.0 };
    Some(CellStats {
        normalised_mean: normalise(domhad_lower.mean),
        partition_normalised_mean: normalise(partition_lower.mean),
        domhad_lower,
        partition_lower,
        chi_upper: Summary::of(trials.iter().map(|t| t.chi_upper as f64))?,
        avg_degree: Summary::of(trials.iter().map(|t| t.avg_degree))?,
        scale,
        fraction_chi_le_domhad: trials.iter().filter(|t| t.chi_upper <= t.domhad_lower).count() as f64 / count,
        smallest_uncertified_t: best + 1,
        certified: grid
            .t
            .iter()
            .map(|&t| CertifiedRate {
                t,
                fraction: trials.iter().filter(|r| r.domhad_lower >= t).count() as f64 / count,
            })
            .collect(),
    })
}

/// CSV rows `n,p,trial,domhad_lower,chi_upper,avg_degree,runtime_ms`.
pub fn report_rows(report: &ExperimentReport) -> Vec<[String; 7]> {
    report
        .cells
        .iter()
        .flat_map(|c| {
            c.trials.iter().map(move |t| {
                [
                    c.n.to_string(),
                    c.p.to_string(),
                    t.trial.to_string(),
                    t.domhad_lower.to_string(),
                    t.chi_upper.to_string(),
                    t.avg_degree.to_string(),
                    t.runtime_ms.map(|r| r.to_string()).unwrap_or_default(),
                ]
            })
        })
        .collect()
}

pub const CSV_HEADER: [&str; 7] = [
    "n",
    "p",
    "trial",
    "domhad_lower",
    "chi_upper",
    "avg_degree",
    "runtime_ms",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle};
    use crate::models::verify_model;

    #[test]
    fn sampling_is_reproducible() {
        let spec = GnpSpec::new(40, 0.3, 17).unwrap();
        assert_eq!(sample_gnp(&spec), sample_gnp(&spec));
        assert!(GnpSpec::new(5, 1.0, 0).is_err());
        assert!(GnpSpec::new(0, 0.5, 0).is_err());
        assert!((GnpSpec::new(3, 0.5, 0).unwrap().b() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_identity_partition() {
        let g = complete(32);
        let b = domhad_lower_bound_with_part_size(&g, 1).unwrap();
        assert_eq!(b.t, 32);
        assert_eq!(
            b.certificate,
            CliqueModel::singletons(crate::Flavour::Dominating, 0..32)
        );
    }

    #[test]
    fn part_size_uses_log_base_b() {
        // log_2 256 = 8, (1.5)(8) = 12
        assert_eq!(part_size(256, 0.5, 0.5), 12);
        // b = 10 at p = 0.9: log_10 64 ≈ 1.806, 1.5 * 1.806 ≈ 2.71
        assert_eq!(part_size(64, 0.5, 0.9), 3);
    }

    #[test]
    fn chain_on_small_graphs() {
        assert_eq!(greedy_domination_chain(&complete(6)).unwrap().order(), 6);
        let c5 = cycle(5);
        let m = greedy_domination_chain(&c5).unwrap();
        assert!(verify_model(&c5, &m).unwrap().is_valid());
    }

    #[test]
    fn chi_upper_examples() {
        assert_eq!(chi_upper(&complete(7), 32, 1).unwrap().palette_size, 7);
        assert_eq!(chi_upper(&cycle(5), 32, 1).unwrap().palette_size, 3);
        assert_eq!(chi_upper(&complete_bipartite(4, 4), 64, 1).unwrap().palette_size, 2);
    }

    #[test]
    fn empty_grid_gives_empty_report() {
        let grid = Grid {
            n: vec![],
            p: vec![0.5],
            trials: 3,
            epsilon: 0.5,
            seed: 1,
            t: vec![],
            chi_restarts: 4,
            max_vertices: 100,
        };
        assert!(run_sweep(&grid, &SweepOptions::default()).unwrap().cells.is_empty());
    }

    #[test]
    fn oversized_cells_are_marked_incomplete() {
        let grid: Grid =
            serde_json::from_str(r#"{"n":[20,500],"p":[0.5],"trials":2,"seed":3,"max_vertices":100}"#).unwrap();
        let report = run_sweep(&grid, &SweepOptions::default()).unwrap();
        assert!(report.cells[0].complete && report.cells[0].trials.len() == 2);
        assert!(!report.cells[1].complete && report.cells[1].note.is_some());
    }
}
