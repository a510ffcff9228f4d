use std::fs;
use std::io::{self, Read, Write};
use std::time::Duration;

use domkt::constructive::{self, DichotomyResult, EdgeBoundVerdict, PseudoModelOutcome};
use domkt::decomposition::{self, IndependenceOutcome};
use domkt::exact::{self, MinorOutcome, SearchBudget, SearchStatus};
use domkt::experiments::{self, Grid, SweepOptions};
use domkt::io::{parse_graph, serialize_graph};
use domkt::models::verify_model;
use domkt::{generators, CliqueModel, Graph, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, FormatArg, GenKind, GraphInput, Method};

pub const EXIT_OK: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_ERROR: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    Certificate,
    Refuted,
    Unknown,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok | Status::Certificate => EXIT_OK,
            Status::Refuted => EXIT_REFUTED,
            Status::Unknown => EXIT_UNKNOWN,
        }
    }
}

struct Outcome {
    status: Status,
    result: Value,
    summary: String,
}

type CmdResult = Result<Outcome, String>;

fn outcome(status: Status, result: impl Serialize, summary: impl Into<String>) -> CmdResult {
    Ok(Outcome {
        status,
        result: serde_json::to_value(result).map_err(|e| e.to_string())?,
        summary: summary.into(),
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Verify { .. } => "verify",
        Command::Find { .. } => "find",
        Command::Construct { .. } => "construct",
        Command::Colour { .. } => "colour",
        Command::Decompose { .. } => "decompose",
        Command::IndepSet { .. } => "indep-set",
        Command::Experiment { .. } => "experiment",
        Command::Gen { .. } => "gen",
    }
}

pub fn dispatch(cmd: Command) -> u8 {
    let name = command_name(&cmd);
    let result = match cmd {
        Command::Gen { kind, format } => return gen(kind, format),
        Command::Verify { graph, model } => verify(&graph, &model),
        Command::Find {
            graph,
            exact: _,
            t,
            pseudo,
            minor,
            budget_nodes,
            budget_seconds,
            max_vertices,
        } => find(&graph, t, pseudo, minor, budget_nodes, budget_seconds, max_vertices),
        Command::Construct {
            graph,
            method,
            t,
            c,
            seed,
            root,
            max_attempts,
            near_regular,
        } => construct(&graph, method, t, c, seed, root, max_attempts, near_regular),
        Command::Colour { graph, t } => colour(&graph, t),
        Command::Decompose { graph } => decompose(&graph),
        Command::IndepSet { graph, t } => indep_set(&graph, t),
        Command::Experiment {
            grid,
            out,
            csv,
            jobs,
            timings,
        } => experiment(&grid, out.as_deref(), csv.as_deref(), jobs, timings),
    };
    let (doc, code) = match result {
        Ok(o) => {
            eprintln!("{name}: {}", o.summary);
            (
                json!({ "command": name, "status": o.status, "result": o.result }),
                o.status.exit_code(),
            )
        }
        Err(message) => {
            eprintln!("{name}: error: {message}");
            (
                json!({ "command": name, "status": "error", "error": message }),
                EXIT_ERROR,
            )
        }
    };
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{doc}");
    code
}

fn read_graph(input: &GraphInput) -> Result<Graph, String> {
    let text = match input.input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("reading stdin: {e}"))?;
            s
        }
        Some(path) => fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?,
    };
    parse_graph(&text, input.format.into()).map_err(|e| e.to_string())
}

fn need<T>(value: Option<T>, flag: &str, method: &str) -> Result<T, String> {
    value.ok_or_else(|| format!("{flag} is required for {method}"))
}

fn err(e: domkt::Error) -> String {
    e.to_string()
}

fn verify(input: &GraphInput, model_path: &str) -> CmdResult {
    let g = read_graph(input)?;
    let text = fs::read_to_string(model_path).map_err(|e| format!("reading {model_path}: {e}"))?;
    let model: CliqueModel = serde_json::from_str(&text).map_err(|e| format!("parsing model: {e}"))?;
    let verdict = verify_model(&g, &model).map_err(err)?;
    let summary = match &verdict {
        Verdict::Valid => format!("valid {:?} model of order {}", model.flavour, model.order()),
        Verdict::Violation { violation } => format!("invalid: {violation}"),
    };
    let status = if verdict.is_valid() {
        Status::Ok
    } else {
        Status::Refuted
    };
    outcome(status, json!({ "order": model.order(), "verdict": verdict }), summary)
}

fn find(
    input: &GraphInput,
    t: Option<usize>,
    pseudo: bool,
    minor: bool,
    budget_nodes: Option<u64>,
    budget_seconds: Option<f64>,
    max_vertices: Option<usize>,
) -> CmdResult {
    let g = read_graph(input)?;
    let mut budget = if pseudo || minor {
        SearchBudget::small()
    } else {
        SearchBudget::domhad()
    };
    if let Some(nodes) = budget_nodes {
        budget = budget.with_max_nodes(nodes);
    }
    if let Some(secs) = budget_seconds {
        let d = Duration::try_from_secs_f64(secs).map_err(|e| format!("--budget-seconds: {e}"))?;
        budget = budget.with_time_limit(d);
    }
    if let Some(v) = max_vertices {
        budget = budget.with_max_vertices(v);
    }

    if minor {
        let t = t.expect("clap enforces --t with --minor");
        let out = exact::has_clique_minor(&g, t, &budget).map_err(err)?;
        let (status, summary) = match &out {
            MinorOutcome::Found { .. } => (Status::Certificate, format!("K_{t} minor found")),
            MinorOutcome::Absent => (Status::Refuted, format!("no K_{t} minor")),
            MinorOutcome::Unknown => (Status::Unknown, "budget exhausted".to_string()),
        };
        let mut value = serde_json::to_value(&out).map_err(|e| e.to_string())?;
        value["t"] = json!(t);
        return outcome(status, value, summary);
    }

    let (res, label) = if pseudo {
        (
            exact::exact_pseudo_domhad(&g, &budget).map_err(err)?,
            "pseudo-dominating",
        )
    } else if let Some(t) = t {
        (
            exact::dominating_model_at_least(&g, t, &budget).map_err(err)?,
            "dominating",
        )
    } else {
        (exact::exact_domhad(&g, &budget).map_err(err)?, "dominating")
    };
    let (status, summary) = match (t.filter(|_| !pseudo), res.status) {
        (Some(target), _) if res.t >= target => (Status::Certificate, format!("{label} K_{target}-model found")),
        (Some(target), SearchStatus::Exact) => (
            Status::Refuted,
            format!("no {label} K_{target}-model (maximum is {})", res.t),
        ),
        (Some(target), SearchStatus::LowerBound) => (
            Status::Unknown,
            format!("budget exhausted below {target} (best {})", res.t),
        ),
        (None, SearchStatus::Exact) => (Status::Certificate, format!("maximum {label} order is {}", res.t)),
        (None, SearchStatus::LowerBound) => (Status::Unknown, format!("budget exhausted; order >= {}", res.t)),
    };
    outcome(status, res, summary)
}

#[allow(clippy::too_many_arguments)]
fn construct(
    input: &GraphInput,
    method: Method,
    t: Option<usize>,
    c: Option<f64>,
    seed: Option<u64>,
    root: Option<usize>,
    max_attempts: usize,
    near_regular: bool,
) -> CmdResult {
    let g = read_graph(input)?;
    let model_outcome = |m: CliqueModel| {
        let summary = format!("{:?} model of order {}", m.flavour, m.order());
        outcome(Status::Certificate, json!({ "certificate": m }), summary)
    };
    match method {
        Method::Mindeg3 => model_outcome(constructive::construct_k4_min_degree3(&g).map_err(err)?),
        Method::Avgdeg => {
            let t = need(t, "--t", "avgdeg")?;
            model_outcome(constructive::construct_avg_degree(&g, t, root).map_err(err)?)
        }
        Method::Dense => {
            let (t, c, seed) = (
                need(t, "--t", "dense")?,
                need(c, "--c", "dense")?,
                need(seed, "--seed", "dense")?,
            );
            model_outcome(constructive::construct_dense(&g, t, c, seed).map_err(err)?)
        }
        Method::Linear => {
            let (t, c, seed) = (
                need(t, "--t", "linear")?,
                need(c, "--c", "linear")?,
                need(seed, "--seed", "linear")?,
            );
            model_outcome(constructive::construct_linear_min_degree(&g, t, c, seed).map_err(err)?)
        }
        Method::RegularPseudo => {
            let (t, seed) = (
                need(t, "--t", "regular-pseudo")?,
                need(seed, "--seed", "regular-pseudo")?,
            );
            let out = constructive::regular_pseudo_model(&g, t, seed, max_attempts, near_regular).map_err(err)?;
            match &out {
                PseudoModelOutcome::Found { attempts, .. } => outcome(
                    Status::Certificate,
                    &out,
                    format!("pseudo-model after {attempts} attempts"),
                ),
                PseudoModelOutcome::Exhausted { attempts } => {
                    outcome(Status::Unknown, &out, format!("no pseudo-model in {attempts} attempts"))
                }
            }
        }
        Method::Minsum => {
            let (colouring, certificate) = constructive::min_sum_colouring_pseudo_model(&g).map_err(err)?;
            let summary = format!("locally minimal colouring with {} colours", colouring.palette_size);
            outcome(
                Status::Certificate,
                json!({ "colouring": colouring, "certificate": certificate }),
                summary,
            )
        }
        Method::EdgeBound => {
            let verdict = constructive::edge_bound_check(&g).map_err(err)?;
            match &verdict {
                EdgeBoundVerdict::BoundSatisfied { m, bound } => {
                    outcome(Status::Ok, &verdict, format!("m = {m} <= {bound}"))
                }
                EdgeBoundVerdict::Witness { m, bound, .. } => {
                    outcome(Status::Certificate, &verdict, format!("m = {m} > {bound}; K4 witness"))
                }
            }
        }
        Method::Cds => {
            let seed = need(seed, "--seed", "cds")?;
            let cds = constructive::find_connected_dominating_set(&g, seed).map_err(err)?;
            let summary = format!("connected dominating set of size {}", cds.set.len());
            outcome(Status::Ok, cds, summary)
        }
    }
}

fn colour(input: &GraphInput, t: usize) -> CmdResult {
    let g = read_graph(input)?;
    let res = constructive::colour_or_model(&g, t).map_err(err)?;
    let bound = constructive::palette_bound(t);
    match &res {
        DichotomyResult::Colouring { colouring } => outcome(
            Status::Ok,
            json!({ "palette_bound": bound, "outcome": res }),
            format!("proper colouring with {} <= {bound} colours", colouring.palette_size),
        ),
        DichotomyResult::Model { .. } => outcome(
            Status::Certificate,
            json!({ "palette_bound": bound, "outcome": res }),
            format!("dominating K_{t}-model"),
        ),
    }
}

fn decompose(input: &GraphInput) -> CmdResult {
    let g = read_graph(input)?;
    let mut components = Vec::new();
    let mut height = 0;
    for comp in g.components() {
        let (sub, map) = g.induced(comp.as_slice());
        let tp = decomposition::tree_partition(&sub).map_err(err)?;
        decomposition::check_tree_partition(&sub, &tp)
            .map_err(|v| format!("internal error: tree partition failed its check: {v:?}"))?;
        height = height.max(tp.height());
        let mut nodes = tp.nodes.clone();
        for node in &mut nodes {
            node.part = node.part.iter().map(|x| map[x]).collect();
            node.indep = node.indep.iter().map(|x| map[x]).collect();
        }
        components.push(json!({ "vertices": comp, "height": tp.height(), "nodes": nodes }));
    }
    let summary = format!("{} component(s), max height {height}", components.len());
    outcome(
        Status::Ok,
        json!({ "height": height, "components": components }),
        summary,
    )
}

fn indep_set(input: &GraphInput, t: usize) -> CmdResult {
    let g = read_graph(input)?;
    let res = decomposition::independence_bound(&g, t).map_err(err)?;
    let target = decomposition::independence_target(g.n(), t);
    match &res {
        IndependenceOutcome::Independent { set } => outcome(
            Status::Ok,
            json!({ "target": target, "size": set.len(), "outcome": res }),
            format!("independent set of size {} (target {target})", set.len()),
        ),
        IndependenceOutcome::Model { .. } => outcome(
            Status::Certificate,
            json!({ "target": target, "outcome": res }),
            format!("dominating K_{t}-model"),
        ),
    }
}

fn experiment(
    grid_path: &str,
    out: Option<&str>,
    csv_path: Option<&str>,
    jobs: Option<usize>,
    timings: bool,
) -> CmdResult {
    let text = fs::read_to_string(grid_path).map_err(|e| format!("reading {grid_path}: {e}"))?;
    let grid: Grid = serde_json::from_str(&text).map_err(|e| format!("parsing grid: {e}"))?;
    let options = SweepOptions { timings };
    let report = match jobs {
        Some(0) => return Err("--jobs must be positive".into()),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| e.to_string())?
            .install(|| experiments::run_sweep(&grid, &options)),
        None => experiments::run_sweep(&grid, &options),
    }
    .map_err(err)?;

    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path).map_err(|e| format!("writing {path}: {e}"))?;
        w.write_record(experiments::CSV_HEADER).map_err(|e| e.to_string())?;
        for row in experiments::report_rows(&report) {
            w.write_record(&row).map_err(|e| e.to_string())?;
        }
        w.flush().map_err(|e| e.to_string())?;
    }
    let trials: usize = report.cells.iter().map(|c| c.trials.len()).sum();
    let summary = format!("{} cell(s), {trials} trial(s)", report.cells.len());
    match out {
        Some(path) => {
            let body = serde_json::to_string(&report).map_err(|e| e.to_string())?;
            fs::write(path, body + "\n").map_err(|e| format!("writing {path}: {e}"))?;
            let cells: Vec<Value> = report
                .cells
                .iter()
                .map(|c| json!({ "n": c.n, "p": c.p, "complete": c.complete, "note": c.note, "stats": c.stats }))
                .collect();
            outcome(Status::Ok, json!({ "out": path, "cells": cells }), summary)
        }
        None => outcome(Status::Ok, &report, summary),
    }
}

fn gen(kind: GenKind, format: FormatArg) -> u8 {
    let graph = match kind {
        GenKind::Complete { n } => Ok(generators::complete(n)),
        GenKind::Cycle { n } if n < 3 => Err("a cycle needs at least 3 vertices".to_string()),
        GenKind::Cycle { n } => Ok(generators::cycle(n)),
        GenKind::Path { n } => Ok(generators::path(n)),
        GenKind::Star { k } => Ok(generators::star(k)),
        GenKind::Petersen => Ok(generators::petersen()),
        GenKind::SubdividedComplete { n, k } => Ok(generators::subdivided_complete(n, k)),
        GenKind::Gnp { n, p, seed } => experiments::GnpSpec::new(n, p, seed)
            .map(|spec| experiments::sample_gnp(&spec))
            .map_err(err),
        GenKind::RandomRegular { n, d, seed } => {
            generators::random_regular(n, d, &mut experiments::seeded_rng(seed)).map_err(err)
        }
    };
    match graph.and_then(|g| serialize_graph(&g, format.into()).map_err(err)) {
        Ok(text) => {
            let mut out = io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(message) => {
            eprintln!("gen: error: {message}");
            EXIT_ERROR
        }
    }
}
