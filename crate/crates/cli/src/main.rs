mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "domkt",
    version,
    about = "Dominating clique models: search, constructions, decompositions, experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Graph file; `-` or absent reads stdin.
    #[arg(long, short)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::EdgeList)]
    pub format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    EdgeList,
    Graph6,
}

impl From<FormatArg> for domkt::io::Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => domkt::io::Format::EdgeList,
            FormatArg::Graph6 => domkt::io::Format::Graph6,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Mindeg3,
    Avgdeg,
    Dense,
    Linear,
    RegularPseudo,
    Minsum,
    EdgeBound,
    Cds,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a clique model against a graph.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// Model JSON: {"flavour": "dominating", "parts": [[...], ...]}.
        #[arg(long)]
        model: String,
    },
    /// Exact search (dominating Hadwiger number, targeted order, pseudo-models, minors).
    Find {
        #[command(flatten)]
        graph: GraphInput,
        /// Compute the exact maximum (the default when no other mode is given).
        #[arg(long)]
        exact: bool,
        /// Stop at (or refute) this order.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, conflicts_with = "minor")]
        pseudo: bool,
        /// Test for a K_t minor; needs --t.
        #[arg(long, requires = "t")]
        minor: bool,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Run a constructive algorithm and print its certificate.
    Construct {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, default_value_t = 100)]
        max_attempts: usize,
        #[arg(long)]
        near_regular: bool,
    },
    /// Proper colouring with at most 3*2^(t-4) colours or a dominating K_t-model.
    Colour {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        t: usize,
    },
    /// Tree partition of every component.
    Decompose {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Independent set of size ceil((n+t-1)/(2t-2)) or a dominating K_t-model.
    IndepSet {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        t: usize,
    },
    /// Seeded G(n,p) sweep.
    Experiment {
        #[arg(long)]
        grid: String,
        /// Full report path; without it the report goes to stdout.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Record per-trial wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write a named or random graph to stdout.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, value_enum, default_value_t = FormatArg::EdgeList, global = true)]
        format: FormatArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Star {
        k: usize,
    },
    Petersen,
    /// K_n with every edge subdivided k times.
    SubdividedComplete {
        n: usize,
        k: usize,
    },
    Gnp {
        n: usize,
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    RandomRegular {
        n: usize,
        d: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { commands::EXIT_ERROR });
        }
    };
    ExitCode::from(commands::dispatch(cli.command))
}
