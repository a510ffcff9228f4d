//! Dominating clique models in graphs.
//!
//! A dominating `K_t`-model is a sequence `(T_1, ..., T_t)` of pairwise disjoint,
//! non-empty, connected vertex sets such that for `i < j` every vertex of `T_j`
//! has a neighbour in `T_i`. This crate provides:
//!
//! * [`graph`] and [`io`]: the graph type, primitive operations, edge-list and graph6 I/O.
//! * [`models`]: clique models of three flavours and their verifiers.
//! * [`exact`]: exact search for the dominating Hadwiger number on small graphs.
//! * [`constructive`]: certificate-producing constructions (min degree 3, average
//!   degree, colour-or-model dichotomy, dense graphs, regular pseudo-models).
//! * [`decomposition`]: dominating/independent pairs, tree partitions and the
//!   independence-number bound.
//! * [`experiments`]: seeded `G(n, p)` harness.
//!
//! Every claim comes with a certificate that can be re-checked independently.

pub mod colouring;
pub mod constructive;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod io;
pub mod models;

pub use colouring::Colouring;
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use models::{CliqueModel, Flavour, Verdict};
