//! Directed component order connectivity: delete at most `k` vertices so
//! that every strong component has at most `ell` vertices.
//!
//! [`semicomplete`] is the exact parameterized solver for semicomplete
//! digraphs, [`oracle`] holds exhaustive reference solvers, [`guess`] the
//! randomized component guessing for general digraphs and [`generators`]
//! the instance families used by tests and benchmarks.

pub mod bitset;
pub mod cli;
pub mod digraph;
pub mod error;
pub mod generators;
pub mod guess;
pub mod io;
pub mod oracle;
pub mod rng;
pub mod scc;
pub mod semicomplete;

pub use bitset::VertexSet;
pub use digraph::{verify_solution, Digraph, Instance};
pub use error::{Error, Result};
