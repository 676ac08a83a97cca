//! Exact computations on solution-free subsets of `[n] = {1, ..., n}` for
//! linear equations, chiefly `px + qy = z`.
//!
//! * [`equations`]: equations, triviality of solutions, L-triples.
//! * [`oracle`]: exact search for maximum sizes and counts of solution-free sets.
//! * [`pathgraph`]: the graph `G_m` on `[m, n]`, its path structure and the bounds built on it.
//! * [`linkgraph`]: link graphs, maximal independent sets and the lower-bound constructions.
//! * [`bounds`]: closed-form sizes and bound exponents, and oracle checks of them.
//! * [`campaign`]: verification campaigns and parameter sweeps.
//! * [`cli`]: the `sfl` command line.
//! * [`rational`]: exact rational bounds and power comparisons.

mod budget;
mod error;

pub mod bounds;
pub mod campaign;
pub mod cli;
pub mod equations;
pub mod linkgraph;
pub mod oracle;
pub mod pathgraph;
pub mod rational;

pub use budget::{Budget, BUDGET_ENV, MAX_BITSET_N};
pub use error::{Error, Result};
