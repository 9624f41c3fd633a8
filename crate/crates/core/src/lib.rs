//! Exact bounds on the domination and independence numbers of graphs.
//!
//! Everything is computed in arbitrary-precision rational arithmetic; floats
//! appear only when values are printed. The crate provides:
//!
//! - [`graph`]: bitset-backed simple graphs, graph6 and edge-list parsing,
//!   named families, bipartition detection.
//! - [`arith`]: exact binomial coefficients and tables of binomial ratios.
//! - [`domination`]: the upper bounds γ_CSSF, γ_HM1, γ_HM2 and the bipartite
//!   bound γ_HM3.
//! - [`independence`]: the lower bounds α_CW, α_S, α_ACL, α_HR, α_HM.
//! - [`oracle`]: exact γ(G)/α(G) solvers and exhaustive distributions of the
//!   random variables behind the probabilistic bounds.
//! - [`randgraph`]: seeded G(n,p) and perturbed-bipartite generators.
//! - [`experiment`]: batch evaluation, strict-win comparison matrices,
//!   JSON-lines/CSV persistence.

pub mod arith;
pub mod domination;
pub mod experiment;
pub mod graph;
pub mod independence;
pub mod oracle;
pub mod randgraph;

pub use arith::{binom, ceil_rat, floor_rat, RatioTable, Rational};
pub use domination::{BoundError, Extremum};
pub use graph::{Bipartition, GammaClassProof, Graph};
