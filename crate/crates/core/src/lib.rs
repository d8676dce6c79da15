//! Spectral upper bounds on the k-independence number `alpha_k` of a graph.
//!
//! `alpha_k(G)` is the largest number of vertices pairwise at distance greater
//! than `k`. The crate computes the classic inertia (Cvetkovic) and ratio
//! (Hoffman) bounds, their polynomial generalizations with optimal sign and
//! minor polynomials (found by a MILP and an LP over the spectral mesh),
//! bounds from the predistance polynomials, and an exact branch-and-bound
//! oracle used to check all of them.
//!
//! Module map:
//!
//! * [`graphs`]: graph type, graph6 / edge-list IO, named families, distances.
//! * [`spectra`]: eigenvalues, multiplicities, walk-regularity.
//! * [`polys`]: mesh and coefficient polynomials, predistance polynomials.
//! * [`optimize`]: simplex, branch-and-bound, minor LP and sign MILP.
//! * [`bounds`]: every bound as a [`bounds::BoundReport`].
//! * [`exact`]: exact `alpha_k`.
//! * [`ch`]: Cvetkovic-Hoffman classification and spread geometry.
//! * [`tables`], [`fixtures`], [`report`]: reference tables and output formats.

mod bitset;
pub mod bounds;
pub mod ch;
mod error;
pub mod exact;
pub mod fixtures;
pub mod graphs;
pub mod optimize;
pub mod polys;
pub mod report;
pub mod spectra;
pub mod tables;

pub use error::{Error, Result};
pub use graphs::{DistanceMatrix, FamilySpec, Graph};
pub use polys::{CoeffPolynomial, MeshPolynomial};
pub use spectra::Spectrum;

/// Numeric tolerances shared across modules.
pub mod tol {
    /// Default relative gap for grouping eigenvalues.
    pub const GROUPING: f64 = 1e-8;
    /// A mesh value `v` counts as non-negative when `v >= -SIGN * scale`.
    pub const SIGN: f64 = 1e-9;
    /// Slack added before flooring a bound value.
    pub const FLOOR: f64 = 1e-9;
    /// Absolute feasibility slack on equality constraints.
    pub const FEASIBILITY: f64 = 1e-9;
}
