//! Numerics for the first Heisenberg group.
//!
//! The crate computes the Carnot-Caratheodory distance from its closed form,
//! validates it against an independent trajectory-optimization oracle, and
//! verifies at desk scale the quantitative identities that hold on this flat,
//! torsion-free model: the CR Bochner identity, the sub-Laplacian comparison
//! profile `r lap_b r`, the distance-derivative bounds, Riccati comparison
//! envelopes, and the subgradient estimate for positive pseudoharmonic
//! functions.
//!
//! Module map:
//! * [`hgroup`] - points, group law, left-invariant frame, scalar fields;
//! * [`ccdist`] - the closed-form distance, its angle parameter and
//!   t-derivatives;
//! * [`geodesy`] - brute-force horizontal trajectory optimization (the
//!   independent oracle for the distance);
//! * [`sublap`] - sub-Laplacian, gradient norms, the `r lap_b r` profile;
//! * [`bochner`] - the curvature-free CR Bochner identity suite;
//! * [`estimates`] - cutoff construction and the subgradient-estimate lab;
//! * [`comparison`] - Riccati comparison ODEs and measured comparison
//!   constants;
//! * [`pharm`] - the catalog of analytic test fields;
//! * [`suites`] - named verification suites behind the CLI and the
//!   acceptance tests.

pub mod bochner;
pub mod ccdist;
pub mod comparison;
pub mod error;
pub mod estimates;
pub mod geodesy;
pub mod hgroup;
pub mod jet;
pub mod pharm;
pub mod report;
pub mod rng;
pub mod sample;
pub mod sublap;
pub mod suites;

pub use error::{HeisError, Result};
pub use hgroup::Point;
