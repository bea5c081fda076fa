//! Numerical toolkit for integral operators acting on classes of starlike and
//! convex functions in the unit disk.
//!
//! Functions are represented as truncated complex power series
//! ([`TruncatedSeries`]). On top of the series substrate the crate provides
//! the Bernardi family of integral operators and several nonlinear relatives,
//! sampled class-membership scans against convex target regions, the
//! bivariate minimization behind the convexity threshold `sqrt(c^2+1) - c`,
//! and the counterexample construction bounding the Libera constant.

pub mod cli;
pub mod error;
pub mod extremals;
pub mod geometry;
pub mod operators;
pub mod proof_lab;
pub mod series;

pub use error::{Error, Result};
pub use geometry::{ClassSpec, Functional, MembershipReport, RegionSpec};
pub use operators::OperatorSpec;
pub use series::{EvaluationGrid, TailEstimate, TruncatedSeries};

pub use num_complex::Complex64;

/// Truncation order used when none is configured.
pub const DEFAULT_ORDER: usize = 128;
