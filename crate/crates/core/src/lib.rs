//! Exact skein-theoretic evaluation of knot invariants.
//!
//! The crate computes Kauffman brackets and colored Jones polynomials of links
//! given as PD codes, decides A/B-adequacy of diagrams, and checks and
//! extracts the stable lowest (tail) and highest (head) coefficient series of
//! the colored Jones polynomial.
//!
//! Everything is exact: coefficients are arbitrary-precision integers and the
//! only variable carried internally is the Kauffman variable `A`, with
//! `q = A^-4` used for presentation.

pub mod catalog;
pub mod cli;
pub mod diagram;
pub mod jones;
pub mod poly;
pub mod quantum;
pub mod tail;
pub mod tl;

pub use diagram::{PDCode, Smoothing, StateAssignment, SweepPlan};
pub use jones::{Budget, ColoredJonesResult};
pub use poly::{LaurentPoly, PolyError, QPresentation, RationalFn};
pub use tail::{QSeries, StabilizationReport};
pub use tl::{Matching, PlanarNetwork, TLElement};
