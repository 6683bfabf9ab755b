//! Numerical toolkit for starlike function families tied to sinusoidal
//! spirals, their logarithmic coefficients, and the sharp bounds they obey.
//!
//! The crate is organized around one substrate and five consumers:
//!
//! - [`series`] — exact-recurrence arithmetic on truncated complex power
//!   series; every analytic object here lives as a [`TruncatedSeries`].
//! - [`spiral`] — the region bounded by the sinusoidal spiral
//!   `rho = (2 cos(phi/lam))^lam` and its convex univalent generator
//!   `q_lam(z) = (1+z)^lam`.
//! - [`functions`] — named constructions: spiral extremal functions,
//!   the integral/derivative transform pair, logarithmic coefficients.
//! - [`families`] — seeded random members of the three function families and
//!   grid verification of their defining analytic conditions.
//! - [`bounds`] — every sharp inequality checker (logarithmic coefficient
//!   bounds, square-sum constants, Hankel determinant, Fekete–Szego
//!   functionals, growth/distortion/rotation envelopes).
//! - [`report`] + [`tolerances`] — verdict records and the central knobs.

pub mod bounds;
pub mod families;
pub mod functions;
pub mod grid;
pub mod report;
pub mod series;
pub mod spiral;
pub mod tolerances;

pub use grid::{EvaluationGrid, GridError};
pub use report::{AggregateBound, BoundReport, IndexBound};
pub use series::{SeriesError, TruncatedSeries};
pub use spiral::{BoundaryPoint, SpiralError, SpiralParams};
pub use tolerances::Tolerances;

pub use families::{FamilyTag, SchwarzFunction, SchwarzWitness};
pub use functions::{FunctionError, LogCoefficients, NormalizedFunction};
