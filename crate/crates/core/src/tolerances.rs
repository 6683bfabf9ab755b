//! Central home for every numeric tolerance and default used by the crate.
//!
//! All pass/fail decisions route through a [`Tolerances`] value so that a
//! sweep can tighten or loosen thresholds in one place (the CLI maps the
//! `SPIRALLOG_TOLERANCE` environment variable onto `pass`).

/// Margin tolerance for pass/fail verdicts. An inequality check passes when
/// its worst margin is at least `-DEFAULT_PASS_TOL`; the slack absorbs
/// truncation and rounding in grid evaluations.
pub const DEFAULT_PASS_TOL: f64 = 1e-7;

/// Attainment tolerance. Extremal witnesses reach their bounds coefficient-
/// exactly, so equality detection is much tighter than the pass tolerance.
pub const DEFAULT_ATTAIN_TOL: f64 = 1e-9;

/// Series division refuses leading coefficients below this magnitude.
pub const DIV_FLOOR: f64 = 1e-12;

/// Default truncation order for series constructions.
pub const DEFAULT_ORDER: usize = 64;

/// Default outer radius of evaluation grids. Must stay below 1 so Horner
/// evaluation keeps a geometric truncation tail.
pub const DEFAULT_R_MAX: f64 = 0.95;

/// Default number of sample angles per grid ring.
pub const DEFAULT_ANGLES: usize = 720;

/// Runtime-adjustable verdict thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Worst acceptable margin is `-pass`.
    pub pass: f64,
    /// `|margin| <= attain` counts as equality (bound attained).
    pub attain: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            pass: DEFAULT_PASS_TOL,
            attain: DEFAULT_ATTAIN_TOL,
        }
    }
}

impl Tolerances {
    pub fn with_pass(pass: f64) -> Self {
        Self {
            pass,
            ..Self::default()
        }
    }
}
