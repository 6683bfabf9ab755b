//! Seeded construction of family members and grid verification of the
//! defining analytic conditions.
//!
//! Members are produced from Schwarz functions (analytic self-maps of the
//! disk fixing the origin). Writing `h = -lam omega/(1 - omega)` pins
//! `Re h < lam/2` on the disk, which makes the half-plane conditions of the
//! two derivative-bounded families hold strictly by construction:
//!
//! - spiral-starlike members solve `z f'/f = (1 + omega)^lam`,
//! - `G`-family members solve `z f''/f' = h`,
//! - `N`-family members solve `z f'/f = 1 + h`,
//!
//! and the last two share `h`, which realizes the Alexander correspondence
//! `f in G <=> z f' in N` seed by seed.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::functions::{closed_form_g_f, FunctionError, FunctionMeta, NormalizedFunction};
use crate::grid::EvaluationGrid;
use crate::report::{BoundReport, IndexBound};
use crate::series::{SeriesError, TruncatedSeries};
use crate::spiral::{
    closed_curve_distance, containment_margin, winding_number, SpiralError, SpiralParams,
};
use crate::tolerances::{Tolerances, DIV_FLOOR};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("Schwarz sample degree must lie in 1..=6, got {degree}")]
    InvalidDegree { degree: usize },
    #[error("scaled monomial needs factor in [0,1] and power >= 1")]
    InvalidMonomial,
    #[error("Blaschke zeros must have modulus at most 1")]
    ZeroOutsideDisk,
    #[error("Schwarz function order {have} is too small, need at least {need}")]
    OrderTooSmall { have: usize, need: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Spiral(#[from] SpiralError),
}

/// Construction recipe of a Schwarz function; kept as a certificate that the
/// series really is an analytic self-map of the disk.
#[derive(Debug, Clone, PartialEq)]
pub enum SchwarzWitness {
    /// `omega(z) = factor * z^power` with `0 <= factor <= 1`.
    ScaledMonomial { factor: f64, power: usize },
    /// `omega(z) = e^{i rotation} z prod_j (z - z_j)/(1 - conj(z_j) z)`.
    Blaschke {
        rotation: f64,
        zeros: Vec<Complex64>,
    },
}

/// Analytic self-map of the disk with `omega(0) = 0`, certified by its
/// construction recipe and expanded as a truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzFunction {
    series: TruncatedSeries,
    witness: SchwarzWitness,
    seed: u64,
    label: String,
}

impl SchwarzFunction {
    /// `omega(z) = factor z^power`, `0 <= factor <= 1`.
    pub fn scaled_monomial(factor: f64, power: usize, order: usize) -> Result<Self, FamilyError> {
        if !(0.0..=1.0).contains(&factor) || power == 0 {
            return Err(FamilyError::InvalidMonomial);
        }
        let series = if power <= order {
            TruncatedSeries::monomial(Complex64::new(factor, 0.0), power, order)
        } else {
            TruncatedSeries::zero(order)
        };
        Ok(Self {
            series,
            witness: SchwarzWitness::ScaledMonomial { factor, power },
            seed: 0,
            label: format!("omega={factor}*z^{power}"),
        })
    }

    /// The zero map (sends every member constructor to the identity `z`).
    pub fn zero(order: usize) -> Self {
        Self::scaled_monomial(0.0, 1, order).expect("zero map is valid")
    }

    /// Finite Blaschke product times `z`, rotated:
    /// `e^{i rotation} z prod_j (z - z_j)/(1 - conj(z_j) z)`.
    pub fn blaschke(rotation: f64, zeros: &[Complex64], order: usize) -> Result<Self, FamilyError> {
        if zeros.iter().any(|z| z.norm() > 1.0 + 1e-12) {
            return Err(FamilyError::ZeroOutsideDisk);
        }
        let mut num = TruncatedSeries::identity(order);
        let mut den = TruncatedSeries::one(order);
        for &zj in zeros {
            let factor_num = {
                let mut c = vec![Complex64::ZERO; order + 1];
                c[0] = -zj;
                c[1] = Complex64::ONE;
                TruncatedSeries::from_coeffs(c)?
            };
            let factor_den = {
                let mut c = vec![Complex64::ZERO; order + 1];
                c[0] = Complex64::ONE;
                c[1] = -zj.conj();
                TruncatedSeries::from_coeffs(c)?
            };
            num = num.mul(&factor_num);
            den = den.mul(&factor_den);
        }
        let series = num.div(&den)?.scale(Complex64::from_polar(1.0, rotation));
        Ok(Self {
            series,
            witness: SchwarzWitness::Blaschke {
                rotation,
                zeros: zeros.to_vec(),
            },
            seed: 0,
            label: format!("blaschke[rot={rotation:.3},deg={}]", zeros.len() + 1),
        })
    }

    /// Seeded random sample: a rotation times `z` times `degree - 1` Blaschke
    /// factors with zeros of modulus at most 0.8 (keeps the expansion well
    /// conditioned at the default order). Deterministic per seed.
    pub fn sample(seed: u64, degree: usize, order: usize) -> Result<Self, FamilyError> {
        if !(1..=6).contains(&degree) {
            return Err(FamilyError::InvalidDegree { degree });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rotation = std::f64::consts::TAU * rng.random::<f64>();
        let zeros: Vec<Complex64> = (0..degree - 1)
            .map(|_| {
                let r = 0.8 * rng.random::<f64>().sqrt();
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                Complex64::from_polar(r, theta)
            })
            .collect();
        let mut out = Self::blaschke(rotation, &zeros, order)?;
        out.seed = seed;
        out.label = format!("schwarz[seed={seed},deg={degree}]");
        Ok(out)
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn witness(&self) -> &SchwarzWitness {
        &self.witness
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn truncated_series(&self, order: usize) -> Result<TruncatedSeries, FamilyError> {
        if self.series.order() < order {
            return Err(FamilyError::OrderTooSmall {
                have: self.series.order(),
                need: order,
            });
        }
        Ok(self.series.truncated(order))
    }
}

/// The function family a verification targets. The two classical tags have
/// no shape parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyTag {
    StSs { lam: f64 },
    GFamily { lam: f64 },
    NFamily { lam: f64 },
    Convex,
    Starlike,
}

impl FamilyTag {
    pub fn lam(&self) -> Option<f64> {
        match *self {
            FamilyTag::StSs { lam } | FamilyTag::GFamily { lam } | FamilyTag::NFamily { lam } => {
                Some(lam)
            }
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::StSs { .. } => "ST_SS",
            FamilyTag::GFamily { .. } => "G",
            FamilyTag::NFamily { .. } => "N",
            FamilyTag::Convex => "CONVEX",
            FamilyTag::Starlike => "STARLIKE",
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        match self.lam() {
            Some(lam) if !(lam > 0.0 && lam <= 1.0) => {
                Err(FamilyError::Function(FunctionError::InvalidLambda { lam }))
            }
            _ => Ok(()),
        }
    }
}

fn check_lambda(lam: f64) -> Result<(), FamilyError> {
    if lam > 0.0 && lam <= 1.0 {
        Ok(())
    } else {
        Err(FamilyError::Function(FunctionError::InvalidLambda { lam }))
    }
}

/// Spiral-starlike member: `f = z exp( int_0^z ((1 + omega(t))^lam - 1)/t dt )`,
/// so that `z f'/f = (1 + omega)^lam` holds at the series level.
pub fn member_st_ss(
    lam: f64,
    omega: &SchwarzFunction,
    order: usize,
) -> Result<NormalizedFunction, FamilyError> {
    check_lambda(lam)?;
    let w = omega.truncated_series(order.saturating_sub(1))?;
    let q = w.add_scalar(Complex64::ONE).pow_real(lam)?;
    let f = q
        .add_scalar(-Complex64::ONE)
        .integrate_quotient()?
        .exp0()?
        .mul_by_z();
    Ok(
        NormalizedFunction::new(f, format!("stss[lam={lam},{}]", omega.label()))?.with_meta(
            FunctionMeta {
                lambda: Some(lam),
                m: None,
                n: None,
            },
        ),
    )
}

/// `h = -lam omega/(1 - omega)`; its real part stays strictly below `lam/2`
/// on the disk because `omega/(1-omega)` maps into `Re > -1/2`.
fn caratheodory_substitution(
    lam: f64,
    omega: &SchwarzFunction,
    order: usize,
) -> Result<TruncatedSeries, FamilyError> {
    let w = omega.truncated_series(order)?;
    let den = w.neg().add_scalar(Complex64::ONE);
    Ok(w.div(&den)?.scale_real(-lam))
}

/// Member of the convexity-bounded family: solves `z f''/f' = h`, i.e.
/// `f' = exp( int_0^z h(t)/t dt )` integrated once. For `omega = z^n` the
/// derivative collapses to `(1 - z^n)^{lam/n}`.
pub fn member_g(
    lam: f64,
    omega: &SchwarzFunction,
    order: usize,
) -> Result<NormalizedFunction, FamilyError> {
    check_lambda(lam)?;
    let h = caratheodory_substitution(lam, omega, order.saturating_sub(1))?;
    let fprime = h.integrate_quotient()?.exp0()?;
    let f = fprime.antiderivative();
    Ok(
        NormalizedFunction::new(f, format!("g_member[lam={lam},{}]", omega.label()))?.with_meta(
            FunctionMeta {
                lambda: Some(lam),
                m: None,
                n: None,
            },
        ),
    )
}

/// Member of the starlikeness-bounded family: solves `z f'/f = 1 + h`, i.e.
/// `f = z exp( int_0^z h(t)/t dt )`. Shares `h` with [`member_g`], so it is
/// exactly `z (member_g)'`.
pub fn member_n(
    lam: f64,
    omega: &SchwarzFunction,
    order: usize,
) -> Result<NormalizedFunction, FamilyError> {
    check_lambda(lam)?;
    let h = caratheodory_substitution(lam, omega, order.saturating_sub(1))?;
    let f = h.integrate_quotient()?.exp0()?.mul_by_z();
    Ok(
        NormalizedFunction::new(f, format!("n_member[lam={lam},{}]", omega.label()))?.with_meta(
            FunctionMeta {
                lambda: Some(lam),
                m: None,
                n: None,
            },
        ),
    )
}

/// Evaluates the family's defining real-part condition over the grid and
/// reports the worst margin per ring. Near-vanishing denominators are
/// reported as a failing verdict, never a crash.
pub fn verify_condition(
    f: &NormalizedFunction,
    tag: FamilyTag,
    grid: &EvaluationGrid,
    tol: &Tolerances,
) -> Result<BoundReport, FamilyError> {
    tag.validate()?;
    let fp = f.series().derivative();
    let fpp = fp.derivative();
    let spiral = match tag {
        FamilyTag::StSs { lam } => Some(SpiralParams::new(lam)?),
        _ => None,
    };

    let mut entries = Vec::with_capacity(grid.radii().len());
    let mut small_denominators = 0usize;
    for (i, &r) in grid.radii().iter().enumerate() {
        let mut worst = f64::INFINITY;
        for z in grid.ring(r) {
            let margin = match tag {
                FamilyTag::StSs { .. } | FamilyTag::NFamily { .. } | FamilyTag::Starlike => {
                    let fz = f.series().evaluate(z);
                    if fz.norm() < DIV_FLOOR {
                        small_denominators += 1;
                        -1.0
                    } else {
                        let v = z * fp.evaluate(z) / fz;
                        match tag {
                            FamilyTag::StSs { .. } => containment_margin(spiral.unwrap(), v),
                            FamilyTag::NFamily { lam } => 1.0 + lam / 2.0 - v.re,
                            _ => v.re,
                        }
                    }
                }
                FamilyTag::GFamily { .. } | FamilyTag::Convex => {
                    let fpz = fp.evaluate(z);
                    if fpz.norm() < DIV_FLOOR {
                        small_denominators += 1;
                        -1.0
                    } else {
                        let expr = 1.0 + (z * fpp.evaluate(z) / fpz).re;
                        match tag {
                            FamilyTag::GFamily { lam } => 1.0 + lam / 2.0 - expr,
                            _ => expr,
                        }
                    }
                }
            };
            worst = worst.min(margin);
        }
        entries.push(IndexBound::lower(i + 1, worst, 0.0));
    }

    let mut report = BoundReport::from_entries(
        format!("verify_condition[{}]", tag.name()),
        f.label(),
        tag.lam().unwrap_or(0.0),
        entries,
        tol,
    );
    if small_denominators > 0 {
        report.pass = false;
        report = report.with_note(format!(
            "denominator below {DIV_FLOOR:.0e} at {small_denominators} grid points"
        ));
    }
    Ok(report)
}

/// Checks `f(z)/z` against the image of the disk under the convex target
/// `((1+z)^{1+lam} - 1)/((1+lam) z)`: every sampled value must lie inside
/// (or on, within a small tolerance) the target's boundary-circle image at
/// the grid's outer radius. Containment is decided by winding number.
pub fn f_over_z_subordination(
    f: &NormalizedFunction,
    lam: f64,
    grid: &EvaluationGrid,
    tol: &Tolerances,
) -> Result<BoundReport, FamilyError> {
    check_lambda(lam)?;
    let target_order = f.order().max(192);
    let target = closed_form_g_f(lam, target_order)?.series().div_by_z()?;
    let samples = (grid.angles_per_ring() * 8).max(2048);
    let r = grid.r_max();
    let curve: Vec<Complex64> = (0..samples)
        .map(|k| {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / samples as f64);
            target.evaluate(z)
        })
        .collect();

    let u = f.series().div_by_z()?;
    let mut entries = Vec::with_capacity(grid.radii().len());
    for (i, &radius) in grid.radii().iter().enumerate() {
        let mut outside = 0usize;
        for z in grid.ring(radius) {
            let v = u.evaluate(z);
            let w = winding_number(&curve, v);
            if (w - 1.0).abs() > 0.5 {
                // points on the boundary curve count as contained; the band
                // covers polygon chord sag plus the sample's evaluation tail
                let dist = closed_curve_distance(&curve, v);
                if dist > 1e-5 * (1.0 + v.norm()) {
                    outside += 1;
                }
            }
        }
        entries.push(IndexBound::lower(i + 1, -(outside as f64), 0.0));
    }
    Ok(BoundReport::from_entries(
        "f_over_z_subordination",
        f.label(),
        lam,
        entries,
        tol,
    ))
}
