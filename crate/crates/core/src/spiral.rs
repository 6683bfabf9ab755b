//! Geometry of the sinusoidal-spiral region and its generator.
//!
//! For `0 < lam <= 1` the generator `q_lam(z) = (1+z)^lam` (principal branch,
//! `q_lam(0) = 1`) maps the unit disk onto the region bounded by the
//! sinusoidal spiral `rho = (2 cos(phi/lam))^lam`, `|phi| <= lam pi/2`. The
//! interior is cut out by `Re w > 0` together with `Re w^{-1/lam} > 1/2`.

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::EvaluationGrid;
use crate::report::{BoundReport, IndexBound};
use crate::series::{SeriesError, TruncatedSeries};
use crate::tolerances::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpiralError {
    #[error("lambda must lie in (0, 1], got {lam}")]
    InvalidLambda { lam: f64 },
    #[error("point lies outside the open unit disk (|z| = {modulus})")]
    OutsideDisk { modulus: f64 },
    #[error("boundary sampling needs at least 2 points")]
    TooFewPoints,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The shape parameter of the spiral region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralParams {
    lam: f64,
}

impl SpiralParams {
    pub fn new(lam: f64) -> Result<Self, SpiralError> {
        if !(lam > 0.0 && lam <= 1.0) {
            return Err(SpiralError::InvalidLambda { lam });
        }
        Ok(Self { lam })
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }

    /// Half-opening angle `lam pi / 2` of the region at the origin.
    pub fn max_angle(&self) -> f64 {
        self.lam * std::f64::consts::FRAC_PI_2
    }

    /// Real-axis vertex `2^lam` of the spiral.
    pub fn vertex(&self) -> f64 {
        2f64.powf(self.lam)
    }
}

/// A point of the spiral in polar form, `w = rho e^{i phi}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub phi: f64,
    pub rho: f64,
}

impl BoundaryPoint {
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.rho, self.phi)
    }
}

/// Principal-branch value of `(1+z)^lam` inside the open unit disk.
pub fn q_eval(params: SpiralParams, z: Complex64) -> Result<Complex64, SpiralError> {
    let modulus = z.norm();
    if modulus >= 1.0 {
        return Err(SpiralError::OutsideDisk { modulus });
    }
    Ok((Complex64::ONE + z).powf(params.lam()))
}

/// Truncated Taylor expansion of `q_lam`: the generalized binomial series.
pub fn q_series(params: SpiralParams, order: usize) -> TruncatedSeries {
    TruncatedSeries::one_plus_zn(1, order)
        .pow_real(params.lam())
        .expect("1 + z has unit constant term")
}

/// Uniform sampling of the spiral over `phi in [-lam pi/2, lam pi/2]`.
///
/// The sample angles are generated symmetrically around `phi = 0`, so for odd
/// counts the vertex `(2^lam, 0)` is hit exactly and mirrored angles carry
/// identical moduli. The interval endpoints map to the origin exactly.
pub fn boundary_points(
    params: SpiralParams,
    count: usize,
) -> Result<Vec<BoundaryPoint>, SpiralError> {
    if count < 2 {
        return Err(SpiralError::TooFewPoints);
    }
    let lam = params.lam();
    let half_span = params.max_angle();
    let step = 2.0 * half_span / (count - 1) as f64;
    let mid = (count - 1) as f64 / 2.0;
    let points = (0..count)
        .map(|j| {
            if j == 0 || j == count - 1 {
                // cos(pi/2) is exactly zero only mathematically; snap it.
                let sign = if j == 0 { -1.0 } else { 1.0 };
                return BoundaryPoint {
                    phi: sign * half_span,
                    rho: 0.0,
                };
            }
            let phi = (j as f64 - mid) * step;
            let rho = (2.0 * (phi / lam).cos()).powf(lam);
            BoundaryPoint { phi, rho }
        })
        .collect();
    Ok(points)
}

/// Signed distance-like margin of `w` from the region boundary: positive in
/// the interior, negative outside. Uses `Re w` directly in the left
/// half-plane, where the power branch is unavailable.
pub fn containment_margin(params: SpiralParams, w: Complex64) -> f64 {
    if w.re <= 0.0 {
        w.re
    } else {
        w.powf(-1.0 / params.lam()).re - 0.5
    }
}

/// Strict interior membership with an additive tolerance on the half-plane
/// test: `Re w > 0` and `Re w^{-1/lam} > 1/2 - tol`.
pub fn contains(params: SpiralParams, w: Complex64, tol: f64) -> bool {
    w.re > 0.0 && w.powf(-1.0 / params.lam()).re > 0.5 - tol
}

/// Total winding of the closed polygonal curve around `v`, in turns.
/// Values near 1 mean `v` is enclosed once.
pub fn winding_number(curve: &[Complex64], v: Complex64) -> f64 {
    let mut total = 0.0;
    for i in 0..curve.len() {
        let a = curve[i] - v;
        let b = curve[(i + 1) % curve.len()] - v;
        let cross = a.re * b.im - a.im * b.re;
        let dot = a.re * b.re + a.im * b.im;
        total += cross.atan2(dot);
    }
    total / std::f64::consts::TAU
}

/// Distance from `v` to the closed polygon through the curve samples.
pub fn closed_curve_distance(curve: &[Complex64], v: Complex64) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..curve.len() {
        let a = curve[i];
        let b = curve[(i + 1) % curve.len()];
        let ab = b - a;
        let av = v - a;
        let len_sq = ab.norm_sqr();
        let t = if len_sq == 0.0 {
            0.0
        } else {
            ((av.re * ab.re + av.im * ab.im) / len_sq).clamp(0.0, 1.0)
        };
        let nearest = a + ab * t;
        best = best.min((v - nearest).norm());
    }
    best
}

/// Samples a unit-constant-term series over the grid and reports the worst
/// spiral-containment margin per ring. Range containment is equivalent to
/// subordination here because the generator is convex univalent.
pub fn subordinate_to_spiral(
    p: &TruncatedSeries,
    params: SpiralParams,
    grid: &EvaluationGrid,
    tol: &Tolerances,
) -> Result<BoundReport, SpiralError> {
    if p.coeff(0) != Complex64::ONE {
        return Err(SeriesError::NotUnitConstantTerm.into());
    }
    let entries = grid
        .radii()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let worst = grid
                .ring(r)
                .into_iter()
                .map(|z| containment_margin(params, p.evaluate(z)))
                .fold(f64::INFINITY, f64::min);
            IndexBound::lower(i + 1, worst, 0.0)
        })
        .collect();
    Ok(BoundReport::from_entries(
        "subordinate_to_spiral",
        format!("series[order={}]", p.order()),
        params.lam(),
        entries,
        tol,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lambda_validation() {
        assert!(SpiralParams::new(0.0).is_err());
        assert!(SpiralParams::new(1.2).is_err());
        assert!(SpiralParams::new(-0.5).is_err());
        assert!(SpiralParams::new(1.0).is_ok());
    }

    #[test]
    fn q_eval_normalization_and_identity_case() {
        let p = SpiralParams::new(0.6).unwrap();
        assert_eq!(q_eval(p, Complex64::ZERO).unwrap(), Complex64::ONE);

        let p1 = SpiralParams::new(1.0).unwrap();
        let z = Complex64::new(0.0, 0.5);
        let w = q_eval(p1, z).unwrap();
        assert_abs_diff_eq!((w - (Complex64::ONE + z)).norm(), 0.0, epsilon = 1e-15);

        assert!(matches!(
            q_eval(p, Complex64::new(1.0, 0.0)),
            Err(SpiralError::OutsideDisk { .. })
        ));
    }

    #[test]
    fn q_eval_against_direct_log_exp() {
        let p = SpiralParams::new(0.5).unwrap();
        let w = q_eval(p, Complex64::new(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(w.re, 1.5f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(w.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn boundary_vertex_endpoints_and_symmetry() {
        let p = SpiralParams::new(0.6).unwrap();
        let pts = boundary_points(p, 1001).unwrap();
        assert_eq!(pts.len(), 1001);
        assert_eq!(pts[0].rho, 0.0);
        assert_eq!(pts[1000].rho, 0.0);
        let mid = &pts[500];
        assert_eq!(mid.phi, 0.0);
        assert_abs_diff_eq!(mid.rho, 2f64.powf(0.6), epsilon = 1e-14);
        for j in 0..=1000 {
            assert_eq!(pts[j].rho, pts[1000 - j].rho);
            assert_eq!(pts[j].phi, -pts[1000 - j].phi);
        }
    }

    #[test]
    fn boundary_is_unit_circle_shifted_for_lambda_one() {
        let p = SpiralParams::new(1.0).unwrap();
        for bp in boundary_points(p, 257).unwrap() {
            let w = bp.to_complex();
            assert_abs_diff_eq!((w - Complex64::ONE).norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn contains_interior_exterior_and_vertex() {
        let p = SpiralParams::new(0.6).unwrap();
        assert!(contains(p, Complex64::ONE, 0.0));
        assert!(!contains(p, Complex64::new(-0.1, 0.0), 0.0));
        // boundary vertex is not strict interior
        let vertex = Complex64::new(p.vertex(), 0.0);
        assert!(!contains(p, vertex, 0.0));
        assert!(contains(p, vertex, 1e-9));
    }

    #[test]
    fn disk_image_of_generator_stays_interior() {
        for lam in [0.25, 0.5, 0.75, 1.0] {
            let p = SpiralParams::new(lam).unwrap();
            for k in 0..500 {
                let r = 0.95 * ((k * 379 % 500) as f64 + 0.5) / 500.0;
                let theta = std::f64::consts::TAU * (k as f64 + 0.25) / 500.0;
                let z = Complex64::from_polar(r, theta);
                let w = q_eval(p, z).unwrap();
                assert!(
                    contains(p, w, 0.0),
                    "lam={lam} z={z} w={w} margin={}",
                    containment_margin(p, w)
                );
            }
        }
    }

    #[test]
    fn smaller_lambda_regions_nest() {
        // boundary of the mu-region lies inside the lam-region for mu < lam
        for (mu, lam) in [(0.5, 1.0), (1.0 / 3.0, 0.5), (0.25, 1.0 / 3.0)] {
            let inner = SpiralParams::new(mu).unwrap();
            let outer = SpiralParams::new(lam).unwrap();
            for bp in boundary_points(inner, 401).unwrap() {
                if bp.phi.abs() >= 0.99 * inner.max_angle() {
                    continue; // origin is a closure point, not interior
                }
                let margin = containment_margin(outer, bp.to_complex());
                assert!(margin > 1e-9, "mu={mu} lam={lam} phi={} m={margin}", bp.phi);
            }
        }
    }

    #[test]
    fn sampled_generator_arguments_respect_slope_bound() {
        let p = SpiralParams::new(0.7).unwrap();
        let grid = EvaluationGrid::default();
        for z in grid.points() {
            let w = q_eval(p, z).unwrap();
            assert!(w.arg().abs() <= p.max_angle() + 1e-9);
        }
    }

    #[test]
    fn subordination_check_on_constant_and_composed_generator() {
        let tol = Tolerances::default();
        let grid = EvaluationGrid::default();
        let p = SpiralParams::new(0.6).unwrap();

        let constant = TruncatedSeries::one(8);
        let rep = subordinate_to_spiral(&constant, p, &grid, &tol).unwrap();
        assert!(rep.pass);

        // q composed with the small Schwarz map 0.3 z stays well inside
        let q = q_series(p, 64);
        let small = TruncatedSeries::monomial(Complex64::new(0.3, 0.0), 1, 64);
        let composed = q.compose(&small).unwrap();
        let rep = subordinate_to_spiral(&composed, p, &grid, &tol).unwrap();
        assert!(rep.pass);
        assert!(rep.aggregate.margin > 0.0);
    }

    #[test]
    fn containment_margin_sign_agrees_with_polygon_winding_oracle() {
        // independent geometric route: winding of the spiral boundary
        // polygon decides membership, and must agree with the sign of the
        // analytic margin away from the boundary
        let p = SpiralParams::new(0.6).unwrap();
        let polygon: Vec<Complex64> = boundary_points(p, 4001)
            .unwrap()
            .into_iter()
            .map(BoundaryPoint::to_complex)
            .collect();
        let mut tested = 0;
        for k in 0..400 {
            let w = Complex64::from_polar(
                2.2 * ((k % 20) as f64 + 0.5) / 20.0,
                std::f64::consts::PI * ((k / 20) as f64 - 9.5) / 10.0,
            );
            let margin = containment_margin(p, w);
            if margin.abs() < 1e-3 {
                continue; // too close to the boundary for the polygon test
            }
            let inside = winding_number(&polygon, w).round() != 0.0;
            assert_eq!(inside, margin > 0.0, "w={w} margin={margin}");
            tested += 1;
        }
        assert!(tested > 300);
    }

    #[test]
    fn subordination_check_rejects_wider_power() {
        let tol = Tolerances::default();
        let grid = EvaluationGrid::default();
        let lam = 0.5;
        let p = SpiralParams::new(lam).unwrap();
        let wider = TruncatedSeries::one_plus_zn(1, 64)
            .pow_real(lam + 0.3)
            .unwrap();
        let rep = subordinate_to_spiral(&wider, p, &grid, &tol).unwrap();
        assert!(!rep.pass);
        // containment worsens with the radius, so the outermost rings
        // (r >= 0.9) certainly violate
        assert!(rep.per_index.last().unwrap().margin < 0.0);
        assert!(rep.per_index[rep.per_index.len() - 2].margin < 0.0);
        // while small radii stay inside
        let coarse = EvaluationGrid::with_r_max(0.5, 720).unwrap();
        let rep = subordinate_to_spiral(&wider, p, &coarse, &tol).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn rejects_non_unit_constant_term() {
        let tol = Tolerances::default();
        let grid = EvaluationGrid::default();
        let p = SpiralParams::new(0.5).unwrap();
        let bad = TruncatedSeries::identity(4);
        assert!(matches!(
            subordinate_to_spiral(&bad, p, &grid, &tol),
            Err(SpiralError::Series(SeriesError::NotUnitConstantTerm))
        ));
    }
}
