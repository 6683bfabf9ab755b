//! Named function constructions and logarithmic-coefficient extraction.
//!
//! The central objects are normalized analytic germs `f(z) = z + a_2 z^2 + ...`
//! together with:
//!
//! - the spiral extremal functions `F` built from
//!   `z F'/F = (1 + z^n)^{lam/m}`,
//! - the integral transform `G_f(z) = int_0^z t f'(t)/f(t) dt` and its
//!   derivative companion `N_f(z) = z G_f'(z)`,
//! - logarithmic coefficients `gamma_n`, defined through
//!   `log(f(z)/z) = sum 2 gamma_n z^n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FunctionError {
    #[error("series is not normalized (need c0 = 0, c1 = 1 within 1e-12)")]
    NotNormalized,
    #[error("lambda must lie in (0, 1], got {lam}")]
    InvalidLambda { lam: f64 },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("rotation factor must be unimodular (|mu| = {modulus})")]
    NotUnimodular { modulus: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Construction parameters recorded for serialization; absent entries mean
/// the construction has no such parameter.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FunctionMeta {
    pub lambda: Option<f64>,
    pub m: Option<usize>,
    pub n: Option<usize>,
}

/// A normalized analytic germ: `c_0 = 0` and `c_1 = 1` exactly.
///
/// The constructor tolerates float dust up to `1e-12` on the two pinned
/// coefficients and snaps them, so the invariant holds bit-exactly afterward.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedFunction {
    series: TruncatedSeries,
    label: String,
    meta: FunctionMeta,
}

/// JSON form of a constructed function: coefficients as `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FunctionJson {
    pub label: String,
    pub lambda: Option<f64>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub order: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl NormalizedFunction {
    pub fn new(series: TruncatedSeries, label: impl Into<String>) -> Result<Self, FunctionError> {
        if series.order() < 1 {
            return Err(FunctionError::NotNormalized);
        }
        let c0 = series.coeff(0);
        let c1 = series.coeff(1);
        if c0.norm() > 1e-12 || (c1 - Complex64::ONE).norm() > 1e-12 {
            return Err(FunctionError::NotNormalized);
        }
        let mut coeffs = series.coeffs().to_vec();
        coeffs[0] = Complex64::ZERO;
        coeffs[1] = Complex64::ONE;
        Ok(Self {
            series: TruncatedSeries::from_coeffs(coeffs)?,
            label: label.into(),
            meta: FunctionMeta::default(),
        })
    }

    pub fn with_meta(mut self, meta: FunctionMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// Taylor coefficient `a_n`.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.series.coeff(n)
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn meta(&self) -> FunctionMeta {
        self.meta
    }

    pub fn to_json(&self) -> FunctionJson {
        FunctionJson {
            label: self.label.clone(),
            lambda: self.meta.lambda,
            m: self.meta.m,
            n: self.meta.n,
            order: self.order(),
            coeffs: self.series.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn from_json(json: &FunctionJson) -> Result<Self, FunctionError> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Ok(
            Self::new(TruncatedSeries::from_coeffs(coeffs)?, &json.label)?.with_meta(
                FunctionMeta {
                    lambda: json.lambda,
                    m: json.m,
                    n: json.n,
                },
            ),
        )
    }
}

/// Logarithmic coefficients `gamma_1 .. gamma_M` of a normalized function.
#[derive(Debug, Clone, PartialEq)]
pub struct LogCoefficients {
    gammas: Vec<Complex64>,
}

impl LogCoefficients {
    /// `gamma_n`, 1-indexed.
    pub fn gamma(&self, n: usize) -> Complex64 {
        self.gammas[n - 1]
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.gammas.iter().enumerate().map(|(i, &g)| (i + 1, g))
    }
}

fn check_lambda(lam: f64) -> Result<(), FunctionError> {
    if lam > 0.0 && lam <= 1.0 {
        Ok(())
    } else {
        Err(FunctionError::InvalidLambda { lam })
    }
}

/// Extremal function of the spiral family: the normalized solution of
/// `z F'/F = (1 + z^n)^{lam/m}`, i.e.
/// `F(z) = z exp( int_0^z ((1 + t^n)^{lam/m} - 1)/t dt )`,
/// with expansion `z + lam/(nm) z^{n+1} + ...`.
pub fn extremal_f(
    lam: f64,
    m: usize,
    n: usize,
    order: usize,
) -> Result<NormalizedFunction, FunctionError> {
    check_lambda(lam)?;
    if m == 0 || n == 0 || order == 0 {
        return Err(FunctionError::InvalidParameter(
            "extremal function needs m >= 1, n >= 1, order >= 1".into(),
        ));
    }
    let exponent = lam / m as f64;
    let q = TruncatedSeries::one_plus_zn(n, order - 1).pow_real(exponent)?;
    let f = q
        .add_scalar(-Complex64::ONE)
        .integrate_quotient()?
        .exp0()?
        .mul_by_z();
    Ok(
        NormalizedFunction::new(f, format!("F[lam={lam},m={m},n={n}]"))?.with_meta(FunctionMeta {
            lambda: Some(lam),
            m: Some(m),
            n: Some(n),
        }),
    )
}

/// The series `p = z f'/f`, the common ingredient of both transforms.
fn log_derivative_ratio(f: &NormalizedFunction) -> Result<TruncatedSeries, FunctionError> {
    let fp = f.series().derivative();
    let u = f.series().div_by_z()?;
    Ok(fp.div(&u)?)
}

/// Integral transform `G_f(z) = int_0^z t f'(t)/f(t) dt`. Its coefficients
/// carry the logarithmic coefficients of `f`:
/// `a_n(G_f) = 2 (n-1)/n gamma_{n-1}(f)`.
pub fn transform_g(f: &NormalizedFunction) -> Result<NormalizedFunction, FunctionError> {
    let p = log_derivative_ratio(f)?;
    let g = p.antiderivative();
    Ok(
        NormalizedFunction::new(g, format!("G[{}]", f.label()))?.with_meta(FunctionMeta {
            lambda: f.meta().lambda,
            m: f.meta().m,
            n: f.meta().n,
        }),
    )
}

/// Derivative companion `N_f(z) = z G_f'(z) = z^2 f'(z)/f(z)`, with
/// coefficients `a_n(N_f) = 2 (n-1) gamma_{n-1}(f)`.
pub fn transform_n(f: &NormalizedFunction) -> Result<NormalizedFunction, FunctionError> {
    let p = log_derivative_ratio(f)?;
    let nf = p.mul_by_z();
    Ok(
        NormalizedFunction::new(nf, format!("N[{}]", f.label()))?.with_meta(FunctionMeta {
            lambda: f.meta().lambda,
            m: f.meta().m,
            n: f.meta().n,
        }),
    )
}

/// First `max_n` logarithmic coefficients, from
/// `gamma_n = (1/2) [z^n] log(f(z)/z)`. Requires `max_n < order of f` since
/// `f/z` loses one order.
pub fn log_coefficients(
    f: &NormalizedFunction,
    max_n: usize,
) -> Result<LogCoefficients, FunctionError> {
    let u = f.series().div_by_z()?;
    if max_n > u.order() {
        return Err(FunctionError::InvalidParameter(format!(
            "gamma_{max_n} needs order >= {}, function has order {}",
            max_n + 1,
            f.order()
        )));
    }
    let log = u.log1()?;
    let gammas = (1..=max_n).map(|k| log.coeff(k) * 0.5).collect();
    Ok(LogCoefficients { gammas })
}

/// Closed form of the transform of the principal extremal function:
/// `((1+z)^{1+lam} - 1)/(1+lam)`, coefficient `k` equal to
/// `binom(1+lam, k)/(1+lam)`.
pub fn closed_form_g_f(lam: f64, order: usize) -> Result<NormalizedFunction, FunctionError> {
    check_lambda(lam)?;
    let p = TruncatedSeries::one_plus_zn(1, order).pow_real(1.0 + lam)?;
    let series = p.add_scalar(-Complex64::ONE).div_real(1.0 + lam);
    Ok(
        NormalizedFunction::new(series, format!("G_F[lam={lam}]"))?.with_meta(FunctionMeta {
            lambda: Some(lam),
            m: Some(1),
            n: Some(1),
        }),
    )
}

/// Rotated Koebe function `z (1 - e^{i theta} z)^{-2}`, with coefficients
/// `a_n = n e^{i (n-1) theta}`. Not a member of any family here; serves as a
/// negative control.
pub fn koebe(theta: f64, order: usize) -> NormalizedFunction {
    let coeffs = (0..=order)
        .map(|k| {
            if k == 0 {
                Complex64::ZERO
            } else {
                Complex64::from_polar(k as f64, (k - 1) as f64 * theta)
            }
        })
        .collect();
    NormalizedFunction::new(
        TruncatedSeries::from_coeffs(coeffs).expect("finite coefficients"),
        format!("koebe[theta={theta}]"),
    )
    .expect("koebe is normalized")
}

/// Disk rotation `f(z) -> conj(mu) f(mu z)` for unimodular `mu`; maps each
/// family onto itself and preserves every modulus-based functional.
pub fn rotate(f: &NormalizedFunction, mu: Complex64) -> Result<NormalizedFunction, FunctionError> {
    if (mu.norm() - 1.0).abs() > 1e-12 {
        return Err(FunctionError::NotUnimodular { modulus: mu.norm() });
    }
    let mut power = Complex64::ONE; // mu^{n-1}
    let coeffs = f
        .series()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            if k == 0 {
                return c;
            }
            let out = c * power;
            power *= mu;
            out
        })
        .collect();
    Ok(NormalizedFunction::new(
        TruncatedSeries::from_coeffs(coeffs)?,
        format!("rot[mu={mu}]({})", f.label()),
    )?
    .with_meta(f.meta()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn principal_extremal_at_lambda_one_is_z_exp_z() {
        let f = extremal_f(1.0, 1, 1, 8).unwrap();
        assert_abs_diff_eq!(f.coefficient(2).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.coefficient(3).re, 0.5, epsilon = 1e-15);
        // z e^z has a_n = 1/(n-1)!
        assert_abs_diff_eq!(f.coefficient(5).re, 1.0 / 24.0, epsilon = 1e-15);
    }

    #[test]
    fn extremal_leading_coefficients() {
        for (lam, n) in [(0.4, 2), (0.8, 5), (1.0, 3)] {
            let f = extremal_f(lam, 1, n, 4 * n + 4).unwrap();
            assert_abs_diff_eq!(f.coefficient(n + 1).re, lam / n as f64, epsilon = 1e-14);
            assert_abs_diff_eq!(f.coefficient(n + 1).im, 0.0, epsilon = 1e-15);
        }
        for (lam, m) in [(0.4, 2), (0.9, 4)] {
            let f = extremal_f(lam, m, 1, 16).unwrap();
            assert_abs_diff_eq!(f.coefficient(2).re, lam / m as f64, epsilon = 1e-14);
        }
    }

    #[test]
    fn extremal_third_coefficient_matches_exponential_expansion() {
        // a_3 of the n = 1 case is (3 mu^2 - mu)/4 with mu = lam/m, from
        // exp(mu z + mu(mu-1)/4 z^2 + ...).
        for (lam, m) in [(1.0, 1), (0.6, 1), (0.6, 2)] {
            let mu = lam / m as f64;
            let f = extremal_f(lam, m, 1, 8).unwrap();
            assert_abs_diff_eq!(
                f.coefficient(3).re,
                (3.0 * mu * mu - mu) / 4.0,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn extremal_rejects_bad_parameters() {
        assert!(extremal_f(1.5, 1, 1, 8).is_err());
        assert!(extremal_f(0.5, 0, 1, 8).is_err());
        assert!(extremal_f(0.5, 1, 0, 8).is_err());
    }

    #[test]
    fn transform_g_fixes_identity() {
        let id = NormalizedFunction::new(TruncatedSeries::identity(8), "z").unwrap();
        let g = transform_g(&id).unwrap();
        assert!(g.series().max_coeff_distance(&TruncatedSeries::identity(8)) < 1e-15);
    }

    #[test]
    fn transform_g_of_principal_extremal_lambda_one() {
        // ((1+z)^2 - 1)/2 = z + z^2/2
        let f = extremal_f(1.0, 1, 1, 8).unwrap();
        let g = transform_g(&f).unwrap();
        assert_abs_diff_eq!(g.coefficient(2).re, 0.5, epsilon = 1e-14);
        for k in 3..=8 {
            assert_abs_diff_eq!(g.coefficient(k).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn transform_coefficients_carry_log_coefficients() {
        let f = extremal_f(0.7, 2, 3, 32).unwrap();
        let gammas = log_coefficients(&f, 30).unwrap();
        let g = transform_g(&f).unwrap();
        let nf = transform_n(&f).unwrap();
        for n in 2..=30 {
            let gamma = gammas.gamma(n - 1);
            let expect_g = 2.0 * (n as f64 - 1.0) / n as f64 * gamma;
            let expect_n = 2.0 * (n as f64 - 1.0) * gamma;
            assert_abs_diff_eq!((g.coefficient(n) - expect_g).norm(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!((nf.coefficient(n) - expect_n).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn alexander_relation_between_transforms() {
        for seed in 0..5 {
            let noise = TruncatedSeries::seeded(seed, 24, 0.05);
            let mut coeffs = noise.coeffs().to_vec();
            coeffs[0] = Complex64::ZERO;
            coeffs[1] = Complex64::ONE;
            let f = NormalizedFunction::new(TruncatedSeries::from_coeffs(coeffs).unwrap(), "rand")
                .unwrap();
            let n_direct = transform_n(&f).unwrap();
            let n_via_g = transform_g(&f).unwrap().series().derivative().mul_by_z();
            assert!(n_direct.series().max_coeff_distance(&n_via_g) < 1e-13);
        }
    }

    #[test]
    fn transform_n_of_extremals_is_z_times_generator() {
        // N of F[lam/m, n] collapses to z (1 + z^n)^{lam/m}
        for (lam, m, n) in [
            (0.3, 1, 1),
            (0.7, 1, 1),
            (1.0, 1, 1),
            (0.8, 3, 2),
            (0.5, 2, 4),
        ] {
            let f = extremal_f(lam, m, n, 24).unwrap();
            let nf = transform_n(&f).unwrap();
            let expect = TruncatedSeries::one_plus_zn(n, 23)
                .pow_real(lam / m as f64)
                .unwrap()
                .mul_by_z();
            assert!(nf.series().max_coeff_distance(&expect) < 1e-13);
        }
    }

    #[test]
    fn transform_g_of_extremals_leading_coefficients() {
        // G of F[lam/m, n] = int (1 + t^n)^{lam/m} dt, so the coefficient at
        // z^{n+1} is lam/(m(n+1)) and at z^{2n+1} it is
        // lam(lam - m)/(2 m^2 (2n+1)).
        for (lam, m, n) in [(0.6, 1, 1), (0.6, 2, 3), (1.0, 4, 2)] {
            let g = transform_g(&extremal_f(lam, m, n, 32).unwrap()).unwrap();
            let mf = m as f64;
            let nf = n as f64;
            assert_abs_diff_eq!(
                g.coefficient(n + 1).re,
                lam / (mf * (nf + 1.0)),
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                g.coefficient(2 * n + 1).re,
                lam * (lam - mf) / (2.0 * mf * mf * (2.0 * nf + 1.0)),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn log_coefficients_of_identity_vanish() {
        let id = NormalizedFunction::new(TruncatedSeries::identity(10), "z").unwrap();
        let gammas = log_coefficients(&id, 9).unwrap();
        for (_, g) in gammas.iter() {
            assert_eq!(g, Complex64::ZERO);
        }
    }

    #[test]
    fn koebe_log_coefficients() {
        for theta in [0.0, 1.3, std::f64::consts::PI] {
            let k = koebe(theta, 20);
            let gammas = log_coefficients(&k, 16).unwrap();
            for n in 1..=16 {
                let expect = Complex64::from_polar(1.0 / n as f64, n as f64 * theta);
                assert_abs_diff_eq!((gammas.gamma(n) - expect).norm(), 0.0, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(koebe(0.0, 8).coefficient(5).re, 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            koebe(std::f64::consts::PI, 8).coefficient(2).re,
            -2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn extremal_log_coefficient_values() {
        // gamma_n(F[lam,n]) = lam/(2n) and the transform value lam/(2n(n+1))
        for lam in [0.1, 0.5, 1.0] {
            for n in 1..=10 {
                let f = extremal_f(lam, 1, n, 4 * n + 4).unwrap();
                let g = log_coefficients(&f, n).unwrap().gamma(n);
                assert_abs_diff_eq!(g.re, lam / (2.0 * n as f64), epsilon = 1e-12);
                assert_abs_diff_eq!(g.im, 0.0, epsilon = 1e-14);

                let gf = transform_g(&extremal_f(lam, n, n, 4 * n + 4).unwrap()).unwrap();
                let g = log_coefficients(&gf, n).unwrap().gamma(n);
                assert_abs_diff_eq!(
                    g.re,
                    lam / (2.0 * n as f64 * (n as f64 + 1.0)),
                    epsilon = 1e-11
                );
            }
        }
    }

    #[test]
    fn principal_extremal_gammas_are_scaled_binomials() {
        for lam in [0.3, 0.8] {
            let f = extremal_f(lam, 1, 1, 24).unwrap();
            let gammas = log_coefficients(&f, 20).unwrap();
            let b = TruncatedSeries::one_plus_zn(1, 20).pow_real(lam).unwrap();
            for n in 1..=20 {
                let expect = b.coeff(n) / (2.0 * n as f64);
                assert_abs_diff_eq!((gammas.gamma(n) - expect).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn first_two_gammas_match_coefficient_relations() {
        let candidates = [
            extremal_f(0.6, 2, 1, 16).unwrap(),
            closed_form_g_f(0.9, 16).unwrap(),
            koebe(0.4, 16),
        ];
        for f in candidates {
            let gammas = log_coefficients(&f, 2).unwrap();
            let a2 = f.coefficient(2);
            let a3 = f.coefficient(3);
            assert_abs_diff_eq!((2.0 * gammas.gamma(1) - a2).norm(), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(
                (2.0 * gammas.gamma(2) - (a3 - a2 * a2 * 0.5)).norm(),
                0.0,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn closed_form_transform_coefficients() {
        let g = closed_form_g_f(1.0, 8).unwrap();
        assert_abs_diff_eq!(g.coefficient(2).re, 0.5, epsilon = 1e-15);
        for lam in [0.3f64, 0.7] {
            let g = closed_form_g_f(lam, 8).unwrap();
            assert_abs_diff_eq!(g.coefficient(2).re, lam / 2.0, epsilon = 1e-14);
            assert_abs_diff_eq!(
                g.coefficient(3).re,
                lam * (lam - 1.0) / 6.0,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn closed_form_agrees_with_transform_route() {
        for lam in [0.3, 0.7] {
            let direct = closed_form_g_f(lam, 64).unwrap();
            let via_transform = transform_g(&extremal_f(lam, 1, 1, 64).unwrap()).unwrap();
            assert!(direct.series().max_coeff_distance(via_transform.series()) < 1e-13);
        }
    }

    #[test]
    fn rotation_preserves_coefficient_moduli() {
        let f = extremal_f(0.8, 1, 2, 16).unwrap();
        let mu = Complex64::from_polar(1.0, 0.77);
        let rotated = rotate(&f, mu).unwrap();
        for n in 1..=16 {
            assert_abs_diff_eq!(
                rotated.coefficient(n).norm(),
                f.coefficient(n).norm(),
                epsilon = 1e-13
            );
        }
        assert!(rotate(&f, Complex64::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn normalization_is_snapped_and_enforced() {
        let dusty = TruncatedSeries::from_coeffs(vec![
            Complex64::new(1e-14, 0.0),
            Complex64::new(1.0, 1e-14),
            Complex64::new(0.3, 0.0),
        ])
        .unwrap();
        let f = NormalizedFunction::new(dusty, "dusty").unwrap();
        assert_eq!(f.coefficient(0), Complex64::ZERO);
        assert_eq!(f.coefficient(1), Complex64::ONE);

        let not_normalized = TruncatedSeries::from_real(&[0.0, 2.0, 0.0]).unwrap();
        assert_eq!(
            NormalizedFunction::new(not_normalized, "bad"),
            Err(FunctionError::NotNormalized)
        );
    }

    #[test]
    fn json_roundtrip() {
        let f = extremal_f(0.5, 2, 3, 16).unwrap();
        let json = f.to_json();
        assert_eq!(json.lambda, Some(0.5));
        assert_eq!(json.m, Some(2));
        assert_eq!(json.n, Some(3));
        assert_eq!(json.coeffs.len(), 17);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: FunctionJson = serde_json::from_str(&text).unwrap();
        let back = NormalizedFunction::from_json(&parsed).unwrap();
        assert_eq!(back, f);
    }
}
