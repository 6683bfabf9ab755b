//! Arithmetic on truncated complex power series.
//!
//! A [`TruncatedSeries`] stores Taylor coefficients `c_0..c_N` of an analytic
//! germ at the origin. All structural operations (product, quotient, exp,
//! log, real powers, composition) use exact coefficient recurrences, so the
//! result coefficients are the true Taylor coefficients of the composite up
//! to the truncation order; only pointwise [`evaluate`](TruncatedSeries::evaluate)
//! carries a truncation tail.
//!
//! Binary operations truncate to the smaller operand order: coefficients
//! beyond an operand's order are unknown, not zero.

// Convolution recurrences index several arrays at coupled offsets; plain
// index loops mirror the formulas.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tolerances::DIV_FLOOR;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("leading coefficient too small for division (|b_0| = {magnitude:.3e})")]
    NearZeroLeadingCoefficient { magnitude: f64 },
    #[error("constant term must be exactly 1")]
    NotUnitConstantTerm,
    #[error("constant term must be exactly 0")]
    NonzeroConstantTerm,
    #[error("inner series of a composition must vanish at the origin")]
    NonzeroInnerConstant,
    #[error("series needs at least one coefficient, all finite")]
    InvalidCoefficients,
}

/// Degree-`N` complex Taylor polynomial `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from explicit coefficients (`coeffs[k]` multiplies `z^k`).
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty()
            || coeffs
                .iter()
                .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(SeriesError::InvalidCoefficients);
        }
        Ok(Self { coeffs })
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::from_coeffs(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::ZERO; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::ONE, order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// `c z^k`, padded with zeros up to `order` (`k <= order`).
    pub fn monomial(c: Complex64, k: usize, order: usize) -> Self {
        assert!(k <= order, "monomial degree exceeds order");
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The identity germ `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Complex64::ONE, 1, order)
    }

    /// `1 + z^n` — the germ whose real powers carry the binomial coefficients.
    pub fn one_plus_zn(n: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if n <= order {
            s.coeffs[n] = Complex64::ONE;
        }
        s
    }

    /// Seeded pseudo-random series: coefficients uniform in the complex disk
    /// of the given radius. Deterministic for a fixed seed.
    pub fn seeded(seed: u64, order: usize, radius: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..=order)
            .map(|_| {
                let r = radius * rng.random::<f64>().sqrt();
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                Complex64::from_polar(r, theta)
            })
            .collect();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`. Panics past the truncation order: those
    /// coefficients are unknown, not zero.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient distance to `other` over the common order.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| (self.coeffs[k] - other.coeffs[k]).norm())
            .fold(0.0, f64::max)
    }

    /// Copy truncated to `order` (must not exceed the current order).
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self {
            coeffs: (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self {
            coeffs: (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Componentwise division by a real scalar. Unlike multiplying by the
    /// reciprocal, `x/x` divides out exactly, which keeps pinned unit
    /// coefficients bit-exact.
    pub fn div_real(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c / s).collect(),
        }
    }

    pub fn add_scalar(&self, s: Complex64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += s;
        Self { coeffs }
    }

    /// Cauchy product: `c_k = sum_{j<=k} a_j b_{k-j}`, truncated to the
    /// smaller operand order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for j in 0..=k {
                acc += self.coeffs[j] * rhs.coeffs[k - j];
            }
            *c = acc;
        }
        Self { coeffs }
    }

    /// Recursive quotient: `c_k = (a_k - sum_{j=1..k} b_j c_{k-j}) / b_0`.
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let b0 = rhs.coeffs[0];
        if b0.norm() < DIV_FLOOR {
            return Err(SeriesError::NearZeroLeadingCoefficient {
                magnitude: b0.norm(),
            });
        }
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= rhs.coeffs[j] * coeffs[k - j];
            }
            coeffs[k] = acc / b0;
        }
        Ok(Self { coeffs })
    }

    /// Logarithm of a series with constant term exactly 1, via the
    /// recurrence from `a (log a)' = a'`:
    ///
    /// `l_k = a_k - (1/k) sum_{j=1..k-1} j l_j a_{k-j}`
    pub fn log1(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Complex64::ONE {
            return Err(SeriesError::NotUnitConstantTerm);
        }
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for k in 1..=n {
            let mut acc = Complex64::ZERO;
            for j in 1..k {
                acc += (j as f64) * coeffs[j] * self.coeffs[k - j];
            }
            coeffs[k] = self.coeffs[k] - acc / (k as f64);
        }
        Ok(Self { coeffs })
    }

    /// Exponential of a series vanishing at the origin, via `(exp a)' = a' exp a`:
    ///
    /// `e_0 = 1,  e_k = (1/k) sum_{j=1..k} j a_j e_{k-j}`
    pub fn exp0(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Complex64::ZERO {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[0] = Complex64::ONE;
        for k in 1..=n {
            let mut acc = Complex64::ZERO;
            for j in 1..=k {
                acc += (j as f64) * self.coeffs[j] * coeffs[k - j];
            }
            coeffs[k] = acc / (k as f64);
        }
        Ok(Self { coeffs })
    }

    /// Real power `a^lam` of a series with constant term exactly 1, via the
    /// ODE `a (a^lam)' = lam a' a^lam`:
    ///
    /// `p_0 = 1,  p_k = (1/k) sum_{j=1..k} (lam j - (k - j)) a_j p_{k-j}`
    ///
    /// For `a = 1 + z` this reproduces the generalized binomial coefficients
    /// `lam (lam-1) ... (lam-k+1) / k!` exactly (same multiplicative chain).
    pub fn pow_real(&self, lam: f64) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Complex64::ONE {
            return Err(SeriesError::NotUnitConstantTerm);
        }
        if !lam.is_finite() {
            return Err(SeriesError::InvalidCoefficients);
        }
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[0] = Complex64::ONE;
        for k in 1..=n {
            let mut acc = Complex64::ZERO;
            for j in 1..=k {
                let w = lam * (j as f64) - ((k - j) as f64);
                acc += w * self.coeffs[j] * coeffs[k - j];
            }
            coeffs[k] = acc / (k as f64);
        }
        Ok(Self { coeffs })
    }

    /// Formal derivative: `c_k -> (k+1) c_{k+1}`; the order drops by one.
    /// The derivative of a constant is the zero constant.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: (0..n)
                .map(|k| ((k + 1) as f64) * self.coeffs[k + 1])
                .collect(),
        }
    }

    /// `int_0^z g(t)/t dt = sum_{k>=1} (g_k / k) z^k` for `g` vanishing at 0.
    pub fn integrate_quotient(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Complex64::ZERO {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for k in 1..=n {
            coeffs[k] = self.coeffs[k] / (k as f64);
        }
        Ok(Self { coeffs })
    }

    /// `int_0^z a(t) dt`; the order grows by one (no information is lost).
    pub fn antiderivative(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n + 2];
        for k in 0..=n {
            coeffs[k + 1] = self.coeffs[k] / ((k + 1) as f64);
        }
        Self { coeffs }
    }

    /// Multiplication by the monomial `z`; the order grows by one.
    pub fn mul_by_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Division by `z` for a series vanishing at the origin; order drops by one.
    pub fn div_by_z(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Complex64::ZERO {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Taylor coefficients of `outer(inner(z))` by Horner accumulation of
    /// inner powers; requires `inner(0) = 0` so the composition is a germ.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if inner.coeffs[0] != Complex64::ZERO {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncated(n);
        let mut acc = Self::constant(self.coeffs[n.min(self.order())], n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner).add_scalar(self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Horner evaluation of the polynomial at `z`.
    ///
    /// For `|z| = r < 1` the omitted tail of the underlying germ is bounded by
    /// `max_k |c_k| r^{N+1} / (1 - r)` when the germ's coefficients stay below
    /// `max_k |c_k|`; callers enforce the radius policy.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

impl std::ops::Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}
