//! Shared input builders for the benchmark targets.

use num_complex::Complex64;
use spirallog::families::SchwarzFunction;
use spirallog::series::TruncatedSeries;

/// Seeded series with unit constant term, the common shape for exp/log/pow
/// benchmarks.
pub fn unit_series(seed: u64, order: usize) -> TruncatedSeries {
    let mut coeffs = TruncatedSeries::seeded(seed, order, 0.125)
        .coeffs()
        .to_vec();
    coeffs[0] = Complex64::ONE;
    TruncatedSeries::from_coeffs(coeffs).expect("finite coefficients")
}

/// Seeded Schwarz witness with the degree the sweeps use for this seed.
pub fn bench_schwarz(seed: u64, order: usize) -> SchwarzFunction {
    let degree = 1 + (seed % 6) as usize;
    SchwarzFunction::sample(seed, degree, order).expect("valid degree")
}
