//! Sampling grids that discretize "for all z in the disk" conditions.

use num_complex::Complex64;
use thiserror::Error;

use crate::tolerances::{DEFAULT_ANGLES, DEFAULT_R_MAX};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("radii must be ascending, positive, and at most r_max < 1")]
    InvalidRadii,
    #[error("a grid needs at least one sample angle per ring")]
    NoAngles,
}

/// Concentric rings of sample points inside the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationGrid {
    radii: Vec<f64>,
    angles_per_ring: usize,
}

impl EvaluationGrid {
    pub fn new(radii: Vec<f64>, angles_per_ring: usize) -> Result<Self, GridError> {
        if angles_per_ring == 0 {
            return Err(GridError::NoAngles);
        }
        let ascending = radii.windows(2).all(|w| w[0] < w[1]);
        let in_range = radii.iter().all(|&r| r > 0.0 && r < 1.0);
        if radii.is_empty() || !ascending || !in_range {
            return Err(GridError::InvalidRadii);
        }
        Ok(Self {
            radii,
            angles_per_ring,
        })
    }

    /// Radius ladder 0.1, 0.2, ... strictly below `r_max`, then `r_max` itself.
    pub fn with_r_max(r_max: f64, angles_per_ring: usize) -> Result<Self, GridError> {
        if !(0.0..1.0).contains(&r_max) || r_max <= 0.0 {
            return Err(GridError::InvalidRadii);
        }
        let mut radii = Vec::new();
        let mut r = 0.1;
        while r < r_max - 1e-12 {
            radii.push(r);
            r += 0.1;
        }
        radii.push(r_max);
        Self::new(radii, angles_per_ring)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    /// Points of one ring, angles `2 pi k / angles_per_ring`.
    pub fn ring(&self, radius: f64) -> Vec<Complex64> {
        let a = self.angles_per_ring;
        (0..a)
            .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / a as f64))
            .collect()
    }

    /// All grid points, ring by ring from the innermost radius.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii.iter().flat_map(move |&r| self.ring(r))
    }
}

impl Default for EvaluationGrid {
    fn default() -> Self {
        Self::with_r_max(DEFAULT_R_MAX, DEFAULT_ANGLES).unwrap()
    }
}
