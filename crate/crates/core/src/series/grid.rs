use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sample points `r_j e^{2 pi i k / K}` covering the disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationGrid {
    radii: Vec<f64>,
    angular_count: usize,
}

pub const DEFAULT_ANGULAR_COUNT: usize = 4096;
pub const MIN_ANGULAR_COUNT: usize = 16;

impl EvaluationGrid {
    pub fn new(radii: Vec<f64>, angular_count: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidGrid("no radii".into()));
        }
        if angular_count < MIN_ANGULAR_COUNT {
            return Err(Error::InvalidGrid(format!(
                "angular_count {angular_count} below {MIN_ANGULAR_COUNT}"
            )));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidGrid("radii must lie in (0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("radii must be strictly ascending".into()));
        }
        Ok(Self { radii, angular_count })
    }

    /// Radii `1 - 2^-j`, `j = 1..=9`, with 4096 angles.
    pub fn default_grid() -> Self {
        Self::with_angles(DEFAULT_ANGULAR_COUNT)
    }

    pub fn with_angles(angular_count: usize) -> Self {
        let radii = (1..=9).map(|j| 1.0 - 0.5_f64.powi(j)).collect();
        Self::new(radii, angular_count).expect("default grid is valid")
    }

    /// Default radii below `rho_max`, followed by `rho_max` itself.
    pub fn capped(rho_max: f64, angular_count: usize) -> Result<Self> {
        if !(rho_max > 0.0 && rho_max < 1.0) {
            return Err(Error::InvalidGrid(format!("rho_max {rho_max} outside (0, 1)")));
        }
        let mut radii: Vec<f64> =
            (1..=9).map(|j| 1.0 - 0.5_f64.powi(j)).filter(|&r| r < rho_max).collect();
        radii.push(rho_max);
        Self::new(radii, angular_count)
    }

    /// A grid with the given radii sorted and deduplicated.
    pub fn from_unsorted(mut radii: Vec<f64>, angular_count: usize) -> Result<Self> {
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        Self::new(radii, angular_count)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().expect("nonempty")
    }

    /// Angles `theta_k = 2 pi k / K`.
    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        let k = self.angular_count as f64;
        (0..self.angular_count).map(move |i| std::f64::consts::TAU * i as f64 / k)
    }
}
