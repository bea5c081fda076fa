//! Sampling functionals on an [`EvaluationGrid`] and reducing region margins.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::class::{ClassSpec, Functional};
use super::region::RegionSpec;
use crate::error::{Error, Result};
use crate::series::{EvaluationGrid, TruncatedSeries, TAIL_GUARD};

/// Pass threshold for scans on polynomial inputs.
pub const TOL_EXACT: f64 = 1e-9;
/// Pass threshold once the tail guard clipped a radius.
pub const TOL_CLIPPED: f64 = 1e-6;

const TINY: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    /// Minimum of the region margin over all samples.
    pub min_margin: f64,
    /// Sample point attaining the minimum.
    pub argmin: Complex64,
    /// Functional value at `argmin`.
    pub argmin_value: Complex64,
    /// The grid actually sampled (after tail clipping).
    pub grid: EvaluationGrid,
    /// Largest admissible radius when the tail guard clipped the grid.
    pub clipped_radius: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Values of a pointwise functional on a tail-guarded grid.
#[derive(Clone, Debug)]
pub struct Samples {
    pub grid: EvaluationGrid,
    pub clipped_radius: Option<f64>,
    pub warnings: Vec<String>,
    /// `(z, value)` in radius-major, angle-minor order.
    pub values: Vec<(Complex64, Complex64)>,
}

impl Samples {
    /// Reduces margins to a report; ties resolve to the first sample.
    pub fn against(&self, region: &RegionSpec, tolerance: Option<f64>) -> MembershipReport {
        let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &(z, w) in &self.values {
            let m = region.margin(w);
            if m < best.0 || m.is_nan() {
                best = (m, z, w);
                if m.is_nan() {
                    break;
                }
            }
        }
        let tolerance = tolerance.unwrap_or(if self.clipped_radius.is_some() { TOL_CLIPPED } else { TOL_EXACT });
        let verdict = if best.0 > -tolerance { Verdict::Pass } else { Verdict::Fail };
        MembershipReport {
            min_margin: best.0,
            argmin: best.1,
            argmin_value: best.2,
            grid: self.grid.clone(),
            clipped_radius: self.clipped_radius,
            tolerance,
            verdict,
            warnings: self.warnings.clone(),
        }
    }

    /// Largest `|value - center|` and where it occurs.
    pub fn max_deviation(&self, center: Complex64) -> (f64, Complex64) {
        self.values.iter().fold((0.0, Complex64::new(0.0, 0.0)), |acc, &(z, w)| {
            let d = (w - center).norm();
            if d > acc.0 { (d, z) } else { acc }
        })
    }

    /// Smallest real part and where it occurs.
    pub fn min_real(&self) -> (f64, Complex64) {
        self.values.iter().fold((f64::INFINITY, Complex64::new(0.0, 0.0)), |acc, &(z, w)| {
            if w.re < acc.0 { (w.re, z) } else { acc }
        })
    }
}

/// Restricts `grid` to radii where every series in `guarded` has a tail
/// bound below [`TAIL_GUARD`]; inadmissible radii collapse onto the largest
/// admissible one.
pub fn guard_grid(
    grid: &EvaluationGrid,
    guarded: &[&TruncatedSeries],
) -> Result<(EvaluationGrid, Option<f64>, Vec<String>)> {
    let limit = guarded.iter().map(|s| s.admissible_radius(TAIL_GUARD)).fold(1.0, f64::min);
    let kept: Vec<f64> = grid.radii().iter().copied().filter(|&r| r < limit).collect();
    if kept.len() == grid.radii().len() {
        return Ok((grid.clone(), None, Vec::new()));
    }
    if kept.is_empty() {
        return Err(Error::AllRadiiClipped(limit));
    }
    let mut radii = kept;
    if limit > *radii.last().expect("nonempty") {
        radii.push(limit);
    }
    let warning = format!(
        "tail guard clipped radii above {limit:.6} (requested max {:.6})",
        grid.max_radius()
    );
    let clipped = EvaluationGrid::new(radii, grid.angular_count())?;
    Ok((clipped, Some(limit), vec![warning]))
}

/// Evaluates `eval` at every point of the guarded grid, in parallel over
/// radii; the output order is independent of scheduling.
pub fn sample<F>(grid: &EvaluationGrid, guarded: &[&TruncatedSeries], eval: F) -> Result<Samples>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let (grid, clipped_radius, warnings) = guard_grid(grid, guarded)?;
    let angles: Vec<f64> = grid.angles().collect();
    let rows: Vec<Result<Vec<(Complex64, Complex64)>>> = grid
        .radii()
        .par_iter()
        .map(|&r| {
            angles
                .iter()
                .map(|&t| {
                    let z = Complex64::from_polar(r, t);
                    eval(z).map(|w| (z, w))
                })
                .collect()
        })
        .collect();
    let mut values = Vec::with_capacity(grid.radii().len() * angles.len());
    for row in rows {
        values.extend(row?);
    }
    Ok(Samples { grid, clipped_radius, warnings, values })
}

pub(crate) fn checked_ratio(num: Complex64, den: Complex64, z: Complex64) -> Result<Complex64> {
    if den.norm() < TINY || !den.is_finite() {
        return Err(Error::ZeroDenominator { re: z.re, im: z.im });
    }
    Ok(num / den)
}

/// Samples a quotient functional of `f` pointwise from `f`, `f'`, `f''`.
pub fn sample_functional(
    f: &TruncatedSeries,
    functional: Functional,
    grid: &EvaluationGrid,
) -> Result<Samples> {
    if f.lowest_power() == 0 {
        return Err(Error::BadParams("quotient functionals need f(0) = 0".into()));
    }
    if f.leading().norm() < TINY {
        return Err(Error::ZeroLeadingCoefficient(f.leading().norm()));
    }
    let d1 = f.differentiate();
    match functional {
        Functional::StarlikeQuotient | Functional::SpiralQuotient { .. } => {
            let rot = match functional {
                Functional::SpiralQuotient { beta } => Complex64::from_polar(1.0, beta),
                _ => Complex64::new(1.0, 0.0),
            };
            sample(grid, &[f, &d1], |z| {
                Ok(rot * checked_ratio(z * d1.eval_unchecked(z), f.eval_unchecked(z), z)?)
            })
        }
        Functional::ConvexQuotient => {
            let d2 = d1.differentiate();
            sample(grid, &[&d1, &d2], |z| {
                Ok(1.0 + checked_ratio(z * d2.eval_unchecked(z), d1.eval_unchecked(z), z)?)
            })
        }
    }
}

/// Sampled class membership of `f`.
pub fn membership_scan(f: &TruncatedSeries, class: &ClassSpec, grid: &EvaluationGrid) -> Result<MembershipReport> {
    let samples = sample_functional(f, class.functional, grid)?;
    Ok(samples.against(&class.region, None))
}

/// Sampled level `sup |z f'/f - 1|` (the smallest `M` with `f` in `S_M`
/// on the grid) and where it is attained.
pub fn sm_level(f: &TruncatedSeries, grid: &EvaluationGrid) -> Result<(f64, Complex64, Samples)> {
    let samples = sample_functional(f, Functional::StarlikeQuotient, grid)?;
    let (level, at) = samples.max_deviation(Complex64::new(1.0, 0.0));
    Ok((level, at, samples))
}

/// Sampled `min Re(1 + z f''/f')` and where it is attained.
pub fn convexity_margin(f: &TruncatedSeries, grid: &EvaluationGrid) -> Result<(f64, Complex64, Samples)> {
    let samples = sample_functional(f, Functional::ConvexQuotient, grid)?;
    let (m, at) = samples.min_real();
    Ok((m, at, samples))
}
