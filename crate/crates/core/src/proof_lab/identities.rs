//! Pointwise checks of the identities linking `f`, `F = B_c f`, `p = zF'/F`
//! and `Lambda = 1 + zF''/F'`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{checked_ratio, sample, Samples};
use crate::operators::bernardi;
use crate::series::{EvaluationGrid, TruncatedSeries};

const ZERO_GUARD: f64 = 1e-12;

/// `p`, `z p'` and `Lambda` of `F` at `z`.
struct Quotients {
    p: Complex64,
    zdp: Complex64,
    lambda: Complex64,
}

fn quotients(f0: Complex64, f1: Complex64, f2: Complex64, z: Complex64) -> Result<Quotients> {
    let p = checked_ratio(z * f1, f0, z)?;
    let lambda = 1.0 + checked_ratio(z * f2, f1, z)?;
    // z p' = p (Lambda - p)
    Ok(Quotients { p, zdp: p * (lambda - p), lambda })
}

struct Transformed {
    f: TruncatedSeries,
    df: TruncatedSeries,
    big: [TruncatedSeries; 3],
}

impl Transformed {
    fn new(f: &TruncatedSeries, c: u32) -> Result<Self> {
        let big = bernardi(f, c)?;
        let d1 = big.differentiate();
        let d2 = d1.differentiate();
        Ok(Self { f: f.clone(), df: f.differentiate(), big: [big, d1, d2] })
    }

    fn sample(
        &self,
        grid: &EvaluationGrid,
        eval: impl Fn(Complex64, &Quotients) -> Result<Complex64> + Sync,
    ) -> Result<Samples> {
        let [b0, b1, b2] = &self.big;
        sample(grid, &[&self.f, &self.df, b0, b1, b2], |z| {
            let q = quotients(b0.eval_unchecked(z), b1.eval_unchecked(z), b2.eval_unchecked(z), z)?;
            eval(z, &q)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmResidual {
    /// `max |z p'/(p + c) + p - 1|` over the grid.
    pub transform_level: f64,
    /// `max |z f'/f - 1|` over the same grid.
    pub direct_level: f64,
    pub residual: f64,
    pub warnings: Vec<String>,
}

fn max_norm(s: &Samples) -> f64 {
    s.values.iter().map(|&(_, w)| w.norm()).fold(0.0, f64::max)
}

/// Compares the `S_M` level of `f` with the level read off `p = zF'/F`.
pub fn sm_characterization_residual(f: &TruncatedSeries, c: u32, grid: &EvaluationGrid) -> Result<SmResidual> {
    let t = Transformed::new(f, c)?;
    let cc = c as f64;
    let via_p = t.sample(grid, |z, q| {
        if (q.p + cc).norm() < ZERO_GUARD {
            return Err(Error::ZeroDenominator { re: z.re, im: z.im });
        }
        Ok(q.zdp / (q.p + cc) + q.p - 1.0)
    })?;
    let direct = t.sample(grid, |z, _| {
        Ok(checked_ratio(z * t.df.eval_unchecked(z), t.f.eval_unchecked(z), z)? - 1.0)
    })?;
    let (transform_level, direct_level) = (max_norm(&via_p), max_norm(&direct));
    Ok(SmResidual {
        transform_level,
        direct_level,
        residual: transform_level - direct_level,
        warnings: via_p.warnings,
    })
}

/// `max |Lambda + (c - 1) - c/p| / |1 + c/p|` over the grid, the same level
/// as [`sm_characterization_residual`], written through `Lambda = 1 + z F''/F'`.
pub fn convexity_form_level(f: &TruncatedSeries, c: u32, grid: &EvaluationGrid) -> Result<f64> {
    let t = Transformed::new(f, c)?;
    let cc = c as f64;
    let s = t.sample(grid, |z, q| {
        let inv = cc / q.p;
        checked_ratio(q.lambda + (cc - 1.0) - inv, 1.0 + inv, z)
    })?;
    Ok(max_norm(&s))
}

/// `min (r - |1/p - a|)` over the grid with `a = 1/(1-M^2)`, `r = M/(1-M^2)`;
/// nonnegative when `f` is in `S_M`.
pub fn reciprocal_disk_margin(f: &TruncatedSeries, c: u32, m: f64, grid: &EvaluationGrid) -> Result<f64> {
    let params = super::ProofParams::new(c, m)?;
    let t = Transformed::new(f, c)?;
    let s = t.sample(grid, |z, q| checked_ratio(Complex64::new(1.0, 0.0), q.p, z))?;
    Ok(s.values.iter().map(|&(_, w)| params.r - (w - params.a).norm()).fold(f64::INFINITY, f64::min))
}

/// `max |(1 + zF''/F') - (z p'/p + p)|` with `p'` computed independently
/// from `F`, `F'`, `F''`.
pub fn lambda_identity_check(big: &TruncatedSeries, grid: &EvaluationGrid) -> Result<f64> {
    if !big.is_normalized() {
        return Err(Error::NotUnitSeries { re: big.leading().re, im: big.leading().im, lowest_power: big.lowest_power() });
    }
    let d1 = big.differentiate();
    let d2 = d1.differentiate();
    let s = sample(grid, &[big, &d1, &d2], |z| {
        let (f0, f1, f2) = (big.eval_unchecked(z), d1.eval_unchecked(z), d2.eval_unchecked(z));
        let lambda = 1.0 + checked_ratio(z * f2, f1, z)?;
        let p = checked_ratio(z * f1, f0, z)?;
        // z p' = z F'/F + z^2 F''/F - (z F'/F)^2
        let zdp = p + z * checked_ratio(z * f2, f0, z)? - p * p;
        Ok(lambda - (zdp / p + p))
    })?;
    Ok(max_norm(&s))
}
