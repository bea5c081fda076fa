//! Constants around the Libera transform on `S_M`, the polynomial witnesses
//! showing it fails to be convex for `M > 1/2`, and a probe between the two
//! bounds.

mod corpus;
mod probe;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::sm_level;
use crate::series::{EvaluationGrid, TruncatedSeries};

pub use corpus::{blaschke, corpus, expstar, koebe, poly, pvalent, CorpusMember, Family};
pub use probe::{conjecture_probe, Expectation, ProbeRow};

/// `sqrt(c^2 + 1) - c`.
pub fn m_threshold(c: u32) -> f64 {
    crate::proof_lab::threshold(c)
}

const OCTIC: [f64; 9] = [-8.0, 2.0, 0.0, 18.0, 67.0, 30.0, 48.0, 14.0, 7.0];

/// `7M^8 + 14M^7 + 48M^6 + 30M^5 + 67M^4 + 18M^3 + 2M - 8`.
pub fn oros_polynomial(m: f64) -> f64 {
    OCTIC.iter().rev().fold(0.0, |acc, &a| acc * m + a)
}

/// Smallest root of [`oros_polynomial`] in `(0, 1)`: the first sign change
/// over 1000 subintervals, refined by bisection.
pub fn find_m_star() -> Result<f64> {
    const PIECES: usize = 1000;
    let mut lo = 0.0;
    let mut f_lo = oros_polynomial(lo);
    for k in 1..=PIECES {
        let hi = k as f64 / PIECES as f64;
        let f_hi = oros_polynomial(hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_lo.signum() != f_hi.signum() {
            return Ok(bisect(oros_polynomial, lo, hi, f_lo));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::NoSignChange(0.0, 1.0))
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let sign = f_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-15 {
            break;
        }
        if f(mid).signum() == sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `(M - 3 + sqrt(M^2 + 2M + 9)) / 2`: for `f` in `S_M` the Libera image
/// lies in `S_R` with `R` at most this value.
pub fn r_bound(m: f64) -> Result<f64> {
    if !(m > 0.0 && m <= 1.0) {
        return Err(Error::BadM(m));
    }
    // same value, without the cancellation near M = 0
    Ok(4.0 * m / ((m * m + 2.0 * m + 9.0).sqrt() + 3.0 - m))
}

/// `(m^2 - 1)/(2m^2 - m - 1) = (m + 1)/(2m + 1)`.
pub fn mu(m: u32) -> Result<f64> {
    if m < 2 {
        return Err(Error::BadParams(format!("mu needs m >= 2, got {m}")));
    }
    let m = m as f64;
    Ok((m * m - 1.0) / (2.0 * m * m - m - 1.0))
}

/// `1 + z F''/F'` at `z`.
pub fn convexity_functional(big: &TruncatedSeries, z: Complex64) -> Result<Complex64> {
    let d1 = big.differentiate();
    let d2 = d1.differentiate();
    crate::geometry::checked_ratio(z * d2.evaluate(z)?, d1.evaluate(z)?, z).map(|v| 1.0 + v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalWitness {
    #[serde(rename = "M")]
    pub m_level: f64,
    pub m: u32,
    pub lambda: f64,
    pub alpha: f64,
    pub f0: TruncatedSeries,
    #[serde(rename = "F0")]
    pub big_f0: TruncatedSeries,
    pub z1: Complex64,
    pub z1_modulus: f64,
    /// `|1 + z F0''/F0'|` at `z1`.
    pub lambda_at_z1: f64,
    /// Sampled `max |z f0'/f0 - 1|`.
    pub f0_level: f64,
}

/// Grid used for witness checks: the default radii plus radii straddling
/// `|z1|`, which can lie beyond the outermost default radius.
pub fn witness_grid(z1_modulus: f64, angular_count: usize) -> Result<EvaluationGrid> {
    let mut radii = EvaluationGrid::with_angles(angular_count).radii().to_vec();
    radii.push(z1_modulus);
    radii.push(0.5 * (1.0 + z1_modulus));
    EvaluationGrid::from_unsorted(radii, angular_count)
}

/// The witness `f0 = z + lambda z^m` for level `M > 1/2` whose Libera
/// image `F0 = z + alpha z^m` has `1 + z F0''/F0'` vanishing at `z1` in the disk.
pub fn build_extremal(m_level: f64) -> Result<ExtremalWitness> {
    if !(m_level > 0.5 && m_level < 1.0) {
        return Err(Error::BadM(m_level));
    }
    let mut m = 2u32;
    while mu(m)? >= m_level {
        m += 1;
    }
    let mf = m as f64;
    let lambda = m_level / (mf - 1.0 + m_level);
    let alpha = 2.0 * lambda / (mf + 1.0);
    let order = m as usize + 32;
    let mut c0 = vec![0.0; m as usize];
    c0[0] = 1.0;
    *c0.last_mut().expect("m >= 2") = lambda;
    let f0 = TruncatedSeries::real_polynomial(1, &c0, order)?;
    let big_f0 = crate::operators::libera(&f0)?;
    // z^(m-1) = -1/(alpha m^2)
    let z1_modulus = (1.0 / (alpha * mf * mf)).powf(1.0 / (mf - 1.0));
    let z1 = Complex64::from_polar(z1_modulus, PI / (mf - 1.0));
    if z1_modulus >= 1.0 {
        return Err(Error::InvariantViolated(format!("|z1| = {z1_modulus} is not inside the disk")));
    }
    let lambda_at_z1 = convexity_functional(&big_f0, z1)?.norm();
    if lambda_at_z1 > 1e-10 {
        return Err(Error::InvariantViolated(format!("|Lambda(z1)| = {lambda_at_z1:e}")));
    }
    let (f0_level, _, _) = sm_level(&f0, &witness_grid(z1_modulus, 4096)?)?;
    if f0_level > m_level + 1e-9 {
        return Err(Error::InvariantViolated(format!("f0 level {f0_level} exceeds M = {m_level}")));
    }
    Ok(ExtremalWitness { m_level, m, lambda, alpha, f0, big_f0, z1, z1_modulus, lambda_at_z1, f0_level })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub c: u32,
    #[serde(rename = "M_c")]
    pub m_c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsTable {
    pub thresholds: Vec<ThresholdRow>,
    #[serde(rename = "M_star")]
    pub m_star: f64,
    /// Octic evaluated at `M_star`.
    pub m_star_residual: f64,
    /// `(M, R(M))` samples.
    pub r_samples: Vec<(f64, f64)>,
    /// Named consistency checks and whether they hold.
    pub checks: Vec<(String, bool)>,
}

impl ConstantsTable {
    pub fn build(c_max: u32) -> Result<Self> {
        let thresholds: Vec<ThresholdRow> = (0..=c_max).map(|c| ThresholdRow { c, m_c: m_threshold(c) }).collect();
        let m_star = find_m_star()?;
        let r_samples = (1..=9)
            .map(|k| {
                let m = k as f64 / 10.0;
                r_bound(m).map(|r| (m, r))
            })
            .collect::<Result<Vec<_>>>()?;
        let m1 = m_threshold(1);
        let checks = vec![
            ("M_0 = 1".to_string(), thresholds[0].m_c == 1.0),
            ("M_c strictly decreasing".to_string(), thresholds.windows(2).all(|w| w[1].m_c < w[0].m_c)),
            ("M_1 < 1/2".to_string(), m1 < 0.5),
            ("M_star < M_1".to_string(), m_star < m1),
            ("R(M) < M".to_string(), r_samples.iter().all(|&(m, r)| r < m)),
        ];
        Ok(Self { thresholds, m_star, m_star_residual: oros_polynomial(m_star), r_samples, checks })
    }
}

#[cfg(test)]
mod tests;
