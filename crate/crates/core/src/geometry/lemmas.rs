//! Sampled checks of the subordination and preservation lemmas.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::class::ClassSpec;
use super::region::RegionSpec;
use super::scan::{checked_ratio, membership_scan, sample, MembershipReport};
use crate::error::{Error, Result};
use crate::operators::{pfaltzgraff, OperatorSpec};
use crate::series::{EvaluationGrid, TruncatedSeries};

const ZERO_GUARD: f64 = 1e-12;

/// Trapezoidal mean of `Re(z k'/k)` on `|z| = rho`; the winding number of
/// `k` around 0 when `k` has no zeros on the circle.
pub fn valence_integral(k: &TruncatedSeries, rho: f64, angular_count: usize) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::OutsideDisk(rho));
    }
    if angular_count == 0 {
        return Err(Error::InvalidGrid("angular_count must be positive".into()));
    }
    let d = k.differentiate();
    let mut sum = 0.0;
    for j in 0..angular_count {
        let z = Complex64::from_polar(rho, TAU * j as f64 / angular_count as f64);
        let v = k.eval_unchecked(z);
        if v.norm() < ZERO_GUARD {
            return Err(Error::ZeroOnCircle { re: z.re, im: z.im });
        }
        sum += (z * d.eval_unchecked(z) / v).re;
    }
    Ok(sum / angular_count as f64)
}

/// Scans `k'/g'` (premise) and `k/g` (conclusion) against `region`.
pub fn verify_ratio_subordination(
    k: &TruncatedSeries,
    g: &TruncatedSeries,
    region: &RegionSpec,
    grid: &EvaluationGrid,
) -> Result<(MembershipReport, MembershipReport)> {
    if g.leading().norm() < ZERO_GUARD {
        return Err(Error::ZeroLeadingCoefficient(g.leading().norm()));
    }
    if k.lowest_power() < g.lowest_power() {
        return Err(Error::NegativePower { numerator: k.lowest_power(), denominator: g.lowest_power() });
    }
    let at_origin = if k.lowest_power() == g.lowest_power() {
        k.leading() / g.leading()
    } else {
        Complex64::new(0.0, 0.0)
    };
    if region.margin(at_origin) <= 0.0 {
        return Err(Error::BadParams(format!(
            "ratio at the origin {} is outside the region",
            crate::series::format_complex(at_origin)
        )));
    }
    let (dk, dg) = (k.differentiate(), g.differentiate());
    let premise = sample(grid, &[k, g, &dk, &dg], |z| checked_ratio(dk.eval_unchecked(z), dg.eval_unchecked(z), z))?
        .against(region, None);
    let conclusion = sample(grid, &[k, g], |z| checked_ratio(k.eval_unchecked(z), g.eval_unchecked(z), z))?
        .against(region, None);
    Ok((premise, conclusion))
}

/// Scans `f` and `op(f)` for membership in `class`.
pub fn preservation_check(
    f: &TruncatedSeries,
    class: &ClassSpec,
    op: &OperatorSpec,
    grid: &EvaluationGrid,
) -> Result<(MembershipReport, MembershipReport)> {
    let before = membership_scan(f, class, grid)?;
    let image = op.apply(f)?;
    let after = membership_scan(&image, class, grid)?;
    Ok((before, after))
}

/// Scans `Re(1 + lambda z f''/f') > 0` and starlikeness of `P_lambda(f)`.
pub fn pfaltzgraff_convexity_check(
    f: &TruncatedSeries,
    lambda: f64,
    grid: &EvaluationGrid,
) -> Result<(MembershipReport, MembershipReport)> {
    if !f.is_normalized() {
        return Err(Error::NotUnitSeries { re: f.leading().re, im: f.leading().im, lowest_power: f.lowest_power() });
    }
    let d1 = f.differentiate();
    let d2 = d1.differentiate();
    let premise = sample(grid, &[&d1, &d2], |z| {
        Ok(1.0 + lambda * checked_ratio(z * d2.eval_unchecked(z), d1.eval_unchecked(z), z)?)
    })?
    .against(&RegionSpec::right_of(0.0), None);
    let image = pfaltzgraff(f, Complex64::new(lambda, 0.0))?;
    let after = membership_scan(&image, &ClassSpec::starlike(), grid)?;
    Ok((premise, after))
}

