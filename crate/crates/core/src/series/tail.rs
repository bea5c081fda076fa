//! Truncation-error estimates for evaluating a series inside the disk.
//!
//! The magnitudes of the last [`TAIL_WINDOW`] retained coefficients are fitted
//! by `|a_n| ~ C q^n` (least squares on `ln |a_n|`), and the omitted tail at
//! radius `rho` is bounded by `C q^(N+1) rho^(N+1) / (1 - q rho)`. Polynomials
//! (an identically zero window) have a zero bound.

use serde::{Deserialize, Serialize};

use super::TruncatedSeries;

/// Number of trailing coefficients used in the geometric fit.
pub const TAIL_WINDOW: usize = 16;

/// A radius is admissible for sampling when the tail bound stays below this.
pub const TAIL_GUARD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub rho: f64,
    /// Estimate of `|sum_{n>N} a_n z^n|` at `|z| = rho`; `+inf` when the fit
    /// does not converge at this radius.
    pub bound: f64,
}

impl TailEstimate {
    pub fn is_finite(&self) -> bool {
        self.bound.is_finite()
    }
}

/// Outcome of the geometric fit; `Unfit` when the window has fewer than two
/// nonzero coefficients.
#[derive(Clone, Copy, Debug)]
pub(crate) enum TailFit {
    Exact,
    Geometric { ln_c: f64, ln_q: f64 },
    Unfit,
}

impl TruncatedSeries {
    pub(crate) fn tail_fit(&self) -> TailFit {
        if self.is_polynomial() {
            return TailFit::Exact;
        }
        let start = self.coeffs.len().saturating_sub(TAIL_WINDOW);
        let pts: Vec<(f64, f64)> = self.coeffs[start..]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(j, c)| ((self.lowest_power + start + j) as f64, c.norm().ln()))
            .collect();
        if pts.len() < 2 {
            return TailFit::Unfit;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let ln_q = sxy / sxx;
        TailFit::Geometric { ln_c: my - ln_q * mx, ln_q }
    }

    /// Tail estimate at radius `rho`.
    pub fn tail_estimate(&self, rho: f64) -> TailEstimate {
        let bound = match self.tail_fit() {
            TailFit::Exact => 0.0,
            TailFit::Unfit => f64::INFINITY,
            TailFit::Geometric { ln_c, ln_q } => {
                let n1 = (self.order() + 1) as f64;
                let ln_qr = ln_q + rho.ln();
                if rho <= 0.0 {
                    0.0
                } else if ln_qr >= 0.0 {
                    f64::INFINITY
                } else {
                    (ln_c + n1 * ln_qr - (-ln_qr.exp()).ln_1p()).exp()
                }
            }
        };
        TailEstimate { rho, bound }
    }

    /// Largest radius in `[0, 1)` whose tail bound is below `guard`
    /// (`1.0` for polynomials, where every radius is admissible).
    pub fn admissible_radius(&self, guard: f64) -> f64 {
        match self.tail_fit() {
            TailFit::Exact => 1.0,
            TailFit::Unfit => 0.0,
            TailFit::Geometric { ln_q, .. } => {
                let mut lo = 0.0_f64;
                let mut hi = (-ln_q).exp().min(1.0);
                if self.tail_estimate(hi * (1.0 - 1e-15)).bound < guard {
                    return hi;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.tail_estimate(mid).bound < guard {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }
}
