//! Formal log/exp/power of unit series and the two classical quotients.

use num_complex::Complex64;

use super::{TruncatedSeries, ZERO_LEADING};
use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

impl TruncatedSeries {
    fn require_unit(&self) -> Result<()> {
        if self.lowest_power != 0 || (self.coeffs[0] - 1.0).norm() > UNIT_TOL {
            let c = if self.lowest_power == 0 { self.coeffs[0] } else { Complex64::new(0.0, 0.0) };
            return Err(Error::NotUnitSeries { re: c.re, im: c.im, lowest_power: self.lowest_power });
        }
        Ok(())
    }

    /// Principal logarithm of a series with constant term one.
    ///
    /// Uses `f L' = f'`, i.e. `n L_n = n f_n - sum_{k=1}^{n-1} k L_k f_{n-k}`.
    pub fn log_unit(&self) -> Result<Self> {
        self.require_unit()?;
        let f = &self.coeffs;
        let inv = 1.0 / f[0];
        let mut log = vec![Complex64::new(0.0, 0.0); f.len()];
        for n in 1..f.len() {
            let mut acc = f[n] * n as f64;
            for k in 1..n {
                acc -= log[k] * (k as f64) * f[n - k];
            }
            log[n] = acc * inv / n as f64;
        }
        Ok(Self { lowest_power: 0, coeffs: log })
    }

    /// Exponential of a series with nonnegative powers.
    ///
    /// Uses `E' = f' E`, i.e. `n e_n = sum_{k=1}^n k f_k e_{n-k}`; the
    /// constant term contributes the factor `exp(f_0)`.
    pub fn exp_series(&self) -> Self {
        let f = self.with_lowest_power(0).coeffs;
        let mut e = vec![Complex64::new(0.0, 0.0); f.len()];
        e[0] = f[0].exp();
        for n in 1..f.len() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=n {
                acc += f[k] * (k as f64) * e[n - k];
            }
            e[n] = acc / n as f64;
        }
        Self { lowest_power: 0, coeffs: e }
    }

    /// Principal power `f^beta = exp(beta log f)` of a unit series.
    pub fn pow_complex(&self, beta: Complex64) -> Result<Self> {
        Ok(self.log_unit()?.scale(beta).exp_series())
    }

    /// Series of `z f'(z) / f(z)`; its constant term is the lowest power of `f`.
    pub fn quotient_starlike(&self) -> Result<Self> {
        self.check_quotient_input()?;
        self.z_derivative().divide(self)
    }

    /// Series of `1 + z f''(z) / f'(z)`, computed as `(z f')' / f'`.
    pub fn quotient_convex(&self) -> Result<Self> {
        self.check_quotient_input()?;
        let fp = self.differentiate();
        self.z_derivative().differentiate().divide(&fp)
    }

    /// Inverse of [`quotient_starlike`](Self::quotient_starlike): the series
    /// `z^p exp(int_0^z (q(t) - p)/t dt)` whose quotient is `q`, where
    /// `p = q(0)` must be a positive integer.
    pub fn from_starlike_quotient(q: &Self) -> Result<Self> {
        let p = q.coeff(0);
        let valence = p.re.round();
        if q.lowest_power != 0 || valence < 1.0 || (p - valence).norm() > UNIT_TOL {
            return Err(Error::BadParams(format!("quotient must start at a positive integer, got {p}")));
        }
        let order = q.order();
        let exponent = Self::from_fn(0, order, |n| if n == 0 { Complex64::new(0.0, 0.0) } else { q.coeff(n) / n as f64 });
        Ok(exponent.exp_series().shift_up(valence as usize))
    }

    fn check_quotient_input(&self) -> Result<()> {
        if self.lowest_power == 0 {
            return Err(Error::BadParams("quotients need f(0) = 0 (lowest power >= 1)".into()));
        }
        if self.coeffs[0].norm() < ZERO_LEADING {
            return Err(Error::ZeroLeadingCoefficient(self.coeffs[0].norm()));
        }
        Ok(())
    }
}
