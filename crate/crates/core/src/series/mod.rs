//! Truncated complex power series and their arithmetic.
//!
//! A [`TruncatedSeries`] stores the coefficients of
//! `z^p (c_0 + c_1 z + ... + c_L z^L)`, where `p` is the lowest power and
//! `p + L` the truncation order. All terms above the order are unknown, so
//! every operation tracks the order it can still vouch for.

mod functions;
mod grid;
mod literal;
mod tail;

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use grid::{EvaluationGrid, DEFAULT_ANGULAR_COUNT};
pub use literal::{format_complex, parse_complex, SeriesLiteral};
pub use tail::{TailEstimate, TAIL_GUARD, TAIL_WINDOW};

/// Magnitude below which a leading coefficient counts as zero.
pub const ZERO_LEADING: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesLiteral", into = "SeriesLiteral")]
pub struct TruncatedSeries {
    lowest_power: usize,
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its lowest power and coefficients. The order is
    /// `lowest_power + coeffs.len() - 1`.
    pub fn new(lowest_power: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::BadParams("a series needs at least one coefficient".into()));
        }
        Ok(Self { lowest_power, coeffs })
    }

    /// A polynomial padded with zeros up to `order`.
    pub fn polynomial(lowest_power: usize, coeffs: &[Complex64], order: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::BadParams("a polynomial needs at least one coefficient".into()));
        }
        let degree = lowest_power + coeffs.len() - 1;
        if degree > order {
            return Err(Error::BadParams(format!(
                "polynomial of degree {degree} does not fit truncation order {order}"
            )));
        }
        let mut padded = coeffs.to_vec();
        padded.resize(order - lowest_power + 1, Complex64::new(0.0, 0.0));
        Ok(Self { lowest_power, coeffs: padded })
    }

    /// Real-coefficient convenience wrapper around [`TruncatedSeries::polynomial`].
    pub fn real_polynomial(lowest_power: usize, coeffs: &[f64], order: usize) -> Result<Self> {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::polynomial(lowest_power, &c, order)
    }

    /// Builds the series `sum a_n z^n` for `n = lowest_power..=order` from a
    /// coefficient rule.
    pub fn from_fn(lowest_power: usize, order: usize, rule: impl Fn(usize) -> Complex64) -> Self {
        assert!(order >= lowest_power, "order below lowest power");
        let coeffs = (lowest_power..=order).map(rule).collect();
        Self { lowest_power, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { lowest_power: 0, coeffs: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, Complex64::new(1.0, 0.0), order)
    }

    /// `coeff * z^power`, truncated at `order`.
    pub fn monomial(power: usize, coeff: Complex64, order: usize) -> Self {
        assert!(order >= power, "monomial power above order");
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order - power + 1];
        coeffs[0] = coeff;
        Self { lowest_power: power, coeffs }
    }

    /// The Koebe function `z/(1-z)^2`, coefficients `a_n = n`.
    pub fn koebe(order: usize) -> Self {
        Self::from_fn(1, order, |n| Complex64::new(n as f64, 0.0))
    }

    pub fn lowest_power(&self) -> usize {
        self.lowest_power
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest retained power.
    pub fn order(&self) -> usize {
        self.lowest_power + self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`; zero below the lowest power and above the order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        if n < self.lowest_power {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.get(n - self.lowest_power).copied().unwrap_or_default()
    }

    /// Coefficient at the lowest power.
    pub fn leading(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `f(0) = 0` and `f'(0) = 1`.
    pub fn is_normalized(&self) -> bool {
        self.lowest_power == 1 && (self.coeffs[0] - 1.0).norm() <= 1e-12
    }

    /// Constant term equal to one (within `1e-12`).
    pub fn is_unit(&self) -> bool {
        self.lowest_power == 0 && (self.coeffs[0] - 1.0).norm() <= 1e-12
    }

    /// True when the series ends in a run of exact zeros at least
    /// `min(TAIL_WINDOW, len/2)` long (and at least 2), i.e. it is a
    /// polynomial comfortably inside its order. Sparse series such as
    /// `sin z` are not mistaken for polynomials.
    pub fn is_polynomial(&self) -> bool {
        let zeros = self.coeffs.iter().rev().take_while(|c| c.norm() == 0.0).count();
        zeros == self.coeffs.len() || zeros >= TAIL_WINDOW.min(self.coeffs.len() / 2).max(2)
    }

    /// Highest power with a nonzero coefficient, if any.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() != 0.0).map(|j| self.lowest_power + j)
    }

    /// Drops terms above `order` (no-op when already at or below it).
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order < self.lowest_power {
            return Err(Error::BadParams(format!(
                "cannot truncate at {order} below lowest power {}",
                self.lowest_power
            )));
        }
        let len = (order - self.lowest_power + 1).min(self.coeffs.len());
        Ok(Self { lowest_power: self.lowest_power, coeffs: self.coeffs[..len].to_vec() })
    }

    /// Re-expresses the series with a smaller lowest power (explicit zeros).
    pub fn with_lowest_power(&self, lowest_power: usize) -> Self {
        if lowest_power >= self.lowest_power {
            return self.clone();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.lowest_power - lowest_power];
        coeffs.extend_from_slice(&self.coeffs);
        Self { lowest_power, coeffs }
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        Self { lowest_power: self.lowest_power + k, coeffs: self.coeffs.clone() }
    }

    /// Divides by `z^k`; fails when that would create negative powers.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.lowest_power {
            return Err(Error::NegativePower { numerator: self.lowest_power, denominator: k });
        }
        Ok(Self { lowest_power: self.lowest_power - k, coeffs: self.coeffs.clone() })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            lowest_power: self.lowest_power,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// The series of `f(t z)`: coefficient `a_n` becomes `a_n t^n`.
    pub fn dilate(&self, t: Complex64) -> Self {
        let mut pow = t.powu(self.lowest_power as u32);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * pow;
                pow *= t;
                v
            })
            .collect();
        Self { lowest_power: self.lowest_power, coeffs }
    }

    /// The series of `f(z^k)` truncated at `order`.
    pub fn substitute_power(&self, k: usize, order: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadParams("substitution power must be positive".into()));
        }
        let lowest = self.lowest_power * k;
        if lowest > order {
            return Err(Error::BadParams(format!("f(z^{k}) starts above order {order}")));
        }
        // Known terms of f only reach self.order(); beyond k*order(f) the result is unknown.
        let order = order.min(self.order() * k + k - 1);
        let mut out = Self::from_fn(lowest, order, |_| Complex64::new(0.0, 0.0));
        for (j, c) in self.coeffs.iter().enumerate() {
            let n = (self.lowest_power + j) * k;
            if n > order {
                break;
            }
            out.coeffs[n - lowest] = *c;
        }
        Ok(out)
    }

    /// Term-by-term derivative `n a_n z^(n-1)`.
    pub fn differentiate(&self) -> Self {
        let p = self.lowest_power;
        if p >= 1 {
            let coeffs =
                self.coeffs.iter().enumerate().map(|(j, c)| c * (p + j) as f64).collect();
            return Self { lowest_power: p - 1, coeffs };
        }
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..].iter().enumerate().map(|(j, c)| c * (j + 1) as f64).collect();
        Self { lowest_power: 0, coeffs }
    }

    /// The primitive vanishing at the origin, `a_n z^(n+1) / (n+1)`.
    pub fn integrate_from_zero(&self) -> Self {
        let p = self.lowest_power;
        let coeffs =
            self.coeffs.iter().enumerate().map(|(j, c)| c / (p + j + 1) as f64).collect();
        Self { lowest_power: p + 1, coeffs }
    }

    /// Series of `z f'(z)`; keeps lowest power and order.
    pub fn z_derivative(&self) -> Self {
        let p = self.lowest_power;
        let coeffs = self.coeffs.iter().enumerate().map(|(j, c)| c * (p + j) as f64).collect();
        Self { lowest_power: p, coeffs }
    }

    /// Cauchy product. The order is the largest one both factors determine:
    /// `min(N_f + p_g, N_g + p_f)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { lowest_power: self.lowest_power + other.lowest_power, coeffs }
    }

    /// Power series quotient `self / other`; lowest powers subtract.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        let g0 = other.coeffs[0];
        if g0.norm() < ZERO_LEADING {
            return Err(Error::ZeroLeadingCoefficient(g0.norm()));
        }
        if self.lowest_power < other.lowest_power {
            return Err(Error::NegativePower {
                numerator: self.lowest_power,
                denominator: other.lowest_power,
            });
        }
        let len = self.coeffs.len().min(other.coeffs.len());
        let inv = 1.0 / g0;
        let mut h: Vec<Complex64> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * h[k - j];
            }
            h.push(acc * inv);
        }
        Ok(Self { lowest_power: self.lowest_power - other.lowest_power, coeffs: h })
    }

    /// Integer power by repeated squaring; `powi(0)` is the unit series.
    pub fn powi(&self, exponent: u32) -> Self {
        let mut result = Self::one(self.coeffs.len() - 1);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        result
    }

    /// Horner evaluation of the retained terms.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r >= 1.0 || !r.is_finite() {
            return Err(Error::OutsideDisk(r));
        }
        Ok(self.eval_unchecked(z))
    }

    /// Horner evaluation without the disk check (internal scans stay inside).
    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        if self.lowest_power > 0 {
            acc *= z.powu(self.lowest_power as u32);
        }
        acc
    }

    pub fn evaluate_with_tail(&self, z: Complex64) -> Result<(Complex64, TailEstimate)> {
        let value = self.evaluate(z)?;
        Ok((value, self.tail_estimate(z.norm())))
    }

    /// Largest coefficientwise difference, comparing by power over the
    /// common range of orders.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let lo = self.lowest_power.min(other.lowest_power);
        let hi = self.order().min(other.order());
        (lo..=hi).map(|n| (self.coeff(n) - other.coeff(n)).norm()).fold(0.0, f64::max)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Sum aligned by power; the order is the smaller of the two.
    fn add(self, rhs: Self) -> TruncatedSeries {
        let lowest = self.lowest_power.min(rhs.lowest_power);
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(lowest, order, |n| self.coeff(n) + rhs.coeff(n))
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let lowest = self.lowest_power.min(rhs.lowest_power);
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(lowest, order, |n| self.coeff(n) - rhs.coeff(n))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.multiply(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
