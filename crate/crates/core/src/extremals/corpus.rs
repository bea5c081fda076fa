//! Test families. Members of the `S_M` families are built so that
//! `z f'/f = 1 + M omega(z)` with `|omega| < 1` on the disk.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{format_complex, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Blaschke,
    Expstar,
    Koebe,
    Poly,
    Pvalent,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Blaschke => "blaschke",
            Family::Expstar => "expstar",
            Family::Koebe => "koebe",
            Family::Poly => "poly",
            Family::Pvalent => "pvalent",
        }
    }

    /// Families whose members lie in `S_M` for the requested level.
    pub fn is_sm(self) -> bool {
        matches!(self, Family::Blaschke | Family::Expstar | Family::Poly)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "blaschke" => Family::Blaschke,
            "expstar" => Family::Expstar,
            "koebe" => Family::Koebe,
            "poly" => Family::Poly,
            "pvalent" => Family::Pvalent,
            other => return Err(Error::Parse(format!("unknown family '{other}'"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusMember {
    pub family: Family,
    pub label: String,
    pub series: TruncatedSeries,
}

fn check_level(m: f64) -> Result<()> {
    if m > 0.0 && m < 1.0 { Ok(()) } else { Err(Error::BadM(m)) }
}

/// `z + lambda z^m` with `lambda = M/(m - 1 + M)`, on the boundary of `S_M`.
pub fn poly(level: f64, m: usize, order: usize) -> Result<TruncatedSeries> {
    check_level(level)?;
    if m < 2 {
        return Err(Error::BadParams(format!("poly needs m >= 2, got {m}")));
    }
    let mut coeffs = vec![0.0; m];
    coeffs[0] = 1.0;
    coeffs[m - 1] = level / (m as f64 - 1.0 + level);
    TruncatedSeries::real_polynomial(1, &coeffs, order.max(m))
}

/// `z exp(M z^k / k)`, quotient `1 + M z^k`.
pub fn expstar(level: f64, k: usize, order: usize) -> Result<TruncatedSeries> {
    check_level(level)?;
    if k == 0 {
        return Err(Error::BadParams("expstar needs k >= 1".into()));
    }
    let q = &TruncatedSeries::one(order) + &TruncatedSeries::monomial(k, Complex64::new(level, 0.0), order);
    TruncatedSeries::from_starlike_quotient(&q)
}

/// Quotient `1 + M z (z - a)/(1 - conj(a) z)` for `|a| < 1`.
pub fn blaschke(level: f64, a: Complex64, order: usize) -> Result<TruncatedSeries> {
    check_level(level)?;
    if !(a.norm() < 1.0) {
        return Err(Error::BadParams(format!("blaschke needs |a| < 1, got {}", format_complex(a))));
    }
    // (z - a)/(1 - conj(a) z) = (z - a) sum (conj(a) z)^n
    let geometric = TruncatedSeries::from_fn(0, order, |n| a.conj().powu(n as u32));
    let factor = TruncatedSeries::polynomial(0, &[-a, Complex64::new(1.0, 0.0)], order)?.multiply(&geometric);
    let q = &TruncatedSeries::one(order) + &factor.shift_up(1).scale(Complex64::new(level, 0.0)).truncate(order)?;
    TruncatedSeries::from_starlike_quotient(&q)
}

pub fn koebe(order: usize) -> TruncatedSeries {
    TruncatedSeries::koebe(order)
}

/// `z^p / (1 - z)^2`.
pub fn pvalent(p: usize, order: usize) -> Result<TruncatedSeries> {
    if p == 0 {
        return Err(Error::BadParams("pvalent needs p >= 1".into()));
    }
    Ok(TruncatedSeries::koebe(order.saturating_sub(p - 1).max(1)).shift_up(p - 1))
}

/// Default members of a family at level `M`: poly `m` in {2, 3, 5},
/// expstar `k` in {1, 2}, blaschke `a = 0.5`, pvalent `p = 2`.
pub fn corpus(family: Family, level: f64, order: usize) -> Result<Vec<CorpusMember>> {
    let member = |label: String, series: TruncatedSeries| CorpusMember { family, label, series };
    Ok(match family {
        Family::Poly => [2, 3, 5]
            .iter()
            .map(|&m| poly(level, m, order).map(|s| member(format!("m={m}"), s)))
            .collect::<Result<_>>()?,
        Family::Expstar => [1, 2]
            .iter()
            .map(|&k| expstar(level, k, order).map(|s| member(format!("k={k}"), s)))
            .collect::<Result<_>>()?,
        Family::Blaschke => vec![member("a=0.5".into(), blaschke(level, Complex64::new(0.5, 0.0), order)?)],
        Family::Koebe => vec![member("koebe".into(), koebe(order))],
        Family::Pvalent => vec![member("p=2".into(), pvalent(2, order)?)],
    })
}
