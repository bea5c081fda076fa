//! Named input functions for the CLI.

use crate::error::{Error, Result};
use crate::extremals::{blaschke, expstar, poly, pvalent};
use crate::series::{parse_complex, TruncatedSeries};
use num_complex::Complex64;

/// Resolves `koebe`, `identity`, `halfplane`, `poly:m`, `expstar:k`,
/// `blaschke:a`, `pvalent:p`. The `S_M` families take their level from `level`.
pub fn preset_resolver(name: &str, level: Option<f64>, order: usize) -> Result<TruncatedSeries> {
    let (head, arg) = match name.trim().split_once(':') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (name.trim(), None),
    };
    let need_level = || level.ok_or_else(|| Error::BadParams(format!("preset '{name}' needs --M")));
    let int_arg = || -> Result<usize> {
        arg.ok_or_else(|| Error::Parse(format!("preset '{name}' needs a parameter")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer in preset '{name}'")))
    };
    match (head, arg) {
        ("koebe", None) => Ok(TruncatedSeries::koebe(order)),
        ("identity", None) => Ok(TruncatedSeries::identity(order)),
        ("halfplane", None) => Ok(TruncatedSeries::from_fn(1, order, |_| Complex64::new(1.0, 0.0))),
        ("poly", Some(_)) => poly(need_level()?, int_arg()?, order),
        ("expstar", Some(_)) => expstar(need_level()?, int_arg()?, order),
        ("blaschke", Some(a)) => blaschke(need_level()?, parse_complex(a)?, order),
        ("pvalent", Some(_)) => pvalent(int_arg()?, order),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}
