//! Text formats shared with the CLI: the JSON series literal
//! `{"lowest_power": k, "coeffs": [[re, im], ...]}` and the shorthand
//! `"1,0.375"` listing normalized coefficients `a_1, a_2, ...`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::TruncatedSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesLiteral {
    pub lowest_power: usize,
    pub coeffs: Vec<[f64; 2]>,
    /// Truncation order; when absent the coefficients end at the order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

impl TryFrom<SeriesLiteral> for TruncatedSeries {
    type Error = Error;

    fn try_from(lit: SeriesLiteral) -> Result<Self> {
        let coeffs: Vec<Complex64> = lit.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
        match lit.order {
            Some(order) => TruncatedSeries::polynomial(lit.lowest_power, &coeffs, order),
            None => TruncatedSeries::new(lit.lowest_power, coeffs),
        }
    }
}

impl From<TruncatedSeries> for SeriesLiteral {
    /// Trailing zeros are dropped and recorded through `order`.
    fn from(s: TruncatedSeries) -> Self {
        let keep = s.coeffs.iter().rposition(|c| c.norm() != 0.0).map_or(1, |k| k + 1);
        SeriesLiteral {
            lowest_power: s.lowest_power,
            coeffs: s.coeffs[..keep].iter().map(|c| [c.re, c.im]).collect(),
            order: (keep < s.coeffs.len()).then(|| s.order()),
        }
    }
}

impl TruncatedSeries {
    /// Parses either a JSON literal (starting with `{`) or the shorthand
    /// list of `a_1, a_2, ...`. Shorthand and JSON without an explicit
    /// order are padded to `order` when they are shorter.
    pub fn parse_literal(text: &str, order: usize) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            let lit: SeriesLiteral =
                serde_json::from_str(text).map_err(|e| Error::Parse(format!("series JSON: {e}")))?;
            if lit.order.is_some() {
                return lit.try_into();
            }
            let coeffs: Vec<Complex64> =
                lit.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
            let top = lit.lowest_power + coeffs.len().saturating_sub(1);
            return TruncatedSeries::polynomial(lit.lowest_power, &coeffs, order.max(top));
        }
        let coeffs = text
            .split(',')
            .map(|t| parse_complex(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty series shorthand".into()));
        }
        TruncatedSeries::polynomial(1, &coeffs, order.max(coeffs.len()))
    }

    /// Shorthand `"a_1,a_2,..."` with trailing zeros dropped; `None` unless
    /// the series starts at `z` and has real coefficients.
    pub fn to_shorthand(&self) -> Option<String> {
        if self.lowest_power != 1 || self.coeffs.iter().any(|c| c.im != 0.0) {
            return None;
        }
        let last = self.coeffs.iter().rposition(|c| c.re != 0.0).unwrap_or(0);
        let parts: Vec<String> = self.coeffs[..=last].iter().map(|c| format!("{}", c.re)).collect();
        Some(parts.join(","))
    }

    pub fn to_literal(&self) -> SeriesLiteral {
        self.clone().into()
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i` (also `j` as the imaginary unit).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse(format!("bad complex number '{text}'"));
    if t.is_empty() {
        return Err(err());
    }
    let imag_unit = t.ends_with('i') || t.ends_with('j');
    if !imag_unit {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| err());
    }
    let body = &t[..t.len() - 1];
    // Split at the last sign that is not an exponent sign or the leading sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let parse_im = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| err()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| err())?;
            Ok(Complex64::new(re, parse_im(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, parse_im(body)?)),
    }
}

/// Inverse of [`parse_complex`] using shortest round-trip float text.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
