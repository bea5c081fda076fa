//! Integral operators as coefficient-level transforms.
//!
//! | operator | definition |
//! |---|---|
//! | Bernardi `B_c` | `(1+c) z^-c  int_0^z t^(c-1) f(t) dt`, i.e. `a_n -> (1+c) a_n / (n+c)` |
//! | Alexander | `B_0` |
//! | Libera | `B_1` |
//! | Kim–Merkes `I_b` | `int_0^z (f(t)/t)^b dt` |
//! | Pfaltzgraff `P_l` | `int_0^z f'(t)^l dt` |
//! | Kumar–Shukla `T(p, a, c)` | `[(c + p a) z^-c int_0^z t^(c-1) f(t)^a dt]^(1/a)` |
//!
//! Complex powers always use the principal branch of a unit series, with
//! the leading coefficient factored out.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{format_complex, parse_complex, TruncatedSeries, ZERO_LEADING};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum OperatorSpec {
    Bernardi { c: u32 },
    /// Bernardi transform for real `c > -1`; no preservation theorem is
    /// attached to non-integer parameters.
    BernardiExtended { c: f64 },
    Alexander,
    Libera,
    KimMerkes { beta: Complex64 },
    Pfaltzgraff { lambda: Complex64 },
    KumarShukla { p: u32, alpha: u32, c: u32 },
}

impl OperatorSpec {
    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        match *self {
            OperatorSpec::Bernardi { c } => bernardi(f, c),
            OperatorSpec::BernardiExtended { c } => bernardi_extended(f, c),
            OperatorSpec::Alexander => alexander(f),
            OperatorSpec::Libera => libera(f),
            OperatorSpec::KimMerkes { beta } => kim_merkes(f, beta),
            OperatorSpec::Pfaltzgraff { lambda } => pfaltzgraff(f, lambda),
            OperatorSpec::KumarShukla { p, alpha, c } => kumar_shukla(f, p, alpha, c),
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::Bernardi { c } => write!(f, "bernardi:{c}"),
            OperatorSpec::BernardiExtended { c } => write!(f, "bernardi-ext:{c}"),
            OperatorSpec::Alexander => write!(f, "alexander"),
            OperatorSpec::Libera => write!(f, "libera"),
            OperatorSpec::KimMerkes { beta } => write!(f, "kim-merkes:{}", format_complex(*beta)),
            OperatorSpec::Pfaltzgraff { lambda } => {
                write!(f, "pfaltzgraff:{}", format_complex(*lambda))
            }
            OperatorSpec::KumarShukla { p, alpha, c } => {
                write!(f, "kumar-shukla:p={p},alpha={alpha},c={c}")
            }
        }
    }
}

impl FromStr for OperatorSpec {
    type Err = Error;

    /// Literals: `bernardi:2`, `bernardi-ext:0.5`, `alexander`, `libera`,
    /// `kim-merkes:0.5+0i`, `pfaltzgraff:0.5`, `kumar-shukla:p=2,alpha=2,c=1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s, None),
        };
        let need = |what: &str| Error::Parse(format!("operator '{name}' needs {what}"));
        let op = match (name, arg) {
            ("alexander", None) => OperatorSpec::Alexander,
            ("libera", None) => OperatorSpec::Libera,
            ("bernardi", Some(a)) => OperatorSpec::Bernardi {
                c: a.parse().map_err(|_| {
                    Error::Parse(format!("bernardi parameter '{a}' is not a nonnegative integer"))
                })?,
            },
            ("bernardi-ext", Some(a)) => OperatorSpec::BernardiExtended {
                c: a.parse().map_err(|_| Error::Parse(format!("bad real '{a}'")))?,
            },
            ("kim-merkes", Some(a)) => OperatorSpec::KimMerkes { beta: parse_complex(a)? },
            ("pfaltzgraff", Some(a)) => OperatorSpec::Pfaltzgraff { lambda: parse_complex(a)? },
            ("kumar-shukla", Some(a)) => {
                let (mut p, mut alpha, mut c) = (None, None, None);
                for kv in a.split(',') {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("expected key=value, got '{kv}'")))?;
                    let v: u32 =
                        v.trim().parse().map_err(|_| Error::Parse(format!("bad integer '{v}'")))?;
                    match k.trim() {
                        "p" => p = Some(v),
                        "alpha" => alpha = Some(v),
                        "c" => c = Some(v),
                        other => return Err(Error::Parse(format!("unknown key '{other}'"))),
                    }
                }
                OperatorSpec::KumarShukla {
                    p: p.ok_or_else(|| need("p"))?,
                    alpha: alpha.ok_or_else(|| need("alpha"))?,
                    c: c.unwrap_or(0),
                }
            }
            ("bernardi", None) => return Err(need("a parameter c")),
            _ => return Err(Error::Parse(format!("unknown operator literal '{s}'"))),
        };
        if let OperatorSpec::KumarShukla { p, alpha, .. } = op {
            if p == 0 || alpha == 0 {
                return Err(Error::Parse("kumar-shukla needs p >= 1 and alpha >= 1".into()));
            }
        }
        Ok(op)
    }
}

fn require_vanishing_at_origin(f: &TruncatedSeries) -> Result<()> {
    if f.lowest_power() == 0 {
        return Err(Error::BadParams("operator input must vanish at the origin".into()));
    }
    Ok(())
}

/// Bernardi transform, `a_n -> (1+c) a_n / (n+c)`.
pub fn bernardi(f: &TruncatedSeries, c: u32) -> Result<TruncatedSeries> {
    bernardi_extended(f, c as f64)
}

/// Bernardi transform for real `c > -1`.
pub fn bernardi_extended(f: &TruncatedSeries, c: f64) -> Result<TruncatedSeries> {
    require_vanishing_at_origin(f)?;
    if !(c > -1.0) || !c.is_finite() {
        return Err(Error::BadParams(format!("Bernardi parameter c = {c} must exceed -1")));
    }
    let p = f.lowest_power();
    Ok(TruncatedSeries::from_fn(p, f.order(), |n| f.coeff(n) * ((1.0 + c) / (n as f64 + c))))
}

pub fn alexander(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    bernardi(f, 0)
}

pub fn libera(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    bernardi(f, 1)
}

fn require_normalized(f: &TruncatedSeries) -> Result<()> {
    if !f.is_normalized() {
        let c = if f.lowest_power() == 1 { f.leading() } else { Complex64::new(0.0, 0.0) };
        return Err(Error::NotUnitSeries { re: c.re, im: c.im, lowest_power: f.lowest_power().saturating_sub(1) });
    }
    Ok(())
}

/// Kim–Merkes transform `int_0^z (f(t)/t)^beta dt` for normalized `f`.
pub fn kim_merkes(f: &TruncatedSeries, beta: Complex64) -> Result<TruncatedSeries> {
    require_normalized(f)?;
    let unit = f.shift_down(1)?;
    Ok(unit.pow_complex(beta)?.integrate_from_zero())
}

/// Pfaltzgraff transform `int_0^z f'(t)^lambda dt` for normalized `f`.
pub fn pfaltzgraff(f: &TruncatedSeries, lambda: Complex64) -> Result<TruncatedSeries> {
    require_normalized(f)?;
    Ok(f.differentiate().pow_complex(lambda)?.integrate_from_zero())
}

/// Kumar–Shukla transform on `a_p z^p + ...`.
///
/// With `g = f^alpha`, `h = (c + p alpha) z^-c int t^(c-1) g` has lowest
/// power `p alpha` and leading coefficient `a_p^alpha`; the result is
/// `a_p z^p u^(1/alpha)` where `u = h / (a_p^alpha z^(p alpha))`.
pub fn kumar_shukla(f: &TruncatedSeries, p: u32, alpha: u32, c: u32) -> Result<TruncatedSeries> {
    if p == 0 || alpha == 0 {
        return Err(Error::BadParams("kumar-shukla needs p >= 1 and alpha >= 1".into()));
    }
    if f.lowest_power() != p as usize {
        return Err(Error::BadParams(format!(
            "kumar-shukla with p = {p} needs lowest power {p}, got {}",
            f.lowest_power()
        )));
    }
    let lead = f.leading();
    if lead.norm() < ZERO_LEADING {
        return Err(Error::ZeroLeadingCoefficient(lead.norm()));
    }
    let g = f.powi(alpha);
    let weight = (c + p * alpha) as f64;
    let h = pre_root_series(&g, weight, c);
    let unit = h.scale(1.0 / lead.powu(alpha)).shift_down((p * alpha) as usize)?;
    let root = unit.pow_complex(Complex64::new(1.0 / alpha as f64, 0.0))?;
    Ok(root.scale(lead).shift_up(p as usize))
}

/// `(c + p alpha) z^-c int_0^z t^(c-1) g(t) dt` as a coefficient action
/// `g_n -> weight g_n / (n + c)`.
pub fn pre_root_series(g: &TruncatedSeries, weight: f64, c: u32) -> TruncatedSeries {
    TruncatedSeries::from_fn(g.lowest_power(), g.order(), |n| {
        g.coeff(n) * (weight / (n as f64 + c as f64))
    })
}
