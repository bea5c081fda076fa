//! Function classes defined by a quotient functional and a target region,
//! and the named Ma–Minda type presets.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::region::RegionSpec;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Vertex count of polygon approximations to `Psi(D)`.
pub const POLYGON_VERTICES: usize = 720;
/// Radius at which polygon regions sample `Psi`.
pub const POLYGON_RADIUS: f64 = 0.999;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Functional {
    /// `z f'/f`
    StarlikeQuotient,
    /// `1 + z f''/f'`
    ConvexQuotient,
    /// `e^{i beta} z f'/f`, `|beta| < pi/2`
    SpiralQuotient { beta: f64 },
}

impl Functional {
    /// Value of the functional at the origin for a function with lowest
    /// power `p`.
    pub fn value_at_origin(&self, p: u32) -> Complex64 {
        let p = Complex64::new(p as f64, 0.0);
        match *self {
            Functional::StarlikeQuotient | Functional::ConvexQuotient => p,
            Functional::SpiralQuotient { beta } => Complex64::from_polar(1.0, beta) * p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub functional: Functional,
    pub region: RegionSpec,
    /// Expected constant term of the quotient.
    pub valence_p: u32,
}

impl ClassSpec {
    pub fn new(functional: Functional, region: RegionSpec, valence_p: u32) -> Result<Self> {
        if valence_p == 0 {
            return Err(Error::BadParams("valence must be positive".into()));
        }
        if let Functional::SpiralQuotient { beta } = functional {
            if !(beta.abs() < FRAC_PI_2) {
                return Err(Error::BadParams(format!("spiral angle {beta} needs |beta| < pi/2")));
            }
        }
        let at_origin = functional.value_at_origin(valence_p);
        if region.margin(at_origin) <= 0.0 {
            return Err(Error::BadParams(format!(
                "region does not contain the functional's value {at_origin} at the origin"
            )));
        }
        Ok(Self { functional, region, valence_p })
    }

    /// `S_M`: `|z f'/f - 1| < M`.
    pub fn sm(m: f64) -> Result<Self> {
        Preset::SM(m).class()
    }

    /// `S*`: `Re z f'/f > 0`.
    pub fn starlike() -> Self {
        Preset::Starlike.class().expect("valid")
    }

    /// `K`: `Re (1 + z f''/f') > 0`.
    pub fn convex() -> Self {
        Preset::Convex.class().expect("valid")
    }

    /// The same class for `p`-valent functions: the region is multiplied by
    /// `p` (subordination to `p Psi`).
    pub fn with_valence(&self, p: u32) -> Result<Self> {
        let factor = p as f64 / self.valence_p as f64;
        Self::new(self.functional, self.region.scaled(factor), p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaMindaFn {
    /// `1 + sin z`
    Sin,
    /// `cos z`
    Cos,
}

/// Named classes; the first six are the Ma–Minda type examples preserved by
/// the Bernardi transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum Preset {
    /// `Re z f'/f > alpha`, `0 <= alpha < 1`.
    StarlikeOrder { alpha: f64 },
    /// `|arg z f'/f| < beta pi / 2`, `0 < beta <= 1`.
    StronglyStarlike { beta: f64 },
    /// `z f'/f < (1 + A z)/(1 + B z)`, `-1 <= B < A <= 1`.
    Janowski { a: f64, b: f64 },
    MaMinda { psi: MaMindaFn },
    /// `|z f'/f - alpha| < beta`, `0 < beta <= alpha <= 1`.
    BoundedQuotient { alpha: f64, beta: f64 },
    /// `Re e^{i beta} z f'/f > 0`, `|beta| < pi/2`.
    Spiral { beta: f64 },
    /// `|z f'/f - 1| < M`, `0 < M < 1`.
    SM(f64),
    Starlike,
    Convex,
}

impl Preset {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParams(msg));
        match *self {
            Preset::StarlikeOrder { alpha } if !(0.0..1.0).contains(&alpha) => {
                bad(format!("starlike order alpha = {alpha} outside [0, 1)"))
            }
            Preset::StronglyStarlike { beta } if !(beta > 0.0 && beta <= 1.0) => {
                bad(format!("strong starlikeness beta = {beta} outside (0, 1]"))
            }
            Preset::Janowski { a, b } if !(-1.0 <= b && b < a && a <= 1.0) => {
                bad(format!("Janowski parameters need -1 <= B < A <= 1, got A={a}, B={b}"))
            }
            Preset::BoundedQuotient { alpha, beta } if !(0.0 < beta && beta <= alpha && alpha <= 1.0) => {
                bad(format!("need 0 < beta <= alpha <= 1, got alpha={alpha}, beta={beta}"))
            }
            // Psi(0) = 1 must lie in the disk |w - alpha| < beta.
            Preset::BoundedQuotient { alpha, beta } if 1.0 - alpha >= beta => {
                bad(format!("disk |w - {alpha}| < {beta} does not contain 1"))
            }
            Preset::Spiral { beta } if !(beta.abs() < FRAC_PI_2) => {
                bad(format!("spiral angle {beta} needs |beta| < pi/2"))
            }
            Preset::SM(m) if !(m > 0.0 && m < 1.0) => bad(format!("S_M needs 0 < M < 1, got {m}")),
            _ => Ok(()),
        }
    }

    /// Target region `Psi(D)`.
    pub fn region(&self) -> Result<RegionSpec> {
        self.validate()?;
        let one = Complex64::new(1.0, 0.0);
        match *self {
            Preset::StarlikeOrder { alpha } => Ok(RegionSpec::right_of(alpha)),
            Preset::StronglyStarlike { beta } => RegionSpec::sector(beta * FRAC_PI_2),
            Preset::Janowski { a, b } => {
                if b == -1.0 {
                    Ok(RegionSpec::right_of((1.0 - a) / 2.0))
                } else {
                    let d = 1.0 - b * b;
                    RegionSpec::disk(Complex64::new((1.0 - a * b) / d, 0.0), (a - b) / d)
                }
            }
            Preset::MaMinda { psi } => {
                let half_turn = psi == MaMindaFn::Cos;
                RegionSpec::sampled_boundary(
                    move |z| ma_minda_value(psi, z),
                    POLYGON_RADIUS,
                    POLYGON_VERTICES,
                    half_turn,
                )
            }
            Preset::BoundedQuotient { alpha, beta } => RegionSpec::disk(Complex64::new(alpha, 0.0), beta),
            Preset::Spiral { .. } | Preset::Starlike | Preset::Convex => Ok(RegionSpec::right_of(0.0)),
            Preset::SM(m) => RegionSpec::disk(one, m),
        }
    }

    pub fn functional(&self) -> Functional {
        match *self {
            Preset::Spiral { beta } => Functional::SpiralQuotient { beta },
            Preset::Convex => Functional::ConvexQuotient,
            _ => Functional::StarlikeQuotient,
        }
    }

    pub fn class(&self) -> Result<ClassSpec> {
        ClassSpec::new(self.functional(), self.region()?, 1)
    }

    /// Subordinating function `Psi` with `Psi(0) = 1` as a series, so that
    /// `z f'/f = Psi(omega)` generates members of the class. `None` for the
    /// convex class, which is not defined through `z f'/f`.
    pub fn psi_series(&self, order: usize) -> Result<Option<TruncatedSeries>> {
        self.validate()?;
        let c = |x: f64| Complex64::new(x, 0.0);
        // 1/(1 + u z) as a series
        let geometric = |u: Complex64| TruncatedSeries::from_fn(0, order, move |n| (-u).powu(n as u32));
        let s = match *self {
            Preset::StarlikeOrder { alpha } => {
                // 1 + 2(1 - alpha) z/(1 - z)
                TruncatedSeries::from_fn(0, order, |n| if n == 0 { c(1.0) } else { c(2.0 * (1.0 - alpha)) })
            }
            Preset::StronglyStarlike { beta } => {
                let koebe_quot =
                    TruncatedSeries::from_fn(0, order, |n| if n == 0 { c(1.0) } else { c(2.0) });
                koebe_quot.pow_complex(c(beta))?
            }
            Preset::Janowski { a, b } => {
                let num = TruncatedSeries::real_polynomial(0, &[1.0, a], order.max(1))?;
                num.multiply(&geometric(c(b)))
            }
            Preset::MaMinda { psi: MaMindaFn::Sin } => TruncatedSeries::from_fn(0, order, |n| match n {
                0 => c(1.0),
                n if n % 2 == 1 => c(alternating_sign(n / 2) / factorial(n)),
                _ => c(0.0),
            }),
            Preset::MaMinda { psi: MaMindaFn::Cos } => TruncatedSeries::from_fn(0, order, |n| {
                if n % 2 == 0 { c(alternating_sign(n / 2) / factorial(n)) } else { c(0.0) }
            }),
            Preset::BoundedQuotient { alpha, beta } => {
                // ((beta^2 + alpha - alpha^2) z + beta) / ((1 - alpha) z + beta)
                let num = TruncatedSeries::real_polynomial(0, &[1.0, (beta * beta + alpha - alpha * alpha) / beta], order.max(1))?;
                num.multiply(&geometric(c((1.0 - alpha) / beta)))
            }
            Preset::Spiral { beta } => {
                // (1 - z)/(1 + z e^{2 i beta})
                let num = TruncatedSeries::real_polynomial(0, &[1.0, -1.0], order.max(1))?;
                num.multiply(&geometric(Complex64::from_polar(1.0, 2.0 * beta)))
            }
            Preset::SM(m) => TruncatedSeries::real_polynomial(0, &[1.0, m], order.max(1))?,
            Preset::Starlike => TruncatedSeries::from_fn(0, order, |n| if n == 0 { c(1.0) } else { c(2.0) }),
            Preset::Convex => return Ok(None),
        };
        Ok(Some(s))
    }

    /// Short human-readable name (matches the class literal).
    pub fn literal(&self) -> String {
        match *self {
            Preset::StarlikeOrder { alpha } => format!("starlike-order:{alpha}"),
            Preset::StronglyStarlike { beta } => format!("strongly-starlike:{beta}"),
            Preset::Janowski { a, b } => format!("janowski:{a},{b}"),
            Preset::MaMinda { psi: MaMindaFn::Sin } => "ma-minda:sin".into(),
            Preset::MaMinda { psi: MaMindaFn::Cos } => "ma-minda:cos".into(),
            Preset::BoundedQuotient { alpha, beta } => format!("disk:{alpha},{beta}"),
            Preset::Spiral { beta } => format!("spiral:{beta}"),
            Preset::SM(m) => format!("sm:{m}"),
            Preset::Starlike => "starlike".into(),
            Preset::Convex => "convex".into(),
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn alternating_sign(k: usize) -> f64 {
    if k % 2 == 0 { 1.0 } else { -1.0 }
}

pub fn ma_minda_value(psi: MaMindaFn, z: Complex64) -> Complex64 {
    match psi {
        MaMindaFn::Sin => 1.0 + z.sin(),
        MaMindaFn::Cos => z.cos(),
    }
}

/// Builds a region from a preset literal (also used for class literals).
pub fn region_for_preset(preset: &Preset) -> Result<RegionSpec> {
    preset.region()
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// `sm:0.6`, `starlike`, `convex`, `starlike-order:0.25`,
    /// `strongly-starlike:0.5`, `janowski:0.5,-0.5`, `disk:1,0.6`,
    /// `spiral:0.3`, `ma-minda:sin`, `ma-minda:cos`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), a.trim()),
            None => (s, ""),
        };
        let reals = |n: usize| -> Result<Vec<f64>> {
            let v = arg
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number in '{s}'"))))
                .collect::<Result<Vec<f64>>>()?;
            if v.len() != n {
                return Err(Error::Parse(format!("'{name}' takes {n} parameter(s)")));
            }
            Ok(v)
        };
        let preset = match name {
            "starlike" => Preset::Starlike,
            "convex" => Preset::Convex,
            "sm" => Preset::SM(reals(1)?[0]),
            "starlike-order" => Preset::StarlikeOrder { alpha: reals(1)?[0] },
            "strongly-starlike" => Preset::StronglyStarlike { beta: reals(1)?[0] },
            "janowski" => {
                let v = reals(2)?;
                Preset::Janowski { a: v[0], b: v[1] }
            }
            "disk" => {
                let v = reals(2)?;
                Preset::BoundedQuotient { alpha: v[0], beta: v[1] }
            }
            "spiral" => Preset::Spiral { beta: reals(1)?[0] },
            "ma-minda" => match arg {
                "sin" => Preset::MaMinda { psi: MaMindaFn::Sin },
                "cos" => Preset::MaMinda { psi: MaMindaFn::Cos },
                _ => return Err(Error::Parse(format!("unknown Ma-Minda function '{arg}'"))),
            },
            _ => return Err(Error::Parse(format!("unknown class literal '{s}'"))),
        };
        preset.validate()?;
        Ok(preset)
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Preset>()?.class()
    }
}
