use thiserror::Error;

/// Errors raised by series arithmetic, scans and the proof/extremal routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is zero (|a| = {0:e})")]
    ZeroLeadingCoefficient(f64),
    #[error("series is not a unit series: constant term {re}+{im}i, lowest power {lowest_power}")]
    NotUnitSeries { re: f64, im: f64, lowest_power: usize },
    #[error("evaluation point |z| = {0} is outside the open unit disk")]
    OutsideDisk(f64),
    #[error("division would produce negative powers (numerator lowest power {numerator}, denominator {denominator})")]
    NegativePower { numerator: usize, denominator: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("no grid radius passes the tail guard (largest admissible radius {0})")]
    AllRadiiClipped(f64),
    #[error("function vanishes on the sampling circle near z = {re}+{im}i")]
    ZeroOnCircle { re: f64, im: f64 },
    #[error("denominator vanishes at z = {re}+{im}i")]
    ZeroDenominator { re: f64, im: f64 },
    #[error("no sign change on ({0}, {1})")]
    NoSignChange(f64, f64),
    #[error("M = {0} admits no extremal witness (need 1/2 < M < 1)")]
    BadM(f64),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
