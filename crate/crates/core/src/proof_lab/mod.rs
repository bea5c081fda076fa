//! The bivariate minimization behind the convexity threshold of the Bernardi
//! transform on `S_M`, and sampled checks of the identities it rests on.
//!
//! With `F = B_c f` and `p = z F'/F`, membership `f` in `S_M` puts `1/p` in
//! the disk `|w - a| <= r`, `a = 1/(1-M^2)`, `r = M/(1-M^2)`. Writing the
//! extreme configuration with `x = cos theta`, `y = cos t` reduces
//! `Re(1 + z F''/F') > 0` to positivity of [`phi`] on `[-1, 1]^2`.

mod identities;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use identities::{
    convexity_form_level, lambda_identity_check, reciprocal_disk_margin, sm_characterization_residual, SmResidual,
};

/// `sqrt(c^2 + 1) - c`, the largest `M` for which `B_c(S_M)` is convex.
pub fn threshold(c: u32) -> f64 {
    let c = c as f64;
    // 1/(sqrt(c^2+1) + c) avoids cancellation for large c
    1.0 / ((c * c + 1.0).sqrt() + c)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofParams {
    pub c: u32,
    #[serde(rename = "M")]
    pub m: f64,
    pub a: f64,
    pub r: f64,
}

impl ProofParams {
    pub fn new(c: u32, m: f64) -> Result<Self> {
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::BadM(m));
        }
        let d = 1.0 - m * m;
        Ok(Self { c, m, a: 1.0 / d, r: m / d })
    }

    fn cf(&self) -> f64 {
        self.c as f64
    }
}

/// `(1-c)(1+M) - (-c + M(c+1) + M^2)`, which equals `1 - 2cM - M^2`.
pub fn ineq32_margin(c: u32, m: f64) -> f64 {
    let c = c as f64;
    (1.0 - c) * (1.0 + m) - (-c + m * (c + 1.0) + m * m)
}

/// Lower bound for `Re Lambda` at the extreme configuration.
pub fn phi(x: f64, y: f64, p: &ProofParams) -> f64 {
    let (c, m, a, r) = (p.cf(), p.m, p.a, p.r);
    let root = ((1.0 - x * x).max(0.0) * (1.0 - y * y).max(0.0)).sqrt();
    (1.0 - c) + c * (a + r * y) + m * (1.0 + c * a) * x + m * c * r * (x * y - root)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Edge {
    XMinus,
    XPlus,
    YMinus,
    YPlus,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::XMinus, Edge::XPlus, Edge::YMinus, Edge::YPlus];

    /// The point of the square at parameter `s` along this edge.
    pub fn point(self, s: f64) -> (f64, f64) {
        match self {
            Edge::XMinus => (-1.0, s),
            Edge::XPlus => (1.0, s),
            Edge::YMinus => (s, -1.0),
            Edge::YPlus => (s, 1.0),
        }
    }
}

/// Closed forms of `phi` on the four edges of the square; all are affine in `s`.
pub fn phi_boundary(edge: Edge, s: f64, p: &ProofParams) -> f64 {
    let (c, m, a, r) = (p.cf(), p.m, p.a, p.r);
    match edge {
        Edge::YMinus => (1.0 - c) + c * (a - r) + m * (1.0 + c * (a - r)) * s,
        Edge::XMinus => (1.0 - c) + c * (a + r * s) - m * (1.0 + c * a) - m * c * r * s,
        Edge::YPlus => (1.0 - c) + c * (a + r) + m * (1.0 + c * a) * s + m * c * r * s,
        Edge::XPlus => (1.0 - c) + c * (a + r * s) + m * (1.0 + c * a) + m * c * r * s,
    }
}

/// `(1 + Mx) phi` with the square root replaced by its value at a critical point.
pub fn psi(x: f64, y: f64, p: &ProofParams) -> f64 {
    let (c, m, a, r) = (p.cf(), p.m, p.a, p.r);
    (1.0 + m * x) * ((1.0 - c) + c * (a + r * y) + m * (1.0 + c * a) * x + m * c * r * x * y)
        + m * m * c * r * y * (1.0 - x * x)
}

/// `d psi / d y = c r (1 + 2Mx + M^2)`.
pub fn psi_dy(x: f64, p: &ProofParams) -> f64 {
    p.cf() * p.r * (1.0 + 2.0 * p.m * x + p.m * p.m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiScanResult {
    pub grid_n: usize,
    pub min_value: f64,
    pub argmin: (f64, f64),
    /// Minima on the edges `x = -1`, `x = 1`, `y = -1`, `y = 1`.
    pub boundary_mins: [f64; 4],
    pub ineq32_margin: f64,
}

/// Node `i` of the `n`-point lattice on `[-1, 1]`; exact at `-1`, `0`, `1` for odd `n`.
pub fn lattice_node(i: usize, n: usize) -> f64 {
    (2.0 * i as f64 - (n - 1) as f64) / (n - 1) as f64
}

/// Tabulates `phi` on an `n x n` lattice. Rows are scanned in parallel and
/// reduced in row-major order, ties going to the first node.
pub fn scan_phi_min(p: &ProofParams, grid_n: usize) -> Result<PhiScanResult> {
    if grid_n < 101 || grid_n % 2 == 0 {
        return Err(Error::InvalidGrid(format!("grid_n must be odd and >= 101, got {grid_n}")));
    }
    let rows: Vec<(f64, usize)> = (0..grid_n)
        .into_par_iter()
        .map(|i| {
            let x = lattice_node(i, grid_n);
            (0..grid_n).fold((f64::INFINITY, 0), |best, j| {
                let v = phi(x, lattice_node(j, grid_n), p);
                if v < best.0 { (v, j) } else { best }
            })
        })
        .collect();
    let mut best = (f64::INFINITY, 0, 0);
    for (i, &(v, j)) in rows.iter().enumerate() {
        if v < best.0 {
            best = (v, i, j);
        }
    }
    let mut boundary_mins = [f64::INFINITY; 4];
    for (k, edge) in Edge::ALL.into_iter().enumerate() {
        for i in 0..grid_n {
            let (x, y) = edge.point(lattice_node(i, grid_n));
            boundary_mins[k] = boundary_mins[k].min(phi(x, y, p));
        }
    }
    Ok(PhiScanResult {
        grid_n,
        min_value: best.0,
        argmin: (lattice_node(best.1, grid_n), lattice_node(best.2, grid_n)),
        boundary_mins,
        ineq32_margin: ineq32_margin(p.c, p.m),
    })
}
