//! Convex target regions and their signed containment margin.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A target region `Psi(D)`. [`RegionSpec::margin`] is positive inside,
/// negative outside and zero on the boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum RegionSpec {
    /// `{w : Re((w - point) conj(normal)) > 0}` with `|normal| = 1`.
    HalfPlane { point: Complex64, normal: Complex64 },
    Disk { center: Complex64, radius: f64 },
    /// `|arg w| < half_angle`, apex at the origin.
    Sector { half_angle: f64 },
    /// Counterclockwise vertex list. `convex` records the cross-product test;
    /// the margin is the signed distance to the boundary either way.
    Polygon { vertices: Vec<Complex64>, convex: bool },
}

impl RegionSpec {
    pub fn half_plane(point: Complex64, inward_normal: Complex64) -> Result<Self> {
        let n = inward_normal.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::BadParams("half-plane normal must be nonzero".into()));
        }
        Ok(RegionSpec::HalfPlane { point, normal: inward_normal / n })
    }

    /// `Re w > x0`.
    pub fn right_of(x0: f64) -> Self {
        RegionSpec::HalfPlane { point: Complex64::new(x0, 0.0), normal: Complex64::new(1.0, 0.0) }
    }

    pub fn disk(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::BadParams(format!("disk radius {radius} must be positive")));
        }
        Ok(RegionSpec::Disk { center, radius })
    }

    pub fn sector(half_angle: f64) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle <= FRAC_PI_2) {
            return Err(Error::BadParams(format!("sector half-angle {half_angle} outside (0, pi/2]")));
        }
        Ok(RegionSpec::Sector { half_angle })
    }

    /// A counterclockwise convex polygon; rejects anything else.
    pub fn convex_polygon(vertices: Vec<Complex64>) -> Result<Self> {
        let region = Self::polygon(vertices)?;
        match &region {
            RegionSpec::Polygon { convex: true, .. } => Ok(region),
            _ => Err(Error::BadParams("polygon is not convex".into())),
        }
    }

    /// A counterclockwise simple polygon, convex or not.
    pub fn polygon(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::BadParams("polygon needs at least three vertices".into()));
        }
        if signed_area(&vertices) <= 0.0 {
            return Err(Error::BadParams("polygon vertices must be counterclockwise".into()));
        }
        let convex = is_convex(&vertices);
        Ok(RegionSpec::Polygon { vertices, convex })
    }

    /// Polygon through `psi(rho e^{i theta_k})`, `theta_k = 2 pi k / n`
    /// (or `pi k / n` when `half_turn`, for even maps traced twice).
    pub fn sampled_boundary(
        psi: impl Fn(Complex64) -> Complex64,
        rho: f64,
        n: usize,
        half_turn: bool,
    ) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) || n < 3 {
            return Err(Error::BadParams(format!("bad boundary sampling rho={rho}, n={n}")));
        }
        let span = if half_turn { std::f64::consts::PI } else { std::f64::consts::TAU };
        let mut vertices: Vec<Complex64> =
            (0..n).map(|k| psi(Complex64::from_polar(rho, span * k as f64 / n as f64))).collect();
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Self::polygon(vertices)
    }

    pub fn margin(&self, w: Complex64) -> f64 {
        match self {
            RegionSpec::HalfPlane { point, normal } => ((w - point) * normal.conj()).re,
            RegionSpec::Disk { center, radius } => radius - (w - center).norm(),
            RegionSpec::Sector { half_angle } => {
                let (s, c) = half_angle.sin_cos();
                (w.re * s - w.im * c).min(w.re * s + w.im * c)
            }
            RegionSpec::Polygon { vertices, .. } => polygon_margin(vertices, w),
        }
    }

    /// The region multiplied by a positive factor (for `p`-valent classes
    /// whose subordinating function is `p Psi`).
    pub fn scaled(&self, factor: f64) -> Self {
        match self {
            RegionSpec::HalfPlane { point, normal } => {
                RegionSpec::HalfPlane { point: point * factor, normal: *normal }
            }
            RegionSpec::Disk { center, radius } => {
                RegionSpec::Disk { center: center * factor, radius: radius * factor }
            }
            RegionSpec::Sector { half_angle } => RegionSpec::Sector { half_angle: *half_angle },
            RegionSpec::Polygon { vertices, convex } => RegionSpec::Polygon {
                vertices: vertices.iter().map(|v| v * factor).collect(),
                convex: *convex,
            },
        }
    }

    /// Whether margins near zero carry polygon discretization error.
    pub fn is_polygon(&self) -> bool {
        matches!(self, RegionSpec::Polygon { .. })
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn signed_area(v: &[Complex64]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum::<f64>()
}

fn is_convex(v: &[Complex64]) -> bool {
    let n = v.len();
    (0..n).all(|i| {
        let a = v[(i + 1) % n] - v[i];
        let b = v[(i + 2) % n] - v[(i + 1) % n];
        cross(a, b) >= 0.0
    })
}

fn segment_distance(a: Complex64, b: Complex64, w: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    let t = if len2 > 0.0 { (((w - a) * ab.conj()).re / len2).clamp(0.0, 1.0) } else { 0.0 };
    (w - (a + ab * t)).norm()
}

fn polygon_margin(v: &[Complex64], w: Complex64) -> f64 {
    let n = v.len();
    let mut dist = f64::INFINITY;
    let mut inside = false;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        dist = dist.min(segment_distance(a, b, w));
        if (a.im > w.im) != (b.im > w.im) {
            let x = a.re + (w.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if w.re < x {
                inside = !inside;
            }
        }
    }
    if inside { dist } else { -dist }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn margin_examples() {
        let d = RegionSpec::disk(c(1.0, 0.0), 0.6).unwrap();
        assert!((d.margin(c(1.0, 0.0)) - 0.6).abs() < 1e-15);
        assert!(d.margin(c(1.6, 0.0)).abs() < 1e-15);
        assert!(d.margin(c(2.0, 0.0)) < 0.0);
        let h = RegionSpec::right_of(0.0);
        assert_eq!(h.margin(c(3.0, -4.0)), 3.0);
        assert_eq!(h.margin(c(-0.5, 9.0)), -0.5);
    }

    #[test]
    fn sector_margin() {
        let s = RegionSpec::sector(std::f64::consts::FRAC_PI_4).unwrap();
        assert!(s.margin(c(1.0, 0.0)) > 0.0);
        assert!(s.margin(c(1.0, 1.0)).abs() < 1e-15);
        assert!(s.margin(c(1.0, -1.01)) < 0.0);
        assert!(s.margin(c(-1.0, 0.0)) < 0.0);
        let half = RegionSpec::sector(FRAC_PI_2).unwrap();
        assert!((half.margin(c(0.3, 7.0)) - 0.3).abs() < 1e-15);
        assert!(RegionSpec::sector(2.0).is_err());
    }

    #[test]
    fn polygon_margin_is_signed_distance() {
        let sq = RegionSpec::convex_polygon(vec![c(0.0, 0.0), c(2.0, 0.0), c(2.0, 2.0), c(0.0, 2.0)])
            .unwrap();
        assert!((sq.margin(c(1.0, 1.0)) - 1.0).abs() < 1e-15);
        assert!((sq.margin(c(0.5, 1.0)) - 0.5).abs() < 1e-15);
        assert!((sq.margin(c(3.0, 1.0)) + 1.0).abs() < 1e-15);
        assert!(sq.margin(c(2.0, 1.0)).abs() < 1e-15);
        // clockwise order is rejected
        assert!(RegionSpec::polygon(vec![c(0.0, 0.0), c(0.0, 2.0), c(2.0, 2.0)]).is_err());
        // an L-shape is a valid simple polygon but not convex
        let l = vec![c(0.0, 0.0), c(2.0, 0.0), c(2.0, 1.0), c(1.0, 1.0), c(1.0, 2.0), c(0.0, 2.0)];
        assert!(RegionSpec::convex_polygon(l.clone()).is_err());
        let l = RegionSpec::polygon(l).unwrap();
        assert!(l.margin(c(1.5, 1.5)) < 0.0);
        assert!(l.margin(c(0.5, 1.5)) > 0.0);
    }

    #[test]
    fn sampled_disk_boundary() {
        let poly = RegionSpec::sampled_boundary(|z| 1.0 + z * 0.5, 0.999, 720, false).unwrap();
        assert!(matches!(poly, RegionSpec::Polygon { convex: true, .. }));
        assert!((poly.margin(c(1.0, 0.0)) - 0.4995).abs() < 1e-5);
    }

    #[test]
    fn margin_continuity() {
        let regions = vec![
            RegionSpec::right_of(0.25),
            RegionSpec::disk(c(5.0 / 3.0, 0.0), 4.0 / 3.0).unwrap(),
            RegionSpec::sector(0.7).unwrap(),
            RegionSpec::sampled_boundary(|z| 1.0 + z.sin(), 0.999, 720, false).unwrap(),
        ];
        for r in &regions {
            for k in 0..2000 {
                let w = c(-1.0 + 3.0 * (k as f64 * 0.618).fract(), -2.0 + 4.0 * (k as f64 * 0.414).fract());
                let dw = c(1e-9, -1e-9);
                assert!((r.margin(w) - r.margin(w + dw)).abs() <= 2e-9);
            }
        }
    }
}
