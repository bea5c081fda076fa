//! Evidence tables for the Libera constant between `sqrt(2) - 1` and `1/2`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::corpus::{corpus, poly, CorpusMember, Family};
use super::{build_extremal, m_threshold, witness_grid};
use crate::error::{Error, Result};
use crate::geometry::convexity_margin;
use crate::operators::libera;
use crate::series::EvaluationGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    /// Below `sqrt(2) - 1`: the Libera image is convex.
    Positive,
    /// The polynomial witness above `1/2`.
    Negative,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    #[serde(rename = "M")]
    pub m_level: f64,
    pub family: Family,
    pub label: String,
    /// Sampled `min Re(1 + z F''/F')` for `F = L(f)`.
    pub min_margin: f64,
    pub argmin: Complex64,
    pub expectation: Expectation,
    /// Whether the margin's sign agrees with the expectation.
    pub consistent: Option<bool>,
    pub warnings: Vec<String>,
}

struct Cell {
    m_level: f64,
    member: CorpusMember,
    grid: EvaluationGrid,
    expectation: Expectation,
}

/// Levels `lo, lo + step, ...` up to `hi`, rounded to 12 decimals so that
/// e.g. `0.4 + 4 * 0.05` is exactly `0.6`.
pub fn ladder(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0 < lo && lo <= hi && hi < 1.0) {
        return Err(Error::BadParams(format!("need 0 < from <= to < 1, got {lo}..{hi}")));
    }
    if !(step > 0.0) {
        return Err(Error::BadParams(format!("step must be positive, got {step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12).collect())
}

/// Sampled convexity margins of `L(f)` over a ladder of levels and the
/// requested families. Rows are ordered by `(M, family, label)`.
pub fn conjecture_probe(
    lo: f64,
    hi: f64,
    step: f64,
    families: &[Family],
    grid: &EvaluationGrid,
    order: usize,
) -> Result<Vec<ProbeRow>> {
    let below = m_threshold(1);
    let mut cells = Vec::new();
    for m_level in ladder(lo, hi, step)? {
        let base = if m_level < below { Expectation::Positive } else { Expectation::None };
        for &family in families {
            if !family.is_sm() {
                return Err(Error::BadParams(format!("family '{family}' is not an S_M family")));
            }
            for member in corpus(family, m_level, order)? {
                cells.push(Cell { m_level, member, grid: grid.clone(), expectation: base });
            }
            if family == Family::Poly && m_level > 0.5 {
                let w = build_extremal(m_level)?;
                let label = format!("m={}", w.m);
                let wgrid = merge(grid, &witness_grid(w.z1_modulus, grid.angular_count())?)?;
                match cells.iter_mut().find(|c| c.m_level == m_level && c.member.family == family && c.member.label == label) {
                    Some(cell) => {
                        cell.grid = wgrid;
                        cell.expectation = Expectation::Negative;
                    }
                    None => cells.push(Cell {
                        m_level,
                        member: CorpusMember { family, label, series: poly(m_level, w.m as usize, order)? },
                        grid: wgrid,
                        expectation: Expectation::Negative,
                    }),
                }
            }
        }
    }
    let mut rows = cells
        .par_iter()
        .map(|cell| {
            let image = libera(&cell.member.series)?;
            let (min_margin, argmin, samples) = convexity_margin(&image, &cell.grid)?;
            let consistent = match cell.expectation {
                Expectation::Positive => Some(min_margin > 0.0),
                Expectation::Negative => Some(min_margin < 0.0),
                Expectation::None => None,
            };
            Ok(ProbeRow {
                m_level: cell.m_level,
                family: cell.member.family,
                label: cell.member.label.clone(),
                min_margin,
                argmin,
                expectation: cell.expectation,
                consistent,
                warnings: samples.warnings,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        a.m_level
            .total_cmp(&b.m_level)
            .then(a.family.name().cmp(b.family.name()))
            .then(label_key(&a.label).cmp(&label_key(&b.label)))
    });
    Ok(rows)
}

/// Orders `m=5` before `m=12`.
fn label_key(label: &str) -> (String, u64, String) {
    let (head, tail) = label.split_once('=').unwrap_or((label, ""));
    (head.to_string(), tail.parse().unwrap_or(u64::MAX), tail.to_string())
}

fn merge(a: &EvaluationGrid, b: &EvaluationGrid) -> Result<EvaluationGrid> {
    EvaluationGrid::from_unsorted(a.radii().iter().chain(b.radii()).copied().collect(), a.angular_count())
}
