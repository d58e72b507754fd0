//! Empirical pair distributions against the theoretical cell densities.
//!
//! Scaled consecutive-denominator counts over boxes grow proportionally to
//! the density integrals; the proportionality constant is fitted by least
//! squares across the boxes rather than asserted. Its expected value,
//! obtained by dividing the per-cell pair counts `(Q²/ζ(2))·∬H_i` by the
//! total pair count `S_Q − 1 ≈ (Q²/(2ζ(2)))·log(4/3)`, is
//! `2/log(4/3) ≈ 6.95209`, and is exposed as a diagnostic.

use crate::core::level::SaturatedLevel;
use crate::core::ratio::Box2;
use crate::core::regions::{pair_box_count, Cell};
use crate::density::{cell_of_box, DistError};
use crate::quad::integrate_density;
use crate::rbox;
use std::f64::consts::PI;

/// The expected proportionality constant between empirical box fractions
/// and density integrals.
pub fn expected_fit_constant() -> f64 {
    2.0 / (4.0f64 / 3.0).ln()
}

/// Predicted number of level elements at or below `beta`:
/// `Q²/(2ζ(2)) · log((2 + 2β)/(2 + β))` with `ζ(2) = π²/6`.
pub fn predicted_count(order: u64, beta: f64) -> f64 {
    let q = order as f64;
    q * q * (3.0 / (PI * PI)) * ((2.0 + 2.0 * beta) / (2.0 + beta)).ln()
}

/// Fraction of consecutive-pair denominators of the level lying in the
/// scaled closed box.
pub fn empirical_box_fraction(level: &SaturatedLevel, bounds: &Box2) -> f64 {
    let (inside, total) = pair_box_count(level, bounds);
    inside as f64 / total as f64
}

/// One box of a density report.
#[derive(Debug, Clone)]
pub struct DensityEntry {
    pub bounds: Box2,
    pub cell: Cell,
    pub empirical: f64,
    pub theoretical: f64,
    pub ratio: f64,
}

/// Empirical-vs-theoretical comparison across a family of boxes.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub q_level: u64,
    pub fitted_constant: f64,
    pub entries: Vec<DensityEntry>,
}

impl DensityReport {
    /// Largest relative deviation of a per-box ratio from the fitted
    /// constant.
    pub fn max_relative_deviation(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| (e.ratio - self.fitted_constant).abs() / self.fitted_constant)
            .fold(0.0, f64::max)
    }
}

/// Builds the report for a constructed level over at least two boxes, each
/// inside the closure of a single cell.
pub fn density_report(
    level: &SaturatedLevel,
    boxes: &[Box2],
    tol: f64,
) -> Result<DensityReport, DistError> {
    if boxes.len() < 2 {
        return Err(DistError::TooFewBoxes);
    }
    let mut entries = Vec::with_capacity(boxes.len());
    for bounds in boxes {
        if bounds.is_degenerate() {
            return Err(DistError::BadBox("degenerate box in a density report"));
        }
        let cell = cell_of_box(bounds)?;
        let empirical = empirical_box_fraction(level, bounds);
        let theoretical = integrate_density(cell, bounds, tol)?;
        let ratio = empirical / theoretical;
        entries.push(DensityEntry {
            bounds: *bounds,
            cell,
            empirical,
            theoretical,
            ratio,
        });
    }
    // Least squares through the origin: empirical ≈ c · theoretical.
    let num: f64 = entries.iter().map(|e| e.empirical * e.theoretical).sum();
    let den: f64 = entries.iter().map(|e| e.theoretical * e.theoretical).sum();
    let fitted_constant = num / den;
    Ok(DensityReport {
        q_level: level.q(),
        fitted_constant,
        entries,
    })
}

/// Six disjoint boxes, two interior to each cell: the default comparison
/// family for density reports.
pub fn default_density_boxes() -> Vec<Box2> {
    vec![
        rbox((6, 10), (7, 10), (5, 10), (55, 100)),
        rbox((7, 10), (78, 100), (6, 10), (68, 100)),
        rbox((1, 4), (35, 100), (55, 100), (6, 10)),
        rbox((1, 10), (2, 10), (65, 100), (3, 4)),
        rbox((35, 100), (45, 100), (2, 10), (3, 10)),
        rbox((48, 100), (55, 100), (12, 100), (2, 10)),
    ]
}

/// One row of the proportionality-convergence table.
#[derive(Debug, Clone, Copy)]
pub struct TrendRow {
    pub q_level: u64,
    pub fitted_constant: f64,
    pub max_relative_deviation: f64,
}

/// Tracks how per-box ratios tighten around the fitted constant as the
/// order grows; purely observational.
pub fn proportionality_trend(
    orders: &[u64],
    boxes: &[Box2],
    tol: f64,
) -> Result<Vec<TrendRow>, DistError> {
    let mut rows = Vec::with_capacity(orders.len());
    for &order in orders {
        let level = crate::core::level::build_filter(order).expect("order >= 3");
        let report = density_report(&level, boxes, tol)?;
        rows.push(TrendRow {
            q_level: order,
            fitted_constant: report.fitted_constant,
            max_relative_deviation: report.max_relative_deviation(),
        });
    }
    Ok(rows)
}
