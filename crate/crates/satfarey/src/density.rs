//! The limiting densities of scaled consecutive-denominator pairs on the
//! three cells of the region.
//!
//! ```text
//! H1(x, y) = (1 + y − 2x)/x                                        on V1
//! H2(x, y) = min{ (1 + y − (2+⌊y/x⌋)x)/x, (1−x−y)/y, 1 }
//!          − max{ (1 − 2x − y)/(x + y), 0 }                        on V2
//! H3(x, y) = min{ (3x + 2y − 1)/(x + y), 1 }
//!          − max{ (3x − y − 1)/x, (x + (2−⌊x/y⌋)y − 1)/y, 0 }      on V3
//! ```
//!
//! Each `H_i` is nonnegative on its closed cell and strictly positive in
//! the interior; `H1` vanishes identically along the edge `y = 2x − 1`.

use crate::core::ratio::{Box2, Ratio};
use crate::core::regions::{cell_polygon, Cell};
use std::fmt;

/// Errors of the distribution layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistError {
    /// Density evaluation at a point where a divisor vanishes.
    DomainEdge(&'static str),
    /// A box is not contained in the closure of a single cell.
    StraddlesCells,
    /// A degenerate or otherwise unusable box for the requested report.
    BadBox(&'static str),
    /// The subdivision budget ran out before the tolerance was met.
    ToleranceNotReached { achieved: String },
    /// A report needs at least two boxes to fit a constant.
    TooFewBoxes,
}

impl fmt::Display for DistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistError::DomainEdge(what) => write!(f, "density undefined: {what}"),
            DistError::StraddlesCells => {
                write!(f, "box is not inside the closure of a single cell")
            }
            DistError::BadBox(what) => write!(f, "unusable box: {what}"),
            DistError::ToleranceNotReached { achieved } => {
                write!(
                    f,
                    "quadrature tolerance not reached (best error estimate {achieved})"
                )
            }
            DistError::TooFewBoxes => write!(f, "need at least two boxes to fit a constant"),
        }
    }
}

impl std::error::Error for DistError {}

/// `H1` without domain checks; callers guarantee `x > 0`.
pub(crate) fn h1_raw(x: f64, y: f64) -> f64 {
    (1.0 + y - 2.0 * x) / x
}

/// `H2` without domain checks; callers guarantee `x > 0`, `y > 0`.
pub(crate) fn h2_raw(x: f64, y: f64) -> f64 {
    let k = (y / x).floor();
    let a = (1.0 + y - (2.0 + k) * x) / x;
    let b = (1.0 - x - y) / y;
    let d = (1.0 - 2.0 * x - y) / (x + y);
    a.min(b).min(1.0) - d.max(0.0)
}

/// `H3` without domain checks; callers guarantee `x > 0`, `y > 0`.
pub(crate) fn h3_raw(x: f64, y: f64) -> f64 {
    let k = (x / y).floor();
    let m = (3.0 * x + 2.0 * y - 1.0) / (x + y);
    let p1 = (3.0 * x - y - 1.0) / x;
    let p2 = (x + (2.0 - k) * y - 1.0) / y;
    m.min(1.0) - p1.max(p2).max(0.0)
}

pub(crate) fn density_raw(cell: Cell) -> fn(f64, f64) -> f64 {
    match cell {
        Cell::V1 => h1_raw,
        Cell::V2 => h2_raw,
        Cell::V3 => h3_raw,
    }
}

/// Evaluates the cell density at a point of the cell closure.
pub fn density_eval(cell: Cell, x: f64, y: f64) -> Result<f64, DistError> {
    if x < 0.0 || y < 0.0 {
        return Err(DistError::DomainEdge("coordinates must be nonnegative"));
    }
    match cell {
        Cell::V1 if x == 0.0 => Err(DistError::DomainEdge("H1 divides by x")),
        Cell::V2 if x == 0.0 || y == 0.0 => Err(DistError::DomainEdge("H2 divides by x and y")),
        Cell::V3 if x == 0.0 || y == 0.0 => Err(DistError::DomainEdge("H3 divides by x and y")),
        _ => Ok(density_raw(cell)(x, y)),
    }
}

/// The cell whose closure contains the whole box, determined exactly from
/// the four corners and four edge midpoints (the cells are convex, so the
/// corners already decide containment).
pub fn cell_of_box(bounds: &Box2) -> Result<Cell, DistError> {
    let mut samples: Vec<(Ratio, Ratio)> = bounds.corners().to_vec();
    samples.extend(bounds.edge_midpoints());
    for cell in [Cell::V1, Cell::V2, Cell::V3] {
        let poly = cell_polygon(cell);
        if samples.iter().all(|&(x, y)| poly.contains_point(x, y)) {
            return Ok(cell);
        }
    }
    Err(DistError::StraddlesCells)
}
