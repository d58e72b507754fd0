//! Distribution side of the saturated Farey machinery, plus file formats
//! and the `satfarey` command line.
//!
//! The exact integer layer lives in `satfarey-core` and is re-exported
//! here. This crate adds the closed-form limiting densities of scaled
//! consecutive-denominator pairs, deterministic quadrature over the three
//! region cells, a Monte Carlo cross-check, empirical-vs-theoretical
//! density reports, parallel verification sweeps, and byte-stable CSV/JSON
//! writers.

pub use satfarey_core as core;

pub mod cli;
pub mod csvio;
pub mod density;
pub mod fmtnum;
pub mod mc;
pub mod quad;
pub mod report;
pub mod verify;

pub use density::{cell_of_box, density_eval, DistError};
pub use quad::{integrate_density, total_mass};
pub use report::{density_report, empirical_box_fraction, predicted_count, DensityReport};

use core::{Box2, Ratio};

/// Rational constructor shorthand used across tests and default tables.
pub fn ratio(num: i64, den: i64) -> Ratio {
    Ratio::new(num, den).expect("valid rational")
}

/// Box constructor shorthand.
pub fn rbox(x0: (i64, i64), x1: (i64, i64), y0: (i64, i64), y1: (i64, i64)) -> Box2 {
    Box2::from_ints(x0, x1, y0, y1).expect("valid box")
}
