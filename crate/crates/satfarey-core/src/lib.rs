//! Exact arithmetic for saturated Farey levels.
//!
//! A reduced fraction `a/q` in `(0, 1]` is assigned the integer height
//! `h(a/q) = q + a + ā`, where `ā` is the multiplicative inverse of `a`
//! modulo `q` normalized to `[1, q)` (with `ā = 1` when `q = 1`). The
//! saturated level of order `Q` is the ordered set of all fractions with
//! `h ≤ Q`. Successive levels grow by mediant insertion only, and adjacent
//! elements always satisfy the unimodular relation
//! `a_{i+1} q_i − a_i q_{i+1} = 1`, so that the whole combinatorial and
//! geometric structure of a level is decided by integer arithmetic.
//!
//! The crate provides:
//!
//! - [`frac`]: fractions, modular inverses, heights, mediants, and the
//!   closed formulas expressing pair data through the two denominators;
//! - [`level`]: two independent level builders (direct filter and
//!   incremental mediant insertion), level deltas, and the index identity;
//! - [`gaps`]: gap records between consecutive level elements, the chain
//!   of intermediate Farey fractions, continuants, and the `(K, ν)`
//!   parameters;
//! - [`regions`]: exact membership tests for the limit region `V`, its
//!   cells `V1`–`V3`, and the per-gap polygons `W_{r,i}`;
//! - [`ratio`]: a small signed rational type used for thresholds and
//!   rectangular boxes.
//!
//! Everything here is `no_std` + `alloc`: all operations are pure integer
//! (or exact rational) computations on immutable values.
//!
//! ```
//! use satfarey_core::{build_filter, build_incremental, gap_records, region_of, Fraction};
//!
//! // 5/9 has height 9 + 5 + 2 = 16 and therefore first appears at order 16.
//! assert_eq!(Fraction::new(5, 9).unwrap().height(), 16);
//! let level = build_filter(16).unwrap();
//! assert!(level.elements().iter().any(|e| e.fraction() == Fraction::new(5, 9).unwrap()));
//!
//! // The two builders agree, and every scaled adjacent pair lies in the
//! // limit region.
//! assert_eq!(level.elements(), build_incremental(16).unwrap().elements());
//! for rec in gap_records(&level) {
//!     let (q1, q2) = rec.endpoints();
//!     assert!(region_of(q1, q2, level.q()).in_v);
//! }
//! ```

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod frac;
pub mod gaps;
pub mod level;
pub mod ratio;
pub mod regions;

pub use frac::{gcd, inv_mod, Fraction, HeightedFraction, PairFormulas, UnimodularPair};
pub use gaps::{continuant, farey_step, gap_records, GapRecord};
pub use level::{build_filter, build_incremental, IncrementalBuilder, LevelDelta, SaturatedLevel};
pub use ratio::{Box2, Ratio};
pub use regions::{region_of, verify_inclusions, Cell, RegionLabel};

use core::fmt;

/// Errors reported by precondition checks across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// A modular inverse was requested for arguments that are not coprime.
    NotCoprime { a: u64, modulus: u64 },
    /// Zero modulus or zero denominator.
    ZeroModulus,
    /// An argument fell outside its documented range.
    OutOfRange(&'static str),
    /// A fraction constructor received a non-reduced pair.
    NotReduced { num: u64, den: u64 },
    /// Two fractions do not satisfy `a2 q1 - a1 q2 = 1`.
    NotUnimodular,
    /// Level orders start at 3.
    LevelTooSmall { q: u64 },
    /// Denominators that are not Farey neighbours at the given order.
    NotFareyNeighbors { q1: u64, q2: u64, order: u64 },
    /// A rational or box constructor received inconsistent bounds.
    BadInterval(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::NotCoprime { a, modulus } => {
                write!(f, "{a} is not invertible modulo {modulus}")
            }
            Error::ZeroModulus => write!(f, "modulus must be positive"),
            Error::OutOfRange(what) => write!(f, "argument out of range: {what}"),
            Error::NotReduced { num, den } => {
                write!(f, "{num}/{den} is not a reduced fraction in (0, 1]")
            }
            Error::NotUnimodular => write!(f, "pair does not satisfy a2*q1 - a1*q2 = 1"),
            Error::LevelTooSmall { q } => write!(f, "level order must be at least 3, got {q}"),
            Error::NotFareyNeighbors { q1, q2, order } => {
                write!(
                    f,
                    "({q1}, {q2}) are not denominators of Farey neighbours at order {order}"
                )
            }
            Error::BadInterval(what) => write!(f, "bad interval: {what}"),
        }
    }
}

impl core::error::Error for Error {}
