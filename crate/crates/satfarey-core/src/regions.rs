//! Exact membership tests for the limit region of scaled consecutive
//! denominators and its polygonal pieces.
//!
//! Scaled pairs `(q1/Q, q2/Q)` of adjacent level elements land in
//!
//! ```text
//! V = { (x, y) in [0,1]^2 : max{(1−3x)/2, 2x−1} ≤ y ≤ max{1−x, x} },
//! ```
//!
//! which splits into three closed convex cells:
//!
//! ```text
//! V1 = [1/2,1]×[1/3,1] ∩ { max{1−x, 2x−1} ≤ y ≤ x }
//! V2 = [0,1/2]×[1/5,1] ∩ { max{(1−3x)/2, x} ≤ y ≤ 1−x }
//! V3 = [1/5,2/3]×[0,1/2] ∩ { max{(1−3x)/2, 0, 2x−1} ≤ y ≤ min{x, 1−x} }
//! ```
//!
//! Gaps spanning `r` Farey steps with the mediant attained at chain
//! position `i` land in finer polygons `W_{r,i}`; the tables below list
//! every polygon with a derived boundary (`r ≤ 5`, plus the `(9, 4)` cell,
//! whose lower boundary contains a segment of the region edge `3x+2y=1`).
//! All tests are closed half-plane comparisons `A·q1 + B·q2 + C·Q ≥ 0`
//! carried out in integers; points on shared edges belong to every cell
//! whose closure contains them.

use crate::gaps::GapRecord;
use crate::level::SaturatedLevel;
use crate::ratio::Ratio;
use crate::{gap_records, Error};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

/// One of the three closed cells of the limit region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    V1,
    V2,
    V3,
}

impl Cell {
    pub fn index(self) -> usize {
        match self {
            Cell::V1 => 1,
            Cell::V2 => 2,
            Cell::V3 => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Cell> {
        match i {
            1 => Some(Cell::V1),
            2 => Some(Cell::V2),
            3 => Some(Cell::V3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Cell::V1 => "V1",
            Cell::V2 => "V2",
            Cell::V3 => "V3",
        }
    }
}

/// Memberships of one point: the region and each closed cell. Boundary
/// points may belong to several cells at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionLabel {
    pub in_v: bool,
    pub in_v1: bool,
    pub in_v2: bool,
    pub in_v3: bool,
}

impl RegionLabel {
    pub fn in_cell(&self, cell: Cell) -> bool {
        match cell {
            Cell::V1 => self.in_v1,
            Cell::V2 => self.in_v2,
            Cell::V3 => self.in_v3,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        [Cell::V1, Cell::V2, Cell::V3]
            .into_iter()
            .filter(|&c| self.in_cell(c))
    }

    /// The unique containing cell, if interior to exactly one.
    pub fn unique_cell(&self) -> Option<Cell> {
        let mut it = self.cells();
        match (it.next(), it.next()) {
            (Some(c), None) => Some(c),
            _ => None,
        }
    }

    /// `V1`/`V2`/`V3` when unique, `boundary` when shared, `outside` when
    /// in no cell.
    pub fn cell_name(&self) -> &'static str {
        match (self.in_v1 as u8) + (self.in_v2 as u8) + (self.in_v3 as u8) {
            0 => "outside",
            1 => self.cells().next().expect("one cell").name(),
            _ => "boundary",
        }
    }
}

/// A closed half plane `q1_coef·q1 + q2_coef·q2 + order_coef·Q ≥ 0` in the
/// scaled coordinates `x = q1/Q`, `y = q2/Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfPlane {
    pub q1_coef: i64,
    pub q2_coef: i64,
    pub order_coef: i64,
}

impl HalfPlane {
    const fn new(q1_coef: i64, q2_coef: i64, order_coef: i64) -> Self {
        HalfPlane {
            q1_coef,
            q2_coef,
            order_coef,
        }
    }

    pub fn holds(&self, q1: u64, q2: u64, order: u64) -> bool {
        self.q1_coef * q1 as i64 + self.q2_coef * q2 as i64 + self.order_coef * order as i64 >= 0
    }

    /// Evaluation at a rational point `(x, y)` of the unit square.
    pub fn holds_at(&self, x: Ratio, y: Ratio) -> bool {
        let v = self.q1_coef as i128 * x.num() as i128 * y.den() as i128
            + self.q2_coef as i128 * y.num() as i128 * x.den() as i128
            + self.order_coef as i128 * x.den() as i128 * y.den() as i128;
        v >= 0
    }
}

const fn h(q1_coef: i64, q2_coef: i64, order_coef: i64) -> HalfPlane {
    HalfPlane::new(q1_coef, q2_coef, order_coef)
}

/// A named polygon cut out by closed half planes.
#[derive(Debug, Clone, Copy)]
pub struct Polygon {
    pub name: &'static str,
    pub halves: &'static [HalfPlane],
}

impl Polygon {
    pub fn contains_scaled(&self, q1: u64, q2: u64, order: u64) -> bool {
        self.halves.iter().all(|h| h.holds(q1, q2, order))
    }

    pub fn contains_point(&self, x: Ratio, y: Ratio) -> bool {
        self.halves.iter().all(|h| h.holds_at(x, y))
    }
}

// Cell constraint tables. Inequalities y >= (1-3x)/2, y >= 2x-1 etc. appear
// cross-multiplied: e.g. 2q2 >= Q - 3q1 becomes 3q1 + 2q2 - Q >= 0.
const V1_HALVES: [HalfPlane; 7] = [
    h(2, 0, -1), // x >= 1/2
    h(-1, 0, 1), // x <= 1
    h(0, 3, -1), // y >= 1/3
    h(0, -1, 1), // y <= 1
    h(1, 1, -1), // y >= 1 - x
    h(-2, 1, 1), // y >= 2x - 1
    h(1, -1, 0), // y <= x
];

const V2_HALVES: [HalfPlane; 7] = [
    h(1, 0, 0),   // x >= 0
    h(-2, 0, 1),  // x <= 1/2
    h(0, 5, -1),  // y >= 1/5
    h(0, -1, 1),  // y <= 1
    h(3, 2, -1),  // y >= (1 - 3x)/2
    h(-1, 1, 0),  // y >= x
    h(-1, -1, 1), // y <= 1 - x
];

const V3_HALVES: [HalfPlane; 8] = [
    h(5, 0, -1),  // x >= 1/5
    h(-3, 0, 2),  // x <= 2/3
    h(0, 1, 0),   // y >= 0
    h(0, -2, 1),  // y <= 1/2
    h(3, 2, -1),  // y >= (1 - 3x)/2
    h(-2, 1, 1),  // y >= 2x - 1
    h(1, -1, 0),  // y <= x
    h(-1, -1, 1), // y <= 1 - x
];

pub const CELL_V1: Polygon = Polygon {
    name: "V1",
    halves: &V1_HALVES,
};
pub const CELL_V2: Polygon = Polygon {
    name: "V2",
    halves: &V2_HALVES,
};
pub const CELL_V3: Polygon = Polygon {
    name: "V3",
    halves: &V3_HALVES,
};

pub fn cell_polygon(cell: Cell) -> &'static Polygon {
    match cell {
        Cell::V1 => &CELL_V1,
        Cell::V2 => &CELL_V2,
        Cell::V3 => &CELL_V3,
    }
}

fn region_memberships(test: impl Fn(&HalfPlane) -> bool) -> RegionLabel {
    let holds = |h: &HalfPlane| test(h);
    // The region itself: box bounds, both lower bounds, and the non-convex
    // upper bound y <= max{1 - x, x}.
    let in_v = holds(&h(1, 0, 0))
        && holds(&h(-1, 0, 1))
        && holds(&h(0, 1, 0))
        && holds(&h(0, -1, 1))
        && holds(&h(3, 2, -1))
        && holds(&h(-2, 1, 1))
        && (holds(&h(-1, -1, 1)) || holds(&h(1, -1, 0)));
    let all = |halves: &[HalfPlane]| halves.iter().all(&holds);
    RegionLabel {
        in_v,
        in_v1: all(&V1_HALVES),
        in_v2: all(&V2_HALVES),
        in_v3: all(&V3_HALVES),
    }
}

/// Classifies the scaled point `(q1/order, q2/order)` exactly.
pub fn region_of(q1: u64, q2: u64, order: u64) -> RegionLabel {
    region_memberships(|h| h.holds(q1, q2, order))
}

/// Classifies a rational point of the unit square exactly.
pub fn region_of_point(x: Ratio, y: Ratio) -> RegionLabel {
    region_memberships(|h| h.holds_at(x, y))
}

// W-cell tables: for r >= 2 the polygon of gaps spanning r Farey steps
// whose mediant denominator is attained at chain position i. Each table
// lists the boundary inequalities first and the bounding box last.
const W2_HALVES: [HalfPlane; 8] = [
    h(2, 1, -1),  // y >= 1 - 2x
    h(1, 2, -1),  // y >= (1 - x)/2
    h(-2, 1, 1),  // y >= 2x - 1
    h(-1, -1, 1), // y <= 1 - x
    h(1, 0, 0),
    h(-3, 0, 2), // x <= 2/3
    h(0, 5, -1), // y >= 1/5
    h(0, -1, 1),
];

const W3_1_HALVES: [HalfPlane; 8] = [
    h(2, 1, -1),  // y >= 1 - 2x
    h(1, 3, -1),  // y >= (1 - x)/3
    h(-2, 1, 1),  // y >= 2x - 1
    h(-1, -2, 1), // y <= (1 - x)/2
    h(3, 0, -1),  // x >= 1/3
    h(-5, 0, 3),  // x <= 3/5
    h(0, 7, -1),  // y >= 1/7
    h(0, -3, 1),  // y <= 1/3
];

const W3_2_HALVES: [HalfPlane; 7] = [
    h(3, 1, -1),  // y >= 1 - 3x
    h(1, 2, -1),  // y >= (1 - x)/2
    h(-2, -1, 1), // y <= 1 - 2x
    h(1, 0, 0),
    h(-3, 0, 1), // x <= 1/3
    h(0, 3, -1), // y >= 1/3
    h(0, -1, 1),
];

const W4_1_HALVES: [HalfPlane; 8] = [
    h(2, 1, -1),  // y >= 1 - 2x
    h(1, 4, -1),  // y >= (1 - x)/4
    h(-2, 1, 1),  // y >= 2x - 1
    h(-1, -3, 1), // y <= (1 - x)/3
    h(5, 0, -2),  // x >= 2/5
    h(-7, 0, 4),  // x <= 4/7
    h(0, 9, -1),  // y >= 1/9
    h(0, -5, 1),  // y <= 1/5
];

const W4_2_HALVES: [HalfPlane; 8] = [
    h(3, 1, -1),  // y >= 1 - 3x
    h(1, 3, -1),  // y >= (1 - x)/3
    h(-1, -2, 1), // y <= (1 - x)/2
    h(-2, -1, 1), // y <= 1 - 2x
    h(5, 0, -1),  // x >= 1/5
    h(-5, 0, 2),  // x <= 2/5
    h(0, 5, -1),  // y >= 1/5
    h(0, -5, 2),  // y <= 2/5
];

const W4_3_HALVES: [HalfPlane; 7] = [
    h(4, 1, -1),  // y >= 1 - 4x
    h(1, 2, -1),  // y >= (1 - x)/2
    h(-3, -1, 1), // y <= 1 - 3x
    h(1, 0, 0),
    h(-5, 0, 1), // x <= 1/5
    h(0, 5, -2), // y >= 2/5
    h(0, -1, 1),
];

// The hull of this polygon runs to x = 5/9 at the vertex where y = 2x - 1
// meets y = (1 - x)/4; the smaller bound sometimes quoted (6/11) is only
// the abscissa of the bottom vertex and is refuted by actual gaps (for
// example (161, 32) at order 295).
const W5_1_HALVES: [HalfPlane; 8] = [
    h(2, 1, -1),  // y >= 1 - 2x
    h(1, 5, -1),  // y >= (1 - x)/5
    h(-2, 1, 1),  // y >= 2x - 1
    h(-1, -4, 1), // y <= (1 - x)/4
    h(7, 0, -3),  // x >= 3/7
    h(-9, 0, 5),  // x <= 5/9
    h(0, 11, -1), // y >= 1/11
    h(0, -7, 1),  // y <= 1/7
];

const W5_2_HALVES: [HalfPlane; 8] = [
    h(3, 1, -1),  // y >= 1 - 3x
    h(1, 4, -1),  // y >= (1 - x)/4
    h(-1, -3, 1), // y <= (1 - x)/3
    h(-2, -1, 1), // y <= 1 - 2x
    h(4, 0, -1),  // x >= 1/4
    h(-7, 0, 3),  // x <= 3/7
    h(0, 7, -1),  // y >= 1/7
    h(0, -4, 1),  // y <= 1/4
];

const W5_3_HALVES: [HalfPlane; 8] = [
    h(4, 1, -1),  // y >= 1 - 4x
    h(1, 3, -1),  // y >= (1 - x)/3
    h(-1, -2, 1), // y <= (1 - x)/2
    h(-3, -1, 1), // y <= 1 - 3x
    h(7, 0, -1),  // x >= 1/7
    h(-4, 0, 1),  // x <= 1/4
    h(0, 4, -1),  // y >= 1/4
    h(0, -7, 3),  // y <= 3/7
];

const W5_4_HALVES: [HalfPlane; 7] = [
    h(5, 1, -1),  // y >= 1 - 5x
    h(1, 2, -1),  // y >= (1 - x)/2
    h(-4, -1, 1), // y <= 1 - 4x
    h(1, 0, 0),
    h(-7, 0, 1), // x <= 1/7
    h(0, 7, -3), // y >= 3/7
    h(0, -1, 1),
];

const W9_4_HALVES: [HalfPlane; 11] = [
    h(4, 1, -1),  // y >= 1 - 4x
    h(3, 2, -1),  // y >= (1 - 3x)/2
    h(2, 5, -1),  // y >= (1 - 2x)/5
    h(1, 6, -1),  // y >= (1 - x)/6
    h(-3, -1, 1), // y <= 1 - 3x
    h(-2, -3, 1), // y <= (1 - 2x)/3
    h(-1, -5, 1), // y <= (1 - x)/5
    h(13, 0, -3), // x >= 3/13
    h(-17, 0, 5), // x <= 5/17
    h(0, 17, -2), // y >= 2/17
    h(0, -13, 2), // y <= 2/13
];

pub const W1: Polygon = Polygon {
    name: "W1",
    halves: &V1_HALVES,
};
pub const W2: Polygon = Polygon {
    name: "W2",
    halves: &W2_HALVES,
};
pub const W3_1: Polygon = Polygon {
    name: "W3_1",
    halves: &W3_1_HALVES,
};
pub const W3_2: Polygon = Polygon {
    name: "W3_2",
    halves: &W3_2_HALVES,
};
pub const W4_1: Polygon = Polygon {
    name: "W4_1",
    halves: &W4_1_HALVES,
};
pub const W4_2: Polygon = Polygon {
    name: "W4_2",
    halves: &W4_2_HALVES,
};
pub const W4_3: Polygon = Polygon {
    name: "W4_3",
    halves: &W4_3_HALVES,
};
pub const W5_1: Polygon = Polygon {
    name: "W5_1",
    halves: &W5_1_HALVES,
};
pub const W5_2: Polygon = Polygon {
    name: "W5_2",
    halves: &W5_2_HALVES,
};
pub const W5_3: Polygon = Polygon {
    name: "W5_3",
    halves: &W5_3_HALVES,
};
pub const W5_4: Polygon = Polygon {
    name: "W5_4",
    halves: &W5_4_HALVES,
};
pub const W9_4: Polygon = Polygon {
    name: "W9_4",
    halves: &W9_4_HALVES,
};

/// Every polygon with a tabulated boundary.
pub const W_CELLS: [&Polygon; 12] = [
    &W1, &W2, &W3_1, &W3_2, &W4_1, &W4_2, &W4_3, &W5_1, &W5_2, &W5_3, &W5_4, &W9_4,
];

/// The polygon assigned to gaps spanning `r` steps with mediant position
/// `i`, when tabulated.
pub fn wcell_polygon(r: usize, mediant_pos: usize) -> Option<&'static Polygon> {
    match (r, mediant_pos) {
        (2, 2) => Some(&W2),
        (3, 2) => Some(&W3_1),
        (3, 3) => Some(&W3_2),
        (4, 2) => Some(&W4_1),
        (4, 3) => Some(&W4_2),
        (4, 4) => Some(&W4_3),
        (5, 2) => Some(&W5_1),
        (5, 3) => Some(&W5_2),
        (5, 4) => Some(&W5_3),
        (5, 5) => Some(&W5_4),
        (9, 4) => Some(&W9_4),
        _ => None,
    }
}

/// Classification of a gap into its `W` cell.
#[derive(Debug, Clone)]
pub struct WCellClass {
    pub r: usize,
    pub mediant_pos: Option<usize>,
    /// The tabulated polygon, when one exists for `(r, i)`.
    pub polygon: Option<&'static Polygon>,
    /// Membership of the scaled pair in that polygon; `None` when no
    /// polygon is tabulated. `Some(false)` is a theorem-violation flag.
    pub verified: Option<bool>,
}

impl WCellClass {
    /// `W1`, `W5_2`, ... for tabulated cells; `r12_i7`-style raw labels
    /// otherwise.
    pub fn label(&self) -> String {
        match self.polygon {
            Some(p) => String::from(p.name),
            None => {
                let mut s = String::new();
                match self.mediant_pos {
                    Some(i) => write!(s, "r{}_i{}", self.r, i).expect("write to string"),
                    None => write!(s, "r{}", self.r).expect("write to string"),
                }
                s
            }
        }
    }
}

/// Classifies a gap record by `(r, mediant position)` and, where a polygon
/// boundary is tabulated, verifies the scaled pair lies inside it.
pub fn wcell_of(rec: &GapRecord) -> WCellClass {
    let r = rec.r();
    let (q1, q_last) = rec.endpoints();
    let polygon = if r == 1 {
        Some(&W1)
    } else {
        rec.mediant_pos().and_then(|i| wcell_polygon(r, i))
    };
    WCellClass {
        r,
        mediant_pos: rec.mediant_pos(),
        polygon,
        verified: polygon.map(|p| p.contains_scaled(q1, q_last, rec.q())),
    }
}

/// Outcome of the per-gap inclusion checks at one order.
#[derive(Debug, Clone, Default)]
pub struct InclusionReport {
    pub q_level: u64,
    pub pairs: u64,
    pub violations: u64,
    /// `(q1, q_last, r)` of the first offending gap, if any.
    pub first_violation: Option<(u64, u64, usize)>,
}

/// The inclusion predicate for a gap with the given endpoints and span:
/// `r = 1` pairs must lie in `V1`; `r ≥ 2` pairs must satisfy
/// `q1 + q_last ≤ Q`, `3q1 + 2q_last > Q`, `q_last − 2q1 + Q ≥ 0`, and lie
/// in `V2 ∪ V3`.
pub fn pair_inclusion_holds(q1: u64, q_last: u64, order: u64, r: usize) -> bool {
    let label = region_of(q1, q_last, order);
    if r == 1 {
        label.in_v1
    } else {
        q1 + q_last <= order
            && 3 * q1 + 2 * q_last > order
            && q_last as i64 - 2 * q1 as i64 + order as i64 >= 0
            && (label.in_v2 || label.in_v3)
    }
}

/// The inclusion predicate applied to a full gap record.
pub fn gap_inclusion_holds(rec: &GapRecord) -> bool {
    let (q1, q_last) = rec.endpoints();
    pair_inclusion_holds(q1, q_last, rec.q(), rec.r())
}

/// Runs the inclusion checks over every gap of a level.
pub fn verify_inclusions_on(level: &SaturatedLevel) -> InclusionReport {
    let mut report = InclusionReport {
        q_level: level.q(),
        ..Default::default()
    };
    crate::gaps::for_each_gap(level, |rec| {
        report.pairs += 1;
        if !gap_inclusion_holds(&rec) {
            report.violations += 1;
            if report.first_violation.is_none() {
                let (q1, q_last) = rec.endpoints();
                report.first_violation = Some((q1, q_last, rec.r()));
            }
        }
    });
    report
}

/// Builds the level of the given order and checks every gap inclusion.
pub fn verify_inclusions(order: u64) -> Result<InclusionReport, Error> {
    if order < 4 {
        return Err(Error::OutOfRange("inclusion checks start at order 4"));
    }
    Ok(verify_inclusions_on(&crate::level::build_filter(order)?))
}

/// Pair counts of a level against a closed rational box: `(inside, total)`.
pub fn pair_box_count(level: &SaturatedLevel, bounds: &crate::ratio::Box2) -> (u64, u64) {
    let order = level.q();
    let mut inside = 0;
    let mut total = 0;
    for (l, r) in level.pairs() {
        total += 1;
        if bounds.contains_scaled(l.den(), r.den(), order) {
            inside += 1;
        }
    }
    (inside, total)
}

/// All gap records of the level built at the given order, as a convenience
/// for callers that then classify or export them.
pub fn gap_records_at(order: u64) -> Result<Vec<GapRecord>, Error> {
    Ok(gap_records(&crate::level::build_filter(order)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::build_filter;

    #[test]
    fn cell_examples() {
        let l = region_of(75, 60, 100);
        assert!(l.in_v && l.in_v1 && !l.in_v2 && !l.in_v3);
        let l = region_of(20, 60, 100);
        assert!(l.in_v && l.in_v2 && !l.in_v1 && !l.in_v3);
        let l = region_of(40, 20, 100);
        assert!(l.in_v && l.in_v3 && !l.in_v1 && !l.in_v2);
        // (0.6, 0.1): below the lower bound 2x - 1 = 0.2.
        let l = region_of(60, 10, 100);
        assert!(!l.in_v && !l.in_v1 && !l.in_v2 && !l.in_v3);
    }

    #[test]
    fn cells_partition_the_region() {
        // On a full integer grid, membership in V coincides with
        // membership in the union of the closed cells.
        let order = 97u64;
        for q1 in 0..=order {
            for q2 in 0..=order {
                let l = region_of(q1, q2, order);
                assert_eq!(
                    l.in_v,
                    l.in_v1 || l.in_v2 || l.in_v3,
                    "({q1}, {q2})/{order}"
                );
            }
        }
    }

    #[test]
    fn boundary_points_report_multiple_cells() {
        // (1/2, 1/2) is the corner shared by all three closed cells.
        let l = region_of(1, 1, 2);
        assert!(l.in_v1 && l.in_v2 && l.in_v3);
        assert_eq!(l.cell_name(), "boundary");
        assert_eq!(l.unique_cell(), None);
        // (2/3, 1/3) lies on the edge shared by V1 and V3.
        let l = region_of(2, 1, 3);
        assert!(l.in_v1 && !l.in_v2 && l.in_v3);
        // An interior V1 point is unique.
        assert_eq!(region_of(75, 60, 100).unique_cell(), Some(Cell::V1));
    }

    #[test]
    fn known_chain_lands_in_w94() {
        assert!(W9_4.contains_scaled(27, 14, 100));
        // Corners of the bounding box hold as well.
        let x = Ratio::new(27, 100).unwrap();
        let y = Ratio::new(14, 100).unwrap();
        assert!(W9_4.contains_point(x, y));
        assert!(Ratio::new(3, 13).unwrap() <= x && x <= Ratio::new(5, 17).unwrap());
        assert!(Ratio::new(2, 17).unwrap() <= y && y <= Ratio::new(2, 13).unwrap());
    }

    #[test]
    fn wcells_verified_small_orders() {
        for order in 4..=150u64 {
            let level = build_filter(order).unwrap();
            crate::gaps::for_each_gap(&level, |rec| {
                let class = wcell_of(&rec);
                if let Some(ok) = class.verified {
                    assert!(
                        ok,
                        "gap {:?} escaped {} at order {order}",
                        rec.endpoints(),
                        class.label()
                    );
                }
                if rec.r() == 1 {
                    // W1 sits inside [1/2, 1] x [1/3, 1].
                    let (q1, q2) = rec.endpoints();
                    assert!(2 * q1 >= order && 3 * q2 >= order && q1 <= order && q2 <= order);
                }
            });
        }
    }

    #[test]
    fn inclusions_hold_small_orders() {
        for order in 4..=150 {
            let report = verify_inclusions(order).unwrap();
            assert_eq!(report.violations, 0, "order {order}");
            assert_eq!(report.pairs, build_filter(order).unwrap().s() - 1);
        }
    }

    #[test]
    fn raw_labels_for_untabulated_cells() {
        let level = build_filter(200).unwrap();
        let mut seen_raw = false;
        crate::gaps::for_each_gap(&level, |rec| {
            let class = wcell_of(&rec);
            if class.polygon.is_none() {
                seen_raw = true;
                let label = class.label();
                assert!(label.starts_with('r'), "{label}");
            }
        });
        assert!(
            seen_raw,
            "large orders contain gaps beyond the tabulated cells"
        );
    }
}
