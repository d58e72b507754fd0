//! Deterministic quadrature of the cell densities over boxes and over the
//! cells themselves.
//!
//! Inside each cell the densities are piecewise algebraic with kinks along
//! a handful of straight lines only:
//!
//! - on `V2`, with `y ≥ x` the floor `⌊y/x⌋` is 1 wherever the first
//!   min-argument can be active (for `x ≤ 1/3` that argument provably
//!   exceeds 1 and drops out), so the switch lines are `y = x`,
//!   `y = 4x − 1`, `x + 2y = 1`, `2x + y = 1`, plus the floor lines
//!   `y = kx`, across which the integrand is continuous anyway;
//! - on `V3` the second max-argument is never positive, leaving the lines
//!   `2x + y = 1` and `y = 3x − 1`;
//! - `H1` is smooth.
//!
//! An integration region (a box, or a slice of a cell between two straight
//! boundary lines) is cut at every rational abscissa where switch lines
//! meet each other or the boundary; inside each vertical strip the active
//! lines split it into panels on which the integrand is smooth. Panels map
//! affinely onto the unit square and are handled by tensor Gauss–Legendre
//! rules, escalating the order and bisecting until the two-rule error
//! estimate meets the budget.

use crate::core::ratio::{Box2, Ratio};
use crate::core::regions::Cell;
use crate::density::{density_raw, DistError};
use std::sync::OnceLock;

/// A straight line `y = m·x + c` with exact rational data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line {
    pub m: Ratio,
    pub c: Ratio,
}

impl Line {
    pub fn new(m: Ratio, c: Ratio) -> Self {
        Line { m, c }
    }

    pub fn horizontal(c: Ratio) -> Self {
        Line { m: Ratio::ZERO, c }
    }

    pub fn at(&self, x: Ratio) -> Ratio {
        self.m * x + self.c
    }

    /// Abscissa where two non-parallel lines meet.
    fn intersect_x(&self, other: &Line) -> Option<Ratio> {
        if self.m == other.m {
            None
        } else {
            Some((other.c - self.c) / (self.m - other.m))
        }
    }
}

fn line(m: (i64, i64), c: (i64, i64)) -> Line {
    Line::new(
        Ratio::new(m.0, m.1).expect("slope"),
        Ratio::new(c.0, c.1).expect("intercept"),
    )
}

/// Switch lines of the density on each cell.
fn kink_lines(cell: Cell) -> &'static [Line] {
    static V2_LINES: OnceLock<Vec<Line>> = OnceLock::new();
    static V3_LINES: OnceLock<Vec<Line>> = OnceLock::new();
    match cell {
        Cell::V1 => &[],
        Cell::V2 => V2_LINES.get_or_init(|| {
            vec![
                line((1, 1), (0, 1)),  // y = x (floor band edge; first min arg meets second)
                line((2, 1), (0, 1)),  // y = 2x (floor band edge)
                line((4, 1), (-1, 1)), // y = 4x - 1 (first min arg = 1)
                line((-1, 2), (1, 2)), // y = (1 - x)/2 (second min arg = 1)
                line((-2, 1), (1, 1)), // y = 1 - 2x (max arg = 0)
            ]
        }),
        Cell::V3 => V3_LINES.get_or_init(|| {
            vec![
                line((-2, 1), (1, 1)), // y = 1 - 2x (min saturates at 1)
                line((3, 1), (-1, 1)), // y = 3x - 1 (first max arg = 0)
            ]
        }),
    }
}

/// A region `{ (x, y) : xa ≤ x ≤ xb, lo(x) ≤ y ≤ hi(x) }`.
#[derive(Debug, Clone, Copy)]
pub struct Slice {
    pub xa: Ratio,
    pub xb: Ratio,
    pub lo: Line,
    pub hi: Line,
}

/// A panel: one strip between two consecutive active lines, smooth inside.
struct Panel {
    xa: f64,
    xb: f64,
    lo_m: f64,
    lo_c: f64,
    hi_m: f64,
    hi_c: f64,
}

impl Panel {
    fn area(&self) -> f64 {
        let mid = 0.5 * (self.xa + self.xb);
        let h = (self.hi_m * mid + self.hi_c) - (self.lo_m * mid + self.lo_c);
        (self.xb - self.xa) * h.max(0.0)
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`, computed once per order
/// by Newton iteration on the Legendre recurrence.
fn gauss_rule(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static RULES: OnceLock<[(Vec<f64>, Vec<f64>); 2]> = OnceLock::new();
    let rules = RULES.get_or_init(|| [compute_rule(16), compute_rule(32)]);
    match n {
        16 => &rules[0],
        32 => &rules[1],
        _ => unreachable!("unsupported rule order"),
    }
}

fn compute_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        // Map from [-1, 1] to [0, 1].
        nodes[n - 1 - i] = 0.5 * (x + 1.0);
        weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Legendre polynomial value and derivative at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        (p0, p1) = (p1, ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss_panel(f: &dyn Fn(f64, f64) -> f64, p: &Panel, n: usize) -> f64 {
    let (nodes, weights) = gauss_rule(n);
    let w = p.xb - p.xa;
    let mut total = 0.0;
    for (&sx, &wx) in nodes.iter().zip(weights) {
        let x = p.xa + sx * w;
        let ylo = p.lo_m * x + p.lo_c;
        let yhi = p.hi_m * x + p.hi_c;
        let h = yhi - ylo;
        if h <= 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for (&sy, &wy) in nodes.iter().zip(weights) {
            inner += wy * f(x, ylo + sy * h);
        }
        total += wx * inner * h;
    }
    total * w
}

/// Integrates over one smooth panel to the given absolute tolerance,
/// escalating the rule order and bisecting in `x` as needed.
fn integrate_panel(
    f: &dyn Fn(f64, f64) -> f64,
    p: &Panel,
    tol: f64,
    depth: u32,
) -> Result<f64, f64> {
    let coarse = gauss_panel(f, p, 16);
    let fine = gauss_panel(f, p, 32);
    let err = (fine - coarse).abs();
    if err <= tol {
        return Ok(fine);
    }
    if depth >= 28 {
        return Err(err);
    }
    let xm = 0.5 * (p.xa + p.xb);
    let left = Panel { xb: xm, ..*p };
    let right = Panel { xa: xm, ..*p };
    let half = 0.5 * tol;
    match (
        integrate_panel(f, &left, half, depth + 1),
        integrate_panel(f, &right, half, depth + 1),
    ) {
        (Ok(a), Ok(b)) => Ok(a + b),
        (r1, r2) => Err(r1.err().unwrap_or(0.0) + r2.err().unwrap_or(0.0)),
    }
}

/// Cuts a slice at every abscissa where switch lines cross the boundary or
/// each other, then splits each strip by the active lines into panels.
fn panels_of_slice(cell: Cell, slice: &Slice) -> Vec<Panel> {
    let lines = kink_lines(cell);
    let mut cuts: Vec<Ratio> = vec![slice.xa, slice.xb];
    let mut push_cut = |x: Option<Ratio>| {
        if let Some(x) = x {
            if x > slice.xa && x < slice.xb {
                cuts.push(x);
            }
        }
    };
    for l in lines {
        push_cut(l.intersect_x(&slice.lo));
        push_cut(l.intersect_x(&slice.hi));
    }
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            push_cut(a.intersect_x(b));
        }
    }
    cuts.sort_unstable();
    cuts.dedup();

    let mut panels = Vec::new();
    for w in cuts.windows(2) {
        let (xl, xr) = (w[0], w[1]);
        if xl >= xr {
            continue;
        }
        let xm = xl.midpoint(xr);
        let ylo = slice.lo.at(xm);
        let yhi = slice.hi.at(xm);
        if yhi <= ylo {
            continue;
        }
        // Lines strictly crossing this strip, ordered by height at the
        // midpoint; no two of them intersect inside the strip.
        let mut active: Vec<&Line> = lines
            .iter()
            .filter(|l| l.at(xm) > ylo && l.at(xm) < yhi)
            .collect();
        active.sort_by_key(|a| a.at(xm));

        let mut bounds: Vec<Line> = Vec::with_capacity(active.len() + 2);
        bounds.push(slice.lo);
        bounds.extend(active.into_iter().copied());
        bounds.push(slice.hi);
        for pair in bounds.windows(2) {
            panels.push(Panel {
                xa: xl.to_f64(),
                xb: xr.to_f64(),
                lo_m: pair[0].m.to_f64(),
                lo_c: pair[0].c.to_f64(),
                hi_m: pair[1].m.to_f64(),
                hi_c: pair[1].c.to_f64(),
            });
        }
    }
    panels
}

/// Integrates the cell density over a slice to the given absolute tolerance.
pub fn integrate_slice(cell: Cell, slice: &Slice, tol: f64) -> Result<f64, DistError> {
    let f = density_raw(cell);
    let panels = panels_of_slice(cell, slice);
    if panels.is_empty() {
        return Ok(0.0);
    }
    let total_area: f64 = panels.iter().map(Panel::area).sum();
    let mut total = 0.0;
    let mut failed_err = 0.0;
    for p in &panels {
        let share = if total_area > 0.0 {
            (p.area() / total_area).max(1e-3)
        } else {
            1.0
        };
        match integrate_panel(&f, p, tol * share, 0) {
            Ok(v) => total += v,
            Err(e) => failed_err += e,
        }
    }
    if failed_err > 0.0 {
        return Err(DistError::ToleranceNotReached {
            achieved: crate::fmtnum::g12(failed_err),
        });
    }
    Ok(total)
}

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Integral of the cell density over a box inside the closure of one cell.
///
/// The box must not touch `x = 0` (cells `V1`, `V2`) or `y = 0` (`V2`,
/// `V3`), where the densities divide by the vanishing coordinate.
/// Degenerate boxes integrate to zero.
pub fn integrate_density(cell: Cell, bounds: &Box2, tol: f64) -> Result<f64, DistError> {
    let poly = crate::core::regions::cell_polygon(cell);
    let mut pts = bounds.corners().to_vec();
    pts.extend(bounds.edge_midpoints());
    if !pts.iter().all(|&(x, y)| poly.contains_point(x, y)) {
        return Err(DistError::StraddlesCells);
    }
    if bounds.is_degenerate() {
        return Ok(0.0);
    }
    let needs_x = matches!(cell, Cell::V1 | Cell::V2);
    if needs_x && bounds.x0 <= Ratio::ZERO {
        return Err(DistError::BadBox("box must keep x0 > 0"));
    }
    if matches!(cell, Cell::V2 | Cell::V3) && bounds.y0 <= Ratio::ZERO {
        return Err(DistError::BadBox("box must keep y0 > 0"));
    }
    let slice = Slice {
        xa: bounds.x0,
        xb: bounds.x1,
        lo: Line::horizontal(bounds.y0),
        hi: Line::horizontal(bounds.y1),
    };
    integrate_slice(cell, &slice, tol)
}

fn r(num: i64, den: i64) -> Ratio {
    Ratio::new(num, den).expect("rational")
}

/// Mass of `H1` over `V1`: the cell is bounded below by `1 − x` and then
/// `2x − 1`, above by `x`.
pub fn v1_mass(tol: f64) -> Result<f64, DistError> {
    let upper = line((1, 1), (0, 1));
    let a = Slice {
        xa: r(1, 2),
        xb: r(2, 3),
        lo: line((-1, 1), (1, 1)),
        hi: upper,
    };
    let b = Slice {
        xa: r(2, 3),
        xb: r(1, 1),
        lo: line((2, 1), (-1, 1)),
        hi: upper,
    };
    Ok(integrate_slice(Cell::V1, &a, tol / 2.0)? + integrate_slice(Cell::V1, &b, tol / 2.0)?)
}

/// Mass of `H2` over `V2` with the strip `x < eps` removed.
pub fn v2_mass(eps: Ratio, tol: f64) -> Result<f64, DistError> {
    let hi = line((-1, 1), (1, 1)); // y = 1 - x
    let a = Slice {
        xa: eps,
        xb: r(1, 5),
        lo: line((-3, 2), (1, 2)),
        hi,
    };
    let b = Slice {
        xa: r(1, 5),
        xb: r(1, 2),
        lo: line((1, 1), (0, 1)),
        hi,
    };
    Ok(integrate_slice(Cell::V2, &a, tol / 2.0)? + integrate_slice(Cell::V2, &b, tol / 2.0)?)
}

/// Mass of `H3` over `V3` with the strip `y < eps` removed.
pub fn v3_mass(eps: Ratio, tol: f64) -> Result<f64, DistError> {
    let cut_lo = (Ratio::ONE - Ratio::from_int(2) * eps) / Ratio::from_int(3);
    let cut_hi = (Ratio::ONE + eps) / Ratio::from_int(2);
    let floor_eps = Line::horizontal(eps);
    let slices = [
        Slice {
            xa: r(1, 5),
            xb: cut_lo,
            lo: line((-3, 2), (1, 2)),
            hi: line((1, 1), (0, 1)),
        },
        Slice {
            xa: cut_lo,
            xb: r(1, 2),
            lo: floor_eps,
            hi: line((1, 1), (0, 1)),
        },
        Slice {
            xa: r(1, 2),
            xb: cut_hi,
            lo: floor_eps,
            hi: line((-1, 1), (1, 1)),
        },
        Slice {
            xa: cut_hi,
            xb: r(2, 3),
            lo: line((2, 1), (-1, 1)),
            hi: line((-1, 1), (1, 1)),
        },
    ];
    let share = tol / slices.len() as f64;
    let mut total = 0.0;
    for s in &slices {
        total += integrate_slice(Cell::V3, s, share)?;
    }
    Ok(total)
}

/// Total mass of the limiting density over the whole region.
///
/// The `V2` and `V3` cells touch the axes where their densities divide by
/// a vanishing coordinate; those cells are integrated with an `ε`-margin
/// (`ε = 10⁻⁴`) and the margin limit is removed by one Richardson step,
/// `2·m(ε/2) − m(ε)`, since the excluded strip contributes linearly in `ε`.
pub fn total_mass(tol: f64) -> Result<f64, DistError> {
    let eps = r(1, 10_000);
    let half = eps / Ratio::from_int(2);
    let share = tol / 5.0;
    let v1 = v1_mass(share)?;
    let v2 = 2.0 * v2_mass(half, share)? - v2_mass(eps, share)?;
    let v3 = 2.0 * v3_mass(half, share)? - v3_mass(eps, share)?;
    Ok(v1 + v2 + v3)
}

/// The three extrapolated cell masses `(V1, V2, V3)`.
pub fn cell_masses(tol: f64) -> Result<(f64, f64, f64), DistError> {
    let eps = r(1, 10_000);
    let half = eps / Ratio::from_int(2);
    let share = tol / 5.0;
    Ok((
        v1_mass(share)?,
        2.0 * v2_mass(half, share)? - v2_mass(eps, share)?,
        2.0 * v3_mass(half, share)? - v3_mass(eps, share)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rbox;

    /// Closed-form oracle for H1 over a box:
    /// ∬ (1 + y − 2x)/x dx dy = (Δy + (y1² − y0²)/2)·ln(x1/x0) − 2 Δx Δy.
    fn h1_box_oracle(x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
        ((y1 - y0) + (y1 * y1 - y0 * y0) / 2.0) * (x1 / x0).ln() - 2.0 * (x1 - x0) * (y1 - y0)
    }

    #[test]
    fn h1_box_matches_antiderivative() {
        let b = rbox((6, 10), (7, 10), (5, 10), (55, 100));
        let v = integrate_density(Cell::V1, &b, 1e-10).unwrap();
        let oracle = h1_box_oracle(0.6, 0.7, 0.5, 0.55);
        assert!((v - oracle).abs() < 1e-10, "quad {v} vs oracle {oracle}");
        assert!((oracle - 1.753_989_336_83e-3).abs() < 1e-12);
    }

    #[test]
    fn degenerate_box_is_zero() {
        let b = rbox((6, 10), (6, 10), (5, 10), (55, 100));
        assert_eq!(integrate_density(Cell::V1, &b, 1e-8).unwrap(), 0.0);
    }

    #[test]
    fn bisection_additivity() {
        let whole = rbox((1, 4), (7, 20), (11, 20), (3, 5));
        let left = rbox((1, 4), (3, 10), (11, 20), (3, 5));
        let right = rbox((3, 10), (7, 20), (11, 20), (3, 5));
        let tol = 1e-9;
        let w = integrate_density(Cell::V2, &whole, tol).unwrap();
        let l = integrate_density(Cell::V2, &left, tol).unwrap();
        let rr = integrate_density(Cell::V2, &right, tol).unwrap();
        assert!((w - (l + rr)).abs() < 2.0 * tol, "{w} vs {l} + {rr}");
    }

    #[test]
    fn straddling_box_rejected() {
        let b = rbox((2, 5), (3, 5), (45, 100), (55, 100));
        assert!(matches!(
            integrate_density(Cell::V1, &b, 1e-8),
            Err(DistError::StraddlesCells)
        ));
    }

    #[test]
    fn gauss_rules_integrate_polynomials() {
        // 16-point Gauss is exact through degree 31.
        let (nodes, weights) = gauss_rule(16).clone();
        for k in 0..=10u32 {
            let val: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(&x, &w)| w * x.powi(k as i32))
                .sum();
            let exact = 1.0 / (k as f64 + 1.0);
            assert!((val - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn cell_masses_regression_fixtures() {
        // Frozen from the quadrature itself; the sum independently matches
        // ln(4/3)/2 to 5e-9, and the per-cell values match the empirical
        // pair fractions (times 2/ln(4/3)) of constructed levels.
        let (m1, m2, m3) = cell_masses(1e-9).unwrap();
        assert!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0);
        assert!((m1 - 0.021209445376).abs() < 1e-8);
        assert!((m2 - 0.052680260329).abs() < 1e-8);
        assert!((m3 - 0.069951335521).abs() < 1e-8);
        assert!(m3 > m2 && m2 > m1);
    }

    #[test]
    fn total_mass_matches_the_counting_constant() {
        let total = total_mass(1e-9).unwrap();
        assert!(
            (total - (4.0f64 / 3.0).ln() / 2.0).abs() < 1e-6,
            "total {total}"
        );
    }
}
