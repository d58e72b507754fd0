//! Distribution-layer checks beyond the unit tests: the Monte Carlo
//! cross-check on every default box, and quadrature behaviour under
//! subdivision.

use satfarey::core::regions::Cell;
use satfarey::density::cell_of_box;
use satfarey::mc::mc_box_mass;
use satfarey::quad::integrate_density;
use satfarey::rbox;
use satfarey::report::default_density_boxes;

#[test]
fn quadrature_vs_monte_carlo_on_all_default_boxes() {
    for (i, bounds) in default_density_boxes().iter().enumerate() {
        let cell = cell_of_box(bounds).unwrap();
        let quad = integrate_density(cell, bounds, 1e-9).unwrap();
        let mc = mc_box_mass(cell, bounds, 10_000_000, 0xC0FFEE + i as u64);
        let dev = (mc.value - quad).abs();
        assert!(
            dev <= 3.0 * mc.std_error,
            "box {i}: quadrature {quad} vs MC {} +- {} ({}σ)",
            mc.value,
            mc.std_error,
            dev / mc.std_error
        );
    }
}

#[test]
fn fine_bisection_additivity_in_each_cell() {
    let cases = [
        (Cell::V1, rbox((6, 10), (7, 10), (5, 10), (55, 100))),
        (Cell::V2, rbox((1, 4), (35, 100), (55, 100), (6, 10))),
        (Cell::V3, rbox((35, 100), (45, 100), (2, 10), (3, 10))),
    ];
    let tol = 1e-10;
    for (cell, whole) in cases {
        let whole_val = integrate_density(cell, &whole, tol).unwrap();
        // Split into a 4x4 grid of sub-boxes.
        let mut sum = 0.0;
        let dx = (whole.x1 - whole.x0) / satfarey::ratio(4, 1);
        let dy = (whole.y1 - whole.y0) / satfarey::ratio(4, 1);
        for i in 0..4 {
            for j in 0..4 {
                let x0 = whole.x0 + dx * satfarey::ratio(i, 1);
                let y0 = whole.y0 + dy * satfarey::ratio(j, 1);
                let sub = satfarey::core::Box2::new(x0, x0 + dx, y0, y0 + dy).unwrap();
                sum += integrate_density(cell, &sub, tol).unwrap();
            }
        }
        assert!(
            (whole_val - sum).abs() < 32.0 * tol,
            "{cell:?}: whole {whole_val} vs tiled {sum}"
        );
    }
}

#[test]
fn tolerance_scaling_is_consistent() {
    let b = rbox((1, 4), (35, 100), (55, 100), (6, 10));
    let coarse = integrate_density(Cell::V2, &b, 1e-6).unwrap();
    let fine = integrate_density(Cell::V2, &b, 1e-12).unwrap();
    assert!(
        (coarse - fine).abs() < 1e-6,
        "coarse {coarse} vs fine {fine}"
    );
}

#[test]
fn boundary_touching_box_tracks_the_fitted_constant() {
    // A box leaning on two edges of V1 (y = 1 - x and y = x at opposite
    // corners) still obeys the proportionality within ten percent.
    let level = satfarey::core::level::build_filter(4000).unwrap();
    let report =
        satfarey::report::density_report(&level, &satfarey::report::default_density_boxes(), 1e-8)
            .unwrap();
    let b = rbox((55, 100), (65, 100), (45, 100), (55, 100));
    assert_eq!(cell_of_box(&b).unwrap(), Cell::V1);
    let empirical = satfarey::report::empirical_box_fraction(&level, &b);
    let theoretical = integrate_density(Cell::V1, &b, 1e-9).unwrap();
    let ratio = empirical / theoretical;
    let rel = (ratio - report.fitted_constant).abs() / report.fitted_constant;
    assert!(
        rel < 0.10,
        "ratio {ratio} vs fitted {} ({rel})",
        report.fitted_constant
    );
}
