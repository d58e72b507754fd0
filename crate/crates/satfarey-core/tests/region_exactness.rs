//! The integer membership predicates against an independent evaluation
//! route (rational arithmetic over distinct denominators) and against
//! plain floating point away from boundaries.

use proptest::prelude::*;
use satfarey_core::ratio::Ratio;
use satfarey_core::regions::{region_of, region_of_point};

/// Real-arithmetic evaluation of the region inequalities, reliable only
/// when no constraint is within `eps` of active.
fn region_f64(x: f64, y: f64, eps: f64) -> Option<(bool, bool, bool, bool)> {
    let exprs = [
        x,
        1.0 - x,
        y,
        1.0 - y,
        3.0 * x + 2.0 * y - 1.0,
        y - 2.0 * x + 1.0,
        1.0 - x - y,
        x - y,
        2.0 * x - 1.0,
        3.0 * y - 1.0,
        5.0 * y - 1.0,
        y - x,
        5.0 * x - 1.0,
        2.0 - 3.0 * x,
        1.0 - 2.0 * y,
    ];
    if exprs.iter().any(|e| e.abs() < eps) {
        return None;
    }
    let in_box = (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y);
    let in_v = in_box && 3.0 * x + 2.0 * y >= 1.0 && y >= 2.0 * x - 1.0 && (y <= 1.0 - x || y <= x);
    let in_v1 = (0.5..=1.0).contains(&x)
        && 3.0 * y >= 1.0
        && y <= 1.0
        && y >= 1.0 - x
        && y >= 2.0 * x - 1.0
        && y <= x;
    let in_v2 = x >= 0.0
        && 2.0 * x <= 1.0
        && 5.0 * y >= 1.0
        && y <= 1.0
        && 3.0 * x + 2.0 * y >= 1.0
        && y >= x
        && x + y <= 1.0;
    let in_v3 = 5.0 * x >= 1.0
        && 3.0 * x <= 2.0
        && y >= 0.0
        && 2.0 * y <= 1.0
        && 3.0 * x + 2.0 * y >= 1.0
        && y >= 2.0 * x - 1.0
        && y <= x
        && y <= 1.0 - x;
    Some((in_v, in_v1, in_v2, in_v3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn integer_and_rational_routes_agree(q1 in 0u64..1_000_000, q2 in 0u64..1_000_000, order in 3u64..1_000_000) {
        let a = region_of(q1, q2, order);
        // Independent route: rational point with separately reduced coordinates.
        let x = Ratio::new(q1 as i64, order as i64).unwrap();
        let y = Ratio::new(q2 as i64, order as i64).unwrap();
        let b = region_of_point(x, y);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn integer_route_agrees_with_reals_off_boundary(q1 in 0u64..100_000, q2 in 0u64..100_000, order in 3u64..100_000) {
        let x = q1 as f64 / order as f64;
        let y = q2 as f64 / order as f64;
        if let Some((v, v1, v2, v3)) = region_f64(x, y, 1e-7) {
            let l = region_of(q1, q2, order);
            prop_assert_eq!((v, v1, v2, v3), (l.in_v, l.in_v1, l.in_v2, l.in_v3));
        }
    }

    #[test]
    fn cells_cover_the_region(q1 in 0u64..10_000, q2 in 0u64..10_000, order in 3u64..10_000) {
        let l = region_of(q1, q2, order);
        prop_assert_eq!(l.in_v, l.in_v1 || l.in_v2 || l.in_v3);
    }
}
