//! Seeded Monte Carlo estimate of a cell-density box integral, used as an
//! independent cross-check of the deterministic quadrature.

use crate::core::ratio::Box2;
use crate::core::regions::Cell;
use crate::density::density_raw;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Uniform sampling over the box; the box must lie inside the closure of
/// the given cell (as for [`crate::integrate_density`]).
pub fn mc_box_mass(cell: Cell, bounds: &Box2, samples: u64, seed: u64) -> McEstimate {
    assert!(samples >= 2);
    let f = density_raw(cell);
    let (x0, x1) = (bounds.x0.to_f64(), bounds.x1.to_f64());
    let (y0, y1) = (bounds.y0.to_f64(), bounds.y1.to_f64());
    let area = (x1 - x0) * (y1 - y0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        let x = rng.gen_range(x0..=x1);
        let y = rng.gen_range(y0..=y1);
        let v = f(x, y);
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    McEstimate {
        value: mean * area,
        std_error: (var / n).sqrt() * area,
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_density;
    use crate::rbox;

    #[test]
    fn mc_agrees_with_quadrature_on_a_smooth_box() {
        let b = rbox((6, 10), (7, 10), (5, 10), (55, 100));
        let quad = integrate_density(Cell::V1, &b, 1e-10).unwrap();
        let mc = mc_box_mass(Cell::V1, &b, 2_000_000, 7);
        assert!(
            (mc.value - quad).abs() <= 3.0 * mc.std_error,
            "mc {} +- {} vs quad {}",
            mc.value,
            mc.std_error,
            quad
        );
    }

    #[test]
    fn mc_is_deterministic_for_a_fixed_seed() {
        let b = rbox((1, 4), (7, 20), (11, 20), (3, 5));
        let a = mc_box_mass(Cell::V2, &b, 10_000, 42);
        let c = mc_box_mass(Cell::V2, &b, 10_000, 42);
        assert_eq!(a.value, c.value);
        assert_eq!(a.std_error, c.std_error);
    }
}
