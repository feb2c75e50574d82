//! Reference sample sets on the grid `x_i = (i - 1) / 10`, `i = 1..=21`.

use crate::approx::SampleSet;
use crate::semifield::Semifield;

pub const GRID_POINTS: usize = 21;

/// Convex test function `x² − 3x^{1/3} + 5/2`.
pub fn convex_fn(x: f64) -> f64 {
    x * x - 3.0 * x.cbrt() + 2.5
}

/// Nonconvex test function `3(x − 1)² sin(x) + 1/4`.
pub fn nonconvex_fn(x: f64) -> f64 {
    3.0 * (x - 1.0).powi(2) * x.sin() + 0.25
}

pub fn grid() -> Vec<f64> {
    (0..GRID_POINTS).map(|i| i as f64 / 10.0).collect()
}

fn sampled(f: fn(f64) -> f64) -> SampleSet {
    let xs = grid();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    SampleSet::from_reals(Semifield::MaxPlus, &xs, &ys).expect("finite samples")
}

/// Max-plus samples of [`convex_fn`].
pub fn convex_samples() -> SampleSet {
    sampled(convex_fn)
}

/// Max-plus samples of [`nonconvex_fn`].
pub fn nonconvex_samples() -> SampleSet {
    sampled(nonconvex_fn)
}
