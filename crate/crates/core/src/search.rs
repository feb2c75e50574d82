//! Monte Carlo search over integer degree vectors.
//!
//! Draw `i` of a search uses its own ChaCha8 stream: the generator is seeded
//! with `ChaCha8Rng::seed_from_u64(seed)` and switched to stream `i`. A draw
//! therefore does not depend on how many draws precede it or on which thread
//! evaluates it. Inside a draw the numerator degrees are sampled first, then
//! the denominator degrees.
//!
//! Sampling `n` distinct integers from `[lo, hi]` runs a partial Fisher–Yates
//! shuffle over `lo..=hi`; the index for position `k` is `k + u` where `u` is
//! drawn uniformly from `[0, len - k)` by rejection on `next_u64`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::approx::{fit_polynomial, fit_rational, DegreeVector, FitReport, SampleSet};
use crate::error::{Error, Result};
use crate::solvers::DEFAULT_MAX_ITER;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n_terms_numerator: usize,
    /// `None` searches polynomials.
    pub n_terms_denominator: Option<usize>,
    pub degree_min: i64,
    pub degree_max: i64,
    pub n_samples: usize,
    pub rng_seed: u64,
    pub max_iter_two_sided: usize,
    pub record_trace: bool,
}

impl SearchConfig {
    pub fn polynomial(
        n_terms: usize,
        degree_min: i64,
        degree_max: i64,
        n_samples: usize,
        seed: u64,
    ) -> Self {
        SearchConfig {
            n_terms_numerator: n_terms,
            n_terms_denominator: None,
            degree_min,
            degree_max,
            n_samples,
            rng_seed: seed,
            max_iter_two_sided: DEFAULT_MAX_ITER,
            record_trace: false,
        }
    }

    pub fn rational(
        n_num: usize,
        n_den: usize,
        degree_min: i64,
        degree_max: i64,
        n_samples: usize,
        seed: u64,
    ) -> Self {
        SearchConfig {
            n_terms_denominator: Some(n_den),
            ..SearchConfig::polynomial(n_num, degree_min, degree_max, n_samples, seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidConfig("n_samples must be at least 1".into()));
        }
        if self.n_terms_numerator == 0 || self.n_terms_denominator == Some(0) {
            return Err(Error::InvalidConfig(
                "term counts must be at least 1".into(),
            ));
        }
        if self.max_iter_two_sided == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        let need = self
            .n_terms_numerator
            .max(self.n_terms_denominator.unwrap_or(0));
        check_range(self.degree_min, self.degree_max, need)
    }
}

/// One sampled degree class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDraw {
    pub numerator: DegreeVector,
    pub denominator: Option<DegreeVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub best: FitReport,
    pub best_degrees: DegreeDraw,
    /// Index of the winning draw.
    pub best_index: usize,
    pub samples_evaluated: usize,
    /// Draws whose fit failed, with the error.
    pub failures: Vec<(usize, Error)>,
    /// `(draw index, Δ*)` for every successful draw, when requested.
    pub error_trace: Option<Vec<(usize, f64)>>,
}

fn check_range(min: i64, max: i64, n: usize) -> Result<()> {
    let width = (max as i128) - (min as i128) + 1;
    if width < n as i128 {
        Err(Error::RangeTooNarrow { min, max, n })
    } else {
        Ok(())
    }
}

/// Uniform integer in `[0, bound)` by rejection; `bound > 0`.
fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
    loop {
        let v = rng.next_u64();
        if v <= zone {
            return v % bound;
        }
    }
}

/// `n` distinct integers drawn uniformly without replacement from
/// `[min, max]`, sorted ascending.
pub fn sample_degree_vector(
    min: i64,
    max: i64,
    n: usize,
    rng: &mut impl RngCore,
) -> Result<DegreeVector> {
    check_range(min, max, n)?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut pool: Vec<i64> = (min..=max).collect();
    let len = pool.len();
    for k in 0..n {
        let j = k + uniform_below(rng, (len - k) as u64) as usize;
        pool.swap(k, j);
    }
    DegreeVector::from_integers(&pool[..n])
}

fn draw_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// The degree class examined at step `index` of a search.
pub fn draw(config: &SearchConfig, index: usize) -> Result<DegreeDraw> {
    let mut rng = draw_rng(config.rng_seed, index);
    let numerator = sample_degree_vector(
        config.degree_min,
        config.degree_max,
        config.n_terms_numerator,
        &mut rng,
    )?;
    let denominator = config
        .n_terms_denominator
        .map(|l| sample_degree_vector(config.degree_min, config.degree_max, l, &mut rng))
        .transpose()?;
    Ok(DegreeDraw {
        numerator,
        denominator,
    })
}

fn fit_draw(samples: &SampleSet, d: &DegreeDraw, max_iter: usize) -> Result<FitReport> {
    match &d.denominator {
        None => fit_polynomial(samples, &d.numerator),
        Some(den) => fit_rational(samples, &d.numerator, den, max_iter),
    }
}

/// Fits every draw and keeps the one with the least `Δ*`, ties going to the
/// earliest draw. Evaluation runs on the current rayon pool.
pub fn evaluate_draws(
    samples: &SampleSet,
    draws: &[DegreeDraw],
    max_iter: usize,
    record_trace: bool,
) -> Result<SearchReport> {
    let sf = samples.semifield();
    let results: Vec<Result<FitReport>> = draws
        .par_iter()
        .map(|d| fit_draw(samples, d, max_iter))
        .collect();

    let mut best: Option<(usize, FitReport)> = None;
    let mut failures = Vec::new();
    let mut trace = record_trace.then(Vec::new);
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(fit) => {
                if let Some(t) = trace.as_mut() {
                    t.push((i, sf.to_real(fit.delta_star)));
                }
                let better = match &best {
                    None => true,
                    Some((_, b)) => fit.delta_star < b.delta_star,
                };
                if better {
                    best = Some((i, fit));
                }
            }
            Err(e) => failures.push((i, e)),
        }
    }

    let (best_index, best) = best.ok_or(Error::NoSuccessfulFit)?;
    Ok(SearchReport {
        best,
        best_degrees: draws[best_index].clone(),
        best_index,
        samples_evaluated: draws.len(),
        failures,
        error_trace: trace,
    })
}

/// Random search over degree classes as configured.
pub fn random_search(samples: &SampleSet, config: &SearchConfig) -> Result<SearchReport> {
    config.validate()?;
    let draws = (0..config.n_samples)
        .map(|i| draw(config, i))
        .collect::<Result<Vec<_>>>()?;
    evaluate_draws(
        samples,
        &draws,
        config.max_iter_two_sided,
        config.record_trace,
    )
}
