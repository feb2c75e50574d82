//! Best approximate solutions of tropical linear vector equations.
//!
//! The one-sided equation `Ax = b` has the closed-form solution
//!
//! ```text
//! Δ  = (A (b⁻A)⁻)⁻ b
//! x* = √Δ (b⁻A)⁻
//! ```
//!
//! where `√Δ` is the minimum of `d(Ax, b)` over regular `x`. The two-sided
//! equation `Ax = By` is solved by alternating one-sided projections between
//! the column spans of `A` and `B`.

use crate::error::{Error, Result};
use crate::linalg::{TropicalMatrix, TropicalVector};
use crate::semifield::{Scalar, Semifield};

/// Tolerance for declaring `Δ = 𝟙` (absolute in max-plus, relative in max-times).
pub const EXACT_TOL: f64 = 1e-9;

/// Elementwise tolerance for recognising a repeated iterate.
pub const CYCLE_TOL: f64 = 1e-9;

/// Iterates whose `Δ` is within this tolerance of the best so far replace it,
/// so the triple reported is the one the iteration settles on.
const TIE_TOL: f64 = 1e-12;

pub const DEFAULT_MAX_ITER: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct OneSidedSolution {
    /// Squared error `Δ ≥ 𝟙`.
    pub delta: Scalar,
    /// `√Δ`, the minimum distance between `Ax` and `b`.
    pub error: Scalar,
    pub x_star: TropicalVector,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    ExactSolution,
    CycleDetected,
    IterationCap,
    /// Closed-form solution without iteration (polynomial fits).
    OneShot,
}

impl Termination {
    pub fn name(&self) -> &'static str {
        match self {
            Termination::ExactSolution => "exact-solution",
            Termination::CycleDetected => "cycle-detected",
            Termination::IterationCap => "iteration-cap",
            Termination::OneShot => "one-shot",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedSolution {
    pub delta_star: Scalar,
    pub x_star: TropicalVector,
    pub y_star: TropicalVector,
    /// Number of `Δ` evaluations (half-steps) performed.
    pub iterations: usize,
    pub termination: Termination,
    /// `Δ₀, Δ₁, …` in the order computed.
    pub deltas: Vec<Scalar>,
}

/// Maximal subsolution `(b⁻A)⁻` of `Ax ≤ b`; requires regular `A` and `b`.
fn maximal_subsolution(a: &TropicalMatrix, b: &TropicalVector) -> Result<TropicalVector> {
    a.row_mul(&b.conjugate()?)?.conjugate()
}

/// `Δ` and `x*` without the regularity checks; callers guarantee them.
fn project(a: &TropicalMatrix, b: &TropicalVector) -> Result<(Scalar, TropicalVector)> {
    let sf = a.semifield();
    let t = maximal_subsolution(a, b)?;
    let delta = a.mul_vec(&t)?.conjugate()?.dot(b)?;
    // Δ ≥ 𝟙 holds in exact arithmetic since A(b⁻A)⁻ ≤ b.
    let delta = sf.add(delta, sf.one());
    Ok((delta, t.scale(sf.sqrt(delta))))
}

fn require_regular_matrix(a: &TropicalMatrix, what: &'static str) -> Result<()> {
    if a.is_regular() {
        Ok(())
    } else {
        Err(Error::NonRegularInput(what))
    }
}

fn require_regular_vector(v: &TropicalVector, what: &'static str) -> Result<()> {
    if v.is_regular() {
        Ok(())
    } else {
        Err(Error::NonRegularInput(what))
    }
}

fn require_same(a: Semifield, b: Semifield) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SemifieldMismatch)
    }
}

/// Best approximate solution of `Ax = b` for regular `A` and `b`.
///
/// When `Δ = 𝟙` the system is consistent and `x*` is its maximal solution.
pub fn one_sided_solve(a: &TropicalMatrix, b: &TropicalVector) -> Result<OneSidedSolution> {
    require_same(a.semifield(), b.semifield())?;
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    require_regular_matrix(a, "matrix contains zero")?;
    require_regular_vector(b, "right-hand side contains zero")?;

    let sf = a.semifield();
    let (delta, x_scaled) = project(a, b)?;
    let exact = sf.is_one(delta, EXACT_TOL);
    let x_star = if exact {
        maximal_subsolution(a, b)?
    } else {
        x_scaled
    };
    Ok(OneSidedSolution {
        delta,
        error: sf.sqrt(delta),
        x_star,
        exact,
    })
}

fn seen_before(history: &[TropicalVector], v: &TropicalVector) -> bool {
    history.iter().any(|h| {
        h.elems()
            .iter()
            .zip(v.elems())
            .all(|(&p, &q)| match (p, q) {
                (Scalar::Finite(p), Scalar::Finite(q)) => (p - q).abs() <= CYCLE_TOL,
                (p, q) => p == q,
            })
    })
}

struct Best {
    delta: Scalar,
    x: TropicalVector,
    y: TropicalVector,
}

impl Best {
    fn offer(&mut self, sf: Semifield, delta: Scalar, x: &TropicalVector, y: &TropicalVector) {
        if delta <= self.delta || sf.approx_eq(delta, self.delta, TIE_TOL) {
            self.delta = delta;
            self.x = x.clone();
            self.y = y.clone();
        }
    }
}

/// Best approximate solution of `Ax = By` by alternating projections.
///
/// Starting from `x₀`, even steps project `Ax_i` onto the span of `B` and odd
/// steps project `By_i` back onto the span of `A`. The iteration stops when
/// `Δ_i = 𝟙`, when an `x` or `y` iterate repeats, or after `max_iter`
/// evaluations of `Δ`. The minimizing triple is returned; among equal `Δ`
/// the latest one wins.
pub fn two_sided_solve(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    x0: &TropicalVector,
    max_iter: usize,
) -> Result<TwoSidedSolution> {
    require_same(a.semifield(), b.semifield())?;
    require_same(a.semifield(), x0.semifield())?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    if a.cols() != x0.len() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: x0.len(),
        });
    }
    if max_iter == 0 {
        return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
    }
    require_regular_matrix(a, "left matrix contains zero")?;
    require_regular_matrix(b, "right matrix contains zero")?;
    require_regular_vector(x0, "initial vector contains zero")?;

    let sf = a.semifield();
    let mut x = x0.clone();
    let mut xs = vec![x.clone()];
    let mut ys: Vec<TropicalVector> = Vec::new();
    let mut deltas = Vec::new();
    let mut best: Option<Best> = None;

    let offer =
        |best: &mut Option<Best>, delta: Scalar, x: &TropicalVector, y: &TropicalVector| match best
        {
            Some(b) => b.offer(sf, delta, x, y),
            None => {
                *best = Some(Best {
                    delta,
                    x: x.clone(),
                    y: y.clone(),
                })
            }
        };

    let termination = loop {
        // Project A x onto the span of B.
        let (delta, y) = project(b, &a.mul_vec(&x)?)?;
        deltas.push(delta);
        offer(&mut best, delta, &x, &y);
        if sf.is_one(delta, EXACT_TOL) {
            break Termination::ExactSolution;
        }
        if seen_before(&ys, &y) {
            break Termination::CycleDetected;
        }
        if deltas.len() >= max_iter {
            break Termination::IterationCap;
        }
        ys.push(y.clone());

        // Project B y back onto the span of A.
        let (delta, next_x) = project(a, &b.mul_vec(&y)?)?;
        deltas.push(delta);
        offer(&mut best, delta, &next_x, &y);
        x = next_x;
        if sf.is_one(delta, EXACT_TOL) {
            break Termination::ExactSolution;
        }
        if seen_before(&xs, &x) {
            break Termination::CycleDetected;
        }
        if deltas.len() >= max_iter {
            break Termination::IterationCap;
        }
        xs.push(x.clone());
    };

    let best = best.expect("at least one step is always taken");
    Ok(TwoSidedSolution {
        delta_star: best.delta,
        x_star: best.x,
        y_star: best.y,
        iterations: deltas.len(),
        termination,
        deltas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::distance;

    const MP: Semifield = Semifield::MaxPlus;

    fn m(rows: &[Vec<f64>]) -> TropicalMatrix {
        TropicalMatrix::from_rows(MP, rows).unwrap()
    }

    fn v(vals: &[f64]) -> TropicalVector {
        TropicalVector::from_reals(MP, vals).unwrap()
    }

    #[test]
    fn one_sided_hand_example() {
        // A = [[0, 0], [0, 1], [0, 2]], b = (0, 2, 1)
        // (b⁻A)⁻ = (min(0, 2, 1), min(0, 1, -1)) = (0, -1)
        // A(b⁻A)⁻ = (0, 0, 1), Δ = max(0, 2, 0) = 2, x* = (1, 0)
        let a = m(&[vec![0.0, 0.0], vec![0.0, 1.0], vec![0.0, 2.0]]);
        let sol = one_sided_solve(&a, &v(&[0.0, 2.0, 1.0])).unwrap();
        assert_eq!(sol.delta, Scalar::Finite(2.0));
        assert_eq!(sol.error, Scalar::Finite(1.0));
        assert_eq!(sol.x_star, v(&[1.0, 0.0]));
        assert!(!sol.exact);
        let ax = a.mul_vec(&sol.x_star).unwrap();
        assert_eq!(
            distance(&ax, &v(&[0.0, 2.0, 1.0])).unwrap().finite(),
            Some(Scalar::Finite(1.0))
        );
    }

    #[test]
    fn one_sided_consistent_system() {
        let a = m(&[vec![1.0, -2.0], vec![0.5, 3.0], vec![-1.0, 0.0]]);
        let b = a.mul_vec(&v(&[0.25, -0.75])).unwrap();
        let sol = one_sided_solve(&a, &b).unwrap();
        assert!(sol.exact);
        assert_eq!(sol.delta, MP.one());
        assert!(a.mul_vec(&sol.x_star).unwrap().approx_eq(&b, 1e-12));
    }

    #[test]
    fn one_sided_errors() {
        let a = m(&[vec![0.0, f64::NEG_INFINITY]]);
        assert!(matches!(
            one_sided_solve(&a, &v(&[1.0])),
            Err(Error::NonRegularInput(_))
        ));
        let a = m(&[vec![0.0]]);
        assert!(matches!(
            one_sided_solve(&a, &v(&[f64::NEG_INFINITY])),
            Err(Error::NonRegularInput(_))
        ));
        assert_eq!(
            one_sided_solve(&a, &v(&[1.0, 2.0])),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn max_times_one_sided() {
        let sf = Semifield::MaxTimes;
        let a = TropicalMatrix::from_rows(sf, &[vec![1.0], vec![1.0]]).unwrap();
        let b = TropicalVector::from_reals(sf, &[1.0, 4.0]).unwrap();
        // x ranges over one scalar; best is x = 2 with error ratio 2 and Δ = 4.
        let sol = one_sided_solve(&a, &b).unwrap();
        assert_eq!(sol.delta, Scalar::Finite(4.0));
        assert_eq!(sol.error, Scalar::Finite(2.0));
        assert_eq!(sol.x_star.to_reals(), vec![2.0]);
    }

    #[test]
    fn two_sided_identical_spans() {
        let a = m(&[vec![0.0, 1.0], vec![2.0, -1.0], vec![0.5, 0.5]]);
        let x0 = v(&[0.3, -0.2]);
        let sol = two_sided_solve(&a, &a, &x0, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(sol.termination, Termination::ExactSolution);
        assert_eq!(sol.iterations, 1);
        assert!(MP.is_one(sol.delta_star, EXACT_TOL));
        let lhs = a.mul_vec(&sol.x_star).unwrap();
        let rhs = a.mul_vec(&sol.y_star).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-9));
    }

    #[test]
    fn two_sided_disjoint_spans_cycle() {
        // span A = {(t, t)}, span B = {(s, s + 3)}: distance 3/2, Δ = 3.
        let a = m(&[vec![0.0], vec![0.0]]);
        let b = m(&[vec![0.0], vec![3.0]]);
        let sol = two_sided_solve(&a, &b, &v(&[0.0]), DEFAULT_MAX_ITER).unwrap();
        assert_eq!(sol.delta_star, Scalar::Finite(3.0));
        assert_eq!(sol.termination, Termination::CycleDetected);
        let d = distance(
            &a.mul_vec(&sol.x_star).unwrap(),
            &b.mul_vec(&sol.y_star).unwrap(),
        )
        .unwrap()
        .finite()
        .unwrap();
        assert_eq!(d, Scalar::Finite(1.5));
    }

    #[test]
    fn two_sided_iteration_cap() {
        let a = m(&[vec![0.0], vec![0.0]]);
        let b = m(&[vec![0.0], vec![3.0]]);
        let sol = two_sided_solve(&a, &b, &v(&[0.0]), 1).unwrap();
        assert_eq!(sol.termination, Termination::IterationCap);
        assert_eq!(sol.iterations, 1);
        assert!(two_sided_solve(&a, &b, &v(&[0.0]), 0).is_err());
    }

    #[test]
    fn two_sided_errors() {
        let a = m(&[vec![0.0], vec![0.0]]);
        let b = m(&[vec![0.0], vec![f64::NEG_INFINITY]]);
        assert!(matches!(
            two_sided_solve(&a, &b, &v(&[0.0]), 10),
            Err(Error::NonRegularInput(_))
        ));
        let b = m(&[vec![0.0]]);
        assert!(matches!(
            two_sided_solve(&a, &b, &v(&[0.0]), 10),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            two_sided_solve(&a, &a, &v(&[0.0, 1.0]), 10),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
