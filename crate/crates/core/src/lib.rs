//! Tropical Puiseux polynomial and rational approximation.
//!
//! Samples of a function over an idempotent semifield (max-plus or max-times)
//! are fitted by reducing the fit to best approximate solutions of tropical
//! linear vector equations: `Xθ = y` for polynomials and `Xθ = YZσ` for
//! rational functions. In max-plus this is discrete Chebyshev approximation by
//! piecewise linear functions.

pub mod approx;
pub mod cli;
pub mod datasets;
pub mod error;
pub mod linalg;
pub mod rational;
pub mod search;
pub mod semifield;
pub mod solvers;

pub use approx::{
    build_poly_matrix, eval_polynomial, eval_rational, fit_polynomial, fit_rational,
    fit_rational_from, DegreeVector, FitReport, Model, PolynomialModel, RationalModel, SampleSet,
};
pub use error::{Error, Result};
pub use linalg::{distance, Distance, TropicalMatrix, TropicalVector};
pub use rational::Rational;
pub use search::{random_search, sample_degree_vector, SearchConfig, SearchReport};
pub use semifield::{Scalar, Semifield};
pub use solvers::{
    one_sided_solve, two_sided_solve, OneSidedSolution, Termination, TwoSidedSolution,
};
