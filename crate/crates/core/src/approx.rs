//! Tropical polynomial and rational approximation of sampled functions.
//!
//! A tropical Puiseux polynomial `P(x) = ⊕_j θ_j x^{p_j}` is fitted by solving
//! `Xθ = y` in the best approximate sense, where `X_ij = x_i^{p_j}`. A rational
//! function `P(x)/Q(x)` is fitted through the two-sided equation
//! `Xθ = YZσ`, with `Y = diag(y)` and `Z_ik = x_i^{q_k}`; the distance between
//! both sides coincides with the sample-wise error of `P/Q` against `y`.
//!
//! In max-plus a polynomial reads `max_j (p_j x + θ_j)`, a convex piecewise
//! linear function, and a rational function is a difference of two such.

use crate::error::{Error, Result};
use crate::linalg::{distance, TropicalMatrix, TropicalVector};
use crate::rational::Rational;
use crate::semifield::{Scalar, Semifield};
use crate::solvers::{self, Termination, EXACT_TOL};

/// Ordered samples `(x_i, y_i)` of an unknown function.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    sf: Semifield,
    points: Vec<(Scalar, Scalar)>,
}

impl SampleSet {
    pub fn new(sf: Semifield, points: Vec<(Scalar, Scalar)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        Ok(SampleSet { sf, points })
    }

    /// Samples from conventional reals, see [`Semifield::scalar`].
    pub fn from_reals(sf: Semifield, xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch {
                expected: xs.len(),
                found: ys.len(),
            });
        }
        let points = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| Ok((sf.scalar(x)?, sf.scalar(y)?)))
            .collect::<Result<_>>()?;
        SampleSet::new(sf, points)
    }

    pub fn semifield(&self) -> Semifield {
        self.sf
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(Scalar, Scalar)] {
        &self.points
    }

    pub fn xs(&self) -> impl Iterator<Item = Scalar> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn y_vector(&self) -> TropicalVector {
        TropicalVector::new(self.sf, self.points.iter().map(|p| p.1).collect())
            .expect("sample sets are non-empty")
    }
}

/// Strictly increasing exponents `p₁ < … < p_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeVector(Vec<Rational>);

impl DegreeVector {
    /// Sorts ascending; duplicates are an error.
    pub fn new(mut degrees: Vec<Rational>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Empty);
        }
        degrees.sort();
        if let Some(w) = degrees.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateDegree(w[0].to_string()));
        }
        Ok(DegreeVector(degrees))
    }

    pub fn from_integers(degrees: &[i64]) -> Result<Self> {
        DegreeVector::new(degrees.iter().copied().map(Rational::integer).collect())
    }

    /// Parses a comma-separated list such as `-14,-1,1/3,2`.
    pub fn parse_list(s: &str) -> Result<Self> {
        DegreeVector::new(s.split(',').map(str::parse).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialModel {
    degrees: DegreeVector,
    coefficients: TropicalVector,
}

impl PolynomialModel {
    pub fn new(degrees: DegreeVector, coefficients: TropicalVector) -> Result<Self> {
        if degrees.len() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: degrees.len(),
                found: coefficients.len(),
            });
        }
        if !coefficients.is_regular() {
            return Err(Error::NonRegularInput("polynomial coefficient is zero"));
        }
        Ok(PolynomialModel {
            degrees,
            coefficients,
        })
    }

    pub fn semifield(&self) -> Semifield {
        self.coefficients.semifield()
    }

    pub fn degrees(&self) -> &DegreeVector {
        &self.degrees
    }

    pub fn coefficients(&self) -> &TropicalVector {
        &self.coefficients
    }

    /// `P(x) = ⊕_j θ_j x^{p_j}`.
    pub fn eval(&self, x: Scalar) -> Result<Scalar> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let sf = self.semifield();
        self.degrees
            .as_slice()
            .iter()
            .zip(self.coefficients.elems())
            .try_fold(Scalar::Zero, |acc, (&p, &theta)| {
                Ok(sf.add(acc, sf.mul(theta, sf.pow(x, p)?)))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalModel {
    numerator: PolynomialModel,
    denominator: PolynomialModel,
}

impl RationalModel {
    pub fn new(numerator: PolynomialModel, denominator: PolynomialModel) -> Result<Self> {
        if numerator.semifield() != denominator.semifield() {
            return Err(Error::SemifieldMismatch);
        }
        Ok(RationalModel {
            numerator,
            denominator,
        })
    }

    pub fn semifield(&self) -> Semifield {
        self.numerator.semifield()
    }

    pub fn numerator(&self) -> &PolynomialModel {
        &self.numerator
    }

    pub fn denominator(&self) -> &PolynomialModel {
        &self.denominator
    }

    /// `P(x) ⊗ Q(x)⁻¹`.
    pub fn eval(&self, x: Scalar) -> Result<Scalar> {
        let p = self.numerator.eval(x)?;
        let q = self.denominator.eval(x)?;
        self.semifield().div(p, q)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Polynomial(PolynomialModel),
    Rational(RationalModel),
}

impl Model {
    pub fn semifield(&self) -> Semifield {
        match self {
            Model::Polynomial(p) => p.semifield(),
            Model::Rational(r) => r.semifield(),
        }
    }

    pub fn eval(&self, x: Scalar) -> Result<Scalar> {
        match self {
            Model::Polynomial(p) => p.eval(x),
            Model::Rational(r) => r.eval(x),
        }
    }

    pub fn as_polynomial(&self) -> Option<&PolynomialModel> {
        match self {
            Model::Polynomial(p) => Some(p),
            Model::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&RationalModel> {
        match self {
            Model::Rational(r) => Some(r),
            Model::Polynomial(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    /// Squared error `Δ*`.
    pub delta_star: Scalar,
    /// `√Δ*`.
    pub error: Scalar,
    pub model: Model,
    pub iterations: usize,
    pub termination: Termination,
}

pub fn eval_polynomial(model: &PolynomialModel, x: Scalar) -> Result<Scalar> {
    model.eval(x)
}

pub fn eval_rational(model: &RationalModel, x: Scalar) -> Result<Scalar> {
    model.eval(x)
}

/// The `M × N` matrix with entries `x_i^{p_j}`.
pub fn build_poly_matrix(samples: &SampleSet, degrees: &DegreeVector) -> Result<TropicalMatrix> {
    let sf = samples.semifield();
    let mut data = Vec::with_capacity(samples.len() * degrees.len());
    for (i, x) in samples.xs().enumerate() {
        if x.is_zero() {
            return Err(Error::ZeroAbscissa(i));
        }
        for &p in degrees.as_slice() {
            data.push(sf.pow(x, p)?);
        }
    }
    TropicalMatrix::new(sf, samples.len(), degrees.len(), data)
}

fn require_regular_outputs(samples: &SampleSet) -> Result<()> {
    if samples.points().iter().any(|p| p.1.is_zero()) {
        Err(Error::NonRegularInput("sample output is zero"))
    } else {
        Ok(())
    }
}

/// Best approximating polynomial with the given exponents.
pub fn fit_polynomial(samples: &SampleSet, degrees: &DegreeVector) -> Result<FitReport> {
    let x = build_poly_matrix(samples, degrees)?;
    require_regular_outputs(samples)?;
    let sol = solvers::one_sided_solve(&x, &samples.y_vector())?;
    let termination = if sol.exact {
        Termination::ExactSolution
    } else {
        Termination::OneShot
    };
    Ok(FitReport {
        delta_star: sol.delta,
        error: sol.error,
        model: Model::Polynomial(PolynomialModel::new(degrees.clone(), sol.x_star)?),
        iterations: 1,
        termination,
    })
}

/// Best approximating rational function `P/Q`, starting the alternating
/// iteration from the all-unit numerator coefficients.
pub fn fit_rational(
    samples: &SampleSet,
    p_degrees: &DegreeVector,
    q_degrees: &DegreeVector,
    max_iter: usize,
) -> Result<FitReport> {
    let x0 = TropicalVector::ones(samples.semifield(), p_degrees.len())?;
    fit_rational_from(samples, p_degrees, q_degrees, &x0, max_iter)
}

/// As [`fit_rational`] with an explicit starting vector for the numerator.
pub fn fit_rational_from(
    samples: &SampleSet,
    p_degrees: &DegreeVector,
    q_degrees: &DegreeVector,
    x0: &TropicalVector,
    max_iter: usize,
) -> Result<FitReport> {
    let sf = samples.semifield();
    let x = build_poly_matrix(samples, p_degrees)?;
    let z = build_poly_matrix(samples, q_degrees)?;
    require_regular_outputs(samples)?;
    let y = samples.y_vector();
    let yz = TropicalMatrix::diagonal(&y).mul_mat(&z)?;

    let sol = solvers::two_sided_solve(&x, &yz, x0, max_iter)?;
    let error = sf.sqrt(sol.delta_star);

    // The two-sided distance must agree with the sample-wise error of P/Q.
    let num = x.mul_vec(&sol.x_star)?;
    let den = z.mul_vec(&sol.y_star)?;
    let w = TropicalVector::new(
        sf,
        num.elems()
            .iter()
            .zip(den.elems())
            .map(|(&n, &d)| sf.div(n, d))
            .collect::<Result<_>>()?,
    )?;
    let residual = distance(&w, &y)?
        .finite()
        .ok_or(Error::NonRegularInput("fitted values"))?;
    if !sf.approx_eq(residual, error, EXACT_TOL) {
        return Err(Error::ResidualMismatch {
            distance: sf.to_real(residual),
            error: sf.to_real(error),
        });
    }

    let model = RationalModel::new(
        PolynomialModel::new(p_degrees.clone(), sol.x_star)?,
        PolynomialModel::new(q_degrees.clone(), sol.y_star)?,
    )?;
    Ok(FitReport {
        delta_star: sol.delta_star,
        error,
        model: Model::Rational(model),
        iterations: sol.iterations,
        termination: sol.termination,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MP: Semifield = Semifield::MaxPlus;

    fn samples(xs: &[f64], ys: &[f64]) -> SampleSet {
        SampleSet::from_reals(MP, xs, ys).unwrap()
    }

    fn poly(degrees: &[i64], coeffs: &[f64]) -> PolynomialModel {
        PolynomialModel::new(
            DegreeVector::from_integers(degrees).unwrap(),
            TropicalVector::from_reals(MP, coeffs).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn degree_vectors_sort_and_reject_duplicates() {
        let d = DegreeVector::from_integers(&[-3, -2, 1, 0, 2, 4]).unwrap();
        let ints: Vec<_> = d.as_slice().iter().map(|r| r.numer()).collect();
        assert_eq!(ints, vec![-3, -2, 0, 1, 2, 4]);
        assert_eq!(
            DegreeVector::from_integers(&[1, 2, 1]),
            Err(Error::DuplicateDegree("1".into()))
        );
        assert_eq!(
            DegreeVector::parse_list("2/4,1/2"),
            Err(Error::DuplicateDegree("1/2".into()))
        );
        assert!(DegreeVector::parse_list("1,a").is_err());
    }

    #[test]
    fn poly_matrix_examples() {
        let s = samples(&[0.0, 1.0, 2.0], &[0.0, 0.0, 0.0]);
        let x = build_poly_matrix(&s, &DegreeVector::from_integers(&[0, 1]).unwrap()).unwrap();
        let expected =
            TropicalMatrix::from_rows(MP, &[vec![0.0, 0.0], vec![0.0, 1.0], vec![0.0, 2.0]])
                .unwrap();
        assert_eq!(x, expected);

        let s = samples(&[1.0], &[0.0]);
        let x = build_poly_matrix(&s, &DegreeVector::from_integers(&[-14]).unwrap()).unwrap();
        assert_eq!(x.get(0, 0), Scalar::Finite(-14.0));

        let mt = SampleSet::from_reals(Semifield::MaxTimes, &[2.0, 3.0], &[1.0, 1.0]).unwrap();
        let x = build_poly_matrix(&mt, &DegreeVector::from_integers(&[2]).unwrap()).unwrap();
        assert_eq!(
            (x.get(0, 0), x.get(1, 0)),
            (Scalar::Finite(4.0), Scalar::Finite(9.0))
        );

        let mt = SampleSet::from_reals(Semifield::MaxTimes, &[0.0, 3.0], &[1.0, 1.0]).unwrap();
        assert_eq!(
            build_poly_matrix(&mt, &DegreeVector::from_integers(&[2]).unwrap()),
            Err(Error::ZeroAbscissa(0))
        );
    }

    #[test]
    fn eval_examples() {
        let identity = poly(&[1], &[0.0]);
        assert_eq!(
            identity.eval(Scalar::Finite(1.7)).unwrap(),
            Scalar::Finite(1.7)
        );
        assert_eq!(identity.eval(Scalar::Zero), Err(Error::ZeroArgument));

        let p = poly(&[-3, 0], &[1.0, 2.0]);
        let r = RationalModel::new(p.clone(), p.clone()).unwrap();
        for x in [-2.0, 0.0, 0.3, 5.0] {
            assert_eq!(r.eval(Scalar::Finite(x)).unwrap(), MP.one());
        }
        let unit = poly(&[0], &[0.0]);
        let r = RationalModel::new(p.clone(), unit).unwrap();
        assert_eq!(
            r.eval(Scalar::Finite(0.4)).unwrap(),
            p.eval(Scalar::Finite(0.4)).unwrap()
        );
    }

    #[test]
    fn polynomial_fit_recovers_exact_model() {
        let truth = poly(&[-2, 0, 1, 3], &[0.5, 1.0, -0.25, -2.0]);
        let xs: Vec<f64> = (0..15).map(|i| -0.7 + 0.1 * i as f64).collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|&x| MP.to_real(truth.eval(Scalar::Finite(x)).unwrap()))
            .collect();
        let s = samples(&xs, &ys);
        let fit = fit_polynomial(&s, truth.degrees()).unwrap();
        assert_eq!(fit.delta_star, MP.one());
        assert_eq!(fit.termination, Termination::ExactSolution);
        let model = fit.model.as_polynomial().unwrap();
        for (&x, &y) in xs.iter().zip(&ys) {
            let v = model.eval(Scalar::Finite(x)).unwrap().value().unwrap();
            assert!((v - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn rational_fit_recovers_exact_model() {
        let p = poly(&[-2, 1], &[0.5, 0.0]);
        let q = poly(&[-1, 0], &[0.0, 0.3]);
        let truth = RationalModel::new(p.clone(), q.clone()).unwrap();
        let xs: Vec<f64> = (0..12).map(|i| -1.0 + 0.2 * i as f64).collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|&x| MP.to_real(truth.eval(Scalar::Finite(x)).unwrap()))
            .collect();
        let fit = fit_rational(&samples(&xs, &ys), p.degrees(), q.degrees(), 1000).unwrap();
        assert_eq!(fit.termination, Termination::ExactSolution);
        assert!(MP.is_one(fit.delta_star, EXACT_TOL));
    }

    #[test]
    fn fitting_rejects_zero_outputs() {
        let s = samples(&[0.0, 1.0], &[1.0, f64::NEG_INFINITY]);
        let d = DegreeVector::from_integers(&[0, 1]).unwrap();
        assert!(matches!(
            fit_polynomial(&s, &d),
            Err(Error::NonRegularInput(_))
        ));
        assert!(matches!(
            fit_rational(&s, &d, &d, 10),
            Err(Error::NonRegularInput(_))
        ));
    }

    #[test]
    fn max_times_polynomial_fit() {
        // y = 2x on x > 0 is the single monomial 2 ⊗ x¹.
        let sf = Semifield::MaxTimes;
        let xs = [0.5, 1.0, 2.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        let s = SampleSet::from_reals(sf, &xs, &ys).unwrap();
        let fit = fit_polynomial(&s, &DegreeVector::from_integers(&[1]).unwrap()).unwrap();
        assert!(sf.is_one(fit.delta_star, 1e-12));
        let theta = fit.model.as_polynomial().unwrap().coefficients().get(0);
        assert!(sf.approx_eq(theta, Scalar::Finite(2.0), 1e-12));
    }

    proptest! {
        #[test]
        fn polynomial_is_convex(
            coeffs in proptest::collection::vec(-5.0..5.0f64, 4),
            x1 in -3.0..3.0f64,
            dx in 0.0..3.0f64,
            t in 0.0..1.0f64,
        ) {
            let p = poly(&[-2, 0, 1, 3], &coeffs);
            let x2 = x1 + dx;
            let e = |x: f64| p.eval(Scalar::Finite(x)).unwrap().value().unwrap();
            let mid = e(t * x1 + (1.0 - t) * x2);
            prop_assert!(mid <= t * e(x1) + (1.0 - t) * e(x2) + 1e-12);
        }

        #[test]
        fn rational_gauge_freedom(lambda in -10.0..10.0f64, x in -2.0..2.0f64) {
            let p = poly(&[-2, 1], &[0.5, 0.0]);
            let q = poly(&[-1, 0], &[0.0, 0.3]);
            let r = RationalModel::new(p.clone(), q.clone()).unwrap();
            let l = Scalar::Finite(lambda);
            let shifted = RationalModel::new(
                PolynomialModel::new(p.degrees().clone(), p.coefficients().scale(l)).unwrap(),
                PolynomialModel::new(q.degrees().clone(), q.coefficients().scale(l)).unwrap(),
            ).unwrap();
            let a = r.eval(Scalar::Finite(x)).unwrap().value().unwrap();
            let b = shifted.eval(Scalar::Finite(x)).unwrap().value().unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}
