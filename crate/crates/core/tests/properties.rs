use proptest::prelude::*;
use tropfit::{
    distance, fit_polynomial, one_sided_solve, two_sided_solve, DegreeVector, SampleSet, Scalar,
    Semifield, Termination, TropicalMatrix, TropicalVector,
};

const MP: Semifield = Semifield::MaxPlus;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-5.0..5.0f64, cols), rows)
}

fn system() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (1usize..6, 1usize..4)
        .prop_flat_map(|(m, n)| (matrix(m, n), prop::collection::vec(-5.0..5.0f64, m)))
}

fn chebyshev(a: &TropicalMatrix, x: &TropicalVector, b: &TropicalVector) -> f64 {
    let ax = a.mul_vec(x).unwrap();
    MP.to_real(distance(&ax, b).unwrap().finite().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn one_sided_solution_is_not_beaten_by_perturbations(
        (rows, b) in system(),
        seeds in prop::collection::vec(prop::collection::vec(-3.0..3.0f64, 3), 20),
    ) {
        let a = TropicalMatrix::from_rows(MP, &rows).unwrap();
        let bv = TropicalVector::from_reals(MP, &b).unwrap();
        let sol = one_sided_solve(&a, &bv).unwrap();
        let err = MP.to_real(sol.error);
        prop_assert!((chebyshev(&a, &sol.x_star, &bv) - err).abs() < 1e-9);
        for p in seeds {
            let x: Vec<f64> = sol.x_star.to_reals().iter().zip(&p).map(|(x, d)| x + d).collect();
            let x = TropicalVector::from_reals(MP, &x).unwrap();
            prop_assert!(chebyshev(&a, &x, &bv) >= err - 1e-9);
        }
    }

    #[test]
    fn one_sided_solution_follows_scaling_of_b((rows, b) in system(), lambda in -10.0..10.0f64) {
        let a = TropicalMatrix::from_rows(MP, &rows).unwrap();
        let bv = TropicalVector::from_reals(MP, &b).unwrap();
        let s1 = one_sided_solve(&a, &bv).unwrap();
        let s2 = one_sided_solve(&a, &bv.scale(Scalar::Finite(lambda))).unwrap();
        prop_assert!(MP.approx_eq(s1.delta, s2.delta, 1e-9));
        let shifted = s1.x_star.scale(Scalar::Finite(lambda));
        prop_assert!(shifted.approx_eq(&s2.x_star, 1e-9));
    }

    #[test]
    fn max_times_solution_is_the_exponential_of_max_plus((rows, b) in system()) {
        let a = TropicalMatrix::from_rows(MP, &rows).unwrap();
        let bv = TropicalVector::from_reals(MP, &b).unwrap();
        let exp_rows: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|v| v.exp()).collect()).collect();
        let exp_b: Vec<f64> = b.iter().map(|v| v.exp()).collect();
        let mt = one_sided_solve(
            &TropicalMatrix::from_rows(Semifield::MaxTimes, &exp_rows).unwrap(),
            &TropicalVector::from_reals(Semifield::MaxTimes, &exp_b).unwrap(),
        )
        .unwrap();
        let mp = one_sided_solve(&a, &bv).unwrap();
        prop_assert!((Semifield::MaxTimes.to_real(mt.delta).ln() - MP.to_real(mp.delta)).abs() < 1e-9);
        for (t, p) in mt.x_star.to_reals().iter().zip(mp.x_star.to_reals()) {
            prop_assert!((t.ln() - p).abs() < 1e-9);
        }
    }

    #[test]
    fn polynomial_fit_is_not_beaten_by_perturbations(
        ys in prop::collection::vec(-3.0..3.0f64, 8),
        perturbations in prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 3), 30),
    ) {
        let xs: Vec<f64> = (0..8).map(|i| i as f64 * 0.25).collect();
        let samples = SampleSet::from_reals(MP, &xs, &ys).unwrap();
        let degs = DegreeVector::from_integers(&[-1, 1, 2]).unwrap();
        let fit = fit_polynomial(&samples, &degs).unwrap();
        let model = fit.model.as_polynomial().unwrap();
        let err = MP.to_real(fit.error);
        for p in perturbations {
            let theta: Vec<f64> = model.coefficients().to_reals().iter().zip(&p).map(|(t, d)| t + d).collect();
            let other = tropfit::PolynomialModel::new(
                degs.clone(),
                TropicalVector::from_reals(MP, &theta).unwrap(),
            )
            .unwrap();
            let res = samples
                .points()
                .iter()
                .map(|&(x, y)| (MP.to_real(other.eval(x).unwrap()) - MP.to_real(y)).abs())
                .fold(0.0, f64::max);
            prop_assert!(res >= err - 1e-9);
        }
    }

    #[test]
    fn two_sided_sequence_is_monotone_and_exact_stops_are_exact(
        (a, b, x0) in (1usize..6, 1usize..4, 1usize..4).prop_flat_map(|(m, n, l)| {
            (matrix(m, n), matrix(m, l), prop::collection::vec(-3.0..3.0f64, n))
        }),
    ) {
        let am = TropicalMatrix::from_rows(MP, &a).unwrap();
        let bm = TropicalMatrix::from_rows(MP, &b).unwrap();
        let x0 = TropicalVector::from_reals(MP, &x0).unwrap();
        let sol = two_sided_solve(&am, &bm, &x0, 200).unwrap();
        let d: Vec<f64> = sol.deltas.iter().map(|&s| MP.to_real(s)).collect();
        prop_assert!(d.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{d:?}");
        prop_assert!(sol.iterations <= 200);
        prop_assert_eq!(sol.iterations, d.len());
        let best = d.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert!((MP.to_real(sol.delta_star) - best).abs() < 1e-12);
        if sol.termination == Termination::ExactSolution {
            let ax = am.mul_vec(&sol.x_star).unwrap().to_reals();
            let by = bm.mul_vec(&sol.y_star).unwrap().to_reals();
            let gap = ax.iter().zip(&by).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
            prop_assert!(gap <= 1e-9, "{gap}");
        }
    }
}
