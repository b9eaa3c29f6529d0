use specialherm::blowup::{
    binomial_expansion_residual, blowup_chart_pullback, k_special_preserved, positivity_threshold, power_verdicts,
    product_special_check, BlowupInstance,
};
use specialherm::metrics::{ddbar, first_ddbar_failure, search_special_non_kahler, MetricForm, Verdict};
use specialherm::random::Gen;
use specialherm::{BiForm, Factor, HoloMap, Point, Poly, Scalar, Var};

fn flat(n: usize) -> BiForm {
    BiForm::standard_kahler(n)
}

#[test]
fn random_closed_omega_residual_vanishes() {
    for seed in 0..40 {
        let mut g = Gen::new(seed);
        let n = g.range(2, 4);
        let k = g.range(1, (n - 1).min(3));
        let b = BlowupInstance::new(g.real_11(n, 2), g.closed_real_11(n, 2), k).unwrap();
        assert!(binomial_expansion_residual(&b).unwrap().is_zero(), "seed {seed}");
    }
}

#[test]
fn special_base_on_c3_is_preserved() {
    let f = search_special_non_kahler(3, 2).unwrap();
    let omega = BiForm::from_factors(3, &[Factor::Dz(0), Factor::Dzb(0)], Poly::constant(Scalar::i()));
    for k in 1..=2 {
        let b = BlowupInstance::new(f.omega().clone(), omega.clone(), k).unwrap();
        assert_eq!(k_special_preserved(&b), Ok(Verdict::Holds));
    }
}

#[test]
fn first_failing_power_survives_at_n_to_the_zero() {
    // pluriclosed but not 2-special on C^3
    let mut found = None;
    for seed in 0..200 {
        let mut g = Gen::new(seed);
        let alpha = g.homogeneous(3, 1, 0, 2, 2);
        let f = specialherm::metrics::pluriclosed_perturbation(3, &alpha);
        if first_ddbar_failure(&f, 2).map(|(i, _)| i) == Some(2) {
            found = Some(f);
            break;
        }
    }
    let f = found.expect("a 1-special, non 2-special form");
    let mut g = Gen::new(9);
    let b = BlowupInstance::new(f.clone(), g.closed_real_11(3, 2), 2).unwrap();
    let verdicts = power_verdicts(&b, 2);
    assert!(verdicts[0].1.holds());
    let witness = verdicts[1].1.witness().expect("i = 2 fails").clone();
    assert_eq!(witness.n_coefficient(0), ddbar(&f.power(2)));
    assert!(witness.n_coefficient(1).is_zero() && witness.n_coefficient(2).is_zero());
}

#[test]
fn chart_pullback_commutes_with_ddbar() {
    for seed in 0..20 {
        let mut g = Gen::new(seed);
        let n = g.range(2, 4);
        let center = g.range(0, n - 2);
        let j = g.range(center, n - 1);
        let chart = HoloMap::blowup_chart(n, center, j).unwrap();
        let f = g.real_11(n, 2);
        for l in 1..=2 {
            let lhs = blowup_chart_pullback(&ddbar(&f.power(l)), &chart).unwrap();
            let rhs = ddbar(&blowup_chart_pullback(&f.power(l), &chart).unwrap());
            assert_eq!(lhs, rhs);
        }
        let pulled = blowup_chart_pullback(&f, &chart).unwrap();
        assert!(pulled.is_pure(1, 1) && pulled.is_real());
    }
}

#[test]
fn threshold_is_monotone_in_the_point_set() {
    let chart = HoloMap::blowup_chart(2, 0, 0).unwrap();
    let pulled = blowup_chart_pullback(&flat(2), &chart).unwrap();
    let mut g = Gen::new(4);
    let omega = flat(2) + g.ddbar_exact(2, 2).scale(&Scalar::from_ratio(1, 8));
    let mut points = vec![Point::origin(2)];
    let mut last = positivity_threshold(&pulled, &omega, &points, 50).unwrap();
    for _ in 0..6 {
        points.push(Point::new(vec![g.scalar(), g.scalar()]));
        let next = positivity_threshold(&pulled, &omega, &points, 50).unwrap();
        match (last, next) {
            (Some(a), Some(b)) => assert!(b >= a),
            (None, Some(_)) => panic!("threshold appeared after adding points"),
            _ => {}
        }
        last = next;
    }
}

#[test]
fn product_with_special_factor() {
    let fa = search_special_non_kahler(2, 2).unwrap();
    let ob = MetricForm::at_origin(flat(1)).unwrap();
    assert_eq!(product_special_check(&fa, &ob, 2), Ok(Verdict::Holds));

    let z = Poly::var(Var::Z(0));
    let bad = BiForm::from_factors(2, &[Factor::Dz(0), Factor::Dzb(0)], Poly::constant(Scalar::i()))
        + BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dzb(1)], (Poly::one() + &z * &z.conj()).scale(&Scalar::i()));
    let ob = MetricForm::at_origin(bad).unwrap();
    let fa = MetricForm::at_origin(flat(1)).unwrap();
    assert_eq!(product_special_check(&fa, &ob, 2), Err(specialherm::Error::NotClosed));
}
