use specialherm::random::Gen;
use specialherm::vecform::{bracket, conjugation_residual, contract, exp_contract, lie_derivative_01, lie_derivative_10};
use specialherm::{Scalar, VecForm};

fn minus(phi: &VecForm) -> VecForm {
    -phi.clone()
}

#[test]
fn full_identity_holds_for_arbitrary_phi() {
    for seed in 0..60u64 {
        let mut g = Gen::new(seed);
        let n = g.range(1, 3);
        let phi = g.vecform(n, 1, 2);
        let a = g.form(n, 3, 2);
        assert!(conjugation_residual(&phi, &a).is_zero(), "seed {seed}");
    }
}

#[test]
fn bidegree_parts() {
    for seed in 0..60u64 {
        let mut g = Gen::new(seed);
        let n = g.range(1, 3);
        let phi = g.vecform(n, 1, 2);
        let a = g.form(n, 3, 2);
        let half = bracket(&phi, &phi).scale(&Scalar::from_ratio(1, 2));

        let delbar_side = exp_contract(&minus(&phi), &exp_contract(&phi, &a).delbar());
        assert_eq!(delbar_side, a.delbar() - lie_derivative_01(&phi, &a), "seed {seed}");

        let del_side = exp_contract(&minus(&phi), &exp_contract(&phi, &a).del());
        assert_eq!(del_side, a.del() - lie_derivative_10(&phi, &a) - contract(&half, &a), "seed {seed}");

        let full = exp_contract(&minus(&phi), &exp_contract(&phi, &a).d());
        let alt = a.d() - lie_derivative_10(&phi, &a) + contract(&(phi.delbar() - half), &a);
        assert_eq!(full, alt, "seed {seed}");
    }
}

#[test]
fn same_sign_conjugation_of_delbar_is_not_the_identity() {
    let mut failures = 0;
    for seed in 0..60u64 {
        let mut g = Gen::new(seed);
        let n = g.range(1, 3);
        let phi = g.vecform(n, 1, 2);
        let a = g.form(n, 3, 2);
        let lhs = exp_contract(&phi, &exp_contract(&phi, &a).delbar());
        if lhs != a.delbar() - lie_derivative_01(&phi, &a) {
            failures += 1;
        }
    }
    assert!(failures > 0);
}
