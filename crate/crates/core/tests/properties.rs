use proptest::prelude::*;

use specialherm::random::Gen;
use specialherm::{BiForm, Poly, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, b, c, d)| Scalar::from_parts((a, b), (c, d)))
}

fn form_pair(seed: u64) -> (BiForm, BiForm, BiForm) {
    let mut g = Gen::new(seed);
    let n = g.range(1, 3);
    (g.form(n, 3, 2), g.form(n, 3, 2), g.form(n, 3, 2))
}

fn graded_sign(a: &BiForm, b: &BiForm) -> bool {
    let da = a.terms().next().map_or(0, |(basis, _)| basis.degree());
    let db = b.terms().next().map_or(0, |(basis, _)| basis.degree());
    da * db % 2 == 1
}

proptest! {
    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Scalar::from_int(1));
        }
    }

    #[test]
    fn poly_ring_and_derivations(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (p, q) = (g.poly(2, 3, 4), g.poly(2, 3, 4));
        prop_assert_eq!(p.mul_ref(&q), q.mul_ref(&p));
        let v = specialherm::Var::Z(0);
        prop_assert_eq!(p.mul_ref(&q).derivative(v), p.derivative(v).mul_ref(&q) + p.mul_ref(&q.derivative(v)));
        prop_assert_eq!(p.conj().conj(), p.clone());
        prop_assert!((p.clone() - p.clone()).is_zero());
        prop_assert_eq!(p.mul_ref(&Poly::one()), p);
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>()) {
        let (a, b, c) = form_pair(seed);
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let n = g.range(1, 3);
        let (p1, q1, p2, q2) = (g.range(0, n), g.range(0, n), g.range(0, n), g.range(0, n));
        let a = g.homogeneous(n, p1, q1, 2, 2);
        let b = g.homogeneous(n, p2, q2, 2, 2);
        let ba = b.wedge(&a);
        let expected = if graded_sign(&a, &b) { -ba } else { ba };
        prop_assert_eq!(a.wedge(&b), expected);
    }

    #[test]
    fn dolbeault_complex(seed in any::<u64>()) {
        let (a, _, _) = form_pair(seed);
        prop_assert!(a.d().d().is_zero());
        prop_assert!(a.del().del().is_zero());
        prop_assert!(a.delbar().delbar().is_zero());
        prop_assert!((a.del().delbar() + a.delbar().del()).is_zero());
        prop_assert_eq!(a.d(), a.del() + a.delbar());
    }

    #[test]
    fn conjugation_is_an_involution_swapping_bidegrees(seed in any::<u64>()) {
        let (a, _, _) = form_pair(seed);
        prop_assert_eq!(a.conj().conj(), a.clone());
        let mut swapped: Vec<_> = a.bidegrees().into_iter().map(|(p, q)| (q, p)).collect();
        swapped.sort();
        let mut got = a.conj().bidegrees();
        got.sort();
        prop_assert_eq!(got, swapped);
    }

    #[test]
    fn real_forms_are_real(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let w = g.real_11(3, 2);
        prop_assert!(w.is_real());
        prop_assert!(g.closed_real_11(3, 2).d().is_zero());
    }
}
