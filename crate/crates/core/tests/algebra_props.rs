use conflat_core::clifford::{norm, vector_inverse};
use conflat_core::moebius::{apply_moebius, VahlenMatrix};
use conflat_core::Multivector;
use proptest::prelude::*;

fn mv(n: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-1.0f64..1.0, 1 << n).prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, n).prop_filter("away from 0", |v| norm(v) > 0.1)
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (2usize..=5).prop_flat_map(|n| (mv(n), mv(n), mv(n)))
}

proptest! {
    #[test]
    fn associativity((a, b, c) in triple()) {
        let l = (&a * &b) * &c;
        let r = &a * (&b * &c);
        prop_assert!(l.dist(&r) <= 1e-12 * (1.0 + l.norm()));
    }

    #[test]
    fn reversion_reverses_products((a, b, _) in triple()) {
        let l = (&a * &b).reverse();
        let r = b.reverse() * a.reverse();
        prop_assert!(l.dist(&r) <= 1e-12 * (1.0 + l.norm()));
    }

    #[test]
    fn vectors_square_to_minus_norm(x in (2usize..=6).prop_flat_map(vector)) {
        let v = Multivector::from_vector(&x);
        let sq = &v * &v;
        let want = Multivector::scalar(x.len(), -norm(&x).powi(2));
        prop_assert!(sq.dist(&want) <= 1e-12 * want.norm());
    }

    #[test]
    fn vector_inverse_is_two_sided(x in (2usize..=6).prop_flat_map(vector)) {
        let v = Multivector::from_vector(&x);
        let vi = Multivector::from_vector(&vector_inverse(&x).unwrap());
        let one = Multivector::one(x.len());
        prop_assert!((&v * &vi).dist(&one) <= 1e-14);
        prop_assert!((&vi * &v).dist(&one) <= 1e-14);
    }

    #[test]
    fn general_inverse_of_paravector(s in -2.0f64..2.0, x in vector(4)) {
        let p = Multivector::scalar(4, s) + Multivector::from_vector(&x);
        let pi = p.inverse().unwrap();
        prop_assert!((&p * &pi).dist(&Multivector::one(4)) <= 1e-12);
    }

    #[test]
    fn moebius_inverse_round_trips(t in vector(3), x in vector(3), lambda in 0.5f64..3.0) {
        for m in [VahlenMatrix::translation(&t), VahlenMatrix::dilation(3, lambda), VahlenMatrix::kelvin(3)] {
            let y = apply_moebius(&m, &x).unwrap();
            prop_assume!(norm(&y) < 1e6);
            let back = apply_moebius(&m.inverse().unwrap(), &y).unwrap();
            let err: f64 = back.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            prop_assert!(err <= 1e-10 * (1.0 + norm(&x)), "{:?} -> {:?}", x, back);
        }
    }
}
