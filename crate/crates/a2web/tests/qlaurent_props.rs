use a2web::qlaurent::{qpow, qr_arith, series_truncate, FieldOp, QError};
use a2web::{QLaurent, QRational};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-24i32..24, -5i64..6), 0..6).prop_map(QLaurent::from_terms)
}

/// Narrow exponents so the evaluation below fits in i128.
fn narrow() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-8i32..8, -5i64..6), 0..6).prop_map(QLaurent::from_terms)
}

fn nonzero() -> impl Strategy<Value = QLaurent> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = QRational> {
    (laurent(), nonzero()).prop_map(|(n, d)| QRational::new(n, d).unwrap())
}

/// Value at q = 2^6 (so v = 2), exact as a rational number of i128s.
fn eval(p: &QLaurent) -> (i128, i128) {
    let lo = p.min_exp().unwrap_or(0).min(0);
    let mut num = 0i128;
    for &(e, c) in p.terms() {
        num += c as i128 * (1i128 << (e - lo));
    }
    (num, 1i128 << (-lo))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &QLaurent::one(), a.clone());
        prop_assert_eq!(&a + &QLaurent::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn terms_are_canonical(a in laurent()) {
        let t = a.terms();
        prop_assert!(t.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(t.iter().all(|x| x.1 != 0));
        prop_assert_eq!(QLaurent::from_terms(t.iter().copied()), a.clone());
    }

    #[test]
    fn multiplication_matches_evaluation(a in narrow(), b in narrow()) {
        let (an, ad) = eval(&a);
        let (bn, bd) = eval(&b);
        let (pn, pd) = eval(&(&a * &b));
        prop_assert_eq!(an * bn * pd, pn * ad * bd);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in nonzero()) {
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b), Some(a));
    }

    #[test]
    fn field_axioms(x in rational(), y in rational(), z in rational()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !y.is_zero() {
            let q = x.checked_div(&y).unwrap();
            prop_assert_eq!(&q * &y, x.clone());
            prop_assert_eq!(qr_arith(FieldOp::Div, &x, &y).unwrap(), q);
        } else {
            prop_assert_eq!(x.checked_div(&y), Err(QError::DivisionByZero));
        }
    }

    #[test]
    fn representation_is_unique(n in laurent(), d in nonzero(), f in nonzero()) {
        let a = QRational::new(n.clone(), d.clone()).unwrap();
        let b = QRational::new(&n * &f, &d * &f).unwrap();
        prop_assert_eq!(a.num(), b.num());
        prop_assert_eq!(a.den(), b.den());
    }

    #[test]
    fn laurent_round_trip(p in laurent()) {
        prop_assert_eq!(QRational::from(p.clone()).to_laurent(), Some(p));
    }

    #[test]
    fn series_of_product(a in prop::collection::vec(-4i64..5, 1..5), k in 1usize..4, order in 0i32..12) {
        // p / (1 - q^k) multiplied back by (1 - q^k) agrees up to the order
        let p = QLaurent::from_q_coeffs(&a);
        let den = &QLaurent::one() - &qpow(6 * k as i32);
        let r = QRational::new(p.clone(), den.clone()).unwrap();
        let s = series_truncate(&r, order).unwrap();
        prop_assert_eq!((&s * &den).truncate_above(6 * order), p.truncate_above(6 * order));
    }
}
