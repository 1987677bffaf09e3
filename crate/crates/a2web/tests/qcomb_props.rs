use a2web::qcomb::{
    pochhammer_ratio, q_binom, q_multinom, q_pochhammer, quantum_binom, quantum_factorial, quantum_int, QCombCache,
};
use a2web::qlaurent::qpow;
use a2web::QLaurent;
use proptest::prelude::*;

fn sum_coeffs(p: &QLaurent) -> i64 {
    p.terms().iter().map(|t| t.1).sum()
}

/// Number of inversions of each 0/1 word with k ones among n letters,
/// collected as a polynomial: the Gaussian binomial by a different route.
fn inversion_polynomial(n: usize, k: usize) -> QLaurent {
    let mut out = QLaurent::zero();
    for w in 0u32..(1 << n) {
        if w.count_ones() as usize != k {
            continue;
        }
        let bits: Vec<u32> = (0..n).map(|i| (w >> i) & 1).collect();
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[i] == 1 && bits[j] == 0 {
                    inv += 1;
                }
            }
        }
        out = &out + &qpow(6 * inv);
    }
    out
}

#[test]
fn spec_examples() {
    assert!(quantum_int(0).unwrap().is_zero());
    assert_eq!(quantum_binom(2, 1).unwrap(), &qpow(3) + &qpow(-3));
    assert!(q_binom(3, 5).unwrap().is_zero());
    assert_eq!(q_binom(4, 2).unwrap(), QLaurent::from_q_coeffs(&[1, 1, 2, 1, 1]));
    assert_eq!(q_pochhammer(2).unwrap(), QLaurent::from_q_coeffs(&[1, -1, -1, 1]));
    let want = &QLaurent::from_q_coeffs(&[1, 1]) * &QLaurent::from_q_coeffs(&[1, 1, 1]);
    assert_eq!(q_multinom(3, &[1, 1, 1]).unwrap(), want);
    assert_eq!(q_multinom(4, &[4]).unwrap(), QLaurent::one());
}

#[test]
fn negative_arguments_are_errors() {
    assert!(quantum_int(-1).is_err());
    assert!(q_pochhammer(-2).is_err());
    assert!(quantum_binom(-1, 0).is_err());
}

#[test]
fn gaussian_binomial_counts_inversions() {
    for n in 0..=8 {
        for k in 0..=n {
            assert_eq!(q_binom(n as i64, k as i64).unwrap(), inversion_polynomial(n, k), "n={} k={}", n, k);
        }
    }
}

#[test]
fn cache_agrees() {
    let mut c = QCombCache::new();
    for n in (0..10).rev() {
        assert_eq!(c.pochhammer(n), q_pochhammer(n as i64).unwrap());
        assert_eq!(c.quantum_factorial(n), quantum_factorial(n as i64).unwrap());
    }
}

proptest! {
    #[test]
    fn quantum_int_at_one(n in 0i64..40) {
        let p = quantum_int(n).unwrap();
        prop_assert_eq!(sum_coeffs(&p), n);
        // bar-invariant: symmetric under q -> q^-1
        let bar = QLaurent::from_terms(p.terms().iter().map(|&(e, c)| (-e, c)));
        prop_assert_eq!(bar, p);
    }

    #[test]
    fn quantum_int_product_rule(m in 1i64..15, n in 1i64..15) {
        // [m][n] = sum_{j} [m + n - 1 - 2j] for j < min(m,n)
        let lhs = &quantum_int(m).unwrap() * &quantum_int(n).unwrap();
        let mut rhs = QLaurent::zero();
        for j in 0..m.min(n) {
            rhs = &rhs + &quantum_int(m + n - 1 - 2 * j).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomials(n in 1i64..14, k in 0i64..14) {
        let g = q_binom(n, k).unwrap();
        if k > n {
            prop_assert!(g.is_zero());
            prop_assert!(quantum_binom(n, k).unwrap().is_zero());
        } else {
            prop_assert_eq!(&g, &q_binom(n, n - k).unwrap());
            if k > 0 {
                let pascal = &q_binom(n - 1, k - 1).unwrap() + &(&qpow(6 * k as i32) * &q_binom(n - 1, k).unwrap());
                prop_assert_eq!(&g, &pascal);
            }
            let balanced = quantum_binom(n, k).unwrap();
            prop_assert_eq!(&balanced, &(&qpow(-3 * (k * (n - k)) as i32) * &g));
            let f = &quantum_factorial(k).unwrap() * &quantum_factorial(n - k).unwrap();
            prop_assert_eq!(&balanced * &f, quantum_factorial(n).unwrap());
            // binomial theorem at q = 1
            prop_assert_eq!(sum_coeffs(&g) as u128, (0..k).fold(1u128, |a, i| a * (n - i) as u128 / (i + 1) as u128));
        }
    }

    #[test]
    fn multinomials(parts in prop::collection::vec(0i64..4, 1..5)) {
        let n: i64 = parts.iter().sum();
        let mut prod = QLaurent::one();
        let mut rest = n;
        for &p in &parts {
            prod = &prod * &q_binom(rest, p).unwrap();
            rest -= p;
        }
        prop_assert_eq!(q_multinom(n, &parts).unwrap(), prod);
    }

    #[test]
    fn pochhammer_ratios(a in 0i64..15, b in 0i64..15) {
        let (a, b) = (a.max(b), a.min(b));
        prop_assert_eq!(&pochhammer_ratio(a, b).unwrap() * &q_pochhammer(b).unwrap(), q_pochhammer(a).unwrap());
    }
}
