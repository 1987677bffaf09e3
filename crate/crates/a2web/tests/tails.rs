use a2web::qcomb::q_pochhammer;
use a2web::qlaurent::{qpow, series_truncate};
use a2web::tails::{
    normalized_jones, stabilization_report, stabilization_report_with, tail_series, tail_series_with, TailFormula,
};
use a2web::twist::Orientation;
use a2web::{QLaurent, QRational};
use proptest::prelude::*;

const KINDS: [Orientation; 2] = [Orientation::Parallel, Orientation::Antiparallel];

fn q(n: usize) -> QLaurent {
    qpow(6 * n as i32)
}

fn one_minus(n: usize) -> QLaurent {
    &QLaurent::one() - &q(n)
}

fn poch(n: usize) -> QLaurent {
    q_pochhammer(n as i64).unwrap()
}

/// (q^{k+1}; q)_inf modulo q^{order+1}.
fn poch_tail(k: usize, order: usize) -> QLaurent {
    ((k + 1)..=order).fold(QLaurent::one(), |a, i| &a * &one_minus(i))
}

/// Two-term chain sum for the parallel tail with m = 2, summed as exact
/// rational functions and expanded once at the end.
fn parallel_m2_oracle(order: usize, limit: bool) -> QLaurent {
    let mut total = QRational::zero();
    for k1 in 0..=3 {
        for k2 in 0..=k1 {
            let e = k1 * k1 + k1 + k2 * k2;
            let mut num = q(e);
            if limit {
                num = &num * &poch_tail(k2, order);
            }
            let den = &poch(k1 - k2) * &poch(k2);
            total = &total + &QRational::new(num, den).unwrap();
        }
    }
    let pre = &(&one_minus(1) * &one_minus(1)) * &one_minus(2);
    let total = &total * &QRational::new(QLaurent::one(), pre).unwrap();
    series_truncate(&total, order as i32).unwrap()
}

#[test]
fn constant_term() {
    assert_eq!(tail_series(Orientation::Parallel, 1, 0).unwrap().series, QLaurent::one());
    for kind in KINDS {
        for m in 1..=3 {
            for f in [TailFormula::Limit, TailFormula::Stated] {
                assert_eq!(tail_series_with(kind, m, 10, f).unwrap().coefficients()[0], 1);
            }
        }
    }
}

#[test]
fn antiparallel_single_twist() {
    // stated chain sum: q^{-2k} q^{k^2 + 2k} = q^{k^2}
    let mut stated = QRational::zero();
    for k in 0..=2 {
        stated = &stated + &QRational::new(q(k * k), poch(k)).unwrap();
    }
    let pre = QRational::new(QLaurent::one(), &one_minus(1) * &one_minus(2)).unwrap();
    let want = series_truncate(&(&stated * &pre), 4).unwrap();
    assert_eq!(tail_series_with(Orientation::Antiparallel, 1, 4, TailFormula::Stated).unwrap().series, want);

    // with the limit factor the chain sum collapses (Durfee squares) to 1
    let want = series_truncate(&pre, 20).unwrap();
    assert_eq!(tail_series(Orientation::Antiparallel, 1, 20).unwrap().series, want);
}

#[test]
fn parallel_two_twists() {
    assert_eq!(tail_series(Orientation::Parallel, 2, 6).unwrap().series, parallel_m2_oracle(6, true));
    assert_eq!(
        tail_series_with(Orientation::Parallel, 2, 6, TailFormula::Stated).unwrap().series,
        parallel_m2_oracle(6, false)
    );
}

#[test]
fn normalized_invariants() {
    for kind in KINDS {
        for m in 1..=3 {
            assert_eq!(normalized_jones(kind, m, 0).unwrap(), QLaurent::one());
            for n in 1..=3 {
                let f = normalized_jones(kind, m, n).unwrap();
                assert_eq!(f.coeff(0), 1, "{} m={} n={}", kind, m, n);
                assert!(f.min_exp().unwrap() >= 0);
            }
        }
    }
    assert!(normalized_jones(Orientation::Parallel, 0, 1).is_err());
}

#[test]
fn coefficients_stabilize() {
    for kind in KINDS {
        for m in 1..=2 {
            let fs: Vec<QLaurent> = (0..=8).map(|n| normalized_jones(kind, m, n).unwrap()).collect();
            for j in 0..=8 {
                let c = fs[j].coeff(6 * j as i32);
                for f in &fs[j..] {
                    assert_eq!(f.coeff(6 * j as i32), c, "{} m={} j={}", kind, m, j);
                }
            }
        }
    }
}

#[test]
fn limit_formula_stabilizes() {
    for kind in KINDS {
        for m in 1..=2 {
            let r = stabilization_report(kind, m, 8).unwrap();
            assert!(r.passed(), "{}", r);
            assert_eq!(r.rows.len(), 9);
        }
    }
}

#[test]
fn stated_formula_fails_at_first_order() {
    for kind in KINDS {
        for m in 1..=2 {
            let r = stabilization_report_with(kind, m, 4, TailFormula::Stated).unwrap();
            assert!(r.rows[0].passed);
            let bad = r.first_failure().expect("stated formula differs");
            assert_eq!(bad.n, 1);
            assert_eq!(bad.first_difference, Some(1));
        }
    }
}

#[test]
fn report_renders_a_table() {
    let r = stabilization_report_with(Orientation::Antiparallel, 1, 2, TailFormula::Stated).unwrap();
    let text = r.to_string();
    assert!(text.contains("FAIL"));
    assert!(text.contains("q^1"));
}

/// Exploratory: the coefficients have been nonnegative in every case tried.
/// Any negative coefficient is printed before the assertion fails.
#[test]
fn coefficients_are_nonnegative() {
    let mut found = Vec::new();
    for kind in KINDS {
        for m in 1..=3 {
            for f in [TailFormula::Limit, TailFormula::Stated] {
                let s = tail_series_with(kind, m, 20, f).unwrap();
                for (j, c) in s.coefficients().into_iter().enumerate() {
                    if c < 0 {
                        eprintln!("negative coefficient: {} m={} {:?} q^{} -> {}", kind, m, f, j, c);
                        found.push((kind, m, f, j));
                    }
                }
            }
        }
    }
    assert!(found.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn truncation_is_monotone(m in 1usize..4, hi in 0usize..16, lo in 0usize..16, anti in any::<bool>(), stated in any::<bool>()) {
        let kind = if anti { Orientation::Antiparallel } else { Orientation::Parallel };
        let f = if stated { TailFormula::Stated } else { TailFormula::Limit };
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        let big = tail_series_with(kind, m, hi, f).unwrap();
        let small = tail_series_with(kind, m, lo, f).unwrap();
        prop_assert_eq!(big.truncate(lo), small);
    }
}
