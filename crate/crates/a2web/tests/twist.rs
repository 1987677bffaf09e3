use a2web::qcomb::q_binom;
use a2web::qlaurent::qpow;
use a2web::twist::{
    antiparallel_full, antiparallel_multi, for_each_chain, lattice_expand, lattice_paths_brute, parallel_full,
    parallel_lattice_fns, parallel_multi, twist_oracle, verify_recurrence, BasisConvention, LatticeCoeffFns,
    Orientation, YVariant,
};
use a2web::QLaurent;
use proptest::prelude::*;

fn multi(kind: Orientation, s: usize, t: usize, m: usize) -> a2web::twist::TwistExpansion {
    match kind {
        Orientation::Parallel => parallel_multi(s, t, m).unwrap(),
        Orientation::Antiparallel => antiparallel_multi(s, t, m).unwrap(),
    }
}

/// Words in X and Y with k X's and n - k Y's, weighted by q^(number of X before each Y).
fn inversions(n: usize, k: usize) -> QLaurent {
    let mut out = QLaurent::zero();
    for w in 0u32..(1 << n) {
        if w.count_ones() as usize != k {
            continue;
        }
        let mut seen_x = 0;
        let mut inv = 0;
        for i in 0..n {
            if (w >> i) & 1 == 1 {
                seen_x += 1;
            } else {
                inv += seen_x;
            }
        }
        out = &out + &qpow(6 * inv);
    }
    out
}

fn simple_fns() -> LatticeCoeffFns<'static> {
    LatticeCoeffFns { x: Box::new(|_, _| QLaurent::one()), y: Box::new(|k, _| qpow(6 * k as i32)) }
}

#[test]
fn small_lattices() {
    let fns = LatticeCoeffFns { x: Box::new(|k, l| qpow((k + 2 * l) as i32 + 1)), y: Box::new(|k, l| qpow((k + 2 * l) as i32 + 7)) };
    let z = lattice_expand(0, &fns).unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(z[&(0, 0)], QLaurent::one());
    let one = lattice_expand(1, &fns).unwrap();
    assert_eq!(one.len(), 2);
    assert_eq!(one[&(1, 0)], (fns.x)(0, 0));
    assert_eq!(one[&(0, 1)], (fns.y)(0, 0));
}

#[test]
fn unit_weights_give_gaussian_binomials() {
    let fns = simple_fns();
    fns.check_commutation(6).unwrap();
    for n in 0..=6 {
        let e = lattice_expand(n, &fns).unwrap();
        for k in 0..=n {
            assert_eq!(e[&(k, n - k)], inversions(n, k));
            assert_eq!(e[&(k, n - k)], q_binom(n as i64, k as i64).unwrap());
        }
    }
    assert_eq!(lattice_expand(3, &fns).unwrap(), lattice_paths_brute(3, &fns));
}

#[test]
fn non_commuting_weights_are_rejected() {
    let fns = LatticeCoeffFns { x: Box::new(|_, _| QLaurent::one()), y: Box::new(|_, _| QLaurent::one()) };
    assert!(fns.check_commutation(2).is_err());
    assert!(lattice_expand(2, &fns).is_err());
}

#[test]
fn zero_color_is_trivial() {
    for kind in [Orientation::Parallel, Orientation::Antiparallel] {
        for t in 0..4 {
            for m in 1..3 {
                let e = multi(kind, 0, t, m);
                assert_eq!(e.entries.len(), 1);
                assert_eq!(e.coeff(0), QLaurent::one());
                assert_eq!(multi(kind, t, 0, m).coeff(0), QLaurent::one());
            }
        }
    }
    let f = antiparallel_full(0, 3);
    assert_eq!(f.k_form.entries.len(), 1);
    assert_eq!(f.k_form.coeff(0), QLaurent::one());
    assert_eq!(f.l_form.coeff(0), QLaurent::one());
}

#[test]
fn antiparallel_single_strands() {
    // checked against the skein engine first
    assert!(twist_oracle(Orientation::Antiparallel, 1, 1, 1).unwrap().passed());
    let l = antiparallel_full(1, 1).l_form;
    assert_eq!(l.basis_convention, BasisConvention::LForm);
    assert_eq!(l.coeff(0), qpow(2));
    assert_eq!(l.coeff(1), &qpow(2) * &(&qpow(-12) - &qpow(-6)));
}

#[test]
fn top_entry_is_a_pure_power() {
    for m in 1..=3 {
        for d in 0..=3 {
            let e = antiparallel_multi(d, d, m).unwrap();
            assert_eq!(e.coeff(d), qpow((2 * m * d * d) as i32), "m={} d={}", m, d);
        }
    }
}

#[test]
fn one_twist_matches_closed_form() {
    for s in 0..=5 {
        for t in 0..=5 {
            assert_eq!(parallel_multi(s, t, 1).unwrap(), parallel_full(s, t).k_form);
            assert_eq!(antiparallel_multi(s, t, 1).unwrap(), antiparallel_full(s, t).k_form);
        }
    }
}

#[test]
fn zero_twists_are_rejected() {
    assert!(parallel_multi(1, 1, 0).is_err());
    assert!(antiparallel_multi(1, 1, 0).is_err());
}

#[test]
fn chains_are_enumerated_once() {
    for d in 0..=4 {
        for m in 1..=3 {
            let mut seen = std::collections::BTreeSet::new();
            for_each_chain(d, m, &mut |c| {
                assert_eq!(c.len(), m + 1);
                assert_eq!(c[0], d);
                assert!(c.windows(2).all(|w| w[0] >= w[1]));
                assert!(seen.insert(c.to_vec()));
            });
            // multisets of size m from d + 1 values
            let want = (0..m).fold(1usize, |a, i| a * (d + 1 + i) / (i + 1));
            assert_eq!(seen.len(), want);
        }
    }
}

#[test]
fn engine_oracles() {
    for kind in [Orientation::Parallel, Orientation::Antiparallel] {
        for (s, t) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for m in 1..=2 {
                let r = twist_oracle(kind, s, t, m).unwrap();
                assert!(r.passed(), "{} s={} t={} m={}", kind, s, t, m);
                assert_eq!(r.rows.len(), s.min(t) + 1);
            }
        }
    }
}

#[test]
fn parallel_recurrence() {
    for (s, t) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let r = verify_recurrence(s, t).unwrap();
        assert!(r.passed(), "s={} t={}", s, t);
        assert!(r.endpoints_are_basis);
        assert!(r.commutation.contains(&(YVariant::Displayed, true)));
    }
    let one = verify_recurrence(1, 1).unwrap();
    assert!(one.checks.iter().any(|c| c.k == 0 && c.l == 0 && c.variant == YVariant::Displayed && c.passed));
}

#[test]
fn y_weight_vanishes_past_the_last_row() {
    for s in 0..=4usize {
        for t in 0..=4usize {
            let (d, delta) = (s.min(t), s.abs_diff(t));
            let f = parallel_lattice_fns(s, t, YVariant::Displayed);
            for k in 0..=d {
                assert!((f.y)(k, d + delta).is_zero());
            }
        }
    }
}

proptest! {
    #[test]
    fn forms_are_reindexings(s in 0usize..7, t in 0usize..7, anti in any::<bool>()) {
        let f = if anti { antiparallel_full(s, t) } else { parallel_full(s, t) };
        let d = s.min(t);
        prop_assert_eq!(&f.k_form.to_l_form(), &f.l_form);
        prop_assert_eq!(&f.l_form.to_k_form(), &f.k_form);
        prop_assert_eq!(&f.k_form.to_k_form(), &f.k_form);
        for i in 0..=d {
            prop_assert_eq!(f.k_form.coeff(i), f.l_form.coeff(d - i));
        }
    }

    #[test]
    fn closed_form_lattice_matches_path_sum(s in 0usize..5, t in 0usize..5) {
        let f = parallel_lattice_fns(s, t, YVariant::Displayed);
        let d = s.min(t);
        f.check_commutation(d).unwrap();
        for n in 0..=d {
            prop_assert_eq!(lattice_expand(n, &f).unwrap(), lattice_paths_brute(n, &f));
        }
    }

    #[test]
    fn colors_are_symmetric(s in 0usize..5, t in 0usize..5, m in 1usize..4, anti in any::<bool>()) {
        let kind = if anti { Orientation::Antiparallel } else { Orientation::Parallel };
        prop_assert_eq!(multi(kind, s, t, m).entries, multi(kind, t, s, m).entries);
    }
}
