use a2web::invariants::{
    antiparallel_closure_eval, build_torus_diagram, closure_eval, delta, delta_product_form, jones_torus,
    jones_torus_laurent, jones_torus_sum, oriented_closure_eval, ColoredLinkSpec, ParallelFactor,
};
use a2web::qcomb::quantum_int;
use a2web::twist::{basis_program, Orientation};
use a2web::webcore::{evaluate_closed, evaluate_program_closed};
use a2web::{QLaurent, QRational};
use proptest::prelude::*;

const KINDS: [Orientation; 2] = [Orientation::Parallel, Orientation::Antiparallel];

fn spec(kind: Orientation, m: usize, s: usize, t: usize) -> ColoredLinkSpec {
    ColoredLinkSpec::new(kind, m, s, t).unwrap()
}

fn at_one(p: &QLaurent) -> i64 {
    p.terms().iter().map(|t| t.1).sum()
}

fn dim(n: usize) -> i64 {
    ((n + 1) * (n + 2) / 2) as i64
}

#[test]
fn unknot_values() {
    assert_eq!(delta(0).unwrap(), QLaurent::one());
    assert_eq!(delta(1).unwrap(), quantum_int(3).unwrap());
    let want = QLaurent::from_terms([(12, 1), (6, 1), (0, 2), (-6, 1), (-12, 1)]);
    assert_eq!(delta(2).unwrap(), want);
    assert!(delta(-1).is_err());
}

#[test]
fn closure_values() {
    for s in 0..=3 {
        for t in 0..=3 {
            let d = s.min(t);
            let full = QRational::from(&delta(s as i64).unwrap() * &delta(t as i64).unwrap());
            assert_eq!(closure_eval(s, t, d).unwrap(), full);
            assert_eq!(antiparallel_closure_eval(s, t, d).unwrap(), full);
            assert!(closure_eval(s, t, d + 1).is_err());
        }
    }
    let want = &quantum_int(2).unwrap() * &quantum_int(3).unwrap();
    assert_eq!(closure_eval(1, 1, 0).unwrap(), QRational::from(want));
}

#[test]
fn closure_values_match_engine() {
    for kind in KINDS {
        for (s, t) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)] {
            for k in 0..=s.min(t) {
                let p = basis_program(kind, s, t, k).unwrap().closure().unwrap();
                let want = oriented_closure_eval(kind, s, t, k).unwrap();
                assert_eq!(evaluate_program_closed(&p).unwrap(), want, "{} s={} t={} k={}", kind, s, t, k);
            }
        }
    }
}

#[test]
fn uncolored_component_leaves_the_other_unknot() {
    for kind in KINDS {
        for m in 1..=3 {
            for t in 0..=4 {
                assert_eq!(jones_torus_laurent(&spec(kind, m, 0, t)).unwrap(), delta(t as i64).unwrap());
            }
        }
    }
}

#[test]
fn torus_diagrams() {
    for kind in KINDS {
        for m in 1..=2 {
            for (s, t) in [(1, 1), (1, 2), (2, 2)] {
                let sp = spec(kind, m, s, t);
                let w = build_torus_diagram(&sp).unwrap();
                assert_eq!(w.num_crossings(), 2 * m * s * t);
                assert!(w.is_closed());
            }
        }
    }
}

#[test]
fn hopf_links_match_engine() {
    for kind in KINDS {
        for (s, t) in [(1, 1), (1, 2), (2, 2)] {
            let sp = spec(kind, 1, s, t);
            let literal = evaluate_closed(&build_torus_diagram(&sp).unwrap()).unwrap();
            assert_eq!(jones_torus(&sp).unwrap(), literal, "{}", sp);
        }
    }
}

#[test]
fn displayed_parallel_factor_disagrees_with_engine() {
    let sp = spec(Orientation::Parallel, 1, 1, 1);
    let engine = evaluate_closed(&build_torus_diagram(&sp).unwrap()).unwrap();
    assert_eq!(jones_torus_sum(&sp, ParallelFactor::Derived).unwrap(), engine);
    assert_ne!(jones_torus_sum(&sp, ParallelFactor::Displayed).unwrap(), engine);
}

#[test]
fn zero_twists_are_rejected() {
    assert!(ColoredLinkSpec::new(Orientation::Parallel, 0, 1, 1).is_err());
}

proptest! {
    #[test]
    fn unknot_forms_agree(n in 0i64..30) {
        prop_assert_eq!(delta(n).unwrap(), delta_product_form(n).unwrap());
        prop_assert_eq!(at_one(&delta(n).unwrap()), dim(n as usize));
    }

    /// At q = 1 a crossing is the flip of tensor factors, so every link
    /// evaluates to the product of the dimensions of its colors.
    #[test]
    fn classical_limit(m in 1usize..4, s in 0usize..5, t in 0usize..5, anti in any::<bool>()) {
        let kind = if anti { Orientation::Antiparallel } else { Orientation::Parallel };
        let j = jones_torus_laurent(&spec(kind, m, s, t)).unwrap();
        prop_assert_eq!(at_one(&j), dim(s) * dim(t));
    }

    #[test]
    fn colors_are_symmetric(m in 1usize..4, s in 0usize..5, t in 0usize..5, anti in any::<bool>()) {
        let kind = if anti { Orientation::Antiparallel } else { Orientation::Parallel };
        prop_assert_eq!(jones_torus(&spec(kind, m, s, t)).unwrap(), jones_torus(&spec(kind, m, t, s)).unwrap());
    }
}
