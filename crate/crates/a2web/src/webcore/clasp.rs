//! Expansion of A2 clasps into clasp-free webs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::builder::{identity, Dir, Op, Program};
use super::diagram::WebDiagram;
use super::layered::evaluate_program;
use super::rewrite::WebSum;
use crate::qcomb::{quantum_binom, quantum_int};
use crate::qlaurent::{lcm, QLaurent, QRational};

/// A clasp as a sum of basis webs over a common denominator. Every diagram
/// has `a + b` bottom ends (a Up then b Down) and the same top ends.
#[derive(Debug, Clone)]
pub struct ClaspTerms {
    pub a: u32,
    pub b: u32,
    pub den: QLaurent,
    pub terms: Vec<(WebDiagram, QLaurent)>,
}

impl ClaspTerms {
    pub fn dirs(&self) -> Vec<Dir> {
        let mut d = vec![Dir::Up; self.a as usize];
        d.extend(vec![Dir::Down; self.b as usize]);
        d
    }

    pub fn to_websum(&self) -> WebSum {
        let mut s = WebSum::new();
        for (d, c) in &self.terms {
            let r = QRational::new(c.clone(), self.den.clone()).expect("nonzero denominator");
            s.add_term(d.clone(), r);
        }
        s
    }
}

fn memo() -> &'static Mutex<HashMap<(u32, u32), Arc<ClaspTerms>>> {
    static M: OnceLock<Mutex<HashMap<(u32, u32), Arc<ClaspTerms>>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoised expansion of the clasp with colors (a, b).
pub fn clasp_terms(a: u32, b: u32) -> Arc<ClaspTerms> {
    if let Some(t) = memo().lock().unwrap().get(&(a, b)) {
        return t.clone();
    }
    let t = Arc::new(compute(a, b));
    memo().lock().unwrap().entry((a, b)).or_insert(t).clone()
}

/// The clasp (a, b) as a sum of basis webs.
pub fn expand_clasp(a: u32, b: u32) -> WebSum {
    clasp_terms(a, b).to_websum()
}

/// Sum of `(coefficient, program)` pairs, brought to a common denominator.
fn combine(dirs: Vec<Dir>, a: u32, b: u32, parts: Vec<(QRational, Program)>) -> ClaspTerms {
    let evaluated: Vec<_> = parts
        .into_iter()
        .map(|(c, p)| {
            let r = evaluate_program(&p).expect("clasp program is well formed");
            let den = c.den() * &r.den;
            (c.num().clone(), den, r.terms)
        })
        .collect();
    let mut den = QLaurent::one();
    for (_, d, _) in &evaluated {
        den = lcm(&den, d);
    }
    let mut acc = super::rewrite::LinComb::<QLaurent>::new();
    for (num, d, terms) in evaluated {
        let f = &num * &den.div_exact(&d).expect("lcm is a multiple");
        for (k, w, c) in terms.into_terms() {
            acc.add_canonical(k, w, &c * &f);
        }
    }
    debug_assert_eq!(dirs.len(), (a + b) as usize);
    ClaspTerms { a, b, den, terms: acc.into_terms().map(|(_, w, c)| (w, c)).collect() }
}

fn compute(a: u32, b: u32) -> ClaspTerms {
    let mut dirs = vec![Dir::Up; a as usize];
    dirs.extend(vec![Dir::Down; b as usize]);
    if a + b <= 1 {
        return ClaspTerms { a, b, den: QLaurent::one(), terms: vec![(identity(&dirs), QLaurent::one())] };
    }
    if a == 0 || b == 0 {
        // one-row recursion on the last strand
        let n = a + b - 1;
        let sub = if b == 0 { Op::Clasp { at: 0, a: n, b: 0 } } else { Op::Clasp { at: 0, a: 0, b: n } };
        let first = Program { bottom: dirs.clone(), ops: vec![sub] };
        let k = n as usize - 1;
        let second = Program { bottom: dirs.clone(), ops: vec![sub, Op::Merge { at: k }, Op::Split { at: k }, sub] };
        let coef = QRational::new(quantum_int(n as i64).unwrap(), quantum_int(n as i64 + 1).unwrap()).unwrap();
        return combine(dirs, a, b, vec![(QRational::one(), first), (-&coef, second)]);
    }
    let (au, bu) = (a as usize, b as usize);
    let mut parts = Vec::new();
    for i in 0..=au.min(bu) {
        let ii = i as i64;
        let num = &quantum_binom(a as i64, ii).unwrap() * &quantum_binom(b as i64, ii).unwrap();
        let den = quantum_binom((a + b + 1) as i64, ii).unwrap();
        let mut c = QRational::new(num, den).unwrap();
        if i % 2 == 1 {
            c = -&c;
        }
        let mut ops = vec![Op::Clasp { at: 0, a, b: 0 }, Op::Clasp { at: au, a: 0, b }];
        for j in 0..i {
            ops.push(Op::Cap { at: au - 1 - j });
        }
        for j in 0..i {
            ops.push(Op::Cup { at: au - i + j, left_up: true });
        }
        ops.push(Op::Clasp { at: 0, a, b: 0 });
        ops.push(Op::Clasp { at: au, a: 0, b });
        parts.push((c, Program { bottom: dirs.clone(), ops }));
    }
    combine(dirs, a, b, parts)
}
