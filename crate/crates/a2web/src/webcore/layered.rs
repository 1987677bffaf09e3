//! Layer-by-layer evaluation of tangle programs.
//!
//! The state is a linear combination of basis webs whose bottom ends are the
//! program's bottom ends. Each layer is glued on top of every state web,
//! crossings are resolved at once, clasps are replaced by their expansions,
//! and the result is reduced back to basis webs. Working one layer at a time
//! keeps the state small where expanding a whole diagram first would not.

use super::builder::{elementary, identity, Dir, Op, Program};
use super::clasp::clasp_terms;
use super::diagram::{NodeKind, WebDiagram};
use super::rewrite::{reduce_diagram, resolve_crossing_at, Evaluator, LinComb, WebSum};
use super::WebError;
use crate::qlaurent::{QLaurent, QRational};

/// Result of a program: `terms / den`.
#[derive(Debug, Clone)]
pub struct Layered {
    pub n_bottom: usize,
    pub terms: LinComb<QLaurent>,
    pub den: QLaurent,
}

impl Layered {
    pub fn to_websum(&self) -> WebSum {
        let mut s = WebSum::new();
        for (_, d, c) in self.terms.iter() {
            s.add_term(d.clone(), QRational::new(c.clone(), self.den.clone()).expect("nonzero denominator"));
        }
        s
    }

    /// Coefficient of the empty diagram.
    pub fn scalar(&self) -> QRational {
        QRational::new(self.terms.scalar(), self.den.clone()).expect("nonzero denominator")
    }
}

fn absorb(
    out: &mut LinComb<QLaurent>,
    d: WebDiagram,
    c: &QLaurent,
    ev: &mut Evaluator,
) -> Result<(), WebError> {
    let crossing = d.interior_nodes().find(|&n| matches!(d.node(n).kind, NodeKind::Crossing { .. }));
    let pieces = match crossing {
        Some(n) => resolve_crossing_at(&d, n).into_iter().collect(),
        None => vec![(QLaurent::one(), d)],
    };
    for (k, w) in pieces {
        let kc = &k * c;
        for (r, b) in reduce_diagram(w, ev)? {
            out.add_term(b, &kc * &r);
        }
    }
    Ok(())
}

/// Evaluates a program to a combination of basis webs.
pub fn evaluate_program(p: &Program) -> Result<Layered, WebError> {
    evaluate_program_with(p, &mut Evaluator::new())
}

pub fn evaluate_program_with(p: &Program, ev: &mut Evaluator) -> Result<Layered, WebError> {
    let nb = p.bottom.len();
    let mut state = LinComb::<QLaurent>::new();
    state.add_term(identity(&p.bottom), QLaurent::one());
    let mut den = QLaurent::one();
    let mut dirs: Vec<Dir> = p.bottom.clone();
    for op in &p.ops {
        let at = op.at();
        let w = op.width();
        if at + w > dirs.len() {
            return Err(WebError::Build(format!("{:?} out of range for {} ends", op, dirs.len())));
        }
        let input = &dirs[at..at + w];
        let next_dirs = {
            let mut v = dirs[..at].to_vec();
            v.extend(op.apply(input)?);
            v.extend_from_slice(&dirs[at + w..]);
            v
        };
        let mut next = LinComb::<QLaurent>::new();
        match *op {
            Op::Clasp { a, b, .. } if a + b <= 1 => {
                op.apply(input)?;
                continue;
            }
            Op::Clasp { a, b, .. } => {
                op.apply(input)?;
                let ct = clasp_terms(a, b);
                den = &den * &ct.den;
                for (_, d, c) in state.iter() {
                    for (e, ec) in &ct.terms {
                        let mut g = d.clone();
                        g.glue_top(nb, at, w, e, w);
                        absorb(&mut next, g, &(c * ec), ev)?;
                    }
                }
            }
            _ => {
                let e = elementary(op, input)?;
                for (_, d, c) in state.iter() {
                    let mut g = d.clone();
                    g.glue_top(nb, at, w, &e, w);
                    absorb(&mut next, g, c, ev)?;
                }
            }
        }
        state = next;
        dirs = next_dirs;
    }
    Ok(Layered { n_bottom: nb, terms: state, den })
}

/// Scalar value of a program with no ends.
pub fn evaluate_program_closed(p: &Program) -> Result<QRational, WebError> {
    evaluate_program_closed_with(p, &mut Evaluator::new())
}

pub fn evaluate_program_closed_with(p: &Program, ev: &mut Evaluator) -> Result<QRational, WebError> {
    if !p.bottom.is_empty() || !p.top()?.is_empty() {
        return Err(WebError::NonEmptyBoundary);
    }
    Ok(evaluate_program_with(p, ev)?.scalar())
}
