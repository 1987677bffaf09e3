//! Exact verification suites shared by the CLI and the acceptance tests.
//!
//! Every check compares two independently computed values; a check passes
//! only on exact equality.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::invariants::{
    build_torus_diagram, delta, delta_product_form, jones_torus, oriented_closure_eval, ColoredLinkSpec, InvariantError,
};
use crate::qcomb::{pochhammer_ratio, q_binom, q_multinom, q_pochhammer, quantum_binom, quantum_int, QCombError};
use crate::qlaurent::{qpow, QLaurent, QRational};
use crate::tails::{stabilization_report, stabilization_report_with, TailError, TailFormula};
use crate::twist::{
    antiparallel_full, antiparallel_multi, basis_program, lattice_expand, lattice_paths_brute, parallel_full,
    parallel_lattice_fns, parallel_multi, twist_oracle, twist_program, verify_recurrence, Orientation, TwistError,
    YVariant,
};
use crate::webcore::builder::step;
use crate::webcore::layered::{evaluate_program_closed_with, evaluate_program_with};
use crate::webcore::rewrite::{evaluate_closed_with, reduce_with_order};
use crate::webcore::{
    evaluate_open, resolve_crossings, Dir, Evaluator, NodeKind, Op, Program, TangleBuilder, WebError, WebSum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Tail(#[from] TailError),
    #[error(transparent)]
    Comb(#[from] QCombError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Qcomb,
    Skein,
    Clasp,
    Twist,
    Torus,
    Tails,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Qcomb, Suite::Skein, Suite::Clasp, Suite::Twist, Suite::Torus, Suite::Tails];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Qcomb => "qcomb",
            Suite::Skein => "skein",
            Suite::Clasp => "clasp",
            Suite::Twist => "twist",
            Suite::Torus => "torus",
            Suite::Tails => "tails",
        })
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite `{}`", s))
    }
}

/// Size limits for the suites run from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_color: usize,
    pub max_twists: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_color: 2, max_twists: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn run(suite: Suite, limits: Limits) -> Result<SuiteReport, VerifyError> {
    let c = limits.max_color;
    let m = limits.max_twists;
    let mut checks = Vec::new();
    match suite {
        Suite::Qcomb => checks.extend(qcomb_identities(8)?),
        Suite::Skein => {
            checks.extend(skein_ground_truth()?);
            checks.extend(reidemeister_suite(REIDEMEISTER_PER_MOVE, REIDEMEISTER_SEED)?);
            checks.extend(kink_framing()?);
            checks.extend(confluence_suite(20, REIDEMEISTER_SEED)?);
        }
        Suite::Clasp => {
            checks.extend(clasp_properties(c.min(3))?);
            checks.extend(clasp_braiding(c.min(2))?);
        }
        Suite::Twist => {
            checks.extend(twist_forms(c.max(5))?);
            checks.extend(twist_oracles(c, m)?);
            checks.extend(recurrence_checks(c + 4, c)?);
        }
        Suite::Torus => {
            let pairs: Vec<(usize, usize)> = (1..=c).flat_map(|s| (s..=c).map(move |t| (s, t))).collect();
            checks.extend(torus_oracles(&pairs, &(1..=m).collect::<Vec<_>>())?);
            checks.extend(closure_values(c)?);
        }
        Suite::Tails => checks.extend(tail_stabilization(&(1..=m).collect::<Vec<_>>(), 4 * c)?),
    }
    Ok(SuiteReport { suite, checks })
}

fn one_check(name: String, a: &QRational, b: &QRational) -> Check {
    let passed = a == b;
    let detail = if passed { String::new() } else { format!("{} != {}", a, b) };
    Check::new(name, passed, detail)
}

fn int(n: i64) -> QLaurent {
    quantum_int(n).expect("nonnegative")
}

/// Algebraic identities among the q-combinatorial functions.
pub fn qcomb_identities(n_max: i64) -> Result<Vec<Check>, VerifyError> {
    let mut pascal = true;
    let mut symmetry = true;
    let mut balanced = true;
    let mut multinom = true;
    let mut ratio = true;
    let mut deltas = true;
    for n in 0..=n_max {
        for k in 0..=n {
            let g = q_binom(n, k)?;
            if n > 0 && k > 0 && k < n {
                let rhs = &q_binom(n - 1, k - 1)? + &(&qpow(6 * k as i32) * &q_binom(n - 1, k)?);
                pascal &= g == rhs;
            }
            symmetry &= g == q_binom(n, n - k)?;
            // [n choose k] = q^{-k(n-k)/2} (n choose k)_q
            balanced &= quantum_binom(n, k)? == &qpow(-3 * (k * (n - k)) as i32) * &g;
            for j in 0..=(n - k) {
                let prod = &g * &q_binom(n - k, j)?;
                multinom &= q_multinom(n, &[k, j, n - k - j])? == prod;
            }
            ratio &= &pochhammer_ratio(n, k)? * &q_pochhammer(k)? == q_pochhammer(n)?;
        }
        deltas &= delta(n)? == delta_product_form(n)?;
    }
    let r = |name: &str, ok: bool| Check::new(format!("{} for n <= {}", name, n_max), ok, "");
    Ok(vec![
        r("Gaussian binomial Pascal rule", pascal),
        r("Gaussian binomial symmetry", symmetry),
        r("balanced binomial equals shifted Gaussian binomial", balanced),
        r("trinomial equals product of binomials", multinom),
        r("Pochhammer ratio", ratio),
        r("quantum dimension product form", deltas),
    ])
}

const U: Dir = Dir::Up;
const D: Dir = Dir::Down;

fn prog(bottom: &[Dir], ops: &[Op]) -> Program {
    Program { bottom: bottom.to_vec(), ops: ops.to_vec() }
}

/// Closes a two-in two-out tangle by a cup below and a cap above.
fn plat_closure(p: &Program) -> Result<Program, WebError> {
    if p.bottom.len() != 2 || p.bottom[0] == p.bottom[1] {
        return Err(WebError::Build("plat closure needs two opposite ends".into()));
    }
    let mut ops = vec![Op::Cup { at: 0, left_up: p.bottom[0] == U }];
    ops.extend(p.ops.iter().copied());
    ops.push(Op::Cap { at: 0 });
    let q = Program { bottom: Vec::new(), ops };
    q.top()?;
    Ok(q)
}

/// Layered and literal values of an open tangle.
fn open_routes(p: &Program, ev: &mut Evaluator) -> Result<(WebSum, WebSum), WebError> {
    Ok((evaluate_program_with(p, ev)?.to_websum(), evaluate_open(&p.materialize()?)?))
}

/// Layered and literal values of a closed program.
fn closed_routes(p: &Program, ev: &mut Evaluator) -> Result<(QRational, QRational), WebError> {
    Ok((evaluate_program_closed_with(p, ev)?, evaluate_closed_with(&p.materialize()?, ev)?))
}

/// `lhs = sum c_i rhs_i` as open tangles, checked by both routes; also the
/// layered route against the literal one on each side.
fn open_equation(
    name: String,
    lhs: &Program,
    rhs: &[(QRational, Program)],
    ev: &mut Evaluator,
) -> Result<Check, WebError> {
    let (l1, l2) = open_routes(lhs, ev)?;
    let mut r1 = WebSum::new();
    let mut r2 = WebSum::new();
    for (c, p) in rhs {
        let (a, b) = open_routes(p, ev)?;
        r1.add_all(&a.scale(c));
        r2.add_all(&b.scale(c));
    }
    let passed = l1 == r1 && l2 == r2 && l1 == l2;
    let detail = if passed {
        String::new()
    } else {
        format!("layered {}, literal {}, routes agree {}", l1 == r1, l2 == r2, l1 == l2)
    };
    Ok(Check::new(name, passed, detail))
}

/// Circle, bigon and square relations, each checked open and closed.
pub fn skein_ground_truth() -> Result<Vec<Check>, VerifyError> {
    let mut ev = Evaluator::new();
    let mut out = Vec::new();
    let three = QRational::from(int(3));
    let two = QRational::from(int(2));
    for left_up in [true, false] {
        let p = prog(&[], &[Op::Cup { at: 0, left_up }, Op::Cap { at: 0 }]);
        let (a, b) = closed_routes(&p, &mut ev)?;
        let ok = a == three && b == three;
        out.push(Check::new(
            format!("circle ({}) evaluates to [3]", if left_up { "clockwise" } else { "counterclockwise" }),
            ok,
            if ok { String::new() } else { format!("{} / {}", a, b) },
        ));
    }
    for d in [U, D] {
        let bigon = prog(&[d], &[Op::Split { at: 0 }, Op::Merge { at: 0 }]);
        out.push(open_equation(format!("bigon on {:?} strand is [2] times the strand", d), &bigon, &[(two.clone(), prog(&[d], &[]))], &mut ev)?);
        let closed = Program { bottom: vec![], ops: {
            let mut v = vec![Op::Cup { at: 0, left_up: d == U }];
            v.extend(bigon.ops.iter().copied());
            v.push(Op::Cap { at: 0 });
            v
        } };
        let (a, b) = closed_routes(&closed, &mut ev)?;
        let want = &two * &three;
        out.push(Check::new(format!("closed bigon ({:?}) is [2][3]", d), a == want && b == want, ""));
    }
    let one = QRational::one();
    for bottom in [[U, D], [D, U]] {
        let square = prog(&bottom, &[Op::HSwap { at: 0 }, Op::HSwap { at: 0 }]);
        let id = prog(&bottom, &[]);
        let turn = prog(&bottom, &[Op::Cap { at: 0 }, Op::Cup { at: 0, left_up: bottom[0] == U }]);
        out.push(open_equation(
            format!("square on {:?} is identity plus turnback", bottom),
            &square,
            &[(one.clone(), id.clone()), (one.clone(), turn.clone())],
            &mut ev,
        )?);
        for (cname, close) in [("strand", Program::closure as fn(&Program) -> Result<Program, WebError>), ("plat", plat_closure)] {
            let (a1, a2) = closed_routes(&close(&square)?, &mut ev)?;
            let (b1, b2) = closed_routes(&close(&id)?, &mut ev)?;
            let (c1, c2) = closed_routes(&close(&turn)?, &mut ev)?;
            let ok = a1 == &b1 + &c1 && a2 == &b2 + &c2 && a1 == a2;
            out.push(Check::new(format!("square on {:?} under {} closure", bottom, cname), ok, ""));
        }
    }
    Ok(out)
}

/// The kinds of local moves in the generated corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Two curls whose framings cancel.
    R1Pair,
    R2,
    R3,
    /// A strand passing a trivalent vertex.
    R4,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::R1Pair => "R1 pair",
            MoveKind::R2 => "R2",
            MoveKind::R3 => "R3",
            MoveKind::R4 => "R4",
        })
    }
}

/// Two closed diagrams that differ by one local move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub lhs: Program,
    pub rhs: Program,
}

pub const REIDEMEISTER_SEED: u64 = 0x5eed_a2;
pub const REIDEMEISTER_PER_MOVE: usize = 15;
const MAX_WIDTH: usize = 4;

/// A curl on the strand at `i`; `right` puts the loop to its right.
pub fn curl(dirs: &[Dir], i: usize, right: bool, over_left: bool) -> Vec<Op> {
    let d = dirs[i];
    if right {
        vec![Op::Cup { at: i + 1, left_up: d == D }, Op::Cross { at: i, over_left }, Op::Cap { at: i }]
    } else {
        vec![Op::Cup { at: i, left_up: d == U }, Op::Cross { at: i + 1, over_left }, Op::Cap { at: i + 1 }]
    }
}

/// Sign of the only crossing of a program.
fn crossing_sign(p: &Program) -> Result<bool, WebError> {
    let w = p.materialize()?;
    let sign = w.interior_nodes().find_map(|n| match w.node(n).kind {
        NodeKind::Crossing { positive } => Some(positive),
        _ => None,
    });
    sign.ok_or_else(|| WebError::Build("no crossing".into()))
}

fn apply_all(dirs: &[Dir], ops: &[Op]) -> Result<Vec<Dir>, WebError> {
    let mut d = dirs.to_vec();
    for op in ops {
        d = step(&d, op)?;
    }
    Ok(d)
}

fn random_op(rng: &mut ChaCha8Rng, dirs: &[Dir], allow_cross: bool) -> Op {
    let w = dirs.len();
    let mut cands = Vec::new();
    for i in 0..w.saturating_sub(1) {
        if allow_cross {
            cands.push(Op::Cross { at: i, over_left: rng.gen() });
        }
        if dirs[i] == dirs[i + 1] {
            cands.push(Op::Merge { at: i });
        } else {
            cands.push(Op::Cap { at: i });
            cands.push(Op::HSwap { at: i });
        }
    }
    if w < MAX_WIDTH {
        for i in 0..w {
            cands.push(Op::Split { at: i });
        }
    }
    if w + 2 <= MAX_WIDTH || cands.is_empty() {
        cands.push(Op::Cup { at: rng.gen_range(0..=w), left_up: rng.gen() });
    }
    cands[rng.gen_range(0..cands.len())]
}

/// Random layers, at most one of them a crossing.
fn random_ops(rng: &mut ChaCha8Rng, dirs: &mut Vec<Dir>, count: usize) -> Result<Vec<Op>, WebError> {
    let mut ops = Vec::new();
    let mut crossed = false;
    for _ in 0..count {
        let op = random_op(rng, dirs, !crossed);
        crossed |= matches!(op, Op::Cross { .. });
        *dirs = step(dirs, &op)?;
        ops.push(op);
    }
    Ok(ops)
}

/// Caps or merges the remaining ends until none are left.
fn cap_off(dirs: &mut Vec<Dir>) -> Result<Vec<Op>, WebError> {
    let mut ops = Vec::new();
    while !dirs.is_empty() {
        let op = match (0..dirs.len() - 1).find(|&i| dirs[i] != dirs[i + 1]) {
            Some(i) => Op::Cap { at: i },
            None if dirs.len() >= 2 => Op::Merge { at: 0 },
            None => return Err(WebError::Build("cannot close a single end".into())),
        };
        *dirs = step(dirs, &op)?;
        ops.push(op);
    }
    Ok(ops)
}

/// Ensures at least `w` ends, adding cups on the right.
fn widen(rng: &mut ChaCha8Rng, dirs: &mut Vec<Dir>, ops: &mut Vec<Op>, w: usize) -> Result<(), WebError> {
    while dirs.len() < w {
        let op = Op::Cup { at: dirs.len(), left_up: rng.gen() };
        *dirs = step(dirs, &op)?;
        ops.push(op);
    }
    Ok(())
}

/// Left and right sides of a random move at the current ends; may add layers
/// to `pre` to make room.
fn random_move(
    rng: &mut ChaCha8Rng,
    kind: MoveKind,
    dirs: &mut Vec<Dir>,
    pre: &mut Vec<Op>,
) -> Result<(Vec<Op>, Vec<Op>), WebError> {
    match kind {
        MoveKind::R2 => {
            widen(rng, dirs, pre, 2)?;
            let i = rng.gen_range(0..dirs.len() - 1);
            let o: bool = rng.gen();
            Ok((vec![Op::Cross { at: i, over_left: o }, Op::Cross { at: i, over_left: !o }], vec![]))
        }
        MoveKind::R3 => {
            widen(rng, dirs, pre, 3)?;
            let i = rng.gen_range(0..dirs.len() - 2);
            let (a, b, c) = loop {
                let t: (bool, bool, bool) = (rng.gen(), rng.gen(), rng.gen());
                if !(t.0 == t.2 && t.0 != t.1) {
                    break t;
                }
            };
            let x = |at, o| Op::Cross { at, over_left: o };
            Ok((vec![x(i, a), x(i + 1, b), x(i, c)], vec![x(i + 1, c), x(i, b), x(i + 1, a)]))
        }
        MoveKind::R1Pair => {
            widen(rng, dirs, pre, 1)?;
            let i = rng.gen_range(0..dirs.len());
            let (s1, o1, s2): (bool, bool, bool) = (rng.gen(), rng.gen(), rng.gen());
            let first = curl(dirs, i, s1, o1);
            let sign1 = crossing_sign(&prog(dirs, &first))?;
            let mut second = curl(dirs, i, s2, true);
            if crossing_sign(&prog(dirs, &second))? == sign1 {
                second = curl(dirs, i, s2, false);
            }
            let mut lhs = first;
            lhs.extend(second);
            Ok((lhs, vec![]))
        }
        MoveKind::R4 => {
            let variant = rng.gen_range(0..4);
            let o: bool = rng.gen();
            let x = |at| Op::Cross { at, over_left: o };
            if variant < 2 {
                // a vertex with two incoming ends of equal direction
                widen(rng, dirs, pre, 3)?;
                let off = if variant == 0 { 0 } else { 1 };
                let sites: Vec<usize> =
                    (0..dirs.len() - 2).filter(|&i| dirs[i + off] == dirs[i + off + 1]).collect();
                let i = match sites.first() {
                    Some(_) => sites[rng.gen_range(0..sites.len())],
                    None => {
                        let op = Op::Split { at: off };
                        *dirs = step(dirs, &op)?;
                        pre.push(op);
                        (0..dirs.len() - 2).find(|&i| dirs[i + off] == dirs[i + off + 1]).expect("split made a site")
                    }
                };
                if variant == 0 {
                    Ok((vec![Op::Merge { at: i }, x(i)], vec![x(i + 1), x(i), Op::Merge { at: i + 1 }]))
                } else {
                    Ok((vec![Op::Merge { at: i + 1 }, x(i)], vec![x(i), x(i + 1), Op::Merge { at: i }]))
                }
            } else {
                widen(rng, dirs, pre, 2)?;
                let i = rng.gen_range(0..dirs.len() - 1);
                if variant == 2 {
                    Ok((vec![x(i), Op::Split { at: i + 1 }], vec![Op::Split { at: i }, x(i + 1), x(i)]))
                } else {
                    Ok((vec![x(i), Op::Split { at: i }], vec![Op::Split { at: i + 1 }, x(i), x(i + 1)]))
                }
            }
        }
    }
}

fn random_instance(rng: &mut ChaCha8Rng, kind: MoveKind) -> Result<MoveInstance, WebError> {
    let mut dirs = Vec::new();
    let n_pre = rng.gen_range(1..=3);
    let mut pre = random_ops(rng, &mut dirs, n_pre)?;
    let (l, r) = random_move(rng, kind, &mut dirs, &mut pre)?;
    let after = apply_all(&dirs, &l)?;
    if apply_all(&dirs, &r)? != after {
        return Err(WebError::Build("move sides end differently".into()));
    }
    let mut dirs = after;
    let n_post = rng.gen_range(0..=2);
    let mut post = random_ops(rng, &mut dirs, n_post)?;
    post.extend(cap_off(&mut dirs)?);
    let side = |mid: Vec<Op>| {
        let mut ops = pre.clone();
        ops.extend(mid);
        ops.extend(post.iter().copied());
        Program { bottom: Vec::new(), ops }
    };
    Ok(MoveInstance { kind, lhs: side(l), rhs: side(r) })
}

/// Deterministic corpus of closed diagrams, `per_move` instances per move
/// kind, each with at most 6 crossings.
pub fn reidemeister_corpus(per_move: usize, seed: u64) -> Result<Vec<MoveInstance>, WebError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for kind in [MoveKind::R1Pair, MoveKind::R2, MoveKind::R3, MoveKind::R4] {
        for _ in 0..per_move {
            out.push(random_instance(&mut rng, kind)?);
        }
    }
    Ok(out)
}

/// Both sides of every corpus instance, by both evaluation routes.
pub fn reidemeister_suite(per_move: usize, seed: u64) -> Result<Vec<Check>, VerifyError> {
    let corpus = reidemeister_corpus(per_move, seed)?;
    let mut ev = Evaluator::new();
    let mut out = Vec::new();
    for kind in [MoveKind::R1Pair, MoveKind::R2, MoveKind::R3, MoveKind::R4] {
        let mut n = 0;
        let mut failed = Vec::new();
        let mut max_cross = 0;
        for (idx, inst) in corpus.iter().enumerate().filter(|(_, i)| i.kind == kind) {
            n += 1;
            let (a1, a2) = closed_routes(&inst.lhs, &mut ev)?;
            let (b1, b2) = closed_routes(&inst.rhs, &mut ev)?;
            max_cross = max_cross.max(inst.lhs.materialize()?.num_crossings());
            if !(a1 == b1 && a2 == b2 && a1 == a2) {
                failed.push(idx);
            }
        }
        let detail = if failed.is_empty() {
            format!("{} diagrams, up to {} crossings", n, max_cross)
        } else {
            format!("failing instances {:?}", failed)
        };
        out.push(Check::new(format!("{} invariance on the generated corpus", kind), failed.is_empty(), detail));
    }
    Ok(out)
}

/// A single curl multiplies by q^{1/3}[3] - q^{-1/6}[2] (positive crossing)
/// or q^{-1/3}[3] - q^{1/6}[2] (negative crossing).
pub fn kink_framing() -> Result<Vec<Check>, VerifyError> {
    let mut ev = Evaluator::new();
    let mut out = Vec::new();
    for d in [U, D] {
        for right in [true, false] {
            for o in [true, false] {
                let p = prog(&[d], &curl(&[d], 0, right, o));
                let positive = crossing_sign(&p)?;
                let s = if positive { 1 } else { -1 };
                let factor = &(&qpow(2 * s) * &int(3)) - &(&qpow(-s) * &int(2));
                let name = format!(
                    "{} curl on {:?} strand ({} crossing) is a framing factor",
                    if right { "right" } else { "left" },
                    d,
                    if positive { "positive" } else { "negative" }
                );
                out.push(open_equation(name, &p, &[(QRational::from(factor), prog(&[d], &[]))], &mut ev)?);
            }
        }
    }
    Ok(out)
}

/// Face reduction in different orders yields the same value.
pub fn confluence_suite(count: usize, seed: u64) -> Result<Vec<Check>, VerifyError> {
    let corpus = reidemeister_corpus(count.div_ceil(4), seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0f1);
    let mut ok = true;
    let mut n = 0;
    for inst in corpus.iter().take(count) {
        n += 1;
        let w = inst.lhs.materialize()?;
        let terms = resolve_crossings(&w)?;
        let mut values = Vec::new();
        for order in 0..3 {
            let mut total = QRational::zero();
            for (_, d, c) in terms.iter() {
                let mut pick = |k: usize| match order {
                    0 => 0,
                    1 => k - 1,
                    _ => rng.gen_range(0..k),
                };
                for (x, r) in reduce_with_order(d.clone(), &mut pick)? {
                    if !r.is_closed() || r.interior_nodes().next().is_some() {
                        return Err(WebError::StuckDiagram.into());
                    }
                    total = &total + &(c * &QRational::from(x));
                }
            }
            values.push(total);
        }
        ok &= values.windows(2).all(|v| v[0] == v[1]);
    }
    Ok(vec![Check::new("face reduction order does not change the value", ok, format!("{} diagrams, 3 orders", n))])
}

fn color_dirs(m: usize, n: usize) -> Vec<Dir> {
    let mut d = vec![U; m];
    d.extend(vec![D; n]);
    d
}

/// Absorption and annihilation for clasps with m + n <= max_color.
pub fn clasp_properties(max_color: usize) -> Result<Vec<Check>, VerifyError> {
    let mut ev = Evaluator::new();
    let mut out = Vec::new();
    for total in 2..=max_color {
        for m in 0..=total {
            let n = total - m;
            let dirs = color_dirs(m, n);
            let mut jw = TangleBuilder::new(&dirs);
            jw.clasp(0, m as u32, n as u32)?;
            let jw = jw.finish();
            let one = QRational::one();
            // absorption of every sub-clasp, above and below
            let mut absorb_ok = true;
            for k in 0..=m {
                for l in 0..=n {
                    if k + l < 2 || (k, l) == (m, n) {
                        continue;
                    }
                    for below in [false, true] {
                        let mut b = TangleBuilder::new(&dirs);
                        if below {
                            b.clasp(m - k, k as u32, l as u32)?;
                            b.clasp(0, m as u32, n as u32)?;
                        } else {
                            b.clasp(0, m as u32, n as u32)?;
                            b.clasp(m - k, k as u32, l as u32)?;
                        }
                        let p = b.finish();
                        let c = open_equation(String::new(), &p, &[(one.clone(), jw.clone())], &mut ev)?;
                        let (x1, x2) = closed_routes(&p.closure()?, &mut ev)?;
                        let (y1, _) = closed_routes(&jw.closure()?, &mut ev)?;
                        absorb_ok &= c.passed && x1 == y1 && x2 == y1;
                    }
                }
            }
            out.push(Check::new(format!("clasp ({},{}) absorbs its sub-clasps", m, n), absorb_ok, ""));
            // annihilation by every merge or cap above and split or cup below
            let mut kill_ok = true;
            for j in 0..total - 1 {
                let top_op = if dirs[j] == dirs[j + 1] { Op::Merge { at: j } } else { Op::Cap { at: j } };
                let mut above = jw.clone();
                above.ops.push(top_op);
                let mut bottom: Vec<Dir> = dirs[..j].to_vec();
                let low_op = if dirs[j] == dirs[j + 1] {
                    bottom.push(dirs[j].flip());
                    Op::Split { at: j }
                } else {
                    Op::Cup { at: j, left_up: dirs[j] == U }
                };
                bottom.extend_from_slice(&dirs[j + 2..]);
                let mut below = Program::new(bottom);
                below.ops.push(low_op);
                below.ops.extend(jw.ops.iter().copied());
                for p in [above, below] {
                    let (a, b) = open_routes(&p, &mut ev)?;
                    kill_ok &= a.is_empty() && b.is_empty();
                }
            }
            out.push(Check::new(format!("clasp ({},{}) is killed by turnbacks and vertices", m, n), kill_ok, ""));
        }
    }
    Ok(out)
}

/// Crossing a clasped bundle over another multiplies by a scalar: q^{+-mn/3}
/// for parallel bundles, (-q^{+-1/6})^{mn} times the H-web staircase for
/// antiparallel ones.
pub fn clasp_braiding(max: usize) -> Result<Vec<Check>, VerifyError> {
    let mut ev = Evaluator::new();
    let mut out = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            for over_left in [true, false] {
                let s = if over_left { 1 } else { -1 };
                let mn = (m * n) as i32;
                // parallel
                let mut b = TangleBuilder::new(&vec![U; m + n]);
                b.clasp(0, (m + n) as u32, 0)?;
                let jw = b.program().clone();
                b.bundle_cross(0, m, n, over_left)?;
                out.push(open_equation(
                    format!("parallel clasp braiding m={} n={} over_left={}", m, n, over_left),
                    b.program(),
                    &[(QRational::from(qpow(2 * s * mn)), jw)],
                    &mut ev,
                )?);
                // antiparallel
                let dirs = color_dirs(m, n);
                let mut b = TangleBuilder::new(&dirs);
                b.clasp(0, m as u32, n as u32)?;
                let mut h = b.clone();
                h.hstair(0, m, n)?;
                b.bundle_cross(0, m, n, over_left)?;
                let sign = if mn % 2 == 0 { 1 } else { -1 };
                out.push(open_equation(
                    format!("antiparallel clasp braiding m={} n={} over_left={}", m, n, over_left),
                    b.program(),
                    &[(QRational::from(qpow(s * mn).scale(sign)), h.finish())],
                    &mut ev,
                )?);
            }
        }
    }
    Ok(out)
}

/// l-form against k-form of the single full twists, and the m = 1 case of
/// the m-twist expansions against the single twist.
pub fn twist_forms(max: usize) -> Result<Vec<Check>, VerifyError> {
    let mut lk = true;
    let mut single = true;
    let mut lattice = true;
    for s in 0..=max {
        for t in 0..=max {
            for (full, multi) in [
                (antiparallel_full(s, t), antiparallel_multi(s, t, 1)?),
                (parallel_full(s, t), parallel_multi(s, t, 1)?),
            ] {
                lk &= full.l_form.to_k_form() == full.k_form && full.k_form.to_l_form() == full.l_form;
                single &= multi.to_k_form().entries == full.k_form.entries;
            }
        }
    }
    for s in 0..=max.min(4) {
        for t in 0..=max.min(4) {
            let fns = parallel_lattice_fns(s, t, YVariant::Displayed);
            let n = s.min(t);
            lattice &= lattice_expand(n, &fns)? == lattice_paths_brute(n, &fns);
        }
    }
    Ok(vec![
        Check::new(format!("full twist l-form equals k-form for s,t <= {}", max), lk, ""),
        Check::new(format!("one-twist case of the m-twist expansion for s,t <= {}", max), single, ""),
        Check::new("lattice expansion equals the path sum", lattice, ""),
    ])
}

/// The m-twist expansions against the engine under every test closure.
pub fn twist_oracles(max_color: usize, max_twists: usize) -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    for kind in [Orientation::Antiparallel, Orientation::Parallel] {
        for s in 0..=max_color {
            for t in 0..=max_color {
                for m in 1..=max_twists {
                    let r = twist_oracle(kind, s, t, m)?;
                    let bad: Vec<usize> = r.rows.iter().filter(|x| x.1 != x.2).map(|x| x.0).collect();
                    out.push(Check::new(
                        format!("{} twist expansion s={} t={} m={} against the engine", kind, s, t, m),
                        bad.is_empty(),
                        if bad.is_empty() { format!("{} closures", r.rows.len()) } else { format!("closures {:?} differ", bad) },
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// The torus-link formula against the literal closed diagram, with the
/// layered evaluation of the same diagram as a cross-check.
pub fn torus_oracles(pairs: &[(usize, usize)], twists: &[usize]) -> Result<Vec<Check>, VerifyError> {
    let mut ev = Evaluator::new();
    let mut out = Vec::new();
    for kind in [Orientation::Antiparallel, Orientation::Parallel] {
        for &(s, t) in pairs {
            for &m in twists {
                let spec = ColoredLinkSpec::new(kind, m, s, t)?;
                let formula = jones_torus(&spec)?;
                let literal = evaluate_closed_with(&build_torus_diagram(&spec)?, &mut ev)?;
                let layered = evaluate_program_closed_with(&twist_program(kind, s, t, m, false)?.closure()?, &mut ev)?;
                let mut c = one_check(format!("{} formula against the closed diagram", spec), &formula, &literal);
                if literal != layered {
                    c.passed = false;
                    c.detail = format!("routes disagree: {} / {}", literal, layered);
                }
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Closure values of the basis webs for s,t <= max, both orientations.
pub fn closure_values(max: usize) -> Result<Vec<Check>, VerifyError> {
    let mut ev = Evaluator::new();
    let mut out = Vec::new();
    for kind in [Orientation::Parallel, Orientation::Antiparallel] {
        let mut ok = true;
        let mut bad = Vec::new();
        for s in 0..=max {
            for t in 0..=max {
                for k in 0..=s.min(t) {
                    let want = oriented_closure_eval(kind, s, t, k)?;
                    let (a, b) = closed_routes(&basis_program(kind, s, t, k)?.closure()?, &mut ev)?;
                    if a != want || b != want {
                        ok = false;
                        bad.push((s, t, k));
                    }
                }
            }
        }
        out.push(Check::new(
            format!("{} basis web closures for s,t <= {}", kind, max),
            ok,
            if ok { String::new() } else { format!("differ at {:?}", bad) },
        ));
    }
    Ok(out)
}

/// Normalized invariants against the tail series modulo q^{n+1}.
pub fn tail_stabilization(twists: &[usize], n_max: usize) -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    for kind in [Orientation::Antiparallel, Orientation::Parallel] {
        for &m in twists {
            let r = stabilization_report(kind, m, n_max)?;
            let detail = match r.first_failure() {
                None => String::new(),
                Some(f) => format!("n={} differs at q^{}", f.n, f.first_difference.unwrap_or(0)),
            };
            out.push(Check::new(format!("{} m={} tail stabilizes for n <= {}", kind, m, n_max), r.passed(), detail));
        }
    }
    Ok(out)
}

/// Where the closed form without the (q)_inf/(q)_k factor first disagrees.
pub fn stated_tail_first_failure(kind: Orientation, m: usize, n_max: usize) -> Result<Option<(usize, usize)>, VerifyError> {
    let r = stabilization_report_with(kind, m, n_max, TailFormula::Stated)?;
    Ok(r.first_failure().map(|f| (f.n, f.first_difference.unwrap_or(0))))
}

/// Commutation condition for the parallel lattice weights with
/// d + delta <= max_sum, and the engine recurrence for s,t <= max_color.
pub fn recurrence_checks(max_sum: usize, max_color: usize) -> Result<Vec<Check>, VerifyError> {
    let mut comm = true;
    for s in 0..=max_sum {
        for t in 0..=max_sum {
            if s.max(t) > max_sum {
                continue;
            }
            let fns = parallel_lattice_fns(s, t, YVariant::Displayed);
            comm &= fns.check_commutation(s.max(t)).is_ok();
        }
    }
    let mut out = vec![Check::new(format!("lattice weights commute for d + delta <= {}", max_sum), comm, "")];
    for s in 0..=max_color {
        for t in 0..=max_color {
            if s.min(t) == 0 || s.min(t) > 2 {
                continue;
            }
            let r = verify_recurrence(s, t)?;
            out.push(Check::new(format!("parallel recurrence under closures s={} t={}", s, t), r.passed(), ""));
        }
    }
    Ok(out)
}
