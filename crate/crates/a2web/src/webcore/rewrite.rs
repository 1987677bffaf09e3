//! Skein rewriting: crossing resolution, face reduction and closed evaluation.

use std::collections::HashMap;

use super::canon::{canonical_closed, canonical_form, CanonicalKey};
use super::diagram::{DartId, NodeId, NodeKind, WebDiagram};
use super::WebError;
use crate::qcomb::quantum_int;
use crate::qlaurent::{qpow, QLaurent, QRational};

/// Coefficient rings used by the engine.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn from_laurent(l: QLaurent) -> Self;
}

impl Coeff for QLaurent {
    fn zero() -> Self {
        QLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        QLaurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_laurent(l: QLaurent) -> Self {
        l
    }
}

impl Coeff for QRational {
    fn zero() -> Self {
        QRational::zero()
    }
    fn is_zero(&self) -> bool {
        QRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_laurent(l: QLaurent) -> Self {
        QRational::from(l)
    }
}

/// Formal linear combination of diagrams keyed by canonical form.
#[derive(Debug, Clone)]
pub struct LinComb<C: Coeff> {
    terms: HashMap<CanonicalKey, (WebDiagram, C)>,
}

impl<C: Coeff> Default for LinComb<C> {
    fn default() -> Self {
        LinComb { terms: HashMap::new() }
    }
}

impl<C: Coeff> PartialEq for LinComb<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(k, (_, c))| other.terms.get(k).is_some_and(|(_, c2)| c == c2))
    }
}

impl<C: Coeff> LinComb<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Single term; the diagram is canonicalised.
    pub fn single(d: WebDiagram, c: C) -> Self {
        let mut s = Self::new();
        s.add_term(d, c);
        s
    }

    pub fn add_term(&mut self, d: WebDiagram, c: C) {
        let (k, d) = canonical_form(&d);
        self.add_canonical(k, d, c);
    }

    pub(crate) fn add_canonical(&mut self, k: CanonicalKey, d: WebDiagram, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                slot.1 = slot.1.add(&c);
                if slot.1.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, (d, c));
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted by key.
    pub fn sorted(&self) -> Vec<(&CanonicalKey, &WebDiagram, &C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, (d, c))| (k, d, c)).collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, &WebDiagram, &C)> {
        self.terms.iter().map(|(k, (d, c))| (k, d, c))
    }

    pub fn into_terms(self) -> impl Iterator<Item = (CanonicalKey, WebDiagram, C)> {
        self.terms.into_iter().map(|(k, (d, c))| (k, d, c))
    }

    pub fn coeff(&self, k: &CanonicalKey) -> Option<&C> {
        self.terms.get(k).map(|t| &t.1)
    }

    /// Coefficient of the empty diagram.
    pub fn scalar(&self) -> C {
        let (k, _) = canonical_form(&WebDiagram::empty());
        self.coeff(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::new();
        for (k, (d, x)) in &self.terms {
            out.add_canonical(k.clone(), d.clone(), x.mul(c));
        }
        out
    }

    pub fn add_all(&mut self, other: &Self) {
        for (k, (d, c)) in &other.terms {
            self.add_canonical(k.clone(), d.clone(), c.clone());
        }
    }
}

/// Formal linear combination of diagrams with rational coefficients.
pub type WebSum = LinComb<QRational>;

fn three() -> QLaurent {
    quantum_int(3).expect("nonnegative")
}

fn two() -> QLaurent {
    quantum_int(2).expect("nonnegative")
}

/// Takes the free loops off as a factor [3]^loops.
pub(crate) fn take_loops(d: &mut WebDiagram) -> QLaurent {
    let n = d.loops;
    d.loops = 0;
    three().pow(n)
}

/// Oriented smoothing and I-web of the crossing at `n`, with their
/// coefficients from the skein relation.
pub fn resolve_crossing_at(d: &WebDiagram, n: NodeId) -> [(QLaurent, WebDiagram); 2] {
    let positive = match d.node(n).kind {
        NodeKind::Crossing { positive } => positive,
        k => panic!("node {} is {:?}, not a crossing", n, k),
    };
    let c = d.node(n).darts.clone();
    let mut smooth = d.clone();
    smooth.splice(&c, &[(c[1], c[2]), (c[0], c[3])]);
    smooth.drop_node(n);
    let mut web = d.clone();
    let sink = web.add_node(NodeKind::Sink);
    let source = web.add_node(NodeKind::Source);
    let m_in = web.add_dart(sink, false);
    let m_out = web.add_dart(source, true);
    web.link(m_in, m_out);
    for &x in &c[..2] {
        web.dart_mut(x).node = sink;
    }
    for &x in &c[2..] {
        web.dart_mut(x).node = source;
    }
    web.node_mut(sink).darts = vec![c[0], c[1], m_in];
    web.node_mut(source).darts = vec![c[2], c[3], m_out];
    web.nodes[n] = None;
    let (a, b) = if positive { (qpow(2), -qpow(-1)) } else { (qpow(-2), -qpow(1)) };
    [(a, smooth), (b, web)]
}

/// Internal faces (no boundary corner) of degree 2 or 4 whose corners are
/// distinct trivalent vertices; bigons are preferred.
fn reducible_face(d: &WebDiagram) -> Option<Vec<DartId>> {
    let mut square = None;
    for f in d.faces() {
        if f.len() != 2 && f.len() != 4 {
            continue;
        }
        let corners: Vec<NodeId> = f.iter().map(|&x| d.dart(x).node).collect();
        if corners.iter().any(|&n| n == 0 || !d.node(n).kind.is_trivalent()) {
            continue;
        }
        let mut uniq = corners.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != corners.len() {
            continue;
        }
        if f.len() == 2 {
            return Some(f);
        }
        if square.is_none() {
            square = Some(f);
        }
    }
    square
}

/// The dart of trivalent node `n` not in `used`.
fn third_dart(d: &WebDiagram, n: NodeId, used: &[DartId]) -> DartId {
    *d.node(n).darts.iter().find(|x| !used.contains(x)).expect("trivalent")
}

/// Removes the bigon given by face darts [a1, b1]: replaces it by a strand.
fn reduce_bigon(d: &mut WebDiagram, f: &[DartId]) {
    let (a1, b1) = (f[0], f[1]);
    let (a, b) = (d.dart(a1).node, d.dart(b1).node);
    let a2 = d.twin(b1);
    let b2 = d.twin(a1);
    let a3 = third_dart(d, a, &[a1, a2]);
    let b3 = third_dart(d, b, &[b1, b2]);
    let ports = vec![a1, a2, a3, b1, b2, b3];
    d.splice(&ports, &[(a3, a1), (b2, b3)]);
    d.drop_node(a);
    d.drop_node(b);
}

/// The two smoothings of a square face given by darts [e0, e1, e2, e3],
/// where e_i leaves corner i towards corner i+1.
fn reduce_square(d: &WebDiagram, f: &[DartId]) -> [WebDiagram; 2] {
    let corners: Vec<NodeId> = f.iter().map(|&x| d.dart(x).node).collect();
    // at corner i: the face darts are f[i] (to i+1) and twin(f[i-1]) (to i-1)
    let back: Vec<DartId> = (0..4).map(|i| d.twin(f[(i + 3) % 4])).collect();
    let ext: Vec<DartId> = (0..4).map(|i| third_dart(d, corners[i], &[f[i], back[i]])).collect();
    let ports: Vec<DartId> = (0..4).flat_map(|i| [f[i], back[i], ext[i]]).collect();
    let make = |start: usize| {
        let mut w = d.clone();
        let mut pairs = Vec::new();
        for i in [start, start + 2] {
            let j = (i + 1) % 4;
            // strand: ext[i] -> corner i -> edge f[i] -> corner j -> ext[j]
            pairs.push((ext[i], f[i]));
            pairs.push((back[j], ext[j]));
        }
        w.splice(&ports, &pairs);
        for &c in &corners {
            w.drop_node(c);
        }
        w
    };
    [make(0), make(1)]
}

/// Reduces a crossingless, clasp-free diagram completely: faces are removed,
/// loops and closed components become scalars. Returns basis-web terms.
pub fn reduce_diagram(d: WebDiagram, ev: &mut Evaluator) -> Result<Vec<(QLaurent, WebDiagram)>, WebError> {
    let mut out = Vec::new();
    let mut stack = vec![(QLaurent::one(), d)];
    while let Some((c, mut w)) = stack.pop() {
        let mut c = c;
        for comp in w.split_closed() {
            c = &c * &ev.eval_closed(comp)?;
        }
        if c.is_zero() {
            continue;
        }
        loop {
            match reducible_face(&w) {
                Some(f) if f.len() == 2 => {
                    reduce_bigon(&mut w, &f);
                    c = &c * &two();
                }
                Some(f) => {
                    let [w1, w2] = reduce_square(&w, &f);
                    stack.push((c.clone(), w1));
                    stack.push((c, w2));
                    break;
                }
                None => {
                    c = &c * &take_loops(&mut w);
                    for comp in w.split_closed() {
                        c = &c * &ev.eval_closed(comp)?;
                    }
                    if !c.is_zero() {
                        out.push((c, w));
                    }
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Memoised evaluator for closed clasp-free diagrams.
#[derive(Debug, Default)]
pub struct Evaluator {
    memo: HashMap<CanonicalKey, QLaurent>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Scalar value of a closed diagram without clasps.
    pub fn eval_closed(&mut self, mut d: WebDiagram) -> Result<QLaurent, WebError> {
        if !d.is_closed() {
            return Err(WebError::NonEmptyBoundary);
        }
        let mut acc = take_loops(&mut d);
        let comps = d.closed_components();
        if comps.len() == 1 {
            return Ok(&acc * &self.eval_component(d)?);
        }
        for comp in comps {
            let sub = d.extract(&comp);
            acc = &acc * &self.eval_component(sub)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    fn eval_component(&mut self, mut d: WebDiagram) -> Result<QLaurent, WebError> {
        let mut factor = QLaurent::one();
        while let Some(f) = reducible_face(&d).filter(|f| f.len() == 2) {
            reduce_bigon(&mut d, &f);
            factor = &factor * &two();
        }
        factor = &factor * &take_loops(&mut d);
        if d.interior_nodes().next().is_none() {
            return Ok(factor);
        }
        if d.closed_components().len() > 1 {
            return Ok(&factor * &self.eval_closed(d)?);
        }
        let (key, d) = canonical_closed(&d);
        if let Some(v) = self.memo.get(&key) {
            return Ok(&factor * v);
        }
        let value = if let Some(f) = reducible_face(&d) {
            let [w1, w2] = reduce_square(&d, &f);
            &self.eval_closed(w1)? + &self.eval_closed(w2)?
        } else if let Some(n) = pick_crossing(&d) {
            let mut v = QLaurent::zero();
            for (c, w) in resolve_crossing_at(&d, n) {
                v = &v + &(&c * &self.eval_closed(w)?);
            }
            v
        } else if d.num_clasps() > 0 {
            return Err(WebError::ClaspPresent);
        } else {
            return Err(WebError::StuckDiagram);
        };
        self.memo.insert(key, value.clone());
        Ok(&factor * &value)
    }
}

/// Crossing with the most trivalent neighbours (ties: lowest id).
fn pick_crossing(d: &WebDiagram) -> Option<NodeId> {
    let mut best: Option<(usize, NodeId)> = None;
    for n in d.interior_nodes() {
        if !matches!(d.node(n).kind, NodeKind::Crossing { .. }) {
            continue;
        }
        let score = d.node(n).darts.iter().filter(|&&x| d.node(d.dart(d.twin(x)).node).kind.is_trivalent()).count();
        if best.is_none_or(|b| score > b.0) {
            best = Some((score, n));
        }
    }
    best.map(|b| b.1)
}

/// Applies the crossing relation to every crossing: 2^n crossingless terms.
pub fn resolve_crossings(w: &WebDiagram) -> Result<WebSum, WebError> {
    if w.num_clasps() > 0 {
        return Err(WebError::ClaspPresent);
    }
    let mut frontier = vec![(QLaurent::one(), w.clone())];
    loop {
        let mut next = Vec::new();
        let mut any = false;
        for (c, d) in frontier {
            let found = d.interior_nodes().find(|&n| matches!(d.node(n).kind, NodeKind::Crossing { .. }));
            match found {
                Some(n) => {
                    any = true;
                    for (k, w) in resolve_crossing_at(&d, n) {
                        next.push((&c * &k, w));
                    }
                }
                None => next.push((c, d)),
            }
        }
        frontier = next;
        if !any {
            break;
        }
    }
    let mut out = WebSum::new();
    for (c, d) in frontier {
        out.add_term(d, QRational::from(c));
    }
    Ok(out)
}

/// Reduces every term to basis webs and merges like terms.
pub fn reduce_to_basis(s: &WebSum) -> Result<WebSum, WebError> {
    reduce_to_basis_with(s, &mut Evaluator::new())
}

pub fn reduce_to_basis_with(s: &WebSum, ev: &mut Evaluator) -> Result<WebSum, WebError> {
    let mut out = WebSum::new();
    for (_, d, c) in s.iter() {
        if d.num_crossings() > 0 {
            return Err(WebError::CrossingPresent);
        }
        if d.num_clasps() > 0 {
            return Err(WebError::ClaspPresent);
        }
        for (k, w) in reduce_diagram(d.clone(), ev)? {
            out.add_term(w, c * &QRational::from(k));
        }
    }
    Ok(out)
}

/// Face reduction with a caller-chosen face order, used to test confluence.
pub fn reduce_with_order(
    d: WebDiagram,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<Vec<(QLaurent, WebDiagram)>, WebError> {
    let mut out = Vec::new();
    let mut stack = vec![(QLaurent::one(), d)];
    while let Some((mut c, mut w)) = stack.pop() {
        c = &c * &take_loops(&mut w);
        let faces: Vec<Vec<DartId>> = w
            .faces()
            .into_iter()
            .filter(|f| {
                (f.len() == 2 || f.len() == 4) && {
                    let mut cs: Vec<NodeId> = f.iter().map(|&x| w.dart(x).node).collect();
                    let ok = cs.iter().all(|&n| n != 0 && w.node(n).kind.is_trivalent());
                    cs.sort_unstable();
                    cs.dedup();
                    ok && cs.len() == f.len()
                }
            })
            .collect();
        if faces.is_empty() {
            if w.interior_nodes().next().is_some() && w.is_closed() {
                return Err(WebError::StuckDiagram);
            }
            if w.closed_components().is_empty() {
                out.push((c, w));
            } else {
                // closed pieces left over with no small face cannot happen for valid webs
                return Err(WebError::StuckDiagram);
            }
            continue;
        }
        let f = &faces[pick(faces.len()) % faces.len()];
        if f.len() == 2 {
            reduce_bigon(&mut w, f);
            stack.push((&c * &two(), w));
        } else {
            let [w1, w2] = reduce_square(&w, f);
            stack.push((c.clone(), w1));
            stack.push((c, w2));
        }
    }
    Ok(out)
}

/// Exact value of a closed diagram that may contain clasps and crossings:
/// clasps are expanded, then every term is evaluated by skein reduction.
pub fn evaluate_closed(w: &WebDiagram) -> Result<QRational, WebError> {
    evaluate_closed_with(w, &mut Evaluator::new())
}

pub fn evaluate_closed_with(w: &WebDiagram, ev: &mut Evaluator) -> Result<QRational, WebError> {
    if !w.is_closed() {
        return Err(WebError::NonEmptyBoundary);
    }
    let (den, frontier) = expand_clasps(w);
    let mut total = QLaurent::zero();
    for (c, d) in frontier {
        total = &total + &(&c * &ev.eval_closed(d)?);
    }
    Ok(QRational::new(total, den).expect("nonzero denominator"))
}

/// Substitutes every clasp by its expansion: `terms / den`.
fn expand_clasps(w: &WebDiagram) -> (QLaurent, Vec<(QLaurent, WebDiagram)>) {
    let clasps: Vec<NodeId> =
        w.interior_nodes().filter(|&n| matches!(w.node(n).kind, NodeKind::Clasp { .. })).collect();
    let mut den = QLaurent::one();
    let mut frontier = vec![(QLaurent::one(), w.clone())];
    for n in clasps {
        let (a, b) = match w.node(n).kind {
            NodeKind::Clasp { a, b } => (a, b),
            _ => unreachable!(),
        };
        let ct = super::clasp::clasp_terms(a, b);
        den = &den * &ct.den;
        let mut next = Vec::with_capacity(frontier.len() * ct.terms.len());
        for (c, d) in &frontier {
            for (e, ec) in &ct.terms {
                let mut g = d.clone();
                g.replace_node(n, e);
                next.push((c * ec, g));
            }
        }
        frontier = next;
    }
    (den, frontier)
}

/// Any diagram, open or closed, as a combination of basis webs: clasps are
/// substituted, then crossings resolved, then faces reduced.
pub fn evaluate_open(w: &WebDiagram) -> Result<WebSum, WebError> {
    let (den, frontier) = expand_clasps(w);
    let den = QRational::new(QLaurent::one(), den).expect("nonzero denominator");
    let mut ev = Evaluator::new();
    let mut out = WebSum::new();
    for (c, d) in frontier {
        let r = reduce_to_basis_with(&resolve_crossings(&d)?, &mut ev)?;
        out.add_all(&r.scale(&(&QRational::from(c) * &den)));
    }
    Ok(out)
}
