//! Canonical labelling of rotation systems.
//!
//! A breadth-first traversal from a root records, for every node, its kind
//! and for every dart the direction, the label of the neighbour and the
//! position of the twin. Trivalent nodes have no preferred dart, so their
//! positions are taken relative to the dart through which they were first
//! reached; boundary, crossing and clasp nodes carry their own frame.

use std::cmp::Ordering;
use std::collections::VecDeque;

use super::diagram::{Dart, DartId, Node, NodeId, NodeKind, WebDiagram};

/// Code sequence identifying a diagram up to boundary-fixing isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Box<[u32]>);

impl CanonicalKey {
    /// Little-endian byte rendering of the code.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_le_bytes()).collect()
    }
}

fn kind_code(k: NodeKind, out: &mut Vec<u32>) {
    match k {
        NodeKind::Boundary => out.push(0),
        NodeKind::Sink => out.push(1),
        NodeKind::Source => out.push(2),
        NodeKind::Crossing { positive: true } => out.push(3),
        NodeKind::Crossing { positive: false } => out.push(4),
        NodeKind::Clasp { a, b } => out.extend([5, a, b]),
    }
}

fn fixed_frame(k: NodeKind) -> bool {
    !k.is_trivalent()
}

struct Traversal {
    code: Vec<u32>,
    /// nodes in label order with the rotation offset used as their frame
    order: Vec<(NodeId, usize)>,
}

/// Runs the traversal from `root` entered at rotation position `entry`.
/// Aborts (returning None) as soon as the code exceeds `bound`.
fn traverse(d: &WebDiagram, pos: &[usize], root: NodeId, entry: usize, bound: Option<&[u32]>) -> Option<Traversal> {
    let mut label = vec![u32::MAX; d.nodes.len()];
    let mut frame = vec![0usize; d.nodes.len()];
    let mut order = Vec::new();
    let mut code: Vec<u32> = Vec::new();
    let mut tight = bound.is_some();
    let mut checked = 0usize;
    let mut queue = VecDeque::new();
    let root_kind = d.node(root).kind;
    label[root] = 0;
    frame[root] = if fixed_frame(root_kind) { 0 } else { entry };
    queue.push_back(root);
    let mut next_label = 1u32;
    code.push(d.loops);
    while let Some(n) = queue.pop_front() {
        let node = d.node(n);
        order.push((n, frame[n]));
        kind_code(node.kind, &mut code);
        let deg = node.darts.len();
        if node.kind == NodeKind::Boundary {
            code.push(deg as u32);
        }
        for k in 0..deg {
            let dart = node.darts[(frame[n] + k) % deg];
            let t = d.twin(dart);
            let m = d.dart(t).node;
            let pt = pos[t];
            if label[m] == u32::MAX {
                label[m] = next_label;
                next_label += 1;
                frame[m] = if fixed_frame(d.node(m).kind) { 0 } else { pt };
                queue.push_back(m);
            }
            let mdeg = d.node(m).darts.len();
            let rel = (pt + mdeg - frame[m]) % mdeg;
            code.extend([d.dart(dart).out as u32, label[m], rel as u32]);
        }
        if tight {
            let b = bound.unwrap();
            while checked < code.len() {
                if checked >= b.len() {
                    return None;
                }
                match code[checked].cmp(&b[checked]) {
                    Ordering::Less => {
                        tight = false;
                        break;
                    }
                    Ordering::Greater => return None,
                    Ordering::Equal => checked += 1,
                }
            }
        }
    }
    Some(Traversal { code, order })
}

/// Rebuilds `d` with nodes and darts numbered in traversal order.
fn relabel(d: &WebDiagram, order: &[(NodeId, usize)], with_boundary: bool) -> WebDiagram {
    let mut nodes: Vec<Option<Node>> = Vec::with_capacity(order.len() + 1);
    let mut dmap = vec![usize::MAX; d.darts.len()];
    let mut nmap = vec![usize::MAX; d.nodes.len()];
    let mut next = 0usize;
    if !with_boundary {
        nodes.push(Some(Node { kind: NodeKind::Boundary, darts: Vec::new() }));
    }
    for &(n, f) in order {
        nmap[n] = nodes.len();
        let rot = &d.node(n).darts;
        let deg = rot.len();
        let darts: Vec<DartId> = (0..deg)
            .map(|k| {
                dmap[rot[(f + k) % deg]] = next;
                next += 1;
                next - 1
            })
            .collect();
        nodes.push(Some(Node { kind: d.node(n).kind, darts }));
    }
    let mut darts = vec![None; next];
    for &(n, _) in order {
        for &old in &d.node(n).darts {
            let od = d.dart(old);
            darts[dmap[old]] = Some(Dart { node: nmap[n], twin: dmap[od.twin], out: od.out });
        }
    }
    WebDiagram { nodes, darts, loops: d.loops }
}

/// Canonical key and relabelled copy of a diagram. Components that do not
/// touch the boundary are keyed separately and listed after the rest in
/// key order, so their placement among the faces is forgotten.
pub fn canonical_form(d: &WebDiagram) -> (CanonicalKey, WebDiagram) {
    let pos = d.positions();
    let t = traverse(d, &pos, 0, 0, None).expect("unbounded traversal");
    if t.order.len() == d.live_nodes().count() {
        let relabeled = relabel(d, &t.order, true);
        return (CanonicalKey(t.code.into_boxed_slice()), relabeled);
    }
    let mut main = d.clone();
    let comps = main.split_closed();
    let (key, mut out) = canonical_form(&main);
    let mut parts: Vec<(CanonicalKey, WebDiagram)> = comps.iter().map(canonical_closed).collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut code = key.0.into_vec();
    for (k, c) in &parts {
        code.push(u32::MAX - 1);
        code.extend(k.0.iter());
        out.import(c);
    }
    (CanonicalKey(code.into_boxed_slice()), out)
}

/// Canonical key of a connected closed diagram (empty boundary), minimised
/// over an isomorphism-invariant set of roots.
pub fn canonical_closed(d: &WebDiagram) -> (CanonicalKey, WebDiagram) {
    let interior: Vec<NodeId> = d.interior_nodes().collect();
    if interior.is_empty() {
        return canonical_form(d);
    }
    // root candidates: nodes of the rarest kind
    let mut counts: Vec<(NodeKind, usize)> = Vec::new();
    for &n in &interior {
        let k = d.node(n).kind;
        match counts.iter_mut().find(|c| c.0 == k) {
            Some(c) => c.1 += 1,
            None => counts.push((k, 1)),
        }
    }
    counts.sort_by_key(|&(k, c)| (c, k));
    let rare = counts[0].0;
    let pos = d.positions();
    let mut best: Option<Traversal> = None;
    for &n in interior.iter().filter(|&&n| d.node(n).kind == rare) {
        let entries = if fixed_frame(rare) { 1 } else { d.node(n).darts.len() };
        for e in 0..entries {
            let bound = best.as_ref().map(|b| b.code.as_slice());
            if let Some(t) = traverse(d, &pos, n, e, bound) {
                if best.as_ref().is_none_or(|b| t.code < b.code) {
                    best = Some(t);
                }
            }
        }
    }
    let t = best.expect("at least one root");
    debug_assert_eq!(t.order.len(), interior.len(), "diagram is not connected");
    let relabeled = relabel(d, &t.order, false);
    let mut code = vec![u32::MAX];
    code.extend(t.code);
    (CanonicalKey(code.into_boxed_slice()), relabeled)
}
