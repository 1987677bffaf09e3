//! Planar maps with boundary: darts, rotation system, faces and splicing.

use std::collections::{HashMap, HashSet, VecDeque};

use super::WebError;

pub type NodeId = usize;
pub type DartId = usize;

/// Node 0 of every diagram is the boundary circle of the disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Boundary,
    /// Three incoming edges.
    Sink,
    /// Three outgoing edges.
    Source,
    /// Darts stored as [in, in, out, out] counterclockwise; the strand through
    /// darts 0 and 2 is over exactly when the crossing is positive.
    Crossing { positive: bool },
    /// Darts: bottom a ins, bottom b outs (left to right), then top b ins and
    /// top a outs (right to left).
    Clasp { a: u32, b: u32 },
}

impl NodeKind {
    pub fn is_trivalent(self) -> bool {
        matches!(self, NodeKind::Sink | NodeKind::Source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    /// Counterclockwise as seen from inside the disk (for the boundary too).
    pub darts: Vec<DartId>,
}

/// Half-edge. `out` is true when the edge points away from `node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dart {
    pub node: NodeId,
    pub twin: DartId,
    pub out: bool,
}

/// A directed planar graph in a disk given by a rotation system.
///
/// Closed oriented circles carrying no vertex are kept as a count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebDiagram {
    pub(crate) nodes: Vec<Option<Node>>,
    pub(crate) darts: Vec<Option<Dart>>,
    pub(crate) loops: u32,
}

pub(crate) const PENDING: NodeId = usize::MAX;

impl Default for WebDiagram {
    fn default() -> Self {
        Self::empty()
    }
}

impl WebDiagram {
    /// The empty diagram (boundary with no points).
    pub fn empty() -> Self {
        WebDiagram { nodes: vec![Some(Node { kind: NodeKind::Boundary, darts: Vec::new() })], darts: Vec::new(), loops: 0 }
    }

    pub fn node(&self, n: NodeId) -> &Node {
        self.nodes[n].as_ref().expect("dead node")
    }

    pub(crate) fn node_mut(&mut self, n: NodeId) -> &mut Node {
        self.nodes[n].as_mut().expect("dead node")
    }

    pub fn dart(&self, d: DartId) -> Dart {
        self.darts[d].expect("dead dart")
    }

    pub(crate) fn dart_mut(&mut self, d: DartId) -> &mut Dart {
        self.darts[d].as_mut().expect("dead dart")
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.dart(d).twin
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn set_loops(&mut self, n: u32) {
        self.loops = n;
    }

    pub fn boundary(&self) -> &[DartId] {
        &self.node(0).darts
    }

    /// Boundary signs in order: `+` (true) where the strand leaves the disk.
    pub fn boundary_signs(&self) -> Vec<bool> {
        self.boundary().iter().map(|&d| !self.dart(d).out).collect()
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| n.is_some()).map(|(i, _)| i)
    }

    pub fn live_darts(&self) -> impl Iterator<Item = DartId> + '_ {
        self.darts.iter().enumerate().filter(|(_, d)| d.is_some()).map(|(i, _)| i)
    }

    /// Interior nodes (everything except the boundary).
    pub fn interior_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.live_nodes().filter(|&n| n != 0)
    }

    pub fn count_kind(&self, pred: impl Fn(NodeKind) -> bool) -> usize {
        self.interior_nodes().filter(|&n| pred(self.node(n).kind)).count()
    }

    pub fn num_crossings(&self) -> usize {
        self.count_kind(|k| matches!(k, NodeKind::Crossing { .. }))
    }

    pub fn num_clasps(&self) -> usize {
        self.count_kind(|k| matches!(k, NodeKind::Clasp { .. }))
    }

    pub fn num_vertices(&self) -> usize {
        self.count_kind(NodeKind::is_trivalent)
    }

    /// Edges, counting each free circle as one.
    pub fn num_edges(&self) -> usize {
        self.live_darts().count() / 2 + self.loops as usize
    }

    pub fn is_closed(&self) -> bool {
        self.boundary().is_empty()
    }

    /// True when nothing but the boundary (and no loops) remains.
    pub fn is_trivial(&self) -> bool {
        self.loops == 0 && self.interior_nodes().next().is_none() && self.boundary().is_empty()
    }

    pub(crate) fn add_node(&mut self, kind: NodeKind) -> NodeId {
        self.nodes.push(Some(Node { kind, darts: Vec::new() }));
        self.nodes.len() - 1
    }

    /// Adds a dart at `node` (appended to its rotation unless PENDING).
    pub(crate) fn add_dart(&mut self, node: NodeId, out: bool) -> DartId {
        let id = self.darts.len();
        self.darts.push(Some(Dart { node, twin: id, out }));
        if node != PENDING {
            self.node_mut(node).darts.push(id);
        }
        id
    }

    pub(crate) fn link(&mut self, a: DartId, b: DartId) {
        self.dart_mut(a).twin = b;
        self.dart_mut(b).twin = a;
    }

    /// Position of each live dart in its node's rotation.
    pub(crate) fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.darts.len()];
        for n in self.live_nodes() {
            for (i, &d) in self.node(n).darts.iter().enumerate() {
                pos[d] = i;
            }
        }
        pos
    }

    /// Next dart counterclockwise around its node, as seen on the sphere
    /// (the boundary node's order is reversed).
    fn sigma(&self, d: DartId, pos: &[usize]) -> DartId {
        let n = self.dart(d).node;
        let rot = &self.node(n).darts;
        let k = rot.len();
        let p = pos[d];
        if n == 0 {
            rot[(p + k - 1) % k]
        } else {
            rot[(p + 1) % k]
        }
    }

    /// Face boundaries as dart cycles: each dart d is followed by the next
    /// dart around the head of d.
    pub fn faces(&self) -> Vec<Vec<DartId>> {
        let pos = self.positions();
        let mut seen = vec![false; self.darts.len()];
        let mut faces = Vec::new();
        for d0 in self.live_darts() {
            if seen[d0] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = d0;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.sigma(self.twin(d), &pos);
            }
            faces.push(face);
        }
        faces
    }

    /// Connected components of interior nodes not attached to the boundary.
    pub(crate) fn closed_components(&self) -> Vec<Vec<NodeId>> {
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut out: Vec<Vec<NodeId>> = Vec::new();
        let mark = |start: NodeId, id: usize, comp: &mut Vec<usize>| -> Vec<NodeId> {
            let mut q = VecDeque::from([start]);
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(n) = q.pop_front() {
                members.push(n);
                for &d in &self.node(n).darts {
                    let m = self.dart(self.twin(d)).node;
                    if comp[m] == usize::MAX {
                        comp[m] = id;
                        q.push_back(m);
                    }
                }
            }
            members
        };
        mark(0, 0, &mut comp);
        for n in self.interior_nodes() {
            if comp[n] == usize::MAX {
                let id = out.len() + 1;
                out.push(mark(n, id, &mut comp));
            }
        }
        out
    }

    /// Moves the listed nodes (a union of closed components) into a new
    /// closed diagram.
    pub(crate) fn extract(&mut self, nodes: &[NodeId]) -> WebDiagram {
        let mut sub = WebDiagram::empty();
        let mut dmap: HashMap<DartId, DartId> = HashMap::new();
        for &n in nodes {
            let nn = sub.add_node(self.node(n).kind);
            for d in self.node(n).darts.clone() {
                let nd = sub.add_dart(nn, self.dart(d).out);
                dmap.insert(d, nd);
            }
        }
        for (&old, &new) in &dmap {
            let t = self.dart(old).twin;
            sub.dart_mut(new).twin = dmap[&t];
        }
        for &n in nodes {
            self.drop_node(n);
        }
        sub
    }

    /// Splits off every component that does not touch the boundary.
    pub fn split_closed(&mut self) -> Vec<WebDiagram> {
        let comps = self.closed_components();
        comps.into_iter().map(|c| self.extract(&c)).collect()
    }

    /// Deletes the `ports` and reconnects strands through them: a strand
    /// arriving at port p continues from the port paired with p. Cycles made
    /// only of ports become free loops. Returns the number of new loops.
    pub(crate) fn splice(&mut self, ports: &[DartId], pairs: &[(DartId, DartId)]) -> u32 {
        let port_set: HashSet<DartId> = ports.iter().copied().collect();
        let mut pass: HashMap<DartId, DartId> = HashMap::with_capacity(2 * pairs.len());
        for &(a, b) in pairs {
            pass.insert(a, b);
            pass.insert(b, a);
        }
        let mut visited: HashSet<DartId> = HashSet::new();
        let mut relink: Vec<(DartId, DartId)> = Vec::new();
        let mut done: HashSet<DartId> = HashSet::new();
        for &p in ports {
            let x = self.twin(p);
            if port_set.contains(&x) || done.contains(&x) {
                continue;
            }
            let mut cur = p;
            loop {
                visited.insert(cur);
                let nxt = *pass.get(&cur).unwrap_or_else(|| panic!("unpaired port {} on a strand", cur));
                visited.insert(nxt);
                let w = self.twin(nxt);
                if port_set.contains(&w) {
                    cur = w;
                } else {
                    done.insert(x);
                    done.insert(w);
                    relink.push((x, w));
                    break;
                }
            }
        }
        let mut loops = 0;
        for &(a, _) in pairs {
            if visited.contains(&a) {
                continue;
            }
            let mut cur = a;
            loop {
                visited.insert(cur);
                let nxt = pass[&cur];
                visited.insert(nxt);
                let w = self.twin(nxt);
                debug_assert!(port_set.contains(&w));
                if w == a {
                    break;
                }
                cur = w;
            }
            loops += 1;
        }
        for (x, w) in relink {
            debug_assert!(self.dart(x).out != self.dart(w).out, "direction mismatch in splice");
            self.link(x, w);
        }
        for &p in ports {
            let n = self.dart(p).node;
            self.darts[p] = None;
            if n != PENDING {
                if let Some(node) = self.nodes[n].as_mut() {
                    node.darts.retain(|&d| d != p);
                }
            }
        }
        self.loops += loops;
        loops
    }

    /// Deletes a node whose darts have all been handled by `splice`.
    pub(crate) fn drop_node(&mut self, n: NodeId) {
        if let Some(node) = self.nodes[n].take() {
            for d in node.darts {
                self.darts[d] = None;
            }
        }
    }

    /// Copies the interior of `other` into `self`. Returns the dart id map
    /// (indexed by `other` dart id); `other`'s boundary darts come in with
    /// node PENDING and are not attached anywhere.
    pub(crate) fn import(&mut self, other: &WebDiagram) -> Vec<DartId> {
        let dbase = self.darts.len();
        let mut nmap = vec![PENDING; other.nodes.len()];
        for n in other.interior_nodes() {
            nmap[n] = self.add_node(other.node(n).kind);
        }
        let mut dmap = vec![usize::MAX; other.darts.len()];
        let mut k = 0;
        for d in other.live_darts() {
            dmap[d] = dbase + k;
            k += 1;
        }
        for d in other.live_darts() {
            let od = other.dart(d);
            self.darts.push(Some(Dart { node: nmap[od.node], twin: dmap[od.twin], out: od.out }));
        }
        for n in other.interior_nodes() {
            let darts = other.node(n).darts.iter().map(|&d| dmap[d]).collect();
            self.node_mut(nmap[n]).darts = darts;
        }
        self.loops += other.loops;
        dmap
    }

    /// Top ends left to right, for a boundary laid out as
    /// [bottom left-to-right, top right-to-left].
    pub(crate) fn top_ends(&self, n_bottom: usize) -> Vec<DartId> {
        self.boundary()[n_bottom..].iter().rev().copied().collect()
    }

    /// Stacks `elem` on top of the `width` top ends starting at `at`. Both
    /// diagrams use the [bottom, reversed top] boundary layout.
    pub(crate) fn glue_top(&mut self, n_bottom: usize, at: usize, width: usize, elem: &WebDiagram, elem_bottom: usize) {
        assert_eq!(width, elem_bottom, "glue width mismatch");
        let top = self.top_ends(n_bottom);
        let bottom: Vec<DartId> = self.boundary()[..n_bottom].to_vec();
        let window = &top[at..at + width];
        let dmap = self.import(elem);
        let eb = elem.boundary();
        let e_bottom: Vec<DartId> = eb[..elem_bottom].iter().map(|&d| dmap[d]).collect();
        let e_top: Vec<DartId> = eb[elem_bottom..].iter().rev().map(|&d| dmap[d]).collect();
        for &d in &e_top {
            self.dart_mut(d).node = 0;
        }
        let mut new_top: Vec<DartId> = top[..at].to_vec();
        new_top.extend_from_slice(&e_top);
        new_top.extend_from_slice(&top[at + width..]);
        let mut rot = bottom;
        rot.extend(new_top.iter().rev());
        let ports: Vec<DartId> = window.iter().chain(e_bottom.iter()).copied().collect();
        let pairs: Vec<(DartId, DartId)> = window.iter().copied().zip(e_bottom.iter().copied()).collect();
        self.node_mut(0).darts = rot;
        // the window darts are no longer listed at the boundary
        for &p in window {
            self.dart_mut(p).node = PENDING;
        }
        self.splice(&ports, &pairs);
    }

    /// Replaces an interior node by a disk diagram whose boundary points
    /// match the node's darts in order.
    pub(crate) fn replace_node(&mut self, n: NodeId, sub: &WebDiagram) {
        let cdarts = self.node(n).darts.clone();
        assert_eq!(cdarts.len(), sub.boundary().len(), "replacement arity mismatch");
        let dmap = self.import(sub);
        let sb: Vec<DartId> = sub.boundary().iter().map(|&d| dmap[d]).collect();
        let ports: Vec<DartId> = cdarts.iter().chain(sb.iter()).copied().collect();
        let pairs: Vec<(DartId, DartId)> = cdarts.iter().copied().zip(sb.iter().copied()).collect();
        self.splice(&ports, &pairs);
        self.nodes[n] = None;
    }

    /// Checks degrees, directions and planarity.
    pub fn validate(&self) -> Result<(), WebError> {
        let bad = |m: String| Err(WebError::Validation(m));
        for d in self.live_darts() {
            let dd = self.dart(d);
            let t = match self.darts.get(dd.twin).copied().flatten() {
                Some(t) => t,
                None => return bad(format!("dangling edge at dart {}", d)),
            };
            if t.twin != d {
                return bad(format!("twin mismatch at dart {}", d));
            }
            if t.out == dd.out {
                return bad(format!("edge direction mismatch at dart {}", d));
            }
            if dd.node == PENDING || self.nodes.get(dd.node).and_then(|n| n.as_ref()).is_none() {
                return bad(format!("dart {} not attached", d));
            }
        }
        for n in self.live_nodes() {
            let node = self.node(n);
            for &d in &node.darts {
                if self.dart(d).node != n {
                    return bad(format!("rotation of node {} lists foreign dart {}", n, d));
                }
            }
            let outs: Vec<bool> = node.darts.iter().map(|&d| self.dart(d).out).collect();
            match node.kind {
                NodeKind::Boundary => {}
                NodeKind::Sink | NodeKind::Source => {
                    let want = node.kind == NodeKind::Source;
                    if outs.len() != 3 || outs.iter().any(|&o| o != want) {
                        return bad(format!("vertex {} is not all-in or all-out trivalent", n));
                    }
                }
                NodeKind::Crossing { .. } => {
                    if outs != [false, false, true, true] {
                        return bad(format!("crossing {} is not in canonical [in,in,out,out] form", n));
                    }
                }
                NodeKind::Clasp { a, b } => {
                    let (a, b) = (a as usize, b as usize);
                    let mut want = vec![false; a];
                    want.extend(std::iter::repeat_n(true, b));
                    want.extend(std::iter::repeat_n(false, b));
                    want.extend(std::iter::repeat_n(true, a));
                    if outs != want {
                        return bad(format!("clasp {} has inconsistent edge directions", n));
                    }
                }
            }
        }
        self.check_planar()
    }

    /// Euler check on the sphere obtained by collapsing the boundary circle to
    /// a vertex: V - E + F = 2 for each connected component.
    fn check_planar(&self) -> Result<(), WebError> {
        let faces = self.faces();
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut ncomp = 0;
        for s in self.live_nodes() {
            if comp[s] != usize::MAX || (s == 0 && self.boundary().is_empty()) {
                continue;
            }
            let mut q = VecDeque::from([s]);
            comp[s] = ncomp;
            while let Some(n) = q.pop_front() {
                for &d in &self.node(n).darts {
                    let m = self.dart(self.twin(d)).node;
                    if comp[m] == usize::MAX {
                        comp[m] = ncomp;
                        q.push_back(m);
                    }
                }
            }
            ncomp += 1;
        }
        let mut v = vec![0i64; ncomp];
        let mut e = vec![0i64; ncomp];
        let mut f = vec![0i64; ncomp];
        for n in self.live_nodes() {
            if comp[n] != usize::MAX {
                v[comp[n]] += 1;
            }
        }
        for d in self.live_darts() {
            e[comp[self.dart(d).node]] += 1;
        }
        for face in &faces {
            f[comp[self.dart(face[0]).node]] += 1;
        }
        for c in 0..ncomp {
            if v[c] - e[c] / 2 + f[c] != 2 {
                return Err(WebError::Validation("rotation data is not planar".into()));
            }
        }
        Ok(())
    }
}
