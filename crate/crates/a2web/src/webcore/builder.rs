//! Tangles assembled from elementary pieces stacked bottom to top.
//!
//! A tangle lives in a rectangle: its ends sit on the bottom and top edges,
//! each marked Up or Down by the direction the strand travels. The boundary
//! rotation of a built diagram lists the bottom ends left to right and then
//! the top ends right to left.

use super::diagram::{DartId, NodeKind, WebDiagram};
use super::WebError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

/// One layer of a tangle, acting on the top ends starting at index `at`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    /// Ends `at`, `at+1` cross; the strand from bottom left to top right is
    /// over iff `over_left`.
    Cross { at: usize, over_left: bool },
    /// Two ends with the same direction meet at a trivalent vertex.
    Merge { at: usize },
    /// One end splits into two at a trivalent vertex.
    Split { at: usize },
    /// New pair of ends; the left one points up iff `left_up`.
    Cup { at: usize, left_up: bool },
    /// Joins two oppositely directed ends.
    Cap { at: usize },
    /// H-web on two oppositely directed ends: both directions are reversed.
    HSwap { at: usize },
    /// Clasp on `a` Up ends followed by `b` Down ends.
    Clasp { at: usize, a: u32, b: u32 },
}

impl Op {
    pub fn at(&self) -> usize {
        match *self {
            Op::Cross { at, .. }
            | Op::Merge { at }
            | Op::Split { at }
            | Op::Cup { at, .. }
            | Op::Cap { at }
            | Op::HSwap { at }
            | Op::Clasp { at, .. } => at,
        }
    }

    pub fn shifted(&self, k: usize) -> Op {
        let mut o = *self;
        match &mut o {
            Op::Cross { at, .. }
            | Op::Merge { at }
            | Op::Split { at }
            | Op::Cup { at, .. }
            | Op::Cap { at }
            | Op::HSwap { at }
            | Op::Clasp { at, .. } => *at += k,
        }
        o
    }

    /// Number of ends consumed from below.
    pub fn width(&self) -> usize {
        match *self {
            Op::Cross { .. } | Op::Merge { .. } | Op::Cap { .. } | Op::HSwap { .. } => 2,
            Op::Split { .. } => 1,
            Op::Cup { .. } => 0,
            Op::Clasp { a, b, .. } => (a + b) as usize,
        }
    }

    /// Directions of the ends produced, given those consumed.
    pub fn apply(&self, input: &[Dir]) -> Result<Vec<Dir>, WebError> {
        let err = |m: &str| Err(WebError::Build(format!("{:?}: {}", self, m)));
        match *self {
            Op::Cross { .. } => Ok(vec![input[1], input[0]]),
            Op::Merge { .. } => {
                if input[0] != input[1] {
                    return err("merge needs equal directions");
                }
                Ok(vec![input[0].flip()])
            }
            Op::Split { .. } => Ok(vec![input[0].flip(); 2]),
            Op::Cup { left_up, .. } => Ok(if left_up { vec![Dir::Up, Dir::Down] } else { vec![Dir::Down, Dir::Up] }),
            Op::Cap { .. } => {
                if input[0] == input[1] {
                    return err("cap needs opposite directions");
                }
                Ok(Vec::new())
            }
            Op::HSwap { .. } => {
                if input[0] == input[1] {
                    return err("H-web needs opposite directions");
                }
                Ok(vec![input[1], input[0]])
            }
            Op::Clasp { a, b, .. } => {
                let (a, b) = (a as usize, b as usize);
                if input[..a].iter().any(|&d| d != Dir::Up) || input[a..a + b].iter().any(|&d| d != Dir::Down) {
                    return err("clasp needs a Up ends then b Down ends");
                }
                Ok(input.to_vec())
            }
        }
    }
}

/// Boundary dart flag for an end: `out` when the edge points into the disk.
fn end_out(dir: Dir, top: bool) -> bool {
    (dir == Dir::Up) != top
}

/// Empty disk with the given bottom and top ends; returns the diagram and
/// the boundary darts (bottom left to right, top left to right).
fn frame(bottom: &[Dir], top: &[Dir]) -> (WebDiagram, Vec<DartId>, Vec<DartId>) {
    let mut d = WebDiagram::empty();
    let b: Vec<DartId> = bottom.iter().map(|&x| d.add_dart(0, end_out(x, false))).collect();
    let t: Vec<DartId> = top.iter().map(|&x| d.add_dart(0, end_out(x, true))).collect();
    let mut rot = b.clone();
    rot.extend(t.iter().rev());
    d.node_mut(0).darts = rot;
    (d, b, t)
}

/// Joins boundary dart `b` to a new dart of node `n`.
fn attach(d: &mut WebDiagram, n: usize, b: DartId) -> DartId {
    let out = !d.dart(b).out;
    let x = d.add_dart(n, out);
    d.link(b, x);
    x
}

/// The single-layer diagram of `op` on ends with directions `input`.
pub fn elementary(op: &Op, input: &[Dir]) -> Result<WebDiagram, WebError> {
    let output = op.apply(input)?;
    let (mut d, b, t) = frame(input, &output);
    match *op {
        Op::Cross { over_left, .. } => {
            let n = d.add_node(NodeKind::Crossing { positive: true });
            // geometric counterclockwise order [BL, BR, TR, TL]; strand L is BL-TR
            let geo = [attach(&mut d, n, b[0]), attach(&mut d, n, b[1]), attach(&mut d, n, t[1]), attach(&mut d, n, t[0])];
            let start = (0..4).find(|&i| !d.dart(geo[i]).out && !d.dart(geo[(i + 1) % 4]).out).expect("two incoming");
            let rot: Vec<DartId> = (0..4).map(|k| geo[(start + k) % 4]).collect();
            let first_is_left = start % 2 == 0;
            d.node_mut(n).darts = rot;
            d.node_mut(n).kind = NodeKind::Crossing { positive: first_is_left == over_left };
        }
        Op::Merge { .. } => {
            let kind = if input[0] == Dir::Up { NodeKind::Sink } else { NodeKind::Source };
            let n = d.add_node(kind);
            attach(&mut d, n, b[0]);
            attach(&mut d, n, b[1]);
            attach(&mut d, n, t[0]);
        }
        Op::Split { .. } => {
            let kind = if input[0] == Dir::Up { NodeKind::Sink } else { NodeKind::Source };
            let n = d.add_node(kind);
            attach(&mut d, n, b[0]);
            attach(&mut d, n, t[1]);
            attach(&mut d, n, t[0]);
        }
        Op::Cup { .. } => d.link(t[0], t[1]),
        Op::Cap { .. } => d.link(b[0], b[1]),
        Op::HSwap { .. } => {
            let (lk, rk) = if input[0] == Dir::Up {
                (NodeKind::Sink, NodeKind::Source)
            } else {
                (NodeKind::Source, NodeKind::Sink)
            };
            let l = d.add_node(lk);
            let r = d.add_node(rk);
            attach(&mut d, l, b[0]);
            let bl = d.add_dart(l, lk == NodeKind::Source);
            attach(&mut d, l, t[0]);
            attach(&mut d, r, t[1]);
            let br = d.add_dart(r, rk == NodeKind::Source);
            attach(&mut d, r, b[1]);
            d.link(bl, br);
        }
        Op::Clasp { a, b: bb, .. } => {
            let n = d.add_node(NodeKind::Clasp { a, b: bb });
            let w = (a + bb) as usize;
            for &x in &b {
                attach(&mut d, n, x);
            }
            for i in (0..w).rev() {
                attach(&mut d, n, t[i]);
            }
        }
    }
    Ok(d)
}

/// Identity tangle on the given ends.
pub fn identity(dirs: &[Dir]) -> WebDiagram {
    let (mut d, b, t) = frame(dirs, dirs);
    for (x, y) in b.into_iter().zip(t) {
        d.link(x, y);
    }
    d
}

/// A tangle as a bottom row of ends and a list of layers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Program {
    pub bottom: Vec<Dir>,
    pub ops: Vec<Op>,
}

impl Program {
    pub fn new(bottom: Vec<Dir>) -> Self {
        Program { bottom, ops: Vec::new() }
    }

    /// Top end directions, checking every layer.
    pub fn top(&self) -> Result<Vec<Dir>, WebError> {
        let mut dirs = self.bottom.clone();
        for op in &self.ops {
            dirs = step(&dirs, op)?;
        }
        Ok(dirs)
    }

    /// `self` followed by `other` (whose bottom must match our top).
    pub fn then(&self, other: &Program) -> Result<Program, WebError> {
        if self.top()? != other.bottom {
            return Err(WebError::Build("composition with mismatched ends".into()));
        }
        let mut p = self.clone();
        p.ops.extend_from_slice(&other.ops);
        Ok(p)
    }

    /// Builds the diagram layer by layer.
    pub fn materialize(&self) -> Result<WebDiagram, WebError> {
        let nb = self.bottom.len();
        let mut d = identity(&self.bottom);
        // bottom ends were doubled by the identity: keep the bottom row and glue on top
        let mut dirs = self.bottom.clone();
        for op in &self.ops {
            let at = op.at();
            let w = op.width();
            let e = elementary(op, &dirs[at..at + w])?;
            d.glue_top(nb, at, w, &e, w);
            dirs = step(&dirs, op)?;
        }
        Ok(d)
    }

    /// Closes the tangle by running every strand around the left side.
    pub fn closure(&self) -> Result<Program, WebError> {
        let top = self.top()?;
        if top != self.bottom {
            return Err(WebError::Build("closure needs matching bottom and top ends".into()));
        }
        let w = self.bottom.len();
        let mut p = Program::new(Vec::new());
        for j in 0..w {
            p.ops.push(Op::Cup { at: j, left_up: self.bottom[w - 1 - j] == Dir::Down });
        }
        p.ops.extend(self.ops.iter().map(|o| o.shifted(w)));
        for j in 0..w {
            p.ops.push(Op::Cap { at: w - 1 - j });
        }
        Ok(p)
    }
}

pub(crate) fn step(dirs: &[Dir], op: &Op) -> Result<Vec<Dir>, WebError> {
    let at = op.at();
    let w = op.width();
    if at + w > dirs.len() || (w == 0 && at > dirs.len()) {
        return Err(WebError::Build(format!("{:?} out of range for {} ends", op, dirs.len())));
    }
    let mut out = dirs[..at].to_vec();
    out.extend(op.apply(&dirs[at..at + w])?);
    out.extend_from_slice(&dirs[at + w..]);
    Ok(out)
}

/// Program under construction; every layer is checked as it is added.
#[derive(Debug, Clone)]
pub struct TangleBuilder {
    prog: Program,
    dirs: Vec<Dir>,
}

impl TangleBuilder {
    pub fn new(bottom: &[Dir]) -> Self {
        TangleBuilder { prog: Program::new(bottom.to_vec()), dirs: bottom.to_vec() }
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }

    pub fn program(&self) -> &Program {
        &self.prog
    }

    pub fn finish(self) -> Program {
        self.prog
    }

    pub fn op(&mut self, op: Op) -> Result<&mut Self, WebError> {
        self.dirs = step(&self.dirs, &op)?;
        self.prog.ops.push(op);
        Ok(self)
    }

    pub fn cross(&mut self, at: usize, over_left: bool) -> Result<&mut Self, WebError> {
        self.op(Op::Cross { at, over_left })
    }

    pub fn merge(&mut self, at: usize) -> Result<&mut Self, WebError> {
        self.op(Op::Merge { at })
    }

    pub fn split(&mut self, at: usize) -> Result<&mut Self, WebError> {
        self.op(Op::Split { at })
    }

    pub fn cup(&mut self, at: usize, left_up: bool) -> Result<&mut Self, WebError> {
        self.op(Op::Cup { at, left_up })
    }

    pub fn cap(&mut self, at: usize) -> Result<&mut Self, WebError> {
        self.op(Op::Cap { at })
    }

    pub fn hswap(&mut self, at: usize) -> Result<&mut Self, WebError> {
        self.op(Op::HSwap { at })
    }

    /// Clasp on `a + b` ends at `at`; a no-op for fewer than two ends.
    pub fn clasp(&mut self, at: usize, a: u32, b: u32) -> Result<&mut Self, WebError> {
        if a + b <= 1 {
            // still check the directions
            step(&self.dirs, &Op::Clasp { at, a, b })?;
            return Ok(self);
        }
        self.op(Op::Clasp { at, a, b })
    }

    /// Clasp on a bundle of `n` ends with a common direction.
    pub fn bundle_clasp(&mut self, at: usize, n: u32) -> Result<&mut Self, WebError> {
        if n == 0 {
            return Ok(self);
        }
        match self.dirs.get(at) {
            Some(Dir::Up) => self.clasp(at, n, 0),
            Some(Dir::Down) => self.clasp(at, 0, n),
            None => Err(WebError::Build(format!("no end at {}", at))),
        }
    }

    /// The `p` ends at `i` cross over (or under) the `n` ends to their right.
    pub fn bundle_cross(&mut self, i: usize, p: usize, n: usize, over_left: bool) -> Result<&mut Self, WebError> {
        for a in (0..p).rev() {
            for b in 0..n {
                self.cross(i + a + b, over_left)?;
            }
        }
        Ok(self)
    }

    /// Moves the `p` ends at `i` past the `n` ends to their right through
    /// H-webs; the two bundles must be oppositely directed.
    pub fn hstair(&mut self, i: usize, p: usize, n: usize) -> Result<&mut Self, WebError> {
        for a in (0..p).rev() {
            for b in 0..n {
                self.hswap(i + a + b)?;
            }
        }
        Ok(self)
    }

    /// Two n-bundles at `p` with equal direction merge into one reversed
    /// n-bundle.
    pub fn triangle_merge(&mut self, p: usize, n: usize) -> Result<&mut Self, WebError> {
        if n == 0 {
            return Ok(self);
        }
        self.merge(p + n - 1)?;
        if n > 1 {
            for j in (p + n - 1)..=(p + 2 * n - 3) {
                self.hswap(j)?;
            }
            self.triangle_merge(p, n - 1)?;
        }
        Ok(self)
    }

    /// Mirror image of `triangle_merge`: an n-bundle at `p` splits into two.
    pub fn triangle_split(&mut self, p: usize, n: usize) -> Result<&mut Self, WebError> {
        if n == 0 {
            return Ok(self);
        }
        if n > 1 {
            self.triangle_split(p, n - 1)?;
            for j in ((p + n - 1)..=(p + 2 * n - 3)).rev() {
                self.hswap(j)?;
            }
        }
        self.split(p + n - 1)?;
        Ok(self)
    }
}

/// Stair-step web: `n` upward strands passing `m` downward strands through
/// H-webs.
pub fn make_stairstep(n: usize, m: usize) -> Result<WebDiagram, WebError> {
    if n == 0 || m == 0 {
        return Err(WebError::Build("stair-step needs n, m >= 1".into()));
    }
    let mut bottom = vec![Dir::Up; n];
    bottom.extend(vec![Dir::Down; m]);
    let mut b = TangleBuilder::new(&bottom);
    b.hstair(0, n, m)?;
    b.finish().materialize()
}

/// Triangle web: two upward n-bundles merging into one downward n-bundle.
pub fn make_triangle(n: usize) -> Result<WebDiagram, WebError> {
    if n == 0 {
        return Err(WebError::Build("triangle needs n >= 1".into()));
    }
    let mut b = TangleBuilder::new(&vec![Dir::Up; 2 * n]);
    b.triangle_merge(0, n)?;
    b.finish().materialize()
}
