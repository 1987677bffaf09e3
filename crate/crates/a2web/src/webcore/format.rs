//! Text format for webs. The grammar is described in docs/web-format.md.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::diagram::{DartId, NodeId, NodeKind, WebDiagram, PENDING};
use super::WebError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Boundary,
    Vertices,
    Edges,
    Rotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Point(usize),
    Node(NodeId),
}

struct Parsed {
    signs: Option<Vec<bool>>,
    /// id -> (node index, kind, crossing over edge)
    vertices: Vec<(String, NodeKind, Option<String>)>,
    vindex: HashMap<String, usize>,
    /// edge id -> (tail, head) or None for a free loop
    edges: Vec<(String, Option<(End, End)>)>,
    eindex: HashMap<String, usize>,
    rotations: HashMap<usize, Vec<(usize, Option<bool>)>>,
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, WebError> {
    Err(WebError::Parse { line, msg: msg.into() })
}

fn ident_ok(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && s.starts_with(|c: char| c.is_ascii_alphabetic())
}

fn parse_text(text: &str) -> Result<Parsed, WebError> {
    let mut p = Parsed {
        signs: None,
        vertices: Vec::new(),
        vindex: HashMap::new(),
        edges: Vec::new(),
        eindex: HashMap::new(),
        rotations: HashMap::new(),
    };
    let mut section = Section::None;
    let mut seen = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some((head, rest)) = line.split_once(':') {
            let next = match head.trim() {
                "boundary" => Some(Section::Boundary),
                "vertices" => Some(Section::Vertices),
                "edges" => Some(Section::Edges),
                "rotation" => Some(Section::Rotation),
                _ => None,
            };
            if let Some(s) = next {
                if seen.contains(&s) {
                    return perr(ln, format!("section `{}` appears twice", head.trim()));
                }
                seen.push(s);
                section = s;
                if s == Section::Boundary {
                    let mut signs = Vec::new();
                    for tok in rest.split_whitespace() {
                        match tok {
                            "+" => signs.push(true),
                            "-" => signs.push(false),
                            t => return perr(ln, format!("boundary sign must be + or -, got `{}`", t)),
                        }
                    }
                    p.signs = Some(signs);
                } else if !rest.trim().is_empty() {
                    return perr(ln, "section header takes no arguments");
                }
                continue;
            }
        }
        match section {
            Section::None => return perr(ln, "content before the first section"),
            Section::Boundary => return perr(ln, "boundary signs must be on the `boundary:` line"),
            Section::Vertices => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                let id = toks[0];
                if !ident_ok(id) || id.starts_with('p') && id[1..].chars().all(|c| c.is_ascii_digit()) {
                    return perr(ln, format!("bad vertex id `{}`", id));
                }
                if p.vindex.contains_key(id) {
                    return perr(ln, format!("duplicate vertex `{}`", id));
                }
                let (kind, over) = match toks.get(1).copied() {
                    Some("sink") if toks.len() == 2 => (NodeKind::Sink, None),
                    Some("source") if toks.len() == 2 => (NodeKind::Source, None),
                    Some("crossing") if toks.len() == 3 => match toks[2].strip_prefix("over=") {
                        Some(e) => (NodeKind::Crossing { positive: true }, Some(e.to_string())),
                        None => return perr(ln, "crossing needs `over=<edge>`"),
                    },
                    Some("clasp") if toks.len() == 4 => {
                        let a = toks[2].parse::<u32>();
                        let b = toks[3].parse::<u32>();
                        match (a, b) {
                            (Ok(a), Ok(b)) if a + b > 0 => (NodeKind::Clasp { a, b }, None),
                            _ => return perr(ln, "clasp needs two nonnegative colors, not both zero"),
                        }
                    }
                    _ => return perr(ln, format!("cannot parse vertex line `{}`", line)),
                };
                p.vindex.insert(id.to_string(), p.vertices.len());
                p.vertices.push((id.to_string(), kind, over));
            }
            Section::Edges => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                let id = toks[0];
                if !ident_ok(id) || p.eindex.contains_key(id) {
                    return perr(ln, format!("bad or duplicate edge id `{}`", id));
                }
                let ends = match toks.as_slice() {
                    [_, "loop"] => None,
                    [_, a, "->", b] => Some((end_of(&p, a, ln)?, end_of(&p, b, ln)?)),
                    _ => return perr(ln, "edge must be `<id> <from> -> <to>` or `<id> loop`"),
                };
                p.eindex.insert(id.to_string(), p.edges.len());
                p.edges.push((id.to_string(), ends));
            }
            Section::Rotation => {
                let (v, rest) = match line.split_once(':') {
                    Some(x) => x,
                    None => return perr(ln, "rotation line must be `<vertex>: <edges>`"),
                };
                let v = match p.vindex.get(v.trim()) {
                    Some(&v) => v,
                    None => return perr(ln, format!("unknown vertex `{}`", v.trim())),
                };
                if p.rotations.contains_key(&v) {
                    return perr(ln, "rotation given twice for a vertex");
                }
                let mut rot = Vec::new();
                for tok in rest.split_whitespace() {
                    let (name, side) = match tok.split_once(':') {
                        Some((n, "in")) => (n, Some(true)),
                        Some((n, "out")) => (n, Some(false)),
                        Some(_) => return perr(ln, format!("bad edge suffix in `{}`", tok)),
                        None => (tok, None),
                    };
                    match p.eindex.get(name) {
                        Some(&e) => rot.push((e, side)),
                        None => return perr(ln, format!("unknown edge `{}`", name)),
                    }
                }
                p.rotations.insert(v, rot);
            }
        }
    }
    Ok(p)
}

fn end_of(p: &Parsed, tok: &str, ln: usize) -> Result<End, WebError> {
    if let Some(num) = tok.strip_prefix('p') {
        if let Ok(i) = num.parse::<usize>() {
            return Ok(End::Point(i));
        }
    }
    match p.vindex.get(tok) {
        Some(&v) => Ok(End::Node(v)),
        None => perr(ln, format!("unknown endpoint `{}` (vertices must be declared first)", tok)),
    }
}

/// Parses and validates a web description.
pub fn build_web(text: &str) -> Result<WebDiagram, WebError> {
    let p = parse_text(text)?;
    let signs = p.signs.clone().ok_or(WebError::Parse { line: 0, msg: "missing `boundary:` section".into() })?;
    let bad = |m: String| Err(WebError::Validation(m));
    let mut d = WebDiagram::empty();
    let nodes: Vec<NodeId> = p.vertices.iter().map(|v| d.add_node(v.1)).collect();
    // every edge gets a tail dart (out) and a head dart (in)
    let mut tail_dart = vec![PENDING; p.edges.len()];
    let mut head_dart = vec![PENDING; p.edges.len()];
    let mut point_dart: Vec<Option<DartId>> = vec![None; signs.len()];
    for (e, (name, ends)) in p.edges.iter().enumerate() {
        let Some((a, b)) = *ends else {
            d.loops += 1;
            continue;
        };
        let t = d.add_dart(PENDING, true);
        let h = d.add_dart(PENDING, false);
        d.link(t, h);
        tail_dart[e] = t;
        head_dart[e] = h;
        for (end, dart) in [(a, t), (b, h)] {
            if let End::Point(i) = end {
                if i >= signs.len() {
                    return bad(format!("edge {} uses boundary point p{} but there are only {}", name, i, signs.len()));
                }
                if point_dart[i].is_some() {
                    return bad(format!("boundary point p{} has more than one edge", i));
                }
                // a + point is the head of its edge
                if signs[i] != (dart == h) {
                    return bad(format!("edge {} runs against the sign of p{}", name, i));
                }
                point_dart[i] = Some(dart);
                d.dart_mut(dart).node = 0;
            }
        }
    }
    let mut boundary = Vec::with_capacity(signs.len());
    for (i, pd) in point_dart.iter().enumerate() {
        match pd {
            Some(x) => boundary.push(*x),
            None => return bad(format!("boundary point p{} has no edge", i)),
        }
    }
    d.node_mut(0).darts = boundary;
    for (vi, (name, kind, over)) in p.vertices.iter().enumerate() {
        let n = nodes[vi];
        let rot = match p.rotations.get(&vi) {
            Some(r) => r,
            None => return bad(format!("vertex {} has no rotation", name)),
        };
        let mut darts = Vec::with_capacity(rot.len());
        for &(e, side) in rot {
            let Some((a, b)) = p.edges[e].1 else {
                return bad(format!("free loop {} cannot meet vertex {}", p.edges[e].0, name));
            };
            let at_tail = a == End::Node(vi);
            let at_head = b == End::Node(vi);
            let dart = match (at_tail, at_head, side) {
                (true, true, Some(true)) => head_dart[e],
                (true, true, Some(false)) => tail_dart[e],
                (true, true, None) => {
                    return Err(WebError::Parse { line: 0, msg: format!("self-loop {} at {} needs :in or :out", p.edges[e].0, name) })
                }
                (true, false, None | Some(false)) => tail_dart[e],
                (false, true, None | Some(true)) => head_dart[e],
                _ => return bad(format!("edge {} does not meet vertex {} that way", p.edges[e].0, name)),
            };
            if d.dart(dart).node != PENDING {
                return bad(format!("edge {} listed twice at vertex {}", p.edges[e].0, name));
            }
            d.dart_mut(dart).node = n;
            darts.push(dart);
        }
        if let NodeKind::Crossing { .. } = kind {
            if darts.len() != 4 {
                return bad(format!("crossing {} must have four edges", name));
            }
            let ins: Vec<bool> = darts.iter().map(|&x| !d.dart(x).out).collect();
            let start = match (0..4).find(|&i| ins[i] && ins[(i + 1) % 4] && !ins[(i + 2) % 4] && !ins[(i + 3) % 4]) {
                Some(s) => s,
                None => return bad(format!("crossing {} needs two adjacent incoming edges", name)),
            };
            let over = over.as_deref().unwrap();
            let oe = match p.eindex.get(over) {
                Some(&e) => e,
                None => return bad(format!("crossing {} names unknown over edge {}", name, over)),
            };
            let pos = match darts.iter().position(|&x| x == tail_dart[oe] || x == head_dart[oe]) {
                Some(pp) => pp,
                None => return bad(format!("over edge {} does not meet crossing {}", over, name)),
            };
            let rotated: Vec<DartId> = (0..4).map(|k| darts[(start + k) % 4]).collect();
            darts = rotated;
            d.node_mut(n).kind = NodeKind::Crossing { positive: (pos + 4 - start) % 2 == 0 };
        }
        d.node_mut(n).darts = darts;
    }
    for x in d.live_darts() {
        if d.dart(x).node == PENDING {
            return bad(format!("dangling edge end (dart {})", x));
        }
    }
    d.validate()?;
    Ok(d)
}

/// Renders a diagram in the text format; `build_web` reads it back.
pub fn render_web(d: &WebDiagram) -> String {
    let mut s = String::new();
    let signs: Vec<&str> = d.boundary_signs().iter().map(|&b| if b { "+" } else { "-" }).collect();
    writeln!(s, "boundary: {}", signs.join(" ")).unwrap();
    let mut names: BTreeMap<NodeId, String> = BTreeMap::new();
    let mut counters = [0usize; 3];
    for n in d.interior_nodes() {
        let (prefix, slot) = match d.node(n).kind {
            NodeKind::Sink | NodeKind::Source => ("v", 0),
            NodeKind::Crossing { .. } => ("c", 1),
            NodeKind::Clasp { .. } => ("k", 2),
            NodeKind::Boundary => unreachable!(),
        };
        counters[slot] += 1;
        names.insert(n, format!("{}{}", prefix, counters[slot]));
    }
    // edges numbered by their tail dart
    let mut edge_of: HashMap<DartId, usize> = HashMap::new();
    let mut edges: Vec<(DartId, DartId)> = Vec::new();
    for x in d.live_darts() {
        if d.dart(x).out {
            edge_of.insert(x, edges.len());
            edge_of.insert(d.twin(x), edges.len());
            edges.push((x, d.twin(x)));
        }
    }
    let bpos: HashMap<DartId, usize> = d.boundary().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let end_name = |x: DartId| match bpos.get(&x) {
        Some(i) => format!("p{}", i),
        None => names[&d.dart(x).node].clone(),
    };
    writeln!(s, "vertices:").unwrap();
    for (&n, name) in &names {
        match d.node(n).kind {
            NodeKind::Sink => writeln!(s, "  {} sink", name).unwrap(),
            NodeKind::Source => writeln!(s, "  {} source", name).unwrap(),
            NodeKind::Crossing { positive } => {
                let over = d.node(n).darts[if positive { 0 } else { 1 }];
                writeln!(s, "  {} crossing over=e{}", name, edge_of[&over] + 1).unwrap()
            }
            NodeKind::Clasp { a, b } => writeln!(s, "  {} clasp {} {}", name, a, b).unwrap(),
            NodeKind::Boundary => unreachable!(),
        }
    }
    writeln!(s, "edges:").unwrap();
    for (i, &(t, h)) in edges.iter().enumerate() {
        writeln!(s, "  e{} {} -> {}", i + 1, end_name(t), end_name(h)).unwrap();
    }
    for j in 0..d.loops {
        writeln!(s, "  e{} loop", edges.len() + j as usize + 1).unwrap();
    }
    writeln!(s, "rotation:").unwrap();
    for (&n, name) in &names {
        let rot = &d.node(n).darts;
        let toks: Vec<String> = rot
            .iter()
            .map(|&x| {
                let e = edge_of[&x];
                let (t, h) = edges[e];
                if d.dart(t).node == d.dart(h).node {
                    format!("e{}:{}", e + 1, if d.dart(x).out { "out" } else { "in" })
                } else {
                    format!("e{}", e + 1)
                }
            })
            .collect();
        writeln!(s, "  {}: {}", name, toks.join(" ")).unwrap();
    }
    s
}
