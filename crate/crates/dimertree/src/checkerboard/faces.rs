//! Planar map of a polygon's radical lines, and its faces.
//!
//! Built only from the labels and the crossing order along each line; regions stored in the
//! polygon are not consulted. Rotations: at a crossing the four half-lines are ordered by the
//! crossing direction, at a polygon vertex by clockwise offset of the far endpoint.

use std::collections::BTreeMap;

use super::{CheckerboardPolygon, Node};
use crate::diag::{crossing, cw_dist, wrap, Crossing, TwoDiagonal};
use crate::quiver::VertexId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DartKind {
    /// Along a radical line; `forward` means tail-to-head.
    Line { vertex: VertexId, forward: bool },
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dart {
    pub from: usize,
    pub to: usize,
    pub kind: DartKind,
}

#[derive(Clone, Debug)]
pub struct PlanarMap {
    pub nodes: Vec<Node>,
    pub darts: Vec<Dart>,
    /// Reverse of each dart.
    pub twin: Vec<usize>,
    /// Darts leaving each node in counterclockwise order.
    pub rotation: Vec<Vec<usize>>,
}

/// A face as a cycle of darts, traversed with the face on the left.
#[derive(Clone, Debug)]
pub struct Face {
    pub darts: Vec<usize>,
}

impl PlanarMap {
    pub fn new(cp: &CheckerboardPolygon) -> Result<PlanarMap, String> {
        let n = cp.n;
        let size = cp.size();
        let mut nodes: Vec<Node> = (1..=size).map(Node::Polygon).collect();
        let mut index: BTreeMap<Node, usize> = nodes.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        for c in &cp.crossings {
            let node = Node::Crossing(c.arrow.clone());
            index.insert(node.clone(), nodes.len());
            nodes.push(node);
        }
        let mut darts = Vec::new();
        let mut twin = Vec::new();
        let mut add = |darts: &mut Vec<Dart>, a: usize, b: usize, fwd: DartKind, bwd: DartKind| {
            let i = darts.len();
            darts.push(Dart { from: a, to: b, kind: fwd });
            darts.push(Dart { from: b, to: a, kind: bwd });
            twin.push(i + 1);
            twin.push(i);
        };
        for p in 1..=size {
            let q = wrap(p as i64 + 1, n);
            add(&mut darts, index[&Node::Polygon(p)], index[&Node::Polygon(q)], DartKind::Boundary, DartKind::Boundary);
        }
        for l in &cp.radical_lines {
            let chain = l.nodes();
            for w in chain.windows(2) {
                let (a, b) = match (index.get(&w[0]), index.get(&w[1])) {
                    (Some(&a), Some(&b)) => (a, b),
                    _ => return Err(format!("line {} meets an unknown node", l.vertex)),
                };
                add(
                    &mut darts,
                    a,
                    b,
                    DartKind::Line { vertex: l.vertex.clone(), forward: true },
                    DartKind::Line { vertex: l.vertex.clone(), forward: false },
                );
            }
        }
        let diag: BTreeMap<&VertexId, TwoDiagonal> = cp.radical_lines.iter().map(|l| (&l.vertex, l.diagonal())).collect();
        let mut rotation = vec![Vec::new(); nodes.len()];
        for (v, node) in nodes.iter().enumerate() {
            let out: Vec<usize> = (0..darts.len()).filter(|&d| darts[d].from == v).collect();
            match node {
                Node::Polygon(p) => {
                    // Direction toward the far end: boundary neighbours at offsets 1 and 2N-1.
                    let offset = |d: usize| -> u32 {
                        match &darts[d].kind {
                            DartKind::Boundary => match &nodes[darts[d].to] {
                                Node::Polygon(q) => cw_dist(*p, *q, n),
                                _ => unreachable!(),
                            },
                            DartKind::Line { vertex, .. } => {
                                let g = diag[vertex];
                                if g.tail == *p {
                                    cw_dist(*p, g.head, n)
                                } else {
                                    cw_dist(*p, g.tail, n)
                                }
                            }
                        }
                    };
                    let line_of = |d: usize| match &darts[d].kind {
                        DartKind::Line { vertex, .. } => Some(vertex),
                        DartKind::Boundary => None,
                    };
                    let mut out = out;
                    out.sort_by(|&a, &b| {
                        offset(b).cmp(&offset(a)).then_with(|| match (line_of(a), line_of(b)) {
                            (Some(x), Some(y)) if x != y => nearer_cw_arc(cp, *p, x, y),
                            _ => std::cmp::Ordering::Equal,
                        })
                    });
                    rotation[v] = out;
                }
                Node::Crossing(a) => {
                    let c = cp.crossings.iter().find(|c| &c.arrow == a).unwrap();
                    let [i, j] = &c.lines;
                    if out.len() != 4 {
                        return Err(format!("crossing {a} has {} half-lines", out.len()));
                    }
                    let pick = |vx: &VertexId, fwd: bool| {
                        out.iter()
                            .copied()
                            .find(|&d| matches!(&darts[d].kind, DartKind::Line { vertex, forward } if vertex == vx && *forward == fwd))
                            .ok_or_else(|| format!("crossing {a} is not on line {vx}"))
                    };
                    let (i_f, i_b, j_f, j_b) = (pick(i, true)?, pick(i, false)?, pick(j, true)?, pick(j, false)?);
                    rotation[v] = match crossing(diag[i], diag[j], n) {
                        Crossing::RightToLeft => vec![i_f, j_f, i_b, j_b],
                        Crossing::LeftToRight => vec![i_f, j_b, i_b, j_f],
                        Crossing::None => return Err(format!("lines {i} and {j} do not cross at {a}")),
                    };
                }
            }
        }
        Ok(PlanarMap { nodes, darts, twin, rotation })
    }

    /// The dart just clockwise of `d` around its source.
    fn cw_next(&self, d: usize) -> usize {
        let r = &self.rotation[self.darts[d].from];
        let i = r.iter().position(|&x| x == d).unwrap();
        r[(i + r.len() - 1) % r.len()]
    }

    pub fn next_in_face(&self, d: usize) -> usize {
        self.cw_next(self.twin[d])
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn is_outer(&self, f: &Face) -> bool {
        f.darts.iter().all(|&d| {
            self.darts[d].kind == DartKind::Boundary
                && match (&self.nodes[self.darts[d].from], &self.nodes[self.darts[d].to]) {
                    (Node::Polygon(a), Node::Polygon(b)) => *b == *a % (self.nodes_polygon() as u32) + 1,
                    _ => false,
                }
        })
    }

    fn nodes_polygon(&self) -> usize {
        self.nodes.iter().filter(|x| matches!(x, Node::Polygon(_))).count()
    }
}

/// Orders two lines with the same endpoints leaving polygon vertex `p`: the one nearer the arc
/// clockwise from `p` sorts later. Decided by a third line crossing both, walked from its end on
/// that arc.
fn nearer_cw_arc(cp: &CheckerboardPolygon, p: u32, x: &VertexId, y: &VertexId) -> std::cmp::Ordering {
    let n = cp.n;
    let g = cp.radical_line_of(x).unwrap();
    let far = if g.tail == p { g.head } else { g.tail };
    let on_arc = |e: u32| {
        let d = cw_dist(p, e, n);
        d > 0 && d < cw_dist(p, far, n)
    };
    let pos_on = |m: &VertexId, l: &VertexId| {
        cp.crossings
            .iter()
            .find(|c| (&c.lines[0] == m && &c.lines[1] == l) || (&c.lines[1] == m && &c.lines[0] == l))
            .map(|c| if &c.lines[0] == m { c.positions[0] } else { c.positions[1] })
    };
    for m in &cp.radical_lines {
        let (Some(px), Some(py)) = (pos_on(&m.vertex, x), pos_on(&m.vertex, y)) else {
            continue;
        };
        let x_first = if on_arc(m.tail) { px < py } else if on_arc(m.head) { px > py } else { continue };
        return if x_first { std::cmp::Ordering::Greater } else { std::cmp::Ordering::Less };
    }
    std::cmp::Ordering::Equal
}

pub fn trace_faces(map: &PlanarMap) -> Vec<Face> {
    let mut seen = vec![false; map.darts.len()];
    let mut faces = Vec::new();
    for s in 0..map.darts.len() {
        if seen[s] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            darts.push(d);
            d = map.next_in_face(d);
        }
        faces.push(Face { darts });
    }
    faces
}
