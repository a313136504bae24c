//! The checkerboard polygon: radical lines in a 2N-gon with shaded and white regions.
//!
//! The polygon is built combinatorially from the boundary arrows. Each boundary arrow
//! `i -> j` gives a shaded triangle with corners on `rho(i)` and `rho(j)`; consecutive
//! triangles (clockwise) are separated by the white region of a cycle path. Parities come
//! from 2-colouring the triangle corners, and a white region is closed either by
//! identifying its two corners or by one boundary edge.

mod build;
mod faces;
mod render;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diag::TwoDiagonal;
use crate::quiver::VertexId;

pub use build::{build_checkerboard, build_from_seed, crossing_order};
pub use faces::{trace_faces, Dart, Face, PlanarMap};
pub use render::{render, Format};
pub use validate::{validate_checkerboard, CheckerboardReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckerboardError {
    #[error("quiver {0} is not a dimer tree quiver")]
    NotDimerTree(String),
    #[error("arrangement inconsistency: {0}")]
    Arrangement(String),
    #[error("parity walk does not close: {0}")]
    Parity(String),
    #[error("unknown render format {0}")]
    UnknownFormat(String),
    #[error("bad polygon document: {0}")]
    Document(String),
}

/// A point where region boundaries meet: a polygon vertex or the crossing of an arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Node {
    Polygon(u32),
    Crossing(String),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Polygon(p) => write!(f, "{p}"),
            Node::Crossing(a) => write!(f, "X[{a}]"),
        }
    }
}

/// A piece of a radical line between two consecutive nodes on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub line: VertexId,
    pub from: Node,
    pub to: Node,
}

impl Segment {
    /// Orientation-free key.
    pub fn key(&self) -> (VertexId, Node, Node) {
        if self.from <= self.to {
            (self.line.clone(), self.from.clone(), self.to.clone())
        } else {
            (self.line.clone(), self.to.clone(), self.from.clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalLine {
    pub vertex: VertexId,
    pub tail: u32,
    pub head: u32,
    /// Arrow ids of the crossings met going from tail to head.
    pub crossings: Vec<String>,
}

impl RadicalLine {
    pub fn diagonal(&self) -> TwoDiagonal {
        TwoDiagonal { tail: self.tail, head: self.head }
    }

    /// Nodes on the line from tail to head.
    pub fn nodes(&self) -> Vec<Node> {
        let mut v = vec![Node::Polygon(self.tail)];
        v.extend(self.crossings.iter().map(|a| Node::Crossing(a.clone())));
        v.push(Node::Polygon(self.head));
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingData {
    pub arrow: String,
    /// Radical lines of the source and target of the arrow.
    pub lines: [VertexId; 2],
    /// Index of this crossing along each line, counted from its tail.
    pub positions: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShadedKind {
    Cycle { arrows: Vec<String> },
    BoundaryArrow { arrow: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadedRegion {
    #[serde(flatten)]
    pub kind: ShadedKind,
    pub segments: Vec<Segment>,
    pub boundary_edges: Vec<[u32; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    Vertex(u32),
    Edge([u32; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteRegion {
    /// The cycle path read clockwise around the region.
    pub path: Vec<String>,
    pub segments: Vec<Segment>,
    pub contact: Contact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckerboardPolygon {
    /// The polygon has `2n` vertices.
    pub n: u32,
    /// Sorted by vertex id.
    pub radical_lines: Vec<RadicalLine>,
    /// In arrow order of the quiver.
    pub crossings: Vec<CrossingData>,
    pub shaded: Vec<ShadedRegion>,
    pub white: Vec<WhiteRegion>,
}

impl CheckerboardPolygon {
    pub fn size(&self) -> u32 {
        2 * self.n
    }

    pub fn line(&self, v: &VertexId) -> Option<&RadicalLine> {
        self.radical_lines.iter().find(|l| &l.vertex == v)
    }

    pub fn radical_line_of(&self, v: &VertexId) -> Option<TwoDiagonal> {
        self.line(v).map(|l| l.diagonal())
    }

    pub fn lines_by_vertex(&self) -> BTreeMap<VertexId, TwoDiagonal> {
        self.radical_lines.iter().map(|l| (l.vertex.clone(), l.diagonal())).collect()
    }

    /// Boundary edges `p -- p+1`; the labels run once around, so there are exactly 2N.
    pub fn boundary_edge_count(&self) -> u32 {
        self.size()
    }

    /// `(vertex, tail, head)` sorted by vertex; used to compare polygons up to rotation.
    pub fn signature(&self) -> Vec<(VertexId, u32, u32)> {
        self.radical_lines.iter().map(|l| (l.vertex.clone(), l.tail, l.head)).collect()
    }

    /// Relabel by `R^k`. Orientations are re-read from the new parity.
    pub fn rotated(&self, k: i64) -> CheckerboardPolygon {
        let n = self.n;
        let mv = |p: u32| crate::diag::wrap(p as i64 + k, n);
        let node = |x: &Node| match x {
            Node::Polygon(p) => Node::Polygon(mv(*p)),
            c => c.clone(),
        };
        let seg = |s: &Segment| Segment { line: s.line.clone(), from: node(&s.from), to: node(&s.to) };
        let flip = k.rem_euclid(2) == 1;
        let mut out = self.clone();
        for l in &mut out.radical_lines {
            let (t, h) = (mv(l.tail), mv(l.head));
            if flip {
                l.tail = h;
                l.head = t;
                l.crossings.reverse();
            } else {
                l.tail = t;
                l.head = h;
            }
        }
        if flip {
            for c in &mut out.crossings {
                for s in 0..2 {
                    let len = out.radical_lines.iter().find(|l| l.vertex == c.lines[s]).unwrap().crossings.len();
                    c.positions[s] = len - 1 - c.positions[s];
                }
            }
        }
        for r in &mut out.shaded {
            r.segments = r.segments.iter().map(seg).collect();
            r.boundary_edges = r.boundary_edges.iter().map(|e| [mv(e[0]), mv(e[1])]).collect();
        }
        for w in &mut out.white {
            w.segments = w.segments.iter().map(seg).collect();
            w.contact = match w.contact {
                Contact::Vertex(p) => Contact::Vertex(mv(p)),
                Contact::Edge(e) => Contact::Edge([mv(e[0]), mv(e[1])]),
            };
        }
        out
    }

    pub fn to_structured(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = (1..=self.size())
            .map(|i| serde_json::json!({"index": i, "parity": if i % 2 == 1 { "odd" } else { "even" }}))
            .collect();
        serde_json::json!({
            "schema": "dimertree.polygon/1",
            "size": self.size(),
            "vertices": vertices,
            "radical_lines": self.radical_lines,
            "crossings": self.crossings,
            "shaded": self.shaded,
            "white": self.white,
        })
    }

    pub fn from_structured(v: &serde_json::Value) -> Result<CheckerboardPolygon, CheckerboardError> {
        let bad = |m: &str| CheckerboardError::Document(m.to_string());
        let size = v.get("size").and_then(|s| s.as_u64()).ok_or_else(|| bad("missing size"))?;
        if size % 2 == 1 || size < 6 {
            return Err(bad("size must be even and at least 6"));
        }
        let field = |k: &str| v.get(k).cloned().ok_or_else(|| bad(&format!("missing {k}")));
        let parse = |e: serde_json::Error| CheckerboardError::Document(e.to_string());
        Ok(CheckerboardPolygon {
            n: (size / 2) as u32,
            radical_lines: serde_json::from_value(field("radical_lines")?).map_err(parse)?,
            crossings: serde_json::from_value(field("crossings")?).map_err(parse)?,
            shaded: serde_json::from_value(field("shaded")?).map_err(parse)?,
            white: serde_json::from_value(field("white")?).map_err(parse)?,
        })
    }
}

#[cfg(test)]
mod tests;
