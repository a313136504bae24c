use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use super::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
    Svg,
    Dot,
}

impl FromStr for Format {
    type Err = CheckerboardError;

    fn from_str(s: &str) -> Result<Format, CheckerboardError> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            "svg" => Ok(Format::Svg),
            "dot" => Ok(Format::Dot),
            _ => Err(CheckerboardError::UnknownFormat(s.to_string())),
        }
    }
}

pub fn render(cp: &CheckerboardPolygon, format: Format) -> String {
    match format {
        Format::Text => text(cp),
        Format::Structured => serde_json::to_string_pretty(&cp.to_structured()).unwrap() + "\n",
        Format::Svg => svg(cp),
        Format::Dot => dot(cp),
    }
}

fn text(cp: &CheckerboardPolygon) -> String {
    let mut s = format!("{}-gon, {} radical lines, {} crossings\n", cp.size(), cp.radical_lines.len(), cp.crossings.len());
    for l in &cp.radical_lines {
        let _ = writeln!(s, "rho({}) = ({},{})  crossings: {}", l.vertex, l.tail, l.head, l.crossings.join(" "));
    }
    let cycles = cp.shaded.iter().filter(|r| matches!(r.kind, ShadedKind::Cycle { .. })).count();
    let _ = writeln!(s, "shaded: {} cycles, {} boundary triangles", cycles, cp.shaded.len() - cycles);
    for w in &cp.white {
        let contact = match w.contact {
            Contact::Vertex(p) => format!("vertex {p}"),
            Contact::Edge([a, b]) => format!("edge {a}-{b}"),
        };
        let _ = writeln!(s, "white: {}  ({contact})", w.path.join(" "));
    }
    s
}

const C: f64 = 220.0;
const RADIUS: f64 = 190.0;

/// Vertex `k` sits at clockwise angle `2 pi k / 2N` from the top.
fn point(k: u32, size: u32) -> (f64, f64) {
    let t = std::f64::consts::TAU * k as f64 / size as f64;
    (C + RADIUS * t.sin(), C - RADIUS * t.cos())
}

fn intersect(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> (f64, f64) {
    let (r, s) = ((b.0 - a.0, b.1 - a.1), (d.0 - c.0, d.1 - c.1));
    let den = r.0 * s.1 - r.1 * s.0;
    if den.abs() < 1e-12 {
        return ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    }
    let t = ((c.0 - a.0) * s.1 - (c.1 - a.1) * s.0) / den;
    (a.0 + t * r.0, a.1 + t * r.1)
}

fn coordinates(cp: &CheckerboardPolygon) -> BTreeMap<Node, (f64, f64)> {
    let size = cp.size();
    let mut at: BTreeMap<Node, (f64, f64)> = (1..=size).map(|k| (Node::Polygon(k), point(k, size))).collect();
    for c in &cp.crossings {
        let (Some(a), Some(b)) = (cp.line(&c.lines[0]), cp.line(&c.lines[1])) else { continue };
        let p = intersect(point(a.tail, size), point(a.head, size), point(b.tail, size), point(b.head, size));
        at.insert(Node::Crossing(c.arrow.clone()), p);
    }
    at
}

/// Orders the endpoints of a region's segments into a closed walk.
fn outline(segments: &[Segment]) -> Vec<Node> {
    let mut rest: Vec<(Node, Node)> = segments.iter().map(|s| (s.from.clone(), s.to.clone())).collect();
    let Some((a, b)) = rest.pop() else { return vec![] };
    let mut walk = vec![a, b];
    while !rest.is_empty() {
        let last = walk.last().unwrap().clone();
        match rest.iter().position(|(x, y)| *x == last || *y == last) {
            Some(i) => {
                let (x, y) = rest.remove(i);
                walk.push(if x == last { y } else { x });
            }
            None => {
                // Jump across a boundary edge or shared corner.
                let (x, y) = rest.remove(0);
                walk.push(x);
                walk.push(y);
            }
        }
    }
    walk
}

fn svg(cp: &CheckerboardPolygon) -> String {
    let size = cp.size();
    let at = coordinates(cp);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="440" height="440" viewBox="0 0 440 440">"#
    );
    s.push_str(r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#);
    s.push('\n');
    let poly: Vec<String> = (1..=size).map(|k| fmt_pt(point(k, size))).collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="white" stroke="black"/>"#, poly.join(" "));
    for r in &cp.shaded {
        let pts: Vec<String> = outline(&r.segments).iter().filter_map(|n| at.get(n)).map(|&p| fmt_pt(p)).collect();
        let _ = writeln!(s, r##"<polygon points="{}" fill="#c8c8c8" stroke="none"/>"##, pts.join(" "));
    }
    for l in &cp.radical_lines {
        let (a, b) = (point(l.tail, size), point(l.head, size));
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" marker-end="url(#arrow)"/>"#,
            a.0, a.1, b.0, b.1
        );
        let m = (a.0 + 0.18 * (b.0 - a.0), a.1 + 0.18 * (b.1 - a.1));
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="blue">{}</text>"#, m.0, m.1, l.vertex);
    }
    for k in 1..=size {
        let (x, y) = point(k, size);
        let (lx, ly) = (C + (x - C) * 1.08, C + (y - C) * 1.08);
        let _ = writeln!(s, r#"<text x="{lx:.2}" y="{ly:.2}" font-size="11" text-anchor="middle">{k}</text>"#);
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_pt(p: (f64, f64)) -> String {
    format!("{:.2},{:.2}", p.0, p.1)
}

fn dot(cp: &CheckerboardPolygon) -> String {
    let size = cp.size();
    let mut s = format!("digraph polygon{size} {{\n  layout=circo;\n");
    for k in 1..=size {
        let _ = writeln!(s, "  p{k} [label=\"{k}\", shape=circle];");
    }
    for k in 1..=size {
        let _ = writeln!(s, "  p{k} -> p{} [arrowhead=none, style=bold];", k % size + 1);
    }
    for l in &cp.radical_lines {
        let _ = writeln!(s, "  p{} -> p{} [label=\"{}\", color=blue];", l.tail, l.head, l.vertex);
    }
    s.push_str("}\n");
    s
}
