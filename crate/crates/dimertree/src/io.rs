//! Quiver files, fixture lookup and plain-text / DOT emitters.
//!
//! A quiver file is JSON with `name`, `vertices` and `arrows`; an arrow is `[source, target]` or
//! `{"id": .., "source": .., "target": ..}`, and ids may be integers or strings.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::mutation::QpDoc;
use crate::quiver::{Quiver, QuiverError, VertexId};
use crate::weights::{path_string, WeightReport};

fn malformed(location: &str, what: &str) -> QuiverError {
    QuiverError::Malformed(format!("{location}: {what}"))
}

fn vertex_id(v: &Value, location: &str) -> Result<VertexId, QuiverError> {
    match v {
        Value::Number(n) if n.is_u64() => Ok(VertexId::new(n.to_string())),
        Value::String(s) if !s.is_empty() && !s.contains("->") => Ok(VertexId::new(s.clone())),
        _ => Err(malformed(location, "vertex ids are non-negative integers or non-empty strings without \"->\"")),
    }
}

/// Parses a quiver file. When `vertices` is absent the vertices are read off the arrows.
pub fn parse_quiver(text: &str, default_name: &str) -> Result<Quiver, QuiverError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| QuiverError::Malformed(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let obj = doc.as_object().ok_or_else(|| malformed("document", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "name" | "vertices" | "arrows") {
            return Err(malformed(key, "unknown field"));
        }
    }
    let name = match obj.get("name") {
        None => default_name.to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(malformed("name", "expected a string")),
    };
    let arrows_v = obj.get("arrows").ok_or_else(|| malformed("document", "missing field \"arrows\""))?;
    let list = arrows_v.as_array().ok_or_else(|| malformed("arrows", "expected an array"))?;
    let mut arrows = Vec::with_capacity(list.len());
    for (n, a) in list.iter().enumerate() {
        let loc = format!("arrows[{n}]");
        let arrow = match a {
            Value::Array(pair) if pair.len() == 2 => {
                (None, vertex_id(&pair[0], &format!("{loc}[0]"))?, vertex_id(&pair[1], &format!("{loc}[1]"))?)
            }
            Value::Object(o) => {
                if let Some(k) = o.keys().find(|k| !matches!(k.as_str(), "id" | "source" | "target")) {
                    return Err(malformed(&format!("{loc}.{k}"), "unknown field"));
                }
                let id = match o.get("id") {
                    None => None,
                    Some(Value::String(s)) => Some(s.clone()),
                    Some(Value::Number(x)) => Some(x.to_string()),
                    Some(_) => return Err(malformed(&format!("{loc}.id"), "expected a string")),
                };
                let end = |k: &str| {
                    o.get(k)
                        .ok_or_else(|| malformed(&loc, &format!("missing field \"{k}\"")))
                        .and_then(|v| vertex_id(v, &format!("{loc}.{k}")))
                };
                (id, end("source")?, end("target")?)
            }
            _ => return Err(malformed(&loc, "expected [source, target] or {id, source, target}")),
        };
        arrows.push(arrow);
    }
    let vertices = match obj.get("vertices") {
        Some(Value::Array(vs)) => {
            vs.iter().enumerate().map(|(i, v)| vertex_id(v, &format!("vertices[{i}]"))).collect::<Result<_, _>>()?
        }
        Some(_) => return Err(malformed("vertices", "expected an array")),
        None => {
            let mut seen: Vec<VertexId> = Vec::new();
            for (_, s, t) in &arrows {
                for v in [s, t] {
                    if !seen.contains(v) {
                        seen.push(v.clone());
                    }
                }
            }
            seen
        }
    };
    Quiver::new(name, vertices, arrows)
}

/// The quiver as a file that [`parse_quiver`] reads back. Integer ids are written as integers.
pub fn quiver_to_json(q: &Quiver) -> String {
    let id = |v: &VertexId| match v.as_str().parse::<u64>() {
        Ok(n) if n.to_string() == v.as_str() => Value::from(n),
        _ => Value::from(v.as_str()),
    };
    let arrows: Vec<Value> = (0..q.arrow_count())
        .map(|a| {
            let (s, t) = (q.source_id(a), q.target_id(a));
            if q.arrows[a].id == format!("{s}->{t}") {
                Value::Array(vec![id(s), id(t)])
            } else {
                serde_json::json!({"id": q.arrows[a].id, "source": id(s), "target": id(t)})
            }
        })
        .collect();
    let doc = serde_json::json!({
        "name": q.name,
        "vertices": q.vertices.iter().map(id).collect::<Vec<_>>(),
        "arrows": arrows,
    });
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: QuiverError },
}

/// Resolves `fixtures/q9` to `fixtures/q9.json` when the bare path does not exist.
pub fn resolve_path(p: &Path) -> PathBuf {
    if p.exists() || p.extension().is_some() {
        return p.to_path_buf();
    }
    let with = p.with_extension("json");
    if with.exists() {
        with
    } else {
        p.to_path_buf()
    }
}

pub fn load_quiver(p: &Path) -> Result<Quiver, LoadError> {
    let path = resolve_path(p);
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(&path).map_err(|source| LoadError::Read { path: shown.clone(), source })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("Q").to_uppercase();
    parse_quiver(&text, &stem).map_err(|source| LoadError::Parse { path: shown, source })
}

/// The fixture corpus as `(file stem, quiver)`: q9, q7, and the cycles c3..c8.
pub fn fixtures() -> Vec<(String, Quiver)> {
    let q9 = Quiver::from_pairs(
        "Q9",
        &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 2), (4, 6), (6, 9), (9, 4), (6, 7), (7, 8), (8, 3)],
    )
    .unwrap();
    let q7 = Quiver::from_pairs("Q7", &[(2, 1), (1, 4), (4, 5), (5, 3), (3, 2), (5, 6), (6, 7), (7, 4)]).unwrap();
    let mut out = vec![("q9".to_string(), q9), ("q7".to_string(), q7)];
    for n in 3..=8u32 {
        let pairs: Vec<(u32, u32)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        out.push((format!("c{n}"), Quiver::from_pairs(&format!("C{n}"), &pairs).unwrap()));
    }
    out
}

/// One row per boundary arrow: cycle path, then weight; the total last.
pub fn weights_text(q: &Quiver, wr: &WeightReport) -> String {
    let rows: Vec<(String, u8)> = wr.rows.iter().map(|r| (path_string(q, &r.cycle_path.arrows), r.weight)).collect();
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("cycle path".len());
    let mut s = format!("{:width$}  weight\n", "cycle path");
    for (p, w) in rows {
        let _ = writeln!(s, "{p:width$}  {w}");
    }
    let _ = writeln!(s, "total weight {}", wr.total);
    s
}

pub fn quiver_dot(q: &Quiver) -> String {
    let st = q.analyze();
    let mut s = format!("digraph \"{}\" {{\n", q.name);
    for v in &q.vertices {
        let _ = writeln!(s, "  \"{v}\";");
    }
    for (a, arrow) in q.arrows.iter().enumerate() {
        let style = if st.is_interior(a) { " [style=bold]" } else { "" };
        let _ = writeln!(s, "  \"{}\" -> \"{}\"{style};", q.vertices[arrow.source], q.vertices[arrow.target]);
    }
    s.push_str("}\n");
    s
}

/// DOT for a quiver recorded in a reduction trace.
pub fn doc_dot(name: &str, doc: &QpDoc) -> String {
    let mut s = format!("digraph \"{name}\" {{\n");
    for v in &doc.vertices {
        let _ = writeln!(s, "  \"{v}\";");
    }
    for (a, b) in &doc.arrows {
        let _ = writeln!(s, "  \"{a}\" -> \"{b}\";");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_both_arrow_forms() {
        let q = parse_quiver(
            r#"{"name": "C3", "vertices": [1, 2, "3"], "arrows": [[1, 2], {"id": "b", "source": 2, "target": 3}, [3, 1]]}"#,
            "X",
        )
        .unwrap();
        assert_eq!(q.name, "C3");
        assert_eq!(q.arrow_index("b"), Some(1));
        assert_eq!(q.arrow_index("3->1"), Some(2));
    }

    #[test]
    fn vertices_default_to_arrow_endpoints() {
        let q = parse_quiver(r#"{"arrows": [[1, 2], [2, 3], [3, 1]]}"#, "C3").unwrap();
        assert_eq!((q.name.as_str(), q.vertex_count()), ("C3", 3));
    }

    #[test]
    fn errors_carry_locations() {
        let e = parse_quiver(r#"{"vertices": [1, 2], "arrows": [[1, 2], [2, 1]]}"#, "X").unwrap_err();
        assert!(matches!(e, QuiverError::TwoCycle { .. }));
        assert!(e.to_string().contains("arrows[1]") && e.to_string().contains("2-cycle"));
        let e = parse_quiver(r#"{"arrows": [[1, 2, 3]]}"#, "X").unwrap_err();
        assert!(e.to_string().starts_with("malformed document: arrows[0]"), "{e}");
        let e = parse_quiver(r#"{"arrows": [[1.5, 2]]}"#, "X").unwrap_err();
        assert!(e.to_string().contains("arrows[0][0]"), "{e}");
        let e = parse_quiver("{\"arrows\": [", "X").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        let e = parse_quiver(r#"{"arrows": [], "extra": 1}"#, "X").unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");
        let e = parse_quiver(r#"{"vertices": [1], "arrows": [[1, 2]]}"#, "X").unwrap_err();
        assert!(matches!(e, QuiverError::UnknownVertex { .. }));
    }

    #[test]
    fn json_round_trip() {
        for (_, q) in fixtures() {
            let back = parse_quiver(&quiver_to_json(&q), "X").unwrap();
            assert_eq!(back, q);
            assert_eq!(back.name, q.name);
        }
        let custom = parse_quiver(r#"{"name": "N", "arrows": [{"id": "a", "source": "x", "target": 2}, [2, "x'"], ["x'", "x"]]}"#, "N")
            .unwrap();
        assert_eq!(parse_quiver(&quiver_to_json(&custom), "N").unwrap(), custom);
    }

    #[test]
    fn q9_weight_table() {
        let (_, q) = fixtures().remove(0);
        let text = weights_text(&q, &crate::weights::weight_report(&q).unwrap());
        assert!(text.contains("1->2->3->4->6->9  1"));
        assert!(text.ends_with("total weight 14\n"));
        assert_eq!(text.lines().count(), 11);
    }

    #[test]
    fn fixture_files_match_the_corpus() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
        for (stem, q) in fixtures() {
            let loaded = load_quiver(&dir.join(&stem)).unwrap();
            assert_eq!(loaded, q, "{stem}");
            assert_eq!(loaded.name, q.name);
        }
    }
}
