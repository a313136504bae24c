use super::*;
use crate::diag::wrap;
use crate::quiver::Quiver;

fn q9() -> Quiver {
    Quiver::from_pairs(
        "Q9",
        &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 2), (4, 6), (6, 9), (9, 4), (6, 7), (7, 8), (8, 3)],
    )
    .unwrap()
}

fn q7() -> Quiver {
    Quiver::from_pairs("Q7", &[(2, 1), (1, 4), (4, 5), (5, 3), (3, 2), (5, 6), (6, 7), (7, 4)]).unwrap()
}

fn c(n: u32) -> Quiver {
    let pairs: Vec<(u32, u32)> = (1..=n).map(|i| (i, i % n + 1)).collect();
    Quiver::from_pairs(&format!("C{n}"), &pairs).unwrap()
}

fn counts(cp: &CheckerboardPolygon) -> (u32, usize, usize, usize, usize) {
    let cycles = cp.shaded.iter().filter(|r| matches!(r.kind, ShadedKind::Cycle { .. })).count();
    (cp.size(), cp.radical_lines.len(), cp.crossings.len(), cycles, cp.shaded.len() - cycles)
}

fn assert_valid(cp: &CheckerboardPolygon, q: &Quiver) {
    let r = validate_checkerboard(cp, q);
    assert!(r.pass, "{}: {:?}", q.name, r.failures());
}

/// Reflection of all labels through vertex 1: a mirror image of the polygon.
fn mirrored(cp: &CheckerboardPolygon) -> CheckerboardPolygon {
    let n = cp.n;
    let m = |p: u32| wrap(2 - p as i64, n);
    let mut out = cp.clone();
    for l in &mut out.radical_lines {
        let (t, h) = (m(l.tail), m(l.head));
        l.tail = t;
        l.head = h;
    }
    out
}

#[test]
fn hexagon_for_c3() {
    let q = c(3);
    let cp = build_checkerboard(&q).unwrap();
    let lines: Vec<(String, u32, u32)> =
        cp.radical_lines.iter().map(|l| (l.vertex.to_string(), l.tail, l.head)).collect();
    assert_eq!(
        lines,
        [("1".to_string(), 1, 4), ("2".to_string(), 5, 2), ("3".to_string(), 3, 6)]
    );
    assert!(cp.radical_lines.iter().all(|l| l.diagonal().is_diameter(3)));
    assert_eq!(counts(&cp), (6, 3, 3, 1, 3));
    // Three diameters in general position: a central triangle, three boundary triangles and
    // three white quadrilaterals, each closed by one boundary edge.
    assert_eq!(cp.white.len(), 3);
    for w in &cp.white {
        assert_eq!(w.segments.len(), 3);
        assert!(matches!(w.contact, Contact::Edge(_)));
    }
    assert_valid(&cp, &q);
}

#[test]
fn q9_polygon() {
    let q = q9();
    let cp = build_checkerboard(&q).unwrap();
    assert_eq!(counts(&cp), (14, 9, 12, 4, 9));
    assert_valid(&cp, &q);
    let w = cp.white.iter().find(|w| w.path[0] == "1->2").unwrap();
    assert_eq!(w.path, ["1->2", "2->3", "3->4", "4->6", "6->9"]);
    let distinct: std::collections::BTreeSet<_> = cp.radical_lines.iter().map(|l| l.diagonal()).collect();
    assert_eq!(distinct.len(), 9);
}

#[test]
fn q7_polygon() {
    let q = q7();
    let cp = build_checkerboard(&q).unwrap();
    assert_eq!(counts(&cp), (12, 7, 8, 2, 7));
    assert_valid(&cp, &q);
}

#[test]
fn cycles_give_2n_gons() {
    for n in 3..=8 {
        let q = c(n);
        let cp = build_checkerboard(&q).unwrap();
        assert_eq!(cp.size(), 2 * n);
        assert_valid(&cp, &q);
    }
}

#[test]
fn crossings_along_a_line_follow_degree() {
    let q = q9();
    let cp = build_checkerboard(&q).unwrap();
    for (v, id) in q.vertices.iter().enumerate() {
        assert_eq!(cp.line(id).unwrap().crossings.len(), q.degree(v));
    }
}

#[test]
fn every_seed_gives_the_same_polygon() {
    for q in [q9(), q7(), c(3), c(5)] {
        let base = build_checkerboard(&q).unwrap();
        let st = q.analyze();
        for a in st.boundary_arrows() {
            let other = build_from_seed(&q, Some(&q.arrows[a].id)).unwrap();
            assert_eq!(other, base, "{} seed {}", q.name, q.arrows[a].id);
        }
    }
}

#[test]
fn rotation_keeps_validity() {
    let q = q9();
    let cp = build_checkerboard(&q).unwrap();
    for k in [1, 2, 5] {
        assert_valid(&cp.rotated(k), &q);
    }
    assert_eq!(cp.rotated(14), cp);
}

#[test]
fn mirror_image_breaks_boundary_noncrossing() {
    for q in [c(3), q9(), q7()] {
        let cp = build_checkerboard(&q).unwrap();
        let r = validate_checkerboard(&mirrored(&cp), &q);
        assert_eq!(r.check("rotated_source_line_avoids_target_line"), Some(false), "{}", q.name);
        assert!(!r.pass);
    }
}

#[test]
fn swapped_lines_are_caught() {
    let q = q9();
    let mut cp = build_checkerboard(&q).unwrap();
    let (a, b) = (cp.radical_lines[0].clone(), cp.radical_lines[4].clone());
    cp.radical_lines[0].tail = b.tail;
    cp.radical_lines[0].head = b.head;
    cp.radical_lines[4].tail = a.tail;
    cp.radical_lines[4].head = a.head;
    assert!(!validate_checkerboard(&cp, &q).pass);
}

#[test]
fn structured_round_trip() {
    for q in [q9(), q7(), c(4)] {
        let cp = build_checkerboard(&q).unwrap();
        let text = render(&cp, Format::Structured);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let back = CheckerboardPolygon::from_structured(&v).unwrap();
        assert_eq!(back, cp);
        assert_valid(&back, &q);
    }
}

#[test]
fn renders_are_deterministic() {
    let q = q9();
    let cp = build_checkerboard(&q).unwrap();
    for f in [Format::Svg, Format::Dot, Format::Text] {
        assert_eq!(render(&cp, f), render(&build_checkerboard(&q).unwrap(), f));
    }
    let svg = render(&cp, Format::Svg);
    assert!(svg.starts_with("<svg") && svg.contains("marker-end"));
    assert_eq!(svg.matches("<line ").count(), 9);
    assert!("png".parse::<Format>().is_err());
}


#[test]
fn parallel_paths_share_a_radical_line() {
    // 2 -> 3 -> 1 and 2 -> 4 -> 1 give rad P(3) = rad P(4) = S(1).
    let q = Quiver::from_pairs("T2", &[(1, 2), (2, 3), (3, 1), (2, 4), (4, 1)]).unwrap();
    let cp = build_checkerboard(&q).unwrap();
    assert_eq!(cp.size(), 6);
    let (r3, r4) = (cp.radical_line_of(&"3".into()).unwrap(), cp.radical_line_of(&"4".into()).unwrap());
    assert_eq!(r3, r4);
    assert_valid(&cp, &q);
    assert_eq!(trace_faces(&PlanarMap::new(&cp).unwrap()).len(), 1 + 2 + 2 * 4);
}
