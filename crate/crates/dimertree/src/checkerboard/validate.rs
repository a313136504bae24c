use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::faces::DartKind;
use super::*;
use crate::diag::{chords_cross, rotate};
use crate::quiver::{CheckEntry, Quiver};
use crate::weights::{weight_report, Direction};

#[derive(Clone, Debug, Serialize)]
pub struct CheckerboardReport {
    pub checks: Vec<CheckEntry>,
    pub pass: bool,
}

impl CheckerboardReport {
    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

struct Checks(Vec<CheckEntry>);

impl Checks {
    fn push(&mut self, name: &str, problems: Vec<String>) {
        let pass = problems.is_empty();
        let detail: String = problems.into_iter().take(5).collect::<Vec<_>>().join("; ").chars().take(400).collect();
        self.0.push(CheckEntry { name: name.to_string(), pass, detail });
    }
}

/// Classified face of the planar map.
struct FaceInfo {
    darts: Vec<usize>,
    boundary_darts: usize,
    polygon_nodes: Vec<u32>,
}

/// Checks a polygon against the quiver it claims to model. Never fails; failures are entries.
pub fn validate_checkerboard(cp: &CheckerboardPolygon, q: &Quiver) -> CheckerboardReport {
    let mut ck = Checks(Vec::new());
    let n = cp.n;
    let st = q.analyze();

    let mut bad = Vec::new();
    let vid_set: BTreeSet<&VertexId> = cp.radical_lines.iter().map(|l| &l.vertex).collect();
    if vid_set.len() != cp.radical_lines.len() || vid_set.len() != q.vertex_count() {
        bad.push("radical lines do not match the vertices".to_string());
    }
    for l in &cp.radical_lines {
        match TwoDiagonal::new(l.tail, l.head, n) {
            Ok(d) if d.tail == l.tail => {}
            _ => bad.push(format!("rho({}) = ({},{}) is not an oriented 2-diagonal", l.vertex, l.tail, l.head)),
        }
    }
    ck.push("radical_lines_are_2_diagonals", bad);
    if !ck.0.last().unwrap().pass {
        return finish(ck);
    }

    let line = |v: &VertexId| cp.line(v).unwrap();
    let mut bad = Vec::new();
    for i in 0..q.vertex_count() {
        for j in i + 1..q.vertex_count() {
            let (a, b) = (line(&q.vertices[i]).diagonal(), line(&q.vertices[j]).diagonal());
            let joined = q.arrow_between(i, j).is_some() || q.arrow_between(j, i).is_some();
            if chords_cross(a.endpoints(), b.endpoints(), n) != joined {
                bad.push(format!("rho({}), rho({}) cross={} arrow={}", q.vertices[i], q.vertices[j], !joined, joined));
            }
        }
    }
    if cp.crossings.len() != q.arrow_count() {
        bad.push(format!("{} crossings for {} arrows", cp.crossings.len(), q.arrow_count()));
    }
    ck.push("crossings_match_arrows", bad);

    let mut bad = Vec::new();
    for (v, id) in q.vertices.iter().enumerate() {
        let l = line(id);
        let want: BTreeSet<String> = (0..q.arrow_count())
            .filter(|&a| q.arrows[a].source == v || q.arrows[a].target == v)
            .map(|a| q.arrows[a].id.clone())
            .collect();
        let got: BTreeSet<String> = l.crossings.iter().cloned().collect();
        if l.crossings.len() != q.degree(v) || got != want {
            bad.push(format!("rho({id}) meets {} crossings, degree {}", l.crossings.len(), q.degree(v)));
        }
    }
    for c in &cp.crossings {
        for s in 0..2 {
            let l = line(&c.lines[s]);
            if l.crossings.get(c.positions[s]) != Some(&c.arrow) {
                bad.push(format!("crossing {} misplaced on rho({})", c.arrow, c.lines[s]));
            }
        }
    }
    ck.push("crossings_per_line_equal_degree", bad);

    let mut bad = Vec::new();
    match weight_report(q) {
        Ok(wr) if wr.total as u32 == cp.size() => {}
        Ok(wr) => bad.push(format!("{} boundary edges, total weight {}", cp.size(), wr.total)),
        Err(e) => bad.push(e.to_string()),
    }
    ck.push("boundary_edges_equal_total_weight", bad);

    let mut bad = Vec::new();
    for a in st.boundary_arrows() {
        let (i, j) = (q.source_id(a), q.target_id(a));
        let ri = rotate(line(i).diagonal(), 1, n);
        if chords_cross(ri.endpoints(), line(j).diagonal().endpoints(), n) {
            bad.push(format!("R rho({i}) crosses rho({j})"));
        }
    }
    ck.push("rotated_source_line_avoids_target_line", bad);

    let map = match PlanarMap::new(cp) {
        Ok(m) => m,
        Err(e) => {
            ck.push("planar_map", vec![e]);
            return finish(ck);
        }
    };
    let faces = trace_faces(&map);
    let b = st.boundary_arrows().len();
    let mut bad = Vec::new();
    let (v, e, f) = (map.nodes.len() as i64, map.edge_count() as i64, faces.len() as i64);
    if v - e + f != 2 {
        bad.push(format!("V-E+F = {}", v - e + f));
    }
    let want_faces = 1 + st.cycles.len() + 2 * b;
    if faces.len() != want_faces {
        bad.push(format!("{} faces, expected {}", faces.len(), want_faces));
    }
    let outer: Vec<usize> = (0..faces.len()).filter(|&i| map.is_outer(&faces[i])).collect();
    if outer.len() != 1 {
        bad.push(format!("{} outer faces", outer.len()));
    }
    ck.push("planar_map", bad);
    if !ck.0.last().unwrap().pass {
        return finish(ck);
    }

    let inner: Vec<FaceInfo> = faces
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != outer[0])
        .map(|(_, f)| FaceInfo {
            darts: f.darts.clone(),
            boundary_darts: f.darts.iter().filter(|&&d| map.darts[d].kind == DartKind::Boundary).count(),
            polygon_nodes: f
                .darts
                .iter()
                .filter_map(|&d| match map.nodes[map.darts[d].from] {
                    Node::Polygon(p) => Some(p),
                    _ => None,
                })
                .collect(),
        })
        .collect();

    // 2-colour interior faces across line segments.
    let mut face_of = vec![usize::MAX; map.darts.len()];
    for (i, fi) in inner.iter().enumerate() {
        for &d in &fi.darts {
            face_of[d] = i;
        }
    }
    let mut colour: Vec<Option<bool>> = vec![None; inner.len()];
    let mut bad = Vec::new();
    colour[0] = Some(false);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &d in &inner[i].darts {
            if map.darts[d].kind == DartKind::Boundary {
                continue;
            }
            let j = face_of[map.twin[d]];
            match colour[j] {
                None => {
                    colour[j] = Some(!colour[i].unwrap());
                    queue.push_back(j);
                }
                Some(c) if c == colour[i].unwrap() => bad.push("adjacent faces share a colour".to_string()),
                _ => {}
            }
        }
    }
    if colour.iter().any(|c| c.is_none()) {
        bad.push("face adjacency is disconnected".into());
    }
    ck.push("faces_alternate_across_lines", bad);
    if !ck.0.last().unwrap().pass {
        return finish(ck);
    }
    // Shaded faces are the colour class containing a triangle (one boundary edge, two line
    // segments); white faces have an even number of sides, so never look like one.
    let is_triangle = |fi: &FaceInfo| fi.boundary_darts == 1 && fi.darts.len() == 3;
    let shaded_colour = inner.iter().zip(&colour).find(|(fi, _)| is_triangle(fi)).map(|(_, c)| c.unwrap());
    let (shaded, white): (Vec<usize>, Vec<usize>) =
        (0..inner.len()).partition(|&i| Some(colour[i].unwrap()) == shaded_colour);

    let line_node_chain = |fi: &FaceInfo| -> Vec<Node> { fi.darts.iter().map(|&d| map.nodes[map.darts[d].from].clone()).collect() };
    let crossing_set = |fi: &FaceInfo| -> BTreeSet<String> {
        line_node_chain(fi)
            .into_iter()
            .filter_map(|x| match x {
                Node::Crossing(a) => Some(a),
                _ => None,
            })
            .collect()
    };

    let mut bad = Vec::new();
    let mut interior = 0;
    let mut triangles = BTreeSet::new();
    let mut cycles_seen = BTreeSet::new();
    let cycle_sets: Vec<BTreeSet<String>> =
        st.cycles.iter().map(|c| c.arrows.iter().map(|&a| q.arrows[a].id.clone()).collect()).collect();
    for &i in &shaded {
        let fi = &inner[i];
        let xs = crossing_set(fi);
        if fi.boundary_darts == 0 {
            interior += 1;
            match cycle_sets.iter().position(|c| *c == xs) {
                Some(c) if fi.darts.len() == st.cycles[c].len() => {
                    cycles_seen.insert(c);
                }
                _ => bad.push(format!("interior shaded face with crossings {xs:?} is no chordless cycle")),
            }
        } else if is_triangle(fi) && xs.len() == 1 {
            let a = xs.into_iter().next().unwrap();
            let ai = q.arrow_index(&a).unwrap();
            if !st.is_boundary(ai) {
                bad.push(format!("boundary triangle at interior arrow {a}"));
            }
            triangles.insert(ai);
        } else {
            bad.push(format!("shaded face with {} sides touches the boundary", fi.darts.len()));
        }
    }
    if interior != st.cycles.len() || cycles_seen.len() != st.cycles.len() {
        bad.push(format!("{interior} interior shaded faces for {} cycles", st.cycles.len()));
    }
    if triangles.len() != b || shaded.len() != st.cycles.len() + b {
        bad.push(format!("{} boundary triangles for {b} boundary arrows", triangles.len()));
    }
    ck.push("shaded_regions_match_cycles_and_boundary_arrows", bad);

    let mut bad = Vec::new();
    let mut bad_contact = Vec::new();
    for &i in &white {
        let fi = &inner[i];
        if fi.darts.len() % 2 == 1 {
            bad.push(format!("white face with {} sides", fi.darts.len()));
        }
        let ok = match fi.boundary_darts {
            1 => fi.polygon_nodes.len() == 2,
            0 => fi.polygon_nodes.len() == 1,
            _ => false,
        };
        if !ok {
            bad_contact.push(format!(
                "white face meets the boundary in {} edges and {} vertices",
                fi.boundary_darts,
                fi.polygon_nodes.len()
            ));
        }
    }
    if white.len() != b {
        bad.push(format!("{} white faces for {b} cycle paths", white.len()));
    }
    ck.push("white_regions_even_sided", bad);
    ck.push("white_regions_single_boundary_contact", bad_contact);

    // Clockwise reading of each white face, starting after its boundary contact.
    let read_cw = |fi: &FaceInfo| -> (Vec<String>, Vec<VertexId>) {
        let mut ds: Vec<usize> = fi.darts.iter().rev().map(|&d| map.twin[d]).collect();
        // Rotate so the sequence starts with the line dart leaving the boundary.
        let start = (0..ds.len())
            .find(|&k| {
                matches!(map.nodes[map.darts[ds[k]].from], Node::Polygon(_)) && map.darts[ds[k]].kind != DartKind::Boundary
            })
            .unwrap_or(0);
        ds.rotate_left(start);
        let mut arrows = Vec::new();
        let mut lines = Vec::new();
        for &d in &ds {
            if let DartKind::Line { vertex, .. } = &map.darts[d].kind {
                lines.push(vertex.clone());
                if let Node::Crossing(a) = &map.nodes[map.darts[d].to] {
                    arrows.push(a.clone());
                }
            }
        }
        (arrows, lines)
    };
    let wr = weight_report(q).ok();
    let mut bad = Vec::new();
    let mut paths_seen = BTreeSet::new();
    if let Some(wr) = &wr {
        let path_of: BTreeMap<String, (Vec<String>, Vec<VertexId>)> = wr
            .rows
            .iter()
            .map(|r| {
                let ids: Vec<String> = r.cycle_path.arrows.iter().map(|&a| q.arrows[a].id.clone()).collect();
                let mut vs = vec![q.source_id(r.cycle_path.arrows[0]).clone()];
                vs.extend(r.cycle_path.arrows.iter().map(|&a| q.target_id(a).clone()));
                (ids[0].clone(), (ids, vs))
            })
            .collect();
        for &i in &white {
            let (arrows, lines) = read_cw(&inner[i]);
            match arrows.first().and_then(|a| path_of.get(a)) {
                Some((want, vs)) if *want == arrows && *vs == lines => {
                    paths_seen.insert(arrows[0].clone());
                }
                _ => bad.push(format!("white face reads {}", arrows.join(" "))),
            }
        }
        if bad.is_empty() && paths_seen.len() != wr.rows.len() {
            bad.push("some cycle path has no white face".into());
        }
        // The two white faces next to each triangle read c(alpha) and the cocycle path of alpha.
        for &i in &shaded {
            let fi = &inner[i];
            if !is_triangle(fi) {
                continue;
            }
            let a = crossing_set(fi).into_iter().next().unwrap();
            let ai = q.arrow_index(&a).unwrap();
            let mut readings: Vec<Vec<String>> = fi
                .darts
                .iter()
                .filter(|&&d| map.darts[d].kind != DartKind::Boundary)
                .map(|&d| read_cw(&inner[face_of[map.twin[d]]]).0)
                .collect();
            let cp_ids = |dir: Direction| -> Vec<String> {
                let row = wr.row(ai).unwrap();
                let p = if dir == Direction::Cycle { &row.cycle_path } else { &row.cocycle_path };
                p.arrows.iter().map(|&x| q.arrows[x].id.clone()).collect()
            };
            let mut want = vec![cp_ids(Direction::Cycle), cp_ids(Direction::Cocycle)];
            readings.sort();
            want.sort();
            if readings != want {
                bad.push(format!("whites next to T({a}) read {readings:?}"));
            }
        }
    } else {
        bad.push("no weight report".into());
    }
    ck.push("white_regions_read_cycle_paths", bad);

    let mut bad = Vec::new();
    let dir = |d: usize| match &map.darts[d].kind {
        DartKind::Line { forward, .. } => Some(*forward),
        DartKind::Boundary => None,
    };
    for &i in &shaded {
        let ds: BTreeSet<bool> = inner[i].darts.iter().filter_map(|&d| dir(d)).collect();
        if ds.len() != 1 {
            bad.push("shaded face with mixed orientations".into());
        }
    }
    for &i in &white {
        let ds = &inner[i].darts;
        for k in 0..ds.len() {
            if let (Some(x), Some(y)) = (dir(ds[k]), dir(ds[(k + 1) % ds.len()])) {
                if x == y {
                    bad.push("white face with two consecutive segments oriented alike".into());
                }
            }
        }
    }
    ck.push("orientations_coherent_on_shaded_alternating_on_white", bad);

    // The stored regions must be the traced faces.
    let mut bad = Vec::new();
    let seg_keys = |fi: &FaceInfo| -> BTreeSet<(VertexId, Node, Node)> {
        fi.darts
            .iter()
            .filter_map(|&d| match &map.darts[d].kind {
                DartKind::Line { vertex, .. } => Some(
                    Segment {
                        line: vertex.clone(),
                        from: map.nodes[map.darts[d].from].clone(),
                        to: map.nodes[map.darts[d].to].clone(),
                    }
                    .key(),
                ),
                DartKind::Boundary => None,
            })
            .collect()
    };
    let traced: BTreeSet<BTreeSet<(VertexId, Node, Node)>> = inner.iter().map(seg_keys).collect();
    let stored: BTreeSet<BTreeSet<(VertexId, Node, Node)>> = cp
        .shaded
        .iter()
        .map(|r| r.segments.iter().map(|s| s.key()).collect())
        .chain(cp.white.iter().map(|w| w.segments.iter().map(|s| s.key()).collect()))
        .collect();
    if traced != stored {
        bad.push(format!(
            "{} stored regions differ from traced faces",
            stored.symmetric_difference(&traced).count()
        ));
    }
    ck.push("stored_regions_match_traced_faces", bad);

    finish(ck)
}

fn finish(ck: Checks) -> CheckerboardReport {
    let pass = ck.0.iter().all(|c| c.pass);
    CheckerboardReport { checks: ck.0, pass }
}
