//! Quivers, their chordless cycles and the dual graph.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A vertex id. Ids compare numerically on their leading digits, so `3 < 3' < 10`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn new(s: impl Into<String>) -> Self {
        VertexId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn sort_key(&self) -> (u8, u64, &str) {
        let digits = self.0.len() - self.0.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        match self.0[..digits].parse::<u64>() {
            Ok(n) => (0, n, &self.0[digits..]),
            Err(_) => (1, 0, &self.0),
        }
    }
}

impl Ord for VertexId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for VertexId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<u32> for VertexId {
    fn from(n: u32) -> Self {
        VertexId(n.to_string())
    }
}

/// An arrow; `source` and `target` index into [`Quiver::vertices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("{location}: unknown vertex {vertex}")]
    UnknownVertex { location: String, vertex: String },
    #[error("{location}: duplicate vertex {vertex}")]
    DuplicateVertex { location: String, vertex: String },
    #[error("{location}: duplicate arrow id {id}")]
    DuplicateArrow { location: String, id: String },
    #[error("{location}: loop at {vertex}")]
    Loop { location: String, vertex: String },
    #[error("{location}: parallel arrows {source_id}->{target}")]
    Parallel { location: String, source_id: String, target: String },
    #[error("{location}: 2-cycle between {a} and {b}")]
    TwoCycle { location: String, a: String, b: String },
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
}

/// A finite quiver without loops, 2-cycles or parallel arrows.
#[derive(Clone, Debug)]
pub struct Quiver {
    pub name: String,
    /// Sorted by [`VertexId`] order.
    pub vertices: Vec<VertexId>,
    /// In input order.
    pub arrows: Vec<Arrow>,
    vertex_ix: HashMap<VertexId, usize>,
    arrow_ix: HashMap<String, usize>,
    between: HashMap<(usize, usize), usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Quiver {
    /// Builds a quiver; `arrows` are `(id, source, target)` with the id defaulting to `"s->t"`.
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<VertexId>,
        arrows: Vec<(Option<String>, VertexId, VertexId)>,
    ) -> Result<Quiver, QuiverError> {
        let mut vs = vertices.clone();
        vs.sort();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                let pos = vertices.iter().rposition(|v| *v == w[0]).unwrap();
                return Err(QuiverError::DuplicateVertex {
                    location: format!("vertices[{pos}]"),
                    vertex: w[0].to_string(),
                });
            }
        }
        let vertex_ix: HashMap<VertexId, usize> =
            vs.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut q = Quiver {
            name: name.into(),
            vertices: vs,
            arrows: Vec::new(),
            vertex_ix,
            arrow_ix: HashMap::new(),
            between: HashMap::new(),
        };
        for (n, (id, s, t)) in arrows.into_iter().enumerate() {
            let location = format!("arrows[{n}]");
            let look = |v: &VertexId| {
                q.vertex_ix.get(v).copied().ok_or_else(|| QuiverError::UnknownVertex {
                    location: location.clone(),
                    vertex: v.to_string(),
                })
            };
            let (si, ti) = (look(&s)?, look(&t)?);
            let id = id.unwrap_or_else(|| format!("{s}->{t}"));
            if si == ti {
                return Err(QuiverError::Loop { location, vertex: s.to_string() });
            }
            if q.between.contains_key(&(si, ti)) {
                return Err(QuiverError::Parallel {
                    location,
                    source_id: s.to_string(),
                    target: t.to_string(),
                });
            }
            if q.between.contains_key(&(ti, si)) {
                return Err(QuiverError::TwoCycle { location, a: s.to_string(), b: t.to_string() });
            }
            if q.arrow_ix.contains_key(&id) {
                return Err(QuiverError::DuplicateArrow { location, id });
            }
            q.arrow_ix.insert(id.clone(), q.arrows.len());
            q.between.insert((si, ti), q.arrows.len());
            q.arrows.push(Arrow { id, source: si, target: ti });
        }
        Ok(q)
    }

    /// Convenience constructor from `(source, target)` pairs of integer ids.
    pub fn from_pairs(name: &str, pairs: &[(u32, u32)]) -> Result<Quiver, QuiverError> {
        let vs: BTreeSet<u32> = pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
        Quiver::new(
            name,
            vs.into_iter().map(VertexId::from).collect(),
            pairs.iter().map(|&(s, t)| (None, s.into(), t.into())).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, v: &VertexId) -> Option<usize> {
        self.vertex_ix.get(v).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrow_ix.get(id).copied()
    }

    /// The arrow `s -> t`, if any.
    pub fn arrow_between(&self, s: usize, t: usize) -> Option<usize> {
        self.between.get(&(s, t)).copied()
    }

    pub fn source_id(&self, a: usize) -> &VertexId {
        &self.vertices[self.arrows[a].source]
    }

    pub fn target_id(&self, a: usize) -> &VertexId {
        &self.vertices[self.arrows[a].target]
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == v || a.target == v).count()
    }

    /// `s->t` style label of an arrow by its endpoints.
    pub fn arrow_label(&self, a: usize) -> String {
        format!("{}->{}", self.source_id(a), self.target_id(a))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The same quiver with every arrow reversed; arrow ids are kept.
    pub fn opposite(&self) -> Quiver {
        Quiver::new(
            self.name.clone(),
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| {
                    (Some(a.id.clone()), self.vertices[a.target].clone(), self.vertices[a.source].clone())
                })
                .collect(),
        )
        .expect("reversing arrows keeps a quiver well formed")
    }

    /// Every chordless oriented cycle, each starting at its smallest vertex, sorted by
    /// sorted vertex list.
    pub fn chordless_cycles(&self) -> Vec<ChordlessCycle> {
        let n = self.vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        for a in &self.arrows {
            out_adj[a.source].push(a.target);
        }
        let linked = |x: usize, y: usize| self.between.contains_key(&(x, y)) || self.between.contains_key(&(y, x));
        let mut found = Vec::new();
        for s in 0..n {
            // DFS over simple paths s -> ... with all later vertices > s, no chords so far.
            let mut path = vec![s];
            let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
            while let Some(&mut (x, ref mut next)) = stack.last_mut() {
                if *next >= out_adj[x].len() {
                    stack.pop();
                    path.pop();
                    continue;
                }
                let y = out_adj[x][*next];
                *next += 1;
                if y == s {
                    if path.len() >= 3 {
                        found.push(path.clone());
                    }
                    continue;
                }
                if y < s || path.contains(&y) {
                    continue;
                }
                // y may only touch its predecessor, and s via the closing arrow y -> s.
                let chord = path[..path.len() - 1].iter().any(|&z| {
                    if z == s {
                        self.between.contains_key(&(s, y))
                    } else {
                        linked(z, y)
                    }
                });
                if chord {
                    continue;
                }
                if self.between.contains_key(&(y, s)) {
                    // Must close now; any continuation would make y -> s a chord.
                    path.push(y);
                    if path.len() >= 3 {
                        found.push(path.clone());
                    }
                    path.pop();
                    continue;
                }
                path.push(y);
                stack.push((y, 0));
            }
        }
        let mut cycles: Vec<ChordlessCycle> = found
            .into_iter()
            .map(|vs| {
                let m = vs.len();
                let arrows = (0..m).map(|i| self.between[&(vs[i], vs[(i + 1) % m])]).collect();
                ChordlessCycle { vertices: vs, arrows }
            })
            .collect();
        cycles.sort_by_key(|c| c.sorted_vertices());
        cycles
    }

    pub fn analyze(&self) -> Structure {
        Structure::new(self)
    }
}

/// An oriented chordless cycle; `arrows[i]` runs from `vertices[i]` to `vertices[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordlessCycle {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl ChordlessCycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn position(&self, arrow: usize) -> Option<usize> {
        self.arrows.iter().position(|&a| a == arrow)
    }

    pub fn successor(&self, arrow: usize) -> usize {
        let p = self.position(arrow).expect("arrow on cycle");
        self.arrows[(p + 1) % self.arrows.len()]
    }

    pub fn predecessor(&self, arrow: usize) -> usize {
        let p = self.position(arrow).expect("arrow on cycle");
        self.arrows[(p + self.arrows.len() - 1) % self.arrows.len()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Boundary,
    Interior,
    /// In no cycle, or in three or more; only seen on invalid input.
    Invalid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualNode {
    Cycle(usize),
    BoundaryArrow(usize),
}

/// Edges are labelled by the arrow they come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualEdge {
    Trunk { cycles: (usize, usize), arrow: usize },
    Leaf { cycle: usize, arrow: usize },
}

#[derive(Clone, Debug)]
pub struct DualGraph {
    pub nodes: Vec<DualNode>,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    fn endpoints(&self, e: &DualEdge) -> (DualNode, DualNode) {
        match *e {
            DualEdge::Trunk { cycles: (a, b), .. } => (DualNode::Cycle(a), DualNode::Cycle(b)),
            DualEdge::Leaf { cycle, arrow } => (DualNode::Cycle(cycle), DualNode::BoundaryArrow(arrow)),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let ix: BTreeMap<DualNode, usize> = self.nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            let (a, b) = self.endpoints(e);
            adj[ix[&a]].push(ix[&b]);
            adj[ix[&b]].push(ix[&a]);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.nodes.len()
    }

    /// Distances between cycle nodes along trunk edges from `root`; `None` if unreachable.
    pub fn cycle_distances(&self, cycle_count: usize, root: usize) -> Vec<Option<usize>> {
        let mut adj = vec![Vec::new(); cycle_count];
        for e in &self.edges {
            if let DualEdge::Trunk { cycles: (a, b), .. } = *e {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut dist = vec![None; cycle_count];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Cycles, arrow classification and dual graph of a quiver.
#[derive(Clone, Debug)]
pub struct Structure {
    pub cycles: Vec<ChordlessCycle>,
    /// Cycles containing each arrow.
    pub arrow_cycles: Vec<Vec<usize>>,
    pub kinds: Vec<ArrowKind>,
    pub dual: DualGraph,
}

impl Structure {
    pub fn new(q: &Quiver) -> Structure {
        let cycles = q.chordless_cycles();
        let mut arrow_cycles = vec![Vec::new(); q.arrow_count()];
        for (ci, c) in cycles.iter().enumerate() {
            for &a in &c.arrows {
                arrow_cycles[a].push(ci);
            }
        }
        let kinds = arrow_cycles
            .iter()
            .map(|cs| match cs.len() {
                1 => ArrowKind::Boundary,
                2 => ArrowKind::Interior,
                _ => ArrowKind::Invalid,
            })
            .collect::<Vec<_>>();
        let mut nodes: Vec<DualNode> = (0..cycles.len()).map(DualNode::Cycle).collect();
        let mut edges = Vec::new();
        for (a, cs) in arrow_cycles.iter().enumerate() {
            match cs.as_slice() {
                [c] => {
                    nodes.push(DualNode::BoundaryArrow(a));
                    edges.push(DualEdge::Leaf { cycle: *c, arrow: a });
                }
                [c, d] => edges.push(DualEdge::Trunk { cycles: (*c, *d), arrow: a }),
                _ => {}
            }
        }
        Structure { cycles, arrow_cycles, kinds, dual: DualGraph { nodes, edges } }
    }

    pub fn is_boundary(&self, a: usize) -> bool {
        self.kinds[a] == ArrowKind::Boundary
    }

    pub fn is_interior(&self, a: usize) -> bool {
        self.kinds[a] == ArrowKind::Interior
    }

    pub fn boundary_arrows(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&a| self.is_boundary(a)).collect()
    }

    pub fn interior_arrows(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&a| self.is_interior(a)).collect()
    }

    /// The cycle containing `a` other than `c`.
    pub fn other_cycle(&self, a: usize, c: usize) -> Option<usize> {
        self.arrow_cycles[a].iter().copied().find(|&d| d != c)
    }

    pub fn interior_count(&self, c: usize) -> usize {
        self.cycles[c].arrows.iter().filter(|&&a| self.is_interior(a)).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub quiver: String,
    pub checks: Vec<CheckEntry>,
    pub pass: bool,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }
}

/// Checks the dimer tree axioms and their consequences. Never fails; failures are entries.
pub fn validate_dimer_tree(q: &Quiver) -> ValidationReport {
    let st = q.analyze();
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(CheckEntry { name: name.to_string(), pass, detail })
    };
    // Loops, 2-cycles and parallel arrows are rejected when the quiver is built.
    push("no_loops_or_2cycles", true, String::new());
    push("no_parallel_arrows", true, String::new());
    push("connected", q.is_connected(), String::new());

    let uncovered: Vec<String> =
        (0..q.arrow_count()).filter(|&a| st.arrow_cycles[a].is_empty()).map(|a| q.arrows[a].id.clone()).collect();
    push("Q1_every_arrow_in_a_cycle", uncovered.is_empty(), uncovered.join(", "));

    let over: Vec<String> =
        (0..q.arrow_count()).filter(|&a| st.arrow_cycles[a].len() > 2).map(|a| q.arrows[a].id.clone()).collect();
    push("arrow_in_at_most_two_cycles", over.is_empty(), over.join(", "));

    let mut shared = Vec::new();
    for i in 0..st.cycles.len() {
        for j in i + 1..st.cycles.len() {
            let n = st.cycles[i].arrows.iter().filter(|a| st.cycles[j].arrows.contains(a)).count();
            if n > 1 {
                shared.push(format!("cycles {i},{j} share {n} arrows"));
            }
        }
    }
    push("cycles_share_at_most_one_arrow", shared.is_empty(), shared.join("; "));

    let tree = !st.cycles.is_empty() && st.dual.is_tree();
    push(
        "Q2_dual_graph_is_tree",
        tree,
        format!("{} nodes, {} edges", st.dual.nodes.len(), st.dual.edges.len()),
    );

    let bad: Vec<String> = (0..q.vertex_count())
        .filter(|&v| {
            let n = (0..q.arrow_count())
                .filter(|&a| st.is_boundary(a) && (q.arrows[a].source == v || q.arrows[a].target == v))
                .count();
            n != 2
        })
        .map(|v| q.vertices[v].to_string())
        .collect();
    push("two_boundary_arrows_per_vertex", bad.is_empty(), bad.join(", "));

    let pass = checks.iter().all(|c| c.pass);
    ValidationReport { quiver: q.name.clone(), checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn q9() -> Quiver {
        Quiver::from_pairs(
            "Q9",
            &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 2), (4, 6), (6, 9), (9, 4), (6, 7), (7, 8), (8, 3)],
        )
        .unwrap()
    }

    fn ids(q: &Quiver, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| q.vertices[v].to_string()).collect()
    }

    #[test]
    fn vertex_order_is_numeric() {
        let mut v: Vec<VertexId> = ["10", "3'", "2", "3", "a"].iter().map(|&s| s.into()).collect();
        v.sort();
        assert_eq!(v.iter().map(|x| x.as_str()).collect::<Vec<_>>(), ["2", "3", "3'", "10", "a"]);
    }

    #[test]
    fn rejects_two_cycle_loop_parallel() {
        let e = Quiver::from_pairs("x", &[(1, 2), (2, 1)]).unwrap_err();
        assert!(matches!(e, QuiverError::TwoCycle { .. }));
        assert!(e.to_string().contains("2-cycle"));
        assert!(matches!(Quiver::from_pairs("x", &[(1, 1)]).unwrap_err(), QuiverError::Loop { .. }));
        assert!(matches!(
            Quiver::from_pairs("x", &[(1, 2), (1, 2)]).unwrap_err(),
            QuiverError::Parallel { .. }
        ));
    }

    #[test]
    fn q9_cycles_and_interior_arrows() {
        let q = q9();
        let st = q.analyze();
        let cyc: Vec<Vec<String>> = st.cycles.iter().map(|c| ids(&q, &c.sorted_vertices())).collect();
        assert_eq!(
            cyc,
            vec![vec!["1", "2", "3"], vec!["2", "3", "4", "5"], vec!["3", "4", "6", "7", "8"], vec!["4", "6", "9"]]
        );
        let interior: Vec<String> = st.interior_arrows().iter().map(|&a| q.arrows[a].id.clone()).collect();
        assert_eq!(interior, ["2->3", "3->4", "4->6"]);
        assert_eq!(st.dual.nodes.len(), 13);
        assert_eq!(st.dual.edges.iter().filter(|e| matches!(e, DualEdge::Leaf { .. })).count(), 9);
        assert!(st.dual.is_tree());
        assert!(validate_dimer_tree(&q).pass);
    }

    #[test]
    fn c3_is_a_star() {
        let q = Quiver::from_pairs("C3", &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let st = q.analyze();
        assert_eq!(st.cycles.len(), 1);
        assert_eq!(st.boundary_arrows().len(), 3);
        assert_eq!(st.dual.edges.len(), 3);
        assert!(validate_dimer_tree(&q).pass);
    }

    #[test]
    fn q7_cycles_share_one_arrow() {
        let q = Quiver::from_pairs("Q7", &[(2, 1), (1, 4), (4, 5), (5, 3), (3, 2), (5, 6), (6, 7), (7, 4)]).unwrap();
        let st = q.analyze();
        let lens: Vec<usize> = st.cycles.iter().map(|c| c.len()).collect();
        assert_eq!(lens, [5, 4]);
        let interior: Vec<String> = st.interior_arrows().iter().map(|&a| q.arrows[a].id.clone()).collect();
        assert_eq!(interior, ["4->5"]);
    }

    #[test]
    fn shared_path_breaks_tree() {
        let q = Quiver::from_pairs("bad", &[(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (5, 1)]).unwrap();
        let r = validate_dimer_tree(&q);
        assert!(!r.pass);
        assert_eq!(r.check("Q2_dual_graph_is_tree"), Some(false));
        assert_eq!(r.check("cycles_share_at_most_one_arrow"), Some(false));
    }

    #[test]
    fn single_arrow_fails_q1() {
        let q = Quiver::from_pairs("arrow", &[(1, 2)]).unwrap();
        let r = validate_dimer_tree(&q);
        assert_eq!(r.check("Q1_every_arrow_in_a_cycle"), Some(false));
        assert!(!r.pass);
    }

    #[test]
    fn chords_are_excluded() {
        // 1->2->3->4->1 with chord 1->3: the chordless cycles are 1,3,4 and not the square.
        let q = Quiver::from_pairs("chord", &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
        let st = q.analyze();
        let cyc: Vec<Vec<String>> = st.cycles.iter().map(|c| ids(&q, &c.vertices)).collect();
        assert_eq!(cyc, vec![vec!["1", "3", "4"]]);
    }
}
