use std::collections::{BTreeMap, VecDeque};

use super::*;
use crate::diag::wrap;
use crate::quiver::{validate_dimer_tree, Quiver, Structure};
use crate::weights::{weight_report_with, WeightReport};

/// Arrows at `v` in the order `rho(v)` meets their crossings, from the triangle holding
/// `start` (a boundary arrow at `v`) to the other boundary arrow at `v`.
pub fn crossing_order(q: &Quiver, st: &Structure, v: usize, start: usize) -> Vec<usize> {
    let at_v = |a: usize| q.arrows[a].source == v || q.arrows[a].target == v;
    let mut order = vec![start];
    let mut cycle = st.arrow_cycles[start][0];
    let mut cur = start;
    loop {
        // A chordless cycle through v has exactly two arrows at v.
        let next = st.cycles[cycle].arrows.iter().copied().find(|&a| a != cur && at_v(a)).expect("cycle through v");
        order.push(next);
        if st.is_boundary(next) {
            return order;
        }
        cycle = st.other_cycle(next, cycle).expect("interior arrow");
        cur = next;
    }
}

/// Builds the polygon seeded at the first boundary arrow, in canonical rotation.
pub fn build_checkerboard(q: &Quiver) -> Result<CheckerboardPolygon, CheckerboardError> {
    build_from_seed(q, None)
}

/// Builds the polygon starting the clockwise boundary walk at `seed` (a boundary arrow id).
pub fn build_from_seed(q: &Quiver, seed: Option<&str>) -> Result<CheckerboardPolygon, CheckerboardError> {
    if !validate_dimer_tree(q).pass {
        return Err(CheckerboardError::NotDimerTree(q.name.clone()));
    }
    let st = q.analyze();
    let wr = weight_report_with(q, &st).map_err(|e| CheckerboardError::Arrangement(e.to_string()))?;
    let boundary = st.boundary_arrows();
    let seed = match seed {
        None => boundary[0],
        Some(id) => q
            .arrow_index(id)
            .filter(|&a| st.is_boundary(a))
            .ok_or_else(|| CheckerboardError::Arrangement(format!("seed {id} is not a boundary arrow")))?,
    };
    let layout = Layout::new(q, &wr, seed)?;
    let candidates = [layout.polygon(q, &st, &wr, 1)?, layout.polygon(q, &st, &wr, 2)?];
    let best = candidates
        .into_iter()
        .map(|p| canonical(&p))
        .min_by(|a, b| a.signature().cmp(&b.signature()))
        .unwrap();
    Ok(best)
}

/// Rotates so that the tail of the first radical line sits at label 1.
fn canonical(p: &CheckerboardPolygon) -> CheckerboardPolygon {
    let t = p.radical_lines[0].tail;
    let mut out = p.rotated(1 - t as i64);
    // Triangles and white regions go in clockwise order of where they meet the boundary.
    out.shaded.sort_by_key(|r| match r.kind {
        ShadedKind::Cycle { .. } => (0, 0),
        ShadedKind::BoundaryArrow { .. } => (1, r.boundary_edges[0][0]),
    });
    out.white.sort_by_key(|w| match w.contact {
        Contact::Vertex(p) | Contact::Edge([p, _]) => p,
    });
    out
}

/// Triangles in clockwise order, each contributing (source corner, target corner).
struct Layout {
    /// Boundary arrows in clockwise order.
    order: Vec<usize>,
    /// Position of each corner: `2t` is the source corner of triangle `t`, `2t+1` the target.
    pos: Vec<u32>,
    /// Whether the white region after triangle `t` closes at a single vertex.
    identified: Vec<bool>,
    total: u32,
}

impl Layout {
    fn new(q: &Quiver, wr: &WeightReport, seed: usize) -> Result<Layout, CheckerboardError> {
        // f(alpha) is the last arrow of the cycle path of alpha; clockwise, T(alpha) is
        // followed by the white region of c(beta) and then T(beta), where f(beta) = alpha.
        let mut prev_of: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &wr.rows {
            let last = *row.cycle_path.arrows.last().unwrap();
            if prev_of.insert(last, row.arrow).is_some() {
                return Err(CheckerboardError::Arrangement(format!(
                    "two cycle paths end at {}",
                    q.arrows[last].id
                )));
            }
        }
        let mut order = vec![seed];
        loop {
            let next = *prev_of
                .get(order.last().unwrap())
                .ok_or_else(|| CheckerboardError::Arrangement("cycle paths do not permute boundary arrows".into()))?;
            if next == seed {
                break;
            }
            if order.contains(&next) {
                return Err(CheckerboardError::Arrangement("boundary walk revisits an arrow".into()));
            }
            order.push(next);
        }
        if order.len() != wr.rows.len() {
            return Err(CheckerboardError::Arrangement(format!(
                "boundary walk covers {} of {} boundary arrows",
                order.len(),
                wr.rows.len()
            )));
        }
        let b = order.len();
        let corner_vertex = |c: usize| {
            let a = &q.arrows[order[c / 2]];
            if c.is_multiple_of(2) {
                a.source
            } else {
                a.target
            }
        };
        // Corner graph: triangle partners and the two ends of each line.
        let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..2 * b {
            ends.entry(corner_vertex(c)).or_default().push(c);
        }
        let mut adj = vec![Vec::new(); 2 * b];
        for c in 0..2 * b {
            adj[c].push(c ^ 1);
        }
        for (v, cs) in &ends {
            if cs.len() != 2 {
                return Err(CheckerboardError::Parity(format!(
                    "vertex {} has {} line ends",
                    q.vertices[*v],
                    cs.len()
                )));
            }
            adj[cs[0]].push(cs[1]);
            adj[cs[1]].push(cs[0]);
        }
        if ends.len() != q.vertex_count() {
            return Err(CheckerboardError::Parity("some vertex has no boundary arrow".into()));
        }
        let mut colour: Vec<Option<bool>> = vec![None; 2 * b];
        for s in 0..2 * b {
            if colour[s].is_some() {
                continue;
            }
            if s > 0 {
                return Err(CheckerboardError::Parity("the orientation walk misses some radical lines".into()));
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(c) = queue.pop_front() {
                for &d in &adj[c] {
                    match colour[d] {
                        None => {
                            colour[d] = Some(!colour[c].unwrap());
                            queue.push_back(d);
                        }
                        Some(x) if x == colour[c].unwrap() => {
                            return Err(CheckerboardError::Parity(format!(
                                "corner colouring conflict at line {}",
                                q.vertices[corner_vertex(d)]
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        let colour: Vec<bool> = colour.into_iter().map(|c| c.unwrap()).collect();
        let mut pos = vec![0u32; 2 * b];
        let mut identified = vec![false; b];
        let mut p = 0u32;
        for t in 0..b {
            pos[2 * t] = p;
            pos[2 * t + 1] = p + 1;
            p += 1;
            let next = (2 * t + 2) % (2 * b);
            identified[t] = colour[2 * t + 1] == colour[next];
            // The white region between T(order[t]) and T(order[t+1]) reads c(order[t+1]).
            let len = wr.row(order[(t + 1) % b]).unwrap().cycle_path.len();
            if identified[t] != (len % 2 == 1) {
                return Err(CheckerboardError::Parity(format!(
                    "white region of {} has length {} but its corners {}",
                    q.arrows[order[(t + 1) % b]].id,
                    len,
                    if identified[t] { "have equal parity" } else { "have opposite parity" }
                )));
            }
            if !identified[t] {
                p += 1;
            }
        }
        // An identified last gap puts corner 2b-1 at position `total`, i.e. on corner 0.
        let total = p;
        if total as usize != wr.total {
            return Err(CheckerboardError::Arrangement(format!(
                "{total} boundary edges but total weight {}",
                wr.total
            )));
        }
        Ok(Layout { order, pos, identified, total })
    }

    /// Labels positions starting at `first` (1 or 2) and assembles all data.
    fn polygon(
        &self,
        q: &Quiver,
        st: &Structure,
        wr: &WeightReport,
        first: u32,
    ) -> Result<CheckerboardPolygon, CheckerboardError> {
        let n = self.total / 2;
        let b = self.order.len();
        let label = |c: usize| wrap((self.pos[c] + first) as i64, n);
        // Line ends: the corner in the triangle, for each (vertex, triangle).
        let mut corner_of: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        let mut ends: BTreeMap<usize, Vec<(u32, usize)>> = BTreeMap::new();
        for t in 0..b {
            let a = &q.arrows[self.order[t]];
            for (c, v) in [(2 * t, a.source), (2 * t + 1, a.target)] {
                corner_of.insert((v, self.order[t]), label(c));
                ends.entry(v).or_default().push((label(c), self.order[t]));
            }
        }
        let mut radical_lines = Vec::new();
        let mut order_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&v, e) in &ends {
            let ((x, ax), (y, ay)) = (e[0], e[1]);
            let d = TwoDiagonal::new(x, y, n).map_err(|_| {
                CheckerboardError::Parity(format!("rho({}) = ({x},{y}) is not a 2-diagonal", q.vertices[v]))
            })?;
            let tail_arrow = if d.tail == x { ax } else { ay };
            let ord = crossing_order(q, st, v, tail_arrow);
            if *ord.last().unwrap() != if d.tail == x { ay } else { ax } {
                return Err(CheckerboardError::Arrangement(format!(
                    "rho({}) does not join its two boundary triangles",
                    q.vertices[v]
                )));
            }
            radical_lines.push(RadicalLine {
                vertex: q.vertices[v].clone(),
                tail: d.tail,
                head: d.head,
                crossings: ord.iter().map(|&a| q.arrows[a].id.clone()).collect(),
            });
            order_of.insert(v, ord);
        }
        let crossings = (0..q.arrow_count())
            .map(|a| {
                let arr = &q.arrows[a];
                let at = |v: usize| order_of[&v].iter().position(|&x| x == a).expect("arrow on its lines");
                CrossingData {
                    arrow: arr.id.clone(),
                    lines: [q.vertices[arr.source].clone(), q.vertices[arr.target].clone()],
                    positions: [at(arr.source), at(arr.target)],
                }
            })
            .collect();
        let vid = |v: usize| q.vertices[v].clone();
        let xing = |a: usize| Node::Crossing(q.arrows[a].id.clone());
        let mut shaded = Vec::new();
        for c in &st.cycles {
            let m = c.len();
            let segments = (0..m)
                .map(|k| Segment { line: vid(c.vertices[(k + 1) % m]), from: xing(c.arrows[k]), to: xing(c.arrows[(k + 1) % m]) })
                .collect();
            shaded.push(ShadedRegion {
                kind: ShadedKind::Cycle { arrows: c.arrows.iter().map(|&a| q.arrows[a].id.clone()).collect() },
                segments,
                boundary_edges: vec![],
            });
        }
        for t in 0..b {
            let a = self.order[t];
            let arr = &q.arrows[a];
            let (ps, pt) = (corner_of[&(arr.source, a)], corner_of[&(arr.target, a)]);
            shaded.push(ShadedRegion {
                kind: ShadedKind::BoundaryArrow { arrow: arr.id.clone() },
                segments: vec![
                    Segment { line: vid(arr.source), from: Node::Polygon(ps), to: xing(a) },
                    Segment { line: vid(arr.target), from: xing(a), to: Node::Polygon(pt) },
                ],
                boundary_edges: vec![[ps, pt]],
            });
        }
        let mut white = Vec::new();
        for t in 0..b {
            let first_arrow = self.order[(t + 1) % b];
            let path = &wr.row(first_arrow).unwrap().cycle_path.arrows;
            let last_arrow = *path.last().unwrap();
            debug_assert_eq!(last_arrow, self.order[t]);
            let x0 = q.arrows[path[0]].source;
            let xl = q.arrows[last_arrow].target;
            let (start, end) = (corner_of[&(x0, first_arrow)], corner_of[&(xl, last_arrow)]);
            let mut segments = vec![Segment { line: vid(x0), from: Node::Polygon(start), to: xing(path[0]) }];
            for k in 0..path.len() - 1 {
                segments.push(Segment { line: vid(q.arrows[path[k]].target), from: xing(path[k]), to: xing(path[k + 1]) });
            }
            segments.push(Segment { line: vid(xl), from: xing(last_arrow), to: Node::Polygon(end) });
            let contact = if self.identified[t] {
                debug_assert_eq!(start, end);
                Contact::Vertex(start)
            } else {
                Contact::Edge([end, start])
            };
            white.push(WhiteRegion { path: path.iter().map(|&a| q.arrows[a].id.clone()).collect(), segments, contact });
        }
        Ok(CheckerboardPolygon { n, radical_lines, crossings, shaded, white })
    }
}
