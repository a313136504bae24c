//! The signed potential, cycle paths and weights of a dimer tree quiver.

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{validate_dimer_tree, Quiver, Structure};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("quiver {0} is not a dimer tree quiver")]
    NotDimerTree(String),
    #[error("no cycle has exactly one interior arrow")]
    NoBaseCycle,
    #[error("arrow {0} is not a boundary arrow")]
    NotBoundary(String),
    #[error("cycle path of {0} revisits a cycle")]
    RepeatedCycle(String),
    #[error("total weight {0} is odd")]
    OddTotal(usize),
}

/// `W = sum over chordless cycles of (-1)^d(C) C`, with `d` the dual tree distance from `base`.
#[derive(Clone, Debug)]
pub struct Potential {
    /// (sign, cycle index into [`Structure::cycles`]).
    pub terms: Vec<(i8, usize)>,
    pub base: usize,
    pub distances: Vec<usize>,
}

/// The base cycle: exactly one interior arrow, smallest sorted vertex list; a lone cycle is its own base.
pub fn base_cycle(st: &Structure) -> Result<usize, WeightError> {
    if st.cycles.len() == 1 {
        return Ok(0);
    }
    // Cycles are already sorted by their sorted vertex lists.
    (0..st.cycles.len()).find(|&c| st.interior_count(c) == 1).ok_or(WeightError::NoBaseCycle)
}

pub fn build_potential(q: &Quiver) -> Result<Potential, WeightError> {
    if !validate_dimer_tree(q).pass {
        return Err(WeightError::NotDimerTree(q.name.clone()));
    }
    let st = q.analyze();
    let base = base_cycle(&st)?;
    let distances: Vec<usize> = st
        .dual
        .cycle_distances(st.cycles.len(), base)
        .into_iter()
        .map(|d| d.expect("dual tree is connected"))
        .collect();
    let terms = distances.iter().enumerate().map(|(c, &d)| (if d % 2 == 0 { 1 } else { -1 }, c)).collect();
    Ok(Potential { terms, base, distances })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Cycle,
    Cocycle,
}

/// `arrows` are in path order; for a cocycle path the given arrow is last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePath {
    pub arrows: Vec<usize>,
    /// `cycles[i]` contains `arrows[i]` followed by `arrows[i+1]`.
    pub cycles: Vec<usize>,
    pub direction: Direction,
}

impl CyclePath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn weight(&self) -> u8 {
        if self.arrows.len() % 2 == 1 {
            1
        } else {
            2
        }
    }
}

/// Walks successors (or predecessors) through cycles, switching cycle at each interior arrow.
pub fn cycle_path(q: &Quiver, st: &Structure, a: usize, direction: Direction) -> Result<CyclePath, WeightError> {
    if !st.is_boundary(a) {
        return Err(WeightError::NotBoundary(q.arrows[a].id.clone()));
    }
    let mut arrows = vec![a];
    let mut cycles = Vec::new();
    let mut cur = st.arrow_cycles[a][0];
    let mut arrow = a;
    loop {
        if cycles.contains(&cur) {
            return Err(WeightError::RepeatedCycle(q.arrows[a].id.clone()));
        }
        cycles.push(cur);
        let c = &st.cycles[cur];
        arrow = match direction {
            Direction::Cycle => c.successor(arrow),
            Direction::Cocycle => c.predecessor(arrow),
        };
        arrows.push(arrow);
        if st.is_boundary(arrow) {
            break;
        }
        cur = st.other_cycle(arrow, cur).expect("interior arrow has two cycles");
    }
    if direction == Direction::Cocycle {
        arrows.reverse();
        cycles.reverse();
    }
    Ok(CyclePath { arrows, cycles, direction })
}

#[derive(Clone, Debug)]
pub struct ArrowWeight {
    pub arrow: usize,
    pub weight: u8,
    pub coweight: u8,
    pub cycle_path: CyclePath,
    pub cocycle_path: CyclePath,
}

#[derive(Clone, Debug)]
pub struct WeightReport {
    /// One row per boundary arrow, in arrow order.
    pub rows: Vec<ArrowWeight>,
    pub total: usize,
}

impl WeightReport {
    /// N, half the total weight.
    pub fn n(&self) -> usize {
        self.total / 2
    }

    pub fn row(&self, arrow: usize) -> Option<&ArrowWeight> {
        self.rows.iter().find(|r| r.arrow == arrow)
    }

    pub fn weight(&self, arrow: usize) -> Option<u8> {
        self.row(arrow).map(|r| r.weight)
    }

    pub fn coweight(&self, arrow: usize) -> Option<u8> {
        self.row(arrow).map(|r| r.coweight)
    }
}

pub fn weight_report(q: &Quiver) -> Result<WeightReport, WeightError> {
    if !validate_dimer_tree(q).pass {
        return Err(WeightError::NotDimerTree(q.name.clone()));
    }
    let st = q.analyze();
    weight_report_with(q, &st)
}

pub fn weight_report_with(q: &Quiver, st: &Structure) -> Result<WeightReport, WeightError> {
    let mut rows = Vec::new();
    for a in st.boundary_arrows() {
        let cp = cycle_path(q, st, a, Direction::Cycle)?;
        let cc = cycle_path(q, st, a, Direction::Cocycle)?;
        rows.push(ArrowWeight { arrow: a, weight: cp.weight(), coweight: cc.weight(), cycle_path: cp, cocycle_path: cc });
    }
    let total: usize = rows.iter().map(|r| r.weight as usize).sum();
    if total % 2 == 1 {
        return Err(WeightError::OddTotal(total));
    }
    Ok(WeightReport { rows, total })
}

/// `v1->v2->...` rendering of a path by vertex ids.
pub fn path_string(q: &Quiver, arrows: &[usize]) -> String {
    let mut s = q.source_id(arrows[0]).to_string();
    for &a in arrows {
        s.push_str("->");
        s.push_str(q.target_id(a).as_str());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn arrow(q: &Quiver, id: &str) -> usize {
        q.arrow_index(id).unwrap()
    }

    #[test]
    fn q9_table() {
        let q = q9();
        let r = weight_report(&q).unwrap();
        let mut got: Vec<(String, u8)> =
            r.rows.iter().map(|row| (path_string(&q, &row.cycle_path.arrows), row.weight)).collect();
        let mut want: Vec<(String, u8)> = [
            ("1->2->3->4->6->9", 1),
            ("3->1->2", 2),
            ("8->3->4->5", 1),
            ("7->8->3", 2),
            ("6->7->8", 2),
            ("6->9->4", 2),
            ("9->4->6->7", 1),
            ("4->5->2", 2),
            ("5->2->3->1", 1),
        ]
        .iter()
        .map(|&(s, w)| (s.to_string(), w))
        .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(r.total, 14);
        assert_eq!(r.n(), 7);
    }

    #[test]
    fn q9_named_paths() {
        let q = q9();
        let st = q.analyze();
        let p = cycle_path(&q, &st, arrow(&q, "1->2"), Direction::Cycle).unwrap();
        assert_eq!(path_string(&q, &p.arrows), "1->2->3->4->6->9");
        assert_eq!(p.len(), 5);
        let p = cycle_path(&q, &st, arrow(&q, "3->1"), Direction::Cycle).unwrap();
        assert_eq!(path_string(&q, &p.arrows), "3->1->2");
        assert!(cycle_path(&q, &st, arrow(&q, "2->3"), Direction::Cycle).is_err());
    }

    #[test]
    fn c3_all_weight_two() {
        let q = Quiver::from_pairs("C3", &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let r = weight_report(&q).unwrap();
        assert!(r.rows.iter().all(|row| row.weight == 2 && row.coweight == 2));
        assert_eq!(r.total, 6);
        let w = build_potential(&q).unwrap();
        assert_eq!(w.terms, vec![(1, 0)]);
    }

    #[test]
    fn q7_weights_and_signs() {
        let q = q7();
        let st = q.analyze();
        let p = cycle_path(&q, &st, arrow(&q, "1->4"), Direction::Cycle).unwrap();
        assert_eq!(path_string(&q, &p.arrows), "1->4->5->6");
        let r = weight_report(&q).unwrap();
        assert_eq!(r.total, 12);
        for row in &r.rows {
            let id = q.arrows[row.arrow].id.as_str();
            let want = if id == "1->4" || id == "7->4" { 1 } else { 2 };
            assert_eq!(row.weight, want, "{id}");
        }
        let w = build_potential(&q).unwrap();
        assert_eq!(st.cycles[w.base].len(), 5);
        let signs: Vec<i8> = w.terms.iter().map(|t| t.0).collect();
        assert_eq!(signs, [1, -1]);
    }

    #[test]
    fn q9_signs_alternate_along_path() {
        let q = q9();
        let w = build_potential(&q).unwrap();
        assert_eq!(w.base, 0);
        assert_eq!(w.distances, [0, 1, 2, 3]);
        let signs: Vec<i8> = w.terms.iter().map(|t| t.0).collect();
        assert_eq!(signs, [1, -1, 1, -1]);
    }

    #[test]
    fn cocycle_of_last_arrow_is_cycle_path() {
        for q in [q9(), q7()] {
            let r = weight_report(&q).unwrap();
            for row in &r.rows {
                let last = *row.cycle_path.arrows.last().unwrap();
                let back = &r.row(last).unwrap().cocycle_path;
                assert_eq!(back.arrows, row.cycle_path.arrows);
                assert_eq!(r.coweight(last), Some(row.weight));
            }
            let wsum: usize = r.rows.iter().map(|x| x.weight as usize).sum();
            let csum: usize = r.rows.iter().map(|x| x.coweight as usize).sum();
            assert_eq!(wsum, csum);
        }
    }
}
