//! 2-diagonals of a 2N-gon, their pivots, rotation and the translation quiver they form.
//!
//! Polygon vertices are labelled `1..=2N` clockwise. A 2-diagonal is stored tail first,
//! tail odd and head even.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagError {
    #[error("polygon needs N >= 3, got {0}")]
    TooSmall(u32),
    #[error("({0},{1}) is not a 2-diagonal of the {2}-gon")]
    NotTwoDiagonal(u32, u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoDiagonal {
    pub tail: u32,
    pub head: u32,
}

impl fmt::Display for TwoDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

/// Label arithmetic modulo `2n`, kept in `1..=2n`.
pub fn wrap(x: i64, n: u32) -> u32 {
    let m = 2 * n as i64;
    ((x - 1).rem_euclid(m) + 1) as u32
}

/// Steps clockwise from `a` to `b`, in `0..2n`.
pub fn cw_dist(a: u32, b: u32, n: u32) -> u32 {
    (b as i64 - a as i64).rem_euclid(2 * n as i64) as u32
}

/// True when `x` lies strictly inside the clockwise arc from `a` to `b`.
pub fn strictly_between(a: u32, x: u32, b: u32, n: u32) -> bool {
    let d = cw_dist(a, x, n);
    d > 0 && d < cw_dist(a, b, n)
}

impl TwoDiagonal {
    /// Orients the chord `{x, y}` odd to even; fails unless it is a 2-diagonal.
    pub fn new(x: u32, y: u32, n: u32) -> Result<TwoDiagonal, DiagError> {
        let bad = DiagError::NotTwoDiagonal(x, y, 2 * n);
        if x == 0 || y == 0 || x > 2 * n || y > 2 * n || x % 2 == y % 2 {
            return Err(bad);
        }
        let d = cw_dist(x, y, n);
        if d == 1 || d == 2 * n - 1 {
            return Err(bad);
        }
        Ok(if x % 2 == 1 { TwoDiagonal { tail: x, head: y } } else { TwoDiagonal { tail: y, head: x } })
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.tail, self.head)
    }

    pub fn touches(&self, v: u32) -> bool {
        self.tail == v || self.head == v
    }

    /// True if the chord is a diameter of the polygon.
    pub fn is_diameter(&self, n: u32) -> bool {
        cw_dist(self.tail, self.head, n) == n
    }
}

/// Brute force: every chord whose two cut polygons both have an even number (>= 4) of vertices.
pub fn brute_force_diagonals(n: u32) -> Vec<TwoDiagonal> {
    let m = 2 * n;
    let mut out = BTreeSet::new();
    for x in 1..=m {
        for y in x + 1..=m {
            // The clockwise arc x..y has d+1 vertices, the other side m-d+1.
            let d = y - x;
            let (left, right) = (d + 1, m - d + 1);
            if left % 2 == 0 && right % 2 == 0 && left >= 4 && right >= 4 {
                out.insert(TwoDiagonal::new(x, y, n).expect("even cuts give a 2-diagonal"));
            }
        }
    }
    out.into_iter().collect()
}

/// All 2-diagonals sorted by (tail, head); there are N(N-2) of them.
pub fn enumerate_diagonals(n: u32) -> Result<Vec<TwoDiagonal>, DiagError> {
    if n < 3 {
        return Err(DiagError::TooSmall(n));
    }
    let mut out = Vec::new();
    for t in (1..=2 * n).step_by(2) {
        for h in (2..=2 * n).step_by(2) {
            if let Ok(g) = TwoDiagonal::new(t, h, n) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fix {
    Tail,
    Head,
}

/// The 2-pivot: the free endpoint moves two steps clockwise. `None` if the result is adjacent.
pub fn pivot(g: TwoDiagonal, fix: Fix, n: u32) -> Option<TwoDiagonal> {
    match fix {
        Fix::Tail => TwoDiagonal::new(g.tail, wrap(g.head as i64 + 2, n), n).ok(),
        Fix::Head => TwoDiagonal::new(wrap(g.tail as i64 + 2, n), g.head, n).ok(),
    }
}

/// `R^k`: both endpoints move `k` steps clockwise and the orientation is re-read from parity.
pub fn rotate(g: TwoDiagonal, k: i64, n: u32) -> TwoDiagonal {
    TwoDiagonal::new(wrap(g.tail as i64 + k, n), wrap(g.head as i64 + k, n), n)
        .expect("rotation preserves 2-diagonals")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Crossing {
    None,
    LeftToRight,
    RightToLeft,
}

/// Strict interleaving of endpoints; shared endpoints do not count as crossing.
pub fn chords_cross(a: (u32, u32), b: (u32, u32), n: u32) -> bool {
    let (x, y) = a;
    if [b.0, b.1].iter().any(|&v| v == x || v == y) {
        return false;
    }
    strictly_between(x, b.0, y, n) != strictly_between(x, b.1, y, n)
}

/// How `other` crosses `g`.
///
/// With labels increasing clockwise, the right-hand side of `g` (walking tail to head) is the
/// arc running clockwise from head back to tail. `other` crosses from right to left exactly when
/// its tail lies on that arc.
pub fn crossing(g: TwoDiagonal, other: TwoDiagonal, n: u32) -> Crossing {
    if !chords_cross(g.endpoints(), other.endpoints(), n) {
        return Crossing::None;
    }
    if strictly_between(g.head, other.tail, g.tail, n) {
        Crossing::RightToLeft
    } else {
        Crossing::LeftToRight
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PivotArrow {
    pub from: TwoDiagonal,
    pub to: TwoDiagonal,
    pub fixed: Fix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mesh {
    pub start: TwoDiagonal,
    pub middle: Vec<TwoDiagonal>,
    pub end: TwoDiagonal,
}

/// The translation quiver of 2-diagonals with pivot arrows and `tau = R^-2`.
#[derive(Clone, Debug)]
pub struct TranslationQuiver {
    pub n: u32,
    pub nodes: Vec<TwoDiagonal>,
    pub arrows: Vec<PivotArrow>,
}

impl TranslationQuiver {
    pub fn tau(&self, g: TwoDiagonal) -> TwoDiagonal {
        rotate(g, -2, self.n)
    }

    pub fn predecessors(&self, g: TwoDiagonal) -> Vec<TwoDiagonal> {
        self.arrows.iter().filter(|a| a.to == g).map(|a| a.from).collect()
    }

    pub fn successors(&self, g: TwoDiagonal) -> Vec<TwoDiagonal> {
        self.arrows.iter().filter(|a| a.from == g).map(|a| a.to).collect()
    }

    /// `sigma(y -> x) = (tau x -> y)`; unique since there are no multiple arrows.
    pub fn sigma(&self, a: &PivotArrow) -> Option<PivotArrow> {
        let t = self.tau(a.to);
        self.arrows.iter().copied().find(|b| b.from == t && b.to == a.from)
    }

    /// The mesh ending at each node, with middle terms the pivot targets of `tau x`.
    pub fn meshes(&self) -> Vec<Mesh> {
        self.nodes
            .iter()
            .map(|&x| {
                let start = self.tau(x);
                let mut middle = self.successors(start);
                middle.sort();
                Mesh { start, middle, end: x }
            })
            .collect()
    }

    /// Checks `#(y -> x) = #(tau x -> y)` for every pair, i.e. predecessors of `x` are
    /// exactly the successors of `tau x`.
    pub fn translation_axiom_holds(&self) -> bool {
        self.nodes.iter().all(|&x| {
            let mut p = self.predecessors(x);
            let mut s = self.successors(self.tau(x));
            p.sort();
            s.sort();
            p == s
        })
    }

    /// The tau-orbits, each listed from its smallest member.
    pub fn tau_orbits(&self) -> Vec<Vec<TwoDiagonal>> {
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for &g in &self.nodes {
            if seen.contains(&g) {
                continue;
            }
            let mut orbit = vec![g];
            seen.insert(g);
            let mut x = self.tau(g);
            while x != g {
                orbit.push(x);
                seen.insert(x);
                x = self.tau(x);
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph diag{} {{\n", 2 * self.n);
        for g in &self.nodes {
            s.push_str(&format!("  \"{g}\";\n"));
        }
        for a in &self.arrows {
            s.push_str(&format!("  \"{}\" -> \"{}\";\n", a.from, a.to));
        }
        for g in &self.nodes {
            s.push_str(&format!("  \"{}\" -> \"{}\" [style=dashed];\n", g, self.tau(*g)));
        }
        s.push_str("}\n");
        s
    }
}

pub fn ar_quiver(n: u32) -> Result<TranslationQuiver, DiagError> {
    let nodes = enumerate_diagonals(n)?;
    let mut arrows = Vec::new();
    for &g in &nodes {
        for fix in [Fix::Tail, Fix::Head] {
            if let Some(to) = pivot(g, fix, n) {
                arrows.push(PivotArrow { from: g, to, fixed: fix });
            }
        }
    }
    Ok(TranslationQuiver { n, nodes, arrows })
}

/// A boundary arc `(a, b)` of the punctured N-gon.
pub type Arc = (u32, u32);

fn next(a: u32, n: u32) -> u32 {
    a % n + 1
}

pub fn arcs(n: u32) -> Vec<Arc> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b && next(a, n) != b {
                out.push((a, b));
            }
        }
    }
    out
}

/// Irreducible maps between arcs: `(a,b) -> (a,b+1)` and `(a,b) -> (a+1,b)` when both are arcs.
pub fn arc_arrows(n: u32) -> Vec<(Arc, Arc)> {
    let set: BTreeSet<Arc> = arcs(n).into_iter().collect();
    let mut out = Vec::new();
    for &(a, b) in &set {
        for t in [(a, next(b, n)), (next(a, n), b)] {
            if set.contains(&t) {
                out.push(((a, b), t));
            }
        }
    }
    out
}

/// Position of `a+` on the clockwise labels when `1+, 1-, ..., N+, N-` run counterclockwise.
pub fn plus_ccw(a: u32, n: u32) -> u32 {
    wrap(3 - 2 * a as i64, n)
}

pub fn minus_ccw(a: u32, n: u32) -> u32 {
    wrap(2 - 2 * a as i64, n)
}

/// `chi(a,b) = (a-, b+)` with the counterclockwise labelling.
pub fn chi(arc: Arc, n: u32) -> TwoDiagonal {
    TwoDiagonal::new(minus_ccw(arc.0, n), plus_ccw(arc.1, n), n).expect("chi lands on 2-diagonals")
}

/// `chi` followed by the reflection fixing label 1, i.e. `a+ = 2a-1`, `a- = 2a` clockwise.
pub fn chi_reflected(arc: Arc, n: u32) -> TwoDiagonal {
    TwoDiagonal::new(2 * arc.0, 2 * arc.1 - 1, n).expect("chi lands on 2-diagonals")
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiReport {
    pub n: u32,
    pub arcs: usize,
    pub diagonals: usize,
    pub bijective: bool,
    /// Reflected chi carries arc arrows onto pivot arrows.
    pub isomorphism: bool,
    /// Raw chi carries arc arrows onto reversed pivot arrows.
    pub anti_isomorphism: bool,
}

pub fn arc_bijection_chi(n: u32) -> Result<ChiReport, DiagError> {
    let tq = ar_quiver(n)?;
    let all = arcs(n);
    let diags: BTreeSet<TwoDiagonal> = tq.nodes.iter().copied().collect();
    let pivots: BTreeSet<(TwoDiagonal, TwoDiagonal)> = tq.arrows.iter().map(|a| (a.from, a.to)).collect();
    let maps_onto = |f: &dyn Fn(Arc) -> TwoDiagonal| {
        let img: BTreeSet<TwoDiagonal> = all.iter().map(|&a| f(a)).collect();
        img.len() == all.len() && img == diags
    };
    let bijective = maps_onto(&|a| chi(a, n)) && maps_onto(&|a| chi_reflected(a, n));
    let arr = arc_arrows(n);
    let image = |f: &dyn Fn(Arc) -> TwoDiagonal, rev: bool| -> BTreeSet<(TwoDiagonal, TwoDiagonal)> {
        arr.iter().map(|&(x, y)| if rev { (f(y), f(x)) } else { (f(x), f(y)) }).collect()
    };
    let isomorphism = arr.len() == pivots.len() && image(&|a| chi_reflected(a, n), false) == pivots;
    let anti_isomorphism = arr.len() == pivots.len() && image(&|a| chi(a, n), true) == pivots;
    Ok(ChiReport { n, arcs: all.len(), diagonals: diags.len(), bijective, isomorphism, anti_isomorphism })
}

/// Nodes grouped by clockwise tail-to-head distance.
pub fn by_span(tq: &TranslationQuiver) -> BTreeMap<u32, Vec<TwoDiagonal>> {
    let mut m: BTreeMap<u32, Vec<TwoDiagonal>> = BTreeMap::new();
    for &g in &tq.nodes {
        m.entry(cw_dist(g.tail, g.head, tq.n)).or_default().push(g);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(t: u32, h: u32, n: u32) -> TwoDiagonal {
        TwoDiagonal::new(t, h, n).unwrap()
    }

    #[test]
    fn hexagon_has_three_diameters() {
        let all = enumerate_diagonals(3).unwrap();
        assert_eq!(all, vec![d(1, 4, 3), d(3, 6, 3), d(5, 2, 3)]);
        assert_eq!(all, brute_force_diagonals(3));
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 3..=12 {
            let all = enumerate_diagonals(n).unwrap();
            assert_eq!(all.len() as u32, n * (n - 2));
            assert_eq!(all, brute_force_diagonals(n));
        }
        assert!(enumerate_diagonals(2).is_err());
    }

    #[test]
    fn pivot_examples() {
        assert_eq!(pivot(d(1, 4, 4), Fix::Tail, 4), Some(d(1, 6, 4)));
        assert_eq!(pivot(d(1, 4, 4), Fix::Head, 4), None);
        assert_eq!(pivot(d(1, 4, 7), Fix::Tail, 7), Some(d(1, 6, 7)));
    }

    #[test]
    fn rotation_examples() {
        let r = rotate(d(1, 4, 4), 1, 4);
        assert_eq!((r.tail, r.head), (5, 2));
        for g in enumerate_diagonals(7).unwrap() {
            assert_eq!(rotate(g, 14, 7), g);
        }
        assert_eq!(rotate(d(1, 4, 3), 2, 3), d(3, 6, 3));
    }

    #[test]
    fn crossing_directions() {
        let (a, b, c) = (d(1, 4, 4), d(3, 6, 4), d(5, 8, 4));
        assert_eq!(crossing(a, b, 4), Crossing::LeftToRight);
        assert_eq!(crossing(b, a, 4), Crossing::RightToLeft);
        assert_eq!(crossing(a, c, 4), Crossing::None);
    }

    #[test]
    fn crossing_is_antisymmetric() {
        for n in 3..=7 {
            let all = enumerate_diagonals(n).unwrap();
            for &g in &all {
                for &h in &all {
                    let (x, y) = (crossing(g, h, n), crossing(h, g, n));
                    let want = match x {
                        Crossing::None => Crossing::None,
                        Crossing::LeftToRight => Crossing::RightToLeft,
                        Crossing::RightToLeft => Crossing::LeftToRight,
                    };
                    assert_eq!(y, want);
                }
            }
        }
    }

    #[test]
    fn rotation_commutes_with_pivots() {
        let n = 6;
        for g in enumerate_diagonals(n).unwrap() {
            for k in 0..12 {
                let targets = |x: TwoDiagonal| -> BTreeSet<TwoDiagonal> {
                    [Fix::Tail, Fix::Head].iter().filter_map(|&f| pivot(x, f, n)).collect()
                };
                let rotated: BTreeSet<TwoDiagonal> = targets(g).into_iter().map(|x| rotate(x, k, n)).collect();
                assert_eq!(targets(rotate(g, k, n)), rotated);
            }
        }
    }

    #[test]
    fn five_gon_mesh_pattern() {
        let tq = ar_quiver(5).unwrap();
        assert_eq!(tq.nodes.len(), 15);
        assert_eq!(tq.arrows.len(), 20);
        let orbits = tq.tau_orbits();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|o| o.len() == 5));
        let spans = by_span(&tq);
        assert_eq!(spans.keys().copied().collect::<Vec<_>>(), [3, 5, 7]);
        for g in &spans[&5] {
            assert_eq!((tq.predecessors(*g).len(), tq.successors(*g).len()), (2, 2));
        }
        for k in [3, 7] {
            for g in &spans[&k] {
                assert_eq!((tq.predecessors(*g).len(), tq.successors(*g).len()), (1, 1));
            }
        }
        assert!(tq.translation_axiom_holds());
    }

    #[test]
    fn translation_axiom_and_sigma() {
        for n in 3..=7 {
            let tq = ar_quiver(n).unwrap();
            assert!(tq.translation_axiom_holds(), "N={n}");
            for a in &tq.arrows {
                let s = tq.sigma(a).unwrap();
                assert_eq!((s.from, s.to), (tq.tau(a.to), a.from));
            }
            for m in tq.meshes() {
                let mut p = tq.predecessors(m.end);
                p.sort();
                assert_eq!(m.middle, p);
                // The hexagon's three diameters admit no pivots at all.
                assert_eq!(m.middle.is_empty(), n == 3);
            }
        }
        assert_eq!(ar_quiver(3).unwrap().nodes.len(), 3);
    }

    #[test]
    fn chi_examples() {
        // (1,3) -> (1-, 3+): 1- is label 10, 3+ is label 7 on the clockwise 10-gon.
        assert_eq!(chi((1, 3), 5), d(7, 10, 5));
        assert_eq!(chi_reflected((1, 3), 5), d(5, 2, 5));
        for n in 3..=8 {
            let r = arc_bijection_chi(n).unwrap();
            assert_eq!(r.arcs as u32, n * (n - 2));
            assert!(r.bijective && r.isomorphism && r.anti_isomorphism, "{r:?}");
        }
    }

    #[test]
    fn chi_rows_are_tau_orbits() {
        let tq = ar_quiver(5).unwrap();
        let rows: [[Arc; 5]; 3] = [
            [(5, 4), (1, 5), (2, 1), (3, 2), (4, 3)],
            [(1, 4), (2, 5), (3, 1), (4, 2), (5, 3)],
            [(1, 3), (2, 4), (3, 5), (4, 1), (5, 2)],
        ];
        for row in rows {
            for w in row.windows(2) {
                assert_eq!(tq.tau(chi_reflected(w[1], 5)), chi_reflected(w[0], 5));
            }
        }
    }
}
