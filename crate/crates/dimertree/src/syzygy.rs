//! Syzygies as 2-diagonals of the checkerboard polygon.
//!
//! A 2-diagonal `γ` stands for the syzygy with minimal presentation `P₁(γ) → P₀(γ)`, where
//! `P₀(γ)` collects the radical lines crossing `γ` from right to left and `P₁(γ)` those crossing
//! from left to right. The syzygy functor is the clockwise rotation `R`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::checkerboard::CheckerboardPolygon;
use crate::diag::{crossing, enumerate_diagonals, rotate, Crossing, TwoDiagonal};
use crate::oracle::OracleReport;
use crate::quiver::{Quiver, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyzygyError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("({0},{1}) is not a 2-diagonal of the {2}-gon")]
    NotTwoDiagonal(u32, u32, u32),
    #[error("steps must be at least 1")]
    NoSteps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyObject {
    pub diagonal: TwoDiagonal,
    #[serde(rename = "P1")]
    pub p1: Vec<VertexId>,
    #[serde(rename = "P0")]
    pub p0: Vec<VertexId>,
}

pub fn radical_line_of(cp: &CheckerboardPolygon, i: &VertexId) -> Result<TwoDiagonal, SyzygyError> {
    cp.radical_line_of(i).ok_or_else(|| SyzygyError::UnknownVertex(i.to_string()))
}

fn check_diagonal(cp: &CheckerboardPolygon, g: TwoDiagonal) -> Result<TwoDiagonal, SyzygyError> {
    TwoDiagonal::new(g.tail, g.head, cp.n)
        .ok()
        .filter(|h| *h == g)
        .ok_or(SyzygyError::NotTwoDiagonal(g.tail, g.head, cp.size()))
}

pub fn presentation_of(cp: &CheckerboardPolygon, g: TwoDiagonal) -> Result<SyzygyObject, SyzygyError> {
    let g = check_diagonal(cp, g)?;
    let mut p0 = Vec::new();
    let mut p1 = Vec::new();
    for l in &cp.radical_lines {
        match crossing(g, l.diagonal(), cp.n) {
            Crossing::RightToLeft => p0.push(l.vertex.clone()),
            Crossing::LeftToRight => p1.push(l.vertex.clone()),
            Crossing::None => {}
        }
    }
    p0.sort();
    p1.sort();
    Ok(SyzygyObject { diagonal: g, p1, p0 })
}

/// `Ext¹(M_γ, M_γ') ≠ 0` in the model: `γ'` crosses `γ` from right to left.
pub fn model_ext_nonzero(g: TwoDiagonal, h: TwoDiagonal, n: u32) -> bool {
    crossing(g, h, n) == Crossing::RightToLeft
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    pub steps: Vec<SyzygyObject>,
    /// Smallest `k ≥ 1` with `R^k γ = γ`.
    pub minimal_period: u32,
    /// `P₀(R γ) = P₁(γ)` at each consecutive pair of steps.
    pub gluing: Vec<bool>,
    pub period_in_range: bool,
    pub pass: bool,
}

pub fn resolution(cp: &CheckerboardPolygon, g: TwoDiagonal, steps: usize) -> Result<ResolutionTrace, SyzygyError> {
    if steps == 0 {
        return Err(SyzygyError::NoSteps);
    }
    let g = check_diagonal(cp, g)?;
    let n = cp.n;
    let mut out = Vec::with_capacity(steps + 1);
    let mut current = g;
    for _ in 0..=steps {
        out.push(presentation_of(cp, current)?);
        current = rotate(current, 1, n);
    }
    let gluing: Vec<bool> = out.windows(2).map(|w| w[1].p0 == w[0].p1).collect();
    let minimal_period = (1..=2 * n).find(|&k| rotate(g, k as i64, n) == g).expect("R^{2N} is the identity");
    let period_in_range = minimal_period == n || minimal_period == 2 * n;
    let pass = period_in_range && gluing.iter().all(|&b| b);
    out.truncate(steps);
    Ok(ResolutionTrace { steps: out, minimal_period, gluing, period_in_range, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub diagonals: usize,
    pub period_n: usize,
    pub period_2n: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Runs [`resolution`] over every 2-diagonal for `2N` steps.
pub fn all_resolutions(cp: &CheckerboardPolygon) -> ResolutionSummary {
    let n = cp.n;
    let diagonals = enumerate_diagonals(n).unwrap_or_default();
    let (mut period_n, mut period_2n, mut failures) = (0, 0, Vec::new());
    for &g in &diagonals {
        match resolution(cp, g, 2 * n as usize) {
            Ok(t) => {
                if t.minimal_period == n {
                    period_n += 1;
                } else if t.minimal_period == 2 * n {
                    period_2n += 1;
                }
                if !t.pass {
                    failures.push(format!("({},{})", g.tail, g.head));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let pass = failures.is_empty() && period_n + period_2n == diagonals.len();
    ResolutionSummary { diagonals: diagonals.len(), period_n, period_2n, failures, pass }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexConsistency {
    pub vertex: VertexId,
    pub model: SyzygyObject,
    pub oracle_p1: Vec<VertexId>,
    pub oracle_p0: Vec<VertexId>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowConsistency {
    pub arrow: String,
    /// `R ρ(i)` and `ρ(j)` do not cross.
    pub noncrossing: bool,
    pub oracle_vanishing: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtCoherence {
    pub from: VertexId,
    pub to: VertexId,
    pub model: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub vertices: Vec<VertexConsistency>,
    pub boundary_arrows: Vec<ArrowConsistency>,
    /// Pairs where the crossing direction and the oracle disagree on `Ext¹(rad P(j), rad P(x))`.
    pub ext_mismatches: Vec<ExtCoherence>,
    pub objects: usize,
    pub distinct_radicals: usize,
    pub pass: bool,
}

/// Compares the model against an oracle report that includes the radical and vanishing checks.
pub fn radical_consistency_check(q: &Quiver, cp: &CheckerboardPolygon, oracle: &OracleReport) -> ConsistencyReport {
    let n = cp.n;
    let st = q.analyze();
    let vertices: Vec<VertexConsistency> = q
        .vertices
        .iter()
        .map(|x| {
            let model = radical_line_of(cp, x).and_then(|g| presentation_of(cp, g));
            let row = oracle.radicals.iter().find(|r| &r.vertex == x);
            match (model, row) {
                (Ok(model), Some(row)) => {
                    let pass = model.p0 == row.computed.p0 && model.p1 == row.computed.p1;
                    VertexConsistency {
                        vertex: x.clone(),
                        model,
                        oracle_p1: row.computed.p1.clone(),
                        oracle_p0: row.computed.p0.clone(),
                        pass,
                    }
                }
                (model, _) => VertexConsistency {
                    vertex: x.clone(),
                    model: model.unwrap_or(SyzygyObject { diagonal: TwoDiagonal { tail: 0, head: 0 }, p1: vec![], p0: vec![] }),
                    oracle_p1: vec![],
                    oracle_p0: vec![],
                    pass: false,
                },
            }
        })
        .collect();
    let boundary_arrows: Vec<ArrowConsistency> = st
        .boundary_arrows()
        .into_iter()
        .map(|a| {
            let arrow = &q.arrows[a];
            let lines = (cp.radical_line_of(&q.vertices[arrow.source]), cp.radical_line_of(&q.vertices[arrow.target]));
            let noncrossing = match lines {
                (Some(ri), Some(rj)) => crossing(rotate(ri, 1, n), rj, n) == Crossing::None,
                _ => false,
            };
            let oracle_vanishing = oracle
                .vanishing
                .as_ref()
                .and_then(|v| v.rows.iter().find(|r| r.arrow == arrow.id))
                .is_some_and(|r| r.pass);
            ArrowConsistency { arrow: arrow.id.clone(), noncrossing, oracle_vanishing, pass: noncrossing && oracle_vanishing }
        })
        .collect();
    let mut ext_mismatches = Vec::new();
    for row in &oracle.ext_arrows {
        let (Some(g), Some(h)) = (cp.radical_line_of(&row.from), cp.radical_line_of(&row.to)) else {
            continue;
        };
        let model = model_ext_nonzero(g, h, n);
        if model != (row.ext1 != 0) {
            ext_mismatches.push(ExtCoherence { from: row.from.clone(), to: row.to.clone(), model, oracle: row.ext1 != 0 });
        }
    }
    let objects = enumerate_diagonals(n).map(|d| d.len()).unwrap_or(0);
    let distinct_radicals = cp.radical_lines.iter().map(|l| l.diagonal()).collect::<BTreeSet<_>>().len();
    // Two vertices can share a radical (two parallel paths of length two), so compare against the oracle.
    let oracle_distinct =
        oracle.radicals.iter().map(|r| (&r.computed.p1, &r.computed.p0)).collect::<BTreeSet<_>>().len();
    let pass = vertices.iter().all(|v| v.pass)
        && boundary_arrows.iter().all(|a| a.pass)
        && ext_mismatches.is_empty()
        && !oracle.ext_arrows.is_empty()
        && objects == (n * (n - 2)) as usize
        && distinct_radicals == oracle_distinct
        && distinct_radicals <= objects;
    ConsistencyReport { vertices, boundary_arrows, ext_mismatches, objects, distinct_radicals, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkerboard::build_checkerboard;
    use crate::oracle::{run_oracle, Check, FieldSpec};

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

    fn ids(xs: &[u32]) -> Vec<VertexId> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn c3_radical_lines_and_presentation() {
        let cp = build_checkerboard(&c(3)).unwrap();
        for x in 1..=3u32 {
            assert!(radical_line_of(&cp, &x.into()).unwrap().is_diameter(3));
        }
        assert!(matches!(radical_line_of(&cp, &7u32.into()), Err(SyzygyError::UnknownVertex(_))));
        let p = presentation_of(&cp, radical_line_of(&cp, &1u32.into()).unwrap()).unwrap();
        assert_eq!((p.p1, p.p0), (ids(&[3]), ids(&[2])));
    }

    #[test]
    fn boxed_diagonal_of_q9() {
        let cp = build_checkerboard(&q9()).unwrap();
        let hits: Vec<SyzygyObject> = enumerate_diagonals(7)
            .unwrap()
            .into_iter()
            .map(|g| presentation_of(&cp, g).unwrap())
            .filter(|p| p.p1 == ids(&[5, 6]) && p.p0 == ids(&[3, 4]))
            .collect();
        assert_eq!(hits.len(), 1);
    }

    #[test]
    fn presentations_never_empty() {
        for q in [q9(), q7(), c(3), c(6)] {
            let cp = build_checkerboard(&q).unwrap();
            for g in enumerate_diagonals(cp.n).unwrap() {
                let p = presentation_of(&cp, g).unwrap();
                assert!(!p.p0.is_empty() && !p.p1.is_empty(), "{} {:?}", q.name, g);
            }
        }
    }

    #[test]
    fn invalid_diagonals_are_rejected() {
        let cp = build_checkerboard(&c(3)).unwrap();
        assert!(presentation_of(&cp, TwoDiagonal { tail: 1, head: 2 }).is_err());
        assert!(presentation_of(&cp, TwoDiagonal { tail: 4, head: 1 }).is_err());
        assert_eq!(resolution(&cp, TwoDiagonal { tail: 1, head: 4 }, 0), Err(SyzygyError::NoSteps));
    }

    #[test]
    fn q9_resolutions() {
        let cp = build_checkerboard(&q9()).unwrap();
        let s = all_resolutions(&cp);
        assert_eq!(s.diagonals, 35);
        assert!(s.pass, "{:?}", s.failures);
        // Only diameters are fixed by the half turn.
        assert_eq!(s.period_n, 7);
        assert_eq!(s.period_2n, 28);
    }

    #[test]
    fn c3_resolution_of_a_radical() {
        let cp = build_checkerboard(&c(3)).unwrap();
        let t = resolution(&cp, radical_line_of(&cp, &1u32.into()).unwrap(), 6).unwrap();
        assert_eq!(t.steps.len(), 6);
        assert_eq!(t.gluing.len(), 6);
        assert!(t.pass);
        assert_eq!(6 % t.minimal_period, 0);
        assert_eq!(t.minimal_period, 3);
        for (k, s) in t.steps.iter().enumerate() {
            assert_eq!(s.diagonal, rotate(t.steps[0].diagonal, k as i64, 3));
        }
    }

    #[test]
    fn double_rotation_shifts_twice() {
        let cp = build_checkerboard(&q7()).unwrap();
        for g in enumerate_diagonals(6).unwrap() {
            let r1 = presentation_of(&cp, rotate(g, 1, 6)).unwrap();
            let r2 = presentation_of(&cp, rotate(g, 2, 6)).unwrap();
            assert_eq!(r2.p0, r1.p1);
        }
    }

    #[test]
    fn model_agrees_with_oracle() {
        for q in [q9(), q7(), c(3), c(5)] {
            let cp = build_checkerboard(&q).unwrap();
            let oracle = run_oracle(&q, FieldSpec::default(), Check::All).unwrap();
            let r = radical_consistency_check(&q, &cp, &oracle);
            assert!(r.pass, "{}: {:?}", q.name, r);
            assert_eq!(r.boundary_arrows.len(), crate::weights::weight_report(&q).unwrap().rows.len());
        }
    }

    #[test]
    fn mirrored_polygon_disagrees_with_oracle() {
        let q = q9();
        let mut cp = build_checkerboard(&q).unwrap();
        for l in &mut cp.radical_lines {
            let (t, h) = (crate::diag::wrap(2 - l.tail as i64, 7), crate::diag::wrap(2 - l.head as i64, 7));
            l.tail = t;
            l.head = h;
        }
        let oracle = run_oracle(&q, FieldSpec::default(), Check::All).unwrap();
        assert!(!radical_consistency_check(&q, &cp, &oracle).pass);
    }
}
