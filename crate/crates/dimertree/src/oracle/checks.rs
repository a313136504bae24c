use serde::Serialize;

use super::algebra::AlgebraBasis;
use super::field::Field;
use super::module::{Module, ModulePresentation};
use super::OracleError;
use crate::quiver::VertexId;
use crate::weights::WeightReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurianReport {
    pub pass: bool,
    pub counterexamples: Vec<String>,
}

pub fn schurian_check<K: Field>(ab: &AlgebraBasis<K>) -> SchurianReport {
    let q = &ab.quiver;
    let mut bad = Vec::new();
    for i in 0..q.vertex_count() {
        for j in 0..q.vertex_count() {
            let d = ab.paths_dim(i, j);
            if d > 1 {
                bad.push(format!("dim e_{} B e_{} = {d}", q.vertices[i], q.vertices[j]));
            }
        }
    }
    let mut cyclic: Vec<String> = ab
        .all_paths()
        .filter(|(i, j, p)| i == j && !p.is_empty() && ab.path_is_nonzero(p).unwrap_or(false))
        .map(|(_, _, p)| format!("nonzero cycle {}", ab.path_label(p)))
        .collect();
    cyclic.sort();
    bad.extend(cyclic);
    SchurianReport { pass: bad.is_empty(), counterexamples: bad }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Extend nonzero paths ending at the source: tested against the weight.
    Right,
    /// Extend nonzero paths starting at the target: tested against the coweight.
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub arrow: String,
    pub side: Side,
    /// `w(a)` for the right side, `w̄(a)` for the left.
    pub weight: u8,
    pub extends_all: bool,
    /// A nonzero path whose extension by the arrow vanishes.
    pub witness: Option<String>,
    pub holds: bool,
}

/// Every nonzero path ending at `s(a)` stays nonzero after `a` exactly when `w(a) = 1`
/// (and dually on the left with the coweight).
pub fn extension_lemma_check<K: Field>(
    ab: &AlgebraBasis<K>,
    wr: &WeightReport,
    a: usize,
    side: Side,
) -> Result<LemmaCheck, OracleError> {
    let q = &ab.quiver;
    let row = wr.row(a).ok_or_else(|| OracleError::NotBoundary(q.arrows.get(a).map_or(format!("{a}"), |x| x.id.clone())))?;
    let weight = match side {
        Side::Right => row.weight,
        Side::Left => row.coweight,
    };
    let (s, t) = (q.arrows[a].source, q.arrows[a].target);
    let mut candidates: Vec<Vec<usize>> = ab
        .all_paths()
        .filter(|(i, j, p)| match side {
            Side::Right => *j == s && (!p.is_empty() || *i == s),
            Side::Left => *i == t && (!p.is_empty() || *j == t),
        })
        .map(|(_, _, p)| p.clone())
        .collect();
    candidates.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let mut witness = None;
    for v in candidates {
        let start = match side {
            Side::Right => v.first().map_or(s, |&x| q.arrows[x].source),
            Side::Left => t,
        };
        if ab.is_zero(&ab.class(start, &v)?) {
            continue;
        }
        let extended: Vec<usize> = match side {
            Side::Right => v.iter().copied().chain([a]).collect(),
            Side::Left => [a].into_iter().chain(v.iter().copied()).collect(),
        };
        let start = extended.first().map(|&x| q.arrows[x].source).unwrap();
        if ab.is_zero(&ab.class(start, &extended)?) {
            witness = Some(ab.path_label(&v));
            break;
        }
    }
    let extends_all = witness.is_none();
    Ok(LemmaCheck { arrow: q.arrows[a].id.clone(), side, weight, extends_all, witness, holds: extends_all == (weight == 1) })
}

/// Projective summands of a presentation as vertex ids, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationShape {
    pub p1: Vec<VertexId>,
    pub p0: Vec<VertexId>,
    /// No entry has a nonzero constant-path component.
    pub minimal: bool,
}

pub fn shape_of<K: Field>(ab: &AlgebraBasis<K>, p: &ModulePresentation<K::E>) -> PresentationShape {
    let ids = |v: &[usize]| {
        let mut out: Vec<VertexId> = v.iter().map(|&i| ab.quiver.vertices[i].clone()).collect();
        out.sort();
        out
    };
    let minimal = p.entries.iter().flatten().all(|e| {
        e.from != e.to || ab.basis(e.from, e.to).iter().zip(&e.coeffs).all(|(path, c)| !path.is_empty() || ab.field.is_zero(c))
    });
    PresentationShape { p1: ids(&p.p1), p0: ids(&p.p0), minimal }
}

/// The minimal presentation of `rad P(x)`, computed from its projective cover and the cover of the kernel.
pub fn radical_presentation<K: Field>(ab: &AlgebraBasis<K>, x: usize) -> ModulePresentation<K::E> {
    ab.minimal_presentation(&ab.radical_of_projective(x))
}

pub fn ext1_dim<K: Field>(ab: &AlgebraBasis<K>, m: &ModulePresentation<K::E>, n: &ModulePresentation<K::E>) -> usize {
    ab.ext1_modules(&ab.cokernel(m), &ab.cokernel(n))
}

pub fn stable_hom_dim<K: Field>(ab: &AlgebraBasis<K>, m: &ModulePresentation<K::E>, n: &ModulePresentation<K::E>) -> usize {
    ab.stable_hom_modules(&ab.cokernel(m), &ab.cokernel(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalRow {
    pub vertex: VertexId,
    pub computed: PresentationShape,
    /// Sources of arrows into the vertex, and targets of arrows out of it.
    pub expected_p1: Vec<VertexId>,
    pub expected_p0: Vec<VertexId>,
    pub end_dim: usize,
    pub projective: bool,
    pub pass: bool,
}

pub fn radical_rows<K: Field>(ab: &AlgebraBasis<K>, radicals: &[Module<K::E>]) -> Vec<RadicalRow> {
    let q = &ab.quiver;
    (0..q.vertex_count())
        .map(|x| {
            let computed = shape_of(ab, &ab.minimal_presentation(&radicals[x]));
            let mut expected_p1: Vec<VertexId> = q.in_arrows(x).iter().map(|&a| q.source_id(a).clone()).collect();
            let mut expected_p0: Vec<VertexId> = q.out_arrows(x).iter().map(|&a| q.target_id(a).clone()).collect();
            expected_p1.sort();
            expected_p0.sort();
            let end_dim = ab.end_dim(&radicals[x]);
            let projective = ab.is_projective(&radicals[x]);
            let pass = computed.minimal && computed.p1 == expected_p1 && computed.p0 == expected_p0 && end_dim == 1 && !projective;
            RadicalRow { vertex: q.vertices[x].clone(), computed, expected_p1, expected_p0, end_dim, projective, pass }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtArrowRow {
    pub from: VertexId,
    pub to: VertexId,
    pub ext1: usize,
    /// The same dimension from the long exact sequence.
    pub ext1_check: usize,
    pub arrow: bool,
    pub pass: bool,
}

/// `Ext¹(rad P(j), rad P(x)) ≠ 0` exactly when there is an arrow `j → x`.
pub fn ext_arrow_rows<K: Field>(ab: &AlgebraBasis<K>, radicals: &[Module<K::E>]) -> Vec<ExtArrowRow> {
    let q = &ab.quiver;
    let n = q.vertex_count();
    let resolutions: Vec<_> = radicals.iter().map(|m| ab.resolution(m, 2)).collect();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for x in 0..n {
            let ext1 = ab.ext1_from_resolution(&resolutions[j], &radicals[x]);
            let ext1_check = ab.ext1_long_exact(&radicals[j], &radicals[x]);
            let arrow = q.arrow_between(j, x).is_some();
            rows.push(ExtArrowRow {
                from: q.vertices[j].clone(),
                to: q.vertices[x].clone(),
                ext1,
                ext1_check,
                arrow,
                pass: ext1 == ext1_check && (ext1 != 0) == arrow,
            });
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingRow {
    pub arrow: String,
    pub boundary: bool,
    /// `dim Ext¹(Ω rad P(i), rad P(j))`.
    pub ext1: usize,
    /// `dim of stable Hom(rad P(j), rad P(i))`, boundary arrows only.
    pub stable_hom: Option<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub rows: Vec<VanishingRow>,
    pub arrows_pass: usize,
    pub boundary_pass: usize,
    pub pass: bool,
}

pub fn boundary_vanishing_check<K: Field>(ab: &AlgebraBasis<K>, radicals: &[Module<K::E>]) -> VanishingReport {
    let q = &ab.quiver;
    let st = q.analyze();
    let omegas: Vec<Module<K::E>> = radicals.iter().map(|m| ab.syzygy(m).1.module).collect();
    let rows: Vec<VanishingRow> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (i, j) = (arrow.source, arrow.target);
            let ext1 = ab.ext1_modules(&omegas[i], &radicals[j]);
            let boundary = st.is_boundary(a);
            let stable_hom = boundary.then(|| ab.stable_hom_modules(&radicals[j], &radicals[i]));
            VanishingRow { arrow: arrow.id.clone(), boundary, ext1, stable_hom, pass: ext1 == 0 && stable_hom.unwrap_or(0) == 0 }
        })
        .collect();
    let arrows_pass = rows.iter().filter(|r| r.ext1 == 0).count();
    let boundary_pass = rows.iter().filter(|r| r.stable_hom == Some(0)).count();
    let pass = rows.iter().all(|r| r.pass);
    VanishingReport { rows, arrows_pass, boundary_pass, pass }
}
