use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::MutationError;
use crate::quiver::{Quiver, VertexId};
use crate::weights::{base_cycle, build_potential};

/// A cyclic word in arrow ids with an integer coefficient.
pub type Word = (i64, Vec<String>);

/// A quiver with potential. Arrow ids are `"s->t"` after every public operation.
#[derive(Clone, Debug, PartialEq)]
pub struct Qp {
    pub quiver: Quiver,
    /// Collected, each word in its least rotation, sorted.
    pub potential: Vec<Word>,
    /// Arrows created by mutation, with the composite or reversed arrow they came from.
    pub labels: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QpDoc {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<(VertexId, VertexId)>,
    pub potential: Vec<(i64, String)>,
}

impl Qp {
    /// The quiver with its signed dimer tree potential.
    pub fn dimer(q: &Quiver) -> Result<Qp, MutationError> {
        let q = canonical_ids(q);
        let p = build_potential(&q).map_err(|e| MutationError::NotDimerTree(e.to_string()))?;
        let st = q.analyze();
        let words = p
            .terms
            .iter()
            .map(|&(s, c)| (s as i64, st.cycles[c].arrows.iter().map(|&a| q.arrows[a].id.clone()).collect()))
            .collect();
        Ok(Qp { quiver: q, potential: collect(words), labels: BTreeMap::new() })
    }

    pub fn new(q: &Quiver, potential: Vec<Word>) -> Result<Qp, MutationError> {
        for (_, w) in &potential {
            check_cycle(q, w)?;
        }
        Ok(Qp { quiver: q.clone(), potential: collect(potential), labels: BTreeMap::new() })
    }

    pub fn opposite(&self) -> Qp {
        let q = canonical_ids(&self.quiver.opposite());
        let flip = |id: &str| {
            let (s, t) = id.split_once("->").expect("canonical arrow id");
            format!("{t}->{s}")
        };
        let words = self.potential.iter().map(|(c, w)| (*c, w.iter().rev().map(|a| flip(a)).collect())).collect();
        let labels = self.labels.iter().map(|(k, v)| (flip(k), format!("op {v}"))).collect();
        Qp { quiver: q, potential: collect(words), labels }
    }

    pub fn doc(&self) -> QpDoc {
        let q = &self.quiver;
        QpDoc {
            vertices: q.vertices.clone(),
            arrows: (0..q.arrow_count()).map(|a| (q.source_id(a).clone(), q.target_id(a).clone())).collect(),
            potential: self.potential.iter().map(|(c, w)| (*c, word_string(q, w))).collect(),
        }
    }

    /// Rebuilds a QP from its document, reading potential terms as vertex paths.
    pub fn from_doc(name: &str, doc: &QpDoc) -> Result<Qp, MutationError> {
        let q = Quiver::new(name, doc.vertices.clone(), doc.arrows.iter().map(|(s, t)| (None, s.clone(), t.clone())).collect())
            .map_err(|e| MutationError::NotDimerTree(e.to_string()))?;
        let words = doc
            .potential
            .iter()
            .map(|(c, path)| {
                let vs: Vec<&str> = path.split("->").collect();
                (*c, vs.windows(2).map(|w| format!("{}->{}", w[0], w[1])).collect())
            })
            .collect();
        Qp::new(&q, words)
    }

    /// Whether the potential is exactly the signed dimer tree potential of the quiver.
    pub fn is_dimer_normal(&self) -> bool {
        Qp::dimer(&self.quiver).is_ok_and(|d| d.potential == self.potential)
    }
}

/// The word as a vertex path, like `1->2->3->1`.
pub fn word_string(q: &Quiver, w: &[String]) -> String {
    let mut out = String::new();
    for (i, a) in w.iter().enumerate() {
        let ix = q.arrow_index(a).expect("word arrows exist");
        if i == 0 {
            out.push_str(q.source_id(ix).as_str());
        }
        out.push_str("->");
        out.push_str(q.target_id(ix).as_str());
    }
    out
}

fn check_cycle(q: &Quiver, w: &[String]) -> Result<(), MutationError> {
    let ix: Vec<usize> =
        w.iter().map(|a| q.arrow_index(a).ok_or_else(|| MutationError::UnknownArrow(a.clone()))).collect::<Result<_, _>>()?;
    let closed = !ix.is_empty()
        && (0..ix.len()).all(|i| q.arrows[ix[i]].target == q.arrows[ix[(i + 1) % ix.len()]].source);
    if closed {
        Ok(())
    } else {
        Err(MutationError::NotACycle(w.join(" ")))
    }
}

/// Renames arrows to `"s->t"`.
pub fn canonical_ids(q: &Quiver) -> Quiver {
    Quiver::new(
        q.name.clone(),
        q.vertices.clone(),
        (0..q.arrow_count()).map(|a| (None, q.source_id(a).clone(), q.target_id(a).clone())).collect(),
    )
    .expect("renaming keeps a quiver well formed")
}

fn least_rotation(w: &[String]) -> Vec<String> {
    (0..w.len()).map(|r| [&w[r..], &w[..r]].concat()).min().unwrap_or_default()
}

/// Combines words equal up to rotation and drops zero coefficients.
pub fn collect(words: Vec<Word>) -> Vec<Word> {
    let mut acc: BTreeMap<Vec<String>, i64> = BTreeMap::new();
    for (c, w) in words {
        *acc.entry(least_rotation(&w)).or_default() += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).map(|(w, c)| (c, w)).collect()
}

#[derive(Clone, Debug)]
struct RawArrow {
    id: String,
    source: VertexId,
    target: VertexId,
}

/// Summary of one mutation: composite arrows added and 2-cycles removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationLog {
    pub vertex: VertexId,
    pub composites: Vec<String>,
    pub removed_2cycles: Vec<(String, String)>,
}

/// Mutation at `k`: premutation followed by removal of the 2-cycles it creates.
pub fn qp_mutate(qp: &Qp, k: &VertexId) -> Result<(Qp, MutationLog), MutationError> {
    let q = &qp.quiver;
    let kx = q.vertex_index(k).ok_or_else(|| MutationError::UnknownVertex(k.to_string()))?;
    let name = |a: usize| q.arrows[a].id.clone();
    let ins: Vec<usize> = q.in_arrows(kx);
    let outs: Vec<usize> = q.out_arrows(kx);
    let in_ids: BTreeSet<String> = ins.iter().map(|&a| name(a)).collect();
    let at_k: BTreeSet<String> = ins.iter().chain(&outs).map(|&a| name(a)).collect();

    let mut arrows: Vec<RawArrow> = (0..q.arrow_count())
        .filter(|a| !at_k.contains(&name(*a)))
        .map(|a| RawArrow { id: name(a), source: q.source_id(a).clone(), target: q.target_id(a).clone() })
        .collect();
    let comp = |a: &str, b: &str| format!("[{a} {b}]");
    let bar = |a: &str| format!("{a}*");
    let mut log = MutationLog { vertex: k.clone(), composites: Vec::new(), removed_2cycles: Vec::new() };
    let mut delta = Vec::new();
    for &a in &ins {
        for &b in &outs {
            let id = comp(&name(a), &name(b));
            arrows.push(RawArrow { id: id.clone(), source: q.source_id(a).clone(), target: q.target_id(b).clone() });
            delta.push((1, vec![id.clone(), bar(&name(b)), bar(&name(a))]));
            log.composites.push(id);
        }
    }
    for &a in &ins {
        arrows.push(RawArrow { id: bar(&name(a)), source: k.clone(), target: q.source_id(a).clone() });
    }
    for &b in &outs {
        arrows.push(RawArrow { id: bar(&name(b)), source: q.target_id(b).clone(), target: k.clone() });
    }

    let mut words: Vec<Word> = Vec::new();
    for (c, w) in &qp.potential {
        let Some(start) = w.iter().position(|a| !at_k.contains(a) || in_ids.contains(a)) else {
            return Err(MutationError::NotACycle(w.join(" ")));
        };
        let w: Vec<String> = [&w[start..], &w[..start]].concat();
        let mut out = Vec::with_capacity(w.len());
        let mut i = 0;
        while i < w.len() {
            if in_ids.contains(&w[i]) {
                out.push(comp(&w[i], &w[i + 1]));
                i += 2;
            } else {
                out.push(w[i].clone());
                i += 1;
            }
        }
        words.push((*c, out));
    }
    words.extend(delta);
    let mut words = collect(words);
    reduce(&mut arrows, &mut words, &mut log)?;

    let built = Quiver::new(
        q.name.clone(),
        q.vertices.clone(),
        arrows.iter().map(|a| (Some(a.id.clone()), a.source.clone(), a.target.clone())).collect(),
    )
    .map_err(|e| MutationError::Irreducible(e.to_string()))?;
    Ok((relabel(&built, words, &qp.labels), log))
}

/// Repeatedly splits off a 2-cycle term `c·xy`, where `x`, `y` occur only linearly elsewhere:
/// `c·xy + xA + yB` becomes `-c·AB` after `x ↦ x + cB`, `y ↦ y + cA`.
fn reduce(arrows: &mut Vec<RawArrow>, words: &mut Vec<Word>, log: &mut MutationLog) -> Result<(), MutationError> {
    while let Some(pos) = words.iter().position(|(_, w)| w.len() == 2) {
        let (c, xy) = words.remove(pos);
        let (x, y) = (xy[0].clone(), xy[1].clone());
        if c.abs() != 1 {
            return Err(MutationError::Irreducible(format!("2-cycle {x} {y} has coefficient {c}")));
        }
        let mut a_side = Vec::new();
        let mut b_side = Vec::new();
        let mut rest = Vec::new();
        for (d, w) in words.drain(..) {
            let nx = w.iter().filter(|a| **a == x).count();
            let ny = w.iter().filter(|a| **a == y).count();
            let after = |p: usize| [&w[p + 1..], &w[..p]].concat();
            match (nx, ny) {
                (0, 0) => rest.push((d, w)),
                (1, 0) => a_side.push((d, after(w.iter().position(|a| *a == x).unwrap()))),
                (0, 1) => b_side.push((d, after(w.iter().position(|a| *a == y).unwrap()))),
                _ => return Err(MutationError::Irreducible(format!("{x} or {y} occurs nonlinearly"))),
            }
        }
        for (da, wa) in &a_side {
            for (db, wb) in &b_side {
                rest.push((-c * da * db, [wa.as_slice(), wb.as_slice()].concat()));
            }
        }
        *words = collect(rest);
        arrows.retain(|a| a.id != x && a.id != y);
        log.removed_2cycles.push((x, y));
    }
    Ok(())
}

fn relabel(q: &Quiver, words: Vec<Word>, old: &BTreeMap<String, String>) -> Qp {
    let canon = canonical_ids(q);
    let map: BTreeMap<String, String> =
        (0..q.arrow_count()).map(|a| (q.arrows[a].id.clone(), canon.arrows[a].id.clone())).collect();
    let words = words.into_iter().map(|(c, w)| (c, w.iter().map(|a| map[a].clone()).collect())).collect();
    let mut labels = BTreeMap::new();
    for (raw, new) in &map {
        if raw != new {
            labels.insert(new.clone(), raw.clone());
        } else if let Some(l) = old.get(raw) {
            labels.insert(new.clone(), l.clone());
        }
    }
    Qp { quiver: canon, potential: collect(words), labels }
}

/// Rescales arrows by signs until the potential is the signed dimer tree potential.
/// Returns the rescaled arrows. Fails when the terms are not the chordless cycles with unit coefficients.
pub fn renormalise(qp: &mut Qp) -> Result<Vec<String>, MutationError> {
    let target = Qp::dimer(&qp.quiver)?;
    let have: BTreeMap<&Vec<String>, i64> = qp.potential.iter().map(|(c, w)| (w, *c)).collect();
    let want: BTreeMap<&Vec<String>, i64> = target.potential.iter().map(|(c, w)| (w, *c)).collect();
    if have.len() != want.len() || !want.keys().all(|w| have.get(w).is_some_and(|c| c.abs() == 1)) {
        let q = &qp.quiver;
        let terms: Vec<String> = qp.potential.iter().map(|(c, w)| format!("{c}*{}", word_string(q, w))).collect();
        return Err(MutationError::NotDimerTree(format!("potential {} is not a sum over chordless cycles", terms.join(" + "))));
    }
    let q = &qp.quiver;
    let st = q.analyze();
    let cyc_word = |c: usize| -> Vec<String> {
        let w: Vec<String> = st.cycles[c].arrows.iter().map(|&a| q.arrows[a].id.clone()).collect();
        least_rotation(&w)
    };
    let mut flip: Vec<bool> = (0..st.cycles.len()).map(|c| have[&cyc_word(c)] != want[&cyc_word(c)]).collect();
    // Post-order on the dual tree: fix each cycle through the arrow to its parent, the root through a boundary arrow.
    let root = base_cycle(&st).map_err(|e| MutationError::NotDimerTree(e.to_string()))?;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; st.cycles.len()];
    let mut order = vec![root];
    let mut seen = vec![false; st.cycles.len()];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for &a in &st.cycles[c].arrows {
            if let Some(d) = st.other_cycle(a, c) {
                if !seen[d] && st.arrow_cycles[a].len() == 2 {
                    seen[d] = true;
                    parent[d] = Some((c, a));
                    order.push(d);
                }
            }
        }
        i += 1;
    }
    let mut rescaled = Vec::new();
    for &c in order.iter().rev() {
        if !flip[c] {
            continue;
        }
        let a = match parent[c] {
            Some((p, a)) => {
                flip[p] = !flip[p];
                a
            }
            None => *st.cycles[c].arrows.iter().find(|&&a| st.is_boundary(a)).expect("root cycle has a boundary arrow"),
        };
        rescaled.push(q.arrows[a].id.clone());
    }
    for (coef, w) in qp.potential.iter_mut() {
        let n = w.iter().filter(|a| rescaled.contains(a)).count();
        if n % 2 == 1 {
            *coef = -*coef;
        }
    }
    qp.potential = collect(std::mem::take(&mut qp.potential));
    debug_assert_eq!(qp.potential, target.potential);
    rescaled.sort();
    Ok(rescaled)
}
