use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::qp::{qp_mutate, renormalise, Qp, QpDoc};
use super::MutationError;
use crate::quiver::{validate_dimer_tree, Quiver, Structure, VertexId};
use crate::weights::{weight_report_with, WeightReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// Mutation at a vertex of degree two on a boundary path.
    MutateDerA,
    /// Mutation at a vertex with one arrow in and two out.
    MutateDerB,
    /// Coextension at the tip of a boundary triangle, mutation there, and removal of the
    /// vertex left with a single arrow.
    SingLemma45,
    /// Deletes a boundary triangle's outer vertex.
    Remove3Cycle,
    /// One-point extension at `k` followed by mutation at `k`.
    OnePointExt,
    /// One-point coextension at `k` followed by mutation at `k`.
    OnePointCoext,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::MutateDerA => "mutate_der_a",
            MoveKind::MutateDerB => "mutate_der_b",
            MoveKind::SingLemma45 => "sing_lemma45",
            MoveKind::Remove3Cycle => "remove_3cycle",
            MoveKind::OnePointExt => "one_point_ext",
            MoveKind::OnePointCoext => "one_point_coext",
        }
    }

    pub fn equivalence(self) -> Equivalence {
        match self {
            MoveKind::MutateDerA | MoveKind::MutateDerB => Equivalence::Derived,
            _ => Equivalence::Singular,
        }
    }

    /// The kind of the same move seen on the opposite quiver.
    pub fn dual(self) -> MoveKind {
        match self {
            MoveKind::OnePointExt => MoveKind::OnePointCoext,
            MoveKind::OnePointCoext => MoveKind::OnePointExt,
            k => k,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<MoveKind, String> {
        [
            MoveKind::MutateDerA,
            MoveKind::MutateDerB,
            MoveKind::SingLemma45,
            MoveKind::Remove3Cycle,
            MoveKind::OnePointExt,
            MoveKind::OnePointCoext,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| format!("unknown move {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equivalence {
    Derived,
    Singular,
}

/// A move and its site. `SingLemma45` takes `[tip, outer]`: the vertex with one arrow in and two out,
/// then the outer vertex of the boundary triangle; the other kinds take one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    pub site: Vec<VertexId>,
}

impl Move {
    pub fn at(kind: MoveKind, site: &[&VertexId]) -> Move {
        Move { kind, site: site.iter().map(|&v| v.clone()).collect() }
    }

    fn site_string(&self) -> String {
        self.site.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    #[serde(rename = "move")]
    pub kind: MoveKind,
    pub site: Vec<VertexId>,
    pub equivalence: Equivalence,
    /// Recorded on the opposite quiver; `quiver_after` is turned back.
    pub dual: bool,
    pub total_weight_before: usize,
    pub total_weight_after: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub new_vertex: Option<VertexId>,
    pub substeps: Vec<String>,
    /// Arrows rescaled by -1 to restore the sign convention.
    pub rescaled: Vec<String>,
    pub quiver_after: QpDoc,
}

struct Site<'a> {
    q: &'a Quiver,
    st: Structure,
    wr: WeightReport,
    mv: &'a Move,
}

impl Site<'_> {
    fn pattern(&self, detail: impl Into<String>) -> MutationError {
        MutationError::Pattern { kind: self.mv.kind, site: self.mv.site_string(), detail: detail.into() }
    }

    fn precondition(&self, detail: impl Into<String>) -> MutationError {
        MutationError::Precondition { kind: self.mv.kind, site: self.mv.site_string(), detail: detail.into() }
    }

    fn vertex(&self, i: usize) -> Result<usize, MutationError> {
        let v = self.mv.site.get(i).ok_or_else(|| self.pattern(format!("site needs {} vertices", i + 1)))?;
        self.q.vertex_index(v).ok_or_else(|| MutationError::UnknownVertex(v.to_string()))
    }

    fn id(&self, a: usize) -> &str {
        &self.q.arrows[a].id
    }

    fn boundary(&self, a: usize) -> Result<(), MutationError> {
        if self.st.is_boundary(a) {
            Ok(())
        } else {
            Err(self.pattern(format!("{} is not a boundary arrow", self.id(a))))
        }
    }

    /// The single arrow in and single arrow out of `k`.
    fn through(&self, k: usize) -> Result<(usize, usize), MutationError> {
        match (self.q.in_arrows(k).as_slice(), self.q.out_arrows(k).as_slice()) {
            (&[a], &[b]) => Ok((a, b)),
            _ => Err(self.pattern(format!("{} needs one arrow in and one out", self.q.vertices[k]))),
        }
    }

    fn w(&self, a: usize) -> u8 {
        self.wr.weight(a).expect("boundary arrow")
    }

    fn cow(&self, a: usize) -> u8 {
        self.wr.coweight(a).expect("boundary arrow")
    }
}

fn fresh(q: &Quiver, base: &VertexId) -> VertexId {
    let mut name = format!("{base}'");
    while q.vertex_index(&VertexId::new(name.clone())).is_some() {
        name.push('\'');
    }
    VertexId::new(name)
}

fn with_vertex(q: &Quiver, v: &VertexId, arrow: (VertexId, VertexId)) -> Quiver {
    let mut vs = q.vertices.clone();
    vs.push(v.clone());
    let mut arrows: Vec<_> = (0..q.arrow_count()).map(|a| (None, q.source_id(a).clone(), q.target_id(a).clone())).collect();
    arrows.push((None, arrow.0, arrow.1));
    Quiver::new(q.name.clone(), vs, arrows).expect("a new vertex keeps the quiver well formed")
}

fn without_vertex(q: &Quiver, v: usize) -> Quiver {
    let vs = q.vertices.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, x)| x.clone()).collect();
    let arrows = (0..q.arrow_count())
        .filter(|&a| q.arrows[a].source != v && q.arrows[a].target != v)
        .map(|a| (None, q.source_id(a).clone(), q.target_id(a).clone()))
        .collect();
    Quiver::new(q.name.clone(), vs, arrows).expect("removing a vertex keeps the quiver well formed")
}

/// One-point coextension at `k`: a new sink `k'` with one arrow `k -> k'`. The potential is unchanged.
pub fn one_point_coextension(qp: &Qp, k: &VertexId) -> Result<(Qp, VertexId), MutationError> {
    qp.quiver.vertex_index(k).ok_or_else(|| MutationError::UnknownVertex(k.to_string()))?;
    let new = fresh(&qp.quiver, k);
    let q = with_vertex(&qp.quiver, &new, (k.clone(), new.clone()));
    Ok((Qp { quiver: q, potential: qp.potential.clone(), labels: qp.labels.clone() }, new))
}

fn one_point_extension(qp: &Qp, k: &VertexId) -> Result<(Qp, VertexId), MutationError> {
    qp.quiver.vertex_index(k).ok_or_else(|| MutationError::UnknownVertex(k.to_string()))?;
    let new = fresh(&qp.quiver, k);
    let q = with_vertex(&qp.quiver, &new, (new.clone(), k.clone()));
    Ok((Qp { quiver: q, potential: qp.potential.clone(), labels: qp.labels.clone() }, new))
}

/// Applies a move, checking its preconditions, then validates the result as a dimer tree QP,
/// restores the sign convention and checks that the total weight is unchanged.
pub fn apply_move(qp: &Qp, mv: &Move) -> Result<(Qp, MoveRecord), MutationError> {
    let q = &qp.quiver;
    let st = q.analyze();
    if !validate_dimer_tree(q).pass {
        return Err(MutationError::NotDimerTree(format!("input to {}", mv.kind)));
    }
    let wr = weight_report_with(q, &st).map_err(|e| MutationError::NotDimerTree(e.to_string()))?;
    let ctx = Site { q, st, wr, mv };
    let mut substeps = Vec::new();
    let mut new_vertex = None;
    let out = match mv.kind {
        MoveKind::MutateDerA => {
            let k = ctx.vertex(0)?;
            let (a, b) = ctx.through(k)?;
            ctx.boundary(a)?;
            ctx.boundary(b)?;
            if ctx.cow(a) != 1 {
                return Err(ctx.precondition(format!("w̄({}) = {}", ctx.id(a), ctx.cow(a))));
            }
            if ctx.w(b) != 2 {
                return Err(ctx.precondition(format!("w({}) = {}", ctx.id(b), ctx.w(b))));
            }
            qp_mutate(qp, &q.vertices[k])?.0
        }
        MoveKind::MutateDerB => {
            let k = ctx.vertex(0)?;
            der_b_pattern(&ctx, k)?;
            qp_mutate(qp, &q.vertices[k])?.0
        }
        MoveKind::Remove3Cycle => {
            let k = ctx.vertex(0)?;
            let (a, b) = ctx.through(k)?;
            ctx.boundary(a)?;
            ctx.boundary(b)?;
            let c = ctx.st.arrow_cycles[a][0];
            if ctx.st.cycles[c].len() != 3 {
                return Err(ctx.pattern(format!("{} lies on a {}-cycle", ctx.id(a), ctx.st.cycles[c].len())));
            }
            if ctx.cow(a) != 1 {
                return Err(ctx.precondition(format!("w̄({}) = {}", ctx.id(a), ctx.cow(a))));
            }
            if ctx.w(b) != 1 {
                return Err(ctx.precondition(format!("w({}) = {}", ctx.id(b), ctx.w(b))));
            }
            let (ida, idb) = (ctx.id(a).to_string(), ctx.id(b).to_string());
            let words = qp.potential.iter().filter(|(_, w)| !w.contains(&ida) && !w.contains(&idb)).cloned().collect();
            let quiver = without_vertex(q, k);
            Qp::new(&quiver, words)?
        }
        MoveKind::SingLemma45 => {
            let tip = ctx.vertex(0)?;
            let outer = ctx.vertex(1)?;
            sing_pattern(&ctx, tip, outer)?;
            let tip_id = q.vertices[tip].clone();
            let outer_id = q.vertices[outer].clone();
            let new = fresh(q, &outer_id);
            let coext = Qp { quiver: with_vertex(q, &new, (tip_id.clone(), new.clone())), ..qp.clone() };
            substeps.push(format!("one-point coextension at {tip_id}: new vertex {new}"));
            let (mutated, log) = qp_mutate(&coext, &tip_id)?;
            substeps.push(format!("mutation at {tip_id}: {} 2-cycles removed", log.removed_2cycles.len()));
            let mq = &mutated.quiver;
            let ox = mq.vertex_index(&outer_id).expect("outer vertex survives");
            let single = mq.in_arrows(ox).is_empty() && mq.out_arrows(ox).len() == 1;
            let out_id = mq.out_arrows(ox).first().map(|&a| mq.arrows[a].id.clone());
            if !single || mutated.potential.iter().any(|(_, w)| out_id.as_ref().is_some_and(|a| w.contains(a))) {
                return Err(ctx.pattern(format!("{outer_id} is not left as a one-point extension")));
            }
            substeps.push(format!("one-point extension removed: vertex {outer_id}"));
            new_vertex = Some(new);
            Qp { quiver: without_vertex(mq, ox), potential: mutated.potential.clone(), labels: mutated.labels.clone() }
        }
        MoveKind::OnePointCoext | MoveKind::OnePointExt => {
            let k = ctx.vertex(0)?;
            let kid = q.vertices[k].clone();
            let coext = mv.kind == MoveKind::OnePointCoext;
            let degree = if coext { q.in_arrows(k).len() } else { q.out_arrows(k).len() };
            if degree != 1 {
                let side = if coext { "in" } else { "out" };
                return Err(ctx.pattern(format!("{kid} has {degree} arrows {side}, needs one")));
            }
            let (ext, new) = if coext { one_point_coextension(qp, &kid)? } else { one_point_extension(qp, &kid)? };
            let what = if coext { "coextension" } else { "extension" };
            substeps.push(format!("one-point {what} at {kid}: new vertex {new}"));
            substeps.push(format!("mutation at {kid}"));
            new_vertex = Some(new);
            qp_mutate(&ext, &kid)?.0
        }
    };
    finish(out, mv, &ctx.wr, substeps, new_vertex)
}

fn finish(
    mut out: Qp,
    mv: &Move,
    wr: &WeightReport,
    substeps: Vec<String>,
    new_vertex: Option<VertexId>,
) -> Result<(Qp, MoveRecord), MutationError> {
    let report = validate_dimer_tree(&out.quiver);
    if !report.pass {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(MutationError::NotDimerTree(format!("after {} at {}: {}", mv.kind, mv.site_string(), failed.join(", "))));
    }
    let rescaled = renormalise(&mut out)?;
    let after = weight_report_with(&out.quiver, &out.quiver.analyze())
        .map_err(|e| MutationError::NotDimerTree(e.to_string()))?
        .total;
    if after != wr.total {
        return Err(MutationError::WeightChanged { kind: mv.kind, site: mv.site_string(), before: wr.total, after });
    }
    let record = MoveRecord {
        kind: mv.kind,
        site: mv.site.clone(),
        equivalence: mv.kind.equivalence(),
        dual: false,
        total_weight_before: wr.total,
        total_weight_after: after,
        new_vertex,
        substeps,
        rescaled,
        quiver_after: out.doc(),
    };
    Ok((out, record))
}

/// `γ` into `k`, `α`, `β` out; `γαv` and `γβσ` chordless with `σu` the other cycle of `σ`.
fn der_b_pattern(ctx: &Site, k: usize) -> Result<(), MutationError> {
    let q = ctx.q;
    let st = &ctx.st;
    let (g, outs) = match (q.in_arrows(k).as_slice(), q.out_arrows(k)) {
        (&[g], outs) if outs.len() == 2 => (g, outs),
        _ => return Err(ctx.pattern(format!("{} needs one arrow in and two out", q.vertices[k]))),
    };
    let cycle_with = |x: usize, y: usize| st.arrow_cycles[x].iter().copied().find(|c| st.arrow_cycles[y].contains(c));
    let mut reasons = Vec::new();
    for (a, b) in [(outs[0], outs[1]), (outs[1], outs[0])] {
        let (Some(ca), Some(cb)) = (cycle_with(g, a), cycle_with(g, b)) else {
            reasons.push(format!("{} does not close up with both arrows out", ctx.id(g)));
            continue;
        };
        if !st.is_boundary(a) || !st.is_boundary(b) {
            reasons.push(format!("{} and {} must both be boundary", ctx.id(a), ctx.id(b)));
            continue;
        }
        if st.cycles[cb].len() != 3 {
            reasons.push(format!("{} is not on a 3-cycle through {}", ctx.id(b), ctx.id(g)));
            continue;
        }
        let s = st.cycles[cb].successor(b);
        let Some(cs) = st.other_cycle(s, cb) else {
            reasons.push(format!("{} is a boundary arrow", ctx.id(s)));
            continue;
        };
        if let Some(&x) = st.cycles[cs].arrows.iter().find(|&&x| x != s && !st.is_boundary(x)) {
            reasons.push(format!("{} on the far side of {} is interior", ctx.id(x), ctx.id(s)));
            continue;
        }
        let v: Vec<usize> = st.cycles[ca].arrows.iter().copied().filter(|&x| x != g && x != a).collect();
        if v.len() == 1 && st.is_boundary(v[0]) {
            reasons.push(format!("v = {} is a boundary arrow", ctx.id(v[0])));
            continue;
        }
        return Ok(());
    }
    Err(ctx.precondition(reasons.join("; ")))
}

/// The boundary triangle `σβα` on `x2 -> tip -> outer -> x2` with a boundary arrow `γ` out of the tip.
fn sing_pattern(ctx: &Site, tip: usize, outer: usize) -> Result<(), MutationError> {
    let q = ctx.q;
    let st = &ctx.st;
    let (b, a) = ctx.through(outer)?;
    if q.arrows[b].source != tip {
        return Err(ctx.pattern(format!("the arrow into {} does not come from {}", q.vertices[outer], q.vertices[tip])));
    }
    let (s, outs) = match (q.in_arrows(tip).as_slice(), q.out_arrows(tip)) {
        (&[s], outs) if outs.len() == 2 => (s, outs),
        _ => return Err(ctx.pattern(format!("{} needs one arrow in and two out", q.vertices[tip]))),
    };
    if q.arrows[s].source != q.arrows[a].target {
        return Err(ctx.pattern("the arrows do not form a triangle"));
    }
    let g = outs.into_iter().find(|&x| x != b).unwrap();
    for x in [a, b, g] {
        ctx.boundary(x)?;
    }
    if st.is_boundary(s) {
        return Err(ctx.pattern(format!("{} must be interior", ctx.id(s))));
    }
    Ok(())
}
