use serde::Serialize;

use super::moves::{apply_move, Move, MoveKind, MoveRecord};
use super::qp::{renormalise, Qp, QpDoc};
use super::MutationError;
use crate::quiver::{validate_dimer_tree, Quiver, VertexId};
use crate::weights::weight_report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub quiver: String,
    pub initial: QpDoc,
    pub total_weight: usize,
    pub moves: Vec<MoveRecord>,
    #[serde(rename = "final")]
    pub final_qp: QpDoc,
    pub final_cycle_length: usize,
    pub pass: bool,
}

struct Driver {
    qp: Qp,
    moves: Vec<MoveRecord>,
    dual: bool,
}

impl Driver {
    fn step(&mut self, kind: MoveKind, site: &[&VertexId]) -> Result<Option<VertexId>, MutationError> {
        let (qp, mut rec) = apply_move(&self.qp, &Move::at(kind, site))?;
        if self.dual {
            rec.dual = true;
            rec.kind = kind.dual();
            rec.quiver_after = qp.opposite().doc();
        }
        let new = rec.new_vertex.clone();
        self.moves.push(rec);
        self.qp = qp;
        Ok(new)
    }

    fn coweight(&self, s: &VertexId, t: &VertexId) -> Result<u8, MutationError> {
        let q = &self.qp.quiver;
        let a = q
            .arrow_index(&format!("{s}->{t}"))
            .ok_or_else(|| MutationError::Stuck(format!("no arrow {s}->{t}")))?;
        weight_report(q).map_err(|e| MutationError::NotDimerTree(e.to_string()))?.coweight(a).ok_or_else(|| {
            MutationError::Stuck(format!("{s}->{t} is not a boundary arrow"))
        })
    }

    fn weight(&self, s: &VertexId, t: &VertexId) -> Result<u8, MutationError> {
        let q = &self.qp.quiver;
        let a = q
            .arrow_index(&format!("{s}->{t}"))
            .ok_or_else(|| MutationError::Stuck(format!("no arrow {s}->{t}")))?;
        weight_report(q).map_err(|e| MutationError::NotDimerTree(e.to_string()))?.weight(a).ok_or_else(|| {
            MutationError::Stuck(format!("{s}->{t} is not a boundary arrow"))
        })
    }

    /// Shrinks the leaf cycle `f` (interior arrow `f[0] -> f[1]`, `w̄(f[1] -> f[2]) = 1`) until it is gone.
    fn case_one(&mut self, mut f: Vec<VertexId>) -> Result<(), MutationError> {
        loop {
            let m = f.len();
            if self.coweight(&f[1], &f[2])? != 1 {
                return Err(MutationError::Stuck(format!("w̄({}->{}) is not 1", f[1], f[2])));
            }
            if m == 3 {
                let kind =
                    if self.weight(&f[2], &f[0])? == 1 { MoveKind::Remove3Cycle } else { MoveKind::MutateDerA };
                self.step(kind, &[&f[2]])?;
                return Ok(());
            }
            self.step(MoveKind::MutateDerA, &[&f[2]])?;
            let new = self.step(MoveKind::SingLemma45, &[&f[3], &f[2]])?.expect("coextension names a vertex");
            for v in &f[4..] {
                self.step(MoveKind::MutateDerB, &[v])?;
            }
            let next = leaf_through(&self.qp.quiver, &f[1], &new)?;
            if next.len() != m - 1 {
                return Err(MutationError::Stuck(format!("cycle length went from {m} to {}", next.len())));
            }
            f = next;
        }
    }

    /// Leaf cycle `f` with `w̄(f[1] -> f[2]) = 2`.
    fn case_two(&mut self, f: Vec<VertexId>) -> Result<(), MutationError> {
        let m = f.len();
        if self.weight(&f[m - 1], &f[0])? == 1 {
            // The mirrored situation: case one on the opposite quiver.
            let mut op: Vec<VertexId> = vec![f[1].clone(), f[0].clone()];
            op.extend(f[2..].iter().rev().cloned());
            let mut sub = Driver { qp: self.qp.opposite(), moves: Vec::new(), dual: true };
            let result = sub.case_one(op);
            self.moves.append(&mut sub.moves);
            let mut back = sub.qp.opposite();
            renormalise(&mut back)?;
            self.qp = back;
            return result;
        }
        let new = self.step(MoveKind::OnePointCoext, &[&f[2]])?.expect("coextension names a vertex");
        for v in &f[3..] {
            self.step(MoveKind::MutateDerB, &[v])?;
        }
        let next = leaf_through(&self.qp.quiver, &f[1], &new)?;
        self.case_one(next)
    }
}

/// The leaf cycle through the arrow `s -> t`, listed from the source of its interior arrow.
fn leaf_through(q: &Quiver, s: &VertexId, t: &VertexId) -> Result<Vec<VertexId>, MutationError> {
    let st = q.analyze();
    let a = q.arrow_index(&format!("{s}->{t}")).ok_or_else(|| MutationError::Stuck(format!("no arrow {s}->{t}")))?;
    let c = st.arrow_cycles[a]
        .iter()
        .copied()
        .find(|&c| st.interior_count(c) == 1)
        .ok_or_else(|| MutationError::Stuck(format!("{s}->{t} is not on a leaf cycle")))?;
    let f = frame(q, c);
    if f[1] != *s || f[2] != *t {
        return Err(MutationError::Stuck(format!("{s}->{t} does not follow the interior arrow")));
    }
    Ok(f)
}

fn frame(q: &Quiver, c: usize) -> Vec<VertexId> {
    let st = q.analyze();
    let cyc = &st.cycles[c];
    let p = cyc.arrows.iter().position(|&a| st.is_interior(a)).expect("leaf cycle has an interior arrow");
    (0..cyc.len()).map(|i| q.vertices[cyc.vertices[(p + i) % cyc.len()]].clone()).collect()
}

/// Reduces a dimer tree quiver to a single chordless cycle by derived and singular equivalences,
/// one leaf cycle at a time.
pub fn reduce_to_cycle(q: &Quiver) -> Result<ReductionTrace, MutationError> {
    let qp = Qp::dimer(q)?;
    let total = weight_report(&qp.quiver).map_err(|e| MutationError::NotDimerTree(e.to_string()))?.total;
    let initial = qp.doc();
    let mut d = Driver { qp, moves: Vec::new(), dual: false };
    let trace = |d: &Driver| {
        let st = d.qp.quiver.analyze();
        let single = st.cycles.len() == 1 && validate_dimer_tree(&d.qp.quiver).pass;
        let len = if single { st.cycles[0].len() } else { 0 };
        ReductionTrace {
            quiver: q.name.clone(),
            initial: initial.clone(),
            total_weight: total,
            moves: d.moves.clone(),
            final_qp: d.qp.doc(),
            final_cycle_length: len,
            pass: single && 2 * len == total,
        }
    };
    loop {
        let st = d.qp.quiver.analyze();
        if st.cycles.len() <= 1 {
            break;
        }
        let c = (0..st.cycles.len()).find(|&c| st.interior_count(c) == 1).expect("a tree has a leaf");
        let f = frame(&d.qp.quiver, c);
        let before = st.cycles.len();
        let step = match d.coweight(&f[1], &f[2]) {
            Ok(1) => d.case_one(f),
            Ok(_) => d.case_two(f),
            Err(e) => Err(e),
        };
        let after = d.qp.quiver.analyze().cycles.len();
        if let Err(e) = step.and_then(|_| {
            if after < before {
                Ok(())
            } else {
                Err(MutationError::Stuck(format!("{before} cycles before the step, {after} after")))
            }
        }) {
            return Err(MutationError::Aborted { error: Box::new(e), trace: Box::new(trace(&d)) });
        }
    }
    let t = trace(&d);
    if !t.pass {
        return Err(MutationError::Aborted {
            error: Box::new(MutationError::Stuck(format!("ended at a {}-cycle, total weight {total}", t.final_cycle_length))),
            trace: Box::new(t),
        });
    }
    Ok(t)
}
