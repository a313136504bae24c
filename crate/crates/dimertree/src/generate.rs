//! Dimer tree quivers built by gluing cycles onto boundary arrows.

use crate::quiver::{Quiver, VertexId};

/// Starts from a cycle of length `lengths[0]`; each further cycle of length `l >= 3` is glued along the
/// boundary arrow picked by the matching entry of `sites` (taken modulo the number of boundary arrows),
/// adding `l - 2` new vertices. Every dimer tree quiver arises this way.
pub fn glued(name: &str, lengths: &[usize], sites: &[usize]) -> Quiver {
    assert!(lengths.iter().all(|&l| l >= 3), "cycles have length at least 3");
    let first = lengths[0] as u32;
    let mut arrows: Vec<(u32, u32)> = (1..=first).map(|i| (i, i % first + 1)).collect();
    let mut boundary: Vec<usize> = (0..arrows.len()).collect();
    let mut next = first + 1;
    for (i, &l) in lengths.iter().enumerate().skip(1) {
        let pick = boundary.remove(sites.get(i - 1).copied().unwrap_or(0) % boundary.len());
        let (s, t) = arrows[pick];
        let mut prev = t;
        for _ in 0..l - 2 {
            boundary.push(arrows.len());
            arrows.push((prev, next));
            prev = next;
            next += 1;
        }
        boundary.push(arrows.len());
        arrows.push((prev, s));
    }
    let vertices = (1..next).map(VertexId::from).collect();
    Quiver::new(name, vertices, arrows.into_iter().map(|(s, t)| (None, s.into(), t.into())).collect())
        .expect("gluing keeps the quiver well formed")
}
