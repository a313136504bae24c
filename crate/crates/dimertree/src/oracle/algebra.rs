//! The Jacobian algebra as a quotient of the truncated path space.
//!
//! Paths are arrow sequences in travel order; `p * q` is `p` followed by `q`. All paths of
//! length at least `truncation` are dropped, and the truncation is raised until two
//! consecutive lengths below it vanish, at which point the quotient is the algebra itself.

use std::collections::HashMap;

use super::field::Field;
use super::linalg::{rref, Mat};
use super::OracleError;
use crate::quiver::Quiver;

/// A signed cyclic word of arrows.
pub type Term = (i64, Vec<usize>);

#[derive(Clone, Debug)]
struct PairBasis<E> {
    /// Standard paths; their classes form a basis of `e_i B e_j`.
    basis: Vec<Vec<usize>>,
    /// Coordinates of every path below the truncation in that basis.
    normal_form: HashMap<Vec<usize>, Vec<E>>,
}

#[derive(Clone, Debug)]
pub struct AlgebraBasis<K: Field> {
    pub field: K,
    pub quiver: Quiver,
    pub potential: Vec<Term>,
    /// Paths of this length and longer are zero by construction.
    pub truncation: usize,
    /// Smallest length at which every path is zero.
    pub stabilization: usize,
    /// Number of nonzero standard paths at each length.
    pub dims_by_length: Vec<usize>,
    pairs: Vec<PairBasis<K::E>>,
}

/// An element of `e_from B e_to`, in coordinates of the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<E> {
    pub from: usize,
    pub to: usize,
    pub coeffs: Vec<E>,
}

/// `∂_α` of a list of cyclic words.
pub fn cyclic_derivative(terms: &[Term], alpha: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for (c, w) in terms {
        for i in 0..w.len() {
            if w[i] == alpha {
                let rest: Vec<usize> = w[i + 1..].iter().chain(&w[..i]).copied().collect();
                out.push((*c, rest));
            }
        }
    }
    out
}

pub fn default_cap(q: &Quiver) -> usize {
    4 * q.arrow_count()
}

fn paths_from(q: &Quiver, max_len: usize) -> Vec<Vec<(usize, Vec<usize>)>> {
    // For each start vertex, all (end vertex, path) with length <= max_len.
    (0..q.vertex_count())
        .map(|i| {
            let mut all = vec![(i, vec![])];
            let mut frontier = vec![(i, vec![])];
            for _ in 0..max_len {
                let mut next = Vec::new();
                for (v, p) in &frontier {
                    for a in q.out_arrows(*v) {
                        let mut p2: Vec<usize> = p.clone();
                        p2.push(a);
                        next.push((q.arrows[a].target, p2));
                    }
                }
                all.extend(next.iter().cloned());
                frontier = next;
            }
            all
        })
        .collect()
}

impl<K: Field> AlgebraBasis<K> {
    pub fn build(field: K, q: &Quiver, potential: Vec<Term>) -> Result<AlgebraBasis<K>, OracleError> {
        Self::build_with_cap(field, q, potential, default_cap(q))
    }

    pub fn build_with_cap(field: K, q: &Quiver, potential: Vec<Term>, cap: usize) -> Result<AlgebraBasis<K>, OracleError> {
        for (_, w) in &potential {
            for (x, y) in w.iter().zip(w.iter().cycle().skip(1)) {
                if q.arrows.get(*x).map(|a| a.target) != q.arrows.get(*y).map(|a| a.source) {
                    return Err(OracleError::NotComposable(format!("potential term {w:?}")));
                }
            }
        }
        let mut m = 3;
        loop {
            let ab = Self::truncated(field.clone(), q, &potential, m);
            let top = ab.dims_by_length.len();
            if top >= 2 && ab.dims_by_length[top - 1] == 0 && ab.dims_by_length[top - 2] == 0 {
                return Ok(ab);
            }
            if m > cap + 1 {
                return Err(OracleError::NotFinite(cap));
            }
            m += 1;
        }
    }

    fn truncated(field: K, q: &Quiver, potential: &[Term], m: usize) -> AlgebraBasis<K> {
        let k = &field;
        let n = q.vertex_count();
        let from = paths_from(q, m - 1);
        let mut to: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for ps in &from {
            for (t, p) in ps {
                to[*t].push(p.clone());
            }
        }
        let start = |p: &[usize], end: usize| p.first().map_or(end, |&a| q.arrows[a].source);
        // Ideal elements p * ∂_α W * r, grouped by vertex pair.
        let mut rows: Vec<Vec<Vec<(K::E, Vec<usize>)>>> = vec![Vec::new(); n * n];
        for alpha in 0..q.arrow_count() {
            let rel = cyclic_derivative(potential, alpha);
            let Some(min) = rel.iter().map(|(_, w)| w.len()).min() else { continue };
            let (head, tail) = (q.arrows[alpha].target, q.arrows[alpha].source);
            for p in &to[head] {
                if p.len() + min >= m {
                    continue;
                }
                for (end, r) in &from[tail] {
                    if p.len() + min + r.len() >= m {
                        continue;
                    }
                    let mut combined: Vec<(K::E, Vec<usize>)> = Vec::new();
                    for (c, w) in &rel {
                        let word: Vec<usize> = p.iter().chain(w).chain(r).copied().collect();
                        if word.len() >= m {
                            continue;
                        }
                        match combined.iter_mut().find(|(_, x)| *x == word) {
                            Some(e) => e.0 = k.add(&e.0, &k.from_i64(*c)),
                            None => combined.push((k.from_i64(*c), word)),
                        }
                    }
                    combined.retain(|(c, _)| !k.is_zero(c));
                    if !combined.is_empty() {
                        rows[start(p, head) * n + end].push(combined);
                    }
                }
            }
        }
        let mut pairs = Vec::with_capacity(n * n);
        let mut dims_by_length = vec![0; m];
        for i in 0..n {
            for j in 0..n {
                // Longest paths first, so that standard paths are as short as possible.
                let mut cols: Vec<Vec<usize>> = from[i].iter().filter(|(t, _)| *t == j).map(|(_, p)| p.clone()).collect();
                cols.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
                let index: HashMap<&Vec<usize>, usize> = cols.iter().enumerate().map(|(c, p)| (p, c)).collect();
                let gens = &rows[i * n + j];
                let mut mat = Mat::zeros(k, gens.len(), cols.len());
                for (r, g) in gens.iter().enumerate() {
                    for (c, w) in g {
                        mat.set(r, index[w], c.clone());
                    }
                }
                let pivots = rref(k, &mut mat);
                let free: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
                let mut normal_form = HashMap::new();
                for (slot, &f) in free.iter().enumerate() {
                    let mut v = vec![k.zero(); free.len()];
                    v[slot] = k.one();
                    normal_form.insert(cols[f].clone(), v);
                }
                for (r, &p) in pivots.iter().enumerate() {
                    let v: Vec<K::E> = free.iter().map(|&f| k.neg(mat.get(r, f))).collect();
                    normal_form.insert(cols[p].clone(), v);
                }
                let basis: Vec<Vec<usize>> = free.iter().map(|&f| cols[f].clone()).collect();
                for b in &basis {
                    dims_by_length[b.len()] += 1;
                }
                pairs.push(PairBasis { basis, normal_form });
            }
        }
        let stabilization = (0..m).find(|&l| dims_by_length[l..].iter().all(|&d| d == 0)).unwrap_or(m);
        AlgebraBasis {
            field,
            quiver: q.clone(),
            potential: potential.to_vec(),
            truncation: m,
            stabilization,
            dims_by_length,
            pairs,
        }
    }

    fn pair(&self, i: usize, j: usize) -> &PairBasis<K::E> {
        &self.pairs[i * self.quiver.vertex_count() + j]
    }

    pub fn dim(&self) -> usize {
        self.pairs.iter().map(|p| p.basis.len()).sum()
    }

    /// `dim e_i B e_j`, the space of path classes from `i` to `j`.
    pub fn paths_dim(&self, i: usize, j: usize) -> usize {
        self.pair(i, j).basis.len()
    }

    /// `dim Hom(P(i), P(j)) = dim e_j B e_i`.
    pub fn hom_projectives_dim(&self, i: usize, j: usize) -> usize {
        self.paths_dim(j, i)
    }

    pub fn basis(&self, i: usize, j: usize) -> &[Vec<usize>] {
        &self.pair(i, j).basis
    }

    fn end_of(&self, start: usize, path: &[usize]) -> Result<usize, OracleError> {
        let mut v = start;
        for &a in path {
            let arrow = self.quiver.arrows.get(a).ok_or_else(|| OracleError::NotComposable(format!("no arrow {a}")))?;
            if arrow.source != v {
                return Err(OracleError::NotComposable(self.path_label(path)));
            }
            v = arrow.target;
        }
        Ok(v)
    }

    /// Class of a path starting at `start`.
    pub fn class(&self, start: usize, path: &[usize]) -> Result<Element<K::E>, OracleError> {
        let end = self.end_of(start, path)?;
        let pb = self.pair(start, end);
        let coeffs = pb.normal_form.get(path).cloned().unwrap_or_else(|| vec![self.field.zero(); pb.basis.len()]);
        Ok(Element { from: start, to: end, coeffs })
    }

    pub fn path_is_nonzero(&self, path: &[usize]) -> Result<bool, OracleError> {
        let Some(&first) = path.first() else {
            return Err(OracleError::NotComposable("empty path".into()));
        };
        let start = self.quiver.arrows.get(first).map(|a| a.source).ok_or_else(|| OracleError::NotComposable(format!("no arrow {first}")))?;
        let c = self.class(start, path)?;
        Ok(c.coeffs.iter().any(|x| !self.field.is_zero(x)))
    }

    pub fn is_zero(&self, e: &Element<K::E>) -> bool {
        e.coeffs.iter().all(|x| self.field.is_zero(x))
    }

    pub fn idempotent(&self, i: usize) -> Element<K::E> {
        self.class(i, &[]).unwrap()
    }

    pub fn multiply(&self, a: &Element<K::E>, b: &Element<K::E>) -> Element<K::E> {
        assert_eq!(a.to, b.from, "elements do not compose");
        let k = &self.field;
        let mut coeffs = vec![k.zero(); self.paths_dim(a.from, b.to)];
        let (ba, bb) = (self.basis(a.from, a.to), self.basis(b.from, b.to));
        for (x, cx) in a.coeffs.iter().enumerate() {
            if k.is_zero(cx) {
                continue;
            }
            for (y, cy) in b.coeffs.iter().enumerate() {
                if k.is_zero(cy) {
                    continue;
                }
                let word: Vec<usize> = ba[x].iter().chain(&bb[y]).copied().collect();
                let c = self.class(a.from, &word).unwrap();
                let f = k.mul(cx, cy);
                for (z, v) in c.coeffs.iter().enumerate() {
                    coeffs[z] = k.add(&coeffs[z], &k.mul(&f, v));
                }
            }
        }
        Element { from: a.from, to: b.to, coeffs }
    }

    /// Every path below the truncation, grouped as (start, end, path).
    pub fn all_paths(&self) -> impl Iterator<Item = (usize, usize, &Vec<usize>)> {
        let n = self.quiver.vertex_count();
        self.pairs.iter().enumerate().flat_map(move |(idx, p)| p.normal_form.keys().map(move |w| (idx / n, idx % n, w)))
    }

    pub fn path_label(&self, path: &[usize]) -> String {
        if path.is_empty() {
            return "e".into();
        }
        crate::weights::path_string(&self.quiver, path)
    }
}

/// The potential `Σ (−1)^{d(C)} C` as cyclic words.
pub fn potential_terms(q: &Quiver) -> Result<Vec<Term>, OracleError> {
    let st = q.analyze();
    let w = crate::weights::build_potential(q).map_err(|e| OracleError::Input(e.to_string()))?;
    Ok(w.terms.iter().map(|&(s, c)| (s as i64, st.cycles[c].arrows.clone())).collect())
}
