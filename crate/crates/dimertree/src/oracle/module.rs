//! Right modules as representations: a space at each vertex, a map along each arrow.
//!
//! `P(i) = e_i B` has the classes of paths from `i` to `j` at vertex `j`; right multiplication
//! by an arrow is the arrow's map.

use super::algebra::{AlgebraBasis, Element};
use super::field::Field;
use super::linalg::{apply, complement, mul, nullspace, rank, rref, solve, Mat};

#[derive(Clone, Debug, PartialEq)]
pub struct Module<E> {
    pub dims: Vec<usize>,
    /// For arrow `a: s -> t`, a `dims[t] x dims[s]` matrix.
    pub maps: Vec<Mat<E>>,
}

/// A module map, one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModHom<E> {
    pub maps: Vec<Mat<E>>,
}

/// Direct sum of indecomposable projectives, with the position of each summand's block.
#[derive(Clone, Debug)]
pub struct FreeModule<E> {
    pub tops: Vec<usize>,
    pub module: Module<E>,
    /// `offsets[k][u]`: first coordinate of summand `k` at vertex `u`.
    pub offsets: Vec<Vec<usize>>,
}

/// `P₁ → P₀` given by a matrix of path classes; entry `[k][l]` lies in `e_{p0[k]} B e_{p1[l]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation<E> {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub entries: Vec<Vec<Element<E>>>,
}

#[derive(Clone, Debug)]
pub struct Cover<E> {
    pub free: FreeModule<E>,
    /// Generator `k` is an element of the module at vertex `free.tops[k]`.
    pub generators: Vec<Vec<E>>,
    pub map: ModHom<E>,
}

/// A submodule with its inclusion.
#[derive(Clone, Debug)]
pub struct Sub<E> {
    pub module: Module<E>,
    pub inclusion: ModHom<E>,
}

impl<E: Clone> Module<E> {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

fn span_basis<K: Field>(k: &K, vectors: &[Vec<K::E>], dim: usize) -> Vec<Vec<K::E>> {
    let mut m = Mat::zeros(k, vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    let r = rref(k, &mut m).len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

fn unit<K: Field>(k: &K, n: usize, i: usize) -> Vec<K::E> {
    let mut v = vec![k.zero(); n];
    v[i] = k.one();
    v
}

impl<K: Field> AlgebraBasis<K> {
    fn n(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn free_module(&self, tops: &[usize]) -> FreeModule<K::E> {
        let k = &self.field;
        let n = self.n();
        let mut dims = vec![0; n];
        let mut offsets = vec![vec![0; n]; tops.len()];
        for (b, &v) in tops.iter().enumerate() {
            for u in 0..n {
                offsets[b][u] = dims[u];
                dims[u] += self.paths_dim(v, u);
            }
        }
        let maps = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (s, t) = (arrow.source, arrow.target);
                let mut m = Mat::zeros(k, dims[t], dims[s]);
                for (b, &v) in tops.iter().enumerate() {
                    for (x, p) in self.basis(v, s).iter().enumerate() {
                        let mut w = p.clone();
                        w.push(a);
                        let c = self.class(v, &w).unwrap();
                        for (y, val) in c.coeffs.into_iter().enumerate() {
                            m.set(offsets[b][t] + y, offsets[b][s] + x, val);
                        }
                    }
                }
                m
            })
            .collect();
        FreeModule { tops: tops.to_vec(), module: Module { dims, maps }, offsets }
    }

    pub fn projective(&self, i: usize) -> Module<K::E> {
        self.free_module(&[i]).module
    }

    /// The matrix of right multiplication by a path, from `m` at `start` to `m` at its end.
    pub fn path_matrix(&self, m: &Module<K::E>, start: usize, path: &[usize]) -> Mat<K::E> {
        let k = &self.field;
        let mut acc = Mat::identity(k, m.dims[start]);
        for &a in path {
            acc = mul(k, &m.maps[a], &acc);
        }
        acc
    }

    pub fn element_matrix(&self, m: &Module<K::E>, e: &Element<K::E>) -> Mat<K::E> {
        let k = &self.field;
        let mut acc = Mat::zeros(k, m.dims[e.to], m.dims[e.from]);
        for (x, c) in e.coeffs.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let pm = self.path_matrix(m, e.from, &self.basis(e.from, e.to)[x]);
            for (slot, v) in acc.data.iter_mut().zip(&pm.data) {
                *slot = k.add(slot, &k.mul(c, v));
            }
        }
        acc
    }

    /// Checks that `m` satisfies every relation `∂_α W`.
    pub fn is_module(&self, m: &Module<K::E>) -> bool {
        let k = &self.field;
        (0..self.quiver.arrow_count()).all(|alpha| {
            let rel = super::algebra::cyclic_derivative(&self.potential, alpha);
            let (s, t) = (self.quiver.arrows[alpha].target, self.quiver.arrows[alpha].source);
            let mut acc = Mat::zeros(k, m.dims[t], m.dims[s]);
            for (c, w) in &rel {
                let pm = self.path_matrix(m, s, w);
                let c = k.from_i64(*c);
                for (slot, v) in acc.data.iter_mut().zip(&pm.data) {
                    *slot = k.add(slot, &k.mul(&c, v));
                }
            }
            acc.is_zero(k)
        })
    }

    pub fn hom_space(&self, m: &Module<K::E>, n: &Module<K::E>) -> Vec<ModHom<K::E>> {
        let k = &self.field;
        let v = self.n();
        let mut off = vec![0; v + 1];
        for i in 0..v {
            off[i + 1] = off[i] + n.dims[i] * m.dims[i];
        }
        let unknowns = off[v];
        let mut eqs: Vec<Vec<K::E>> = Vec::new();
        for (a, arrow) in self.quiver.arrows.iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            // N_a F_s - F_t M_a = 0
            for r in 0..n.dims[t] {
                for c in 0..m.dims[s] {
                    let mut row = vec![k.zero(); unknowns];
                    for l in 0..n.dims[s] {
                        let x = n.maps[a].get(r, l);
                        if !k.is_zero(x) {
                            let idx = off[s] + l * m.dims[s] + c;
                            row[idx] = k.add(&row[idx], x);
                        }
                    }
                    for l in 0..m.dims[t] {
                        let x = m.maps[a].get(l, c);
                        if !k.is_zero(x) {
                            let idx = off[t] + r * m.dims[t] + l;
                            row[idx] = k.sub(&row[idx], x);
                        }
                    }
                    if row.iter().any(|x| !k.is_zero(x)) {
                        eqs.push(row);
                    }
                }
            }
        }
        let mut sys = Mat::zeros(k, eqs.len(), unknowns);
        for (i, row) in eqs.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                sys.set(i, j, x);
            }
        }
        nullspace(k, &sys)
            .into_iter()
            .map(|flat| ModHom {
                maps: (0..v)
                    .map(|i| Mat { rows: n.dims[i], cols: m.dims[i], data: flat[off[i]..off[i + 1]].to_vec() })
                    .collect(),
            })
            .collect()
    }

    pub fn hom_dim(&self, m: &Module<K::E>, n: &Module<K::E>) -> usize {
        self.hom_space(m, n).len()
    }

    pub fn compose(&self, g: &ModHom<K::E>, f: &ModHom<K::E>) -> ModHom<K::E> {
        ModHom { maps: g.maps.iter().zip(&f.maps).map(|(a, b)| mul(&self.field, a, b)).collect() }
    }

    pub fn is_hom(&self, f: &ModHom<K::E>, m: &Module<K::E>, n: &Module<K::E>) -> bool {
        let k = &self.field;
        self.quiver.arrows.iter().enumerate().all(|(a, arrow)| {
            let lhs = mul(k, &n.maps[a], &f.maps[arrow.source]);
            let rhs = mul(k, &f.maps[arrow.target], &m.maps[a]);
            lhs == rhs
        })
    }

    /// Submodule spanned at each vertex by the given vectors, which must be closed under arrows.
    pub fn submodule(&self, m: &Module<K::E>, spans: &[Vec<Vec<K::E>>]) -> Sub<K::E> {
        let k = &self.field;
        let bases: Vec<Vec<Vec<K::E>>> = spans.iter().enumerate().map(|(v, s)| span_basis(k, s, m.dims[v])).collect();
        let inclusion: Vec<Mat<K::E>> = bases.iter().enumerate().map(|(v, b)| Mat::from_columns(k, m.dims[v], b)).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let maps = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (s, t) = (arrow.source, arrow.target);
                let image = mul(k, &m.maps[a], &inclusion[s]);
                solve(k, &inclusion[t], &image).expect("subspaces not closed under the arrows")
            })
            .collect();
        Sub { module: Module { dims, maps }, inclusion: ModHom { maps: inclusion } }
    }

    pub fn kernel(&self, f: &ModHom<K::E>, m: &Module<K::E>) -> Sub<K::E> {
        let spans: Vec<Vec<Vec<K::E>>> = f.maps.iter().map(|fv| nullspace(&self.field, fv)).collect();
        self.submodule(m, &spans)
    }

    pub fn radical(&self, m: &Module<K::E>) -> Sub<K::E> {
        let spans = self.radical_spans(m);
        self.submodule(m, &spans)
    }

    fn radical_spans(&self, m: &Module<K::E>) -> Vec<Vec<Vec<K::E>>> {
        let mut spans = vec![Vec::new(); self.n()];
        for (a, arrow) in self.quiver.arrows.iter().enumerate() {
            for c in 0..m.maps[a].cols {
                spans[arrow.target].push(m.maps[a].column(c));
            }
        }
        spans
    }

    pub fn quotient(&self, m: &Module<K::E>, spans: &[Vec<Vec<K::E>>]) -> (Module<K::E>, ModHom<K::E>) {
        let k = &self.field;
        let n = self.n();
        let mut proj = Vec::with_capacity(n);
        let mut keep = Vec::with_capacity(n);
        for v in 0..n {
            let d = m.dims[v];
            let s = span_basis(k, &spans[v], d);
            let c = complement(k, &s, d);
            let mut cols = s.clone();
            cols.extend(c.iter().map(|&i| unit(k, d, i)));
            let a = Mat::from_columns(k, d, &cols);
            let inv = solve(k, &a, &Mat::identity(k, d)).expect("basis change is invertible");
            let mut p = Mat::zeros(k, c.len(), d);
            for (r, _) in c.iter().enumerate() {
                for j in 0..d {
                    p.set(r, j, inv.get(s.len() + r, j).clone());
                }
            }
            proj.push(p);
            keep.push(Mat::from_columns(k, d, &c.iter().map(|&i| unit(k, d, i)).collect::<Vec<_>>()));
        }
        let maps = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| mul(k, &proj[arrow.target], &mul(k, &m.maps[a], &keep[arrow.source])))
            .collect();
        let dims = proj.iter().map(|p| p.rows).collect();
        (Module { dims, maps }, ModHom { maps: proj })
    }

    pub fn projective_cover(&self, m: &Module<K::E>) -> Cover<K::E> {
        let k = &self.field;
        let rad = self.radical_spans(m);
        let mut tops = Vec::new();
        let mut generators = Vec::new();
        for v in 0..self.n() {
            let basis = span_basis(k, &rad[v], m.dims[v]);
            for i in complement(k, &basis, m.dims[v]) {
                tops.push(v);
                generators.push(unit(k, m.dims[v], i));
            }
        }
        let free = self.free_module(&tops);
        let maps = (0..self.n())
            .map(|u| {
                let mut f = Mat::zeros(k, m.dims[u], free.module.dims[u]);
                for (b, &v) in tops.iter().enumerate() {
                    for (x, p) in self.basis(v, u).iter().enumerate() {
                        let image = apply(k, &self.path_matrix(m, v, p), &generators[b]);
                        for (r, val) in image.into_iter().enumerate() {
                            f.set(r, free.offsets[b][u] + x, val);
                        }
                    }
                }
                f
            })
            .collect();
        Cover { free, generators, map: ModHom { maps } }
    }

    /// `ΩM`, the kernel of the projective cover, with its inclusion into the cover.
    pub fn syzygy(&self, m: &Module<K::E>) -> (Cover<K::E>, Sub<K::E>) {
        let cover = self.projective_cover(m);
        let ker = self.kernel(&cover.map, &cover.free.module);
        (cover, ker)
    }

    /// Reads the generators of a cover of a submodule of a free module as a matrix of classes.
    fn differential(&self, target: &FreeModule<K::E>, sub: &Sub<K::E>, cover: &Cover<K::E>) -> Vec<Vec<Element<K::E>>> {
        let k = &self.field;
        (0..target.tops.len())
            .map(|b| {
                let v = target.tops[b];
                cover
                    .free
                    .tops
                    .iter()
                    .zip(&cover.generators)
                    .map(|(&u, g)| {
                        let image = apply(k, &sub.inclusion.maps[u], g);
                        let len = self.paths_dim(v, u);
                        let coeffs = image[target.offsets[b][u]..target.offsets[b][u] + len].to_vec();
                        Element { from: v, to: u, coeffs }
                    })
                    .collect()
            })
            .collect()
    }

    /// Minimal projective resolution `P_len → … → P₁ → P₀`; entry `i` is the presentation `P_{i+1} → P_i`.
    pub fn resolution(&self, m: &Module<K::E>, len: usize) -> Vec<ModulePresentation<K::E>> {
        let mut out = Vec::new();
        let mut cover = self.projective_cover(m);
        for _ in 0..len {
            let ker = self.kernel(&cover.map, &cover.free.module);
            let next = self.projective_cover(&ker.module);
            out.push(ModulePresentation {
                p1: next.free.tops.clone(),
                p0: cover.free.tops.clone(),
                entries: self.differential(&cover.free, &ker, &next),
            });
            cover = next;
        }
        out
    }

    pub fn minimal_presentation(&self, m: &Module<K::E>) -> ModulePresentation<K::E> {
        self.resolution(m, 1).remove(0)
    }

    /// `coker(P₁ → P₀)`.
    pub fn cokernel(&self, p: &ModulePresentation<K::E>) -> Module<K::E> {
        let free = self.free_module(&p.p0);
        let mut spans = vec![Vec::new(); self.n()];
        for (l, &u) in p.p1.iter().enumerate() {
            for w in 0..self.n() {
                for path in self.basis(u, w) {
                    let y = self.class(u, path).unwrap();
                    let mut v = vec![self.field.zero(); free.module.dims[w]];
                    for (b, row) in p.entries.iter().enumerate() {
                        let e = self.multiply(&row[l], &y);
                        let off = free.offsets[b][w];
                        for (z, c) in e.coeffs.into_iter().enumerate() {
                            v[off + z] = self.field.add(&v[off + z], &c);
                        }
                    }
                    spans[w].push(v);
                }
            }
        }
        self.quotient(&free.module, &spans).0
    }

    /// `Hom(P_src, N) → Hom(P_dst, N)` induced by a presentation matrix `P_dst → P_src`.
    fn hom_differential(&self, p: &ModulePresentation<K::E>, n: &Module<K::E>) -> Mat<K::E> {
        let k = &self.field;
        let rows: usize = p.p1.iter().map(|&u| n.dims[u]).sum();
        let cols: usize = p.p0.iter().map(|&v| n.dims[v]).sum();
        let mut d = Mat::zeros(k, rows, cols);
        let mut r0 = 0;
        for (l, &u) in p.p1.iter().enumerate() {
            let mut c0 = 0;
            for (b, &v) in p.p0.iter().enumerate() {
                let block = self.element_matrix(n, &p.entries[b][l]);
                for i in 0..n.dims[u] {
                    for j in 0..n.dims[v] {
                        d.set(r0 + i, c0 + j, block.get(i, j).clone());
                    }
                }
                c0 += n.dims[v];
            }
            r0 += n.dims[u];
        }
        d
    }

    /// `dim Ext¹(M, N)` from the complex `Hom(P₀,N) → Hom(P₁,N) → Hom(P₂,N)`.
    pub fn ext1_modules(&self, m: &Module<K::E>, n: &Module<K::E>) -> usize {
        self.ext1_from_resolution(&self.resolution(m, 2), n)
    }

    /// As [`Self::ext1_modules`], reusing a resolution of length at least 2.
    pub fn ext1_from_resolution(&self, res: &[ModulePresentation<K::E>], n: &Module<K::E>) -> usize {
        let k = &self.field;
        let d1 = self.hom_differential(&res[0], n);
        let d2 = self.hom_differential(&res[1], n);
        let hom_p1: usize = res[0].p1.iter().map(|&u| n.dims[u]).sum();
        let kernel = hom_p1 - if d2.rows == 0 { 0 } else { rank(k, &d2) };
        kernel - if d1.rows == 0 || d1.cols == 0 { 0 } else { rank(k, &d1) }
    }

    /// The same dimension from `0 → Hom(M,N) → Hom(P₀,N) → Hom(ΩM,N) → Ext¹(M,N) → 0`.
    pub fn ext1_long_exact(&self, m: &Module<K::E>, n: &Module<K::E>) -> usize {
        let (cover, omega) = self.syzygy(m);
        let hom_p0: usize = cover.free.tops.iter().map(|&v| n.dims[v]).sum();
        self.hom_dim(&omega.module, n) + self.hom_dim(m, n) - hom_p0
    }

    /// `dim Hom(M,N)` minus the maps that factor through the projective cover of `N`.
    pub fn stable_hom_modules(&self, m: &Module<K::E>, n: &Module<K::E>) -> usize {
        let k = &self.field;
        let homs = self.hom_space(m, n);
        let cover = self.projective_cover(n);
        let through: Vec<Vec<K::E>> = self
            .hom_space(m, &cover.free.module)
            .iter()
            .map(|g| self.compose(&cover.map, g).maps.into_iter().flat_map(|x| x.data).collect())
            .collect();
        let width: usize = (0..self.n()).map(|v| n.dims[v] * m.dims[v]).sum();
        let r = if through.is_empty() || width == 0 { 0 } else { rank(k, &Mat::from_columns(k, width, &through)) };
        homs.len() - r
    }

    pub fn end_dim(&self, m: &Module<K::E>) -> usize {
        self.hom_dim(m, m)
    }

    pub fn is_projective(&self, m: &Module<K::E>) -> bool {
        self.syzygy(m).1.module.is_zero()
    }

    /// `rad P(x)` as a module.
    pub fn radical_of_projective(&self, x: usize) -> Module<K::E> {
        self.radical(&self.projective(x)).module
    }
}

#[cfg(test)]
mod tests {
    use super::super::algebra::potential_terms;
    use super::super::field::{PrimeField, Rationals};
    use super::*;
    use crate::quiver::Quiver;

    fn c3() -> Quiver {
        Quiver::from_pairs("C3", &[(1, 2), (2, 3), (3, 1)]).unwrap()
    }

    #[test]
    fn projectives_of_c3() {
        let q = c3();
        let ab = AlgebraBasis::build(PrimeField::new(101).unwrap(), &q, potential_terms(&q).unwrap()).unwrap();
        let p1 = ab.projective(0);
        assert_eq!(p1.dims, vec![1, 1, 0]);
        assert!(ab.is_module(&p1));
        assert_eq!(ab.end_dim(&p1), 1);
        assert!(ab.is_projective(&p1));
        let rad = ab.radical_of_projective(0);
        assert_eq!(rad.dims, vec![0, 1, 0]);
        assert!(!ab.is_projective(&rad));
    }

    #[test]
    fn cokernel_recovers_module() {
        let q = c3();
        let ab = AlgebraBasis::build(Rationals, &q, potential_terms(&q).unwrap()).unwrap();
        let rad = ab.radical_of_projective(0);
        let pres = ab.minimal_presentation(&rad);
        assert_eq!((pres.p1.clone(), pres.p0.clone()), (vec![2], vec![1]));
        let back = ab.cokernel(&pres);
        assert_eq!(back.dims, rad.dims);
        assert!(ab.is_module(&back));
    }

    #[test]
    fn homs_are_module_maps() {
        let q = c3();
        let ab = AlgebraBasis::build(Rationals, &q, potential_terms(&q).unwrap()).unwrap();
        let (p, r) = (ab.projective(0), ab.projective(2));
        for f in ab.hom_space(&r, &p) {
            assert!(ab.is_hom(&f, &r, &p));
        }
        // Hom(P(3), P(1)) = e_1 B e_3 = 0 since 1->2->3 is a relation.
        assert_eq!(ab.hom_dim(&r, &p), 0);
        assert_eq!(ab.hom_dim(&p, &r), 1);
    }
}
