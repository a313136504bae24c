//! Dense linear algebra over a [`Field`] context.

use super::field::Field;

/// Row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn zeros<K: Field<E = E>>(k: &K, rows: usize, cols: usize) -> Mat<E> {
        Mat { rows, cols, data: vec![k.zero(); rows * cols] }
    }

    pub fn identity<K: Field<E = E>>(k: &K, n: usize) -> Mat<E> {
        let mut m = Mat::zeros(k, n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    pub fn from_columns<K: Field<E = E>>(k: &K, rows: usize, cols: &[Vec<E>]) -> Mat<E> {
        let mut m = Mat::zeros(k, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero<K: Field<E = E>>(&self, k: &K) -> bool {
        self.data.iter().all(|x| k.is_zero(x))
    }
}

pub fn mul<K: Field>(k: &K, a: &Mat<K::E>, b: &Mat<K::E>) -> Mat<K::E> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut c = Mat::zeros(k, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if k.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(l, j);
                if !k.is_zero(y) {
                    let s = k.add(c.get(i, j), &k.mul(x, y));
                    c.set(i, j, s);
                }
            }
        }
    }
    c
}

pub fn apply<K: Field>(k: &K, a: &Mat<K::E>, v: &[K::E]) -> Vec<K::E> {
    assert_eq!(a.cols, v.len(), "dimension mismatch");
    (0..a.rows)
        .map(|i| {
            a.row(i).iter().zip(v).fold(k.zero(), |s, (x, y)| if k.is_zero(x) || k.is_zero(y) { s } else { k.add(&s, &k.mul(x, y)) })
        })
        .collect()
}

pub fn sub<K: Field>(k: &K, a: &Mat<K::E>, b: &Mat<K::E>) -> Mat<K::E> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "dimension mismatch");
    Mat { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| k.sub(x, y)).collect() }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(k: &K, m: &mut Mat<K::E>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else { continue };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = k.inv(m.get(r, c));
        for j in c..m.cols {
            let x = k.mul(m.get(r, j), &inv);
            m.set(r, j, x);
        }
        for i in 0..m.rows {
            if i == r || k.is_zero(m.get(i, c)) {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..m.cols {
                if !k.is_zero(m.get(r, j)) {
                    let x = k.sub(m.get(i, j), &k.mul(&f, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(k: &K, m: &Mat<K::E>) -> usize {
    rref(k, &mut m.clone()).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<K: Field>(k: &K, m: &Mat<K::E>) -> Vec<Vec<K::E>> {
    let mut r = m.clone();
    let pivots = rref(k, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); m.cols];
            v[f] = k.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(r.get(row, f));
            }
            v
        })
        .collect()
}

/// Some `X` with `a X = b`, if one exists.
pub fn solve<K: Field>(k: &K, a: &Mat<K::E>, b: &Mat<K::E>) -> Option<Mat<K::E>> {
    assert_eq!(a.rows, b.rows, "dimension mismatch");
    let mut aug = Mat::zeros(k, a.rows, a.cols + b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        for j in 0..b.cols {
            aug.set(i, a.cols + j, b.get(i, j).clone());
        }
    }
    let pivots = rref(k, &mut aug);
    if pivots.iter().any(|&p| p >= a.cols) {
        return None;
    }
    let mut x = Mat::zeros(k, a.cols, b.cols);
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, aug.get(row, a.cols + j).clone());
        }
    }
    Some(x)
}

/// Indices of standard basis vectors that extend the span of `vectors` to all of `K^n`.
pub fn complement<K: Field>(k: &K, vectors: &[Vec<K::E>], n: usize) -> Vec<usize> {
    let mut m = Mat::zeros(k, n, vectors.len() + n);
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    for i in 0..n {
        m.set(i, vectors.len() + i, k.one());
    }
    rref(k, &mut m).into_iter().filter(|&p| p >= vectors.len()).map(|p| p - vectors.len()).collect()
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, Rationals};
    use super::*;

    fn mat<K: Field>(k: &K, rows: usize, cols: usize, xs: &[i64]) -> Mat<K::E> {
        Mat { rows, cols, data: xs.iter().map(|&x| k.from_i64(x)).collect() }
    }

    #[test]
    fn nullspace_and_rank() {
        let k = Rationals;
        let m = mat(&k, 2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(rank(&k, &m), 1);
        let ns = nullspace(&k, &m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(apply(&k, &m, v).iter().all(|x| k.is_zero(x)));
        }
    }

    #[test]
    fn solve_and_complement() {
        let k = PrimeField::new(101).unwrap();
        let a = mat(&k, 2, 2, &[1, 1, 0, 1]);
        let b = mat(&k, 2, 1, &[3, 1]);
        let x = solve(&k, &a, &b).unwrap();
        assert_eq!(mul(&k, &a, &x), b);
        let sing = mat(&k, 2, 2, &[1, 1, 1, 1]);
        assert!(solve(&k, &sing, &b).is_none());
        assert_eq!(complement(&k, &[vec![1, 1, 0]], 3), vec![0, 2]);
    }
}
