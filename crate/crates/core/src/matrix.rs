//! Dense matrices over a table field: RREF, rank, kernels, products.

use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows have different lengths; callers validate first.
    pub fn from_rows(rows: &[Vec<Elem>], cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, r: &[Elem]) {
        assert_eq!(r.len(), self.cols);
        self.data.extend_from_slice(r);
        self.rows += 1;
    }

    /// First `k` rows.
    pub fn top(&self, k: usize) -> Matrix {
        Matrix { rows: k, cols: self.cols, data: self.data[..k * self.cols].to_vec() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| f(e)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let src = other.row(l);
                let dst = out.row_mut(i);
                axpy(f, dst, src, a);
            }
        }
        out
    }

    /// `self * other^T`, the matrix of pairwise inner products of rows.
    pub fn mul_transpose(&self, other: &Matrix, f: &Field) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Matrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                out[(i, j)] = dot(f, self.row(i), other.row(j));
            }
        }
        out
    }

    /// In-place reduced row echelon form; zero rows are dropped.
    /// Returns the pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let cols = self.cols;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self[(r, c)]);
            for e in self.row_mut(r) {
                *e = f.mul(*e, inv);
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let a = self[(i, c)];
                    if a != 0 {
                        axpy(f, self.row_mut(i), &pivot_row, f.neg(a));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r * cols);
        self.rows = r;
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the right kernel {v : self * v = 0}, one vector per row,
    /// in the standard free-variable form.
    pub fn kernel(&self, f: &Field) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(0, self.cols);
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[(i, fc)]);
            }
            out.push_row(&v);
        }
        out
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug[(i, n + i)] = 1;
        }
        let piv = aug.rref(f);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

/// `dst += c * src`.
#[inline]
pub fn axpy(f: &Field, dst: &mut [Elem], src: &[Elem], c: Elem) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add(*d, f.mul(s, c));
        }
    }
}

#[inline]
pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}
