use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Int;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r)))
            .finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<Int>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * &other[(k, c)];
                }
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `v M` for a row vector `v`.
    pub fn apply_row(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rows, "shape mismatch");
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| &v[r] * &self[(r, c)]).sum())
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Int::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Int>> = self.to_rows();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for r in rows.iter_mut().skip(rank + 1) {
                if r[c].is_zero() {
                    continue;
                }
                let f = r[c].clone();
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x = &*x * &pivot_row[c] - &f * y;
                }
                let g = r.iter().fold(Int::zero(), |g, x| g.gcd(x));
                if !g.is_zero() && !g.is_one() {
                    r.iter_mut().for_each(|x| *x /= &g);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self[(r, c)].clone();
            self[(r, c)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}
