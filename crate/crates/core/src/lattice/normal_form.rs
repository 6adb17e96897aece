use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::rational::Int;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d₁ | d₂ | …`, all entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₁, d₂, …` (length `min(rows, cols)`).
    pub fn invariant_factors(&self) -> alloc::vec::Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, a, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)]))
            });
            if let Some(i) = offending {
                a.add_row_multiple(t, i, &Int::one());
                u.add_row_multiple(t, i, &Int::one());
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, a, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form: `U · M = H`, `U` unimodular, `H` in row
/// echelon form with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h[(i, c)].is_zero() && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(pivot_row, c)]);
                h.add_row_multiple(i, pivot_row, &-q.clone());
                u.add_row_multiple(i, pivot_row, &-q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, c)].is_zero() {
            continue;
        }
        if h[(pivot_row, c)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = h[(i, c)].div_floor(&h[(pivot_row, c)]);
            if !q.is_zero() {
                h.add_row_multiple(i, pivot_row, &-q.clone());
                u.add_row_multiple(i, pivot_row, &-q);
            }
        }
        pivot_row += 1;
    }
    HermiteForm { h, u }
}

/// Inverse of a unimodular matrix; `None` when `|det| ≠ 1`.
///
/// The Hermite form of a unimodular matrix is the identity, so the
/// transformation recorded along the way is the inverse.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_unimodular() {
        return None;
    }
    let HermiteForm { h, u } = hermite_normal_form(m);
    debug_assert_eq!(h, IntMatrix::identity(m.rows()));
    Some(u)
}

/// For rows `S` (k × d) forming a ℤ-basis of `span(S) ∩ ℤᵈ`, returns a
/// unimodular `W` with `S · W = [I_k | 0]`, i.e. the row-vector map
/// `v ↦ v W` sends the i-th row of `S` to `eᵢ`.
pub fn complete_basis_transform(s: &IntMatrix) -> Option<IntMatrix> {
    let k = s.rows();
    let d = s.cols();
    if k > d {
        return None;
    }
    let snf = smith_normal_form(s);
    if snf.invariant_factors().iter().any(|x| !x.is_one()) {
        return None;
    }
    let mut block = IntMatrix::identity(d);
    for i in 0..k {
        for j in 0..k {
            block[(i, j)] = snf.u[(i, j)].clone();
        }
    }
    Some(snf.v.mul(&block))
}
