//! Exact linear programming over the rationals.
//!
//! Dense two-phase simplex with Bland's rule. Problems here are tiny (cone
//! dimension plus one slack per facet), so the tableau is rebuilt per call
//! and no attempt is made at sparsity.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
struct Constraint {
    coeffs: Vec<Rat>,
    relation: Relation,
    rhs: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// `maximize c·x` subject to linear constraints. Variables are nonnegative
/// unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            free: vec![false; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn set_all_free(&mut self) -> &mut Self {
        self.free.iter_mut().for_each(|f| *f = true);
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn maximize(&self, objective: &[Rat]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars, "objective width");

        // Column layout: split variables, then one slack per inequality, then
        // one artificial per row.
        let mut split_cols = Vec::with_capacity(self.num_vars);
        let mut ncols = 0usize;
        for &f in &self.free {
            split_cols.push(ncols);
            ncols += if f { 2 } else { 1 };
        }
        let structural = ncols;
        let slack_count = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let m = self.constraints.len();
        let art_start = structural + slack_count;
        let total = art_start + m;

        let mut a = vec![vec![Rat::zero(); total]; m];
        let mut b = vec![Rat::zero(); m];
        let mut slack = structural;
        for (i, con) in self.constraints.iter().enumerate() {
            for (v, coef) in con.coeffs.iter().enumerate() {
                let col = split_cols[v];
                a[i][col] = coef.clone();
                if self.free[v] {
                    a[i][col + 1] = -coef.clone();
                }
            }
            match con.relation {
                Relation::Le => {
                    a[i][slack] = Rat::one();
                    slack += 1;
                }
                Relation::Ge => {
                    a[i][slack] = -Rat::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            b[i] = con.rhs.clone();
            if b[i].is_negative() {
                for x in a[i].iter_mut() {
                    *x = -x.clone();
                }
                b[i] = -b[i].clone();
            }
            a[i][art_start + i] = Rat::one();
        }
        let mut basis: Vec<usize> = (art_start..total).collect();

        // Phase one: drive the artificials to zero.
        let mut phase1 = vec![Rat::zero(); total];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -Rat::one();
        }
        let unblocked = vec![false; total];
        if optimize(&mut a, &mut b, &mut basis, &phase1, &unblocked).is_err() {
            unreachable!("phase one objective is bounded above by zero");
        }
        let infeasibility: Rat = basis
            .iter()
            .zip(&b)
            .filter(|(&col, _)| col >= art_start)
            .map(|(_, v)| v.clone())
            .fold(Rat::zero(), |acc, v| acc + v);
        if !infeasibility.is_zero() {
            return LpOutcome::Infeasible;
        }

        // Pivot remaining (zero-valued) artificials out; drop redundant rows.
        let mut i = 0;
        while i < a.len() {
            if basis[i] >= art_start {
                if let Some(j) = (0..art_start).find(|&j| !a[i][j].is_zero()) {
                    pivot(&mut a, &mut b, &mut basis, i, j);
                } else {
                    a.remove(i);
                    b.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }

        let mut cost = vec![Rat::zero(); total];
        for (v, c) in objective.iter().enumerate() {
            let col = split_cols[v];
            cost[col] = c.clone();
            if self.free[v] {
                cost[col + 1] = -c.clone();
            }
        }
        let blocked: Vec<bool> = (0..total).map(|j| j >= art_start).collect();
        if optimize(&mut a, &mut b, &mut basis, &cost, &blocked).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut column_values = vec![Rat::zero(); total];
        for (row, &col) in basis.iter().enumerate() {
            column_values[col] = b[row].clone();
        }
        let point: Vec<Rat> = (0..self.num_vars)
            .map(|v| {
                let col = split_cols[v];
                if self.free[v] {
                    &column_values[col] - &column_values[col + 1]
                } else {
                    column_values[col].clone()
                }
            })
            .collect();
        let value = objective
            .iter()
            .zip(&point)
            .fold(Rat::zero(), |acc, (c, x)| acc + c * x);
        LpOutcome::Optimal { value, point }
    }
}

struct Unbounded;

fn optimize(
    a: &mut [Vec<Rat>],
    b: &mut [Rat],
    basis: &mut [usize],
    cost: &[Rat],
    blocked: &[bool],
) -> Result<(), Unbounded> {
    let ncols = cost.len();
    loop {
        let mut is_basic = vec![false; ncols];
        for &col in basis.iter() {
            is_basic[col] = true;
        }
        // Bland: first improving column.
        let entering = (0..ncols).find(|&j| {
            if blocked[j] || is_basic[j] {
                return false;
            }
            let mut reduced = cost[j].clone();
            for (row, &col) in basis.iter().enumerate() {
                if !a[row][j].is_zero() && !cost[col].is_zero() {
                    reduced -= &cost[col] * &a[row][j];
                }
            }
            reduced.is_positive()
        });
        let Some(j) = entering else {
            return Ok(());
        };
        let mut leaving: Option<(usize, Rat)> = None;
        for row in 0..a.len() {
            if a[row][j].is_positive() {
                let ratio = &b[row] / &a[row][j];
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && basis[row] < basis[*r]),
                };
                if better {
                    leaving = Some((row, ratio));
                }
            }
        }
        let Some((row, _)) = leaving else {
            return Err(Unbounded);
        };
        pivot(a, b, basis, row, j);
    }
}

fn pivot(a: &mut [Vec<Rat>], b: &mut [Rat], basis: &mut [usize], row: usize, col: usize) {
    let p = a[row][col].clone();
    for x in a[row].iter_mut() {
        *x /= &p;
    }
    b[row] /= &p;
    let pivot_row = a[row].clone();
    let pivot_rhs = b[row].clone();
    for r in 0..a.len() {
        if r == row || a[r][col].is_zero() {
            continue;
        }
        let factor = a[r][col].clone();
        for (x, y) in a[r].iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &factor * y;
            }
        }
        b[r] -= &factor * &pivot_rhs;
    }
    basis[row] = col;
}
