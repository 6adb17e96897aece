//! Rational simple polytopes with positive integer facet labels.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{unimodular_inverse, IntMatrix};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{gcd_all, is_zero_vec, mixed_dot, rat_from_int, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("facet {0} has a zero or non-primitive normal")]
    BadNormal(usize),
    #[error("facet {index} has length {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("facet {0} has label 0")]
    ZeroLabel(usize),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is empty or not full-dimensional")]
    NotFullDimensional,
    #[error("facet {0} is redundant")]
    RedundantFacet(usize),
    #[error("vertex {0} lies on more than dim facets")]
    NotSimple(usize),
    #[error("transformation is not unimodular")]
    NotUnimodular,
}

/// `{x : ⟨x, normal⟩ ≥ constant}` carrying an orbifold label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub constant: Rat,
    pub label: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPolytope {
    dim: usize,
    facets: Vec<Facet>,
    vertices: Vec<Vec<Rat>>,
}

impl LabeledPolytope {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self, PolytopeError> {
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    index: i,
                    expected: dim,
                    found: f.normal.len(),
                });
            }
            if is_zero_vec(&f.normal) || !gcd_all(&f.normal).is_one() {
                return Err(PolytopeError::BadNormal(i));
            }
            if f.label == 0 {
                return Err(PolytopeError::ZeroLabel(i));
            }
        }
        if dim == 0 {
            if !facets.is_empty() {
                return Err(PolytopeError::DimensionMismatch {
                    index: 0,
                    expected: 0,
                    found: 0,
                });
            }
            return Ok(Self {
                dim,
                facets,
                vertices: vec![Vec::new()],
            });
        }
        let mut p = Self {
            dim,
            facets,
            vertices: Vec::new(),
        };
        if !p.is_bounded() {
            return Err(PolytopeError::Unbounded);
        }
        if !p.has_interior() {
            return Err(PolytopeError::NotFullDimensional);
        }
        p.vertices = p.enumerate_vertices();
        for (vi, v) in p.vertices.iter().enumerate() {
            if p.tight_facets(v).len() != dim {
                return Err(PolytopeError::NotSimple(vi));
            }
        }
        for i in 0..p.facets.len() {
            let on_facet: Vec<&Vec<Rat>> = p
                .vertices
                .iter()
                .filter(|v| p.slack(i, v).is_zero())
                .collect();
            if affine_rank(&on_facet) + 1 < dim {
                return Err(PolytopeError::RedundantFacet(i));
            }
        }
        Ok(p)
    }

    /// The standard simplex `{x ≥ 0, Σx ≤ size}` with all labels 1.
    pub fn standard_simplex(dim: usize, size: Rat) -> Self {
        let mut facets: Vec<Facet> = (0..dim)
            .map(|i| Facet {
                normal: crate::lattice::unit(dim, i),
                constant: Rat::zero(),
                label: 1,
            })
            .collect();
        if dim > 0 {
            facets.push(Facet {
                normal: vec![-Int::one(); dim],
                constant: -size,
                label: 1,
            });
        }
        Self::new(dim, facets).expect("standard simplex is valid")
    }

    /// The cube `[0, 1]ⁿ` with all labels 1.
    pub fn unit_cube(dim: usize) -> Self {
        let mut facets = Vec::new();
        for i in 0..dim {
            let e = crate::lattice::unit(dim, i);
            facets.push(Facet {
                normal: e.iter().map(|x| -x).collect(),
                constant: -Rat::one(),
                label: 1,
            });
            facets.push(Facet {
                normal: e,
                constant: Rat::zero(),
                label: 1,
            });
        }
        Self::new(dim, facets).expect("cube is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    /// `⟨x, uᵢ⟩ − κᵢ`
    pub fn slack(&self, facet: usize, x: &[Rat]) -> Rat {
        let f = &self.facets[facet];
        mixed_dot(x, &f.normal) - &f.constant
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        (0..self.facets.len()).all(|i| !self.slack(i, x).is_negative())
    }

    pub fn is_interior(&self, x: &[Rat]) -> bool {
        x.len() == self.dim && (0..self.facets.len()).all(|i| self.slack(i, x).is_positive())
    }

    /// Facets whose hyperplane passes through `x`.
    pub fn tight_facets(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.slack(i, x).is_zero())
            .collect()
    }

    /// Whether `x` lies in the relative interior of facet `i`.
    pub fn in_facet_interior(&self, i: usize, x: &[Rat]) -> bool {
        self.slack(i, x).is_zero()
            && (0..self.facets.len())
                .filter(|&j| j != i)
                .all(|j| self.slack(j, x).is_positive())
    }

    /// Coordinate-wise bounding box of the vertices.
    pub fn bounding_box(&self) -> (Vec<Rat>, Vec<Rat>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for k in 0..self.dim {
                if v[k] < lo[k] {
                    lo[k] = v[k].clone();
                }
                if v[k] > hi[k] {
                    hi[k] = v[k].clone();
                }
            }
        }
        (lo, hi)
    }

    /// `λ · P` for `λ > 0`; labels unchanged.
    pub fn dilate(&self, factor: &Rat) -> Self {
        assert!(factor.is_positive(), "dilation factor must be positive");
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                constant: &f.constant * factor,
                label: f.label,
            })
            .collect();
        Self::new(self.dim, facets).expect("dilation preserves validity")
    }

    /// Image under `x ↦ U x + t` with `U` unimodular.
    pub fn affine_transform(&self, u: &IntMatrix, t: &[Rat]) -> Result<Self, PolytopeError> {
        if u.rows() != self.dim || u.cols() != self.dim || t.len() != self.dim {
            return Err(PolytopeError::NotUnimodular);
        }
        let inv_t = unimodular_inverse(u)
            .ok_or(PolytopeError::NotUnimodular)?
            .transpose();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let normal = inv_t.apply(&f.normal);
                let constant = &f.constant + mixed_dot(t, &normal);
                Facet {
                    normal,
                    constant,
                    label: f.label,
                }
            })
            .collect();
        Self::new(self.dim, facets)
    }

    fn is_bounded(&self) -> bool {
        let d = self.dim;
        (0..d).all(|j| {
            [Rat::one(), -Rat::one()].into_iter().all(|sign| {
                let mut lp = LinearProgram::new(d);
                lp.set_all_free();
                for f in &self.facets {
                    lp.constrain(f.normal.iter().map(rat_from_int).collect(), Relation::Ge, Rat::zero());
                }
                let mut cap = vec![Rat::zero(); d];
                cap[j] = sign.clone();
                lp.constrain(cap.clone(), Relation::Le, Rat::one());
                !matches!(lp.maximize(&cap), LpOutcome::Optimal { value, .. } if value.is_positive())
            })
        })
    }

    fn has_interior(&self) -> bool {
        let d = self.dim;
        let mut lp = LinearProgram::new(d + 1);
        lp.set_all_free();
        for f in &self.facets {
            let mut row: Vec<Rat> = f.normal.iter().map(rat_from_int).collect();
            row.push(-Rat::one());
            lp.constrain(row, Relation::Ge, f.constant.clone());
        }
        let mut cap = vec![Rat::zero(); d + 1];
        cap[d] = Rat::one();
        lp.constrain(cap.clone(), Relation::Le, Rat::one());
        matches!(lp.maximize(&cap), LpOutcome::Optimal { value, .. } if value.is_positive())
    }

    fn enumerate_vertices(&self) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for subset in combinations(self.facets.len(), self.dim) {
            let a: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| self.facets[i].normal.iter().map(rat_from_int).collect())
                .collect();
            let b: Vec<Rat> = subset.iter().map(|&i| self.facets[i].constant.clone()).collect();
            if let Some(x) = solve(a, b) {
                if self.contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out.sort();
        out
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Unique solution of the square system `A x = b`, if any.
pub fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        b[c] /= &pivot;
        let row = a[c].clone();
        let rhs = b[c].clone();
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for (x, y) in a[r].iter_mut().zip(&row) {
                *x -= &f * y;
            }
            b[r] -= &f * &rhs;
        }
    }
    Some(b)
}

/// Affine dimension of a point set (−1 as 0 for the empty set is not needed
/// by callers, which only compare against `dim − 1`).
fn affine_rank(points: &[&Vec<Rat>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let mut rows: Vec<Vec<Rat>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    let cols = first.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rows.iter_mut().skip(rank + 1) {
            if r[c].is_zero() {
                continue;
            }
            let f = &r[c] / &pivot[c];
            for (x, y) in r.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ints, rat};

    #[test]
    fn simplex_vertices() {
        let s = LabeledPolytope::standard_simplex(2, rat(1, 1));
        assert_eq!(
            s.vertices(),
            [
                vec![rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1)],
                vec![rat(1, 1), rat(0, 1)]
            ]
        );
        assert!(s.is_interior(&[rat(1, 3), rat(1, 3)]));
        assert!(!s.is_interior(&[rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn cube_is_simple_with_eight_vertices() {
        let c = LabeledPolytope::unit_cube(3);
        assert_eq!(c.vertices().len(), 8);
    }

    #[test]
    fn rejects_unbounded_and_non_simple() {
        let half_plane = vec![Facet {
            normal: ints(&[1, 0]),
            constant: rat(0, 1),
            label: 1,
        }];
        assert_eq!(LabeledPolytope::new(2, half_plane), Err(PolytopeError::Unbounded));

        // square pyramid: apex on four facets
        let pyramid: Vec<Facet> = [
            ([0, 0, 1], 0),
            ([0, 1, -1], 0),
            ([1, 0, -1], 0),
            ([0, -1, -1], -2),
            ([-1, 0, -1], -2),
        ]
        .iter()
        .map(|(n, k)| Facet {
            normal: ints(n),
            constant: rat(*k, 1),
            label: 1,
        })
        .collect();
        assert!(matches!(LabeledPolytope::new(3, pyramid), Err(PolytopeError::NotSimple(_))));
    }

    #[test]
    fn rejects_empty_and_redundant() {
        let empty = vec![
            Facet { normal: ints(&[1]), constant: rat(1, 1), label: 1 },
            Facet { normal: ints(&[-1]), constant: rat(0, 1), label: 1 },
        ];
        assert_eq!(LabeledPolytope::new(1, empty), Err(PolytopeError::NotFullDimensional));
        let mut facets = LabeledPolytope::unit_cube(2).facets().to_vec();
        facets.push(Facet { normal: ints(&[1, 1]), constant: rat(-1, 1), label: 1 });
        assert!(matches!(LabeledPolytope::new(2, facets), Err(PolytopeError::RedundantFacet(4))));
    }

    #[test]
    fn affine_transform_moves_vertices() {
        let s = LabeledPolytope::standard_simplex(2, rat(1, 1));
        let u = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let t = LabeledPolytope::affine_transform(&s, &u, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert!(t.vertices().contains(&vec![rat(2, 1), rat(1, 1)]));
        assert!(t.vertices().contains(&vec![rat(1, 1), rat(0, 1)]));
        assert!(t.vertices().contains(&vec![rat(2, 1), rat(0, 1)]));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), [Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), [vec![0, 1, 2]]);
    }
}
