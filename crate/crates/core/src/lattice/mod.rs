//! Moment cones as integer inequality systems, and the lattice tests that
//! classify them.
//!
//! A [`Cone`] is `{x : ⟨x, vᵢ⟩ ≥ 0 ∀i}` for primitive integer inward facet
//! normals `vᵢ`. Classification answers three questions exactly:
//!
//! - the lineality dimension (largest linear subspace inside the cone),
//! - strict convexity (no line inside the cone),
//! - goodness: for every face `F` other than the apex `{0}`, the normals of
//!   the facets containing `F` form a ℤ-basis of `span(S_F) ∩ ℤᵈ`.
//!
//! Faces come from the extreme rays of the cone modulo its lineality space:
//! the face cut out by a facet subset is spanned by the rays on which those
//! normals vanish, and the facets containing it are the normals vanishing on
//! all of them. [`Cone::closure`] computes the same set with one exact LP and
//! serves as the definition-level cross-check.

mod matrix;
mod normal_form;

pub use matrix::IntMatrix;
pub use normal_form::{
    complete_basis_transform, hermite_normal_form, smith_normal_form, unimodular_inverse,
    HermiteForm, SmithForm,
};

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{gcd_all, int_dot, is_zero_vec, rat_from_int, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("normal {0} is not primitive")]
    NotPrimitive(usize),
    #[error("normal {index} has length {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("duplicate facet normal")]
    DuplicateNormal,
    #[error("anti-parallel facet normals")]
    AntiParallelNormals,
    #[error("cone has empty interior")]
    DegenerateCone,
    #[error("normal {0} does not define a facet")]
    RedundantNormal(usize),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("cone dimension must be positive")]
    ZeroDimension,
}

/// `v / gcd(|vᵢ|)`, sign preserved.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>, LatticeError> {
    if is_zero_vec(v) {
        return Err(LatticeError::ZeroVector);
    }
    let g = gcd_all(v);
    Ok(v.iter().map(|x| x / &g).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    normals: Vec<Vec<Int>>,
}

/// A face of a cone, identified by the facets that contain it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    /// Indices (into [`Cone::normals`]) of every facet containing the face.
    pub facets: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConeClassification {
    pub strictly_convex: bool,
    pub good: bool,
    pub lineality_dim: usize,
    pub reeb_type: bool,
}

impl Cone {
    /// Validates the normals and stores them in lexicographic order.
    pub fn new(dim: usize, normals: Vec<Vec<Int>>) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        for (i, v) in normals.iter().enumerate() {
            if v.len() != dim {
                return Err(LatticeError::DimensionMismatch {
                    index: i,
                    expected: dim,
                    found: v.len(),
                });
            }
            if is_zero_vec(v) {
                return Err(LatticeError::ZeroVector);
            }
            if !gcd_all(v).is_one() {
                return Err(LatticeError::NotPrimitive(i));
            }
        }
        let mut normals = normals;
        normals.sort();
        if normals.windows(2).any(|w| w[0] == w[1]) {
            return Err(LatticeError::DuplicateNormal);
        }
        let set: BTreeSet<&Vec<Int>> = normals.iter().collect();
        if normals
            .iter()
            .any(|v| set.contains(&v.iter().map(|x| -x).collect::<Vec<_>>()))
        {
            return Err(LatticeError::AntiParallelNormals);
        }
        Ok(Self { dim, normals })
    }

    pub fn from_i64(dim: usize, normals: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(
            dim,
            normals
                .iter()
                .map(|v| v.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    /// The positive orthant `{x ≥ 0}` in ℝᵈ.
    pub fn orthant(dim: usize) -> Self {
        let normals = (0..dim).map(|i| unit(dim, i)).collect();
        Self::new(dim, normals).expect("unit vectors form a valid cone")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<Int>] {
        &self.normals
    }

    pub fn normal_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.dim, &self.normals)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.normals
            .iter()
            .all(|v| !crate::rational::mixed_dot(x, v).is_negative())
    }

    pub fn lineality_dim(&self) -> usize {
        self.dim - self.normal_matrix().rank()
    }

    /// Whether the cone contains a line, decided by LP: maximize each
    /// coordinate over `{x : ⟨x, vᵢ⟩ = 0 ∀i, xⱼ ≤ 1}`.
    pub fn contains_line(&self) -> bool {
        let d = self.dim;
        (0..d).any(|j| {
            let mut lp = LinearProgram::new(d);
            lp.set_all_free();
            for v in &self.normals {
                lp.constrain(v.iter().map(rat_from_int).collect(), Relation::Eq, Rat::zero());
            }
            for sign in [1i64, -1] {
                let mut row = vec![Rat::zero(); d];
                row[j] = Rat::from_integer(Int::from(sign));
                lp.constrain(row, Relation::Le, Rat::one());
            }
            let mut objective = vec![Rat::zero(); d];
            objective[j] = Rat::one();
            matches!(lp.maximize(&objective), LpOutcome::Optimal { value, .. } if value.is_positive())
        })
    }

    /// All facets whose hyperplane contains the face cut out by `subset`.
    pub fn closure(&self, subset: &[usize]) -> Vec<usize> {
        let d = self.dim;
        let others: Vec<usize> = (0..self.normals.len())
            .filter(|i| !subset.contains(i))
            .collect();
        if others.is_empty() {
            let mut s = subset.to_vec();
            s.sort_unstable();
            return s;
        }
        // Variables: x (free, d of them) then one slack tⱼ ∈ [0, 1] per other facet.
        let nv = d + others.len();
        let mut lp = LinearProgram::new(nv);
        for i in 0..d {
            lp.set_free(i);
        }
        for &i in subset {
            let mut row: Vec<Rat> = self.normals[i].iter().map(rat_from_int).collect();
            row.resize(nv, Rat::zero());
            lp.constrain(row, Relation::Eq, Rat::zero());
        }
        for (k, &j) in others.iter().enumerate() {
            let mut row: Vec<Rat> = self.normals[j].iter().map(rat_from_int).collect();
            row.resize(nv, Rat::zero());
            row[d + k] = -Rat::one();
            lp.constrain(row, Relation::Ge, Rat::zero());
            let mut cap = vec![Rat::zero(); nv];
            cap[d + k] = Rat::one();
            lp.constrain(cap, Relation::Le, Rat::one());
        }
        let mut objective = vec![Rat::zero(); nv];
        for o in objective.iter_mut().skip(d) {
            *o = Rat::one();
        }
        let LpOutcome::Optimal { point, .. } = lp.maximize(&objective) else {
            unreachable!("origin is feasible and slacks are capped");
        };
        let mut out: Vec<usize> = subset.to_vec();
        for (k, &j) in others.iter().enumerate() {
            if point[d + k].is_zero() {
                out.push(j);
            }
        }
        out.sort_unstable();
        out
    }

    fn rank_of(&self, facets: &[usize]) -> usize {
        let rows: Vec<Vec<Int>> = facets.iter().map(|&i| self.normals[i].clone()).collect();
        IntMatrix::from_rows(self.dim, &rows).rank()
    }

    /// Checks full-dimensionality and that every normal defines a facet.
    pub fn validate_facets(&self) -> Result<(), LatticeError> {
        if !self.closure(&[]).is_empty() {
            return Err(LatticeError::DegenerateCone);
        }
        for i in 0..self.normals.len() {
            if self.closure(&[i]) != [i] {
                return Err(LatticeError::RedundantNormal(i));
            }
        }
        Ok(())
    }

    /// Every face, sorted by dimension then facet list. The whole cone is the
    /// face with an empty facet list.
    pub fn faces(&self) -> Result<Vec<Face>, LatticeError> {
        self.validate_facets()?;
        let n = self.normals.len();
        let rays = self.extreme_rays();
        // vanishes[j][r]: normal j is zero on ray r
        let vanishes: Vec<Vec<bool>> = self
            .normals
            .iter()
            .map(|v| rays.iter().map(|r| int_dot(v, r).is_zero()).collect())
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mask in 0u64..(1u64 << n) {
            let on_face: Vec<usize> = (0..rays.len())
                .filter(|&r| (0..n).all(|i| mask >> i & 1 == 0 || vanishes[i][r]))
                .collect();
            let closure: Vec<usize> = (0..n)
                .filter(|&j| on_face.iter().all(|&r| vanishes[j][r]))
                .collect();
            seen.insert(closure);
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|facets| Face {
                dim: self.dim - self.rank_of(&facets),
                facets,
            })
            .collect();
        faces.sort();
        Ok(faces)
    }

    /// Primitive generators of the extreme rays of `C ∩ L^⊥`, where `L` is
    /// the lineality space. Each is cut out by `rank − 1` independent normals.
    fn extreme_rays(&self) -> Vec<Vec<Int>> {
        let lineality = integer_kernel(&self.normals, self.dim);
        let rank = self.dim - lineality.len();
        let mut rays: BTreeSet<Vec<Int>> = BTreeSet::new();
        if rank == 0 {
            return Vec::new();
        }
        for subset in crate::polytope::combinations(self.normals.len(), rank - 1) {
            let mut rows: Vec<Vec<Int>> = subset.iter().map(|&i| self.normals[i].clone()).collect();
            rows.extend(lineality.iter().cloned());
            let kernel = integer_kernel(&rows, self.dim);
            let [x] = kernel.as_slice() else {
                continue;
            };
            let pairings: Vec<Int> = self.normals.iter().map(|v| int_dot(v, x)).collect();
            if pairings.iter().all(|p| !p.is_negative()) {
                rays.insert(x.clone());
            } else if pairings.iter().all(|p| !p.is_positive()) {
                rays.insert(x.iter().map(|c| -c).collect());
            }
        }
        rays.into_iter().collect()
    }

    /// Lerman's goodness condition: for every face of codimension `k` with
    /// `1 ≤ k < d`, the normals of the facets through it form a ℤ-basis of
    /// their saturated span. The apex of a pointed cone is exempt, so every
    /// pointed two-dimensional cone is good and so is the cone over a square.
    pub fn is_good(&self) -> Result<bool, LatticeError> {
        self.faces_are_bases(false)
    }

    /// The stricter reading that also tests the apex of a pointed cone.
    /// A pointed cone passing it is unimodularly equivalent to an orthant.
    pub fn is_good_all_faces(&self) -> Result<bool, LatticeError> {
        self.faces_are_bases(true)
    }

    fn faces_are_bases(&self, include_apex: bool) -> Result<bool, LatticeError> {
        for face in self.faces()? {
            if face.facets.is_empty() || (face.dim == 0 && !include_apex) {
                continue;
            }
            if !self.is_lattice_basis(&face.facets) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the selected normals form a ℤ-basis of `span ∩ ℤᵈ`.
    pub fn is_lattice_basis(&self, facets: &[usize]) -> bool {
        let rows: Vec<Vec<Int>> = facets.iter().map(|&i| self.normals[i].clone()).collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(self.dim, &rows));
        let factors = snf.invariant_factors();
        factors.len() == facets.len() && factors.iter().all(One::is_one)
    }

    pub fn classify(&self) -> Result<ConeClassification, LatticeError> {
        let good = self.is_good()?;
        let lineality_dim = self.lineality_dim();
        let strictly_convex = !self.contains_line();
        debug_assert_eq!(strictly_convex, lineality_dim == 0);
        Ok(ConeClassification {
            strictly_convex,
            good,
            lineality_dim,
            reeb_type: good && strictly_convex,
        })
    }

    /// Image of the cone under `x ↦ U x`; normals transform by `U⁻ᵀ`.
    pub fn unimodular_transform(&self, u: &IntMatrix) -> Result<Cone, LatticeError> {
        if u.rows() != self.dim || u.cols() != self.dim {
            return Err(LatticeError::NotUnimodular);
        }
        let inv = unimodular_inverse(u).ok_or(LatticeError::NotUnimodular)?;
        let inv_t = inv.transpose();
        Cone::new(
            self.dim,
            self.normals.iter().map(|v| inv_t.apply(v)).collect(),
        )
    }
}

/// A basis of primitive integer vectors for `{x : ⟨row, x⟩ = 0 ∀ rows}`.
fn integer_kernel(rows: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    // reduced row echelon form over ℚ
    let mut a: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(rat_from_int).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..dim {
        let r = pivots.len();
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        a[r].iter_mut().for_each(|x| *x *= &inv);
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                row.iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(c);
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rat::zero(); dim];
            x[free] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -a[r][free].clone();
            }
            let lcm = x.iter().fold(Int::one(), |l, v| num_integer::Integer::lcm(&l, v.denom()));
            let ints: Vec<Int> = x.iter().map(|v| (v * Rat::from_integer(lcm.clone())).to_integer()).collect();
            primitive(&ints).expect("kernel vectors are nonzero")
        })
        .collect()
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::zero(); dim];
    v[i] = Int::one();
    v
}
