//! Reeb vectors in the torus lattice and the labeled polytopes they cut out.
//!
//! For a good strictly convex cone with normals `v₁ … v_N`, any
//! `R = Σ aⱼ vⱼ` with all `aⱼ > 0` is the Reeb field of some invariant
//! contact form. When `R` is a lattice vector, reducing by its circle gives
//! an orbifold whose moment polytope is `C ∩ {⟨x, R⟩ = level}`; the label of
//! the facet coming from `vⱼ` is the index of `ℤvⱼ + ℤR` in its saturation.
//!
//! [`synthesize_reeb`] builds such an `R` so that `R` together with the
//! normals of some edge is a ℤ-basis, which forces the labels of that edge's
//! facets to be 1.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    complete_basis_transform, smith_normal_form, unimodular_inverse, Cone, IntMatrix, LatticeError,
};
use crate::polytope::{Facet, LabeledPolytope, PolytopeError};
use crate::rational::{ceil, gcd_all, is_zero_vec, rat_from_int, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReebError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("cone is not of Reeb type (good and strictly convex)")]
    NotReebType,
    #[error("no d−1 facets meet in an edge")]
    NoEdge,
    #[error("vectors are collinear")]
    Collinear,
    #[error("slice level must be positive")]
    EmptySlice,
    #[error("Reeb synthesis does not match the cone: {0}")]
    InvalidSynthesis(&'static str),
    #[error("label does not fit in u64")]
    LabelOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebSynthesis {
    pub reeb: Vec<Int>,
    /// One positive coefficient per cone normal, in the cone's order.
    pub coefficients: Vec<Rat>,
    /// `d − 1` facet indices meeting in an edge; with `reeb` they form a ℤ-basis.
    pub basis_witness: Vec<usize>,
}

impl ReebSynthesis {
    /// Re-checks positivity, `Σ aⱼ vⱼ = R`, and the basis witness.
    pub fn verify(&self, cone: &Cone) -> Result<(), ReebError> {
        let d = cone.dim();
        if self.coefficients.len() != cone.normals().len() || self.reeb.len() != d {
            return Err(ReebError::InvalidSynthesis("length mismatch"));
        }
        if self.coefficients.iter().any(|a| !a.is_positive()) {
            return Err(ReebError::InvalidSynthesis("non-positive coefficient"));
        }
        if combination(cone, &self.coefficients) != self.reeb.iter().map(rat_from_int).collect::<Vec<_>>() {
            return Err(ReebError::InvalidSynthesis("coefficients do not sum to R"));
        }
        if self.basis_witness.len() + 1 != d {
            return Err(ReebError::InvalidSynthesis("witness size"));
        }
        let mut rows: Vec<Vec<Int>> = self
            .basis_witness
            .iter()
            .map(|&i| cone.normals()[i].clone())
            .collect();
        rows.push(self.reeb.clone());
        if !IntMatrix::from_rows(d, &rows).det().abs().is_one() {
            return Err(ReebError::InvalidSynthesis("witness is not a ℤ-basis"));
        }
        Ok(())
    }
}

fn combination(cone: &Cone, coefficients: &[Rat]) -> Vec<Rat> {
    let d = cone.dim();
    let mut out = alloc::vec![Rat::zero(); d];
    for (a, v) in coefficients.iter().zip(cone.normals()) {
        for k in 0..d {
            out[k] += a * rat_from_int(&v[k]);
        }
    }
    out
}

pub fn synthesize_reeb(cone: &Cone) -> Result<ReebSynthesis, ReebError> {
    if !cone.classify()?.reeb_type {
        return Err(ReebError::NotReebType);
    }
    let d = cone.dim();
    let normals = cone.normals();
    let edge = cone
        .faces()?
        .into_iter()
        .find(|f| f.dim == 1 && f.facets.len() + 1 == d)
        .ok_or(ReebError::NoEdge)?;
    let witness = edge.facets;
    let rows: Vec<Vec<Int>> = witness.iter().map(|&i| normals[i].clone()).collect();
    // Row map v ↦ vW sends the edge normals to e₁ … e_{d−1}.
    let w = complete_basis_transform(&IntMatrix::from_rows(d, &rows)).ok_or(ReebError::NoEdge)?;
    let moved: Vec<Vec<Int>> = normals.iter().map(|v| w.apply_row(v)).collect();

    let rest: Vec<usize> = (0..normals.len()).filter(|i| !witness.contains(i)).collect();
    let last = |j: usize| moved[j][d - 1].clone();
    let target = if rest.iter().any(|&j| last(j).is_positive()) {
        Int::one()
    } else if rest.iter().any(|&j| last(j).is_negative()) {
        -Int::one()
    } else {
        return Err(ReebError::NoEdge);
    };

    let mut coefficients = alloc::vec![Rat::zero(); normals.len()];
    // Normals pointing the wrong way (or sideways) get a common small weight ε,
    // the admissible ones share what is left equally.
    let aligned: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|&j| (&target * last(j)).is_positive())
        .collect();
    let opposing: Vec<usize> = rest.iter().copied().filter(|j| !aligned.contains(j)).collect();
    let opposing_mass: Int = opposing.iter().map(|&j| last(j).abs()).sum();
    let eps = Rat::new(Int::one(), Int::one() + &opposing_mass);
    let leftover = Rat::one() + &eps * rat_from_int(&opposing_mass);
    let share = Int::from(aligned.len());
    for &j in &opposing {
        coefficients[j] = eps.clone();
    }
    for &j in &aligned {
        coefficients[j] = &leftover / rat_from_int(&(&share * (&target * last(j))));
    }

    for (k, &i) in witness.iter().enumerate() {
        let s: Rat = rest
            .iter()
            .map(|&l| &coefficients[l] * rat_from_int(&moved[l][k]))
            .fold(Rat::zero(), |acc, t| acc + t);
        let mut a = if s.is_positive() {
            rat_from_int(&ceil(&s)) - &s
        } else {
            -s
        };
        if a.is_zero() {
            a = Rat::one();
        }
        coefficients[i] = a;
    }

    let r = combination(cone, &coefficients);
    debug_assert!(r.iter().all(|x| x.is_integer()));
    let synthesis = ReebSynthesis {
        reeb: r.iter().map(|x| x.to_integer()).collect(),
        coefficients,
        basis_witness: witness,
    };
    synthesis.verify(cone)?;
    Ok(synthesis)
}

/// Index of `ℤv + ℤR` inside `span_ℝ(v, R) ∩ ℤᵈ`.
pub fn facet_label(v: &[Int], reeb: &[Int]) -> Result<Int, ReebError> {
    let m = IntMatrix::from_rows(v.len(), &[v.to_vec(), reeb.to_vec()]);
    let snf = smith_normal_form(&m);
    let factors = snf.invariant_factors();
    if factors.iter().any(Zero::is_zero) {
        return Err(ReebError::Collinear);
    }
    Ok(factors.iter().product())
}

/// Coordinates on the hyperplane `{⟨x, R⟩ = level}` identifying its lattice
/// with ℤ^{d−1}: `x = Pᵀ (y, level)` where `P` is unimodular with `P R = e_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneChart {
    p: IntMatrix,
    p_inv_t: IntMatrix,
    level: Rat,
}

impl HyperplaneChart {
    pub fn new(reeb: &[Int], level: Rat) -> Result<Self, ReebError> {
        let d = reeb.len();
        if is_zero_vec(reeb) || !gcd_all(reeb).is_one() {
            return Err(ReebError::InvalidSynthesis("Reeb vector is not primitive"));
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(d, &[reeb.to_vec()]));
        // u·Rᵀ·V = e₁ᵀ with u = ±1, so Vᵀ R = u e₁.
        let sign = snf.u[(0, 0)].clone();
        let vt = snf.v.transpose();
        let mut p = IntMatrix::zeros(d, d);
        for c in 0..d {
            p[(d - 1, c)] = &sign * &vt[(0, c)];
            for r in 1..d {
                p[(r - 1, c)] = vt[(r, c)].clone();
            }
        }
        debug_assert_eq!(p.apply(reeb), crate::lattice::unit(d, d - 1));
        let p_inv_t = unimodular_inverse(&p)
            .expect("basis change is unimodular")
            .transpose();
        Ok(Self { p, p_inv_t, level })
    }

    pub fn level(&self) -> &Rat {
        &self.level
    }

    /// Normal `v` of the cone expressed in chart coordinates (length `d`).
    pub fn transform_normal(&self, v: &[Int]) -> Vec<Int> {
        self.p.apply(v)
    }

    /// Point of the hyperplane in the cone's coordinates.
    pub fn lift(&self, y: &[Rat]) -> Vec<Rat> {
        let d = self.p.rows();
        let mut full: Vec<Rat> = y.to_vec();
        full.push(self.level.clone());
        (0..d)
            .map(|i| {
                (0..d).fold(Rat::zero(), |acc, k| acc + rat_from_int(&self.p[(k, i)]) * &full[k])
            })
            .collect()
    }

    /// Chart coordinates of a point on the hyperplane.
    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        let d = self.p.rows();
        (0..d - 1)
            .map(|i| {
                (0..d).fold(Rat::zero(), |acc, k| acc + rat_from_int(&self.p_inv_t[(i, k)]) * &x[k])
            })
            .collect()
    }
}

pub fn slice(cone: &Cone, synthesis: &ReebSynthesis, level: &Rat) -> Result<LabeledPolytope, ReebError> {
    slice_with_chart(cone, synthesis, level).map(|(p, _)| p)
}

pub fn slice_with_chart(
    cone: &Cone,
    synthesis: &ReebSynthesis,
    level: &Rat,
) -> Result<(LabeledPolytope, HyperplaneChart), ReebError> {
    if !level.is_positive() {
        return Err(ReebError::EmptySlice);
    }
    synthesis.verify(cone)?;
    let d = cone.dim();
    let chart = HyperplaneChart::new(&synthesis.reeb, level.clone())?;
    let mut facets = Vec::new();
    for v in cone.normals() {
        let u = chart.transform_normal(v);
        let (head, tail) = u.split_at(d - 1);
        if is_zero_vec(head) {
            // only possible for d = 1, where the slice is a point
            continue;
        }
        let g = gcd_all(head);
        let label = facet_label(v, &synthesis.reeb)?;
        facets.push(Facet {
            normal: head.iter().map(|x| x / &g).collect(),
            constant: -(level * rat_from_int(&tail[0])) / rat_from_int(&g),
            label: u64::try_from(label).map_err(|_| ReebError::LabelOverflow)?,
        });
    }
    let polytope = LabeledPolytope::new(d - 1, facets)?;
    Ok((polytope, chart))
}
