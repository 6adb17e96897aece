//! Embedded manifolds cut out by one constraint `c(p) = 0`.

use alloc::vec::Vec;

use super::linalg::{norm, tangent_frame};
use super::sampling::{sphere_point, SampleRng};
use super::NumericsError;
use nalgebra::DMatrix;
use rand::Rng;

pub trait Manifold {
    fn ambient_dim(&self) -> usize;
    fn constraint(&self, p: &[f64]) -> f64;
    fn gradient(&self, p: &[f64]) -> Vec<f64>;
    /// Nearest-point style retraction back onto the manifold.
    fn project(&self, p: &[f64]) -> Vec<f64>;
    fn sample(&self, rng: &mut SampleRng) -> Vec<f64>;

    fn check(&self, p: &[f64], tol: f64) -> Result<(), NumericsError> {
        if p.len() != self.ambient_dim() {
            return Err(NumericsError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.len(),
            });
        }
        let r = libm::fabs(self.constraint(p));
        if r > tol {
            return Err(NumericsError::OffManifold(r));
        }
        Ok(())
    }

    fn tangent_frame(&self, p: &[f64]) -> Result<DMatrix<f64>, NumericsError> {
        tangent_frame(&self.gradient(p))
    }
}

/// `S^{2d−1} ⊂ ℂᵈ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitSphere {
    pub d: usize,
}

impl Manifold for UnitSphere {
    fn ambient_dim(&self) -> usize {
        2 * self.d
    }

    fn constraint(&self, p: &[f64]) -> f64 {
        p.iter().map(|x| x * x).sum::<f64>() - 1.0
    }

    fn gradient(&self, p: &[f64]) -> Vec<f64> {
        p.iter().map(|x| 2.0 * x).collect()
    }

    fn project(&self, p: &[f64]) -> Vec<f64> {
        let n = norm(p);
        p.iter().map(|x| x / n).collect()
    }

    fn sample(&self, rng: &mut SampleRng) -> Vec<f64> {
        sphere_point(rng, 2 * self.d)
    }
}

/// `S¹ × S^{2d} ⊂ (ℝ/ℤ) × ℂᵈ × ℝ` with coordinates `(θ, x₁, y₁, …, x_d, y_d, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductSphere {
    pub d: usize,
}

impl Manifold for ProductSphere {
    fn ambient_dim(&self) -> usize {
        2 * self.d + 2
    }

    fn constraint(&self, p: &[f64]) -> f64 {
        p[1..].iter().map(|x| x * x).sum::<f64>() - 1.0
    }

    fn gradient(&self, p: &[f64]) -> Vec<f64> {
        let mut g: Vec<f64> = p.iter().map(|x| 2.0 * x).collect();
        g[0] = 0.0;
        g
    }

    fn project(&self, p: &[f64]) -> Vec<f64> {
        let n = norm(&p[1..]);
        let mut q: Vec<f64> = p.iter().map(|x| x / n).collect();
        q[0] = p[0];
        q
    }

    fn sample(&self, rng: &mut SampleRng) -> Vec<f64> {
        let mut p = alloc::vec![rng.random_range(0.0..1.0)];
        p.extend(sphere_point(rng, 2 * self.d + 1));
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::sampling::rng;

    #[test]
    fn samples_lie_on_the_manifolds() {
        let mut r = rng(1);
        let s = UnitSphere { d: 3 };
        let p = s.sample(&mut r);
        s.check(&p, 1e-14).unwrap();
        let m = ProductSphere { d: 2 };
        let q = m.sample(&mut r);
        m.check(&q, 1e-14).unwrap();
        assert_eq!(m.tangent_frame(&q).unwrap().ncols(), 5);
        assert!(matches!(s.check(&[2.0; 6], 1e-12), Err(NumericsError::OffManifold(_))));
        let back = m.project(&[0.25, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(back, [0.25, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }
}
