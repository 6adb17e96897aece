//! Contact forms as covector fields on the ambient space.

use alloc::vec::Vec;

use nalgebra::DMatrix;

/// A 1-form on `ℝⁿ`, restricted to a manifold by the caller.
pub trait ContactForm {
    fn ambient_dim(&self) -> usize;
    fn eval(&self, p: &[f64]) -> Vec<f64>;

    /// `dα` as the antisymmetric matrix `∂ᵢαⱼ − ∂ⱼαᵢ`, by central differences
    /// unless overridden.
    fn differential(&self, p: &[f64], step: f64) -> DMatrix<f64> {
        let n = self.ambient_dim();
        let mut jac = DMatrix::zeros(n, n);
        let mut q = p.to_vec();
        for i in 0..n {
            q[i] = p[i] + step;
            let up = self.eval(&q);
            q[i] = p[i] - step;
            let down = self.eval(&q);
            q[i] = p[i];
            for j in 0..n {
                jac[(i, j)] = (up[j] - down[j]) / (2.0 * step);
            }
        }
        &jac - jac.transpose()
    }
}

fn liouville(coords: &[f64], out: &mut [f64]) {
    for j in 0..coords.len() / 2 {
        out[2 * j] = -coords[2 * j + 1] / 2.0;
        out[2 * j + 1] = coords[2 * j] / 2.0;
    }
}

fn liouville_differential(m: &mut DMatrix<f64>, offset: usize, pairs: usize) {
    for j in 0..pairs {
        let (x, y) = (offset + 2 * j, offset + 2 * j + 1);
        m[(x, y)] = 1.0;
        m[(y, x)] = -1.0;
    }
}

/// `α_st = ½ Σ (xⱼ dyⱼ − yⱼ dxⱼ)` on ℂᵈ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaSt {
    pub d: usize,
}

impl ContactForm for AlphaSt {
    fn ambient_dim(&self) -> usize {
        2 * self.d
    }

    fn eval(&self, p: &[f64]) -> Vec<f64> {
        let mut out = alloc::vec![0.0; p.len()];
        liouville(p, &mut out);
        out
    }

    fn differential(&self, _p: &[f64], _step: f64) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(2 * self.d, 2 * self.d);
        liouville_differential(&mut m, 0, self.d);
        m
    }
}

/// `β_g = g(h) dθ + ½ (x dy − y dx)` on `(θ, x₁, y₁, …, h)`. With `g(h) = h`
/// this is the standard form on `S¹ × S^{2d}`.
#[derive(Clone, Copy)]
pub struct BetaG<G, Gp> {
    pub d: usize,
    pub g: G,
    pub g_prime: Gp,
}

impl<G: Fn(f64) -> f64, Gp: Fn(f64) -> f64> ContactForm for BetaG<G, Gp> {
    fn ambient_dim(&self) -> usize {
        2 * self.d + 2
    }

    fn eval(&self, p: &[f64]) -> Vec<f64> {
        let n = self.ambient_dim();
        let mut out = alloc::vec![0.0; n];
        out[0] = (self.g)(p[n - 1]);
        liouville(&p[1..n - 1], &mut out[1..n - 1]);
        out
    }

    fn differential(&self, p: &[f64], _step: f64) -> DMatrix<f64> {
        let n = self.ambient_dim();
        let mut m = DMatrix::zeros(n, n);
        liouville_differential(&mut m, 1, self.d);
        let gp = (self.g_prime)(p[n - 1]);
        m[(n - 1, 0)] = gp;
        m[(0, n - 1)] = -gp;
        m
    }
}

/// The form on `Tᵏ × S^{2d+k−1}` with coordinates
/// `(θ₁, …, θ_k, x₁, y₁, …, x_d, y_d, w₁, …, w_k)`: each linear coordinate
/// `wᵢ` pairs with `dθᵢ`, plus the Liouville part on the `zⱼ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BetaK {
    pub k: usize,
    pub d: usize,
}

impl ContactForm for BetaK {
    fn ambient_dim(&self) -> usize {
        2 * self.k + 2 * self.d
    }

    fn eval(&self, p: &[f64]) -> Vec<f64> {
        let (k, d) = (self.k, self.d);
        let mut out = alloc::vec![0.0; p.len()];
        out[..k].copy_from_slice(&p[k + 2 * d..]);
        liouville(&p[k..k + 2 * d], &mut out[k..k + 2 * d]);
        out
    }
}

/// `Σ xᵢ dθᵢ` on `Tᵈ × S^{d−1}` with coordinates `(θ₁, …, θ_d, x₁, …, x_d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosphereForm {
    pub d: usize,
}

impl ContactForm for CosphereForm {
    fn ambient_dim(&self) -> usize {
        2 * self.d
    }

    fn eval(&self, p: &[f64]) -> Vec<f64> {
        let mut out = alloc::vec![0.0; p.len()];
        out[..self.d].copy_from_slice(&p[self.d..]);
        out
    }
}
