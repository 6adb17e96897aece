//! Sampled check that a map pulls a contact form back to a positive
//! multiple of itself on the tangent spaces of a manifold.

use alloc::vec::Vec;

use super::forms::ContactForm;
use super::linalg::{directional_derivative, dot};
use super::manifold::Manifold;
use super::sampling::rng;
use super::{NumericsError, ReportParameters, VerificationReport};

/// A smooth map of the ambient space, defined near the manifold.
pub trait AmbientMap {
    fn apply(&self, p: &[f64]) -> Vec<f64>;
}

impl<F: Fn(&[f64]) -> Vec<f64>> AmbientMap for F {
    fn apply(&self, p: &[f64]) -> Vec<f64> {
        self(p)
    }
}

/// The identity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Identity;

impl AmbientMap for Identity {
    fn apply(&self, p: &[f64]) -> Vec<f64> {
        p.to_vec()
    }
}

/// `z₁ ↦ z̄₁`, other coordinates fixed. It preserves the sphere but reverses
/// the sign of the first Liouville term, so it is no contactomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjugateFirst;

impl AmbientMap for ConjugateFirst {
    fn apply(&self, p: &[f64]) -> Vec<f64> {
        let mut q = p.to_vec();
        q[1] = -q[1];
        q
    }
}

/// Pullback proportionality check.
///
/// At each sample `p` with tangent frame `u₁, …, u_m`, compares
/// `Aᵢ = α_{φ(p)}(Dφ·uᵢ)` with `Bᵢ = α_p(uᵢ)`. The residual is
/// `‖A − λB‖ / ‖A‖` with `λ = A·B / B·B`, and the margin is the smallest
/// conformal factor `λ`. Passes iff residuals stay below `tolerance` and
/// every factor is positive.
pub fn verify_contactomorphism<M, F, A>(
    manifold: &M,
    map: &A,
    form: &F,
    samples: usize,
    fd_step: f64,
    tolerance: f64,
    seed: u64,
) -> Result<VerificationReport, NumericsError>
where
    M: Manifold + ?Sized,
    F: ContactForm + ?Sized,
    A: AmbientMap + ?Sized,
{
    if !(fd_step > 0.0) {
        return Err(NumericsError::InvalidParameter("fd_step must be positive"));
    }
    let mut rng = rng(seed);
    let mut max_residual: f64 = 0.0;
    let mut min_factor = f64::INFINITY;
    for _ in 0..samples {
        let p = manifold.sample(&mut rng);
        let image = map.apply(&p);
        manifold.check(&image, 1e-9)?;
        let frame = manifold.tangent_frame(&p)?;
        let (here, there) = (form.eval(&p), form.eval(&image));
        let mut a = Vec::with_capacity(frame.ncols());
        let mut b = Vec::with_capacity(frame.ncols());
        for col in frame.column_iter() {
            let u: Vec<f64> = col.iter().copied().collect();
            let (pushed, realized) = directional_derivative(|q| map.apply(q), &p, &u, fd_step);
            a.push(dot(&there, &pushed));
            b.push(dot(&here, &realized));
        }
        let factor = dot(&a, &b) / dot(&b, &b);
        let off: f64 = a.iter().zip(&b).map(|(x, y)| (x - factor * y) * (x - factor * y)).sum();
        let scale = libm::sqrt(dot(&a, &a)).max(f64::MIN_POSITIVE);
        max_residual = max_residual.max(libm::sqrt(off) / scale);
        min_factor = min_factor.min(factor);
    }
    let params = ReportParameters::new(tolerance, seed).with_fd_step(fd_step);
    Ok(VerificationReport::new(samples, max_residual, Some(min_factor), params))
}
