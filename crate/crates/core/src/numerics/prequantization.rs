//! Hamiltonian fields lift through the Hopf map `S^{2d−1} → ℂP^{d−1}`.
//!
//! With `h̃ = h ∘ π`, the contact Hamiltonian field of `h̃` for `α_st`
//! projects onto the symplectic Hamiltonian field of `h` for the form `ω`
//! with `π*ω = dα_st`. In the affine chart `wⱼ = z_{j+1}/z₁` that form is
//! `ω = (i/2) ∂∂̄ log(1 + |w|²)`, and the downstairs field solves
//! `ω(X_h, ·) = −dh`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::forms::AlphaSt;
use super::giroux::to_complex;
use super::hamiltonian::hamiltonian_vector_field;
use super::linalg::{directional_derivative, gradient, norm, solve_checked, sup_distance};
use super::manifold::{Manifold, UnitSphere};
use super::sampling::rng;
use super::{NumericsError, ReportParameters, VerificationReport};

/// Samples with `|z₁|` below this are redrawn.
pub const CHART_MARGIN: f64 = 0.2;

/// Affine chart `(z₁, …, z_d) ↦ (z₂/z₁, …, z_d/z₁)` in interleaved reals.
pub fn hopf_chart(p: &[f64]) -> Result<Vec<f64>, NumericsError> {
    let z = to_complex(p);
    if z.is_empty() || z[0].norm() < 1e-8 {
        return Err(NumericsError::ChartSingularity);
    }
    Ok(z[1..].iter().flat_map(|w| {
        let q = w / z[0];
        [q.re, q.im]
    })
    .collect())
}

/// `ω` at the chart point `w` as the matrix `ω(e_a, e_b)` in the real
/// coordinates `(u₁, v₁, …)` with `wⱼ = uⱼ + i vⱼ`.
pub fn fubini_study(w: &[f64]) -> DMatrix<f64> {
    let w = to_complex(w);
    let n = w.len();
    let s = 1.0 + w.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let metric = |j: usize, k: usize| {
        let delta = if j == k { 1.0 / s } else { 0.0 };
        Complex64::new(delta, 0.0) - w[j].conj() * w[k] / (s * s)
    };
    let basis = |a: usize| {
        let mut v = alloc::vec![Complex64::new(0.0, 0.0); n];
        v[a / 2] = if a % 2 == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) };
        v
    };
    DMatrix::from_fn(2 * n, 2 * n, |a, b| {
        let (x, y) = (basis(a), basis(b));
        let mut total = Complex64::new(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                total += metric(j, k) * x[j] * y[k].conj();
            }
        }
        -total.im
    })
}

/// The symplectic Hamiltonian field of `h` at the chart point `w`.
pub fn base_hamiltonian_field<H: Fn(&[f64]) -> f64>(h: &H, w: &[f64], fd_step: f64) -> Result<Vec<f64>, NumericsError> {
    let omega = fubini_study(w);
    let dh = DVector::from_vec(gradient(h, w, fd_step));
    let sol = solve_checked(&omega.transpose(), &(-dh), 1e-10)?;
    Ok(sol.x.iter().copied().collect())
}

/// Compares `dπ(X_{h∘π})` with `X_h ∘ π` at sampled points of `S^{2d−1}`.
///
/// The discrepancy is the sup-norm difference divided by
/// `max(1, ‖X_h‖_∞)`: near the edge of the chart the fields reach the
/// thousands and finite differences only hold relative accuracy there.
/// Passes when the largest discrepancy is below `tolerance`.
pub fn prequantization_lift_check<H: Fn(&[f64]) -> f64>(
    d: usize,
    h: H,
    samples: usize,
    fd_step: f64,
    tolerance: f64,
    seed: u64,
) -> Result<VerificationReport, NumericsError> {
    if d < 2 {
        return Err(NumericsError::InvalidParameter("the base needs d ≥ 2"));
    }
    let sphere = UnitSphere { d };
    let lifted = |q: &[f64]| hopf_chart(q).map(|w| h(&w)).unwrap_or(f64::NAN);
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < samples {
        let p = sphere.sample(&mut rng);
        if libm::hypot(p[0], p[1]) < CHART_MARGIN {
            continue;
        }
        let upstairs = hamiltonian_vector_field(&sphere, &AlphaSt { d }, lifted, &p, fd_step)?;
        // differentiate along the unit direction so the step stays fd_step
        let speed = norm(&upstairs.vector);
        let unit: Vec<f64> = upstairs.vector.iter().map(|x| x / speed.max(f64::MIN_POSITIVE)).collect();
        let (slope, _) = directional_derivative(
            |q| hopf_chart(q).unwrap_or_else(|_| alloc::vec![f64::NAN; 2 * d - 2]),
            &p,
            &unit,
            fd_step,
        );
        let pushed: Vec<f64> = slope.iter().map(|x| x * speed).collect();
        let w = hopf_chart(&p)?;
        let downstairs = base_hamiltonian_field(&h, &w, fd_step)?;
        let scale = downstairs.iter().fold(1.0f64, |m, x| m.max(libm::fabs(*x)));
        worst = worst.max(sup_distance(&pushed, &downstairs) / scale);
        done += 1;
    }
    let params = ReportParameters::new(tolerance, seed).with_fd_step(fd_step);
    Ok(VerificationReport::new(samples, worst, None, params))
}
