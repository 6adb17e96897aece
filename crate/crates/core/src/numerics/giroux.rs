//! The Giroux isotopy of the unit ball
//!
//! `τ_t(z) = (sinh t + z₁ cosh t, z₂, …, z_d) / (cosh t + z₁ sinh t)`
//!
//! and the time after which it displaces a toric fiber of the sphere.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::contacto::AmbientMap;
use super::linalg::sup_distance;
use super::sampling::{angle, rng, sphere_point};
use super::{NumericsError, ReportParameters, VerificationReport};

fn check_time(t: f64) -> Result<(), NumericsError> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(NumericsError::InvalidParameter("time must be finite and nonnegative"))
    }
}

/// `τ_t(z)`, overflow-free for every finite `t`.
///
/// Numerator and denominator are divided by `cosh t`. The quantity
/// `1 + z₁ tanh t` is evaluated as `(1 + z₁) − z₁ (1 − tanh t)` with the
/// complement computed directly, which keeps it accurate when `z₁ → −1`.
pub fn giroux_map(t: f64, z: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
    check_time(t)?;
    let len = libm::sqrt(z.iter().map(|w| w.norm_sqr()).sum::<f64>());
    if len > 1.0 + 1e-12 {
        return Err(NumericsError::OutOfBall(len));
    }
    Ok(evaluate(t, z))
}

fn evaluate(t: f64, z: &[Complex64]) -> Vec<Complex64> {
    if z.is_empty() || t == 0.0 {
        return z.to_vec();
    }
    let complement = 2.0 / (1.0 + libm::exp(2.0 * t));
    let sech = 1.0 / libm::cosh(t);
    let z1 = z[0];
    let denominator = (1.0 + z1) - z1 * complement;
    let mut out = Vec::with_capacity(z.len());
    out.push(((1.0 + z1) - complement) / denominator);
    out.extend(z[1..].iter().map(|w| w * sech / denominator));
    out
}

pub(crate) fn to_complex(p: &[f64]) -> Vec<Complex64> {
    p.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

pub(crate) fn to_real(z: &[Complex64]) -> Vec<f64> {
    z.iter().flat_map(|w| [w.re, w.im]).collect()
}

/// `τ_t` acting on interleaved real coordinates. Defined on the open
/// region where `cosh t + z₁ sinh t ≠ 0`, which contains the closed ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GirouxMap {
    pub t: f64,
}

impl AmbientMap for GirouxMap {
    fn apply(&self, p: &[f64]) -> Vec<f64> {
        to_real(&evaluate(self.t, &to_complex(p)))
    }
}

/// `T(c₁) = ½ (ln 2 + ln((c₁² + 1)/(c₁ − 1)²))`.
pub fn min_displacement_time(c1: f64) -> Result<f64, NumericsError> {
    if !(c1 > 0.0 && c1 < 1.0) {
        return Err(NumericsError::DegenerateLevel(c1));
    }
    Ok(0.5 * (core::f64::consts::LN_2 + libm::log((c1 * c1 + 1.0) / ((c1 - 1.0) * (c1 - 1.0)))))
}

/// `f_t(−c₁) = e^{2t}(c₁−1)²/4 + e^{−2t}(c₁+1)²/4 − (1 + c₁²)/2`.
pub fn displacement_criterion(c1: f64, t: f64) -> f64 {
    let (up, down) = (libm::exp(2.0 * t), libm::exp(-2.0 * t));
    up * (c1 - 1.0) * (c1 - 1.0) / 4.0 + down * (c1 + 1.0) * (c1 + 1.0) / 4.0 - (1.0 + c1 * c1) / 2.0
}

/// The same value as `cosh²t − 2c₁ cosh t sinh t + c₁² sinh²t − 1`.
pub fn displacement_criterion_quadratic(c1: f64, t: f64) -> f64 {
    let (ch, sh) = (libm::cosh(t), libm::sinh(t));
    ch * ch - 2.0 * c1 * ch * sh + c1 * c1 * sh * sh - 1.0
}

/// Outcome of [`verify_fiber_displaced`]: the sampled report plus the
/// closed-form certificate it is combined with.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberDisplacement {
    pub report: VerificationReport,
    pub time_bound: f64,
    pub criterion: f64,
}

/// Samples the fiber `{|zⱼ| = cⱼ}` and checks that `τ_t` moves every sample
/// off it by more than `margin_floor` in some `||zⱼ| − cⱼ|`.
///
/// Passes iff the sampled margins clear the floor and `f_t(−c₁) > 0`.
pub fn verify_fiber_displaced(
    moduli: &[f64],
    t: f64,
    samples: usize,
    seed: u64,
    margin_floor: f64,
) -> Result<FiberDisplacement, NumericsError> {
    check_time(t)?;
    if moduli.len() < 2 {
        return Err(NumericsError::DimensionTooSmall);
    }
    if let Some(&c) = moduli.iter().find(|&&c| !(c > 0.0 && c < 1.0)) {
        return Err(NumericsError::DegenerateLevel(c));
    }
    let residual = libm::fabs(moduli.iter().map(|c| c * c).sum::<f64>() - 1.0);
    if residual > super::ON_MANIFOLD_TOL {
        return Err(NumericsError::OffManifold(residual));
    }
    let time_bound = min_displacement_time(moduli[0])?;
    let criterion = displacement_criterion(moduli[0], t);

    let mut rng = rng(seed);
    let mut min_margin = f64::INFINITY;
    let mut max_residual: f64 = 0.0;
    for _ in 0..samples {
        let z: Vec<Complex64> = moduli.iter().map(|&c| Complex64::from_polar(c, angle(&mut rng))).collect();
        let w = giroux_map(t, &z)?;
        let margin = w
            .iter()
            .zip(moduli)
            .map(|(w, c)| libm::fabs(w.norm() - c))
            .fold(0.0, f64::max);
        min_margin = min_margin.min(margin);
        max_residual = max_residual.max(libm::fabs(w.iter().map(|w| w.norm_sqr()).sum::<f64>() - 1.0));
    }
    let params = ReportParameters::new(1e-12, seed).with_margin_floor(margin_floor);
    let mut report = VerificationReport::new(samples, max_residual, Some(min_margin), params);
    report.passed &= criterion > 0.0;
    Ok(FiberDisplacement {
        report,
        time_bound,
        criterion,
    })
}

/// `‖τ_s(τ_t(z)) − τ_{s+t}(z)‖_∞`.
pub fn group_law_residual(s: f64, t: f64, z: &[Complex64]) -> Result<f64, NumericsError> {
    let composed = giroux_map(s, &giroux_map(t, z)?)?;
    let direct = giroux_map(s + t, z)?;
    Ok(sup_distance(&to_real(&composed), &to_real(&direct)))
}

/// Group law on random points of `S^{2d−1}`; tolerance `1e−9`.
pub fn giroux_group_law_check(
    s: f64,
    t: f64,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport, NumericsError> {
    check_time(s)?;
    check_time(t)?;
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = to_complex(&sphere_point(&mut rng, 2 * d));
        worst = worst.max(group_law_residual(s, t, &z)?);
    }
    Ok(VerificationReport::new(samples, worst, None, ReportParameters::new(1e-9, seed)))
}
