//! Fixed-step RK4 with projection back onto the manifold after every step.

use alloc::vec::Vec;

use super::linalg::{axpy, norm};
use super::manifold::Manifold;
use super::NumericsError;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub point: Vec<f64>,
    /// Largest constraint residual seen before a projection.
    pub max_drift: f64,
    pub steps: usize,
}

/// Integrates `field` from `p` for time `t_end`, using `⌈t_end / dt⌉` equal
/// steps so the final time is hit exactly.
///
/// Without a manifold the plain RK4 iterate is returned. Fails with
/// `BlowUp` once `|p|` exceeds ten times `max(1, |p₀|)`.
pub fn flow<V>(
    field: V,
    manifold: Option<&dyn Manifold>,
    p: &[f64],
    t_end: f64,
    dt: f64,
) -> Result<FlowResult, NumericsError>
where
    V: Fn(&[f64]) -> Result<Vec<f64>, NumericsError>,
{
    if !(dt > 0.0) || !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(NumericsError::InvalidParameter("need dt > 0 and a finite t_end ≥ 0"));
    }
    let steps = libm::ceil(t_end / dt - 1e-9).max(0.0) as usize;
    let h = if steps == 0 { 0.0 } else { t_end / steps as f64 };
    let bound = 10.0 * norm(p).max(1.0);
    let mut q = p.to_vec();
    let mut max_drift: f64 = 0.0;
    for step in 0..steps {
        let k1 = field(&q)?;
        let k2 = field(&axpy(&q, h / 2.0, &k1))?;
        let k3 = field(&axpy(&q, h / 2.0, &k2))?;
        let k4 = field(&axpy(&q, h, &k3))?;
        for i in 0..q.len() {
            q[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !(norm(&q) <= bound) {
            return Err(NumericsError::BlowUp((step + 1) as f64 * h));
        }
        if let Some(m) = manifold {
            max_drift = max_drift.max(libm::fabs(m.constraint(&q)));
            q = m.project(&q);
        }
    }
    Ok(FlowResult {
        point: q,
        max_drift,
        steps,
    })
}
