//! The contact condition for `β_g = g(h) dθ + ½ (x dy − y dx)` on `S¹ × S^{2d}`:
//! `β_g` is contact iff `E(h) = 2h g(h) + g′(h)(1 − h²)` never vanishes on
//! `[−1, 1]`.

use alloc::vec::Vec;

use super::NumericsError;

/// `E(h) = 2h·g(h) + g′(h)(1 − h²)`.
pub fn contact_expression<G: Fn(f64) -> f64, Gp: Fn(f64) -> f64>(g: &G, g_prime: &Gp, h: f64) -> f64 {
    2.0 * h * g(h) + g_prime(h) * (1.0 - h * h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    Positive,
    Negative,
    /// Some grid value is exactly zero.
    Vanishes,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaGCheck {
    pub intervals: usize,
    pub min_abs: f64,
    pub argmin: f64,
    pub sign: SignPattern,
    pub passed: bool,
    /// `(h, E(h))` over the grid.
    pub series: Vec<(f64, f64)>,
}

/// Evaluates `E` at `hᵢ = −1 + 2i/n` for `i = 0, …, n`. Both endpoints and,
/// for even `n`, the equator `h = 0` are grid points.
pub fn contact_condition_beta_g<G, Gp>(g: G, g_prime: Gp, intervals: usize) -> Result<BetaGCheck, NumericsError>
where
    G: Fn(f64) -> f64,
    Gp: Fn(f64) -> f64,
{
    if intervals == 0 {
        return Err(NumericsError::InvalidParameter("grid needs at least one interval"));
    }
    let series: Vec<(f64, f64)> = (0..=intervals)
        .map(|i| {
            let h = if 2 * i == intervals {
                0.0
            } else {
                -1.0 + 2.0 * i as f64 / intervals as f64
            };
            (h, contact_expression(&g, &g_prime, h))
        })
        .collect();
    let (argmin, min_value) = series
        .iter()
        .map(|&(h, e)| (h, libm::fabs(e)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("grid is nonempty");
    let positive = series.iter().all(|&(_, e)| e > 0.0);
    let negative = series.iter().all(|&(_, e)| e < 0.0);
    let sign = if positive {
        SignPattern::Positive
    } else if negative {
        SignPattern::Negative
    } else if series.iter().any(|&(_, e)| e == 0.0) {
        SignPattern::Vanishes
    } else {
        SignPattern::Mixed
    };
    Ok(BetaGCheck {
        intervals,
        min_abs: min_value,
        argmin,
        passed: positive || negative,
        sign,
        series,
    })
}

/// A `C²` monotone profile `δ_ε` with `δ = −1` on `[−1, −ε]` and `δ(h) = h`
/// on `[0, 1]`, joined by the quintic `−1 + a s³ + b s⁴ + c s⁵` in
/// `s = (h + ε)/ε`. Value, slope and curvature match at both junctions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaProfile {
    pub eps: f64,
    a: f64,
    b: f64,
    c: f64,
}

pub fn delta_profile(eps: f64) -> Result<DeltaProfile, NumericsError> {
    DeltaProfile::new(eps)
}

impl DeltaProfile {
    /// Fails unless `ε ∈ (0, 1)` and the joining quintic is strictly
    /// increasing on the open junction interval.
    pub fn new(eps: f64) -> Result<Self, NumericsError> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(NumericsError::InvalidParameter("ε must lie in (0, 1)"));
        }
        // q(1) = 1, q′(1) = ε, q″(1) = 0 with a triple zero at s = 0
        let a = 10.0 - 4.0 * eps;
        let b = 7.0 * eps - 15.0;
        let c = 6.0 - 3.0 * eps;
        // q′(s) = s²(3a + 4bs + 5cs²); the quadratic factor must stay positive
        let quad = |s: f64| 3.0 * a + 4.0 * b * s + 5.0 * c * s * s;
        let vertex = -2.0 * b / (5.0 * c);
        let mut lowest = quad(0.0).min(quad(1.0));
        if vertex > 0.0 && vertex < 1.0 {
            lowest = lowest.min(quad(vertex));
        }
        if !(lowest > 0.0) {
            return Err(NumericsError::InvalidParameter("quintic junction is not monotone for this ε"));
        }
        Ok(Self { eps, a, b, c })
    }

    pub fn value(&self, h: f64) -> f64 {
        if h <= -self.eps {
            -1.0
        } else if h >= 0.0 {
            h
        } else {
            let s = (h + self.eps) / self.eps;
            -1.0 + s * s * s * (self.a + s * (self.b + s * self.c))
        }
    }

    pub fn derivative(&self, h: f64) -> f64 {
        if h <= -self.eps {
            0.0
        } else if h >= 0.0 {
            1.0
        } else {
            let s = (h + self.eps) / self.eps;
            s * s * (3.0 * self.a + s * (4.0 * self.b + 5.0 * s * self.c)) / self.eps
        }
    }

    /// `g_t = (1 − t) h + t δ_ε` and its derivative.
    pub fn interpolate(&self, t: f64) -> (impl Fn(f64) -> f64 + '_, impl Fn(f64) -> f64 + '_) {
        (
            move |h| (1.0 - t) * h + t * self.value(h),
            move |h| (1.0 - t) + t * self.derivative(h),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_profile() {
        let r = contact_condition_beta_g(|h| h, |_| 1.0, 1000).unwrap();
        assert!(r.passed);
        assert_eq!(r.sign, SignPattern::Positive);
        assert_eq!((r.argmin, r.min_abs), (0.0, 1.0));
        for &(h, e) in &r.series {
            assert!((e - (1.0 + h * h)).abs() < 1e-15);
        }
        assert_eq!(r.series.first().unwrap().0, -1.0);
        assert_eq!(r.series.last().unwrap().0, 1.0);
    }

    #[test]
    fn zero_profile_fails() {
        let r = contact_condition_beta_g(|_| 0.0, |_| 0.0, 10).unwrap();
        assert!(!r.passed);
        assert_eq!(r.sign, SignPattern::Vanishes);
        assert_eq!(r.min_abs, 0.0);
        // E(h) = 2h changes sign; an odd count of intervals skips h = 0
        let r = contact_condition_beta_g(|_| 1.0, |_| 0.0, 9).unwrap();
        assert_eq!(r.sign, SignPattern::Mixed);
        assert!(!r.passed);
    }

    #[test]
    fn delta_profile_matches_its_junctions() {
        let d = delta_profile(0.5).unwrap();
        assert_eq!(d.value(-0.5), -1.0);
        assert_eq!(d.value(0.0), 0.0);
        assert!((d.value(-0.5 + 1e-9) + 1.0).abs() < 1e-12);
        assert!((d.value(-1e-9) + 1e-9).abs() < 1e-15);
        assert!((d.derivative(-1e-9) - 1.0).abs() < 1e-8);
        assert!(d.derivative(-0.5 + 1e-9).abs() < 1e-8);
        let mut last = -1.0;
        for i in 1..1000 {
            let h = -0.5 + 0.5 * i as f64 / 1000.0;
            let v = d.value(h);
            assert!(v > last);
            assert!(d.derivative(h) > 0.0);
            // slope agrees with a difference quotient
            let fd = (d.value(h + 1e-7) - d.value(h - 1e-7)) / 2e-7;
            assert!((fd - d.derivative(h)).abs() < 1e-6);
            last = v;
        }
        assert!(delta_profile(0.0).is_err() && delta_profile(1.0).is_err());
    }

    #[test]
    fn interpolation_family_passes() {
        let d = delta_profile(0.5).unwrap();
        for t in [0.0, 0.5, 1.0] {
            let (g, gp) = d.interpolate(t);
            assert!(contact_condition_beta_g(g, gp, 1000).unwrap().passed);
        }
    }
}
