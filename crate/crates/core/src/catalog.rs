//! The explicit toric contact manifolds, their fibers and moment data, and
//! the engine that decides which fibers are certifiably displaceable.
//!
//! Fibers are stored exactly. `moduli_sq` holds the constants `cⱼ²` of the
//! conditions `|zⱼ| = cⱼ`; `linear` holds the remaining moment coordinates
//! (`h`, the `(p, q, c)` block, or the point of `S^{d−1}`). A fiber must
//! satisfy `Σ cⱼ² + Σ linear² = 1` exactly.
//!
//! Two coordinate orders appear. Moment values list `moduli_sq` first and
//! `linear` last. Moment cones put the linear coordinates first, so their
//! lineality space is spanned by the leading unit vectors;
//! [`Fiber::cone_point`] converts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{unit, Cone};
use crate::numerics::{displacement_criterion, min_displacement_time};
use crate::polytope::LabeledPolytope;
use crate::probes::{find_probe, verify_witness, ProbeWitness};
use crate::rational::{rat, to_f64, Rat};

/// Search radius used when looking for probes on a lens space's base.
pub const PROBE_RADIUS: u32 = 3;
/// Slack added to the Giroux time bound for a concrete witness time.
pub const GIROUX_TIME_SLACK: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid manifold: {0}")]
    InvalidSpec(String),
    #[error("fiber invariant violated: {0}")]
    InvariantViolation(String),
    #[error("point is off the manifold (constraint residual {0})")]
    OffManifold(String),
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{inner} is not a contact reduction of {outer}")]
    NotAReductionPair { inner: ManifoldSpec, outer: ManifoldSpec },
    #[error("fiber does not lie on the reduction level")]
    NotOnReductionLevel,
    #[error("point is not a unit vector")]
    NotUnitVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ManifoldSpec {
    /// `S^{2d−1}` with the standard form.
    Sphere { d: usize },
    /// `S^{2d−1}/ℤ_p`, prequantizing a multiple of `ℂP^{d−1}`.
    Lens { d: usize, p: u64 },
    /// `S¹ × S^{2d}` with `β = h dθ + ½(x dy − y dx)`.
    ProductS1S2d { d: usize },
    /// `Tᵏ × S^{2d+k−1}`.
    TkSphere { k: usize, d: usize },
    /// `Tᵈ × S^{d−1}`, the unit cosphere bundle of the torus.
    CosphereTorus { d: usize },
}

impl ManifoldSpec {
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |m: &str| Err(CatalogError::InvalidSpec(String::from(m)));
        match *self {
            Self::Sphere { d } | Self::ProductS1S2d { d } if d == 0 => bad("d must be at least 1"),
            Self::Lens { d, p } if d == 0 || p == 0 => bad("lens needs d ≥ 1 and p ≥ 1"),
            Self::TkSphere { k, d } if k == 0 || d == 0 => bad("need k ≥ 1 and d ≥ 1"),
            Self::CosphereTorus { d } if d < 2 => bad("cosphere bundle needs d ≥ 2"),
            _ => Ok(()),
        }
    }

    pub fn torus_rank(&self) -> usize {
        match *self {
            Self::Sphere { d } | Self::Lens { d, .. } | Self::CosphereTorus { d } => d,
            Self::ProductS1S2d { d } => d + 1,
            Self::TkSphere { k, d } => d + k,
        }
    }

    /// `(number of moduli, number of linear coordinates)` of a fiber.
    pub fn fiber_shape(&self) -> (usize, usize) {
        match *self {
            Self::Sphere { d } | Self::Lens { d, .. } => (d, 0),
            Self::ProductS1S2d { d } => (d, 1),
            Self::TkSphere { k, d } => (d, k),
            Self::CosphereTorus { d } => (0, d),
        }
    }

    /// Real dimension of the ambient space of the standard embedding.
    ///
    /// Layouts: sphere and lens `(x₁, y₁, …, x_d, y_d)`; product
    /// `(θ, x₁, y₁, …, h)`; `Tᵏ × S` as `(θ₁…θ_k, x₁, y₁, …, w₁…w_k)`;
    /// cosphere `(θ₁…θ_d, x₁…x_d)`.
    pub fn ambient_dim(&self) -> usize {
        match *self {
            Self::Sphere { d } | Self::Lens { d, .. } => 2 * d,
            Self::ProductS1S2d { d } => 2 * d + 2,
            Self::TkSphere { k, d } => 2 * k + 2 * d,
            Self::CosphereTorus { d } => 2 * d,
        }
    }

    /// `(k, d)` for the family `Tᵏ × S^{2d+k−1}`, with the sphere as `k = 0`
    /// and the product as `k = 1`.
    fn torus_family(&self) -> Option<(usize, usize)> {
        match *self {
            Self::Sphere { d } => Some((0, d)),
            Self::ProductS1S2d { d } => Some((1, d)),
            Self::TkSphere { k, d } => Some((k, d)),
            _ => None,
        }
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Sphere { d } => write!(f, "sphere:{d}"),
            Self::Lens { d, p } => write!(f, "lens:{d}:{p}"),
            Self::ProductS1S2d { d } => write!(f, "product:{d}"),
            Self::TkSphere { k, d } => write!(f, "tk:{k}:{d}"),
            Self::CosphereTorus { d } => write!(f, "cosphere:{d}"),
        }
    }
}

impl FromStr for ManifoldSpec {
    type Err = CatalogError;

    /// Parses the [`Display`](fmt::Display) form, e.g. `sphere:3` or `tk:2:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CatalogError::InvalidSpec(format!("cannot parse `{s}`; expected e.g. sphere:3, lens:3:2, product:2, tk:2:3, cosphere:3"));
        let mut parts = s.split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let nums: Vec<u64> = parts.map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let spec = match (kind.trim(), nums.as_slice()) {
            ("sphere", [d]) => Self::Sphere { d: *d as usize },
            ("lens", [d, p]) => Self::Lens { d: *d as usize, p: *p },
            ("product", [d]) => Self::ProductS1S2d { d: *d as usize },
            ("tk", [k, d]) => Self::TkSphere { k: *k as usize, d: *d as usize },
            ("cosphere", [d]) => Self::CosphereTorus { d: *d as usize },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A moment value `π · coefficient`, with `π` kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaled<T> {
    pub coefficient: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    spec: ManifoldSpec,
    moduli_sq: Vec<Rat>,
    linear: Vec<Rat>,
}

impl Fiber {
    pub fn new(spec: ManifoldSpec, moduli_sq: Vec<Rat>, linear: Vec<Rat>) -> Result<Self, CatalogError> {
        spec.validate()?;
        let violation = |m: String| Err(CatalogError::InvariantViolation(m));
        let (nm, nl) = spec.fiber_shape();
        if moduli_sq.len() != nm || linear.len() != nl {
            return violation(format!(
                "{spec} fibers need {nm} squared moduli and {nl} linear coordinates, got {} and {}",
                moduli_sq.len(),
                linear.len()
            ));
        }
        if let Some(c) = moduli_sq.iter().find(|c| !c.is_positive() || **c >= Rat::one()) {
            return violation(format!("squared modulus {c} is outside (0, 1)"));
        }
        let total: Rat = moduli_sq.iter().cloned().sum::<Rat>() + linear.iter().map(|x| x * x).sum::<Rat>();
        if !total.is_one() {
            return violation(format!("levels sum to {total}, not 1"));
        }
        Ok(Self { spec, moduli_sq, linear })
    }

    pub fn spec(&self) -> ManifoldSpec {
        self.spec
    }

    pub fn moduli_sq(&self) -> &[Rat] {
        &self.moduli_sq
    }

    pub fn linear(&self) -> &[Rat] {
        &self.linear
    }

    /// The exact moment value of the fiber, in moment order.
    pub fn moment(&self) -> PiScaled<Vec<Rat>> {
        PiScaled {
            coefficient: self.moduli_sq.iter().chain(&self.linear).cloned().collect(),
        }
    }

    /// The moment value divided by `π`, in cone coordinates.
    pub fn cone_point(&self) -> Vec<Rat> {
        self.linear.iter().chain(&self.moduli_sq).cloned().collect()
    }
}

fn check_len(point: &[f64], expected: usize) -> Result<(), CatalogError> {
    if point.len() != expected {
        return Err(CatalogError::DimensionMismatch {
            expected,
            found: point.len(),
        });
    }
    Ok(())
}

fn squares(z: &[f64]) -> Vec<f64> {
    z.chunks(2).map(|c| c[0] * c[0] + c[1] * c[1]).collect()
}

/// The moment map at an ambient point (layouts in
/// [`ManifoldSpec::ambient_dim`]), as `π · (|z₁|², …, |z_d|², linear…)`.
/// Lens points are given by a representative on the sphere.
pub fn moment_map(spec: ManifoldSpec, point: &[f64]) -> Result<PiScaled<Vec<f64>>, CatalogError> {
    spec.validate()?;
    check_len(point, spec.ambient_dim())?;
    let (coefficient, spherical): (Vec<f64>, &[f64]) = match spec {
        ManifoldSpec::Sphere { .. } | ManifoldSpec::Lens { .. } => (squares(point), point),
        ManifoldSpec::ProductS1S2d { d } => {
            let mut m = squares(&point[1..1 + 2 * d]);
            m.push(point[2 * d + 1]);
            (m, &point[1..])
        }
        ManifoldSpec::TkSphere { k, d } => {
            let mut m = squares(&point[k..k + 2 * d]);
            m.extend_from_slice(&point[k + 2 * d..]);
            (m, &point[k..])
        }
        ManifoldSpec::CosphereTorus { d } => (point[d..].to_vec(), &point[d..]),
    };
    let residual = libm::fabs(spherical.iter().map(|x| x * x).sum::<f64>() - 1.0);
    if residual > crate::numerics::ON_MANIFOLD_TOL {
        return Err(CatalogError::OffManifold(format!("{residual:e}")));
    }
    Ok(PiScaled { coefficient })
}

/// The torus action. `angles[i]` (in turns) acts on the coordinate whose
/// moment component is the `i`-th one: it rotates `zᵢ` for the moduli and
/// shifts the matching angle for the linear coordinates.
pub fn torus_act(spec: ManifoldSpec, angles: &[f64], point: &[f64]) -> Result<Vec<f64>, CatalogError> {
    check_len(angles, spec.torus_rank())?;
    check_len(point, spec.ambient_dim())?;
    let mut out = point.to_vec();
    let rotate = |out: &mut [f64], offset: usize, turns: &[f64]| {
        for (j, a) in turns.iter().enumerate() {
            let (s, c) = libm::sincos(core::f64::consts::TAU * a);
            let (x, y) = (out[offset + 2 * j], out[offset + 2 * j + 1]);
            out[offset + 2 * j] = c * x - s * y;
            out[offset + 2 * j + 1] = s * x + c * y;
        }
    };
    match spec {
        ManifoldSpec::Sphere { .. } | ManifoldSpec::Lens { .. } => rotate(&mut out, 0, angles),
        ManifoldSpec::ProductS1S2d { d } => {
            rotate(&mut out, 1, &angles[..d]);
            out[0] += angles[d];
        }
        ManifoldSpec::TkSphere { k, d } => {
            rotate(&mut out, k, &angles[..d]);
            for i in 0..k {
                out[i] += angles[d + i];
            }
        }
        ManifoldSpec::CosphereTorus { d } => {
            for i in 0..d {
                out[i] += angles[i];
            }
        }
    }
    Ok(out)
}

/// The moment cone, in cone coordinates (linear coordinates first).
pub fn moment_cone(spec: ManifoldSpec) -> Result<Cone, CatalogError> {
    spec.validate()?;
    let (nm, nl) = spec.fiber_shape();
    let dim = nm + nl;
    let normals = (nl..dim).map(|i| unit(dim, i)).collect();
    Ok(Cone::new(dim, normals).expect("unit normals form a valid cone"))
}

/// Contact reduction by the last circle: `inner` must be the reduced
/// manifold of `outer`. The lift keeps every level and puts the new
/// linear coordinate on the reduction level `0`.
pub fn reduction_lift(inner: &Fiber, outer: ManifoldSpec) -> Result<Fiber, CatalogError> {
    outer.validate()?;
    let pair_ok = match (inner.spec.torus_family(), outer.torus_family()) {
        (Some((ki, di)), Some((ko, d_o))) => di == d_o && ko == ki + 1,
        _ => false,
    };
    if !pair_ok {
        return Err(CatalogError::NotAReductionPair {
            inner: inner.spec,
            outer,
        });
    }
    let mut linear = inner.linear.clone();
    linear.push(Rat::zero());
    Fiber::new(outer, inner.moduli_sq.clone(), linear)
}

/// Inverse of [`reduction_lift`]: the reduced fiber of a fiber on the
/// reduction level. `Tᵏ × S` reduces to `T^{k−1} × S`, the product and
/// `T¹ × S` to the sphere.
pub fn reduction_project(outer: &Fiber) -> Result<Fiber, CatalogError> {
    let inner_spec = match outer.spec {
        ManifoldSpec::ProductS1S2d { d } | ManifoldSpec::TkSphere { k: 1, d } => ManifoldSpec::Sphere { d },
        ManifoldSpec::TkSphere { k, d } => ManifoldSpec::TkSphere { k: k - 1, d },
        other => {
            return Err(CatalogError::NotAReductionPair {
                inner: other,
                outer: other,
            })
        }
    };
    let (last, rest) = outer.linear.split_last().expect("reducible fibers have linear coordinates");
    if !last.is_zero() {
        return Err(CatalogError::NotOnReductionLevel);
    }
    Fiber::new(inner_spec, outer.moduli_sq.clone(), rest.to_vec())
}

/// The fiber `Tᵈ × {p}` of the cosphere bundle, which is the graph of the
/// closed 1-form `Σ pᵢ dθᵢ`; returns the fiber and the form's coefficients.
pub fn graph_identification(d: usize, p: Vec<Rat>) -> Result<(Fiber, Vec<Rat>), CatalogError> {
    let spec = ManifoldSpec::CosphereTorus { d };
    spec.validate()?;
    check_len_rat(&p, d)?;
    if !p.iter().map(|x| x * x).sum::<Rat>().is_one() {
        return Err(CatalogError::NotUnitVector);
    }
    let fiber = Fiber::new(spec, Vec::new(), p.clone())?;
    Ok((fiber, p))
}

fn check_len_rat(p: &[Rat], expected: usize) -> Result<(), CatalogError> {
    if p.len() != expected {
        return Err(CatalogError::DimensionMismatch {
            expected,
            found: p.len(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Displaceable,
    NonDisplaceable,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    GirouxIsotopy,
    ReductionLift,
    PrequantizationLift,
    GraphOfClosedForm,
}

/// One link of a verdict's justification, read from the classified fiber
/// inwards.
#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    /// The current fiber is the lift of `inner` from the reduced manifold.
    ReductionLift { inner: Fiber },
    /// The Giroux isotopy at `time` displaces the sphere fiber with
    /// `c₁² = level`, since `time > time_bound` and `f_t(−c₁) = criterion > 0`.
    GirouxBound {
        level: Rat,
        time_bound: f64,
        time: f64,
        criterion: f64,
    },
    /// The lens fiber lies over `base_point` of the projective base's
    /// moment simplex.
    PrequantizationLift { base_point: Vec<Rat> },
    /// A probe in the standard simplex displacing the base fiber.
    Probe { point: Vec<Rat>, witness: ProbeWitness },
    /// The fiber is the graph of `Σ formᵢ dθᵢ` in the cosphere bundle of
    /// the torus; such fibers are non-displaceable.
    ClosedFormGraph { form: Vec<Rat> },
    /// Why no verdict could be certified.
    Unquantified { reason: &'static str },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub method: Option<Method>,
    pub provenance: Vec<Evidence>,
}

impl Verdict {
    fn unknown(reason: &'static str) -> Self {
        Self {
            status: VerdictStatus::Unknown,
            method: None,
            provenance: alloc::vec![Evidence::Unquantified { reason }],
        }
    }

    fn lifted(inner: Fiber, verdict: Verdict) -> Self {
        if verdict.status != VerdictStatus::Displaceable {
            return verdict;
        }
        let mut provenance = alloc::vec![Evidence::ReductionLift { inner }];
        provenance.extend(verdict.provenance);
        Self {
            status: VerdictStatus::Displaceable,
            method: Some(Method::ReductionLift),
            provenance,
        }
    }
}

fn giroux_evidence(level: &Rat) -> Evidence {
    let c1 = libm::sqrt(to_f64(level));
    let time_bound = min_displacement_time(c1).expect("fiber levels lie in (0, 1)");
    let time = time_bound + GIROUX_TIME_SLACK;
    Evidence::GirouxBound {
        level: level.clone(),
        time_bound,
        time,
        criterion: displacement_criterion(c1, time),
    }
}

/// The base point of a lens fiber: its first `d − 1` squared moduli, a
/// point of the standard simplex.
fn lens_base_point(f: &Fiber) -> Vec<Rat> {
    f.moduli_sq[..f.moduli_sq.len() - 1].to_vec()
}

fn base_simplex(dim: usize) -> LabeledPolytope {
    LabeledPolytope::standard_simplex(dim, rat(1, 1))
}

pub fn classify_fiber(f: &Fiber) -> Verdict {
    match f.spec {
        ManifoldSpec::Sphere { .. } => Verdict {
            status: VerdictStatus::Displaceable,
            method: Some(Method::GirouxIsotopy),
            provenance: alloc::vec![giroux_evidence(&f.moduli_sq[0])],
        },
        ManifoldSpec::Lens { d, .. } => {
            let base_point = lens_base_point(f);
            match find_probe(&base_simplex(d - 1), &base_point, PROBE_RADIUS) {
                Ok(Some(witness)) => Verdict {
                    status: VerdictStatus::Displaceable,
                    method: Some(Method::PrequantizationLift),
                    provenance: alloc::vec![
                        Evidence::PrequantizationLift {
                            base_point: base_point.clone()
                        },
                        Evidence::Probe {
                            point: base_point,
                            witness
                        },
                    ],
                },
                _ => Verdict::unknown("no probe displaces the base fiber within the search radius"),
            }
        }
        ManifoldSpec::ProductS1S2d { .. } | ManifoldSpec::TkSphere { .. } => {
            if !f.linear.last().is_some_and(Zero::is_zero) {
                return Verdict::unknown("off the reduction level the displacing neighborhoods are not quantified");
            }
            match reduction_project(f) {
                Ok(inner) => {
                    let verdict = classify_fiber(&inner);
                    Verdict::lifted(inner, verdict)
                }
                Err(_) => Verdict::unknown("the reduced fiber is the whole circle"),
            }
        }
        ManifoldSpec::CosphereTorus { .. } => Verdict {
            status: VerdictStatus::NonDisplaceable,
            method: Some(Method::GraphOfClosedForm),
            provenance: alloc::vec![Evidence::ClosedFormGraph { form: f.linear.clone() }],
        },
    }
}

/// Re-derives every step of `verdict` for `f` from scratch.
pub fn verify_verdict(f: &Fiber, verdict: &Verdict) -> bool {
    match verdict.status {
        VerdictStatus::Unknown => {
            verdict.method.is_none() && matches!(verdict.provenance.as_slice(), [Evidence::Unquantified { .. }])
        }
        VerdictStatus::NonDisplaceable => match (f.spec, verdict.provenance.as_slice()) {
            (ManifoldSpec::CosphereTorus { d }, [Evidence::ClosedFormGraph { form }]) => {
                verdict.method == Some(Method::GraphOfClosedForm)
                    && graph_identification(d, form.clone()).is_ok_and(|(fiber, _)| &fiber == f)
            }
            _ => false,
        },
        VerdictStatus::Displaceable => {
            let first = match verdict.provenance.first() {
                Some(Evidence::ReductionLift { .. }) => Method::ReductionLift,
                Some(Evidence::GirouxBound { .. }) => Method::GirouxIsotopy,
                Some(Evidence::PrequantizationLift { .. }) => Method::PrequantizationLift,
                _ => return false,
            };
            verdict.method == Some(first) && verify_chain(f, &verdict.provenance)
        }
    }
}

fn verify_chain(f: &Fiber, chain: &[Evidence]) -> bool {
    match chain {
        [Evidence::ReductionLift { inner }, rest @ ..] => {
            reduction_lift(inner, f.spec).is_ok_and(|lifted| &lifted == f) && verify_chain(inner, rest)
        }
        [Evidence::GirouxBound {
            level,
            time_bound,
            time,
            criterion,
        }] => {
            let c1 = libm::sqrt(to_f64(level));
            let Ok(bound) = min_displacement_time(c1) else {
                return false;
            };
            let recomputed = displacement_criterion(c1, *time);
            matches!(f.spec, ManifoldSpec::Sphere { d } if d >= 2)
                && &f.moduli_sq[0] == level
                && bound == *time_bound
                && *time > bound
                && recomputed == *criterion
                && recomputed > 0.0
        }
        [Evidence::PrequantizationLift { base_point }, Evidence::Probe { point, witness }] => {
            let ManifoldSpec::Lens { d, .. } = f.spec else {
                return false;
            };
            base_point == &lens_base_point(f)
                && point == base_point
                && verify_witness(&base_simplex(d - 1), point, witness)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sphere_fiber(levels: &[(i64, i64)]) -> Fiber {
        let d = levels.len();
        Fiber::new(
            ManifoldSpec::Sphere { d },
            levels.iter().map(|&(n, m)| rat(n, m)).collect(),
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn spec_round_trips_through_text() {
        for s in [
            ManifoldSpec::Sphere { d: 3 },
            ManifoldSpec::Lens { d: 2, p: 5 },
            ManifoldSpec::ProductS1S2d { d: 2 },
            ManifoldSpec::TkSphere { k: 2, d: 3 },
            ManifoldSpec::CosphereTorus { d: 4 },
        ] {
            assert_eq!(format!("{s}").parse::<ManifoldSpec>().unwrap(), s);
        }
        assert!("sphere:0".parse::<ManifoldSpec>().is_err());
        assert!("cosphere:1".parse::<ManifoldSpec>().is_err());
        assert!("torus:3".parse::<ManifoldSpec>().is_err());
    }

    #[test]
    fn torus_ranks() {
        assert_eq!(ManifoldSpec::Sphere { d: 3 }.torus_rank(), 3);
        assert_eq!(ManifoldSpec::Lens { d: 3, p: 2 }.torus_rank(), 3);
        assert_eq!(ManifoldSpec::ProductS1S2d { d: 3 }.torus_rank(), 4);
        assert_eq!(ManifoldSpec::TkSphere { k: 2, d: 3 }.torus_rank(), 5);
        assert_eq!(ManifoldSpec::CosphereTorus { d: 3 }.torus_rank(), 3);
    }

    #[test]
    fn fiber_invariants() {
        let s = ManifoldSpec::Sphere { d: 2 };
        assert!(Fiber::new(s, alloc::vec![rat(1, 2), rat(1, 2)], alloc::vec![]).is_ok());
        assert!(matches!(
            Fiber::new(s, alloc::vec![rat(1, 2), rat(1, 3)], alloc::vec![]),
            Err(CatalogError::InvariantViolation(_))
        ));
        assert!(Fiber::new(s, alloc::vec![rat(1, 1), rat(0, 1)], alloc::vec![]).is_err());
        assert!(Fiber::new(ManifoldSpec::Sphere { d: 1 }, alloc::vec![rat(1, 1)], alloc::vec![]).is_err());
        let p = ManifoldSpec::ProductS1S2d { d: 2 };
        assert!(Fiber::new(p, alloc::vec![rat(1, 4), rat(1, 2)], alloc::vec![rat(-1, 2)]).is_ok());
        assert!(Fiber::new(p, alloc::vec![rat(1, 4), rat(1, 2)], alloc::vec![]).is_err());
    }

    #[test]
    fn moment_map_examples() {
        let m = moment_map(ManifoldSpec::Sphere { d: 2 }, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(m.coefficient, [1.0, 0.0]);
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let m = moment_map(ManifoldSpec::ProductS1S2d { d: 1 }, &[0.3, r, 0.0, r]).unwrap();
        assert!((m.coefficient[0] - 0.5).abs() < 1e-15 && m.coefficient[1] == r);
        let m = moment_map(ManifoldSpec::CosphereTorus { d: 2 }, &[0.1, 0.7, 0.0, 1.0]).unwrap();
        assert_eq!(m.coefficient, [0.0, 1.0]);
        assert!(matches!(
            moment_map(ManifoldSpec::Sphere { d: 2 }, &[1.0, 0.0, 0.1, 0.0]),
            Err(CatalogError::OffManifold(_))
        ));
        assert!(matches!(
            moment_map(ManifoldSpec::Sphere { d: 2 }, &[1.0, 0.0]),
            Err(CatalogError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn moment_cone_examples() {
        assert_eq!(moment_cone(ManifoldSpec::Sphere { d: 3 }).unwrap(), Cone::orthant(3));
        let c = moment_cone(ManifoldSpec::ProductS1S2d { d: 2 }).unwrap();
        assert_eq!(c, Cone::new(3, alloc::vec![unit(3, 1), unit(3, 2)]).unwrap());
        assert_eq!(c.lineality_dim(), 1);
        let c = moment_cone(ManifoldSpec::CosphereTorus { d: 4 }).unwrap();
        assert!(c.normals().is_empty() && c.dim() == 4);
    }

    #[test]
    fn fibers_lie_in_their_cones() {
        let fibers = [
            sphere_fiber(&[(1, 3), (2, 3)]),
            Fiber::new(ManifoldSpec::ProductS1S2d { d: 2 }, alloc::vec![rat(1, 4), rat(1, 2)], alloc::vec![rat(-1, 2)]).unwrap(),
            Fiber::new(ManifoldSpec::TkSphere { k: 2, d: 1 }, alloc::vec![rat(9, 25)], alloc::vec![rat(0, 1), rat(-4, 5)]).unwrap(),
            graph_identification(2, alloc::vec![rat(-3, 5), rat(4, 5)]).unwrap().0,
        ];
        for f in fibers {
            assert!(moment_cone(f.spec()).unwrap().contains(&f.cone_point()));
        }
    }

    #[test]
    fn reduction_examples() {
        let inner = sphere_fiber(&[(1, 3), (2, 3)]);
        let outer = reduction_lift(&inner, ManifoldSpec::ProductS1S2d { d: 2 }).unwrap();
        assert_eq!(outer.linear(), [rat(0, 1)]);
        assert_eq!(reduction_project(&outer).unwrap(), inner);

        let t1 = Fiber::new(ManifoldSpec::TkSphere { k: 1, d: 2 }, alloc::vec![rat(1, 2), rat(1, 4)], alloc::vec![rat(1, 2)]).unwrap();
        let t2 = reduction_lift(&t1, ManifoldSpec::TkSphere { k: 2, d: 2 }).unwrap();
        assert_eq!(t2.linear(), [rat(1, 2), rat(0, 1)]);
        assert_eq!(reduction_project(&t2).unwrap(), t1);

        assert!(matches!(
            reduction_lift(&inner, ManifoldSpec::TkSphere { k: 2, d: 2 }),
            Err(CatalogError::NotAReductionPair { .. })
        ));
        assert!(matches!(
            reduction_lift(&inner, ManifoldSpec::ProductS1S2d { d: 3 }),
            Err(CatalogError::NotAReductionPair { .. })
        ));
        assert_eq!(reduction_project(&t1), Err(CatalogError::NotOnReductionLevel));
    }

    #[test]
    fn graph_examples() {
        let (_, form) = graph_identification(2, alloc::vec![rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(form, [rat(1, 1), rat(0, 1)]);
        let (_, form) = graph_identification(3, alloc::vec![rat(0, 1), rat(0, 1), rat(-1, 1)]).unwrap();
        assert_eq!(form, [rat(0, 1), rat(0, 1), rat(-1, 1)]);
        let (fiber, _) = graph_identification(2, alloc::vec![rat(3, 5), rat(4, 5)]).unwrap();
        assert_eq!(fiber.moment().coefficient, [rat(3, 5), rat(4, 5)]);
        assert_eq!(graph_identification(2, alloc::vec![rat(1, 2), rat(1, 2)]), Err(CatalogError::NotUnitVector));
    }

    #[test]
    fn verdict_examples() {
        let f = sphere_fiber(&[(1, 2), (1, 2)]);
        let v = classify_fiber(&f);
        assert_eq!((v.status, v.method), (VerdictStatus::Displaceable, Some(Method::GirouxIsotopy)));
        assert!(verify_verdict(&f, &v));

        let (f, _) = graph_identification(3, alloc::vec![rat(2, 3), rat(2, 3), rat(1, 3)]).unwrap();
        let v = classify_fiber(&f);
        assert_eq!(v.status, VerdictStatus::NonDisplaceable);
        assert!(verify_verdict(&f, &v));

        let f = Fiber::new(ManifoldSpec::ProductS1S2d { d: 2 }, alloc::vec![rat(1, 4), rat(1, 2)], alloc::vec![rat(1, 2)]).unwrap();
        assert_eq!(classify_fiber(&f).status, VerdictStatus::Unknown);

        let f = Fiber::new(ManifoldSpec::ProductS1S2d { d: 2 }, alloc::vec![rat(1, 4), rat(3, 4)], alloc::vec![rat(0, 1)]).unwrap();
        let v = classify_fiber(&f);
        assert_eq!((v.status, v.method), (VerdictStatus::Displaceable, Some(Method::ReductionLift)));
        assert!(verify_verdict(&f, &v));

        // on S¹ × S² the level h = 0 forces |z₁| = 1, which is no 2-torus fiber
        let f = Fiber::new(ManifoldSpec::ProductS1S2d { d: 1 }, alloc::vec![rat(1, 1)], alloc::vec![rat(0, 1)]);
        assert!(f.is_err());
    }

    #[test]
    fn lens_fibers_follow_the_base_probes() {
        let lens = ManifoldSpec::Lens { d: 3, p: 2 };
        let central = Fiber::new(lens, alloc::vec![rat(1, 3); 3], alloc::vec![]).unwrap();
        assert_eq!(classify_fiber(&central).status, VerdictStatus::Unknown);
        let off = Fiber::new(lens, alloc::vec![rat(1, 6), rat(1, 3), rat(1, 2)], alloc::vec![]).unwrap();
        let v = classify_fiber(&off);
        assert_eq!((v.status, v.method), (VerdictStatus::Displaceable, Some(Method::PrequantizationLift)));
        assert!(verify_verdict(&off, &v));
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let f = sphere_fiber(&[(1, 2), (1, 2)]);
        let mut v = classify_fiber(&f);
        if let Evidence::GirouxBound { time, .. } = &mut v.provenance[0] {
            *time = 0.5;
        }
        assert!(!verify_verdict(&f, &v));
        let other = sphere_fiber(&[(1, 3), (2, 3)]);
        assert!(!verify_verdict(&other, &classify_fiber(&f)));
        let mut v = classify_fiber(&f);
        v.status = VerdictStatus::NonDisplaceable;
        assert!(!verify_verdict(&f, &v));
    }
}
