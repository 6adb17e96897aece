//! One function per verb. Each returns the JSON document to print and
//! whether the verb counts as passed (exit status 0 versus 1).

use std::io::Read;

use serde_json::{json, Value};
use toric_contact::catalog::{classify_fiber, verify_verdict, Evidence, Fiber, ManifoldSpec, Method, VerdictStatus};
use toric_contact::numerics::beta_g::{contact_condition_beta_g, delta_profile, SignPattern};
use toric_contact::numerics::contacto::{verify_contactomorphism, AmbientMap, ConjugateFirst, Identity};
use toric_contact::numerics::flow::flow as integrate;
use toric_contact::numerics::forms::AlphaSt;
use toric_contact::numerics::giroux::{min_displacement_time, verify_fiber_displaced, GirouxMap};
use toric_contact::numerics::hamiltonian::hamiltonian_vector_field;
use toric_contact::numerics::manifold::{Manifold, UnitSphere};
use toric_contact::numerics::sampling::rng;
use toric_contact::numerics::{NumericsError, VerificationReport, DEFAULT_FD_STEP};
use toric_contact::polytope::LabeledPolytope;
use toric_contact::probes::{scan_grid, undisplaced_points};
use toric_contact::rational::{parse_rat, rat, to_f64, Rat};
use toric_contact::reeb::{slice as slice_cone, synthesize_reeb};

use crate::json::{
    ints_json, parse_cone, parse_polytope, parse_rat_list, polytope_json, rat_json, rats_json,
    witness_json, CliResult, InputError,
};

/// Slack added to the displacement bound by `--t auto`.
pub const AUTO_TIME_SLACK: f64 = 0.01;

pub struct Output {
    pub json: Value,
    pub passed: bool,
}

impl Output {
    fn ok(json: Value) -> Self {
        Self { json, passed: true }
    }
}

fn numerics(e: NumericsError) -> InputError {
    InputError::new("numerics_error", e.to_string())
}

pub fn read_json(path: &str) -> CliResult<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError::new("io_error", e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError::new("io_error", format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| InputError::new("invalid_json", format!("{path}: {e}")))
}

pub fn classify_cone(input: &str) -> CliResult<Output> {
    let cone = parse_cone(&read_json(input)?)?;
    let c = cone.classify().map_err(|e| InputError::new("invalid_cone", e.to_string()))?;
    Ok(Output::ok(json!({
        "strictly_convex": c.strictly_convex,
        "good": c.good,
        "lineality": c.lineality_dim,
        "reeb_type": c.reeb_type,
    })))
}

fn synthesis_json(s: &toric_contact::ReebSynthesis) -> Value {
    json!({
        "reeb": ints_json(&s.reeb),
        "coefficients": rats_json(&s.coefficients),
        "basis_witness": s.basis_witness,
    })
}

pub fn synthesize(input: &str) -> CliResult<Output> {
    let cone = parse_cone(&read_json(input)?)?;
    let s = synthesize_reeb(&cone).map_err(|e| InputError::new("not_reeb_type", e.to_string()))?;
    Ok(Output::ok(synthesis_json(&s)))
}

pub fn slice(input: &str, level: &str) -> CliResult<Output> {
    let cone = parse_cone(&read_json(input)?)?;
    let level = parse_rat(level).map_err(|e| InputError::new("invalid_flag", format!("--level: {e}")))?;
    let s = synthesize_reeb(&cone).map_err(|e| InputError::new("not_reeb_type", e.to_string()))?;
    let p = slice_cone(&cone, &s, &level).map_err(|e| InputError::new("invalid_slice", e.to_string()))?;
    Ok(Output::ok(json!({
        "reeb": synthesis_json(&s),
        "level": rat_json(&level),
        "polytope": polytope_json(&p),
    })))
}

pub enum PolytopeSource {
    File(String),
    Simplex(usize),
    Cube(usize),
}

pub fn probe_scan(source: PolytopeSource, denominator: u32, radius: u32) -> CliResult<Output> {
    let p = match source {
        PolytopeSource::File(path) => parse_polytope(&read_json(&path)?)?,
        PolytopeSource::Simplex(n) if n >= 1 => LabeledPolytope::standard_simplex(n, rat(1, 1)),
        PolytopeSource::Cube(n) if n >= 1 => LabeledPolytope::unit_cube(n),
        _ => return Err(InputError::new("invalid_flag", "polytope dimension must be at least 1")),
    };
    let verdicts = scan_grid(&p, denominator, radius).map_err(|e| InputError::new("invalid_flag", e.to_string()))?;
    let points: Vec<Value> = verdicts
        .iter()
        .map(|v| {
            json!({
                "point": rats_json(&v.point),
                "displaceable": v.displaceable,
                "witness": v.witness.as_ref().map(witness_json),
            })
        })
        .collect();
    let stuck = undisplaced_points(&verdicts);
    Ok(Output::ok(json!({
        "kind": "probe_scan",
        "denominator": denominator,
        "radius": radius,
        "points": points,
        "undisplaced": stuck.iter().map(|u| rats_json(u)).collect::<Vec<_>>(),
        "displaceable_count": verdicts.len() - stuck.len(),
        "undisplaced_count": stuck.len(),
    })))
}

fn evidence_json(e: &Evidence) -> Value {
    match e {
        Evidence::ReductionLift { inner } => json!({
            "step": "reduction_lift",
            "inner_spec": inner.spec().to_string(),
            "inner_fiber": rats_json(&inner.moment().coefficient),
        }),
        Evidence::GirouxBound {
            level,
            time_bound,
            time,
            criterion,
        } => json!({
            "step": "giroux_bound",
            "level": rat_json(level),
            "time_bound": time_bound,
            "time": time,
            "criterion": criterion,
        }),
        Evidence::PrequantizationLift { base_point } => json!({
            "step": "prequantization_lift",
            "base_point": rats_json(base_point),
        }),
        Evidence::Probe { point, witness } => json!({
            "step": "probe",
            "point": rats_json(point),
            "witness": witness_json(witness),
        }),
        Evidence::ClosedFormGraph { form } => json!({ "step": "closed_form_graph", "form": rats_json(form) }),
        Evidence::Unquantified { reason } => json!({ "step": "unquantified", "reason": reason }),
    }
}

/// Splits `moment/π` values into squared moduli and linear coordinates.
fn fiber_from_moment(spec: ManifoldSpec, values: Vec<Rat>) -> CliResult<Fiber> {
    let (nm, nl) = spec.fiber_shape();
    if values.len() != nm + nl {
        return Err(InputError::new(
            "invalid_fiber",
            format!("{spec} fibers take {} values ({nm} squared moduli, {nl} linear), got {}", nm + nl, values.len()),
        ));
    }
    let mut moduli = values;
    let linear = moduli.split_off(nm);
    Fiber::new(spec, moduli, linear).map_err(|e| InputError::new("invalid_fiber", e.to_string()))
}

pub fn classify(spec: &str, fiber: &str) -> CliResult<Output> {
    let spec: ManifoldSpec = spec.parse().map_err(|e: toric_contact::catalog::CatalogError| {
        InputError::new("invalid_spec", e.to_string())
    })?;
    let f = fiber_from_moment(spec, parse_rat_list(fiber, "--fiber")?)?;
    let v = classify_fiber(&f);
    let verified = verify_verdict(&f, &v);
    let status = match v.status {
        VerdictStatus::Displaceable => "displaceable",
        VerdictStatus::NonDisplaceable => "non_displaceable",
        VerdictStatus::Unknown => "unknown",
    };
    let method = v.method.map(|m| match m {
        Method::GirouxIsotopy => "giroux_isotopy",
        Method::ReductionLift => "reduction_lift",
        Method::PrequantizationLift => "prequantization_lift",
        Method::GraphOfClosedForm => "graph_of_closed_form",
    });
    Ok(Output {
        json: json!({
            "kind": "verdict",
            "spec": spec.to_string(),
            "fiber": rats_json(&f.moment().coefficient),
            "status": status,
            "method": method,
            "provenance": v.provenance.iter().map(evidence_json).collect::<Vec<_>>(),
            "verified": verified,
        }),
        passed: verified,
    })
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "samples": r.samples,
        "max_residual": r.max_residual,
        "min_margin": r.min_margin,
        "passed": r.passed,
        "parameters": {
            "fd_step": r.parameters.fd_step,
            "tolerance": r.parameters.tolerance,
            "margin_floor": r.parameters.margin_floor,
            "seed": r.parameters.seed,
        },
    })
}

pub struct GirouxArgs<'a> {
    pub d: Option<usize>,
    pub fiber: &'a str,
    pub t: &'a str,
    pub samples: usize,
    pub seed: u64,
    pub margin_floor: f64,
}

pub fn verify_giroux(a: GirouxArgs<'_>) -> CliResult<Output> {
    let levels = parse_rat_list(a.fiber, "--fiber")?;
    let d = levels.len();
    if a.d.is_some_and(|x| x != d) {
        return Err(InputError::new("invalid_fiber", format!("--d is {} but the fiber has {d} levels", a.d.unwrap_or(0))));
    }
    // exact validation of the level set before going to floats
    fiber_from_moment(ManifoldSpec::Sphere { d }, levels.clone())?;
    let moduli: Vec<f64> = levels.iter().map(|c| to_f64(c).sqrt()).collect();
    let t = if a.t == "auto" {
        min_displacement_time(moduli[0]).map_err(numerics)? + AUTO_TIME_SLACK
    } else {
        a.t.parse::<f64>()
            .map_err(|_| InputError::new("invalid_flag", format!("--t: expected a number or `auto`, got {}", a.t)))?
    };
    let res = verify_fiber_displaced(&moduli, t, a.samples, a.seed, a.margin_floor).map_err(numerics)?;
    Ok(Output {
        passed: res.report.passed,
        json: json!({
            "kind": "giroux",
            "d": d,
            "fiber": rats_json(&levels),
            "c1": moduli[0],
            "t": t,
            "time_bound": res.time_bound,
            "criterion": res.criterion,
            "report": report_json(&res.report),
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MapKind {
    Giroux,
    Identity,
    Conjugate,
}

pub struct ContactoArgs {
    pub d: usize,
    pub map: MapKind,
    pub t: f64,
    pub samples: usize,
    pub seed: u64,
    pub fd_step: f64,
    pub tolerance: f64,
}

pub fn verify_contacto(a: ContactoArgs) -> CliResult<Output> {
    if a.d == 0 {
        return Err(InputError::new("invalid_flag", "--d must be at least 1"));
    }
    let (map, name, t): (Box<dyn AmbientMap>, &str, Option<f64>) = match a.map {
        MapKind::Giroux => (Box::new(GirouxMap { t: a.t }), "giroux", Some(a.t)),
        MapKind::Identity => (Box::new(Identity), "identity", None),
        MapKind::Conjugate => (Box::new(ConjugateFirst), "conjugate", None),
    };
    let sphere = UnitSphere { d: a.d };
    let r = verify_contactomorphism(&sphere, map.as_ref(), &AlphaSt { d: a.d }, a.samples, a.fd_step, a.tolerance, a.seed)
        .map_err(numerics)?;
    Ok(Output {
        passed: r.passed,
        json: json!({ "kind": "contacto", "d": a.d, "map": name, "t": t, "report": report_json(&r) }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Profile {
    Identity,
    Zero,
    Delta,
}

pub fn check_beta_g(profile: Profile, eps: f64, t: f64, intervals: usize) -> CliResult<Output> {
    let check = match profile {
        Profile::Identity => contact_condition_beta_g(|h| h, |_| 1.0, intervals),
        Profile::Zero => contact_condition_beta_g(|_| 0.0, |_| 0.0, intervals),
        Profile::Delta => {
            if !(0.0..=1.0).contains(&t) {
                return Err(InputError::new("invalid_flag", "--t must lie in [0, 1]"));
            }
            let delta = delta_profile(eps).map_err(numerics)?;
            let (g, gp) = delta.interpolate(t);
            contact_condition_beta_g(g, gp, intervals)
        }
    }
    .map_err(numerics)?;
    let (name, eps, t) = match profile {
        Profile::Identity => ("identity", None, None),
        Profile::Zero => ("zero", None, None),
        Profile::Delta => ("delta", Some(eps), Some(t)),
    };
    let sign = match check.sign {
        SignPattern::Positive => "positive",
        SignPattern::Negative => "negative",
        SignPattern::Vanishes => "vanishes",
        SignPattern::Mixed => "mixed",
    };
    Ok(Output {
        passed: check.passed,
        json: json!({
            "kind": "beta_g",
            "profile": name,
            "eps": eps,
            "t": t,
            "intervals": check.intervals,
            "min_abs": check.min_abs,
            "argmin": check.argmin,
            "sign": sign,
            "passed": check.passed,
            "series": check.series.iter().map(|&(h, e)| [h, e]).collect::<Vec<_>>(),
        }),
    })
}

pub struct FlowArgs<'a> {
    pub d: usize,
    pub hamiltonian: &'a str,
    pub t_end: f64,
    pub dt: f64,
    pub seed: u64,
    pub tolerance: f64,
}

/// `reeb` is `h ≡ 1`; `moment:j` is `π|z_j|²` (1-based), which generates
/// the j-th circle of the torus.
fn hamiltonian(spec: &str, d: usize) -> CliResult<Box<dyn Fn(&[f64]) -> f64>> {
    if spec == "reeb" {
        return Ok(Box::new(|_| 1.0));
    }
    let bad = || InputError::new("invalid_flag", format!("--hamiltonian: expected `reeb` or `moment:j` with 1 ≤ j ≤ {d}, got {spec}"));
    let j: usize = spec.strip_prefix("moment:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if j == 0 || j > d {
        return Err(bad());
    }
    let (x, y) = (2 * (j - 1), 2 * (j - 1) + 1);
    Ok(Box::new(move |q: &[f64]| std::f64::consts::PI * (q[x] * q[x] + q[y] * q[y])))
}

pub fn flow(a: FlowArgs<'_>) -> CliResult<Output> {
    if a.d == 0 {
        return Err(InputError::new("invalid_flag", "--d must be at least 1"));
    }
    let h = hamiltonian(a.hamiltonian, a.d)?;
    let sphere = UnitSphere { d: a.d };
    let form = AlphaSt { d: a.d };
    let field = |q: &[f64]| {
        let q = sphere.project(q);
        hamiltonian_vector_field(&sphere, &form, &h, &q, DEFAULT_FD_STEP).map(|f| f.vector)
    };
    let start = sphere.sample(&mut rng(a.seed));
    let out = integrate(field, Some(&sphere as &dyn Manifold), &start, a.t_end, a.dt).map_err(numerics)?;
    let moduli = |p: &[f64]| p.chunks(2).map(|c| c[0] * c[0] + c[1] * c[1]).collect::<Vec<f64>>();
    let drift = moduli(&start)
        .iter()
        .zip(moduli(&out.point))
        .map(|(a, b)| std::f64::consts::PI * (a - b).abs())
        .fold(0.0, f64::max);
    let passed = drift < a.tolerance;
    Ok(Output {
        passed,
        json: json!({
            "kind": "flow",
            "d": a.d,
            "hamiltonian": a.hamiltonian,
            "t_end": a.t_end,
            "dt": a.dt,
            "seed": a.seed,
            "start": start,
            "point": out.point,
            "steps": out.steps,
            "max_drift": out.max_drift,
            "moment_drift": drift,
            "tolerance": a.tolerance,
            "passed": passed,
        }),
    })
}

/// Used by `report` to rebuild `(c₁, T(c₁))` rows.
pub fn time_bound(c1: f64) -> Option<f64> {
    min_displacement_time(c1).ok()
}
