use num_traits::{One, Zero};
use proptest::prelude::*;

use toric_contact::catalog::{
    classify_fiber, moment_map, reduction_lift, reduction_project, torus_act, verify_verdict, Fiber, ManifoldSpec,
    VerdictStatus,
};
use toric_contact::lattice::{Cone, IntMatrix};
use toric_contact::numerics::flow::flow;
use toric_contact::numerics::forms::AlphaSt;
use toric_contact::numerics::giroux::{
    displacement_criterion, displacement_criterion_quadratic, giroux_map, group_law_residual,
};
use toric_contact::numerics::hamiltonian::reeb_vector_field;
use toric_contact::numerics::manifold::{Manifold, UnitSphere};
use toric_contact::numerics::sampling::{rng, sphere_point};
use toric_contact::polytope::LabeledPolytope;
use toric_contact::probes::{displaces, find_probe, scan_grid, Probe};
use toric_contact::rational::{rat, Int, Rat};

fn seed_cones() -> Vec<Cone> {
    vec![
        Cone::orthant(3),
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 1], &[0, -1, 1]]).unwrap(),
        Cone::from_i64(3, &[&[1, 0, 0], &[1, 2, 0], &[0, 0, 1]]).unwrap(),
        Cone::from_i64(3, &[&[0, 1, 0], &[0, 0, 1]]).unwrap(),
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 2], &[0, -1, 2], &[-1, -1, 3]]).unwrap(),
    ]
}

/// Product of elementary row operations `row i += k · row j`.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            for c in 0..n {
                m[i][c] += k * m[j][c];
            }
        }
    }
    IntMatrix::from_rows(n, &m.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect::<Vec<_>>())
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, prop::sample::select(vec![-2i64, -1, 1, 2])), 0..6)
}

fn apply(u: &IntMatrix, x: &[Rat]) -> Vec<Rat> {
    (0..u.rows())
        .map(|r| u.row(r).iter().zip(x).map(|(a, b)| Rat::from_integer(a.clone()) * b).sum())
        .collect()
}

/// A point on the standard embedding of `spec`, built from a seed.
fn manifold_point(spec: ManifoldSpec, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    let angles = |r: &mut _, n: usize| -> Vec<f64> { sphere_point(r, n + 1).iter().map(|x| 3.0 * x).collect() };
    match spec {
        ManifoldSpec::Sphere { d } | ManifoldSpec::Lens { d, .. } => sphere_point(&mut r, 2 * d),
        ManifoldSpec::ProductS1S2d { d } => {
            let mut p = angles(&mut r, 0)[..1].to_vec();
            p.extend(sphere_point(&mut r, 2 * d + 1));
            p
        }
        ManifoldSpec::TkSphere { k, d } => {
            let mut p = angles(&mut r, k)[..k].to_vec();
            p.extend(sphere_point(&mut r, 2 * d + k));
            p
        }
        ManifoldSpec::CosphereTorus { d } => {
            let mut p = angles(&mut r, d)[..d].to_vec();
            p.extend(sphere_point(&mut r, d));
            p
        }
    }
}

fn specs() -> impl Strategy<Value = ManifoldSpec> {
    prop_oneof![
        (1usize..5).prop_map(|d| ManifoldSpec::Sphere { d }),
        (1usize..4, 1u64..5).prop_map(|(d, p)| ManifoldSpec::Lens { d, p }),
        (1usize..4).prop_map(|d| ManifoldSpec::ProductS1S2d { d }),
        (1usize..4, 1usize..4).prop_map(|(k, d)| ManifoldSpec::TkSphere { k, d }),
        (2usize..5).prop_map(|d| ManifoldSpec::CosphereTorus { d }),
    ]
}

fn levels(weights: &[u32]) -> Vec<Rat> {
    let total: i64 = weights.iter().map(|&w| i64::from(w)).sum();
    weights.iter().map(|&w| rat(i64::from(w), total)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_is_unimodular_invariant(which in 0usize..5, ops in ops()) {
        let cone = &seed_cones()[which];
        let u = unimodular(3, &ops);
        let moved = cone.unimodular_transform(&u).unwrap();
        prop_assert_eq!(moved.classify().unwrap(), cone.classify().unwrap());
        prop_assert_eq!(moved.is_good_all_faces().unwrap(), cone.is_good_all_faces().unwrap());
        prop_assert_eq!(moved.faces().unwrap().len(), cone.faces().unwrap().len());
    }

    #[test]
    fn classification_ignores_normal_order(which in 0usize..5, shift in 0usize..5) {
        let cone = &seed_cones()[which];
        let mut normals = cone.normals().to_vec();
        let len = normals.len();
        normals.rotate_left(shift % len);
        normals.reverse();
        let again = Cone::new(3, normals).unwrap();
        prop_assert_eq!(again.classify().unwrap(), cone.classify().unwrap());
    }

    #[test]
    fn probes_transport_under_affine_lattice_maps(q in 3u32..7, ops in ops(), shift in prop::collection::vec(-3i64..4, 2)) {
        let simplex = LabeledPolytope::standard_simplex(2, rat(1, 1));
        let u = unimodular(2, &ops);
        let t: Vec<Rat> = shift.iter().map(|&s| rat(s, i64::from(q))).collect();
        let image = simplex.affine_transform(&u, &t).unwrap();
        for verdict in scan_grid(&simplex, q, 2).unwrap() {
            let Some(w) = verdict.witness else { continue };
            let entry: Vec<Rat> = apply(&u, &w.probe.entry).iter().zip(&t).map(|(a, b)| a + b).collect();
            let dir_rat = apply(&u, &w.probe.direction.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<_>>());
            let direction: Vec<Int> = dir_rat.iter().map(|x| x.to_integer()).collect();
            let facet = image.tight_facets(&entry);
            prop_assert_eq!(facet.len(), 1);
            let probe = Probe::new(&image, facet[0], entry, direction).unwrap();
            prop_assert_eq!(&probe.length, &w.probe.length);
            let point: Vec<Rat> = apply(&u, &verdict.point).iter().zip(&t).map(|(a, b)| a + b).collect();
            prop_assert!(displaces(&image, &probe, &point).unwrap());
        }
    }

    #[test]
    fn larger_radius_never_loses_probes(a in 1i64..30, b in 1i64..30, den in 31i64..60, cube in any::<bool>()) {
        let p = if cube { LabeledPolytope::unit_cube(2) } else { LabeledPolytope::standard_simplex(2, rat(1, 1)) };
        let u = vec![rat(a, den), rat(b, den)];
        prop_assume!(p.is_interior(&u));
        for r in 1..3 {
            if find_probe(&p, &u, r).unwrap().is_some() {
                prop_assert!(find_probe(&p, &u, r + 1).unwrap().is_some());
            }
        }
    }

    #[test]
    fn reflected_points_are_not_displaced_by_the_same_probe(a in 1i64..12, b in 1i64..12) {
        let p = LabeledPolytope::standard_simplex(2, rat(1, 1));
        let u = vec![rat(a, 13), rat(b, 13)];
        prop_assume!(p.is_interior(&u));
        if let Some(w) = find_probe(&p, &u, 3).unwrap() {
            let mirror = &w.probe.length - &w.parameter;
            let reflected: Vec<Rat> = w.probe.entry.iter().zip(&w.probe.direction)
                .map(|(e, l)| e + &mirror * Rat::from_integer(l.clone()))
                .collect();
            prop_assert_eq!(w.probe.parameter_of(&p, &reflected), Some(mirror.clone()));
            prop_assert!(mirror * rat(2, 1) > w.probe.length);
            prop_assert!(!displaces(&p, &w.probe, &reflected).unwrap());
        }
    }

    #[test]
    fn moment_map_is_torus_invariant(spec in specs(), seed in any::<u64>(), turns in prop::collection::vec(-1.0f64..1.0, 8)) {
        let p = manifold_point(spec, seed);
        let angles = &turns[..spec.torus_rank()];
        let before = moment_map(spec, &p).unwrap().coefficient;
        let after = moment_map(spec, &torus_act(spec, angles, &p).unwrap()).unwrap().coefficient;
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn giroux_preserves_the_sphere_and_composes(s in 0.0f64..5.0, t in 0.0f64..5.0, seed in any::<u64>()) {
        let p = sphere_point(&mut rng(seed), 6);
        let z: Vec<num_complex::Complex64> = p.chunks(2).map(|c| num_complex::Complex64::new(c[0], c[1])).collect();
        let w = giroux_map(t, &z).unwrap();
        let radius: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((radius - 1.0).abs() < 1e-12);
        prop_assert!(group_law_residual(s, t, &z).unwrap() < 1e-9);
    }

    #[test]
    fn closed_forms_agree(c1 in 0.001f64..0.999, t in 0.0f64..3.0) {
        prop_assert!((displacement_criterion(c1, t) - displacement_criterion_quadratic(c1, t)).abs() < 1e-12);
    }

    #[test]
    fn reduction_round_trips(weights in prop::collection::vec(1u32..20, 2..5), k in 1usize..4) {
        let d = weights.len();
        let sphere = Fiber::new(ManifoldSpec::Sphere { d }, levels(&weights), vec![]).unwrap();
        let product = reduction_lift(&sphere, ManifoldSpec::ProductS1S2d { d }).unwrap();
        prop_assert_eq!(reduction_project(&product).unwrap(), sphere.clone());
        let mut fiber = reduction_lift(&sphere, ManifoldSpec::TkSphere { k: 1, d }).unwrap();
        for j in 2..=k {
            let lifted = reduction_lift(&fiber, ManifoldSpec::TkSphere { k: j, d }).unwrap();
            prop_assert_eq!(reduction_project(&lifted).unwrap(), fiber);
            fiber = lifted;
        }
        prop_assert!(fiber.linear().iter().all(Zero::is_zero));
    }

    #[test]
    fn displaceable_verdicts_always_reverify(weights in prop::collection::vec(1u32..20, 2..5), lens in 1u64..4) {
        let d = weights.len();
        let ls = levels(&weights);
        for f in [
            Fiber::new(ManifoldSpec::Sphere { d }, ls.clone(), vec![]).unwrap(),
            Fiber::new(ManifoldSpec::Lens { d, p: lens }, ls.clone(), vec![]).unwrap(),
            Fiber::new(ManifoldSpec::TkSphere { k: 2, d }, ls.clone(), vec![Rat::zero(); 2]).unwrap(),
        ] {
            let v = classify_fiber(&f);
            prop_assert_ne!(v.status, VerdictStatus::NonDisplaceable);
            prop_assert!(verify_verdict(&f, &v));
            if v.status == VerdictStatus::Displaceable && d >= 3 {
                // the same evidence does not certify a different fiber
                let mut other = weights.clone();
                other.swap(0, d - 1);
                other[0] += 1;
                let g = Fiber::new(f.spec(), levels(&other), f.linear().to_vec()).unwrap();
                prop_assert!(!verify_verdict(&g, &v));
            }
        }
    }
}

#[test]
fn moment_map_is_constant_along_the_reeb_flow() {
    for d in [2usize, 3] {
        let sphere = UnitSphere { d };
        let form = AlphaSt { d };
        let field = |q: &[f64]| reeb_vector_field(&sphere, &form, &sphere.project(q), 1e-5);
        for seed in 0..5 {
            let p = sphere.sample(&mut rng(seed));
            let out = flow(field, Some(&sphere as &dyn Manifold), &p, 1.0, 1e-3).unwrap();
            let before = moment_map(ManifoldSpec::Sphere { d }, &p).unwrap().coefficient;
            let after = moment_map(ManifoldSpec::Sphere { d }, &out.point).unwrap().coefficient;
            for (x, y) in before.iter().zip(&after) {
                assert!((x - y).abs() < 1e-8, "{before:?} vs {after:?}");
            }
        }
    }
}

#[test]
fn lifted_levels_sum_to_one() {
    let f = Fiber::new(ManifoldSpec::Sphere { d: 3 }, levels(&[1, 2, 3]), vec![]).unwrap();
    let g = reduction_lift(&f, ManifoldSpec::ProductS1S2d { d: 3 }).unwrap();
    let total: Rat = g.moment().coefficient.iter().sum();
    assert!(total.is_one());
}
