//! Probes: rational segments that certify displaceability of toric fibers.
//!
//! A probe enters a labeled polytope through the relative interior of a facet
//! `F` in an integral direction `λ` with `⟨λ, u_F⟩ = 1`, and runs until it
//! leaves the polytope after length `ℓ`. Fibers over points `w + sλ` with
//! `0 < s < ℓ/2` are displaceable, provided the entry facet has label 1.
//!
//! Probes leaving through a face of codimension ≥ 2 are not accepted as
//! witnesses.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::polytope::LabeledPolytope;
use crate::rational::{int_dot, rat_from_int, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("entry point is not in the relative interior of facet {0}")]
    InvalidEntry(usize),
    #[error("direction pairs to {0} with the entry facet normal, expected 1")]
    NotTransverse(Int),
    #[error("point is not in the interior of the polytope")]
    NotInterior,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("no facet with index {0}")]
    NoSuchFacet(usize),
    #[error("grid denominator must be at least 2")]
    BadDenominator,
    #[error("search radius must be at least 1")]
    BadRadius,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub facet_index: usize,
    pub entry: Vec<Rat>,
    pub direction: Vec<Int>,
    pub length: Rat,
}

/// A probe together with the parameter `s` locating the displaced point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeWitness {
    pub probe: Probe,
    pub parameter: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeVerdict {
    pub point: Vec<Rat>,
    pub displaceable: bool,
    pub witness: Option<ProbeWitness>,
}

fn along(w: &[Rat], direction: &[Int], s: &Rat) -> Vec<Rat> {
    w.iter()
        .zip(direction)
        .map(|(x, l)| x + s * rat_from_int(l))
        .collect()
}

pub fn probe_length(
    p: &LabeledPolytope,
    facet: usize,
    entry: &[Rat],
    direction: &[Int],
) -> Result<Rat, ProbeError> {
    let f = p.facets().get(facet).ok_or(ProbeError::NoSuchFacet(facet))?;
    if entry.len() != p.dim() || direction.len() != p.dim() {
        return Err(ProbeError::DimensionMismatch);
    }
    let pairing = int_dot(direction, &f.normal);
    if !pairing.is_one() {
        return Err(ProbeError::NotTransverse(pairing));
    }
    if !p.in_facet_interior(facet, entry) {
        return Err(ProbeError::InvalidEntry(facet));
    }
    let length = p
        .facets()
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let rate = int_dot(direction, &g.normal);
            rate.is_negative()
                .then(|| p.slack(i, entry) / rat_from_int(&-rate))
        })
        .min()
        .expect("bounded polytope: some facet blocks every direction");
    Ok(length)
}

impl Probe {
    pub fn new(
        p: &LabeledPolytope,
        facet: usize,
        entry: Vec<Rat>,
        direction: Vec<Int>,
    ) -> Result<Self, ProbeError> {
        let length = probe_length(p, facet, &entry, &direction)?;
        Ok(Self {
            facet_index: facet,
            entry,
            direction,
            length,
        })
    }

    pub fn exit_point(&self) -> Vec<Rat> {
        along(&self.entry, &self.direction, &self.length)
    }

    /// Whether the probe leaves through the relative interior of a facet.
    pub fn exits_through_facet(&self, p: &LabeledPolytope) -> bool {
        p.tight_facets(&self.exit_point()).len() == 1
    }

    /// `s` with `u = w + sλ`, if `u` is on the probe's line.
    pub fn parameter_of(&self, p: &LabeledPolytope, u: &[Rat]) -> Option<Rat> {
        let s = p.slack(self.facet_index, u);
        (along(&self.entry, &self.direction, &s) == u).then_some(s)
    }
}

/// Whether `probe` certifies the fiber over the interior point `u`.
pub fn displaces(p: &LabeledPolytope, probe: &Probe, u: &[Rat]) -> Result<bool, ProbeError> {
    if !p.is_interior(u) {
        return Err(ProbeError::NotInterior);
    }
    let Some(f) = p.facets().get(probe.facet_index) else {
        return Err(ProbeError::NoSuchFacet(probe.facet_index));
    };
    if f.label != 1 || !probe.exits_through_facet(p) {
        return Ok(false);
    }
    let Some(s) = probe.parameter_of(p, u) else {
        return Ok(false);
    };
    Ok(s.is_positive() && s * Rat::from_integer(Int::from(2)) < probe.length)
}

/// Re-derives every property a displacing witness must have, from scratch.
pub fn verify_witness(p: &LabeledPolytope, u: &[Rat], witness: &ProbeWitness) -> bool {
    let probe = &witness.probe;
    let Ok(length) = probe_length(p, probe.facet_index, &probe.entry, &probe.direction) else {
        return false;
    };
    length == probe.length
        && p.facets()[probe.facet_index].label == 1
        && probe.parameter_of(p, u).as_ref() == Some(&witness.parameter)
        && matches!(displaces(p, probe, u), Ok(true))
}

/// Integer vectors in `[−r, r]ⁿ \ {0}`, by ℓ¹ norm then lexicographically.
pub fn search_directions(n: usize, radius: u32) -> Vec<Vec<Int>> {
    let r = i64::from(radius);
    let side = (2 * r + 1) as usize;
    let total = side.pow(n as u32);
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut v = vec![0i64; n];
        for k in (0..n).rev() {
            v[k] = (code % side) as i64 - r;
            code /= side;
        }
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out.sort_by(|a, b| {
        let na: i64 = a.iter().map(|x| x.abs()).sum();
        let nb: i64 = b.iter().map(|x| x.abs()).sum();
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
    out.into_iter()
        .map(|v| v.into_iter().map(Int::from).collect())
        .collect()
}

pub fn find_probe(
    p: &LabeledPolytope,
    u: &[Rat],
    radius: u32,
) -> Result<Option<ProbeWitness>, ProbeError> {
    if radius == 0 {
        return Err(ProbeError::BadRadius);
    }
    if !p.is_interior(u) {
        return Err(ProbeError::NotInterior);
    }
    let directions = search_directions(p.dim(), radius);
    Ok(find_with_directions(p, u, &directions))
}

fn find_with_directions(p: &LabeledPolytope, u: &[Rat], directions: &[Vec<Int>]) -> Option<ProbeWitness> {
    for (i, f) in p.facets().iter().enumerate() {
        if f.label != 1 {
            continue;
        }
        let s = p.slack(i, u);
        for dir in directions {
            if !int_dot(dir, &f.normal).is_one() {
                continue;
            }
            let entry = along(u, dir, &-s.clone());
            if !p.in_facet_interior(i, &entry) {
                continue;
            }
            let Ok(probe) = Probe::new(p, i, entry, dir.clone()) else {
                continue;
            };
            if !probe.exits_through_facet(p) {
                continue;
            }
            if &s * Rat::from_integer(Int::from(2)) < probe.length {
                return Some(ProbeWitness {
                    probe,
                    parameter: s,
                });
            }
        }
    }
    None
}

/// Verdicts for every interior point of `(1/q)ℤⁿ`, in lexicographic order.
pub fn scan_grid(p: &LabeledPolytope, denominator: u32, radius: u32) -> Result<Vec<ProbeVerdict>, ProbeError> {
    if denominator < 2 {
        return Err(ProbeError::BadDenominator);
    }
    if radius == 0 {
        return Err(ProbeError::BadRadius);
    }
    let n = p.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let q = Rat::from_integer(Int::from(denominator));
    let (lo, hi) = p.bounding_box();
    let lo: Vec<Int> = lo.iter().map(|x| (x * &q).ceil().to_integer()).collect();
    let hi: Vec<Int> = hi.iter().map(|x| (x * &q).floor().to_integer()).collect();
    let directions = search_directions(n, radius);

    let mut out = Vec::new();
    let mut k = lo.clone();
    loop {
        let point: Vec<Rat> = k.iter().map(|x| Rat::new(x.clone(), Int::from(denominator))).collect();
        if p.is_interior(&point) {
            let witness = find_with_directions(p, &point, &directions);
            out.push(ProbeVerdict {
                displaceable: witness.is_some(),
                point,
                witness,
            });
        }
        // odometer over the box, last coordinate fastest
        let mut axis = n;
        loop {
            if axis == 0 {
                return Ok(out);
            }
            axis -= 1;
            if k[axis] < hi[axis] {
                k[axis] += Int::one();
                for j in axis + 1..n {
                    k[j] = lo[j].clone();
                }
                break;
            }
        }
    }
}

pub fn undisplaced_points(verdicts: &[ProbeVerdict]) -> Vec<Vec<Rat>> {
    verdicts
        .iter()
        .filter(|v| !v.displaceable)
        .map(|v| v.point.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Facet;
    use crate::rational::{ints, rat};
    use num_traits::Zero;

    fn simplex() -> LabeledPolytope {
        LabeledPolytope::standard_simplex(2, rat(1, 1))
    }

    /// index of the facet `y ≥ 0` in a polytope
    fn bottom(p: &LabeledPolytope) -> usize {
        p.facets()
            .iter()
            .position(|f| f.normal == ints(&[0, 1]) && f.constant.is_zero())
            .unwrap()
    }

    #[test]
    fn length_examples() {
        let s = simplex();
        let b = bottom(&s);
        assert_eq!(probe_length(&s, b, &[rat(1, 4), rat(0, 1)], &ints(&[0, 1])).unwrap(), rat(3, 4));
        assert_eq!(probe_length(&s, b, &[rat(1, 3), rat(0, 1)], &ints(&[0, 1])).unwrap(), rat(2, 3));
        let c = LabeledPolytope::unit_cube(2);
        let b = bottom(&c);
        assert_eq!(probe_length(&c, b, &[rat(1, 2), rat(0, 1)], &ints(&[0, 1])).unwrap(), rat(1, 1));
    }

    #[test]
    fn length_errors() {
        let s = simplex();
        let b = bottom(&s);
        assert!(matches!(
            probe_length(&s, b, &[rat(1, 4), rat(0, 1)], &ints(&[0, 2])),
            Err(ProbeError::NotTransverse(_))
        ));
        assert_eq!(
            probe_length(&s, b, &[rat(0, 1), rat(0, 1)], &ints(&[0, 1])),
            Err(ProbeError::InvalidEntry(b))
        );
    }

    #[test]
    fn displacement_examples() {
        let s = simplex();
        let b = bottom(&s);
        let probe = Probe::new(&s, b, alloc::vec![rat(1, 4), rat(0, 1)], ints(&[0, 1])).unwrap();
        assert!(displaces(&s, &probe, &[rat(1, 4), rat(1, 4)]).unwrap());
        let probe = Probe::new(&s, b, alloc::vec![rat(1, 3), rat(0, 1)], ints(&[0, 1])).unwrap();
        // barycenter sits exactly at half length
        assert!(!displaces(&s, &probe, &[rat(1, 3), rat(1, 3)]).unwrap());
        assert!(!displaces(&s, &probe, &[rat(1, 5), rat(1, 5)]).unwrap());
        assert_eq!(displaces(&s, &probe, &[rat(1, 1), rat(1, 1)]), Err(ProbeError::NotInterior));
    }

    #[test]
    fn labels_other_than_one_disqualify_the_entry_facet() {
        let facets = simplex()
            .facets()
            .iter()
            .map(|f| Facet {
                label: if f.normal == ints(&[0, 1]) { 2 } else { f.label },
                ..f.clone()
            })
            .collect();
        let p = LabeledPolytope::new(2, facets).unwrap();
        let b = bottom(&p);
        let probe = Probe::new(&p, b, alloc::vec![rat(1, 4), rat(0, 1)], ints(&[0, 1])).unwrap();
        assert!(!displaces(&p, &probe, &[rat(1, 4), rat(1, 4)]).unwrap());
    }

    #[test]
    fn corner_exits_are_rejected() {
        let c = LabeledPolytope::unit_cube(2);
        let b = bottom(&c);
        let diag = Probe::new(&c, b, alloc::vec![rat(1, 2), rat(0, 1)], ints(&[1, 1])).unwrap();
        assert_eq!(diag.exit_point(), [rat(1, 1), rat(1, 2)]);
        assert!(diag.exits_through_facet(&c));

        // triangle x ≥ 0, y ≥ 0, x + 2y ≤ 2: from (1, 0) along (−1, 1) the
        // probe runs into the vertex (0, 1)
        let facet = |n: &[i64], c: Rat| Facet { normal: ints(n), constant: c, label: 1 };
        let s = LabeledPolytope::new(
            2,
            alloc::vec![facet(&[1, 0], rat(0, 1)), facet(&[0, 1], rat(0, 1)), facet(&[-1, -2], rat(-2, 1))],
        )
        .unwrap();
        let b = bottom(&s);
        let corner = Probe::new(&s, b, alloc::vec![rat(1, 1), rat(0, 1)], ints(&[-1, 1])).unwrap();
        assert_eq!(corner.exit_point(), [rat(0, 1), rat(1, 1)]);
        assert!(!corner.exits_through_facet(&s));
        assert!(!displaces(&s, &corner, &[rat(3, 4), rat(1, 4)]).unwrap());
    }

    #[test]
    fn find_probe_examples() {
        let s = simplex();
        let w = find_probe(&s, &[rat(1, 4), rat(1, 4)], 1).unwrap().unwrap();
        assert!(verify_witness(&s, &[rat(1, 4), rat(1, 4)], &w));
        for r in 1..=4 {
            assert_eq!(find_probe(&s, &[rat(1, 3), rat(1, 3)], r).unwrap(), None);
        }
        let seg = LabeledPolytope::standard_simplex(1, rat(1, 1));
        let w = find_probe(&seg, &[rat(1, 4)], 1).unwrap().unwrap();
        assert_eq!(w.probe.direction, ints(&[1]));
        assert_eq!(w.parameter, rat(1, 4));
        assert_eq!(find_probe(&s, &[rat(0, 1), rat(1, 3)], 1), Err(ProbeError::NotInterior));
    }

    #[test]
    fn grid_examples() {
        let s = simplex();
        let v = scan_grid(&s, 3, 3).unwrap();
        assert_eq!(undisplaced_points(&v), [alloc::vec![rat(1, 3), rat(1, 3)]]);
        let seg = LabeledPolytope::standard_simplex(1, rat(1, 1));
        let v = scan_grid(&seg, 4, 1).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(undisplaced_points(&v), [alloc::vec![rat(1, 2)]]);
        let v = scan_grid(&s, 4, 3).unwrap();
        assert!(undisplaced_points(&v).is_empty());
        assert_eq!(scan_grid(&s, 1, 3), Err(ProbeError::BadDenominator));
    }

    #[test]
    fn directions_are_graded() {
        let d = search_directions(2, 1);
        assert_eq!(d.len(), 8);
        assert_eq!(d[0], ints(&[-1, 0]));
        assert_eq!(d[3], ints(&[1, 0]));
        assert_eq!(d[4], ints(&[-1, -1]));
    }
}
