//! Reeb and contact Hamiltonian vector fields by bordered linear solves in a
//! tangent frame.
//!
//! With `U` an orthonormal tangent frame at `p`, `a = Uᵀα` and `Ω = Uᵀ dα U`,
//! the Reeb field `R = U r` solves
//!
//! ```text
//! [ Ω  a ] [ r ]   [ 0 ]
//! [ aᵀ 0 ] [ λ ] = [ 1 ]
//! ```
//!
//! and the field `X = U x` of a Hamiltonian `h`, defined by `α(X) = h` and
//! `X ⌟ dα = dh(R) α − dh`, solves
//!
//! ```text
//! [ −Ω  a ] [ x ]   [ dh(R) a − ∇h ]
//! [  aᵀ 0 ] [ μ ] = [ h            ]
//! ```
//!
//! Both matrices are invertible exactly when `α` is contact at `p`; the
//! multipliers `λ`, `μ` vanish on exact solutions.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use super::forms::ContactForm;
use super::linalg::{dot, gradient, solve_checked};
use super::manifold::Manifold;
use super::NumericsError;

/// Solve tolerance for both bordered systems.
pub const SOLVE_TOL: f64 = 1e-8;

struct LocalData {
    frame: DMatrix<f64>,
    a: DVector<f64>,
    omega: DMatrix<f64>,
    d_alpha: DMatrix<f64>,
    alpha: Vec<f64>,
}

fn local<M, F>(manifold: &M, form: &F, p: &[f64], fd_step: f64) -> Result<LocalData, NumericsError>
where
    M: Manifold + ?Sized,
    F: ContactForm + ?Sized,
{
    manifold.check(p, 1e-9)?;
    let frame = manifold.tangent_frame(p)?;
    let alpha = form.eval(p);
    let d_alpha = form.differential(p, fd_step);
    let a = frame.transpose() * DVector::from_column_slice(&alpha);
    let omega = frame.transpose() * &d_alpha * &frame;
    Ok(LocalData {
        frame,
        a,
        omega,
        d_alpha,
        alpha,
    })
}

fn bordered(block: DMatrix<f64>, a: &DVector<f64>) -> DMatrix<f64> {
    let m = block.nrows();
    let mut out = DMatrix::zeros(m + 1, m + 1);
    out.view_mut((0, 0), (m, m)).copy_from(&block);
    for i in 0..m {
        out[(i, m)] = a[i];
        out[(m, i)] = a[i];
    }
    out
}

fn reeb_in_frame(data: &LocalData) -> Result<(DVector<f64>, f64), NumericsError> {
    let m = data.a.len();
    let mut rhs = DVector::zeros(m + 1);
    rhs[m] = 1.0;
    let sol = solve_checked(&bordered(data.omega.clone(), &data.a), &rhs, SOLVE_TOL)?;
    Ok((sol.x.rows(0, m).into_owned(), sol.condition))
}

/// The Reeb field at `p` as an ambient vector.
pub fn reeb_vector_field<M, F>(manifold: &M, form: &F, p: &[f64], fd_step: f64) -> Result<Vec<f64>, NumericsError>
where
    M: Manifold + ?Sized,
    F: ContactForm + ?Sized,
{
    let data = local(manifold, form, p, fd_step)?;
    let (r, _) = reeb_in_frame(&data)?;
    Ok((&data.frame * r).iter().copied().collect())
}

/// A Hamiltonian field at one point with the checks that certify it.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianField {
    pub vector: Vec<f64>,
    pub reeb: Vec<f64>,
    /// Largest violation of `α(X) = h` and of `X ⌟ dα = dh(R) α − dh` on
    /// the frame vectors, evaluated with ambient `α`, `dα` and `∇h`.
    pub residual: f64,
    pub condition: f64,
}

pub fn hamiltonian_vector_field<M, F, H>(
    manifold: &M,
    form: &F,
    h: H,
    p: &[f64],
    fd_step: f64,
) -> Result<HamiltonianField, NumericsError>
where
    M: Manifold + ?Sized,
    F: ContactForm + ?Sized,
    H: Fn(&[f64]) -> f64,
{
    let data = local(manifold, form, p, fd_step)?;
    let (r, reeb_condition) = reeb_in_frame(&data)?;
    let m = data.a.len();
    let grad_ambient = gradient(&h, p, fd_step);
    let g = data.frame.transpose() * DVector::from_column_slice(&grad_ambient);
    let dh_r = g.dot(&r);
    let value = h(p);

    let mut rhs = DVector::zeros(m + 1);
    rhs.rows_mut(0, m).copy_from(&(&data.a * dh_r - &g));
    rhs[m] = value;
    let sol = solve_checked(&bordered(-&data.omega, &data.a), &rhs, SOLVE_TOL)?;
    let x = sol.x.rows(0, m).into_owned();
    let vector: Vec<f64> = (&data.frame * &x).iter().copied().collect();
    let reeb: Vec<f64> = (&data.frame * &r).iter().copied().collect();

    // Re-check both defining equations in ambient terms, away from the frame
    // coordinates the solve used.
    let mut residual = libm::fabs(dot(&data.alpha, &vector) - value);
    let xv = DVector::from_column_slice(&vector);
    let dh_reeb = dot(&grad_ambient, &reeb);
    for col in data.frame.column_iter() {
        let u: Vec<f64> = col.iter().copied().collect();
        let lhs = (xv.transpose() * &data.d_alpha * col)[(0, 0)];
        let rhs = dh_reeb * dot(&data.alpha, &u) - dot(&grad_ambient, &u);
        residual = residual.max(libm::fabs(lhs - rhs));
    }
    if !(residual < SOLVE_TOL) {
        return Err(NumericsError::IllConditioned {
            residual,
            condition: sol.condition,
        });
    }
    Ok(HamiltonianField {
        vector,
        reeb,
        residual,
        condition: sol.condition.max(reeb_condition),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::forms::{AlphaSt, BetaG};
    use crate::numerics::linalg::sup_distance;
    use crate::numerics::manifold::{ProductSphere, UnitSphere};
    use crate::numerics::sampling::rng;

    fn rotate(p: &[f64], scale: f64) -> Vec<f64> {
        p.chunks(2).flat_map(|c| [-scale * c[1], scale * c[0]]).collect()
    }

    #[test]
    fn sphere_reeb_field_is_twice_the_hopf_field() {
        let s = UnitSphere { d: 3 };
        let mut r = rng(5);
        for _ in 0..20 {
            let p = s.sample(&mut r);
            let reeb = reeb_vector_field(&s, &AlphaSt { d: 3 }, &p, 1e-5).unwrap();
            assert!(sup_distance(&reeb, &rotate(&p, 2.0)) < 1e-12);
            let f = hamiltonian_vector_field(&s, &AlphaSt { d: 3 }, |_| 1.0, &p, 1e-5).unwrap();
            assert!(sup_distance(&f.vector, &reeb) < 1e-12);
        }
    }

    #[test]
    fn zero_hamiltonian_gives_zero_field() {
        let s = UnitSphere { d: 2 };
        let p = s.sample(&mut rng(0));
        let f = hamiltonian_vector_field(&s, &AlphaSt { d: 2 }, |_| 0.0, &p, 1e-5).unwrap();
        assert!(f.vector.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn moment_component_generates_the_circle_action() {
        let s = UnitSphere { d: 2 };
        let p = s.sample(&mut rng(9));
        let h = |q: &[f64]| core::f64::consts::PI * (q[0] * q[0] + q[1] * q[1]);
        let f = hamiltonian_vector_field(&s, &AlphaSt { d: 2 }, h, &p, 1e-5).unwrap();
        let want = [-core::f64::consts::TAU * p[1], core::f64::consts::TAU * p[0], 0.0, 0.0];
        assert!(sup_distance(&f.vector, &want) < 1e-8);
    }

    #[test]
    fn product_form_is_contact_only_when_the_criterion_holds() {
        let m = ProductSphere { d: 1 };
        let beta = BetaG { d: 1, g: |h: f64| h, g_prime: |_| 1.0 };
        let mut r = rng(2);
        for _ in 0..20 {
            let p = m.sample(&mut r);
            reeb_vector_field(&m, &beta, &p, 1e-5).unwrap();
        }
        // g ≡ 0 leaves only the Liouville part, degenerate everywhere
        let flat = BetaG { d: 1, g: |_| 0.0, g_prime: |_| 0.0 };
        let p = [0.3, 0.6, 0.8, 0.0];
        assert!(matches!(reeb_vector_field(&m, &flat, &p, 1e-5), Err(NumericsError::IllConditioned { .. })));
    }
}
