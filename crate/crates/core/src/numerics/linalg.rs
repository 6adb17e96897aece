//! Dense helpers on top of `nalgebra`: tangent frames, checked solves and
//! central finite differences.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use super::NumericsError;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| libm::fabs(x - y)).fold(0.0, f64::max)
}

pub fn axpy(p: &[f64], s: f64, v: &[f64]) -> Vec<f64> {
    p.iter().zip(v).map(|(x, y)| x + s * y).collect()
}

/// Orthonormal basis of `normal⊥`, as the columns of an `n × (n−1)` matrix.
///
/// Built from the Householder reflection that sends the dominant unit
/// vector to the normal direction, so nearby normals give nearby frames.
pub fn tangent_frame(normal: &[f64]) -> Result<DMatrix<f64>, NumericsError> {
    let n = normal.len();
    let len = norm(normal);
    if n == 0 || !(len > 1e-14) {
        return Err(NumericsError::SingularTangentFrame);
    }
    let unit: Vec<f64> = normal.iter().map(|x| x / len).collect();
    let k = (0..n)
        .max_by(|&a, &b| libm::fabs(unit[a]).total_cmp(&libm::fabs(unit[b])))
        .expect("nonempty");
    let mut v = unit.clone();
    v[k] += libm::copysign(1.0, unit[k]);
    let vv = dot(&v, &v);
    let mut frame = DMatrix::zeros(n, n - 1);
    let mut col = 0;
    for j in 0..n {
        if j == k {
            continue;
        }
        for i in 0..n {
            let delta = if i == j { 1.0 } else { 0.0 };
            frame[(i, col)] = delta - 2.0 * v[i] * v[j] / vv;
        }
        col += 1;
    }
    Ok(frame)
}

/// Ratio of extreme singular values; infinite for singular input.
pub fn condition_number(a: &DMatrix<f64>) -> f64 {
    let sv = a.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Solution of a square system with its relative residual
/// `‖Ax − b‖ / max(1, ‖b‖)` and the condition number of `A`.
#[derive(Debug, Clone)]
pub struct CheckedSolve {
    pub x: DVector<f64>,
    pub residual: f64,
    pub condition: f64,
}

pub fn solve_checked(a: &DMatrix<f64>, b: &DVector<f64>, tol: f64) -> Result<CheckedSolve, NumericsError> {
    let condition = condition_number(a);
    let Some(x) = a.clone().lu().solve(b) else {
        return Err(NumericsError::IllConditioned {
            residual: f64::INFINITY,
            condition,
        });
    };
    let residual = (a * &x - b).norm() / b.norm().max(1.0);
    if !(residual < tol) || !condition.is_finite() || condition > 1e12 {
        return Err(NumericsError::IllConditioned { residual, condition });
    }
    Ok(CheckedSolve { x, residual, condition })
}

/// Central difference of a scalar function, one coordinate at a time.
pub fn gradient<F: Fn(&[f64]) -> f64>(f: F, p: &[f64], step: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    (0..p.len())
        .map(|i| {
            q[i] = p[i] + step;
            let up = f(&q);
            q[i] = p[i] - step;
            let down = f(&q);
            q[i] = p[i];
            (up - down) / (2.0 * step)
        })
        .collect()
}

/// Central difference of a vector function along `v`.
///
/// Also returns the realized secant direction `((p + hv) − (p − hv)) / 2h`
/// as rounded in floating point. Pairing against it instead of `v` removes
/// the rounding of the perturbed points from the comparison.
pub fn directional_derivative<F: Fn(&[f64]) -> Vec<f64>>(
    f: F,
    p: &[f64],
    v: &[f64],
    step: f64,
) -> (Vec<f64>, Vec<f64>) {
    let up = axpy(p, step, v);
    let down = axpy(p, -step, v);
    let fu = f(&up);
    let fd = f(&down);
    let df = fu.iter().zip(&fd).map(|(a, b)| (a - b) / (2.0 * step)).collect();
    let realized = up.iter().zip(&down).map(|(a, b)| (a - b) / (2.0 * step)).collect();
    (df, realized)
}
