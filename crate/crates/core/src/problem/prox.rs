//! Proximal operators: each returns
//! `argmin_x φ(x) + λᵀx + (ρ/2)||x − X̂||²`.

use alloc::vec::Vec;

use super::HingePower;
use crate::math;

/// `φ(x) = ½xᵀQx + cᵀx` with `Q` row-major `n×n`: solves
/// `(Q + ρI)x = ρX̂ − λ − c` by Cholesky factorization.
pub fn prox_quadratic(q: &[f64], c: &[f64], lambda: &[f64], xhat: &[f64], rho: f64, out: &mut [f64]) {
    let n = out.len();
    let mut l = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = q[i * n + j];
            if i == j {
                s += rho;
            }
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                assert!(s > 0.0, "Q + rho·I is not positive definite");
                l[i * n + i] = math::sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    for i in 0..n {
        let mut s = rho * xhat[i] - lambda[i] - c[i];
        for k in 0..i {
            s -= l[i * n + k] * out[k];
        }
        out[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = out[i];
        for k in i + 1..n {
            s -= l[k * n + i] * out[k];
        }
        out[i] = s / l[i * n + i];
    }
}

/// `φ(x) = w·max(0, aᵀx + b)^p`.
///
/// With `u = X̂ − λ/ρ`: if the hinge is inactive at `u`, `u` is optimal.
/// Otherwise the smooth active branch is tried, and if it lands on the
/// inactive side the optimum lies on the hyperplane `aᵀx + b = 0`.
pub fn prox_hinge(
    weight: f64,
    a: &[f64],
    b: f64,
    power: HingePower,
    lambda: &[f64],
    xhat: &[f64],
    rho: f64,
    out: &mut [f64],
) {
    for k in 0..out.len() {
        out[k] = xhat[k] - lambda[k] / rho;
    }
    let norm2: f64 = a.iter().map(|v| v * v).sum();
    let s = dot(a, out) + b;
    if weight == 0.0 || norm2 == 0.0 || s <= 0.0 {
        return;
    }
    let t = match power {
        HingePower::Linear => {
            let t = weight / rho;
            if s - t * norm2 >= 0.0 {
                t
            } else {
                s / norm2
            }
        }
        // The smooth branch never crosses the hyperplane.
        HingePower::Squared => 2.0 * weight * s / (rho + 2.0 * weight * norm2),
    };
    for k in 0..out.len() {
        out[k] -= t * a[k];
    }
}

/// Projection of `X̂ − λ/ρ` onto `{x ≥ 0, Σx = 1}`, or onto
/// `{x ≥ 0, Σx ≤ 1}` when `capped` (the remaining mass belongs to
/// coordinates outside the subproblem).
pub fn prox_simplex(capped: bool, lambda: &[f64], xhat: &[f64], rho: f64, out: &mut [f64]) {
    for k in 0..out.len() {
        out[k] = xhat[k] - lambda[k] / rho;
    }
    if capped {
        let clipped: f64 = out.iter().map(|&v| v.max(0.0)).sum();
        if clipped <= 1.0 {
            out.iter_mut().for_each(|v| *v = v.max(0.0));
            return;
        }
    }
    project_simplex(out);
}

/// In-place Euclidean projection onto the probability simplex by
/// sort-and-threshold.
pub(crate) fn project_simplex(x: &mut [f64]) {
    let mut sorted: Vec<f64> = x.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.iter_mut().for_each(|v| *v = (*v - theta).max(0.0));
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
