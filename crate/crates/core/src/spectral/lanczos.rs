//! Lanczos iteration for rho_2 and rho_n of a d-regular graph, with the
//! trivial eigenvectors projected out. The basis is not stored; extreme Ritz
//! values are accepted once their residual estimate is below tolerance.

use super::SpectralError;
use crate::structures::SimpleGraph;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_STEPS: usize = 2000;
const REL_TOL: f64 = 1e-10;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for e in basis {
        let c = dot(v, e);
        v.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
    }
}

fn checkpoint(k: usize) -> bool {
    if k <= 200 {
        k.is_multiple_of(25)
    } else {
        k.is_multiple_of(100)
    }
}

/// Returns (rho_2, rho_n).
pub(super) fn extreme_pair(g: &SimpleGraph, d: usize, colors: Option<&[u8]>) -> Result<(f64, f64), SpectralError> {
    let n = g.n();
    if n < 2 {
        return Ok((0.0, 0.0));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let mut deflate = vec![vec![scale; n]];
    if let Some(c) = colors {
        deflate.push(c.iter().map(|&s| if s == 0 { scale } else { -scale }).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2c);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    project_out(&mut v, &deflate);
    let norm = dot(&v, &v).sqrt();
    if norm < 1e-14 {
        // Only trivial eigenvectors exist.
        return Ok((0.0, 0.0));
    }
    v.iter_mut().for_each(|x| *x /= norm);
    let mut prev = vec![0.0; n];
    let mut w = vec![0.0; n];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let tol = REL_TOL * (d.max(1) as f64);
    let mut beta_prev = 0.0;
    let steps = MAX_STEPS.min(n);
    for k in 1..=steps {
        for (u, slot) in w.iter_mut().enumerate() {
            *slot = g.neighbors(u as u32).iter().map(|&x| v[x as usize]).sum();
        }
        let a = dot(&w, &v);
        for i in 0..n {
            w[i] -= a * v[i] + beta_prev * prev[i];
        }
        project_out(&mut w, &deflate);
        let b = dot(&w, &w).sqrt();
        alpha.push(a);
        // The Krylov space is exhausted: the Ritz values are exact.
        let exact = b < 1e-12 * (d.max(1) as f64) || k == n;
        if exact || checkpoint(k) {
            let m = alpha.len();
            let t = DMatrix::from_fn(m, m, |i, j| {
                if i == j {
                    alpha[i]
                } else if i + 1 == j {
                    beta[i]
                } else if j + 1 == i {
                    beta[j]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let (mut hi, mut lo) = (0, 0);
            for i in 0..m {
                if eig.eigenvalues[i] > eig.eigenvalues[hi] {
                    hi = i;
                }
                if eig.eigenvalues[i] < eig.eigenvalues[lo] {
                    lo = i;
                }
            }
            let resid = |i: usize| b * eig.eigenvectors[(m - 1, i)].abs();
            if exact || (resid(hi) <= tol && resid(lo) <= tol) {
                let rho2 = eig.eigenvalues[hi];
                let rho_n = if colors.is_some() { -(d as f64) } else { eig.eigenvalues[lo] };
                return Ok((rho2, rho_n));
            }
        }
        beta.push(b);
        for i in 0..n {
            prev[i] = v[i];
            v[i] = w[i] / b;
        }
        beta_prev = b;
    }
    Err(SpectralError::NoConvergence { steps })
}
