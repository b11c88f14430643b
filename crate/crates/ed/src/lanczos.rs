//! Lanczos for the lowest eigenpair of a real symmetric operator.
//!
//! Full reorthogonalization (two Gram-Schmidt passes), explicit restart from
//! the current Ritz vector when the Krylov budget runs out.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EdError, Result};
use crate::hamiltonian::dot;

#[derive(Debug, Clone)]
pub struct LanczosOptions {
    pub max_krylov: usize,
    pub max_restarts: usize,
    /// Bound on `‖Hv − Ev‖`.
    pub tolerance: f64,
    pub seed: u64,
    /// Memory ceiling for the Krylov basis.
    pub memory_bytes: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_krylov: 100,
            max_restarts: 30,
            tolerance: 1e-8,
            seed: 0x5eed_1a2c,
            memory_bytes: 512 << 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LanczosOutcome {
    pub eigenvalue: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub restarts: usize,
    /// Lowest Ritz value at the end of each cycle.
    pub ritz_history: Vec<f64>,
}

pub fn lowest_eigenpair<F>(dim: usize, apply: F, options: &LanczosOptions) -> Result<LanczosOutcome>
where
    F: Fn(&[f64], &mut [f64]),
{
    assert!(dim > 0, "empty operator");
    let mut w = vec![0.0; dim];
    if dim == 1 {
        apply(&[1.0], &mut w);
        return Ok(LanczosOutcome {
            eigenvalue: w[0],
            vector: vec![1.0],
            residual: 0.0,
            iterations: 1,
            restarts: 0,
            ritz_history: vec![w[0]],
        });
    }

    let by_memory = options.memory_bytes / (8 * dim);
    let krylov = options.max_krylov.min(by_memory).clamp(16, 100).min(dim);

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut start: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    normalize(&mut start);

    let mut history = Vec::new();
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    for restart in 0..=options.max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![start];
        let mut alpha = Vec::with_capacity(krylov);
        let mut beta: Vec<f64> = Vec::with_capacity(krylov);
        let mut ritz;
        loop {
            let j = basis.len() - 1;
            apply(&basis[j], &mut w);
            iterations += 1;
            let a = dot(&basis[j], &w);
            alpha.push(a);
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b = dot(&w, &w).sqrt();
            ritz = lowest_ritz(&alpha, &beta);
            let estimate = b * ritz.1[j].abs();
            if estimate < 0.1 * options.tolerance || b < 1e-14 || basis.len() == krylov {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }

        let mut x = vec![0.0; dim];
        for (v, &s) in basis.iter().zip(&ritz.1) {
            x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += s * vi);
        }
        normalize(&mut x);
        apply(&x, &mut w);
        let energy = dot(&x, &w);
        residual = w
            .iter()
            .zip(&x)
            .map(|(hx, xi)| (hx - energy * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        history.push(energy);
        if residual <= options.tolerance {
            return Ok(LanczosOutcome {
                eigenvalue: energy,
                vector: x,
                residual,
                iterations,
                restarts: restart,
                ritz_history: history,
            });
        }
        start = x;
    }
    Err(EdError::NotConverged {
        iterations,
        residual,
        ritz_history: history,
    })
}

fn lowest_ritz(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let n = alpha.len();
    let mut t = DMatrix::zeros(n, n);
    for i in 0..n {
        t[(i, i)] = alpha[i];
        if i + 1 < n {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (k, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty tridiagonal");
    (value, eig.eigenvectors.column(k).iter().copied().collect())
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    v.iter_mut().for_each(|x| *x /= n);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagonal_operator(d: Vec<f64>) -> impl Fn(&[f64], &mut [f64]) {
        move |x, y| {
            for i in 0..x.len() {
                y[i] = d[i] * x[i];
            }
        }
    }

    #[test]
    fn finds_the_bottom_of_a_diagonal_matrix() {
        let d: Vec<f64> = (0..500)
            .map(|i| ((i * 37) % 500) as f64 * 0.01 - 1.0)
            .collect();
        let out = lowest_eigenpair(500, diagonal_operator(d), &LanczosOptions::default()).unwrap();
        assert!((out.eigenvalue + 1.0).abs() < 1e-12);
        assert!(out.residual <= 1e-8);
    }

    #[test]
    fn small_spaces_are_exhausted_exactly() {
        let op = |x: &[f64], y: &mut [f64]| {
            y[0] = 2.0 * x[0] + x[1];
            y[1] = x[0] + 2.0 * x[1];
            y[2] = 5.0 * x[2];
        };
        let out = lowest_eigenpair(3, op, &LanczosOptions::default()).unwrap();
        assert!((out.eigenvalue - 1.0).abs() < 1e-13);
    }

    #[test]
    fn iteration_cap_reports_history() {
        let d: Vec<f64> = (0..2000).map(|i| (i as f64 * 1e-4).sin()).collect();
        let options = LanczosOptions {
            max_krylov: 16,
            max_restarts: 1,
            tolerance: 1e-14,
            ..LanczosOptions::default()
        };
        match lowest_eigenpair(2000, diagonal_operator(d), &options) {
            Err(EdError::NotConverged { ritz_history, .. }) => assert_eq!(ritz_history.len(), 2),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
