//! Lanczos iteration for the lowest eigenpairs of large symmetric operators.
//!
//! Used by the exact-diagonalization path when the Hilbert space outgrows
//! dense solvers. Full reorthogonalization keeps the basis clean at these
//! sizes (dim ≤ 4096), and the starting vector is a fixed pseudo-random
//! sequence so results are deterministic.

use nalgebra::{DMatrix, DVector};

use crate::error::XyError;
use crate::Result;

pub(crate) struct LanczosOutcome {
    pub eigenvalues: Vec<f64>,
    pub ground_vector: DVector<f64>,
}

fn seed_vector(dim: usize) -> DVector<f64> {
    // fixed quasi-random entries; generic with respect to symmetry sectors
    let mut v = DVector::from_fn(dim, |i, _| ((i as f64 + 1.0) * 0.7390851332151607).sin());
    v /= v.norm();
    v
}

/// Lowest `want` eigenvalues and the ground eigenvector of a symmetric
/// operator given as a matrix-vector product.
pub(crate) fn lowest_eigenpairs<F>(
    matvec: F,
    dim: usize,
    want: usize,
    tol: f64,
) -> Result<LanczosOutcome>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    let max_basis = dim.min(320);
    let mut basis: Vec<DVector<f64>> = vec![seed_vector(dim)];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    for step in 0..max_basis {
        let v = &basis[step];
        let mut w = matvec(v);
        let alpha = w.dot(v);
        alphas.push(alpha);
        w -= v * alpha;
        if step > 0 {
            let prev = &basis[step - 1];
            w -= prev * betas[step - 1];
        }
        // full reorthogonalization, twice for safety
        for _ in 0..2 {
            for b in &basis {
                let proj = w.dot(b);
                w -= b * proj;
            }
        }
        let beta = w.norm();

        // check convergence of the lowest `want` Ritz pairs
        let m = alphas.len();
        if m > want || beta < 1e-14 {
            let tri = tridiagonal(&alphas, &betas);
            let eig = tri.symmetric_eigen();
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
            let scale = eig
                .eigenvalues
                .iter()
                .fold(1.0f64, |acc, &e| acc.max(e.abs()));
            let converged = order.iter().take(want).all(|&idx| {
                let bottom = eig.eigenvectors[(m - 1, idx)].abs();
                beta * bottom <= tol * scale
            });
            if converged || beta < 1e-14 || m == max_basis {
                if !converged && beta >= 1e-14 {
                    return Err(XyError::Numerical(format!(
                        "Lanczos failed to converge in {max_basis} steps (residual {beta:.3e})"
                    )));
                }
                let eigenvalues: Vec<f64> = order
                    .iter()
                    .take(want.min(m))
                    .map(|&idx| eig.eigenvalues[idx])
                    .collect();
                let ground_col = order[0];
                let mut ground = DVector::zeros(dim);
                for (j, b) in basis.iter().enumerate().take(m) {
                    ground += b * eig.eigenvectors[(j, ground_col)];
                }
                ground /= ground.norm();
                return Ok(LanczosOutcome {
                    eigenvalues,
                    ground_vector: ground,
                });
            }
        }

        basis.push(&w / beta);
        betas.push(beta);
    }
    unreachable!("loop returns before exhausting the basis");
}

fn tridiagonal(alphas: &[f64], betas: &[f64]) -> DMatrix<f64> {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for (i, &a) in alphas.iter().enumerate() {
        t[(i, i)] = a;
    }
    for (i, &b) in betas.iter().enumerate().take(m.saturating_sub(1)) {
        t[(i, i + 1)] = b;
        t[(i + 1, i)] = b;
    }
    t
}
