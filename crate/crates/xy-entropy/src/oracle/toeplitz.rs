//! Finite-block entropy of the infinite chain from Toeplitz correlation
//! matrices.
//!
//! The L×L block T with entries T_{jl} = ĝ(j-l) collects the ground-state
//! Majorana cross-correlations of L neighboring sites. Its singular values
//! ν_j ∈ [0, 1] are the pairing amplitudes of the reduced state, and
//!
//! ```text
//! S_L = Σ_j H((1 + ν_j)/2),   H(x) = -x ln x - (1-x) ln(1-x)
//! ```
//!
//! is nondecreasing in L and converges (exponentially, at gapped points) to
//! the limiting entropy of the analytic routes.

use nalgebra::DMatrix;

use crate::error::XyError;
use crate::model::XYPoint;
use crate::oracle::{entropy_from_nu, symbol::symbol_coeffs};
use crate::Result;

/// An L×L real Toeplitz correlation block.
#[derive(Debug, Clone)]
pub struct CorrelationBlock {
    size: usize,
    entries: DMatrix<f64>,
}

impl CorrelationBlock {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Singular values by eigen-decomposition of TᵀT (T is real but not
    /// symmetric); eigenvalues below 1e-14 are treated as exact zeros.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let gram = self.entries.transpose() * &self.entries;
        let eigs = gram.symmetric_eigenvalues();
        let mut nus: Vec<f64> = eigs
            .iter()
            .map(|&e| {
                if e < -1e-10 {
                    Err(XyError::Numerical(format!(
                        "Gram matrix produced negative eigenvalue {e}"
                    )))
                } else {
                    Ok(if e < 1e-14 { 0.0 } else { e.sqrt() })
                }
            })
            .collect::<Result<_>>()?;
        nus.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(nus)
    }

    /// Block entropy Σ H((1+ν)/2) of this correlation block.
    pub fn entropy(&self) -> Result<f64> {
        entropy_from_nu(&self.singular_values()?)
    }
}

/// Build the L×L correlation block at a non-critical point.
pub fn correlation_block(p: &XYPoint, l: usize) -> Result<CorrelationBlock> {
    if l == 0 {
        return Err(XyError::Domain("block size must be at least 1".into()));
    }
    let n_max = l - 1;
    let coeffs = symbol_coeffs(p, n_max, 256)?;
    let at = |n: i64| coeffs[(n + n_max as i64) as usize];
    let entries = DMatrix::from_fn(l, l, |j, c| at(j as i64 - c as i64));
    Ok(CorrelationBlock { size: l, entries })
}

/// Entropy of an L-site block of the infinite chain.
pub fn toeplitz_block_entropy(p: &XYPoint, l: usize) -> Result<f64> {
    correlation_block(p, l)?.entropy()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn pt(gamma: f64, h: f64) -> XYPoint {
        XYPoint::new(gamma, h).unwrap()
    }

    #[test]
    fn single_site_polarizes_at_strong_field() {
        let s = toeplitz_block_entropy(&pt(0.5, 1e6), 1).unwrap();
        assert!(s < 1e-10, "S_1 = {s}");
    }

    #[test]
    fn ising_zero_field_block_entropy_is_ln2() {
        // T is a pure shift: L-1 unit singular values and one zero, so every
        // block carries exactly the ln 2 of the symmetric cat state.
        for l in [1, 2, 5, 9] {
            let s = toeplitz_block_entropy(&pt(1.0, 0.0), l).unwrap();
            assert!((s - LN_2).abs() < 1e-12, "L={l}: {s}");
        }
    }

    #[test]
    fn toeplitz_structure_and_realness() {
        let b = correlation_block(&pt(0.5, 1.0), 6).unwrap();
        let m = b.entries();
        for j in 1..6 {
            for l in 1..6 {
                assert_eq!(m[(j, l)], m[(j - 1, l - 1)], "constant diagonals");
            }
        }
        let nus = b.singular_values().unwrap();
        for &nu in &nus {
            assert!((0.0..=1.0 + 1e-10).contains(&nu));
        }
    }

    #[test]
    fn block_entropy_grows_and_approaches_the_limit() {
        let p = pt(0.5, 1.9);
        let closed = crate::entropy_limit::entropy_closed_form(&p).unwrap().value;
        let s10 = toeplitz_block_entropy(&p, 10).unwrap();
        let s20 = toeplitz_block_entropy(&p, 20).unwrap();
        let s40 = toeplitz_block_entropy(&p, 40).unwrap();
        assert!(s10 < s20 && s20 < s40, "monotone: {s10} {s20} {s40}");
        assert!(s40 < closed + 1e-12);
        assert!((s40 - closed).abs() < 1e-3, "S_40 = {s40} vs {closed}");
        // successive increments shrink by a healthy geometric factor
        assert!((s40 - s20) < 0.2 * (s20 - s10));
    }

    #[test]
    fn factorizing_point_approaches_ln2_from_below() {
        let p = pt(0.5, 3.0f64.sqrt());
        let s20 = toeplitz_block_entropy(&p, 20).unwrap();
        assert!((s20 - LN_2).abs() < 1e-6, "S_20 = {s20}");
    }
}
