//! Independent numerical ground truth for the analytic limits.
//!
//! Three levels, each checkable against the next:
//!
//! 1. [`toeplitz`] — finite blocks of the infinite chain, built from Fourier
//!    coefficients of the free-fermion symbol ([`symbol`]); converges to the
//!    limiting entropy as the block grows.
//! 2. [`bdg`] — finite open chains diagonalized as a quadratic fermion form
//!    after the Jordan-Wigner transformation; interior blocks converge to
//!    the infinite-chain answer.
//! 3. [`ed`] — brute-force exact diagonalization of the spin Hamiltonian for
//!    N ≤ 12, realizing S(ρ_A) = -Tr ρ_A ln ρ_A literally.

pub mod bdg;
pub mod ed;
mod lanczos;
pub mod symbol;
pub mod toeplitz;

use serde::Serialize;

use crate::error::XyError;
use crate::model::XYPoint;
use crate::Result;

/// Largest chain the exact-diagonalization path accepts (dense 2^N states).
pub const ED_MAX_SITES: usize = 12;

/// A finite open XY chain: N sites with the couplings of the infinite model
/// and no wrap-around bond. Open boundaries keep the Jordan-Wigner mapping
/// exact with no parity boundary term.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FiniteChain {
    point: XYPoint,
    n: usize,
}

impl FiniteChain {
    pub fn new(point: XYPoint, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(XyError::Domain("chain needs at least one site".into()));
        }
        Ok(Self { point, n })
    }

    pub fn point(&self) -> &XYPoint {
        &self.point
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn check_block(&self, block: &std::ops::Range<usize>) -> Result<()> {
        if block.start >= block.end || block.end > self.n {
            return Err(XyError::Domain(format!(
                "block {}..{} is not a nonempty subrange of 0..{}",
                block.start, block.end, self.n
            )));
        }
        Ok(())
    }
}

/// Binary entropy H(x) = -x ln x - (1-x) ln(1-x) in nats, with 0 ln 0 = 0.
pub(crate) fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.ln() - (1.0 - x) * (1.0 - x).ln()
}

/// Map a list of fermionic pairing amplitudes ν ∈ [0, 1] to the block
/// entropy Σ H((1+ν)/2). Values are validated against the physical window
/// [-1e-10, 1 + 1e-10] first — clamping must never mask a construction bug.
pub(crate) fn entropy_from_nu(nus: &[f64]) -> Result<f64> {
    for &nu in nus {
        if !(-1e-10..=1.0 + 1e-10).contains(&nu) {
            return Err(XyError::Numerical(format!(
                "pairing amplitude {nu} outside [0, 1] beyond tolerance"
            )));
        }
    }
    Ok(nus
        .iter()
        .map(|&nu| binary_entropy(0.5 * (1.0 + nu.clamp(0.0, 1.0))))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_basics() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn nu_validation() {
        assert!(entropy_from_nu(&[0.0, 0.5, 1.0]).is_ok());
        assert!(entropy_from_nu(&[1.0 + 1e-12]).is_ok());
        assert!(entropy_from_nu(&[1.1]).is_err());
        assert!(entropy_from_nu(&[-1e-3]).is_err());
    }
}
