//! Free-fermion solution of finite open chains.
//!
//! Jordan-Wigner maps the open XY chain onto the quadratic form
//!
//! ```text
//! H = Σ_{ij} A_{ij} c†_i c_j + 1/2 Σ_{ij} B_{ij} (c†_i c†_j - c_i c_j) + h N
//! ```
//!
//! with A symmetric (hopping -2 on the first off-diagonals, -2h on the
//! diagonal) and B antisymmetric (pairing ∓2γ). The singular value
//! decomposition A - B = U Λ Vᵀ solves the chain: Λ are the nonnegative
//! quasiparticle energies and the ground state is the quasiparticle vacuum,
//! whose only nontrivial Majorana correlations are
//!
//! ```text
//! G_{ij} = ⟨(c†_i - c_i)(c†_j + c_j)⟩ = -(V Uᵀ)_{ij}.
//! ```
//!
//! Restricting the Majorana correlation matrix to a block and pairing its
//! ±iν eigenvalues yields the block entropy Σ H((1+ν)/2).

use nalgebra::DMatrix;
use std::ops::Range;

use crate::error::XyError;
use crate::oracle::{entropy_from_nu, FiniteChain};
use crate::Result;

/// Solved quadratic form of a finite chain: the Majorana cross-correlation
/// matrix G plus the quasiparticle energies needed for energy checks and
/// degeneracy detection.
#[derive(Debug, Clone)]
pub struct BdgSolution {
    n: usize,
    g: DMatrix<f64>,
    ground_energy: f64,
    min_quasiparticle_energy: f64,
}

fn quadratic_form(chain: &FiniteChain) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = chain.len();
    let gamma = chain.point().gamma();
    let h = chain.point().h();
    let mut a = DMatrix::zeros(n, n);
    let mut b = DMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = -2.0 * h;
    }
    for i in 0..n.saturating_sub(1) {
        a[(i, i + 1)] = -2.0;
        a[(i + 1, i)] = -2.0;
        b[(i, i + 1)] = -2.0 * gamma;
        b[(i + 1, i)] = 2.0 * gamma;
    }
    (a, b)
}

/// Diagonalize the chain's quadratic form.
pub fn bdg_solve(chain: &FiniteChain) -> Result<BdgSolution> {
    let n = chain.len();
    let (a, b) = quadratic_form(chain);
    let m = &a - &b;
    let svd = m.svd(true, true);
    let u = svd
        .u
        .ok_or_else(|| XyError::Numerical("SVD did not return U".into()))?;
    let v_t = svd
        .v_t
        .ok_or_else(|| XyError::Numerical("SVD did not return V^T".into()))?;
    let g = -(v_t.transpose() * u.transpose());
    let lambda_sum: f64 = svd.singular_values.iter().sum();
    let min_energy = svd
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let ground_energy = 0.5 * (a.trace() - lambda_sum) + chain.point().h() * n as f64;
    Ok(BdgSolution {
        n,
        g,
        ground_energy,
        min_quasiparticle_energy: min_energy,
    })
}

impl BdgSolution {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ground-state energy of the chain (including the constant from normal
    /// ordering the field term).
    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// Smallest quasiparticle energy; an exponentially small value signals
    /// near-degenerate ground states (Majorana edge modes).
    pub fn min_quasiparticle_energy(&self) -> f64 {
        self.min_quasiparticle_energy
    }

    /// Majorana cross-correlation matrix G.
    pub fn correlations(&self) -> &DMatrix<f64> {
        &self.g
    }

    /// Entropy of a contiguous block of sites (0-based, half-open).
    ///
    /// Builds the 2l×2l antisymmetric Majorana correlation matrix of the
    /// block; its singular values come in pairs ν, ν (the ±iν eigenvalues),
    /// so the H-sum over all of them is halved.
    pub fn block_entropy(&self, block: Range<usize>) -> Result<f64> {
        if block.start >= block.end || block.end > self.n {
            return Err(XyError::Domain(format!(
                "block {}..{} is not a nonempty subrange of 0..{}",
                block.start, block.end, self.n
            )));
        }
        let l = block.len();
        let mut gamma_m = DMatrix::zeros(2 * l, 2 * l);
        for (bi, i) in block.clone().enumerate() {
            for (bj, j) in block.clone().enumerate() {
                let g = self.g[(j, i)];
                gamma_m[(2 * bi, 2 * bj + 1)] = -g;
                gamma_m[(2 * bj + 1, 2 * bi)] = g;
            }
        }
        let paired = gamma_m.singular_values();
        let mut sorted: Vec<f64> = paired.iter().cloned().collect();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        // each ν appears twice; take one representative per pair
        let nus: Vec<f64> = sorted.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect();
        entropy_from_nu(&nus)
    }
}

/// Ground-state entropy of a contiguous block of a finite open chain.
pub fn bdg_finite_chain_entropy(chain: &FiniteChain, block: Range<usize>) -> Result<f64> {
    chain.check_block(&block)?;
    bdg_solve(chain)?.block_entropy(block)
}

/// Ground-state energy of the finite open chain from the quadratic form.
pub fn bdg_ground_energy(chain: &FiniteChain) -> Result<f64> {
    Ok(bdg_solve(chain)?.ground_energy())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::XYPoint;

    fn chain(gamma: f64, h: f64, n: usize) -> FiniteChain {
        FiniteChain::new(XYPoint::new(gamma, h).unwrap(), n).unwrap()
    }

    #[test]
    fn two_site_energy_is_analytic() {
        // two-site spectrum: ∓2 sqrt(h^2 + gamma^2) in the (↑↑, ↓↓) sector
        // and ∓2 in the (↑↓, ↓↑) sector
        for &(gamma, h) in &[(0.5, 1.0), (0.5, 4.0), (0.9, 0.3)] {
            let e = bdg_ground_energy(&chain(gamma, h, 2)).unwrap();
            let expect = -2.0 * (h * h + gamma * gamma).sqrt().max(1.0);
            assert!(
                (e - expect).abs() < 1e-12,
                "E({gamma},{h}) = {e} vs {expect}"
            );
        }
    }

    #[test]
    fn full_chain_block_is_pure() {
        for &(gamma, h, n) in &[(0.5, 1.0, 6), (0.5, 2.5, 5), (1.0, 0.7, 4)] {
            let s = bdg_finite_chain_entropy(&chain(gamma, h, n), 0..n).unwrap();
            assert!(s.abs() < 1e-10, "global block entropy {s} should vanish");
        }
    }

    #[test]
    fn strong_field_polarizes() {
        let s = bdg_finite_chain_entropy(&chain(0.5, 4.0, 2), 0..1).unwrap();
        assert!(s < 0.05, "strong field single-site entropy {s}");
        let s = bdg_finite_chain_entropy(&chain(0.5, 1e5, 8), 2..6).unwrap();
        assert!(s < 1e-8);
    }

    #[test]
    fn complement_blocks_match() {
        let solved = bdg_solve(&chain(0.5, 1.0, 8)).unwrap();
        let a = solved.block_entropy(0..3).unwrap();
        let b = solved.block_entropy(3..8).unwrap();
        assert!((a - b).abs() < 1e-10, "complement symmetry: {a} vs {b}");
    }

    #[test]
    fn interior_block_approaches_infinite_chain() {
        // interior blocks of a long open chain converge to the Toeplitz value
        let p = XYPoint::new(0.5, 2.5).unwrap();
        let solved = bdg_solve(&FiniteChain::new(p, 60).unwrap()).unwrap();
        let s = solved.block_entropy(25..35).unwrap();
        let t = crate::oracle::toeplitz::toeplitz_block_entropy(&p, 10).unwrap();
        assert!((s - t).abs() < 1e-8, "interior {s} vs Toeplitz {t}");
    }

    #[test]
    fn near_degenerate_edge_mode_in_the_ordered_phase() {
        let solved = bdg_solve(&chain(1.0, 0.5, 12)).unwrap();
        assert!(
            solved.min_quasiparticle_energy() < 1e-3,
            "Ising phase edge mode should be nearly zero, got {}",
            solved.min_quasiparticle_energy()
        );
    }

    #[test]
    fn invalid_blocks_are_rejected() {
        let c = chain(0.5, 1.0, 4);
        assert!(bdg_finite_chain_entropy(&c, 2..2).is_err());
        assert!(bdg_finite_chain_entropy(&c, 0..5).is_err());
    }
}
