//! Block entanglement entropy of the anisotropic XY spin chain.
//!
//! The model is the infinite chain
//!
//! ```text
//! H = - sum_n [ (1+γ) σˣ_n σˣ_{n+1} + (1-γ) σʸ_n σʸ_{n+1} + h σᶻ_n ]
//! ```
//!
//! with anisotropy `0 < γ ≤ 1` and transverse field `h ≥ 0`. In the double
//! scaling limit (block length L → ∞ on the infinite chain) the von Neumann
//! entropy of a block of neighboring spins approaches a constant S(γ, h).
//! This crate computes that constant by two independent analytic routes and
//! checks them against a chain of numerical oracles:
//!
//! - [`model`] — parameter domain, the three-case phase classification, the
//!   elliptic modulus k(γ, h), and the factorized ground states at the
//!   boundary field h = 2√(1-γ²);
//! - [`elliptic`] — complete elliptic integral of the first kind I(k) by
//!   AGM iteration, the complementary modulus, and the ratio τ₀ = I(k′)/I(k);
//! - [`entropy_limit`] — the limiting entropy as a convergent series over the
//!   tanh-spaced spectrum λ_m, as elliptic closed forms, and as a leading
//!   asymptote near the critical field h = 2;
//! - [`oracle`] — independent finite-size ground truth: Toeplitz correlation
//!   blocks of the infinite chain, Jordan-Wigner/Bogoliubov diagonalization
//!   of finite open chains, and brute-force exact diagonalization.
//!
//! Entropies are in nats throughout.

pub mod elliptic;
pub mod entropy_limit;
pub mod error;
pub mod model;
pub mod oracle;

pub use elliptic::{complete_elliptic_k, elliptic_bundle, EllipticData};
pub use entropy_limit::{
    entropy_asymptotic_near_h2, entropy_closed_form, entropy_series, entropy_series_with, lambda_m,
    EntropyResult, Method, SpectrumParams,
};
pub use error::XyError;
pub use model::{
    classify, factorized_state, factorizing_field, modulus_k, product_state_entropy, CaseLabel,
    ClassifyTolerances, FactorizedState, Regime, SignBranch, XYPoint,
};
pub use oracle::bdg::{bdg_finite_chain_entropy, bdg_ground_energy, bdg_solve, BdgSolution};
pub use oracle::ed::{
    ed_ground_state, exact_diag_entropy, state_block_entropy, state_complement_entropy, EdEntropy,
    GroundState,
};
pub use oracle::symbol::symbol_fourier;
pub use oracle::toeplitz::{correlation_block, toeplitz_block_entropy, CorrelationBlock};
pub use oracle::FiniteChain;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, XyError>;
