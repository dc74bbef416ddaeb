//! Physical parameters, phase classification, and the elliptic modulus.
//!
//! The phase diagram of the XY chain splits into three regimes:
//!
//! - Case 1a, moderate field: `2√(1-γ²) < h < 2`
//! - Case 1b, weak field (including h = 0): `0 ≤ h < 2√(1-γ²)`
//! - Case 2, strong field: `h > 2`
//!
//! The boundary between 1a and 1b is the factorizing field `h = 2√(1-γ²)`,
//! where the ground state degenerates into two product states and the
//! limiting block entropy equals ln 2. The lines h = 2 and γ = 0 are phase
//! transitions where the limiting entropy diverges.

use serde::Serialize;

use crate::error::XyError;
use crate::Result;

/// A point (γ, h) of the phase diagram.
///
/// Invariants enforced at construction: `0 < γ ≤ 1` and `h ≥ 0`. γ = 1 is
/// accepted as the Ising limit; negative fields are rejected rather than
/// mapped by symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XYPoint {
    gamma: f64,
    h: f64,
}

impl XYPoint {
    pub fn new(gamma: f64, h: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 || gamma > 1.0 {
            return Err(XyError::InvalidPoint(format!(
                "anisotropy gamma must satisfy 0 < gamma <= 1, got {gamma}"
            )));
        }
        if !h.is_finite() || h < 0.0 {
            return Err(XyError::InvalidPoint(format!(
                "magnetic field h must satisfy h >= 0, got {h}"
            )));
        }
        Ok(Self { gamma, h })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

/// Phase-diagram label. Boundary and critical labels take precedence over
/// the open cases inside their tolerance bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    Case1a,
    Case1b,
    Case2,
    /// h = 2√(1-γ²): degenerate factorized ground states, S = ln 2.
    FactorizingBoundary,
    /// h = 2: phase transition, S diverges.
    CriticalH,
    /// γ = 0: the XX line, S diverges.
    CriticalGamma,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Case1a => "1a",
            CaseLabel::Case1b => "1b",
            CaseLabel::Case2 => "2",
            CaseLabel::FactorizingBoundary => "boundary",
            CaseLabel::CriticalH => "critical-h",
            CaseLabel::CriticalGamma => "critical-gamma",
        }
    }
}

/// Classification of a point: case label plus the spectral parity σ.
///
/// σ = 1 in Case 1 (both 1a and 1b, and the factorizing boundary between
/// them), σ = 0 in Case 2. Critical labels carry no σ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Regime {
    pub label: CaseLabel,
    pub sigma: Option<u8>,
}

/// Tolerance bands for boundary/critical classification. These are sharp
/// (default 1e-9, relative); the much wider guard band used for reporting
/// near-critical points lives in the consumer, not here.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyTolerances {
    /// Band around the factorizing field h = 2√(1-γ²).
    pub boundary: f64,
    /// Band around the critical field h = 2.
    pub critical_field: f64,
    /// γ at or below this is classified as the critical XX line.
    pub critical_gamma: f64,
}

impl Default for ClassifyTolerances {
    fn default() -> Self {
        Self {
            boundary: 1e-9,
            critical_field: 1e-9,
            critical_gamma: 1e-9,
        }
    }
}

/// The factorizing field h = 2√(1-γ²) for anisotropy γ ∈ (0, 1].
pub fn factorizing_field(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma <= 0.0 || gamma > 1.0 {
        return Err(XyError::Domain(format!(
            "factorizing_field requires 0 < gamma <= 1, got {gamma}"
        )));
    }
    Ok(2.0 * ((1.0 - gamma) * (1.0 + gamma)).sqrt())
}

/// Classify a point of the phase diagram.
///
/// Total and deterministic: exactly one label is returned, with boundary and
/// critical labels winning inside their tolerance bands.
pub fn classify(p: &XYPoint, tol: &ClassifyTolerances) -> Regime {
    let gamma = p.gamma();
    let h = p.h();
    if gamma <= tol.critical_gamma {
        return Regime {
            label: CaseLabel::CriticalGamma,
            sigma: None,
        };
    }
    // relative band: the critical field sits at h = 2
    if (h - 2.0).abs() <= 2.0 * tol.critical_field {
        return Regime {
            label: CaseLabel::CriticalH,
            sigma: None,
        };
    }
    let hf = 2.0 * ((1.0 - gamma) * (1.0 + gamma)).sqrt();
    if (h - hf).abs() <= tol.boundary * hf.max(1.0) {
        return Regime {
            label: CaseLabel::FactorizingBoundary,
            sigma: Some(1),
        };
    }
    if h < hf {
        Regime {
            label: CaseLabel::Case1b,
            sigma: Some(1),
        }
    } else if h < 2.0 {
        Regime {
            label: CaseLabel::Case1a,
            sigma: Some(1),
        }
    } else {
        Regime {
            label: CaseLabel::Case2,
            sigma: Some(0),
        }
    }
}

/// The elliptic modulus k(γ, h) of the regime's branch:
///
/// ```text
/// Case 1a:  k = √((h/2)² + γ² - 1) / γ
/// Case 1b:  k = √(1 - γ² - (h/2)²) / √(1 - (h/2)²)
/// Case 2:   k = γ / √((h/2)² + γ² - 1)
/// ```
///
/// Always in [0, 1), with k = 0 exactly on the factorizing boundary. On the
/// critical lines k → 1 and the entropy diverges, so those return a
/// divergence error (with the near-critical asymptote attached when h ≠ 2
/// exactly).
pub fn modulus_k(p: &XYPoint, r: &Regime) -> Result<f64> {
    let gamma = p.gamma();
    let h2 = p.h() / 2.0;
    let k = match r.label {
        CaseLabel::FactorizingBoundary => 0.0,
        CaseLabel::Case1a => (h2 * h2 + gamma * gamma - 1.0).max(0.0).sqrt() / gamma,
        CaseLabel::Case1b => ((1.0 - gamma * gamma - h2 * h2).max(0.0) / (1.0 - h2 * h2)).sqrt(),
        CaseLabel::Case2 => gamma / (h2 * h2 + gamma * gamma - 1.0).sqrt(),
        CaseLabel::CriticalH => {
            return Err(XyError::Divergent {
                gamma,
                h: p.h(),
                reason: "phase transition at h = 2 (k -> 1)",
                estimate: crate::entropy_limit::near_h2_formal_estimate(p),
            });
        }
        CaseLabel::CriticalGamma => {
            return Err(XyError::Divergent {
                gamma,
                h: p.h(),
                reason: "critical XX line gamma = 0 (k -> 1)",
                estimate: None,
            });
        }
    };
    debug_assert!((0.0..1.0).contains(&k), "modulus out of range: {k}");
    Ok(k)
}

/// Which of the two degenerate product ground states at the factorizing
/// field: they differ by the sign of the staggered component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignBranch {
    G1,
    G2,
}

/// One of the two factorized ground states at h = 2√(1-γ²):
/// a product over sites n of `cos(θ)|↑⟩ ± (-1)ⁿ sin(θ)|↓⟩`, with
/// `cos²(2θ) = (1-γ)/(1+γ)` and θ ∈ [0, π/4].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorizedState {
    theta: f64,
    sign_branch: SignBranch,
}

impl FactorizedState {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn sign_branch(&self) -> SignBranch {
        self.sign_branch
    }

    pub fn with_branch(self, sign_branch: SignBranch) -> Self {
        Self {
            sign_branch,
            ..self
        }
    }

    /// Single-site amplitudes (up, down) at site `n` (0-indexed).
    pub fn site_amplitudes(&self, n: usize) -> (f64, f64) {
        let stagger = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let branch = match self.sign_branch {
            SignBranch::G1 => 1.0,
            SignBranch::G2 => -1.0,
        };
        (self.theta.cos(), branch * stagger * self.theta.sin())
    }
}

/// The factorizing angle for anisotropy γ: θ = arccos(√((1-γ)/(1+γ))) / 2,
/// on the branch θ ∈ [0, π/4]. Returns the `G1` sign branch; `with_branch`
/// selects the other.
pub fn factorized_state(gamma: f64) -> Result<FactorizedState> {
    if !gamma.is_finite() || gamma <= 0.0 || gamma > 1.0 {
        return Err(XyError::Domain(format!(
            "factorized_state requires 0 < gamma <= 1, got {gamma}"
        )));
    }
    let cos2theta = ((1.0 - gamma) / (1.0 + gamma)).sqrt();
    let theta = 0.5 * cos2theta.acos();
    Ok(FactorizedState {
        theta,
        sign_branch: SignBranch::G1,
    })
}

/// Block entropy of a factorized (product) ground state.
///
/// The reduced density matrix of any block of a product state is pure, so
/// this is exactly zero for every valid input.
pub fn product_state_entropy(fs: &FactorizedState, block_len: usize) -> Result<f64> {
    if block_len == 0 {
        return Err(XyError::Domain(
            "block length must be at least 1".to_string(),
        ));
    }
    debug_assert!((0.0..=std::f64::consts::FRAC_PI_4 + 1e-12).contains(&fs.theta));
    Ok(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    fn pt(gamma: f64, h: f64) -> XYPoint {
        XYPoint::new(gamma, h).unwrap()
    }

    fn label(gamma: f64, h: f64) -> CaseLabel {
        classify(&pt(gamma, h), &ClassifyTolerances::default()).label
    }

    #[test]
    fn point_validation() {
        assert!(XYPoint::new(0.0, 1.0).is_err());
        assert!(XYPoint::new(-0.1, 1.0).is_err());
        assert!(XYPoint::new(1.1, 1.0).is_err());
        assert!(XYPoint::new(0.5, -0.1).is_err());
        assert!(XYPoint::new(f64::NAN, 1.0).is_err());
        assert!(XYPoint::new(0.5, f64::INFINITY).is_err());
        // Ising limit and zero field are both accepted
        assert!(XYPoint::new(1.0, 0.0).is_ok());
    }

    #[test]
    fn classification_cases() {
        assert_eq!(label(0.5, 1.9), CaseLabel::Case1a); // sqrt(3) < 1.9 < 2
        assert_eq!(label(0.5, 3.0), CaseLabel::Case2);
        assert_eq!(label(0.5, 1.0), CaseLabel::Case1b);
        assert_eq!(label(0.5, 3.0_f64.sqrt()), CaseLabel::FactorizingBoundary);
        assert_eq!(label(0.5, 2.0), CaseLabel::CriticalH);
        assert_eq!(label(1e-12, 1.0), CaseLabel::CriticalGamma);
        // gamma = 1 puts the factorizing field at h = 0
        assert_eq!(label(1.0, 0.0), CaseLabel::FactorizingBoundary);
        assert_eq!(label(1.0, 1.0), CaseLabel::Case1a);
    }

    #[test]
    fn classification_sigma() {
        let tol = ClassifyTolerances::default();
        assert_eq!(classify(&pt(0.5, 1.0), &tol).sigma, Some(1));
        assert_eq!(classify(&pt(0.5, 1.9), &tol).sigma, Some(1));
        assert_eq!(classify(&pt(0.5, 3.0), &tol).sigma, Some(0));
        assert_eq!(classify(&pt(0.5, 2.0), &tol).sigma, None);
    }

    #[test]
    fn modulus_examples() {
        let tol = ClassifyTolerances::default();
        // boundary: k = 0 exactly
        let p = pt(0.5, 3.0_f64.sqrt());
        let r = classify(&p, &tol);
        assert_eq!(modulus_k(&p, &r).unwrap(), 0.0);

        // case 1b at (0.5, 1.0): k = sqrt(2/3)
        let p = pt(0.5, 1.0);
        let r = classify(&p, &tol);
        let k = modulus_k(&p, &r).unwrap();
        assert!((k - (2.0f64 / 3.0).sqrt()).abs() < 1e-15, "k = {k}");

        // case 2 at h = 2*sqrt(1.25): k = 1/sqrt(2)
        let p = pt(0.5, 2.0 * 1.25f64.sqrt());
        let r = classify(&p, &tol);
        let k = modulus_k(&p, &r).unwrap();
        assert!(
            (k - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15,
            "k = {k}"
        );
    }

    #[test]
    fn modulus_diverges_on_critical_lines() {
        let tol = ClassifyTolerances::default();
        let p = pt(0.5, 2.0);
        let r = classify(&p, &tol);
        match modulus_k(&p, &r) {
            Err(XyError::Divergent { estimate, .. }) => assert!(estimate.is_none()),
            other => panic!("expected divergence, got {other:?}"),
        }
        // just off h = 2 but inside the band: estimate attached
        let p = pt(0.5, 2.0 + 1e-10);
        let r = classify(&p, &tol);
        match modulus_k(&p, &r) {
            Err(XyError::Divergent { estimate, .. }) => {
                let e = estimate.expect("estimate for near-critical point");
                assert!(e > 1.0, "asymptote should be large, got {e}");
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn modulus_tends_to_zero_at_boundary_and_one_at_critical() {
        let tol = ClassifyTolerances::default();
        let gamma = 0.5;
        let hf = factorizing_field(gamma).unwrap();
        let mut prev_above = f64::INFINITY;
        let mut prev_below = f64::INFINITY;
        for j in 2..10 {
            let eps = 10f64.powi(-j);
            for (h, prev) in [(hf + eps, &mut prev_above), (hf - eps, &mut prev_below)] {
                let p = pt(gamma, h);
                let r = classify(&p, &tol);
                let k = modulus_k(&p, &r).unwrap();
                assert!(k < *prev, "k should shrink approaching the boundary");
                *prev = k;
            }
        }
        for j in 2..8 {
            let eps = 10f64.powi(-j);
            for h in [2.0 - eps, 2.0 + eps] {
                let p = pt(gamma, h);
                let r = classify(&p, &tol);
                let k = modulus_k(&p, &r).unwrap();
                assert!(k < 1.0 && k > 1.0 - 10.0 * eps, "k = {k} at h = {h}");
            }
        }
    }

    #[test]
    fn case_branches_are_reciprocal_at_mirrored_points() {
        // For fixed gamma let X = (h/2)^2 + gamma^2 - 1. The 1a branch at
        // X = gamma^2 t and the 2 branch at X = gamma^2 / t both evaluate to
        // sqrt(t), i.e. the branch formulas are reciprocal at equal X.
        let tol = ClassifyTolerances::default();
        for &gamma in &[0.3f64, 0.7, 1.0] {
            for &t in &[0.1f64, 0.25, 0.5, 0.9] {
                let h_1a = 2.0 * (1.0 - gamma * gamma * (1.0 - t)).sqrt();
                let h_2 = 2.0 * (1.0 - gamma * gamma + gamma * gamma / t).sqrt();
                let p1 = pt(gamma, h_1a);
                let r1 = classify(&p1, &tol);
                assert_eq!(r1.label, CaseLabel::Case1a);
                let p2 = pt(gamma, h_2);
                let r2 = classify(&p2, &tol);
                assert_eq!(r2.label, CaseLabel::Case2);
                let k1 = modulus_k(&p1, &r1).unwrap();
                let k2 = modulus_k(&p2, &r2).unwrap();
                assert!((k1 - t.sqrt()).abs() < 1e-12);
                assert!((k1 - k2).abs() < 1e-12, "dual points share the modulus");
                // product of the 1a value with the formal 2-branch value at
                // the same point is exactly 1
                let h2sq = (h_1a / 2.0) * (h_1a / 2.0);
                let k2_formal = gamma / (h2sq + gamma * gamma - 1.0).sqrt();
                assert!((k1 * k2_formal - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn factorizing_field_examples() {
        assert!((factorizing_field(0.5).unwrap() - 3.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(factorizing_field(1.0).unwrap(), 0.0);
        assert!((factorizing_field(0.6).unwrap() - 1.6).abs() < 1e-15);
        assert!(factorizing_field(0.0).is_err());
    }

    #[test]
    fn factorized_state_angles() {
        // gamma = 0.6: cos^2(2 theta) = 0.25, theta = pi/6
        let fs = factorized_state(0.6).unwrap();
        assert!((fs.theta() - FRAC_PI_6).abs() < 1e-12);
        // Ising limit: theta = pi/4
        let fs = factorized_state(1.0).unwrap();
        assert!((fs.theta() - FRAC_PI_4).abs() < 1e-12);
        // gamma -> 0: fully polarized
        let fs = factorized_state(1e-9).unwrap();
        assert!(fs.theta() < 1e-4);
        // the defining identity holds
        for &gamma in &[0.1, 0.35, 0.6, 0.92, 1.0] {
            let fs = factorized_state(gamma).unwrap();
            let c = (2.0 * fs.theta()).cos();
            assert!((c * c - (1.0 - gamma) / (1.0 + gamma)).abs() < 1e-12);
        }
    }

    #[test]
    fn site_amplitudes_are_normalized_and_staggered() {
        let fs = factorized_state(0.6).unwrap();
        for n in 0..6 {
            let (up, down) = fs.site_amplitudes(n);
            assert!((up * up + down * down - 1.0).abs() < 1e-15);
        }
        let (_, d0) = fs.site_amplitudes(0);
        let (_, d1) = fs.site_amplitudes(1);
        assert!(
            (d0 + d1).abs() < 1e-15,
            "staggered sign flips between sites"
        );
        let g2 = fs.with_branch(SignBranch::G2);
        let (_, d0b) = g2.site_amplitudes(0);
        assert!((d0 + d0b).abs() < 1e-15, "branches differ by the sign");
    }

    #[test]
    fn product_state_entropy_is_exactly_zero() {
        let fs = factorized_state(0.6).unwrap();
        assert_eq!(product_state_entropy(&fs, 5).unwrap(), 0.0);
        assert_eq!(product_state_entropy(&fs, 1).unwrap(), 0.0);
        let ising = factorized_state(1.0).unwrap();
        assert_eq!(product_state_entropy(&ising, 10).unwrap(), 0.0);
        assert!(product_state_entropy(&fs, 0).is_err());
    }
}
