//! Independent quadrature oracle for the elliptic kernel.
//!
//! Evaluates the defining integral ∫₀¹ dx/√((1-x²)(1-k²x²)) by tanh-sinh
//! (double-exponential) quadrature — a completely different algorithm from
//! the production AGM path — and checks agreement across the modulus range.

use xy_entropy::complete_elliptic_k;

/// Tanh-sinh quadrature of the defining integral. The substitution
/// x = tanh((π/2) sinh t) absorbs the endpoint singularity; writing
/// 1 - k²x² = k′² + k² sech²(u) keeps full precision as k → 1.
fn elliptic_k_quadrature(k: f64) -> f64 {
    let kp2 = (1.0 - k) * (1.0 + k);
    let integral_at = |step: f64| -> f64 {
        let mut sum = 0.0;
        let mut j = 0usize;
        loop {
            let t = step * j as f64;
            let u = std::f64::consts::FRAC_PI_2 * t.sinh();
            let sech = 1.0 / u.cosh();
            let term =
                std::f64::consts::FRAC_PI_2 * t.cosh() * sech / (kp2 + k * k * sech * sech).sqrt();
            sum += if j == 0 { 0.5 * term } else { term };
            if j > 3 && term < 1e-18 * sum.max(1.0) {
                break;
            }
            j += 1;
            if j > 10_000 {
                break;
            }
        }
        step * sum
    };

    let mut step = 0.5;
    let mut prev = integral_at(step);
    for _ in 0..8 {
        step *= 0.5;
        let next = integral_at(step);
        if (next - prev).abs() <= 1e-13 * next.abs() {
            return next;
        }
        prev = next;
    }
    prev
}

#[test]
fn quadrature_reproduces_known_values() {
    let v = elliptic_k_quadrature(0.0);
    assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    let v = elliptic_k_quadrature(std::f64::consts::FRAC_1_SQRT_2);
    assert!(
        (v - 1.854074677301372).abs() < 1e-12,
        "quadrature I(1/sqrt2) = {v}"
    );
    let v = elliptic_k_quadrature(0.99);
    assert!(
        (v - 3.356600523361192).abs() < 1e-11,
        "quadrature I(0.99) = {v}"
    );
}

#[test]
fn agm_matches_quadrature_on_a_log_grid() {
    let lo: f64 = 1e-8;
    let hi: f64 = 1.0 - 1e-8;
    let n = 40;
    for i in 0..n {
        let f = i as f64 / (n - 1) as f64;
        let k = (lo.ln() + f * (hi.ln() - lo.ln())).exp();
        let agm = complete_elliptic_k(k).unwrap();
        let quad = elliptic_k_quadrature(k);
        let rel = ((agm - quad) / quad).abs();
        assert!(
            rel <= 1e-10,
            "k = {k}: AGM {agm} vs quadrature {quad} (rel {rel:.2e})"
        );
    }
}
