//! Fourier coefficients of the free-fermion symbol.
//!
//! The ground-state correlations of the infinite chain are generated by the
//! unimodular symbol
//!
//! ```text
//! g(θ) = (h/2 - cos θ + i γ sin θ) / |h/2 - cos θ + i γ sin θ|
//! ```
//!
//! whose Fourier coefficients ĝ(n) = (1/2π) ∫₀^{2π} g(θ) e^{-inθ} dθ fill the
//! Toeplitz correlation blocks. Away from the critical lines g is smooth and
//! periodic, so uniform-grid trapezoidal sums converge exponentially in the
//! grid size; each evaluation doubles the grid until the coefficients are
//! stable to 1e-12.
//!
//! g(-θ) is the complex conjugate of g(θ), forcing real coefficients; the
//! imaginary parts are asserted below 1e-12 before being discarded.

use std::f64::consts::PI;

use crate::error::XyError;
use crate::model::{classify, CaseLabel, ClassifyTolerances, XYPoint};
use crate::Result;

const CONVERGENCE_TOL: f64 = 1e-12;
const MAX_GRID: usize = 1 << 21;

fn check_noncritical(p: &XYPoint) -> Result<()> {
    let regime = classify(p, &ClassifyTolerances::default());
    match regime.label {
        CaseLabel::CriticalH => Err(XyError::Divergent {
            gamma: p.gamma(),
            h: p.h(),
            reason: "symbol is discontinuous at the phase transition h = 2",
            estimate: crate::entropy_limit::near_h2_formal_estimate(p),
        }),
        CaseLabel::CriticalGamma => Err(XyError::Divergent {
            gamma: p.gamma(),
            h: p.h(),
            reason: "symbol is discontinuous on the critical XX line",
            estimate: None,
        }),
        _ => Ok(()),
    }
}

/// Raw grid sums: ĝ(n) for n in -n_max..=n_max on an m-point uniform grid.
/// Returns interleaved (re, im) pairs indexed by n + n_max.
fn coeffs_on_grid(p: &XYPoint, n_max: usize, m: usize) -> Vec<(f64, f64)> {
    let gamma = p.gamma();
    let half_h = p.h() / 2.0;
    let mut acc = vec![(0.0, 0.0); 2 * n_max + 1];
    for j in 0..m {
        let theta = 2.0 * PI * j as f64 / m as f64;
        let (sin_t, cos_t) = theta.sin_cos();
        let re = half_h - cos_t;
        let im = gamma * sin_t;
        let norm = (re * re + im * im).sqrt();
        let gr = re / norm;
        let gi = im / norm;
        for (idx, slot) in acc.iter_mut().enumerate() {
            let n = idx as f64 - n_max as f64;
            let (s, c) = (n * theta).sin_cos();
            // g(θ) e^{-inθ}
            slot.0 += gr * c + gi * s;
            slot.1 += gi * c - gr * s;
        }
    }
    let scale = 1.0 / m as f64;
    acc.iter()
        .map(|&(re, im)| (re * scale, im * scale))
        .collect()
}

/// All coefficients ĝ(-n_max)..ĝ(n_max) with grid doubling and the
/// realness check. `min_grid` is the caller's starting resolution.
pub(crate) fn symbol_coeffs(p: &XYPoint, n_max: usize, min_grid: usize) -> Result<Vec<f64>> {
    check_noncritical(p)?;
    let mut m = min_grid.max(256).max(16 * n_max).next_power_of_two();
    let mut prev = coeffs_on_grid(p, n_max, m);
    loop {
        m *= 2;
        if m > MAX_GRID {
            return Err(XyError::Numerical(format!(
                "symbol coefficients did not stabilize by grid size {MAX_GRID} \
                 at gamma={}, h={}",
                p.gamma(),
                p.h()
            )));
        }
        let next = coeffs_on_grid(p, n_max, m);
        let delta = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| (a.0 - b.0).abs().max((a.1 - b.1).abs()))
            .fold(0.0f64, f64::max);
        if delta < CONVERGENCE_TOL {
            let max_imag = next.iter().map(|c| c.1.abs()).fold(0.0f64, f64::max);
            if max_imag > 1e-12 {
                return Err(XyError::Numerical(format!(
                    "symbol coefficients acquired imaginary part {max_imag}"
                )));
            }
            return Ok(next.into_iter().map(|c| c.0).collect());
        }
        prev = next;
    }
}

/// Single Fourier coefficient ĝ(n), evaluated on a uniform grid of at least
/// `grid_size` points (raised to max(256, 16|n|)) and doubled until stable
/// to 1e-12.
pub fn symbol_fourier(p: &XYPoint, n: i64, grid_size: usize) -> Result<f64> {
    let n_max = n.unsigned_abs() as usize;
    let all = symbol_coeffs(p, n_max, grid_size)?;
    Ok(all[(n + n_max as i64) as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(gamma: f64, h: f64) -> XYPoint {
        XYPoint::new(gamma, h).unwrap()
    }

    #[test]
    fn strong_field_symbol_is_constant() {
        // g -> 1 as h -> infinity; residuals are O(1/h)
        let p = pt(0.5, 1e6);
        let g0 = symbol_fourier(&p, 0, 256).unwrap();
        assert!((g0 - 1.0).abs() < 1e-11, "ghat(0) = {g0}");
        for n in [-2i64, -1, 1, 2] {
            let gn = symbol_fourier(&p, n, 256).unwrap();
            assert!(gn.abs() < 2e-6, "ghat({n}) = {gn}");
        }
    }

    #[test]
    fn ising_zero_field_symbol_is_a_pure_shift() {
        // gamma = 1, h = 0: g(θ) = -e^{-iθ}, so the only coefficient of unit
        // magnitude sits at |n| = 1 (at n = -1 with this transform sign).
        let p = pt(1.0, 0.0);
        for n in -4i64..=4 {
            let gn = symbol_fourier(&p, n, 256).unwrap();
            if n == -1 {
                assert!((gn + 1.0).abs() < 1e-12, "ghat(-1) = {gn}");
            } else {
                assert!(gn.abs() < 1e-12, "ghat({n}) = {gn}");
            }
        }
    }

    #[test]
    fn self_convergence_under_grid_doubling() {
        let p = pt(0.5, 1.0);
        let coarse = symbol_fourier(&p, 0, 256).unwrap();
        let fine = symbol_fourier(&p, 0, 4096).unwrap();
        assert!((coarse - fine).abs() < 1e-12);
    }

    #[test]
    fn critical_points_are_rejected() {
        assert!(matches!(
            symbol_fourier(&pt(0.5, 2.0), 0, 256),
            Err(XyError::Divergent { .. })
        ));
        assert!(matches!(
            symbol_fourier(&pt(1e-12, 1.0), 0, 256),
            Err(XyError::Divergent { .. })
        ));
    }
}
