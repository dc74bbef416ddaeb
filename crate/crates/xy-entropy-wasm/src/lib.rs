//! Browser bindings for the XY-chain entropy library.
//!
//! Three operations back the interactive demo page in `www/`:
//!
//! - [`entropy_curve`] — the limiting entropy S(h) at fixed anisotropy, as a
//!   flat [h, S, h, S, ...] array with NaN marking the divergence gap;
//! - [`point_report`] — a JSON report for one (γ, h) point: classification,
//!   modulus data, both analytic entropies, and the leading λ spectrum;
//! - [`toeplitz_curve`] — the finite-block oracle S_L(h) for overlaying the
//!   approach to the limit.

use wasm_bindgen::prelude::*;

use serde_json::json;
use xy_entropy::{
    classify, elliptic_bundle, entropy_asymptotic_near_h2, entropy_closed_form, entropy_series,
    factorizing_field, lambda_m, modulus_k, toeplitz_block_entropy, CaseLabel, ClassifyTolerances,
    SpectrumParams, XYPoint,
};

fn curve_samples(h_min: f64, h_max: f64, points: u32) -> Vec<f64> {
    let n = points.max(2) as usize;
    (0..n)
        .map(|i| h_min + (h_max - h_min) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Limiting entropy along a field sweep at fixed anisotropy.
///
/// Returns interleaved [h0, S0, h1, S1, ...]; S is NaN inside the guard
/// band around h = 2 and wherever the point is invalid or critical, so a
/// plotting path simply breaks across the divergence. The exact factorizing
/// field is always inserted so the ln 2 minimum is on the curve.
#[wasm_bindgen]
pub fn entropy_curve(gamma: f64, h_min: f64, h_max: f64, points: u32, guard_band: f64) -> Vec<f64> {
    let mut hs = curve_samples(h_min.max(0.0), h_max, points);
    if let Ok(hf) = factorizing_field(gamma) {
        if hf > h_min && hf < h_max && hs.iter().all(|&h| h != hf) {
            hs.push(hf);
            hs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
    }
    let mut out = Vec::with_capacity(2 * hs.len());
    for h in hs {
        let s = XYPoint::new(gamma, h)
            .ok()
            .filter(|_| (h - 2.0).abs() >= guard_band)
            .and_then(|p| entropy_closed_form(&p).ok())
            .map(|r| r.value)
            .unwrap_or(f64::NAN);
        out.push(h);
        out.push(s);
    }
    out
}

/// Finite-block (Toeplitz oracle) entropy S_L along the same sweep.
/// Block sizes are capped at 96 to keep the browser responsive.
#[wasm_bindgen]
pub fn toeplitz_curve(
    gamma: f64,
    h_min: f64,
    h_max: f64,
    points: u32,
    block_size: u32,
    guard_band: f64,
) -> Vec<f64> {
    let l = (block_size.clamp(1, 96)) as usize;
    let hs = curve_samples(h_min.max(0.0), h_max, points.min(400));
    let mut out = Vec::with_capacity(2 * hs.len());
    for h in hs {
        let s = XYPoint::new(gamma, h)
            .ok()
            .filter(|_| (h - 2.0).abs() >= guard_band)
            .and_then(|p| toeplitz_block_entropy(&p, l).ok())
            .unwrap_or(f64::NAN);
        out.push(h);
        out.push(s);
    }
    out
}

/// Full JSON report for one phase-diagram point.
///
/// Fields: gamma, h, case, sigma, factorizing_field, and on non-critical
/// points k, kprime, tau0, S_series (+ terms, tail), S_closed, the leading
/// lambda spectrum; near h = 2 also the asymptotic estimate. Errors land in
/// an "error" field instead of throwing.
#[wasm_bindgen]
pub fn point_report(gamma: f64, h: f64, guard_band: f64) -> String {
    match build_report(gamma, h, guard_band) {
        Ok(value) => value.to_string(),
        Err(message) => json!({ "error": message }).to_string(),
    }
}

fn build_report(gamma: f64, h: f64, guard_band: f64) -> Result<serde_json::Value, String> {
    let p = XYPoint::new(gamma, h).map_err(|e| e.to_string())?;
    let regime = classify(&p, &ClassifyTolerances::default());
    let mut report = json!({
        "gamma": gamma,
        "h": h,
        "case": regime.label.as_str(),
        "sigma": regime.sigma,
        "factorizing_field": factorizing_field(gamma).ok(),
    });
    let obj = report.as_object_mut().expect("object literal");

    if matches!(
        regime.label,
        CaseLabel::CriticalH | CaseLabel::CriticalGamma
    ) {
        obj.insert("divergent".into(), json!(true));
        obj.insert(
            "note".into(),
            json!("limiting entropy diverges on this critical line"),
        );
        return Ok(report);
    }

    let k = modulus_k(&p, &regime).map_err(|e| e.to_string())?;
    obj.insert("k".into(), json!(k));
    obj.insert("kprime".into(), json!(((1.0 - k) * (1.0 + k)).sqrt()));
    if let Ok(bundle) = elliptic_bundle(k) {
        obj.insert("tau0".into(), json!(bundle.tau0));
        if let Some(sigma) = regime.sigma {
            let sp = SpectrumParams {
                sigma,
                tau0: bundle.tau0,
                truncation_tol: 1e-12,
            };
            let lambdas: Vec<f64> = (0..8).map(|m| lambda_m(m, &sp)).collect();
            obj.insert("lambda".into(), json!(lambdas));
        }
    }
    if let Ok(r) = entropy_series(&p) {
        obj.insert("S_series".into(), json!(r.value));
        obj.insert("series_terms".into(), json!(r.terms_used));
        obj.insert("series_tail".into(), json!(r.tail_bound));
    }
    if let Ok(r) = entropy_closed_form(&p) {
        obj.insert("S_closed".into(), json!(r.value));
    }
    let in_band = (h - 2.0).abs() < guard_band;
    obj.insert("divergent".into(), json!(in_band));
    if in_band {
        if let Ok(r) = entropy_asymptotic_near_h2(&p, guard_band) {
            obj.insert("S_asymptotic".into(), json!(r.value));
            obj.insert(
                "note".into(),
                json!("inside the guard band: closed forms lose accuracy, showing the asymptote"),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn curve_contains_the_boundary_minimum_and_the_gap() {
        let data = entropy_curve(0.5, 0.0, 3.0, 120, 0.05);
        assert_eq!(data.len() % 2, 0);
        let hf = 3.0f64.sqrt();
        let mut found_boundary = false;
        let mut found_gap = false;
        for pair in data.chunks(2) {
            let (h, s) = (pair[0], pair[1]);
            if h == hf {
                found_boundary = true;
                assert_eq!(s, LN_2);
            }
            if (h - 2.0).abs() < 0.05 {
                found_gap = true;
                assert!(s.is_nan());
            }
        }
        assert!(found_boundary && found_gap);
    }

    #[test]
    fn report_has_both_methods_and_spectrum() {
        let text = point_report(0.5, 1.0, 0.05);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["case"], "1b");
        assert_eq!(v["sigma"], 1);
        let s = v["S_series"].as_f64().unwrap();
        let c = v["S_closed"].as_f64().unwrap();
        assert!((s - c).abs() < 1e-10);
        assert_eq!(v["lambda"][0], 0.0);
        assert_eq!(v["divergent"], false);
    }

    #[test]
    fn report_flags_critical_and_band_points() {
        let v: serde_json::Value = serde_json::from_str(&point_report(0.5, 2.0, 0.05)).unwrap();
        assert_eq!(v["case"], "critical-h");
        assert_eq!(v["divergent"], true);
        let v: serde_json::Value = serde_json::from_str(&point_report(0.5, 1.97, 0.05)).unwrap();
        assert_eq!(v["divergent"], true);
        assert!(v["S_asymptotic"].as_f64().unwrap() > 0.5);
        let v: serde_json::Value = serde_json::from_str(&point_report(-1.0, 1.0, 0.05)).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn toeplitz_overlay_sits_below_the_limit() {
        let limit = entropy_curve(0.5, 1.0, 1.0, 2, 0.05);
        let finite = toeplitz_curve(0.5, 1.0, 1.0, 2, 16, 0.05);
        assert!(finite[1] <= limit[1] + 1e-12);
        assert!((finite[1] - limit[1]).abs() < 1e-4);
    }
}
