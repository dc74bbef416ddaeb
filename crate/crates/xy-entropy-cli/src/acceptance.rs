//! Verification criteria behind `xy-entropy verify`.
//!
//! Ten independent checks pin the physics and the numerics: curve shape,
//! cross-method equivalence, boundary and self-dual values, the critical
//! scaling law, the elliptic kernel against an independent quadrature, the
//! finite-size oracle chain, limit behaviors, and byte-level determinism.
//! Every tolerance is fixed here; the suite either passes or explains
//! which number missed by how much.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use crate::figure1::figure1_rows;
use crate::output::scan_to_csv;
use crate::scan::{run_scan, GammaSpec, MethodSpec, ScanSpec};
use xy_entropy::{
    bdg_solve, classify, complete_elliptic_k, ed_ground_state, elliptic_bundle,
    entropy_closed_form, entropy_series, factorized_state, factorizing_field, modulus_k,
    product_state_entropy, toeplitz_block_entropy, CaseLabel, ClassifyTolerances, FiniteChain,
    XYPoint,
};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
}

impl CriterionResult {
    fn pass(id: usize, name: &'static str, detail: String) -> Self {
        Self {
            id,
            name,
            passed: true,
            skipped: false,
            detail,
        }
    }

    fn fail(id: usize, name: &'static str, detail: String) -> Self {
        Self {
            id,
            name,
            passed: false,
            skipped: false,
            detail,
        }
    }

    fn skip(id: usize, name: &'static str) -> Self {
        Self {
            id,
            name,
            passed: true,
            skipped: true,
            detail: "skipped in fast mode".to_string(),
        }
    }

    pub fn status(&self) -> &'static str {
        if self.skipped {
            "SKIP"
        } else if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

fn point(gamma: f64, h: f64) -> XYPoint {
    XYPoint::new(gamma, h).expect("acceptance points are valid")
}

/// Criterion 1: The entropy-vs-field curve at γ = 1/2: ln 2 minimum at the
/// factorizing field, monotone flanks, divergence gap at h = 2.
pub fn criterion_figure1() -> CriterionResult {
    const ID: usize = 1;
    const NAME: &str = "figure-1 curve reproduction (gamma = 1/2)";
    let gamma = 0.5;
    let hf = 3.0f64.sqrt();
    let rows = match figure1_rows(gamma, 600, 0.05, false) {
        Ok(r) => r,
        Err(e) => return CriterionResult::fail(ID, NAME, format!("curve generation failed: {e}")),
    };
    let boundary = match rows
        .iter()
        .find(|r| r.case == CaseLabel::FactorizingBoundary)
    {
        Some(r) => r,
        None => return CriterionResult::fail(ID, NAME, "no factorizing-boundary row".into()),
    };
    let s_hf = boundary.entropy.unwrap_or(f64::NAN);
    if (s_hf - LN_2).abs() > 1e-9 {
        return CriterionResult::fail(
            ID,
            NAME,
            format!(
                "S(hf) = {s_hf:.12} deviates from ln 2 by {:.2e}",
                (s_hf - LN_2).abs()
            ),
        );
    }
    // strict local minimum: centered second difference
    let d = 1e-3;
    let sm = entropy_closed_form(&point(gamma, hf - d)).unwrap().value;
    let sp = entropy_closed_form(&point(gamma, hf + d)).unwrap().value;
    let second = sm + sp - 2.0 * s_hf;
    if second <= 0.0 {
        return CriterionResult::fail(
            ID,
            NAME,
            format!("second difference {second:.3e} not positive at hf"),
        );
    }
    // monotone flanks on the sampled grid
    let finite: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.entropy.map(|s| (r.h, s)))
        .collect();
    for w in finite.windows(2) {
        let ((h0, s0), (h1, s1)) = (w[0], w[1]);
        if h0 > hf && h1 <= 1.95 && s1 <= s0 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("not increasing on (hf, 1.95]: S({h1:.4}) = {s1} <= S({h0:.4}) = {s0}"),
            );
        }
        if h0 >= 2.05 && s1 >= s0 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("not decreasing on [2.05, 3]: S({h1:.4}) = {s1} >= S({h0:.4}) = {s0}"),
            );
        }
    }
    let s_end = finite.last().unwrap().1;
    let s_after_gap = finite.iter().find(|(h, _)| *h >= 2.05).unwrap().1;
    if s_end >= s_after_gap {
        return CriterionResult::fail(
            ID,
            NAME,
            format!("S(3) = {s_end} >= S(2.05) = {s_after_gap}"),
        );
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!(
            "S(hf) - ln2 = {:+.1e}; second difference {:+.2e}; flanks monotone over {} samples",
            s_hf - LN_2,
            second,
            finite.len()
        ),
    )
}

/// Criterion 2: Series and closed form agree on a 50 x 50 grid off the guard band.
pub fn criterion_series_closed_equivalence() -> CriterionResult {
    const ID: usize = 2;
    const NAME: &str = "series / closed-form equivalence on a 50x50 grid";
    let mut worst: f64 = 0.0;
    let mut worst_at = (0.0, 0.0);
    let mut checked = 0usize;
    for i in 0..50 {
        let gamma = 0.05 + 0.95 * i as f64 / 49.0;
        for j in 0..50 {
            let h = 3.0 * j as f64 / 49.0;
            if (h - 2.0).abs() < 0.05 {
                continue;
            }
            let p = point(gamma, h);
            let ser = match entropy_series(&p) {
                Ok(r) => r,
                Err(e) => return CriterionResult::fail(ID, NAME, format!("series failed: {e}")),
            };
            let clo = match entropy_closed_form(&p) {
                Ok(r) => r,
                Err(e) => return CriterionResult::fail(ID, NAME, format!("closed failed: {e}")),
            };
            let tol = 1e-10 + 10.0 * ser.tail_bound.unwrap_or(0.0);
            let diff = (ser.value - clo.value).abs();
            if diff > tol {
                return CriterionResult::fail(
                    ID,
                    NAME,
                    format!("({gamma:.3},{h:.3}): |series - closed| = {diff:.2e} > {tol:.2e}"),
                );
            }
            if diff > worst {
                worst = diff;
                worst_at = (gamma, h);
            }
            checked += 1;
        }
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!(
            "{checked} points; max |series - closed| = {worst:.2e} at ({:.3},{:.3})",
            worst_at.0, worst_at.1
        ),
    )
}

/// Criterion 3: Continuity at the factorizing field: approach from both sides stays
/// inside [ln 2, ln 2 + 1e-4]; the boundary itself is exactly ln 2.
pub fn criterion_factorizing_continuity() -> CriterionResult {
    const ID: usize = 3;
    const NAME: &str = "continuity at the factorizing field";
    let mut max_excess: f64 = 0.0;
    for &gamma in &[0.2f64, 0.5, 0.8] {
        let hf = factorizing_field(gamma).unwrap();
        let exact = entropy_closed_form(&point(gamma, hf)).unwrap().value;
        if exact != LN_2 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("gamma = {gamma}: boundary value {exact} is not exactly ln 2"),
            );
        }
        for h in [hf - 1e-6, hf + 1e-6] {
            for (tag, s) in [
                (
                    "closed",
                    entropy_closed_form(&point(gamma, h)).unwrap().value,
                ),
                ("series", entropy_series(&point(gamma, h)).unwrap().value),
            ] {
                if !(LN_2..=LN_2 + 1e-4).contains(&s) {
                    return CriterionResult::fail(
                        ID,
                        NAME,
                        format!("gamma = {gamma}, h = {h}: {tag} S = {s} outside [ln2, ln2+1e-4]"),
                    );
                }
                max_excess = max_excess.max(s - LN_2);
            }
        }
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!("boundary exact; max one-sided excess {max_excess:.2e} (allowed 1e-4)"),
    )
}

/// Criterion 4: Self-dual strong-field point k = k' = 1/sqrt(2): the cross term is
/// analytically forced to cancel and S = (ln 2)/2.
pub fn criterion_self_dual_point() -> CriterionResult {
    const ID: usize = 4;
    const NAME: &str = "self-dual case-2 point returns (ln 2)/2";
    let mut worst: f64 = 0.0;
    for &gamma in &[0.3f64, 0.5, 0.8, 1.0] {
        let h = 2.0 * (1.0 + gamma * gamma).sqrt();
        let s = match entropy_closed_form(&point(gamma, h)) {
            Ok(r) => r.value,
            Err(e) => return CriterionResult::fail(ID, NAME, format!("closed form failed: {e}")),
        };
        let dev = (s - 0.5 * LN_2).abs();
        if dev > 1e-12 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("gamma = {gamma}: |S - ln2/2| = {dev:.2e} > 1e-12"),
            );
        }
        worst = worst.max(dev);
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!("max deviation {worst:.2e} (allowed 1e-12)"),
    )
}

/// Criterion 5: Critical divergence law: regressing S against -ln k' along
/// h = 2 - 10^-j gives slope 1/3 within 2%.
pub fn criterion_critical_slope() -> CriterionResult {
    const ID: usize = 5;
    const NAME: &str = "critical divergence slope 1/3 vs -ln k'";
    let gamma = 0.5;
    let tols = ClassifyTolerances::default();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for j in 2..=6 {
        let h = 2.0 - 10f64.powi(-j);
        let p = point(gamma, h);
        let regime = classify(&p, &tols);
        let k = modulus_k(&p, &regime).unwrap();
        let kp = ((1.0 - k) * (1.0 + k)).sqrt();
        xs.push(-kp.ln());
        ys.push(entropy_closed_form(&p).unwrap().value);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let rel = (slope - 1.0 / 3.0).abs() * 3.0;
    if rel > 0.02 {
        return CriterionResult::fail(
            ID,
            NAME,
            format!(
                "slope = {slope:.6} deviates from 1/3 by {:.2}%",
                rel * 100.0
            ),
        );
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!(
            "slope = {slope:.6} ({:.2}% from 1/3, allowed 2%)",
            rel * 100.0
        ),
    )
}

/// Tanh-sinh quadrature of the defining elliptic integral; independent of
/// the AGM production path.
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

/// Criterion 6: Elliptic kernel: the lemniscatic value, AGM vs quadrature on a log
/// grid, and the tau0 reciprocity identity.
pub fn criterion_elliptic_kernel() -> CriterionResult {
    const ID: usize = 6;
    const NAME: &str = "elliptic kernel (AGM vs closed value and quadrature)";
    // Gamma(1/4)^2 / (4 sqrt(pi)) frozen at 30-digit precision
    let lemniscatic = 1.854074677301372;
    let agm = complete_elliptic_k(FRAC_1_SQRT_2).unwrap();
    if (agm - lemniscatic).abs() > 1e-12 {
        return CriterionResult::fail(
            ID,
            NAME,
            format!("I(1/sqrt2) = {agm:.15} vs {lemniscatic:.15}"),
        );
    }
    let lo: f64 = 1e-8;
    let hi: f64 = 1.0 - 1e-8;
    let mut worst: f64 = 0.0;
    for i in 0..40 {
        let f = i as f64 / 39.0;
        let k = (lo.ln() + f * (hi.ln() - lo.ln())).exp();
        let a = complete_elliptic_k(k).unwrap();
        let q = elliptic_k_quadrature(k);
        let rel = ((a - q) / q).abs();
        if rel > 1e-10 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("k = {k:.3e}: AGM vs quadrature relative error {rel:.2e} > 1e-10"),
            );
        }
        worst = worst.max(rel);
    }
    let mut worst_tau: f64 = 0.0;
    for i in 0..19 {
        let k = 0.05 + 0.9 * i as f64 / 18.0;
        let d = elliptic_bundle(k).unwrap();
        let dp = elliptic_bundle(d.k_prime).unwrap();
        let dev = (d.tau0 * dp.tau0 - 1.0).abs();
        if dev > 1e-12 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("tau0(k) tau0(k') at k = {k:.3}: |product - 1| = {dev:.2e} > 1e-12"),
            );
        }
        worst_tau = worst_tau.max(dev);
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!(
            "lemniscatic ok; max AGM/quadrature rel {worst:.2e} over 40 moduli; \
             max |tau0 product - 1| = {worst_tau:.2e}"
        ),
    )
}

/// Criterion 7: Finite-system oracle chain: exact diagonalization and the quadratic
/// form agree block by block, and ED entropy is complement-symmetric.
pub fn criterion_finite_oracles() -> CriterionResult {
    const ID: usize = 7;
    const NAME: &str = "finite chains: ED vs BdG on all contiguous blocks";
    let mut worst_pair: f64 = 0.0;
    let mut worst_comp: f64 = 0.0;
    let mut blocks = 0usize;
    for &n in &[2usize, 6, 10] {
        for &(gamma, h) in &[(0.5, 1.0), (0.5, 1.9), (0.5, 2.5)] {
            let chain = FiniteChain::new(point(gamma, h), n).unwrap();
            let gs = match ed_ground_state(&chain) {
                Ok(g) => g,
                Err(e) => return CriterionResult::fail(ID, NAME, format!("ED failed: {e}")),
            };
            let solved = match bdg_solve(&chain) {
                Ok(s) => s,
                Err(e) => return CriterionResult::fail(ID, NAME, format!("BdG failed: {e}")),
            };
            let de = (gs.energy - solved.ground_energy()).abs();
            if de > 1e-8 {
                return CriterionResult::fail(
                    ID,
                    NAME,
                    format!("N={n} ({gamma},{h}): ground energies differ by {de:.2e}"),
                );
            }
            for a in 0..n {
                for b in a + 1..=n {
                    let se = gs.block_entropy(a..b).unwrap();
                    let sb = solved.block_entropy(a..b).unwrap();
                    let diff = (se - sb).abs();
                    if diff > 1e-8 {
                        return CriterionResult::fail(
                            ID,
                            NAME,
                            format!(
                                "N={n} ({gamma},{h}) block {a}..{b}: |ED - BdG| = {diff:.2e} > 1e-8"
                            ),
                        );
                    }
                    worst_pair = worst_pair.max(diff);
                    let sc = gs.complement_entropy(a..b).unwrap();
                    let dc = (se - sc).abs();
                    if dc > 1e-10 {
                        return CriterionResult::fail(
                            ID,
                            NAME,
                            format!(
                                "N={n} ({gamma},{h}) block {a}..{b}: complement asymmetry {dc:.2e}"
                            ),
                        );
                    }
                    worst_comp = worst_comp.max(dc);
                    blocks += 1;
                }
            }
        }
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!(
            "{blocks} blocks; max |ED - BdG| = {worst_pair:.2e} (allowed 1e-8); \
             max complement asymmetry {worst_comp:.2e} (allowed 1e-10)"
        ),
    )
}

/// Aitken extrapolation of the last three of a geometric-ish sequence.
fn aitken(s1: f64, s2: f64, s3: f64) -> f64 {
    let d2 = s3 - s2;
    let denom = d2 - (s2 - s1);
    if denom.abs() < 1e-300 {
        s3
    } else {
        s3 - d2 * d2 / denom
    }
}

/// Criterion 8: Infinite-chain oracle: Toeplitz block entropies rise monotonically
/// and extrapolate onto the analytic limit.
pub fn criterion_infinite_oracle() -> CriterionResult {
    const ID: usize = 8;
    const NAME: &str = "Toeplitz blocks converge to the analytic limit";
    let sizes = [20usize, 40, 80, 160];
    let mut details = Vec::new();
    for &(gamma, h) in &[(0.5, 1.0), (0.5, 1.9), (0.5, 2.5)] {
        let p = point(gamma, h);
        let limit = entropy_closed_form(&p).unwrap().value;
        let s: Vec<f64> = match sizes
            .iter()
            .map(|&l| toeplitz_block_entropy(&p, l))
            .collect::<Result<_, _>>()
        {
            Ok(v) => v,
            Err(e) => return CriterionResult::fail(ID, NAME, format!("Toeplitz failed: {e}")),
        };
        for w in s.windows(2) {
            if w[1] < w[0] - 1e-12 {
                return CriterionResult::fail(
                    ID,
                    NAME,
                    format!("({gamma},{h}): S_L not nondecreasing: {w:?}"),
                );
            }
        }
        let extrapolated = aitken(s[1], s[2], s[3]);
        let err = (extrapolated - limit).abs();
        if err > 1e-4 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("({gamma},{h}): extrapolation error {err:.2e} > 1e-4"),
            );
        }
        details.push(format!("({gamma},{h}): {err:.1e}"));
    }
    // factorizing point: S_160 reaches ln 2
    let p = point(0.5, 3.0f64.sqrt());
    let s160 = match toeplitz_block_entropy(&p, 160) {
        Ok(s) => s,
        Err(e) => return CriterionResult::fail(ID, NAME, format!("Toeplitz failed: {e}")),
    };
    let err = (s160 - LN_2).abs();
    if err > 1e-4 {
        return CriterionResult::fail(
            ID,
            NAME,
            format!("factorizing point: |S_160 - ln2| = {err:.2e} > 1e-4"),
        );
    }
    details.push(format!("(0.5,sqrt3): |S_160 - ln2| = {err:.1e}"));
    CriterionResult::pass(
        ID,
        NAME,
        format!("monotone; extrapolation errors {}", details.join("; ")),
    )
}

/// Criterion 9: Limit behaviors: vanishing entropy at strong field, zero entropy for
/// product states on 100 pseudo-random inputs.
pub fn criterion_limits() -> CriterionResult {
    const ID: usize = 9;
    const NAME: &str = "limit behaviors (strong field, product states)";
    let mut prev = f64::INFINITY;
    for &h in &[10.0, 100.0, 1000.0] {
        let s = match entropy_series(&point(0.5, h)) {
            Ok(r) => r.value,
            Err(e) => return CriterionResult::fail(ID, NAME, format!("series failed: {e}")),
        };
        if s >= prev {
            return CriterionResult::fail(ID, NAME, format!("S not decreasing at h = {h}"));
        }
        prev = s;
    }
    if prev >= 1e-4 {
        return CriterionResult::fail(ID, NAME, format!("S(0.5, 1000) = {prev:.2e} >= 1e-4"));
    }
    // deterministic pseudo-random inputs
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next_f64 = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for trial in 0..100 {
        let gamma = (next_f64() * 0.999 + 0.001).min(1.0);
        let block_len = 1 + (next_f64() * 99.0) as usize;
        let fs = factorized_state(gamma).unwrap();
        let s = product_state_entropy(&fs, block_len).unwrap();
        if s != 0.0 {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("trial {trial}: product state entropy {s} != 0"),
            );
        }
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!("S(0.5, 1000) = {prev:.2e} < 1e-4 and decreasing; 100 product states at exactly 0"),
    )
}

/// Criterion 10: Determinism: the same scan yields byte-identical CSV at different
/// thread counts.
pub fn criterion_determinism() -> CriterionResult {
    const ID: usize = 10;
    const NAME: &str = "scan CSV is byte-stable across thread counts";
    let spec = |threads: usize| ScanSpec {
        gamma: GammaSpec::Range {
            min: 0.25,
            max: 0.95,
            steps: 4,
        },
        h_min: 0.0,
        h_max: 3.0,
        steps: 41,
        methods: vec![
            MethodSpec::Series,
            MethodSpec::Closed,
            MethodSpec::Toeplitz(10),
        ],
        guard_band: 0.05,
        truncation_tol: 1e-12,
        threads,
        bits: false,
    };
    let render = |threads: usize| -> Result<String, String> {
        let s = spec(threads);
        let rows = run_scan(&s).map_err(|e| e.to_string())?;
        Ok(scan_to_csv(&s, &rows))
    };
    let single = match render(1) {
        Ok(s) => s,
        Err(e) => return CriterionResult::fail(ID, NAME, e),
    };
    for threads in [2usize, 4, 8] {
        let multi = match render(threads) {
            Ok(s) => s,
            Err(e) => return CriterionResult::fail(ID, NAME, e),
        };
        if multi != single {
            return CriterionResult::fail(
                ID,
                NAME,
                format!("CSV differs between 1 and {threads} threads"),
            );
        }
    }
    let again = match render(1) {
        Ok(s) => s,
        Err(e) => return CriterionResult::fail(ID, NAME, e),
    };
    if again != single {
        return CriterionResult::fail(ID, NAME, "CSV differs between identical runs".into());
    }
    CriterionResult::pass(
        ID,
        NAME,
        format!("{} bytes identical across 1/2/4/8 threads", single.len()),
    )
}

/// Run the whole suite. Fast mode skips the two longer-running oracle
/// criteria and leaves the rest untouched.
pub fn run_all(fast: bool) -> Vec<CriterionResult> {
    let mut results = vec![
        criterion_figure1(),
        criterion_series_closed_equivalence(),
        criterion_factorizing_continuity(),
        criterion_self_dual_point(),
        criterion_critical_slope(),
        criterion_elliptic_kernel(),
    ];
    if fast {
        results.push(CriterionResult::skip(
            7,
            "finite chains: ED vs BdG on all contiguous blocks",
        ));
        results.push(CriterionResult::skip(
            8,
            "Toeplitz blocks converge to the analytic limit",
        ));
    } else {
        results.push(criterion_finite_oracles());
        results.push(criterion_infinite_oracle());
    }
    results.push(criterion_limits());
    results.push(criterion_determinism());
    results
}
