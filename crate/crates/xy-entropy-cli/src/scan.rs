//! Phase-diagram scans.
//!
//! A scan walks a (γ, h) grid in lexicographic order and evaluates the
//! requested methods at every point. Points on the critical lines are
//! flagged divergent; points inside the guard band around h = 2 (or below
//! the γ guard) are flagged divergent and reported with the near-critical
//! asymptotic estimate instead of a raw closed-form number, which loses
//! relative accuracy as k′ → 0.
//!
//! Evaluation may fan out over a bounded worker pool, but rows land in a
//! preallocated slot per grid point, so output order and content are
//! independent of the thread count.

use std::ops::Range;

use xy_entropy::{
    bdg_finite_chain_entropy, classify, elliptic_bundle, entropy_asymptotic_near_h2,
    entropy_closed_form, entropy_series_with, exact_diag_entropy, modulus_k,
    toeplitz_block_entropy, CaseLabel, ClassifyTolerances, FiniteChain, XYPoint, XyError,
};

/// Methods a scan can evaluate per grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSpec {
    Series,
    Closed,
    /// Toeplitz block entropy at the given block size.
    Toeplitz(usize),
    /// Half-chain entropy of an N-site open chain via the quadratic form.
    Bdg(usize),
    /// Half-chain entropy of an N-site open chain via exact diagonalization.
    Ed(usize),
}

/// Fixed value or uniform range for the anisotropy axis.
#[derive(Debug, Clone, Copy)]
pub enum GammaSpec {
    Fixed(f64),
    Range { min: f64, max: f64, steps: usize },
}

/// A validated scan request.
#[derive(Debug, Clone)]
pub struct ScanSpec {
    pub gamma: GammaSpec,
    pub h_min: f64,
    pub h_max: f64,
    pub steps: usize,
    pub methods: Vec<MethodSpec>,
    pub guard_band: f64,
    pub truncation_tol: f64,
    pub threads: usize,
    /// Report entropies in bits instead of nats.
    pub bits: bool,
}

impl ScanSpec {
    /// Validate the invariants: steps ≥ 2, h_min < h_max, oracle sizes
    /// within module limits.
    pub fn validate(&self) -> Result<(), XyError> {
        if self.steps < 2 {
            return Err(XyError::Domain(format!(
                "scan needs at least 2 field steps, got {}",
                self.steps
            )));
        }
        if self.h_min >= self.h_max || self.h_min.is_nan() || self.h_max.is_nan() {
            return Err(XyError::Domain(format!(
                "scan needs h_min < h_max, got {} and {}",
                self.h_min, self.h_max
            )));
        }
        if let GammaSpec::Range { min, max, steps } = self.gamma {
            if steps < 2 {
                return Err(XyError::Domain(format!(
                    "gamma range needs at least 2 steps, got {steps}"
                )));
            }
            if min >= max || min.is_nan() || max.is_nan() {
                return Err(XyError::Domain(format!(
                    "gamma range needs min < max, got {min} and {max}"
                )));
            }
        }
        if self.guard_band <= 0.0 || self.guard_band.is_nan() {
            return Err(XyError::Domain("guard band must be positive".into()));
        }
        if self.truncation_tol <= 0.0 || self.truncation_tol.is_nan() {
            return Err(XyError::Domain(
                "truncation tolerance must be positive".into(),
            ));
        }
        for m in &self.methods {
            match *m {
                MethodSpec::Toeplitz(0) => {
                    return Err(XyError::Domain("toeplitz block size must be >= 1".into()));
                }
                MethodSpec::Bdg(n) | MethodSpec::Ed(n) if n == 0 => {
                    return Err(XyError::Domain("chain length must be >= 1".into()));
                }
                MethodSpec::Ed(n) if n > xy_entropy::oracle::ED_MAX_SITES => {
                    return Err(XyError::Domain(format!(
                        "exact diagonalization supports up to {} sites, got {n}",
                        xy_entropy::oracle::ED_MAX_SITES
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Block sizes of the requested Toeplitz methods, in request order.
    pub fn toeplitz_sizes(&self) -> Vec<usize> {
        self.methods
            .iter()
            .filter_map(|m| match m {
                MethodSpec::Toeplitz(l) => Some(*l),
                _ => None,
            })
            .collect()
    }

    pub fn bdg_size(&self) -> Option<usize> {
        self.methods.iter().find_map(|m| match m {
            MethodSpec::Bdg(n) => Some(*n),
            _ => None,
        })
    }

    pub fn ed_size(&self) -> Option<usize> {
        self.methods.iter().find_map(|m| match m {
            MethodSpec::Ed(n) => Some(*n),
            _ => None,
        })
    }

    fn wants_series(&self) -> bool {
        self.methods.contains(&MethodSpec::Series)
    }

    fn wants_closed(&self) -> bool {
        self.methods.contains(&MethodSpec::Closed)
    }
}

/// One evaluated grid point. Unavailable quantities (divergent points,
/// per-method failures) stay `None` and serialize as empty CSV cells.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub gamma: f64,
    pub h: f64,
    pub case: CaseLabel,
    pub sigma: Option<u8>,
    pub k: Option<f64>,
    pub kprime: Option<f64>,
    pub tau0: Option<f64>,
    pub s_series: Option<f64>,
    pub series_terms: Option<usize>,
    pub series_tail: Option<f64>,
    pub s_closed: Option<f64>,
    pub s_toeplitz: Vec<Option<f64>>,
    pub s_bdg: Option<f64>,
    pub s_ed: Option<f64>,
    pub disagreement_max: Option<f64>,
    pub divergent: bool,
}

/// First half of an N-site chain; the finite-size proxy for the infinite
/// block.
fn half_block(n: usize) -> Range<usize> {
    0..n.div_ceil(2)
}

fn evaluate_point(spec: &ScanSpec, gamma: f64, h: f64) -> ScanRow {
    let unit = if spec.bits {
        std::f64::consts::LN_2
    } else {
        1.0
    };
    let point = XYPoint::new(gamma, h).expect("grid points are pre-validated");
    let regime = classify(&point, &ClassifyTolerances::default());
    let mut row = ScanRow {
        gamma,
        h,
        case: regime.label,
        sigma: regime.sigma,
        k: None,
        kprime: None,
        tau0: None,
        s_series: None,
        series_terms: None,
        series_tail: None,
        s_closed: None,
        s_toeplitz: vec![None; spec.toeplitz_sizes().len()],
        s_bdg: None,
        s_ed: None,
        disagreement_max: None,
        divergent: false,
    };

    if matches!(
        regime.label,
        CaseLabel::CriticalH | CaseLabel::CriticalGamma
    ) {
        row.divergent = true;
        return row;
    }

    let k = match modulus_k(&point, &regime) {
        Ok(k) => k,
        Err(_) => {
            row.divergent = true;
            return row;
        }
    };
    row.k = Some(k);
    row.kprime = Some(((1.0 - k) * (1.0 + k)).sqrt());
    row.tau0 = elliptic_bundle(k).ok().map(|b| b.tau0);

    let in_band = (h - 2.0).abs() < spec.guard_band || gamma < spec.guard_band;
    if in_band {
        row.divergent = true;
        // near h = 2 the asymptote replaces the raw closed-form number
        if spec.wants_closed() {
            if let Ok(est) = entropy_asymptotic_near_h2(&point, spec.guard_band) {
                row.s_closed = Some(est.value / unit);
            }
        }
        return row;
    }

    let mut values: Vec<f64> = Vec::new();
    if spec.wants_series() {
        if let Ok(r) = entropy_series_with(&point, spec.truncation_tol) {
            row.s_series = Some(r.value / unit);
            row.series_terms = r.terms_used;
            row.series_tail = r.tail_bound.map(|t| t / unit);
            values.push(r.value / unit);
        }
    }
    if spec.wants_closed() {
        if let Ok(r) = entropy_closed_form(&point) {
            row.s_closed = Some(r.value / unit);
            values.push(r.value / unit);
        }
    }
    for (slot, l) in spec.toeplitz_sizes().into_iter().enumerate() {
        if let Ok(s) = toeplitz_block_entropy(&point, l) {
            row.s_toeplitz[slot] = Some(s / unit);
            values.push(s / unit);
        }
    }
    if let Some(n) = spec.bdg_size() {
        if let Ok(chain) = FiniteChain::new(point, n) {
            if let Ok(s) = bdg_finite_chain_entropy(&chain, half_block(n)) {
                row.s_bdg = Some(s / unit);
                values.push(s / unit);
            }
        }
    }
    if let Some(n) = spec.ed_size() {
        if let Ok(chain) = FiniteChain::new(point, n) {
            if let Ok(r) = exact_diag_entropy(&chain, half_block(n)) {
                row.s_ed = Some(r.value / unit);
                values.push(r.value / unit);
            }
        }
    }
    if values.len() >= 2 {
        let mut max_diff = 0.0f64;
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                max_diff = max_diff.max((values[i] - values[j]).abs());
            }
        }
        row.disagreement_max = Some(max_diff);
    }
    row
}

/// Grid points in lexicographic (γ, h) order, skipping any that fall
/// outside the validity domain (a scan over invalid parameters is vacuous,
/// not an error).
pub fn grid_points(spec: &ScanSpec) -> Vec<(f64, f64)> {
    let gammas: Vec<f64> = match spec.gamma {
        GammaSpec::Fixed(g) => vec![g],
        GammaSpec::Range { min, max, steps } => (0..steps)
            .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
            .collect(),
    };
    let mut points = Vec::new();
    for &gamma in &gammas {
        if !(gamma > 0.0 && gamma <= 1.0) {
            continue;
        }
        for j in 0..spec.steps {
            let h = spec.h_min + (spec.h_max - spec.h_min) * j as f64 / (spec.steps - 1) as f64;
            if h < 0.0 {
                continue;
            }
            points.push((gamma, h));
        }
    }
    points
}

/// Run the scan. Rows come back in grid order regardless of `threads`.
pub fn run_scan(spec: &ScanSpec) -> Result<Vec<ScanRow>, XyError> {
    spec.validate()?;
    let points = grid_points(spec);
    let n = points.len();
    let workers = spec.threads.max(1).min(n.max(1));
    let mut rows: Vec<Option<ScanRow>> = vec![None; n];

    if workers <= 1 {
        for (slot, &(gamma, h)) in rows.iter_mut().zip(&points) {
            *slot = Some(evaluate_point(spec, gamma, h));
        }
    } else {
        let chunk = n.div_ceil(workers);
        std::thread::scope(|scope| {
            for (slot_chunk, point_chunk) in rows.chunks_mut(chunk).zip(points.chunks(chunk)) {
                scope.spawn(move || {
                    for (slot, &(gamma, h)) in slot_chunk.iter_mut().zip(point_chunk) {
                        *slot = Some(evaluate_point(spec, gamma, h));
                    }
                });
            }
        });
    }
    Ok(rows
        .into_iter()
        .map(|r| r.expect("all slots filled"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_spec() -> ScanSpec {
        ScanSpec {
            gamma: GammaSpec::Fixed(0.5),
            h_min: 0.0,
            h_max: 3.0,
            steps: 13,
            methods: vec![MethodSpec::Series, MethodSpec::Closed],
            guard_band: 0.05,
            truncation_tol: 1e-12,
            threads: 1,
            bits: false,
        }
    }

    #[test]
    fn rows_are_lexicographic_and_complete() {
        let spec = ScanSpec {
            gamma: GammaSpec::Range {
                min: 0.3,
                max: 0.7,
                steps: 3,
            },
            ..base_spec()
        };
        let rows = run_scan(&spec).unwrap();
        assert_eq!(rows.len(), 3 * 13);
        for w in rows.windows(2) {
            let a = (w[0].gamma, w[0].h);
            let b = (w[1].gamma, w[1].h);
            assert!(a < b, "rows out of order: {a:?} then {b:?}");
        }
    }

    #[test]
    fn off_band_rows_agree_and_band_rows_are_divergent() {
        let rows = run_scan(&base_spec()).unwrap();
        for row in &rows {
            if (row.h - 2.0).abs() < 0.05 {
                assert!(row.divergent);
                assert!(row.s_series.is_none());
            } else {
                assert!(!row.divergent, "h = {}", row.h);
                let d = row.disagreement_max.unwrap();
                assert!(d <= 1e-10 + 10.0 * row.series_tail.unwrap());
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_rows() {
        let mut spec = base_spec();
        spec.methods.push(MethodSpec::Toeplitz(10));
        let one = run_scan(&spec).unwrap();
        spec.threads = 5;
        let five = run_scan(&spec).unwrap();
        assert_eq!(one.len(), five.len());
        for (a, b) in one.iter().zip(&five) {
            assert_eq!(a.gamma.to_bits(), b.gamma.to_bits());
            assert_eq!(a.s_series.map(f64::to_bits), b.s_series.map(f64::to_bits));
            assert_eq!(
                a.s_toeplitz[0].map(f64::to_bits),
                b.s_toeplitz[0].map(f64::to_bits)
            );
        }
    }

    #[test]
    fn vacuous_scan_is_empty_not_an_error() {
        let spec = ScanSpec {
            gamma: GammaSpec::Fixed(1.5),
            ..base_spec()
        };
        assert!(run_scan(&spec).unwrap().is_empty());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(run_scan(&ScanSpec {
            steps: 1,
            ..base_spec()
        })
        .is_err());
        assert!(run_scan(&ScanSpec {
            h_min: 2.0,
            h_max: 1.0,
            ..base_spec()
        })
        .is_err());
        assert!(run_scan(&ScanSpec {
            methods: vec![MethodSpec::Ed(14)],
            ..base_spec()
        })
        .is_err());
    }

    #[test]
    fn bits_flag_rescales() {
        let mut spec = base_spec();
        spec.bits = true;
        let rows = run_scan(&spec).unwrap();
        let nats = run_scan(&base_spec()).unwrap();
        for (b, n) in rows.iter().zip(&nats) {
            if let (Some(sb), Some(sn)) = (b.s_closed, n.s_closed) {
                assert!((sb * std::f64::consts::LN_2 - sn).abs() < 1e-14);
            }
        }
    }
}
