//! Entropy-versus-field curve at fixed anisotropy.
//!
//! Samples the closed form on a uniform field grid over [0, 3], inserts the
//! exact factorizing field so the ln 2 minimum appears as a row of its own,
//! and marks everything inside the guard band around h = 2 divergent with no
//! finite value. A plain-text gnuplot script with the case boundaries
//! annotated accompanies the CSV.

use crate::output::fmt_float;
use xy_entropy::{
    classify, entropy_closed_form, factorizing_field, CaseLabel, ClassifyTolerances, XYPoint,
    XyError,
};

#[derive(Debug, Clone)]
pub struct Figure1Row {
    pub h: f64,
    pub case: CaseLabel,
    pub entropy: Option<f64>,
    pub divergent: bool,
}

pub const FIGURE1_H_MAX: f64 = 3.0;

/// The sampled curve: `points` uniform samples of h ∈ [0, 3] plus the exact
/// factorizing field, in ascending field order.
pub fn figure1_rows(
    gamma: f64,
    points: usize,
    guard_band: f64,
    bits: bool,
) -> Result<Vec<Figure1Row>, XyError> {
    if points < 2 {
        return Err(XyError::Domain(format!(
            "figure needs at least 2 points, got {points}"
        )));
    }
    if guard_band <= 0.0 || guard_band.is_nan() {
        return Err(XyError::Domain("guard band must be positive".into()));
    }
    let unit = if bits { std::f64::consts::LN_2 } else { 1.0 };
    let hf = factorizing_field(gamma)?;
    let mut hs: Vec<f64> = (0..points)
        .map(|i| FIGURE1_H_MAX * i as f64 / (points - 1) as f64)
        .collect();
    if hs.iter().all(|&h| h != hf) {
        hs.push(hf);
    }
    hs.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let tols = ClassifyTolerances::default();
    let rows = hs
        .into_iter()
        .map(|h| {
            let point = XYPoint::new(gamma, h).expect("figure grid stays in-domain");
            let case = classify(&point, &tols).label;
            let in_band = (h - 2.0).abs() < guard_band;
            if in_band || matches!(case, CaseLabel::CriticalH | CaseLabel::CriticalGamma) {
                return Figure1Row {
                    h,
                    case,
                    entropy: None,
                    divergent: true,
                };
            }
            let entropy = entropy_closed_form(&point).ok().map(|r| r.value / unit);
            Figure1Row {
                h,
                case,
                entropy,
                divergent: entropy.is_none(),
            }
        })
        .collect();
    Ok(rows)
}

pub fn figure1_csv(rows: &[Figure1Row]) -> String {
    let mut out = String::from("h,case,S,divergent\n");
    for row in rows {
        out.push_str(&fmt_float(row.h));
        out.push(',');
        out.push_str(row.case.as_str());
        out.push(',');
        if let Some(s) = row.entropy {
            out.push_str(&fmt_float(s));
        }
        out.push(',');
        out.push_str(if row.divergent { "true" } else { "false" });
        out.push('\n');
    }
    out
}

/// gnuplot script plotting the CSV, with the factorizing field and the
/// critical field drawn as labeled vertical lines.
pub fn figure1_script(csv_name: &str, gamma: f64, bits: bool) -> String {
    let hf = 2.0 * ((1.0 - gamma) * (1.0 + gamma)).sqrt();
    let unit = if bits { "bits" } else { "nats" };
    format!(
        "# limiting block entropy of the XY chain at gamma = {gamma}\n\
         # usage: gnuplot -persist <this file>\n\
         set datafile separator ','\n\
         set xlabel 'magnetic field h'\n\
         set ylabel 'limiting block entropy S ({unit})'\n\
         set xrange [0:{hmax}]\n\
         set key off\n\
         set arrow 1 from {hf:.16e}, graph 0 to {hf:.16e}, graph 1 nohead dashtype 2 lc rgb 'gray40'\n\
         set label 1 'h = 2(1-gamma^2)^{{1/2}} (S = ln 2)' at {hf:.16e}, graph 0.06 rotate by 90 offset character -1, 0\n\
         set arrow 2 from 2.0, graph 0 to 2.0, graph 1 nohead dashtype 3 lc rgb 'red'\n\
         set label 2 'h = 2 (critical, S diverges)' at 2.0, graph 0.06 rotate by 90 offset character -1, 0\n\
         plot '{csv_name}' every ::1 using 1:3 with lines lw 2 lc rgb 'navy'\n",
        hmax = FIGURE1_H_MAX,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn boundary_row_is_exact_ln2() {
        let rows = figure1_rows(0.5, 600, 0.05, false).unwrap();
        assert_eq!(rows.len(), 601);
        let hf = 3.0f64.sqrt();
        let boundary = rows
            .iter()
            .find(|r| r.case == CaseLabel::FactorizingBoundary)
            .expect("inserted boundary row");
        assert!((boundary.h - hf).abs() < 1e-15);
        assert_eq!(boundary.entropy, Some(LN_2));
    }

    #[test]
    fn band_rows_have_no_finite_value() {
        let rows = figure1_rows(0.5, 600, 0.05, false).unwrap();
        for row in &rows {
            if (row.h - 2.0).abs() < 0.05 {
                assert!(row.divergent && row.entropy.is_none(), "h = {}", row.h);
            } else {
                assert!(row.entropy.is_some(), "h = {}", row.h);
            }
        }
    }

    #[test]
    fn rows_are_sorted_and_csv_is_well_formed() {
        let rows = figure1_rows(0.5, 100, 0.05, false).unwrap();
        for w in rows.windows(2) {
            assert!(w[0].h < w[1].h);
        }
        let csv = figure1_csv(&rows);
        assert!(csv.starts_with("h,case,S,divergent\n"));
        assert_eq!(csv.lines().count(), rows.len() + 1);
    }

    #[test]
    fn script_mentions_the_boundaries_and_csv() {
        let script = figure1_script("figure1.csv", 0.5, false);
        assert!(script.contains("figure1.csv"));
        assert!(script.contains("1.7320508075688772e0"));
        assert!(script.contains("set arrow 2 from 2.0"));
    }
}
