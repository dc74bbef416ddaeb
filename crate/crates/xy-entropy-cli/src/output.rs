//! Deterministic CSV and JSON emission.
//!
//! Floats are printed with 17 significant digits ('.' separator, scientific
//! notation), lines end with '\n', and column order is fixed, so identical
//! inputs produce byte-identical files on every run and thread count.

use crate::scan::{ScanRow, ScanSpec};
use serde_json::{json, Map, Value};

/// 17 significant digits; round-trips f64 exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell_f(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn cell_u(v: Option<usize>) -> String {
    v.map(|u| u.to_string()).unwrap_or_default()
}

/// Column names of a scan: the fixed prefix, one column per requested
/// Toeplitz size, optional bdg/ed columns, then the trailing pair.
pub fn scan_columns(spec: &ScanSpec) -> Vec<String> {
    let mut cols: Vec<String> = [
        "gamma",
        "h",
        "case",
        "sigma",
        "k",
        "kprime",
        "tau0",
        "S_series",
        "series_terms",
        "series_tail",
        "S_closed",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for l in spec.toeplitz_sizes() {
        cols.push(format!("S_toeplitz_{l}"));
    }
    if let Some(n) = spec.bdg_size() {
        cols.push(format!("S_bdg_{n}"));
    }
    if let Some(n) = spec.ed_size() {
        cols.push(format!("S_ed_{n}"));
    }
    cols.push("disagreement_max".to_string());
    cols.push("divergent".to_string());
    cols
}

fn row_cells(row: &ScanRow) -> Vec<String> {
    let mut cells = vec![
        fmt_float(row.gamma),
        fmt_float(row.h),
        row.case.as_str().to_string(),
        cell_u(row.sigma.map(|s| s as usize)),
        cell_f(row.k),
        cell_f(row.kprime),
        cell_f(row.tau0),
        cell_f(row.s_series),
        cell_u(row.series_terms),
        cell_f(row.series_tail),
        cell_f(row.s_closed),
    ];
    for s in &row.s_toeplitz {
        cells.push(cell_f(*s));
    }
    cells
}

/// Render scan rows as CSV with a mandatory header row.
pub fn scan_to_csv(spec: &ScanSpec, rows: &[ScanRow]) -> String {
    let mut out = String::new();
    out.push_str(&scan_columns(spec).join(","));
    out.push('\n');
    let has_bdg = spec.bdg_size().is_some();
    let has_ed = spec.ed_size().is_some();
    for row in rows {
        let mut cells = row_cells(row);
        if has_bdg {
            cells.push(cell_f(row.s_bdg));
        }
        if has_ed {
            cells.push(cell_f(row.s_ed));
        }
        cells.push(cell_f(row.disagreement_max));
        cells.push(row.divergent.to_string());
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Render scan rows as a JSON array mirroring the CSV columns as named
/// fields (absent values become null).
pub fn scan_to_json(spec: &ScanSpec, rows: &[ScanRow]) -> String {
    let columns = scan_columns(spec);
    let has_bdg = spec.bdg_size().is_some();
    let has_ed = spec.ed_size().is_some();
    let array: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut values: Vec<Value> = vec![
                json!(row.gamma),
                json!(row.h),
                json!(row.case.as_str()),
                row.sigma.map_or(Value::Null, |s| json!(s)),
                row.k.map_or(Value::Null, |v| json!(v)),
                row.kprime.map_or(Value::Null, |v| json!(v)),
                row.tau0.map_or(Value::Null, |v| json!(v)),
                row.s_series.map_or(Value::Null, |v| json!(v)),
                row.series_terms.map_or(Value::Null, |v| json!(v)),
                row.series_tail.map_or(Value::Null, |v| json!(v)),
                row.s_closed.map_or(Value::Null, |v| json!(v)),
            ];
            for s in &row.s_toeplitz {
                values.push(s.map_or(Value::Null, |v| json!(v)));
            }
            if has_bdg {
                values.push(row.s_bdg.map_or(Value::Null, |v| json!(v)));
            }
            if has_ed {
                values.push(row.s_ed.map_or(Value::Null, |v| json!(v)));
            }
            values.push(row.disagreement_max.map_or(Value::Null, |v| json!(v)));
            values.push(json!(row.divergent));
            let mut obj = Map::new();
            for (name, value) in columns.iter().zip(values) {
                obj.insert(name.clone(), value);
            }
            Value::Object(obj)
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&Value::Array(array)).expect("plain data");
    text.push('\n');
    text
}
