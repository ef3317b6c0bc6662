//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use powmean::grid::Grid;
use powmean::sharp::{self, ComparisonPair, Direction};
use powmean::{power_type_eval, MeanKind, PowerTypeSpec};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse<T: std::str::FromStr<Err = powmean::Error>>(s: &str) -> Result<T, String> {
    s.trim().parse().map_err(|e: powmean::Error| e.to_string())
}

/// `M_p(x, 1)` together with `A(x, 1)` and `G(x, 1)` at `n` evenly spaced `x`.
pub fn mean_curve_json(kind: &str, p: f64, n: usize) -> Result<String, String> {
    let kind: MeanKind = parse(kind)?;
    let spec = PowerTypeSpec::new(kind, p).map_err(|e| e.to_string())?;
    let n = n.clamp(2, 2000);
    let grid = Grid::uniform(n);
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for &x in grid.points() {
        xs.push(x);
        ys.push(
            power_type_eval(spec, x, 1.0)
                .map_err(|e| e.to_string())?
                .value,
        );
    }
    let arithmetic: Vec<f64> = xs.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let geometric: Vec<f64> = xs.iter().map(|x| x.sqrt()).collect();
    Ok(json!({
        "label": spec.to_string(),
        "x": xs,
        "y": ys,
        "arithmetic": arithmetic,
        "geometric": geometric,
    })
    .to_string())
}

/// Sharp exponent of `family_p` against `reference`, with the `c2` line.
pub fn critical_exponent_json(
    family: &str,
    reference: &str,
    direction: &str,
) -> Result<String, String> {
    let pair = ComparisonPair::new(
        parse(family)?,
        parse(reference)?,
        parse::<Direction>(direction)?,
    );
    let report = sharp::critical_exponent(&pair).map_err(|e| e.to_string())?;
    let line: Vec<Value> = (-40..=40)
        .map(|i| {
            let p = report.p_star + i as f64 * 0.1;
            json!([p, report.c2_slope * p + report.c2_intercept])
        })
        .collect();
    Ok(json!({
        "label": report.label,
        "p_star": report.p_star,
        "slope": report.c2_slope,
        "intercept": report.c2_intercept,
        "verdict": report.verdict(),
        "endpoint_gap": report.endpoint_check.map(|c| c.at_star),
        "line": line,
    })
    .to_string())
}

/// Relative gap `T_p(x, 1) / N(x, 1) - 1` on the default scan grid.
pub fn conjecture_scan_json(p: f64, samples: usize) -> Result<String, String> {
    let grid = sharp::scan_grid(samples.clamp(2, 4000)).map_err(|e| e.to_string())?;
    let scan = sharp::conjecture_scan(p, &grid).map_err(|e| e.to_string())?;
    let (lesser, greater) = sharp::conjecture_pair()
        .sides(p)
        .map_err(|e| e.to_string())?;
    let gaps = grid
        .points()
        .iter()
        .map(|&x| powmean::means::relative_gap(lesser, greater, x, 1.0).map(|g| json!([x, g])))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "label": scan.label,
        "p": p,
        "points": scan.points,
        "min_gap": scan.min_gap,
        "argmin_x": scan.argmin_x,
        "violations": scan.violations.len(),
        "gaps": gaps,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn mean_curve(kind: &str, p: f64, n: usize) -> Result<String, JsValue> {
    mean_curve_json(kind, p, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn critical_exponent(
    family: &str,
    reference: &str,
    direction: &str,
) -> Result<String, JsValue> {
    critical_exponent_json(family, reference, direction).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn conjecture_scan(p: f64, samples: usize) -> Result<String, JsValue> {
    conjecture_scan_json(p, samples).map_err(|e| JsValue::from_str(&e))
}
