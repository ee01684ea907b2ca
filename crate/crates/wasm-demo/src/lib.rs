//! Browser front end: a dimension table, evaluation of a preset valuation on
//! a user polygon, and a dilativity check. Each export takes and returns
//! JSON strings; the plain functions underneath are what the tests call.

use latval_core::valuation::{cosh_type, odd_basis, Valuation, ValuationSpec};
use latval_core::vspace::{dims_table, vd_basis};
use latval_core::wire::{PolygonJson, SeriesJson};
use latval_core::{rational, LatticePolygon, Series2};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_ORDER: u32 = 14;
const MAX_COORD: i64 = 8;

pub const PRESETS: [&str; 5] = ["laplace", "v4", "v6", "odd1", "val0"];

fn preset(name: &str, order: u32) -> Result<ValuationSpec, String> {
    let n = order;
    let spec = match name {
        "laplace" => Ok(ValuationSpec::laplace(n)),
        "v4" | "v6" => {
            let d = if name == "v4" { 4 } else { 6 };
            ValuationSpec::simple(vd_basis(d).at_order(n).remove(0), n)
        }
        "odd1" => odd_basis(1, n).and_then(|g| ValuationSpec::new(rational::int(0), g, Series2::zero(n), n)),
        "val0" => ValuationSpec::new(
            rational::int(1),
            cosh_type(n),
            Series2::constant(rational::int(-1), n),
            n,
        ),
        other => return Err(format!("unknown preset {other:?}")),
    };
    spec.map_err(|e| e.to_string())
}

fn parse_polygon(vertices: &str) -> Result<LatticePolygon, String> {
    let raw: PolygonJson = serde_json::from_str(vertices).map_err(|e| e.to_string())?;
    if raw.vertices.iter().flatten().any(|c| c.abs() > MAX_COORD) {
        return Err(format!("coordinates must lie in [-{MAX_COORD}, {MAX_COORD}]"));
    }
    raw.to_polygon().map_err(|e| e.to_string())
}

fn check_order(order: u32) -> Result<u32, String> {
    if (2..=MAX_ORDER).contains(&order) {
        Ok(order)
    } else {
        Err(format!("order must be between 2 and {MAX_ORDER}"))
    }
}

#[derive(Serialize)]
struct Term {
    x: u32,
    y: u32,
    c: String,
}

fn terms(f: &Series2) -> Vec<Term> {
    let mut out: Vec<Term> = f.terms().map(|((p, q), c)| Term { x: p, y: q, c: rational::format(c) }).collect();
    out.sort_by_key(|t| (t.x + t.y, std::cmp::Reverse(t.x)));
    out
}

pub fn dims_json(max: u32) -> Result<String, String> {
    if max > 40 {
        return Err("max degree is 40".into());
    }
    let rows: Vec<_> = dims_table(max)
        .into_iter()
        .map(|r| json!({"d": r.d, "computed": r.computed, "predicted": r.predicted}))
        .collect();
    Ok(json!(rows).to_string())
}

pub fn evaluate_json(preset_name: &str, vertices: &str, order: u32) -> Result<String, String> {
    let spec = preset(preset_name, check_order(order)?)?;
    let poly = parse_polygon(vertices)?;
    let v = Valuation::new(spec).map_err(|e| e.to_string())?;
    let z = v.z_polygon(&poly);
    let triangles: Vec<[[i64; 2]; 3]> = match poly.unimodular_triangulation() {
        Ok(t) => t.triangles.iter().map(|tr| t.triangle_points(tr).map(|(a, b)| [a, b])).collect(),
        Err(_) => Vec::new(),
    };
    Ok(json!({
        "vertices": PolygonJson::from_polygon(&poly).vertices,
        "lattice_points": poly.lattice_points().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        "triangles": triangles,
        "order": z.order(),
        "terms": terms(&z),
        "series": SeriesJson::from_series2(&z),
    })
    .to_string())
}

pub fn dilative_json(preset_name: &str, vertices: &str, delta: i32, m: i64, order: u32) -> Result<String, String> {
    if !(2..=4).contains(&m) {
        return Err("m must be 2, 3 or 4".into());
    }
    let spec = preset(preset_name, check_order(order)?)?;
    let poly = parse_polygon(vertices)?;
    let v = Valuation::new(spec).map_err(|e| e.to_string())?;
    let report = v.check_dilative(delta, &[m], &[poly]);
    let first = report.first_failure().and_then(|c| c.comparison.first_violation.clone());
    Ok(json!({
        "holds": report.holds(),
        "verified_order": report.verified_order(),
        "first_violation": first.map(|v| json!({
            "exponent": [v.exponent.0, v.exponent.1],
            "lhs": rational::format(&v.lhs),
            "rhs": rational::format(&v.rhs),
        })),
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dims(max: u32) -> Result<String, JsValue> {
    js(dims_json(max))
}

#[wasm_bindgen]
pub fn evaluate(preset: &str, vertices: &str, order: u32) -> Result<String, JsValue> {
    js(evaluate_json(preset, vertices, order))
}

#[wasm_bindgen]
pub fn dilative(preset: &str, vertices: &str, delta: i32, m: i32, order: u32) -> Result<String, JsValue> {
    js(dilative_json(preset, vertices, delta, m as i64, order))
}

#[wasm_bindgen]
pub fn presets() -> String {
    json!(PRESETS).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn every_preset_builds() {
        for p in PRESETS {
            assert!(preset(p, 8).is_ok(), "{p}");
        }
        assert!(preset("nope", 8).is_err());
    }

    #[test]
    fn laplace_on_t() {
        let out: Value = serde_json::from_str(&evaluate_json("laplace", r#"{"vertices":[[0,0],[1,0],[0,1]]}"#, 6).unwrap()).unwrap();
        assert_eq!(out["triangles"].as_array().unwrap().len(), 1);
        assert_eq!(out["terms"][0]["c"], "1/2");
        assert_eq!(out["order"], 5);
    }

    #[test]
    fn dilativity_verdicts() {
        let sq = r#"{"vertices":[[0,0],[1,0],[1,1],[0,1]]}"#;
        let ok: Value = serde_json::from_str(&dilative_json("v4", sq, 2, 2, 8).unwrap()).unwrap();
        assert_eq!(ok["holds"], true);
        let bad: Value = serde_json::from_str(&dilative_json("laplace", sq, 0, 2, 8).unwrap()).unwrap();
        assert_eq!(bad["holds"], false);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(evaluate_json("laplace", r#"{"vertices":[[0,0],[99,0],[0,1]]}"#, 6).is_err());
        assert!(evaluate_json("laplace", "[1,2]", 6).is_err());
        assert!(evaluate_json("laplace", r#"{"vertices":[[0,0]]}"#, 40).is_err());
        assert!(dims_json(100).is_err());
    }

    #[test]
    fn dims_prefix() {
        let rows: Value = serde_json::from_str(&dims_json(12).unwrap()).unwrap();
        assert_eq!(rows[12]["computed"], 2);
    }
}
