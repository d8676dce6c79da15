//! wasm-bindgen front end for the browser demo in `www/`.
//!
//! Every export takes a graph source string: a family spec such as
//! `odd:5` or a graph6 string. Results come back as JSON text. The exact
//! oracle is not exposed because it needs a wall clock.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use specind::bounds::{best_bounds_with, BoundOptions};
use specind::graphs::parse_graph6;
use specind::optimize::minor_polynomial;
use specind::report::spectrum_json as spectrum_value;
use specind::spectra::{exact_family_spectrum, spectrum_default};
use specind::{FamilySpec, Graph, Spectrum};

/// Demo inputs are small; this keeps the page responsive.
const MAX_N: usize = 400;

fn load(source: &str) -> Result<(Graph, Spectrum), String> {
    let source = source.trim();
    if let Ok(spec) = source.parse::<FamilySpec>() {
        if spec.vertex_count() > MAX_N {
            return Err(format!("{spec} has {} vertices; the demo stops at {MAX_N}", spec.vertex_count()));
        }
        let g = spec.generate().map_err(|e| e.to_string())?;
        let s = exact_family_spectrum(&spec).or_else(|_| spectrum_default(&g)).map_err(|e| e.to_string())?;
        return Ok((g, s));
    }
    let g = parse_graph6(source).map_err(|e| format!("not a family or graph6 string: {e}"))?;
    if g.n() > MAX_N {
        return Err(format!("{} vertices; the demo stops at {MAX_N}", g.n()));
    }
    let s = spectrum_default(&g).map_err(|e| e.to_string())?;
    Ok((g, s))
}

fn finish(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

fn spectrum_impl(source: &str) -> Result<Value, String> {
    let (g, s) = load(source)?;
    let mut v = spectrum_value(&s);
    v["edges"] = json!(g.edge_count());
    Ok(v)
}

fn minor_impl(source: &str, k: usize, samples: usize) -> Result<Value, String> {
    let (_, s) = load(source)?;
    let f = minor_polynomial(&s, k).map_err(|e| e.to_string())?;
    let c = f.to_coeffs();
    let t = s.theta();
    let (lo, hi) = (t[s.d()] - 0.5, t[0] + 0.5);
    let samples = samples.clamp(2, 2000);
    let curve: Vec<[f64; 2]> = (0..samples)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
            [x, c.eval(x)]
        })
        .collect();
    Ok(json!({
        "k": k,
        "theta": t,
        "mult": s.mults(),
        "values": f.values(),
        "fractions": f.fractions(),
        "coeffs": c.coeffs(),
        "pretty": c.pretty(),
        "trace": s.weighted_sum(f.values()),
        "curve": curve,
    }))
}

fn bounds_impl(source: &str, k: usize) -> Result<Value, String> {
    let (g, s) = load(source)?;
    let summary = best_bounds_with(&g, &s, k, &BoundOptions::default()).map_err(|e| e.to_string())?;
    serde_json::to_value(summary).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn spectrum_json(source: &str) -> Result<String, JsError> {
    finish(spectrum_impl(source))
}

/// The optimal minor polynomial plus `samples` points of its graph.
#[wasm_bindgen]
pub fn minor_polynomial_json(source: &str, k: usize, samples: usize) -> Result<String, JsError> {
    finish(minor_impl(source, k, samples))
}

#[wasm_bindgen]
pub fn bounds_json(source: &str, k: usize) -> Result<String, JsError> {
    finish(bounds_impl(source, k))
}
