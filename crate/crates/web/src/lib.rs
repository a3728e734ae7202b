//! Browser bindings: tension chains, ansatz kernels and sampled fields for
//! a canvas heatmap. Every export takes and returns JSON text; the plain
//! Rust functions underneath are what the tests exercise.

use polyharm::families::{primitive_expr, AnsatzSystem};
use polyharm::oracle::{fd_tension, OracleConfig};
use polyharm::{Convention, Geometry};
use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn geometry(id: &str, convention: &str) -> Result<Geometry, String> {
    let conv = Convention::from_name(convention).ok_or_else(|| format!("unknown convention '{convention}'"))?;
    Geometry::by_id(id, conv).map_err(|e| e.to_string())
}

/// The tension chain of `expr` and its properness order.
pub fn classify(geometry_id: &str, convention: &str, expr: &str, r_max: u32) -> Result<Value, String> {
    let g = geometry(geometry_id, convention)?;
    let f = g.parse(expr).map_err(|e| e.to_string())?;
    let rep = g.classify(&f, r_max.clamp(1, 16)).map_err(|e| e.to_string())?;
    Ok(json!({
        "geometry": g.id(),
        "coordinates": g.coordinate_names(),
        "chain": rep.printed_chain(),
        "order": rep.order.as_i64(),
        "order_text": rep.order.to_string(),
    }))
}

/// Exact matrix of `τ^order` on the span of `terms`, and its kernel.
pub fn ansatz(geometry_id: &str, convention: &str, terms: &str, order: u32) -> Result<Value, String> {
    let g = geometry(geometry_id, convention)?;
    let sys = AnsatzSystem::from_text(&g, terms, order.max(1)).map_err(|e| e.to_string())?;
    let kernel = sys.generate_kernel().map_err(|e| e.to_string())?;
    let rows: Vec<Vec<String>> =
        sys.primitive_rows().row_vecs().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    Ok(json!({
        "basis": sys.basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "rows": rows,
        "kernel": kernel.iter().map(|f| primitive_expr(f).to_string()).collect::<Vec<_>>(),
    }))
}

#[derive(Debug, Serialize)]
pub struct Slice {
    pub axes: [String; 2],
    pub resolution: usize,
    pub bounds: [f64; 4],
    /// Row-major `resolution × resolution` grids; `None` outside the chart.
    pub f: Vec<Option<f64>>,
    pub tension: Vec<Option<f64>>,
    pub residual: Vec<Option<f64>>,
}

/// Samples `Re f`, `Re τf` and `|τf - τ_fd f|` on a planar slice through
/// coordinates `axis_a`, `axis_b`; the remaining coordinates are `fixed`.
#[allow(clippy::too_many_arguments)]
pub fn slice(
    geometry_id: &str,
    convention: &str,
    expr: &str,
    axis_a: usize,
    axis_b: usize,
    fixed: f64,
    bounds: [f64; 4],
    resolution: usize,
) -> Result<Slice, String> {
    let g = geometry(geometry_id, convention)?;
    let f = g.parse(expr).map_err(|e| e.to_string())?;
    let tau = g.tension(&f).map_err(|e| e.to_string())?;
    let n = g.dim();
    if axis_a >= n || axis_b >= n || axis_a == axis_b {
        return Err(format!("axes must be two distinct indices below {n}"));
    }
    let resolution = resolution.clamp(2, 200);
    let cfg = OracleConfig { step: 1e-3, levels: 2, margin: 0.01, ..OracleConfig::default() };
    let names = g.coordinate_names();
    let mut out = Slice {
        axes: [names[axis_a].clone(), names[axis_b].clone()],
        resolution,
        bounds,
        f: Vec::with_capacity(resolution * resolution),
        tension: Vec::with_capacity(resolution * resolution),
        residual: Vec::with_capacity(resolution * resolution),
    };
    let step = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (resolution - 1) as f64;
    for i in 0..resolution {
        for j in 0..resolution {
            let mut p = vec![fixed; n];
            p[axis_a] = step(bounds[0], bounds[1], j);
            p[axis_b] = step(bounds[3], bounds[2], i);
            let value = g.evaluate(&f, &p).ok();
            let symbolic = g.evaluate(&tau, &p).ok();
            let fd = fd_tension(&g, |q| g.evaluate(&f, q), &p, &cfg).ok();
            out.f.push(value.map(|v| v.re));
            out.tension.push(symbolic.map(|v| v.re));
            out.residual.push(symbolic.zip(fd).map(|(s, d)| (s - d).norm()));
        }
    }
    Ok(out)
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(geometry_id: &str, convention: &str, expr: &str, r_max: u32) -> String {
    respond(classify(geometry_id, convention, expr, r_max))
}

#[wasm_bindgen(js_name = ansatz)]
pub fn ansatz_js(geometry_id: &str, convention: &str, terms: &str, order: u32) -> String {
    respond(ansatz(geometry_id, convention, terms, order))
}

#[wasm_bindgen(js_name = slice)]
#[allow(clippy::too_many_arguments)]
pub fn slice_js(
    geometry_id: &str,
    convention: &str,
    expr: &str,
    axis_a: usize,
    axis_b: usize,
    fixed: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    resolution: usize,
) -> String {
    respond(
        slice(geometry_id, convention, expr, axis_a, axis_b, fixed, [xmin, xmax, ymin, ymax], resolution)
            .map(|s| serde_json::to_value(s).expect("serializable")),
    )
}
