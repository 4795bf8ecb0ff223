//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes plain values and returns a JSON string; the page
//! does the rendering. The `*_json` functions are the native versions
//! used by the tests.

use kfe_core::analysis::clique_number;
use kfe_core::analysis::oracle::CLIQUE_LIMIT;
use kfe_core::enumerator::CountSink;
use kfe_core::{enumerate_linear_space, generate, Family, Graph, LinearOptions, SolutionDiff, Vertex};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Larger graphs are refused so the page stays responsive.
pub const MAX_VERTICES: usize = 5000;

#[derive(Debug, Serialize)]
pub struct CountResult {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub solutions: u64,
    pub complete: bool,
    pub ops: u64,
    pub ops_per_solution: f64,
    pub peak_space: u64,
    pub omega: Option<usize>,
    pub q: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct PreviewLine {
    pub pop: usize,
    pub push: Option<Vertex>,
    pub set: Vec<Vertex>,
}

#[derive(Debug, Serialize)]
pub struct Preview {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub lines: Vec<PreviewLine>,
    pub truncated: bool,
}

fn graph(spec: &str, seed: u64) -> Result<(Family, Graph), String> {
    let fam: Family = spec.trim().parse().map_err(|e: kfe_core::error::GraphError| e.to_string())?;
    let g = generate(fam, seed).map_err(|e| e.to_string())?;
    if g.n() > MAX_VERTICES {
        return Err(format!("{} vertices is more than the demo allows ({MAX_VERTICES})", g.n()));
    }
    Ok((fam, g))
}

fn measure(fam: Family, g: &Graph, limit: u64) -> Result<CountResult, String> {
    let mut sink = CountSink { count: 0, limit: Some(limit.max(1)) };
    let run = enumerate_linear_space(g, &mut sink, &LinearOptions::release()).map_err(|e| e.to_string())?;
    let omega = if g.n() <= CLIQUE_LIMIT { clique_number(g).ok() } else { None };
    Ok(CountResult {
        family: fam.to_string(),
        n: g.n(),
        m: g.m(),
        solutions: run.count,
        complete: !run.aborted,
        ops: run.stats.ops,
        ops_per_solution: run.stats.ops as f64 / run.count.max(1) as f64,
        peak_space: run.stats.peak_space,
        omega,
        q: omega.map(|w| w + 1),
    })
}

pub fn count_json(spec: &str, seed: u64, limit: u64) -> Result<String, String> {
    let (fam, g) = graph(spec, seed)?;
    Ok(serde_json::to_string(&measure(fam, &g, limit)?).unwrap())
}

pub fn preview_json(spec: &str, seed: u64, max_lines: usize) -> Result<String, String> {
    let (_, g) = graph(spec, seed)?;
    let max_lines = max_lines.max(1);
    let mut lines = Vec::new();
    let mut set: Vec<Vertex> = Vec::new();
    let mut sink = |d: SolutionDiff| {
        set.truncate(set.len() - d.pop);
        set.extend(d.push);
        lines.push(PreviewLine { pop: d.pop, push: d.push, set: set.clone() });
        if lines.len() >= max_lines {
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    };
    let run = enumerate_linear_space(&g, &mut sink, &LinearOptions::release()).map_err(|e| e.to_string())?;
    let preview = Preview { n: g.n(), edges: g.edges().collect(), lines, truncated: run.aborted };
    Ok(serde_json::to_string(&preview).unwrap())
}

/// `template` holds one `{n}` placeholder, e.g. `bipartite:{n}:{n}:0.2`.
pub fn scaling_json(template: &str, sizes: &[u32], seed: u64, limit: u64) -> Result<String, String> {
    if !template.contains("{n}") {
        return Err("the family template needs an {n} placeholder".into());
    }
    let mut rows = Vec::new();
    for &n in sizes {
        let (fam, g) = graph(&template.replace("{n}", &n.to_string()), seed)?;
        rows.push(measure(fam, &g, limit)?);
    }
    Ok(serde_json::to_string(&rows).unwrap())
}

/// Solution count and cost figures for one generated graph.
#[wasm_bindgen(js_name = countFamily)]
pub fn count_family(spec: &str, seed: u32, limit: u32) -> Result<String, JsError> {
    count_json(spec, seed.into(), limit.into()).map_err(|e| JsError::new(&e))
}

/// The first `max_lines` diffs with the sets they produce.
#[wasm_bindgen(js_name = previewStream)]
pub fn preview_stream(spec: &str, seed: u32, max_lines: usize) -> Result<String, JsError> {
    preview_json(spec, seed.into(), max_lines).map_err(|e| JsError::new(&e))
}

/// Ops per solution over a range of sizes.
#[wasm_bindgen(js_name = scalingCurve)]
pub fn scaling_curve(template: &str, sizes: Vec<u32>, seed: u32, limit: u32) -> Result<String, JsError> {
    scaling_json(template, &sizes, seed.into(), limit.into()).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn count_star() {
        let v: Value = serde_json::from_str(&count_json("star:5", 0, 1_000).unwrap()).unwrap();
        assert_eq!(v["solutions"], 17);
        assert_eq!(v["complete"], true);
        assert_eq!(v["q"], 3);
    }

    #[test]
    fn count_respects_limit() {
        let v: Value = serde_json::from_str(&count_json("empty:20", 0, 100).unwrap()).unwrap();
        assert_eq!(v["solutions"], 100);
        assert_eq!(v["complete"], false);
    }

    #[test]
    fn preview_path() {
        let v: Value = serde_json::from_str(&preview_json("path:3", 0, 10).unwrap()).unwrap();
        let sets: Vec<Value> = v["lines"].as_array().unwrap().iter().map(|l| l["set"].clone()).collect();
        assert_eq!(serde_json::to_string(&sets).unwrap(), "[[],[0],[0,2],[1],[2]]");
        assert_eq!(v["truncated"], false);
        let v: Value = serde_json::from_str(&preview_json("path:3", 0, 2).unwrap()).unwrap();
        assert_eq!(v["lines"].as_array().unwrap().len(), 2);
        assert_eq!(v["truncated"], true);
    }

    #[test]
    fn scaling_rows() {
        let v: Value = serde_json::from_str(&scaling_json("complete:{n}", &[3, 5], 0, 100).unwrap()).unwrap();
        let counts: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["solutions"].as_u64().unwrap()).collect();
        assert_eq!(counts, [4, 6]);
        assert!(scaling_json("complete:5", &[3], 0, 10).is_err());
    }

    #[test]
    fn bad_specs() {
        assert!(count_json("wheel:5", 0, 10).is_err());
        assert!(count_json("empty:6000", 0, 10).is_err());
    }
}
