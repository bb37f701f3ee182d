//! Browser bindings. The plain functions return `Result<String, String>` so
//! they can be tested natively; the `#[wasm_bindgen]` wrappers only convert
//! errors into JS exceptions.

use gensub::corpus::CORPUS;
use gensub::decider::Decider;
use gensub::export::layered_svg;
use gensub::{
    build_class_category, construct, instantiation_functor, load_class_table, parse_type, run_laws, skolem_template,
    yoneda_check, ConstructOptions, ExportOptions, GraphExport, LawSuite, SourceText, ValidatedClassTable,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; the CLI allows far more.
pub const DEMO_NODE_CAP: usize = 2_000;

fn table(src: &str) -> Result<ValidatedClassTable, String> {
    load_class_table(&SourceText::new(src, "table")).map_err(|e| e.to_string())
}

/// `[{name, source, max_depth}]` for the bundled tables.
pub fn corpus_json() -> String {
    let v: Vec<_> = CORPUS
        .iter()
        .map(|c| json!({"name": c.name, "source": c.source, "max_depth": c.max_depth}))
        .collect();
    serde_json::Value::Array(v).to_string()
}

/// Decides `sub <: sup` both ways and reports canonical forms.
pub fn subtype_json(src: &str, sub: &str, sup: &str) -> Result<String, String> {
    let t = table(src)?;
    let parse = |s: &str| parse_type(&SourceText::new(s, "type"), &t).map_err(|e| e.to_string());
    let (a, b) = (parse(sub)?, parse(sup)?);
    let d = Decider::new(&t);
    Ok(json!({
        "sub": t.canonical(&a).to_string(),
        "sup": t.canonical(&b).to_string(),
        "forward": d.is_subtype(&a, &b),
        "backward": d.is_subtype(&b, &a),
    })
    .to_string())
}

/// Layered Hasse diagram of the level at `depth`.
pub fn build_svg(src: &str, depth: usize, no_null: bool) -> Result<String, String> {
    let t = table(src)?;
    let g = construct(&t, depth, &ConstructOptions { node_cap: DEMO_NODE_CAP }).map_err(|e| e.to_string())?;
    let e = GraphExport::from_graph(&g, ExportOptions { no_null, hasse: true });
    Ok(layered_svg(&e))
}

/// All law suites as a JSON array of outcomes.
pub fn check_json(src: &str, depth: usize) -> Result<String, String> {
    let t = table(src)?;
    let out = run_laws(&t, depth, &LawSuite::ALL, &ConstructOptions { node_cap: DEMO_NODE_CAP }, None)
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Yoneda report for `class`, with its placeholder template.
pub fn yoneda_json(src: &str, class: &str, depth: usize) -> Result<String, String> {
    let t = table(src)?;
    let run = || -> gensub::Result<_> {
        let template = skolem_template(&t, class)?;
        let f = instantiation_functor(&t, depth)?;
        let cat = build_class_category(&t, gensub::category::DEFAULT_HOM_CAP)?;
        Ok((template, yoneda_check(&cat, &f, class)?))
    };
    let (template, r) = run().map_err(|e| e.to_string())?;
    Ok(json!({
        "template": template.to_string(),
        "verdict": r.to_string(),
        "holds": r.holds(),
        "report": r,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn corpus() -> String {
    corpus_json()
}

#[wasm_bindgen]
pub fn subtype(src: &str, sub: &str, sup: &str) -> Result<String, JsError> {
    subtype_json(src, sub, sup).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hasse_svg(src: &str, depth: usize, no_null: bool) -> Result<String, JsError> {
    build_svg(src, depth, no_null).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn check_laws(src: &str, depth: usize) -> Result<String, JsError> {
    check_json(src, depth).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn yoneda(src: &str, class: &str, depth: usize) -> Result<String, JsError> {
    yoneda_json(src, class, depth).map_err(|e| JsError::new(&e))
}
