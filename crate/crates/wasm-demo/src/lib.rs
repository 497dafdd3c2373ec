//! Browser bindings: run scripts and explore two example families.

use reltype::script::{run_text, RunOptions};
use reltype::Field;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn options(degree_bound: u32, seed: u64) -> RunOptions {
    RunOptions {
        degree_bound: Some(degree_bound),
        seed,
        ..RunOptions::default()
    }
}

fn run_json(text: &str, opts: &RunOptions) -> Value {
    let (reports, code) = run_text(text, opts);
    json!({
        "exit_code": code,
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "text": reports.iter().map(|r| r.to_text()).collect::<String>(),
    })
}

/// Runs a script; returns `{exit_code, reports, text}` as JSON.
#[wasm_bindgen]
pub fn run_script(text: &str, degree_bound: u32, seed: u64) -> String {
    run_json(text, &options(degree_bound, seed)).to_string()
}

/// Equations profile of `(x^p, y^p, x^{p-1}y)` over QQ, whose relation type is `p`.
pub fn rt_family_value(p: u32) -> Value {
    if p == 0 {
        return json!({"error": "p must be positive"});
    }
    let text = if p == 1 {
        "ring QQ[x,y]; I = ideal(x, y); rt(I);".to_string()
    } else {
        format!("ring QQ[x,y]; I = ideal(x^{p}, y^{p}, x^{}*y); rt(I);", p - 1)
    };
    let mut v = run_json(&text, &options(60, 0));
    v["script"] = json!(text);
    v
}

#[wasm_bindgen]
pub fn rt_family(p: u32) -> String {
    rt_family_value(p).to_string()
}

/// Herzog-Northcott ideal of the exponents `a`, `b`, over GF(32003).
pub fn herzog_northcott_value(a: [u32; 3], b: [u32; 3]) -> Value {
    let text = format!(
        "ring GF(32003)[x,y,z]; hn({}, {}, {}, {}, {}, {});",
        a[0], a[1], a[2], b[0], b[1], b[2]
    );
    let mut v = run_json(&text, &RunOptions {
        field: Some(Field::Prime(32003)),
        ..options(60, 0)
    });
    v["script"] = json!(text);
    v
}

#[wasm_bindgen]
pub fn herzog_northcott(a1: u32, a2: u32, a3: u32, b1: u32, b2: u32, b3: u32) -> String {
    herzog_northcott_value([a1, a2, a3], [b1, b2, b3]).to_string()
}
