//! Command results and their text and JSON renderings.

use std::collections::BTreeMap;

use girale_core::{BinOp, CheckReport, ConstKind, FiniteAlgebra, UnOp};
use serde::Serialize;
use serde_json::{json, Value};

/// What a command produced: the text report, its JSON form and the exit
/// code (0 pass or found, 1 fail or counterexample).
pub struct Output {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Output {
    pub fn new(pass: bool, text: String, json: Value) -> Self {
        Output {
            code: if pass { 0 } else { 1 },
            text,
            json,
        }
    }
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

#[derive(Serialize)]
pub struct ViolationJson {
    pub condition: String,
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Witnesses become label tuples when `alg` is given; otherwise (step
/// numbers and the like) they stay numeric strings.
pub fn violations(report: &CheckReport, alg: Option<&FiniteAlgebra>) -> Vec<ViolationJson> {
    report
        .violations
        .iter()
        .map(|v| ViolationJson {
            condition: v.condition.clone(),
            witness: v
                .witness
                .iter()
                .map(|&e| match alg {
                    Some(a) if e < a.size() => a.label(e).to_string(),
                    _ => e.to_string(),
                })
                .collect(),
            detail: v.detail.clone(),
        })
        .collect()
}

pub fn report_json(report: &CheckReport, alg: Option<&FiniteAlgebra>) -> Value {
    json!({
        "verdict": verdict(report.is_pass()),
        "failed_layer": report.failed_layer,
        "violations": violations(report, alg),
    })
}

#[derive(Serialize)]
pub struct AlgebraJson {
    pub name: String,
    pub size: usize,
    pub elements: Vec<String>,
    pub constants: BTreeMap<&'static str, String>,
    pub tables: BTreeMap<&'static str, Vec<Vec<String>>>,
    pub unary: BTreeMap<&'static str, Vec<String>>,
}

pub fn algebra_json(alg: &FiniteAlgebra) -> Value {
    let l = |e: usize| alg.label(e).to_string();
    let mut out = AlgebraJson {
        name: alg.name().to_string(),
        size: alg.size(),
        elements: alg.labels().to_vec(),
        constants: BTreeMap::new(),
        tables: BTreeMap::new(),
        unary: BTreeMap::new(),
    };
    for c in ConstKind::ALL {
        if let Some(v) = alg.constant(c) {
            out.constants.insert(c.name(), l(v));
        }
    }
    for op in BinOp::ALL {
        if let Some(t) = alg.binary(op) {
            out.tables.insert(op.name(), alg.elements().map(|a| t.row(a).iter().map(|&b| l(b)).collect()).collect());
        }
    }
    for op in UnOp::ALL {
        if let Some(u) = alg.unary(op) {
            out.unary.insert(op.name(), u.iter().map(|&b| l(b)).collect());
        }
    }
    serde_json::to_value(out).expect("algebra JSON is serializable")
}

/// Prefixes every line with `# ` so a report can precede algebra text.
pub fn as_comment(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}
