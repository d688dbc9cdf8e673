use std::fmt::Display;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use girale_core::algebra::format::{parse_algebra, print_algebra};
use girale_core::congruence::{all_congruences, all_filters, check_con_fil_iso, edpc_check, DEFAULT_CAP};
use girale_core::constructions::{
    frame_completion, gen_gn, heyt, heyt_con_iso, induce_modality, phase_completion, ConstructionError, FRAME_CAP,
    PHASE_CAP,
};
use girale_core::hilbert::{check_derivation, parse_derivation, soundness_scan, System};
use girale_core::search::{enumerate_models, find_countermodel, SearchSpec};
use girale_core::syntax::{eval, first_counterexample, parse_equation, parse_formula, rho, tau, Assignment, Goal};
use girale_core::{check_profile, ElemSet, FiniteAlgebra, Profile};
use serde_json::json;
use thiserror::Error;

use crate::output::{algebra_json, as_comment, report_json, verdict, Output};

/// Anything that should end the run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

fn input(e: impl Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Reads `path`, or standard input when it is absent or `-`.
fn read_source(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(s)
        }
    }
}

pub fn load_algebra(path: Option<&Path>) -> Result<FiniteAlgebra, CliError> {
    let text = read_source(path)?;
    parse_algebra(&text).map_err(|e| match path {
        Some(p) => CliError::Input(format!("{}: {e}", p.display())),
        None => CliError::Input(format!("<stdin>: {e}")),
    })
}

fn show_assignment(alg: &FiniteAlgebra, v: &Assignment) -> String {
    v.iter().map(|(x, &e)| format!("{x}={}", alg.label(e))).collect::<Vec<_>>().join(" ")
}

fn assignment_json(alg: &FiniteAlgebra, v: &Assignment) -> serde_json::Value {
    v.iter().map(|(x, &e)| (x.clone(), json!(alg.label(e)))).collect::<serde_json::Map<_, _>>().into()
}

pub fn check(alg: &FiniteAlgebra, profile: Profile) -> Result<Output, CliError> {
    let r = check_profile(alg, profile).map_err(input)?;
    let text = format!("{} {profile}: {}", alg.name(), r.render(Some(alg)));
    let mut j = report_json(&r, Some(alg));
    j["command"] = json!("check");
    j["algebra"] = json!(alg.name());
    j["profile"] = json!(profile.name());
    Ok(Output::new(r.is_pass(), text, j))
}

pub fn gen(n: usize, verbatim: bool) -> Result<Output, CliError> {
    if !(1..=30).contains(&n) {
        return Err(CliError::Input(format!("G_n needs 1 <= n <= 30, got {n}")));
    }
    let g = gen_gn(n, !verbatim);
    Ok(Output::new(true, print_algebra(&g), json!({"command": "gen", "algebra": algebra_json(&g)})))
}

/// Every assignment of the sorted variables, in lexicographic order.
fn assignments(alg: &FiniteAlgebra, vars: &[String]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for x in vars {
        out = out
            .into_iter()
            .flat_map(|v| {
                alg.elements().map(move |e| {
                    let mut w = v.clone();
                    w.insert(x.clone(), e);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn eval_cmd(alg: &FiniteAlgebra, expr: &str, all: bool) -> Result<Output, CliError> {
    let goal = Goal::parse(expr).map_err(input)?;
    let cex = first_counterexample(alg, &goal).map_err(input)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    if all {
        let vars: Vec<String> = goal.vars().into_iter().collect();
        for v in assignments(alg, &vars) {
            let shown = show_assignment(alg, &v);
            let values: Vec<usize> = match &goal {
                Goal::Formula(f) => vec![eval(f, alg, &v).map_err(input)?],
                Goal::Equation(e) => vec![eval(&e.lhs, alg, &v).map_err(input)?, eval(&e.rhs, alg, &v).map_err(input)?],
                Goal::Quasiequation(_) => {
                    return Err(CliError::Input("--all needs a formula or an equation".into()));
                }
            };
            let labels: Vec<&str> = values.iter().map(|&e| alg.label(e)).collect();
            text.push_str(&format!("{shown}{}{}\n", if shown.is_empty() { "" } else { " : " }, labels.join(" = ")));
            rows.push(json!({"assignment": assignment_json(alg, &v), "values": labels}));
        }
    }
    match &cex {
        None => text.push_str(&format!("{goal}: pass\n")),
        Some(v) => text.push_str(&format!("{goal}: fail at {}\n", show_assignment(alg, v))),
    }
    let mut j = json!({
        "command": "eval",
        "algebra": alg.name(),
        "goal": goal.to_string(),
        "verdict": verdict(cex.is_none()),
        "counterexample": cex.as_ref().map(|v| assignment_json(alg, v)),
    });
    if all {
        j["table"] = json!(rows);
    }
    Ok(Output::new(cex.is_none(), text, j))
}

pub fn derive(path: &Path, system: Option<&str>, scan: &[std::path::PathBuf]) -> Result<Output, CliError> {
    let d = parse_derivation(&read_source(Some(path))?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let sys_name = system.map(str::to_string).or_else(|| d.system.clone()).unwrap_or_else(|| "MALL".into());
    let sys: System = sys_name.parse().map_err(input)?;
    let mut r = check_derivation(&d, &sys);
    let conclusion = d.conclusion().map(|f| f.to_string()).unwrap_or_default();
    let mut text = format!("derivation {} in {}: {}", d.name, sys_name.to_ascii_uppercase(), r.render(None));
    if r.is_pass() {
        text.push_str(&format!("conclusion: {conclusion}\n"));
    }
    let mut scanned = Vec::new();
    if r.is_pass() && !scan.is_empty() {
        let algs = scan.iter().map(|p| load_algebra(Some(p))).collect::<Result<Vec<_>, _>>()?;
        let s = soundness_scan(&d, &algs).map_err(input)?;
        text.push_str(&format!("soundness over {} algebras: {}", algs.len(), s.render(None)));
        scanned = algs.iter().map(|a| a.name().to_string()).collect();
        r.merge(s);
    }
    let mut j = report_json(&r, None);
    j["command"] = json!("derive");
    j["derivation"] = json!(d.name);
    j["system"] = json!(sys_name.to_ascii_uppercase());
    j["conclusion"] = json!(conclusion);
    j["steps"] = json!(d.steps.len());
    j["scanned"] = json!(scanned);
    Ok(Output::new(r.is_pass(), text, j))
}

fn labels_of(alg: &FiniteAlgebra, s: ElemSet) -> Vec<&str> {
    s.iter().map(|e| alg.label(e)).collect()
}

pub fn filters(alg: &FiniteAlgebra) -> Result<Output, CliError> {
    let fs = all_filters(alg, DEFAULT_CAP).map_err(input)?;
    let mut text = String::new();
    for f in &fs {
        text.push_str(&format!("{}\n", f.render(alg)));
    }
    text.push_str(&format!("{} filters\n", fs.len()));
    let list: Vec<Vec<&str>> = fs.iter().map(|f| labels_of(alg, f.members())).collect();
    let j = json!({"command": "filters", "algebra": alg.name(), "count": fs.len(), "filters": list});
    Ok(Output::new(true, text, j))
}

pub fn con(alg: &FiniteAlgebra) -> Result<Output, CliError> {
    let cs = all_congruences(alg, DEFAULT_CAP).map_err(input)?;
    let r = check_con_fil_iso(alg, DEFAULT_CAP).map_err(input)?;
    let mut text = String::new();
    for c in &cs {
        text.push_str(&format!("{}\n", c.render(alg)));
    }
    text.push_str(&format!("{} congruences\n", cs.len()));
    text.push_str(&format!("Con/Fil: {}", r.render(Some(alg))));
    let blocks: Vec<Vec<Vec<&str>>> = cs
        .iter()
        .map(|c| c.blocks().iter().map(|b| b.iter().map(|&e| alg.label(e)).collect()).collect())
        .collect();
    let mut j = report_json(&r, Some(alg));
    j["command"] = json!("con");
    j["algebra"] = json!(alg.name());
    j["count"] = json!(cs.len());
    j["congruences"] = json!(blocks);
    Ok(Output::new(r.is_pass(), text, j))
}

pub fn edpc(alg: &FiniteAlgebra) -> Result<Output, CliError> {
    let r = edpc_check(alg).map_err(input)?;
    let text = format!("{} EDPC: {}", alg.name(), r.render(Some(alg)));
    let mut j = report_json(&r, Some(alg));
    j["command"] = json!("edpc");
    j["algebra"] = json!(alg.name());
    Ok(Output::new(r.is_pass(), text, j))
}

pub fn heyt_cmd(alg: &FiniteAlgebra) -> Result<Output, CliError> {
    let h = heyt(alg).map_err(input)?;
    let r = heyt_con_iso(alg).map_err(input)?;
    let text = as_comment(&format!("Con(A) vs Con(Heyt(A)): {}", r.render(Some(alg)))) + &print_algebra(&h.algebra);
    let mut j = report_json(&r, Some(alg));
    j["command"] = json!("heyt");
    j["algebra"] = algebra_json(&h.algebra);
    Ok(Output::new(r.is_pass(), text, j))
}

pub fn complete(kind: &str, alg: &FiniteAlgebra, cap: Option<usize>) -> Result<Output, CliError> {
    let (out, report, extra) = match kind {
        "frame" => {
            let fc = frame_completion(alg, cap.unwrap_or(FRAME_CAP)).map_err(input)?;
            let joins = fc.join_preserved.map(|b| if b { "preserved" } else { "not preserved" });
            (fc.algebra, fc.report, joins.map(|j| format!("joins: {j}")))
        }
        "phase" => {
            let pc = phase_completion(alg, cap.unwrap_or(PHASE_CAP)).map_err(input)?;
            (pc.algebra, pc.report, None)
        }
        other => return Err(CliError::Input(format!("unknown completion {other:?} (expected frame or phase)"))),
    };
    let mut head = format!("{kind} completion of {}: {}", alg.name(), report.render(Some(alg)));
    if let Some(e) = &extra {
        head.push_str(&format!("{e}\n"));
    }
    let text = as_comment(&head) + &print_algebra(&out);
    let mut j = report_json(&report, Some(alg));
    j["command"] = json!("complete");
    j["kind"] = json!(kind);
    j["algebra"] = algebra_json(&out);
    if let Some(e) = extra {
        j["joins"] = json!(e.trim_start_matches("joins: "));
    }
    Ok(Output::new(report.is_pass(), text, j))
}

pub fn induce(alg: &FiniteAlgebra, subset: &str) -> Result<Output, CliError> {
    let mut h = ElemSet::default();
    for l in subset.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        h.insert(alg.index_of(l).ok_or_else(|| CliError::Input(format!("unknown element {l:?}")))?);
    }
    match induce_modality(alg, h) {
        Ok(g) => Ok(Output::new(
            true,
            print_algebra(&g),
            json!({"command": "induce", "verdict": "pass", "algebra": algebra_json(&g)}),
        )),
        Err(e @ (ConstructionError::InvalidH(_) | ConstructionError::NoSup(_))) => {
            let msg = match &e {
                ConstructionError::NoSup(a) => format!("NO-SUP: no element of H lies below {}", alg.label(*a)),
                _ => e.to_string(),
            };
            Ok(Output::new(
                false,
                format!("fail: {msg}\n"),
                json!({"command": "induce", "verdict": "fail", "reason": msg}),
            ))
        }
        Err(e) => Err(input(e)),
    }
}

pub struct SearchArgs<'a> {
    pub profile: Profile,
    pub min: usize,
    pub max: usize,
    pub falsify: Option<&'a str>,
    pub frozen: Option<FiniteAlgebra>,
    pub models: bool,
    pub time: bool,
}

pub fn search(a: SearchArgs) -> Result<Output, CliError> {
    let mut spec = SearchSpec::up_to(a.profile, a.max);
    spec.min_size = a.min;
    if let Some(f) = a.frozen {
        spec = spec.with_frozen(f);
    }
    let goal = a.falsify.map(Goal::parse).transpose().map_err(input)?;
    let start = Instant::now();
    let r = match goal.clone() {
        Some(g) => find_countermodel(&spec.with_goal(g)).map_err(input)?,
        None => enumerate_models(&spec).map_err(input)?,
    };
    let elapsed = start.elapsed();
    let mut text = format!("{} sizes {}..{}\n", a.profile, a.min.max(1), a.max);
    for (n, c) in &r.counts {
        text.push_str(&format!("size {n}: {c}\n"));
    }
    text.push_str(&format!("total: {}\nexhausted: {}\n", r.count(), r.exhausted));
    let mut j = json!({
        "command": "search",
        "profile": a.profile.name(),
        "counts": r.counts.iter().map(|(n, c)| json!({"size": n, "count": c})).collect::<Vec<_>>(),
        "total": r.count(),
        "exhausted": r.exhausted,
    });
    let mut pass = true;
    if let Some(g) = &goal {
        j["goal"] = json!(g.to_string());
        match (&r.counterexample, r.counterexample_model()) {
            (Some(c), Some(m)) => {
                pass = false;
                text.push_str(&format!("counterexample: {} at {}\n", m.name(), show_assignment(m, &c.assignment)));
                text.push_str(&print_algebra(m));
                j["verdict"] = json!("fail");
                j["counterexample"] = json!({
                    "algebra": algebra_json(m),
                    "assignment": assignment_json(m, &c.assignment),
                });
            }
            _ => {
                text.push_str("no counterexample\n");
                j["verdict"] = json!("pass");
            }
        }
    }
    if a.models {
        for m in &r.models {
            text.push_str(&print_algebra(m));
        }
        j["models"] = json!(r.models.iter().map(algebra_json).collect::<Vec<_>>());
    }
    if a.time {
        text.push_str(&format!("elapsed: {:.3}s\n", elapsed.as_secs_f64()));
        j["elapsed_seconds"] = json!(elapsed.as_secs_f64());
    }
    Ok(Output::new(pass, text, j))
}

pub fn translate(tau_of: Option<&str>, rho_of: Option<&str>) -> Result<Output, CliError> {
    match (tau_of, rho_of) {
        (Some(f), None) => {
            let e = tau(&parse_formula(f).map_err(input)?);
            Ok(Output::new(true, format!("{e}\n"), json!({"command": "translate", "tau": e.to_string()})))
        }
        (None, Some(e)) => {
            let (a, b) = rho(&parse_equation(e).map_err(input)?);
            Ok(Output::new(
                true,
                format!("{a}\n{b}\n"),
                json!({"command": "translate", "rho": [a.to_string(), b.to_string()]}),
            ))
        }
        _ => Err(CliError::Input("give exactly one of --tau and --rho".into())),
    }
}
