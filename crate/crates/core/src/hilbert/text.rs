//! Derivation text format.
//!
//! ```text
//! derivation <name>
//! system MALL|LL|LR|ILL
//! hyp <formula>
//! step <k>: <formula> by axiom <id> | hyp <i> | mp <i> <j> | adj <i> <j> | nec <i>
//! ```
//!
//! Steps must be numbered 1, 2, ... in order. `#` starts a comment.

use thiserror::Error;

use super::{AxiomId, Derivation, Justification, Step, System};
use crate::syntax::parse_formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct DerivationFormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> DerivationFormatError {
    DerivationFormatError {
        line,
        message: message.into(),
    }
}

fn index(line: usize, s: &str) -> Result<usize, DerivationFormatError> {
    s.parse().map_err(|_| err(line, format!("bad step number {s:?}")))
}

fn justification(line: usize, words: &[&str]) -> Result<Justification, DerivationFormatError> {
    let arity = |k: usize| {
        if words.len() == k + 1 {
            Ok(())
        } else {
            Err(err(line, format!("`{}` takes {k} argument(s)", words[0])))
        }
    };
    match words.first().copied() {
        Some("axiom") => {
            arity(1)?;
            Ok(Justification::Axiom(
                words[1].parse::<AxiomId>().map_err(|e| err(line, e))?,
            ))
        }
        Some("hyp") => {
            arity(1)?;
            Ok(Justification::Hyp(index(line, words[1])?))
        }
        Some("mp") => {
            arity(2)?;
            Ok(Justification::Mp(index(line, words[1])?, index(line, words[2])?))
        }
        Some("adj") => {
            arity(2)?;
            Ok(Justification::Adj(index(line, words[1])?, index(line, words[2])?))
        }
        Some("nec") => {
            arity(1)?;
            Ok(Justification::Nec(index(line, words[1])?))
        }
        _ => Err(err(line, "expected `axiom`, `hyp`, `mp`, `adj` or `nec` after `by`")),
    }
}

pub fn parse_derivation(text: &str) -> Result<Derivation, DerivationFormatError> {
    let mut d = Derivation {
        name: String::new(),
        system: None,
        hypotheses: Vec::new(),
        steps: Vec::new(),
    };
    let mut named = false;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "derivation" => {
                if named || rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(ln, "expected a single `derivation <name>` line"));
                }
                d.name = rest.to_string();
                named = true;
            }
            "system" => {
                if d.system.is_some() {
                    return Err(err(ln, "duplicate `system` line"));
                }
                rest.parse::<System>().map_err(|e| err(ln, e))?;
                d.system = Some(rest.to_ascii_uppercase());
            }
            "hyp" => {
                if !d.steps.is_empty() {
                    return Err(err(ln, "hypotheses must precede steps"));
                }
                let f = parse_formula(rest).map_err(|e| err(ln, e.to_string()))?;
                d.hypotheses.push(f);
            }
            "step" => {
                let (num, body) = rest
                    .split_once(':')
                    .ok_or_else(|| err(ln, "expected `step <k>: <formula> by ...`"))?;
                let k = index(ln, num.trim())?;
                if k != d.steps.len() + 1 {
                    return Err(err(ln, format!("expected step {}, found {k}", d.steps.len() + 1)));
                }
                let (formula, just) = body
                    .rsplit_once(" by ")
                    .ok_or_else(|| err(ln, "missing ` by <justification>`"))?;
                let formula = parse_formula(formula).map_err(|e| err(ln, e.to_string()))?;
                let words: Vec<&str> = just.split_whitespace().collect();
                d.steps.push(Step {
                    formula,
                    justification: justification(ln, &words)?,
                });
            }
            other => return Err(err(ln, format!("unknown key {other:?}"))),
        }
    }
    if !named {
        return Err(err(text.lines().count(), "missing `derivation` line"));
    }
    Ok(d)
}

pub fn print_derivation(d: &Derivation) -> String {
    let mut out = format!("derivation {}\n", d.name);
    if let Some(s) = &d.system {
        out.push_str(&format!("system {s}\n"));
    }
    for h in &d.hypotheses {
        out.push_str(&format!("hyp {h}\n"));
    }
    for (k, s) in d.steps.iter().enumerate() {
        out.push_str(&format!("step {}: {} by {}\n", k + 1, s.formula, s.justification));
    }
    out
}
