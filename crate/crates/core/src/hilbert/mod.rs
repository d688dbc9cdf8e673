//! Hilbert-style presentation of linear logic: the axiom schemata HL1 to
//! HL24 (plus mingle), the rules MP, Adj and Nec, and a derivation checker.
//!
//! Schema patterns are ordinary [`Formula`]s whose variables are read as
//! metavariables; an object formula matches when a single substitution of
//! formulas for metavariables turns the pattern into it.

mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::{CheckReport, FiniteAlgebra};
use crate::syntax::{consequence_counterexample, parse_formula, EvalError, Formula};

pub use text::{parse_derivation, print_derivation, DerivationFormatError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    Hl(u8),
    Mingle,
}

impl AxiomId {
    pub fn all() -> Vec<AxiomId> {
        let mut v: Vec<AxiomId> = (1..=24).map(AxiomId::Hl).collect();
        v.push(AxiomId::Mingle);
        v
    }

    pub fn range(lo: u8, hi: u8) -> impl Iterator<Item = AxiomId> {
        (lo..=hi).map(AxiomId::Hl)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Hl(k) => write!(f, "HL{k}"),
            AxiomId::Mingle => f.write_str("MINGLE"),
        }
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let up = s.to_ascii_uppercase();
        if up == "MINGLE" {
            return Ok(AxiomId::Mingle);
        }
        match up.strip_prefix("HL").and_then(|k| k.parse::<u8>().ok()) {
            Some(k) if (1..=24).contains(&k) => Ok(AxiomId::Hl(k)),
            _ => Err(format!("unknown axiom {s:?}")),
        }
    }
}

/// An axiom schema over the metavariables `p`, `q`, `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub id: AxiomId,
    pub pattern: Formula,
}

fn source(id: AxiomId) -> &'static str {
    match id {
        AxiomId::Hl(1) => "p -> p",
        AxiomId::Hl(2) => "(p -> q) -> (q -> r) -> p -> r",
        AxiomId::Hl(3) => "(p -> q -> r) -> q -> p -> r",
        AxiomId::Hl(4) => "~~p -> p",
        AxiomId::Hl(5) => "(p -> ~q) -> q -> ~p",
        AxiomId::Hl(6) => "p -> q -> p * q",
        AxiomId::Hl(7) => "(p -> q -> r) -> p * q -> r",
        AxiomId::Hl(8) => "1",
        AxiomId::Hl(9) => "1 -> p -> p",
        AxiomId::Hl(10) => "p -> ~p -> 0",
        AxiomId::Hl(11) => "~0",
        AxiomId::Hl(12) => "p /\\ q -> p",
        AxiomId::Hl(13) => "p /\\ q -> q",
        AxiomId::Hl(14) => "(p -> q) /\\ (p -> r) -> p -> q /\\ r",
        AxiomId::Hl(15) => "p -> p \\/ q",
        AxiomId::Hl(16) => "q -> p \\/ q",
        AxiomId::Hl(17) => "(p -> r) /\\ (q -> r) -> p \\/ q -> r",
        AxiomId::Hl(18) => "p -> T",
        AxiomId::Hl(19) => "F -> p",
        AxiomId::Hl(20) => "q -> !p -> q",
        AxiomId::Hl(21) => "(!p -> !p -> q) -> !p -> q",
        AxiomId::Hl(22) => "!(p -> q) -> !p -> !q",
        AxiomId::Hl(23) => "!p -> p",
        AxiomId::Hl(24) => "!p -> !!p",
        AxiomId::Mingle => "p -> p -> p",
        AxiomId::Hl(_) => unreachable!("axiom ids are validated on construction"),
    }
}

/// The schema for `id`.
pub fn schema(id: AxiomId) -> &'static AxiomSchema {
    static ALL: OnceLock<Vec<AxiomSchema>> = OnceLock::new();
    let all = ALL.get_or_init(|| {
        AxiomId::all()
            .into_iter()
            .map(|id| AxiomSchema {
                id,
                pattern: parse_formula(source(id)).expect("schema source parses"),
            })
            .collect()
    });
    let k = match id {
        AxiomId::Hl(k) => k as usize - 1,
        AxiomId::Mingle => 24,
    };
    &all[k]
}

pub type Substitution = BTreeMap<String, Formula>;

/// Syntactic matching: the substitution `s` with `s(pattern) = f`, if any.
pub fn match_schema(f: &Formula, s: &AxiomSchema) -> Option<Substitution> {
    let mut sub = Substitution::new();
    matches(&s.pattern, f, &mut sub).then_some(sub)
}

fn matches(pat: &Formula, f: &Formula, sub: &mut Substitution) -> bool {
    use Formula::*;
    match (pat, f) {
        (Var(m), _) => match sub.get(m) {
            Some(bound) => bound == f,
            None => {
                sub.insert(m.clone(), f.clone());
                true
            }
        },
        (Const(a), Const(b)) => a == b,
        (Neg(a), Neg(b)) | (Bang(a), Bang(b)) | (Quest(a), Quest(b)) => matches(a, b, sub),
        (Mult(a1, a2), Mult(b1, b2))
        | (Par(a1, a2), Par(b1, b2))
        | (Imp(a1, a2), Imp(b1, b2))
        | (Meet(a1, a2), Meet(b1, b2))
        | (Join(a1, a2), Join(b1, b2)) => matches(a1, b1, sub) && matches(a2, b2, sub),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Mp,
    Adj,
    Nec,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Mp => "MP",
            Rule::Adj => "Adj",
            Rule::Nec => "Nec",
        })
    }
}

/// A Hilbert system: a set of axiom schemata and rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub name: String,
    pub axioms: Vec<AxiomId>,
    pub rules: Vec<Rule>,
}

impl System {
    pub fn new(name: impl Into<String>, axioms: impl IntoIterator<Item = AxiomId>, rules: &[Rule]) -> Self {
        let mut axioms: Vec<AxiomId> = axioms.into_iter().collect();
        axioms.sort();
        axioms.dedup();
        System {
            name: name.into(),
            axioms,
            rules: rules.to_vec(),
        }
    }

    pub fn mall() -> Self {
        System::new("MALL", AxiomId::range(1, 19), &[Rule::Mp, Rule::Adj])
    }

    pub fn ll() -> Self {
        System::new("LL", AxiomId::range(1, 24), &[Rule::Mp, Rule::Adj, Rule::Nec])
    }

    pub fn lr() -> Self {
        System::new(
            "LR",
            AxiomId::range(1, 7).chain(AxiomId::range(12, 19)),
            &[Rule::Mp, Rule::Adj],
        )
    }

    pub fn ill() -> Self {
        System::new(
            "ILL",
            AxiomId::range(1, 3)
                .chain(AxiomId::range(6, 9))
                .chain(AxiomId::range(12, 24)),
            &[Rule::Mp, Rule::Adj, Rule::Nec],
        )
    }

    /// `self` with the mingle axiom added.
    pub fn with_mingle(&self) -> Self {
        let mut ax = self.axioms.clone();
        ax.push(AxiomId::Mingle);
        System::new(format!("{}+MINGLE", self.name), ax, &self.rules)
    }

    pub fn has_axiom(&self, id: AxiomId) -> bool {
        self.axioms.contains(&id)
    }

    pub fn has_rule(&self, r: Rule) -> bool {
        self.rules.contains(&r)
    }
}

impl FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "MALL" => Ok(System::mall()),
            "LL" => Ok(System::ll()),
            "LR" => Ok(System::lr()),
            "ILL" => Ok(System::ill()),
            _ => Err(format!("unknown system {s:?} (expected MALL, LL, LR or ILL)")),
        }
    }
}

/// How a step was obtained. Step references are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomId),
    Hyp(usize),
    Mp(usize, usize),
    Adj(usize, usize),
    Nec(usize),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(id) => write!(f, "axiom {id}"),
            Justification::Hyp(i) => write!(f, "hyp {i}"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::Adj(i, j) => write!(f, "adj {i} {j}"),
            Justification::Nec(i) => write!(f, "nec {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub name: String,
    /// The system named in the source, if any.
    pub system: Option<String>,
    pub hypotheses: Vec<Formula>,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

fn bad(report: &mut CheckReport, step: usize, reason: &str, detail: String) {
    report.push(reason, vec![step], Some(detail));
}

/// Checks every step of `d` against `sys`, stopping at the first bad step.
///
/// The report's witness is the 1-based number of the offending step. Nec
/// may only be applied to a step whose own derivation uses no hypotheses.
pub fn check_derivation(d: &Derivation, sys: &System) -> CheckReport {
    let mut report = CheckReport::pass();
    if d.steps.is_empty() {
        bad(&mut report, 0, "empty-derivation", "a derivation needs at least one step".into());
        return report;
    }
    // categorical[k]: step k+1 was derived without hypotheses
    let mut categorical: Vec<bool> = Vec::with_capacity(d.steps.len());
    for (k, step) in d.steps.iter().enumerate() {
        let num = k + 1;
        let earlier = |i: usize| -> Result<&Formula, String> {
            if i == 0 || i >= num {
                Err(format!("step {i} is not an earlier step"))
            } else {
                Ok(&d.steps[i - 1].formula)
            }
        };
        let rule_ok = |r: Rule| -> Result<(), String> {
            if sys.has_rule(r) {
                Ok(())
            } else {
                Err(format!("rule {r} is not part of {}", sys.name))
            }
        };
        let outcome: Result<bool, (&str, String)> = match step.justification {
            Justification::Axiom(id) => {
                if !sys.has_axiom(id) {
                    Err(("axiom-not-in-system", format!("{id} is not an axiom of {}", sys.name)))
                } else if match_schema(&step.formula, schema(id)).is_none() {
                    Err(("not-an-instance", format!("{} is not an instance of {id}", step.formula)))
                } else {
                    Ok(true)
                }
            }
            Justification::Hyp(i) => match d.hypotheses.get(i.wrapping_sub(1)) {
                None => Err(("bad-hypothesis", format!("there is no hypothesis {i}"))),
                Some(h) if *h != step.formula => {
                    Err(("bad-hypothesis", format!("hypothesis {i} is {h}, not {}", step.formula)))
                }
                Some(_) => Ok(false),
            },
            Justification::Mp(i, j) => rule_ok(Rule::Mp)
                .and_then(|_| Ok((earlier(i)?, earlier(j)?)))
                .map_err(|e| ("bad-reference", e))
                .and_then(|(phi, imp)| match imp {
                    Formula::Imp(a, b) if **a == *phi && **b == step.formula => {
                        Ok(categorical[i - 1] && categorical[j - 1])
                    }
                    _ => Err((
                        "bad-mp",
                        format!("step {j} is not `{phi} -> {}`", step.formula),
                    )),
                }),
            Justification::Adj(i, j) => rule_ok(Rule::Adj)
                .and_then(|_| Ok((earlier(i)?, earlier(j)?)))
                .map_err(|e| ("bad-reference", e))
                .and_then(|(a, b)| {
                    if step.formula == Formula::meet(a.clone(), b.clone()) {
                        Ok(categorical[i - 1] && categorical[j - 1])
                    } else {
                        Err(("bad-adj", format!("expected `{}`", Formula::meet(a.clone(), b.clone()))))
                    }
                }),
            Justification::Nec(i) => rule_ok(Rule::Nec)
                .and_then(|_| earlier(i))
                .map_err(|e| ("bad-reference", e))
                .and_then(|a| {
                    if step.formula != Formula::bang(a.clone()) {
                        Err(("bad-nec", format!("expected `{}`", Formula::bang(a.clone()))))
                    } else if !categorical[i - 1] {
                        Err(("nec-on-hypothesis", format!("step {i} depends on hypotheses")))
                    } else {
                        Ok(true)
                    }
                }),
        };
        match outcome {
            Ok(c) => categorical.push(c),
            Err((reason, detail)) => {
                bad(&mut report, num, reason, detail);
                report.failed_layer = Some(format!("step {num}"));
                return report;
            }
        }
    }
    report
}

/// Replays `d` semantically: its conclusion must be a consequence of its
/// hypotheses in every algebra of `corpus`. Violation witnesses are the
/// corpus index followed by the falsifying assignment (variables sorted).
pub fn soundness_scan(d: &Derivation, corpus: &[FiniteAlgebra]) -> Result<CheckReport, EvalError> {
    let mut report = CheckReport::pass();
    let Some(concl) = d.conclusion() else {
        return Ok(report);
    };
    for (k, alg) in corpus.iter().enumerate() {
        if let Some(v) = consequence_counterexample(&d.hypotheses, concl, alg)? {
            let mut w = vec![k];
            w.extend(v.values().copied());
            let shown: Vec<String> = v.iter().map(|(x, e)| format!("{x}={}", alg.label(*e))).collect();
            report.push(
                "unsound-conclusion",
                w,
                Some(format!("in {}: {}", alg.name(), shown.join(", "))),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn matching() {
        let hl1 = schema(AxiomId::Hl(1));
        let s = match_schema(&f("x -> x"), hl1).unwrap();
        assert_eq!(s["p"], f("x"));
        assert_eq!(match_schema(&f("(a/\\b) -> (a/\\b)"), hl1).unwrap()["p"], f("a /\\ b"));
        assert!(match_schema(&f("x -> y"), hl1).is_none());
        // metavariables may be instantiated by object variables of the same name
        assert_eq!(match_schema(&f("q -> q \\/ p"), schema(AxiomId::Hl(15))).unwrap()["q"], f("p"));
        assert!(match_schema(&f("1"), schema(AxiomId::Hl(8))).is_some());
        assert!(match_schema(&f("0"), schema(AxiomId::Hl(8))).is_none());
    }

    #[test]
    fn axiom_ids() {
        assert_eq!("hl7".parse::<AxiomId>().unwrap(), AxiomId::Hl(7));
        assert_eq!("MINGLE".parse::<AxiomId>().unwrap(), AxiomId::Mingle);
        assert!("HL25".parse::<AxiomId>().is_err());
        assert_eq!(AxiomId::Hl(12).to_string(), "HL12");
        assert_eq!(schema(AxiomId::Hl(7)).pattern, f("(p -> (q -> r)) -> (p * q -> r)"));
    }

    #[test]
    fn system_contents() {
        assert_eq!(System::mall().axioms.len(), 19);
        assert_eq!(System::ll().axioms.len(), 24);
        assert_eq!(System::lr().axioms.len(), 15);
        assert_eq!(System::ill().axioms.len(), 20);
        assert!(!System::ill().has_axiom(AxiomId::Hl(4)));
        assert!(System::lr().with_mingle().has_axiom(AxiomId::Mingle));
    }

    fn deriv(hyps: &[&str], steps: &[(&str, Justification)]) -> Derivation {
        Derivation {
            name: "t".into(),
            system: None,
            hypotheses: hyps.iter().map(|h| f(h)).collect(),
            steps: steps
                .iter()
                .map(|(s, j)| Step {
                    formula: f(s),
                    justification: *j,
                })
                .collect(),
        }
    }

    #[test]
    fn unjustified_hypothesis_fails_at_step_one() {
        let d = deriv(&[], &[("q", Justification::Hyp(1))]);
        let r = check_derivation(&d, &System::mall());
        assert_eq!(r.violations[0].witness, vec![1]);
        assert_eq!(r.violations[0].condition, "bad-hypothesis");
    }

    #[test]
    fn nec_needs_a_categorical_premise() {
        use Justification::*;
        let ok = deriv(&[], &[("1", Axiom(AxiomId::Hl(8))), ("!1", Nec(1))]);
        assert!(check_derivation(&ok, &System::ll()).is_pass());
        assert_eq!(check_derivation(&ok, &System::mall()).violations[0].condition, "bad-reference");
        let hyp = deriv(&["p"], &[("p", Hyp(1)), ("!p", Nec(1))]);
        let r = check_derivation(&hyp, &System::ll());
        assert_eq!(r.violations[0].condition, "nec-on-hypothesis");
        assert_eq!(r.violations[0].witness, vec![2]);
    }

    #[test]
    fn references_must_point_backwards() {
        use Justification::*;
        let d = deriv(&["p"], &[("p", Hyp(1)), ("p /\\ p", Adj(1, 2))]);
        assert_eq!(check_derivation(&d, &System::mall()).violations[0].condition, "bad-reference");
    }

    #[test]
    fn wrong_mp_shape() {
        use Justification::*;
        let d = deriv(&["p", "q -> r"], &[("p", Hyp(1)), ("q -> r", Hyp(2)), ("r", Mp(1, 2))]);
        assert_eq!(check_derivation(&d, &System::mall()).violations[0].condition, "bad-mp");
    }
}
