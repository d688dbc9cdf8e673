//! Evaluation of formulas, equations and quasiequations in finite algebras.
//!
//! Formulas are compiled to a small postfix program over the algebra's
//! tables, so scanning every assignment costs one table lookup per node.
//! Assignments are enumerated in lexicographic order, with variables sorted
//! by name and the first variable most significant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::formula::{Constant, Equation, Formula, Quasiequation};
use super::parser::{parse_formula, parse_quasiequation, SyntaxError};
use crate::algebra::{AlgebraError, BinOp, ConstKind, Elem, FiniteAlgebra, UnOp};

pub type Assignment = BTreeMap<String, Elem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("UNBOUND-VARIABLE: {0}")]
    UnboundVariable(String),
}

#[derive(Debug, Clone, Copy)]
enum Op<'a> {
    Var(usize),
    Lit(Elem),
    Un(&'a [Elem]),
    Bin(&'a crate::algebra::Table),
}

struct Program<'a> {
    code: Vec<Op<'a>>,
}

impl Program<'_> {
    fn run(&self, vals: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        stack.clear();
        for op in &self.code {
            match *op {
                Op::Var(i) => stack.push(vals[i]),
                Op::Lit(e) => stack.push(e),
                Op::Un(t) => {
                    let a = stack.pop().unwrap();
                    stack.push(t[a]);
                }
                Op::Bin(t) => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(t.get(a, b));
                }
            }
        }
        stack.pop().unwrap()
    }
}

struct Compiler<'a> {
    alg: &'a FiniteAlgebra,
    vars: &'a [String],
}

impl<'a> Compiler<'a> {
    fn compile(&self, f: &Formula) -> Result<Program<'a>, EvalError> {
        let mut code = Vec::new();
        self.emit(f, &mut code)?;
        Ok(Program { code })
    }

    fn constant(&self, c: Constant) -> Result<Elem, EvalError> {
        let a = self.alg;
        Ok(match c {
            Constant::One => a.require(ConstKind::One)?,
            Constant::Zero => a.require(ConstKind::Zero)?,
            Constant::Top => a.require(ConstKind::Top)?,
            Constant::Bot => match a.constant(ConstKind::Bot) {
                Some(b) => b,
                // F is definable as the negation of T.
                None => match (a.constant(ConstKind::Top), a.unary(UnOp::Neg)) {
                    (Some(t), Some(n)) => n[t],
                    (Some(t), None) if a.binary(BinOp::Imp).is_some() => {
                        a.imp(t, a.require(ConstKind::Zero)?)
                    }
                    _ => a.require(ConstKind::Bot)?,
                },
            },
        })
    }

    fn emit_neg(&self, code: &mut Vec<Op<'a>>) -> Result<(), EvalError> {
        match self.alg.unary(UnOp::Neg) {
            Some(n) => code.push(Op::Un(n)),
            None => {
                let imp = self.alg.table(BinOp::Imp).map_err(|_| AlgebraError::MissingTable("neg"))?;
                let z = self.alg.require(ConstKind::Zero)?;
                code.push(Op::Lit(z));
                code.push(Op::Bin(imp));
            }
        }
        Ok(())
    }

    fn emit(&self, f: &Formula, code: &mut Vec<Op<'a>>) -> Result<(), EvalError> {
        let a = self.alg;
        match f {
            Formula::Var(v) => {
                let i = self
                    .vars
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
                code.push(Op::Var(i));
            }
            Formula::Const(c) => code.push(Op::Lit(self.constant(*c)?)),
            Formula::Neg(x) => {
                self.emit(x, code)?;
                self.emit_neg(code)?;
            }
            Formula::Bang(x) => {
                self.emit(x, code)?;
                code.push(Op::Un(a.unary_table(UnOp::Bang)?));
            }
            Formula::Quest(x) => {
                self.emit(x, code)?;
                self.emit_neg(code)?;
                code.push(Op::Un(a.unary_table(UnOp::Bang)?));
                self.emit_neg(code)?;
            }
            Formula::Par(x, y) => {
                self.emit(x, code)?;
                self.emit_neg(code)?;
                self.emit(y, code)?;
                code.push(Op::Bin(a.table(BinOp::Imp)?));
            }
            Formula::Mult(x, y) | Formula::Imp(x, y) | Formula::Meet(x, y) | Formula::Join(x, y) => {
                let op = match f {
                    Formula::Mult(..) => BinOp::Mult,
                    Formula::Imp(..) => BinOp::Imp,
                    Formula::Meet(..) => BinOp::Meet,
                    _ => BinOp::Join,
                };
                self.emit(x, code)?;
                self.emit(y, code)?;
                code.push(Op::Bin(a.table(op)?));
            }
        }
        Ok(())
    }
}

/// Value of `f` under `v`; `v` must bind every variable of `f`.
pub fn eval(f: &Formula, alg: &FiniteAlgebra, v: &Assignment) -> Result<Elem, EvalError> {
    let vars: Vec<String> = v.keys().cloned().collect();
    let prog = Compiler { alg, vars: &vars }.compile(f)?;
    let vals: Vec<Elem> = v.values().copied().collect();
    if let Some(&bad) = vals.iter().find(|&&e| e >= alg.size()) {
        return Err(AlgebraError::EntryOutOfRange {
            table: "assignment",
            value: bad,
            size: alg.size(),
        }
        .into());
    }
    Ok(prog.run(&vals, &mut Vec::new()))
}

fn is_designated(alg: &FiniteAlgebra, one: Elem, a: Elem) -> bool {
    alg.meet(a, one) == one
}

/// `eval(f) /\ 1 = 1`.
pub fn designated(alg: &FiniteAlgebra, f: &Formula, v: &Assignment) -> Result<bool, EvalError> {
    let one = alg.require(ConstKind::One)?;
    alg.table(BinOp::Meet)?;
    Ok(is_designated(alg, one, eval(f, alg, v)?))
}

/// Anything that can be checked against every assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    Formula(Formula),
    Equation(Equation),
    Quasiequation(Quasiequation),
}

impl Goal {
    /// Reads a quasiequation (`... => ...`), an equation (`l = r`) or a
    /// formula, depending on which separators occur.
    pub fn parse(text: &str) -> Result<Goal, SyntaxError> {
        if text.contains('=') {
            let q = parse_quasiequation(text)?;
            if q.premises.is_empty() && !text.contains("=>") {
                Ok(Goal::Equation(q.conclusion))
            } else {
                Ok(Goal::Quasiequation(q))
            }
        } else {
            Ok(Goal::Formula(parse_formula(text)?))
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        match self {
            Goal::Formula(f) => f.vars(),
            Goal::Equation(e) => e.vars(),
            Goal::Quasiequation(q) => q.vars(),
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Goal::Formula(x) => write!(f, "{x}"),
            Goal::Equation(x) => write!(f, "{x}"),
            Goal::Quasiequation(x) => write!(f, "{x}"),
        }
    }
}

/// Calls `visit` on every assignment of `n_vars` values below `n`, in
/// lexicographic order, until it returns false. Returns the stopping tuple.
fn scan(n: usize, n_vars: usize, mut visit: impl FnMut(&[Elem]) -> bool) -> Option<Vec<Elem>> {
    let mut t = vec![0; n_vars];
    loop {
        if !visit(&t) {
            return Some(t);
        }
        let mut k = n_vars;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < n {
                break;
            }
            t[k] = 0;
        }
    }
}

fn to_assignment(vars: &[String], vals: &[Elem]) -> Assignment {
    vars.iter().cloned().zip(vals.iter().copied()).collect()
}

/// The first assignment under which `goal` fails, if any.
pub fn first_counterexample(alg: &FiniteAlgebra, goal: &Goal) -> Result<Option<Assignment>, EvalError> {
    let vars: Vec<String> = goal.vars().into_iter().collect();
    let c = Compiler { alg, vars: &vars };
    let n = alg.size();
    let mut st = Vec::new();
    let hit = match goal {
        Goal::Formula(f) => {
            let one = alg.require(ConstKind::One)?;
            alg.table(BinOp::Meet)?;
            let p = c.compile(f)?;
            scan(n, vars.len(), |t| is_designated(alg, one, p.run(t, &mut st)))
        }
        Goal::Equation(e) => {
            let (l, r) = (c.compile(&e.lhs)?, c.compile(&e.rhs)?);
            scan(n, vars.len(), |t| l.run(t, &mut st) == r.run(t, &mut st))
        }
        Goal::Quasiequation(q) => {
            let mut prem = Vec::new();
            for e in &q.premises {
                prem.push((c.compile(&e.lhs)?, c.compile(&e.rhs)?));
            }
            let (l, r) = (c.compile(&q.conclusion.lhs)?, c.compile(&q.conclusion.rhs)?);
            scan(n, vars.len(), |t| {
                !prem.iter().all(|(a, b)| a.run(t, &mut st) == b.run(t, &mut st))
                    || l.run(t, &mut st) == r.run(t, &mut st)
            })
        }
    };
    Ok(hit.map(|t| to_assignment(&vars, &t)))
}

pub fn first_falsifying(alg: &FiniteAlgebra, f: &Formula) -> Result<Option<Assignment>, EvalError> {
    first_counterexample(alg, &Goal::Formula(f.clone()))
}

/// `f` is designated under every assignment.
pub fn validates(alg: &FiniteAlgebra, f: &Formula) -> Result<bool, EvalError> {
    Ok(first_falsifying(alg, f)?.is_none())
}

pub fn satisfies(alg: &FiniteAlgebra, goal: &Goal) -> Result<bool, EvalError> {
    Ok(first_counterexample(alg, goal)?.is_none())
}

pub fn satisfies_equation(alg: &FiniteAlgebra, e: &Equation) -> Result<bool, EvalError> {
    satisfies(alg, &Goal::Equation(e.clone()))
}

pub fn satisfies_quasiequation(alg: &FiniteAlgebra, q: &Quasiequation) -> Result<bool, EvalError> {
    satisfies(alg, &Goal::Quasiequation(q.clone()))
}

/// Every assignment designating all of `gamma` also designates `f`.
pub fn semantic_consequence(gamma: &[Formula], f: &Formula, alg: &FiniteAlgebra) -> Result<bool, EvalError> {
    Ok(consequence_counterexample(gamma, f, alg)?.is_none())
}

pub fn consequence_counterexample(
    gamma: &[Formula],
    f: &Formula,
    alg: &FiniteAlgebra,
) -> Result<Option<Assignment>, EvalError> {
    let mut vs = f.vars();
    for g in gamma {
        vs.extend(g.vars());
    }
    let vars: Vec<String> = vs.into_iter().collect();
    let c = Compiler { alg, vars: &vars };
    let one = alg.require(ConstKind::One)?;
    alg.table(BinOp::Meet)?;
    let hyps = gamma.iter().map(|g| c.compile(g)).collect::<Result<Vec<_>, _>>()?;
    let goal = c.compile(f)?;
    let mut st = Vec::new();
    let hit = scan(alg.size(), vars.len(), |t| {
        !hyps.iter().all(|h| is_designated(alg, one, h.run(t, &mut st)))
            || is_designated(alg, one, goal.run(t, &mut st))
    });
    Ok(hit.map(|t| to_assignment(&vars, &t)))
}
