//! Formulas, equations, the surface syntax and evaluation.

mod eval;
mod formula;
mod parser;

pub use eval::{
    consequence_counterexample, designated, eval, first_counterexample, first_falsifying,
    satisfies, satisfies_equation, satisfies_quasiequation, semantic_consequence, validates,
    Assignment, EvalError, Goal,
};
pub use formula::{rho, tau, Connective, Constant, Equation, Formula, Quasiequation};
pub use parser::{parse_equation, parse_formula, parse_quasiequation, SyntaxError};
