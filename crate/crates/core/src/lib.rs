//! Finite-algebra workbench for the algebraic semantics of linear logic.
//!
//! The crate is organised around [`FiniteAlgebra`], an explicit table
//! presentation of a finite model, and the checkers and constructions that
//! operate on it:
//!
//! * [`algebra`]: tables, the text format, axiom profiles and isomorphism;
//! * [`syntax`]: formulas, equations, evaluation and the `tau`/`rho`
//!   translations between formulas and equations;
//! * [`hilbert`]: the Hilbert axiom base and a derivation checker;
//! * [`congruence`]: filters, congruences and principal congruences;
//! * [`constructions`]: the `G_n` family, `!`-images, induced modalities and
//!   the two completions;
//! * [`search`]: exhaustive small-model enumeration and countermodel search.

pub mod algebra;
pub mod syntax;
pub mod hilbert;
pub mod congruence;
pub mod constructions;
pub mod search;

pub use algebra::{
    check_profile, CheckReport, ConstKind, Elem, ElemSet, FiniteAlgebra, Profile, Table, UnOp,
    BinOp,
};
