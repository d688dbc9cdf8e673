//! Constructions on finite algebras: the `G_n` family, the Heyting algebra
//! of `!`-images, modalities induced by Heyting subsets, and the frame and
//! phase completions.

mod frame;
mod gn;
mod heyt;
mod modality;
mod phase;

use thiserror::Error;

use crate::algebra::{AlgebraError, CheckReport, ConstKind, FiniteAlgebra, UnOp};
use crate::congruence::CongruenceError;

pub use frame::{frame_completion, FrameCompletion, FRAME_CAP};
pub use gn::{gen_gn, gn_labels, repair_search, RepairCells, REPAIR_BUDGET};
pub use heyt::{boolean_girale_check, heyt, heyt_con_iso, HeytAlgebra};
pub use modality::{bang_image, induce_modality, rc_heyting_subsets, validate_heyting_subset};
pub use phase::{conservativity_check, phase_completion, PhaseCompletion, PHASE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("SIZE-LIMIT: {size} exceeds the bound {cap}")]
    SizeLimit { size: usize, cap: usize },
    #[error("INVALID-H: {0}")]
    InvalidH(String),
    #[error("NO-SUP: no element of H lies below element {0}")]
    NoSup(usize),
    #[error("PROFILE-FAIL: {0}")]
    ProfileFail(String),
}

/// The four modality laws G1-G4 alone, for algebras that need not carry a
/// Girard zero.
pub fn modality_report(alg: &FiniteAlgebra) -> Result<CheckReport, AlgebraError> {
    let one = alg.require(ConstKind::One)?;
    let bang = alg.unary_table(UnOp::Bang)?;
    alg.table(crate::algebra::BinOp::Mult)?;
    alg.table(crate::algebra::BinOp::Meet)?;
    let mut r = CheckReport::pass();
    if bang[one] != one {
        r.push("G1", vec![], None);
    }
    if let Some(a) = alg.elements().find(|&a| !alg.leq(bang[a], alg.meet(a, one))) {
        r.push("G2", vec![a], None);
    }
    'g3: for a in alg.elements() {
        for b in alg.elements() {
            if alg.mult(bang[a], bang[b]) != bang[alg.meet(a, b)] {
                r.push("G3", vec![a, b], None);
                break 'g3;
            }
        }
    }
    if let Some(a) = alg.elements().find(|&a| bang[bang[a]] != bang[a]) {
        r.push("G4", vec![a], None);
    }
    Ok(r)
}

fn require_pass(what: &str, r: CheckReport, alg: &FiniteAlgebra) -> Result<(), ConstructionError> {
    if r.is_pass() {
        Ok(())
    } else {
        Err(ConstructionError::ProfileFail(format!(
            "{what}: {}",
            r.render(Some(alg)).trim_end().replace('\n', ";")
        )))
    }
}
