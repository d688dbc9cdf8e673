//! Modalities induced by relatively complete Heyting subsets.
//!
//! For a finite Girard algebra, a subset `H` induces `!_H a = max{b in H :
//! b <= a}` when `H` consists of idempotents below 1, contains 1, is closed
//! under products and joins, and meets every principal down-set.

use crate::algebra::{ConstKind, Elem, ElemSet, FiniteAlgebra, UnOp};

use super::ConstructionError;

/// Largest carrier for which `rc_heyting_subsets` enumerates subsets.
const SUBSET_CAP: usize = 20;

fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidH(msg.into())
}

/// Checks the conditions on `h`, naming the first that fails.
pub fn validate_heyting_subset(alg: &FiniteAlgebra, h: ElemSet) -> Result<(), ConstructionError> {
    let one = alg.require(ConstKind::One)?;
    alg.table(crate::algebra::BinOp::Mult)?;
    alg.table(crate::algebra::BinOp::Join)?;
    if h.iter().any(|a| a >= alg.size()) {
        return Err(invalid("element out of range"));
    }
    if let Some(a) = h.iter().find(|&a| !alg.leq(a, one)) {
        return Err(invalid(format!("{} is not below 1", alg.label(a))));
    }
    if !h.contains(one) {
        return Err(invalid("1 is missing"));
    }
    if let Some(a) = h.iter().find(|&a| alg.mult(a, a) != a) {
        return Err(invalid(format!("{} is not idempotent", alg.label(a))));
    }
    for a in h.iter() {
        for b in h.iter() {
            if !h.contains(alg.mult(a, b)) {
                return Err(invalid(format!(
                    "not closed under products at ({}, {})",
                    alg.label(a),
                    alg.label(b)
                )));
            }
            if !h.contains(alg.join(a, b)) {
                return Err(invalid(format!(
                    "not closed under joins at ({}, {})",
                    alg.label(a),
                    alg.label(b)
                )));
            }
        }
    }
    if let Some(a) = alg.elements().find(|&a| !h.iter().any(|b| alg.leq(b, a))) {
        return Err(ConstructionError::NoSup(a));
    }
    Ok(())
}

/// `alg` with `!` replaced by `!_H`.
pub fn induce_modality(alg: &FiniteAlgebra, h: ElemSet) -> Result<FiniteAlgebra, ConstructionError> {
    validate_heyting_subset(alg, h)?;
    let bang: Vec<Elem> = alg
        .elements()
        .map(|a| {
            let below: Vec<Elem> = h.iter().filter(|&b| alg.leq(b, a)).collect();
            below.iter().fold(below[0], |acc, &b| alg.join(acc, b))
        })
        .collect();
    Ok(alg.to_builder().unary(UnOp::Bang, bang).build()?)
}

/// Every valid `H`, sorted by bitmask.
pub fn rc_heyting_subsets(alg: &FiniteAlgebra) -> Result<Vec<ElemSet>, ConstructionError> {
    if alg.size() > SUBSET_CAP {
        return Err(ConstructionError::SizeLimit {
            size: alg.size(),
            cap: SUBSET_CAP,
        });
    }
    let one = alg.require(ConstKind::One)?;
    alg.table(crate::algebra::BinOp::Mult)?;
    let cands: Vec<Elem> = alg
        .elements()
        .filter(|&a| a != one && alg.leq(a, one) && alg.mult(a, a) == a)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cands.len()) {
        let mut h = ElemSet::singleton(one);
        for (i, &c) in cands.iter().enumerate() {
            if mask >> i & 1 == 1 {
                h.insert(c);
            }
        }
        if validate_heyting_subset(alg, h).is_ok() {
            out.push(h);
        }
    }
    out.sort();
    Ok(out)
}

/// The image of `!`.
pub fn bang_image(alg: &FiniteAlgebra) -> Result<ElemSet, ConstructionError> {
    Ok(alg.unary_table(UnOp::Bang)?.iter().copied().collect())
}
