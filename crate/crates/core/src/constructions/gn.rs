//! The height-three girales `G_n` and a search for repairs of their tables.

use crate::algebra::{check_profile, BinOp, ConstKind, Elem, FiniteAlgebra, Profile, Table, UnOp};

use super::ConstructionError;

/// Element indices of `G_n` for `n >= 2`: bot, one, the atoms a3..an,
/// zero, top.
pub fn gn_labels(n: usize) -> Vec<String> {
    if n == 1 {
        return vec!["bot".into(), "top".into()];
    }
    let mut v = vec!["bot".to_string(), "one".to_string()];
    v.extend((3..=n).map(|k| format!("a{k}")));
    v.push("zero".into());
    v.push("top".into());
    v
}

/// `G_n` with its tables as defined: bot absorbing, 1 the unit, `a.a = bot`
/// for atoms other than 0 and 1, everything else top; `!1 = !top = 1`,
/// otherwise bot; `imp(a, b) = ~(a . ~b)`.
///
/// With `amend_neg` the negation swaps 1 and 0; otherwise it uses the
/// literal values `~1 = bot`, `~0 = 1`, which are not involutive.
/// `G_1` is the two-element Boolean algebra with `0 = bot` and `1 = top`.
pub fn gen_gn(n: usize, amend_neg: bool) -> FiniteAlgebra {
    assert!(n >= 1, "G_n needs at least one atom");
    if n == 1 {
        let t = |f: fn(Elem, Elem) -> Elem| Table::from_fn(2, f);
        return FiniteAlgebra::builder("G1", gn_labels(1))
            .binary(BinOp::Meet, t(|a, b| a.min(b)))
            .binary(BinOp::Join, t(|a, b| a.max(b)))
            .binary(BinOp::Mult, t(|a, b| a.min(b)))
            .binary(BinOp::Imp, t(|a, b| if a <= b { 1 } else { 0 }))
            .unary(UnOp::Neg, vec![1, 0])
            .unary(UnOp::Bang, vec![0, 1])
            .constant(ConstKind::One, 1)
            .constant(ConstKind::Zero, 0)
            .constant(ConstKind::Top, 1)
            .constant(ConstKind::Bot, 0)
            .build()
            .expect("G1 tables are well formed");
    }
    let size = n + 2;
    let (bot, one, zero, top) = (0, 1, n, n + 1);
    let is_atom = |a: Elem| a != bot && a != top;
    let meet = Table::from_fn(size, |a, b| {
        if a == b || b == top {
            a
        } else if a == top {
            b
        } else {
            bot
        }
    });
    let join = Table::from_fn(size, |a, b| {
        if a == b || b == bot {
            a
        } else if a == bot {
            b
        } else {
            top
        }
    });
    let mult = Table::from_fn(size, |a, b| {
        if a == bot || b == bot {
            bot
        } else if a == one {
            b
        } else if b == one {
            a
        } else if a == b && is_atom(a) && a != zero {
            bot
        } else {
            top
        }
    });
    let neg: Vec<Elem> = (0..size)
        .map(|a| match a {
            _ if a == bot => top,
            _ if a == top => bot,
            _ if a == one => {
                if amend_neg {
                    zero
                } else {
                    bot
                }
            }
            _ if a == zero => one,
            _ => a,
        })
        .collect();
    let imp = Table::from_fn(size, |a, b| neg[mult.get(a, neg[b])]);
    let bang: Vec<Elem> = (0..size).map(|a| if a == one || a == top { one } else { bot }).collect();
    let name = if amend_neg { format!("G{n}") } else { format!("G{n}-verbatim") };
    FiniteAlgebra::builder(name, gn_labels(n))
        .binary(BinOp::Meet, meet)
        .binary(BinOp::Join, join)
        .binary(BinOp::Mult, mult)
        .binary(BinOp::Imp, imp)
        .unary(UnOp::Neg, neg)
        .unary(UnOp::Bang, bang)
        .constant(ConstKind::One, one)
        .constant(ConstKind::Zero, zero)
        .constant(ConstKind::Top, top)
        .constant(ConstKind::Bot, bot)
        .build()
        .expect("G_n tables are well formed")
}

/// Which cells of the amended `G_n` tables a repair search may change.
/// Multiplication cells are unordered pairs (commutativity is kept).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepairCells {
    pub mult: Vec<(Elem, Elem)>,
    pub neg: Vec<Elem>,
}

impl RepairCells {
    /// Frees every product `a . x`.
    pub fn mult_row(n: usize, a: Elem) -> Self {
        RepairCells {
            mult: (0..n + 2).map(|x| (a, x)).collect(),
            neg: Vec::new(),
        }
    }
}

/// Largest number of candidate tables a repair search will try.
pub const REPAIR_BUDGET: u64 = 20_000_000;

/// Every completion of the free cells (starting from the amended `G_n`)
/// that passes BOUNDED-GIRALE, up to isomorphism, in canonical order.
/// `imp` is recomputed as the residual of each candidate product.
pub fn repair_search(n: usize, free: &RepairCells) -> Result<Vec<FiniteAlgebra>, ConstructionError> {
    if !(2..=4).contains(&n) {
        return Err(ConstructionError::SizeLimit { size: n, cap: 4 });
    }
    let base = gen_gn(n, true);
    let size = base.size();
    let mut mult_cells: Vec<(Elem, Elem)> = free
        .mult
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .filter(|&(_, b)| b < size)
        .collect();
    mult_cells.sort();
    mult_cells.dedup();
    let mut neg_cells: Vec<Elem> = free.neg.iter().copied().filter(|&a| a < size).collect();
    neg_cells.sort();
    neg_cells.dedup();
    let slots = mult_cells.len() + neg_cells.len();
    let total = (size as u64).checked_pow(slots as u32).unwrap_or(u64::MAX);
    if total > REPAIR_BUDGET {
        return Err(ConstructionError::SizeLimit {
            size: slots,
            cap: REPAIR_BUDGET as usize,
        });
    }
    let order = crate::algebra::order_from_meet(&base)?;
    let mut found: Vec<(Vec<u16>, FiniteAlgebra)> = Vec::new();
    let mut vals = vec![0usize; slots];
    loop {
        let mut mult = base.table(BinOp::Mult)?.clone();
        let mut cells = mult.cells().to_vec();
        for (k, &(a, b)) in mult_cells.iter().enumerate() {
            cells[a * size + b] = vals[k];
            cells[b * size + a] = vals[k];
        }
        mult = Table::new(size, cells);
        let mut neg = base.unary_table(UnOp::Neg)?.to_vec();
        for (k, &a) in neg_cells.iter().enumerate() {
            neg[a] = vals[mult_cells.len() + k];
        }
        if let Ok(imp) = crate::algebra::residual_of(&mult, &order) {
            let cand = base
                .to_builder()
                .binary(BinOp::Mult, mult)
                .binary(BinOp::Imp, imp)
                .unary(UnOp::Neg, neg)
                .build()?;
            if check_profile(&cand, Profile::BoundedGirale)?.is_pass() {
                let key = crate::algebra::canonical_key(&cand);
                if !found.iter().any(|(k, _)| *k == key) {
                    found.push((key, cand));
                }
            }
        }
        // odometer
        let mut k = slots;
        loop {
            if k == 0 {
                found.sort_by(|a, b| a.0.cmp(&b.0));
                return Ok(found
                    .into_iter()
                    .enumerate()
                    .map(|(i, (_, a))| a.renamed(format!("G{n}-repair{}", i + 1)))
                    .collect());
            }
            k -= 1;
            vals[k] += 1;
            if vals[k] < size {
                break;
            }
            vals[k] = 0;
        }
    }
}
