//! The polar-closure completion `C(A)` of a Girard algebra.
//!
//! With `N(S) = {b : a <= ~b for all a in S}`, the closed sets are the
//! fixpoints of `N . N`; for finite `A` they are exactly the principal
//! down-sets, so `C(A)` is isomorphic to `A` and the embedding `a -> (a]`
//! is onto. The construction is still carried out literally so that the
//! embedding laws are checked rather than assumed.

use crate::algebra::{check_profile, BinOp, CheckReport, ConstKind, Elem, ElemSet, FiniteAlgebra, Profile, Table, UnOp};

use super::{induce_modality, require_pass, ConstructionError};

/// Default bound on `|A|`.
pub const PHASE_CAP: usize = 8;

#[derive(Debug, Clone)]
pub struct PhaseCompletion {
    /// The closed sets, sorted by bitmask; element `i` of `algebra` is
    /// `closed[i]`.
    pub closed: Vec<ElemSet>,
    pub algebra: FiniteAlgebra,
    /// `embedding[a]` is the index of `N(N({a}))`.
    pub embedding: Vec<Elem>,
    /// Injectivity, `N(N({a})) = (a]`, and preservation of meet, join,
    /// product, negation, implication and the constants.
    pub report: CheckReport,
}

struct Polar<'a> {
    alg: &'a FiniteAlgebra,
}

impl Polar<'_> {
    fn n(&self, s: ElemSet) -> ElemSet {
        let a = self.alg;
        a.elements().filter(|&b| s.iter().all(|x| a.leq(x, a.neg(b)))).collect()
    }

    fn nn(&self, s: ElemSet) -> ElemSet {
        self.n(self.n(s))
    }
}

pub fn phase_completion(alg: &FiniteAlgebra, cap: usize) -> Result<PhaseCompletion, ConstructionError> {
    if alg.size() > cap {
        return Err(ConstructionError::SizeLimit { size: alg.size(), cap });
    }
    let alg = &alg.with_derived();
    require_pass("GIRARD", check_profile(alg, Profile::Girard)?, alg)?;
    let one = alg.require(ConstKind::One)?;
    let zero = alg.require(ConstKind::Zero)?;
    let pol = Polar { alg };
    let n = alg.size();
    let mut closed: Vec<ElemSet> = (0..(1u64 << n))
        .map(ElemSet::from_mask)
        .filter(|&s| pol.nn(s) == s)
        .collect();
    closed.sort();
    let m = closed.len();
    let idx = |s: ElemSet| closed.binary_search(&s).expect("N(N(S)) is closed");
    let product = |x: ElemSet, y: ElemSet| -> ElemSet {
        let raw: ElemSet = x.iter().flat_map(|a| y.iter().map(move |b| alg.mult(a, b))).collect();
        pol.nn(raw)
    };
    let neg: Vec<Elem> = closed.iter().map(|&x| idx(pol.n(x))).collect();
    let meet = Table::from_fn(m, |i, j| idx(closed[i].intersection(closed[j])));
    let join = Table::from_fn(m, |i, j| idx(pol.nn(closed[i].union(closed[j]))));
    let mult = Table::from_fn(m, |i, j| idx(product(closed[i], closed[j])));
    let imp = Table::from_fn(m, |i, j| neg[mult.get(i, neg[j])]);
    let unit = idx(pol.nn(ElemSet::singleton(one)));

    let principal = |a: Elem| -> ElemSet { alg.elements().filter(|&b| alg.leq(b, a)).collect() };
    let labels = closed
        .iter()
        .enumerate()
        .map(|(i, &s)| match alg.elements().find(|&a| principal(a) == s) {
            Some(a) => format!("({}]", alg.label(a)),
            None => format!("c{i}"),
        })
        .collect();
    let algebra = FiniteAlgebra::builder(format!("C-{}", alg.name()), labels)
        .binary(BinOp::Meet, meet)
        .binary(BinOp::Join, join)
        .binary(BinOp::Mult, mult)
        .binary(BinOp::Imp, imp)
        .unary(UnOp::Neg, neg.clone())
        .constant(ConstKind::One, unit)
        .constant(ConstKind::Zero, neg[unit])
        .constant(ConstKind::Top, idx(pol.nn(ElemSet::full(n))))
        .constant(ConstKind::Bot, idx(pol.nn(ElemSet::empty())))
        .build()?;
    require_pass("BOUNDED-GIRARD", check_profile(&algebra, Profile::BoundedGirard)?, &algebra)?;

    let embedding: Vec<Elem> = alg.elements().map(|a| idx(pol.nn(ElemSet::singleton(a)))).collect();
    let mut report = CheckReport::pass();
    for a in alg.elements() {
        if closed[embedding[a]] != principal(a) {
            report.push("principal", vec![a], None);
        }
        for b in 0..a {
            if embedding[a] == embedding[b] {
                report.push("injective", vec![b, a], None);
            }
        }
    }
    if embedding[one] != unit {
        report.push("unit", vec![one], None);
    }
    if embedding[zero] != algebra.require(ConstKind::Zero)? {
        report.push("zero", vec![zero], None);
    }
    for a in alg.elements() {
        if embedding[alg.neg(a)] != algebra.neg(embedding[a]) {
            report.push("neg", vec![a], None);
        }
    }
    let laws: [(&str, BinOp); 4] = [("meet", BinOp::Meet), ("join", BinOp::Join), ("mult", BinOp::Mult), ("imp", BinOp::Imp)];
    for (name, op) in laws {
        let (Some(src), Ok(dst)) = (alg.binary(op), algebra.table(op)) else {
            continue;
        };
        'pairs: for a in alg.elements() {
            for b in alg.elements() {
                if embedding[src.get(a, b)] != dst.get(embedding[a], embedding[b]) {
                    report.push(name, vec![a, b], None);
                    break 'pairs;
                }
            }
        }
    }
    Ok(PhaseCompletion {
        closed,
        algebra,
        embedding,
        report,
    })
}

/// Embeds `A` into `C(A)`, equips `C(A)` with the modality induced by its
/// idempotents below 1, and checks that the result is a girale (bounded
/// when `A` has a top) into which `A` embeds preserving its Girard
/// operations.
pub fn conservativity_check(alg: &FiniteAlgebra, cap: usize) -> Result<CheckReport, ConstructionError> {
    let pc = phase_completion(alg, cap)?;
    let c = &pc.algebra;
    let one = c.require(ConstKind::One)?;
    let h: ElemSet = c.elements().filter(|&a| c.leq(a, one) && c.mult(a, a) == a).collect();
    let girale = induce_modality(c, h)?;
    let profile = if alg.constant(ConstKind::Top).is_some() {
        Profile::BoundedGirale
    } else {
        Profile::Girale
    };
    let mut report = check_profile(&girale, profile)?;
    report.merge(pc.report);
    Ok(report)
}
