//! The Heyting algebra `Heyt(A)` on the image of `!`.

use crate::algebra::{check_profile, BinOp, CheckReport, ConstKind, Elem, ElemSet, FiniteAlgebra, Profile, Table, UnOp};
use crate::congruence::{all_filters, generate_filter, DEFAULT_CAP};

use super::{modality_report, require_pass, ConstructionError};

/// `Heyt(A)` together with the inclusion of its carrier into `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytAlgebra {
    pub algebra: FiniteAlgebra,
    /// `carrier[i]` is the element of `A` that element `i` stands for.
    pub carrier: Vec<Elem>,
}

impl HeytAlgebra {
    pub fn index_of(&self, a: Elem) -> Option<Elem> {
        self.carrier.iter().position(|&x| x == a)
    }
}

/// Builds `Heyt(A)`: carrier `!A`, join from `A`, meet `!(u /\ v)` (which
/// equals `u . v` on `!A`), implication `!(u -> v)`, top 1, and bottom the
/// least element of `!A`, which also serves as its zero.
///
/// Requires `A` to be a commutative residuated lattice whose `!` satisfies
/// G1-G4; a Girard zero is not needed.
pub fn heyt(alg: &FiniteAlgebra) -> Result<HeytAlgebra, ConstructionError> {
    require_pass("CRL", check_profile(alg, Profile::Crl)?, alg)?;
    require_pass("modality", modality_report(alg)?, alg)?;
    let bang = alg.unary_table(UnOp::Bang)?;
    let one = alg.require(ConstKind::One)?;
    let image: ElemSet = bang.iter().copied().collect();
    let carrier = image.to_vec();
    let m = carrier.len();
    let idx = |a: Elem| carrier.iter().position(|&x| x == a);
    for &u in &carrier {
        for &v in &carrier {
            if idx(alg.join(u, v)).is_none() {
                return Err(ConstructionError::ProfileFail(format!(
                    "!A is not closed under join at ({}, {})",
                    alg.label(u),
                    alg.label(v)
                )));
            }
        }
    }
    let lift = |f: &dyn Fn(Elem, Elem) -> Elem| Table::from_fn(m, |i, j| idx(f(carrier[i], carrier[j])).unwrap());
    let meet = lift(&|u, v| bang[alg.meet(u, v)]);
    let join = lift(&|u, v| alg.join(u, v));
    let imp = lift(&|u, v| bang[alg.imp(u, v)]);
    let bot = (0..m)
        .find(|&i| (0..m).all(|j| alg.leq(carrier[i], carrier[j])))
        .expect("a finite lattice image has a least element");
    let labels = carrier.iter().map(|&a| alg.label(a).to_string()).collect();
    let algebra = FiniteAlgebra::builder(format!("Heyt-{}", alg.name()), labels)
        .binary(BinOp::Meet, meet.clone())
        .binary(BinOp::Join, join)
        .binary(BinOp::Mult, meet)
        .binary(BinOp::Imp, imp)
        .constant(ConstKind::One, idx(one).expect("G1 puts 1 in the image"))
        .constant(ConstKind::Top, idx(one).unwrap())
        .constant(ConstKind::Bot, bot)
        .constant(ConstKind::Zero, bot)
        .build()?;
    Ok(HeytAlgebra { algebra, carrier })
}

/// `Heyt(A)` is Boolean: `~~x = x` with `~x = x -> bot`.
pub fn boolean_girale_check(alg: &FiniteAlgebra) -> Result<bool, ConstructionError> {
    let h = heyt(alg)?.algebra;
    let bot = h.require(ConstKind::Bot)?;
    Ok(h.elements().all(|x| h.imp(h.imp(x, bot), bot) == x))
}

/// Checks that `F -> F cap !A` and `G -> Fil_A(G)` are mutually inverse
/// order-isomorphisms between the filter lattices of `A` and `Heyt(A)`.
pub fn heyt_con_iso(alg: &FiniteAlgebra) -> Result<CheckReport, ConstructionError> {
    let h = heyt(alg)?;
    let fa = all_filters(alg, DEFAULT_CAP)?;
    let fh = all_filters(&h.algebra, DEFAULT_CAP)?;
    let restrict = |f: ElemSet| -> ElemSet { h.carrier.iter().enumerate().filter(|(_, &a)| f.contains(a)).map(|(i, _)| i).collect() };
    let extend = |g: ElemSet| -> Result<ElemSet, ConstructionError> {
        let x: ElemSet = g.iter().map(|i| h.carrier[i]).collect();
        Ok(generate_filter(alg, x)?.members())
    };
    let mut r = CheckReport::pass();
    if fa.len() != fh.len() {
        r.push("cardinality", vec![fa.len(), fh.len()], None);
    }
    for f in &fa {
        let g = restrict(f.members());
        if !fh.iter().any(|x| x.members() == g) {
            r.push("restriction-not-filter", f.members().to_vec(), None);
        }
        if extend(g)? != f.members() {
            r.push("restrict-extend-roundtrip", f.members().to_vec(), None);
        }
    }
    for g in &fh {
        if restrict(extend(g.members())?) != g.members() {
            r.push("extend-restrict-roundtrip", g.members().to_vec(), None);
        }
    }
    for f in &fa {
        for f2 in &fa {
            if f.is_subset(*f2) != restrict(f.members()).is_subset(restrict(f2.members())) {
                r.push("order", f.members().to_vec(), Some(format!("vs {:?}", f2.members())));
            }
        }
    }
    Ok(r)
}
