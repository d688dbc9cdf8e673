//! Filters and congruences of residuated structures.
//!
//! A filter contains 1 and is closed upwards, under meets, under modus
//! ponens, and under `!` when the algebra has one. Filters and congruences
//! correspond through `theta_of` (F to the relation a->b, b->a in F) and
//! `filter_of` (a congruence to the block of 1).

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, BinOp, CheckReport, ConstKind, Elem, ElemSet, FiniteAlgebra, UnOp};

/// Default carrier bound for the enumerations.
pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("SIZE-LIMIT: carrier has {size} elements, bound is {cap}")]
    SizeLimit { size: usize, cap: usize },
    #[error("relation induced by {0:?} is not an equivalence")]
    NotAnEquivalence(ElemSet),
}

/// A filter, stored as its member set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter(pub ElemSet);

impl Filter {
    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn contains(self, a: Elem) -> bool {
        self.0.contains(a)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(self, other: Filter) -> bool {
        self.0.is_subset(other.0)
    }

    pub fn render(self, alg: &FiniteAlgebra) -> String {
        let ls: Vec<&str> = self.0.iter().map(|e| alg.label(e)).collect();
        format!("{{{}}}", ls.join(", "))
    }
}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Filter{:?}", self.0)
    }
}

/// The tables the filter conditions need.
struct Ops<'a> {
    alg: &'a FiniteAlgebra,
    one: Elem,
    imp: &'a crate::algebra::Table,
    meet: &'a crate::algebra::Table,
    bang: Option<&'a [Elem]>,
}

impl<'a> Ops<'a> {
    fn new(alg: &'a FiniteAlgebra) -> Result<Self, AlgebraError> {
        Ok(Ops {
            alg,
            one: alg.require(ConstKind::One)?,
            imp: alg.table(BinOp::Imp)?,
            meet: alg.table(BinOp::Meet)?,
            bang: alg.unary(UnOp::Bang),
        })
    }

    fn le(&self, a: Elem, b: Elem) -> bool {
        self.meet.get(a, b) == a
    }

    fn up(&self, a: Elem) -> ElemSet {
        self.alg.elements().filter(|&b| self.le(a, b)).collect()
    }
}

/// First filter condition `s` breaks, with a witness.
pub fn filter_violation(alg: &FiniteAlgebra, s: ElemSet) -> Result<Option<(&'static str, Vec<Elem>)>, AlgebraError> {
    let o = Ops::new(alg)?;
    if !s.contains(o.one) {
        return Ok(Some(("contains-one", vec![o.one])));
    }
    for a in s.iter() {
        for b in alg.elements() {
            if o.le(a, b) && !s.contains(b) {
                return Ok(Some(("up-closed", vec![a, b])));
            }
        }
    }
    for a in s.iter() {
        for b in s.iter() {
            if !s.contains(o.meet.get(a, b)) {
                return Ok(Some(("meet-closed", vec![a, b])));
            }
        }
    }
    for a in s.iter() {
        for b in alg.elements() {
            if s.contains(o.imp.get(a, b)) && !s.contains(b) {
                return Ok(Some(("mp-closed", vec![a, b])));
            }
        }
    }
    if let Some(bang) = o.bang {
        for a in s.iter() {
            if !s.contains(bang[a]) {
                return Ok(Some(("bang-closed", vec![a])));
            }
        }
    }
    Ok(None)
}

pub fn is_filter(alg: &FiniteAlgebra, s: ElemSet) -> Result<bool, AlgebraError> {
    Ok(filter_violation(alg, s)?.is_none())
}

/// Least filter containing `x`, by closing under the filter conditions
/// until nothing changes.
pub fn generate_filter_closure(alg: &FiniteAlgebra, x: ElemSet) -> Result<Filter, AlgebraError> {
    let o = Ops::new(alg)?;
    let mut s = x;
    s.insert(o.one);
    loop {
        let mut next = s;
        for a in s.iter() {
            next = next.union(o.up(a));
            for b in s.iter() {
                next.insert(o.meet.get(a, b));
            }
            for b in alg.elements() {
                if s.contains(o.imp.get(a, b)) {
                    next.insert(b);
                }
            }
            if let Some(bang) = o.bang {
                next.insert(bang[a]);
            }
        }
        if next == s {
            return Ok(Filter(s));
        }
        s = next;
    }
}

/// The explicit description for algebras with `!`: everything above some
/// `!(b1 /\ ... /\ bn)` with the `bi` in `x`, together with everything
/// above 1. Only meaningful when the algebra is a girale.
pub fn generate_filter_explicit(alg: &FiniteAlgebra, x: ElemSet) -> Result<Filter, AlgebraError> {
    let o = Ops::new(alg)?;
    let bang = alg.unary_table(UnOp::Bang)?;
    // meets of all finite nonempty subsets of x
    let mut meets = x;
    loop {
        let mut next = meets;
        for a in meets.iter() {
            for b in x.iter() {
                next.insert(o.meet.get(a, b));
            }
        }
        if next == meets {
            break;
        }
        meets = next;
    }
    let mut s = o.up(o.one);
    for m in meets.iter() {
        s = s.union(o.up(bang[m]));
    }
    Ok(Filter(s))
}

/// Least filter containing `x`: the explicit description when the algebra
/// has `!`, the iterative closure otherwise.
pub fn generate_filter(alg: &FiniteAlgebra, x: ElemSet) -> Result<Filter, AlgebraError> {
    if alg.unary(UnOp::Bang).is_some() {
        generate_filter_explicit(alg, x)
    } else {
        generate_filter_closure(alg, x)
    }
}

/// The filter generated by `a`; with `!` this is the up-set of `!a`.
pub fn principal_filter(alg: &FiniteAlgebra, a: Elem) -> Result<Filter, AlgebraError> {
    match alg.unary(UnOp::Bang) {
        Some(bang) => {
            let o = Ops::new(alg)?;
            Ok(Filter(o.up(bang[a])))
        }
        None => generate_filter_closure(alg, ElemSet::singleton(a)),
    }
}

fn check_cap(alg: &FiniteAlgebra, cap: usize) -> Result<(), CongruenceError> {
    if alg.size() > cap {
        Err(CongruenceError::SizeLimit { size: alg.size(), cap })
    } else {
        Ok(())
    }
}

/// Every filter, sorted by member bitmask. Each filter is generated by the
/// antichain of its minimal elements, so closing every antichain finds all.
pub fn all_filters(alg: &FiniteAlgebra, cap: usize) -> Result<Vec<Filter>, CongruenceError> {
    check_cap(alg, cap)?;
    let o = Ops::new(alg)?;
    let n = alg.size();
    let mut out: Vec<Filter> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let s = ElemSet::from_mask(mask);
        let antichain = s.iter().all(|a| s.iter().all(|b| a == b || !o.le(a, b)));
        if antichain {
            out.push(generate_filter_closure(alg, s)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A partition of the carrier, stored as the least element of each block.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    leader: Vec<Elem>,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{:?}", self.blocks())
    }
}

struct UnionFind(Vec<Elem>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, a: Elem) -> Elem {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = a;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: Elem, b: Elem) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so leaders are block minima
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.0.len();
        Congruence {
            leader: (0..n).map(|a| self.find(a)).collect(),
        }
    }
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence { leader: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Congruence { leader: vec![0; n] }
    }

    /// The equivalence generated by `pairs` (not necessarily compatible).
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Self {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            uf.union(a, b);
        }
        uf.into_congruence()
    }

    pub fn size(&self) -> usize {
        self.leader.len()
    }

    pub fn leader(&self, a: Elem) -> Elem {
        self.leader[a]
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.leader[a] == self.leader[b]
    }

    pub fn block_of(&self, a: Elem) -> ElemSet {
        (0..self.size()).filter(|&b| self.related(a, b)).collect()
    }

    /// Blocks in order of their least elements.
    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = Vec::new();
        for a in 0..self.size() {
            if self.leader[a] == a {
                out.push((a..self.size()).filter(|&b| self.leader[b] == a).collect());
            }
        }
        out
    }

    pub fn num_blocks(&self) -> usize {
        (0..self.size()).filter(|&a| self.leader[a] == a).count()
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// `self` is contained in `other` as a relation.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.size()).all(|a| other.related(a, self.leader[a]))
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        Congruence::from_pairs(n, (0..n).flat_map(|a| [(a, self.leader[a]), (a, other.leader[a])]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        Congruence::from_pairs(
            n,
            (0..n).flat_map(|a| (0..a).filter(move |&b| self.related(a, b) && other.related(a, b)).map(move |b| (a, b))),
        )
    }

    /// First operation and argument tuple on which the partition is not
    /// compatible: related inputs with unrelated outputs.
    pub fn compatibility_violation(&self, alg: &FiniteAlgebra) -> Option<(&'static str, Vec<Elem>)> {
        let n = self.size();
        for op in UnOp::ALL {
            if let Some(u) = alg.unary(op) {
                for a in 0..n {
                    for b in 0..n {
                        if self.related(a, b) && !self.related(u[a], u[b]) {
                            return Some((op.name(), vec![a, b]));
                        }
                    }
                }
            }
        }
        for op in BinOp::ALL {
            if let Some(t) = alg.binary(op) {
                for a in 0..n {
                    for b in 0..n {
                        if !self.related(a, b) {
                            continue;
                        }
                        for c in 0..n {
                            if !self.related(t.get(a, c), t.get(b, c)) || !self.related(t.get(c, a), t.get(c, b)) {
                                return Some((op.name(), vec![a, b, c]));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, alg: &FiniteAlgebra) -> bool {
        self.compatibility_violation(alg).is_none()
    }

    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        let bs: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let ls: Vec<&str> = b.iter().map(|&e| alg.label(e)).collect();
                format!("{{{}}}", ls.join(", "))
            })
            .collect();
        bs.join(" ")
    }
}

/// Least congruence containing `pairs`, by closing the generated
/// equivalence under every operation of `alg`.
pub fn congruence_generated(alg: &FiniteAlgebra, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    let bins: Vec<&crate::algebra::Table> = BinOp::ALL.iter().filter_map(|&op| alg.binary(op)).collect();
    let uns: Vec<&[Elem]> = UnOp::ALL.iter().filter_map(|&op| alg.unary(op)).collect();
    loop {
        let mut changed = false;
        for a in 0..n {
            let ra = uf.find(a);
            if ra == a {
                continue;
            }
            // a and its root are related; push the pair through every operation
            for u in &uns {
                changed |= uf.union(u[a], u[ra]);
            }
            for t in &bins {
                for c in 0..n {
                    changed |= uf.union(t.get(a, c), t.get(ra, c));
                    changed |= uf.union(t.get(c, a), t.get(c, ra));
                }
            }
        }
        if !changed {
            return uf.into_congruence();
        }
    }
}

/// `Cg(a, b)` by closure.
pub fn principal_congruence(alg: &FiniteAlgebra, a: Elem, b: Elem) -> Congruence {
    congruence_generated(alg, &[(a, b)])
}

/// `(a -> b) /\ (b -> a)`.
pub fn biimp(alg: &FiniteAlgebra, a: Elem, b: Elem) -> Elem {
    alg.meet(alg.imp(a, b), alg.imp(b, a))
}

/// `Cg(a, b)` as the congruence of the filter generated by `a <-> b`.
pub fn principal_congruence_via_filter(alg: &FiniteAlgebra, a: Elem, b: Elem) -> Result<Congruence, CongruenceError> {
    Ops::new(alg)?;
    let f = generate_filter(alg, ElemSet::singleton(biimp(alg, a, b)))?;
    theta_of(alg, f)
}

/// Every congruence, obtained by closing the principal congruences under
/// joins; sorted by leader vector.
pub fn all_congruences(alg: &FiniteAlgebra, cap: usize) -> Result<Vec<Congruence>, CongruenceError> {
    check_cap(alg, cap)?;
    let n = alg.size();
    let mut principal: Vec<Congruence> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = principal_congruence(alg, a, b);
            if !principal.contains(&c) {
                principal.push(c);
            }
        }
    }
    let mut all: Vec<Congruence> = vec![Congruence::identity(n)];
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principal {
                let j = c.join(p);
                if !all.contains(&j) && !next.contains(&j) {
                    next.push(j);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    Ok(all)
}

/// `{(a, b) : a -> b in F and b -> a in F}`.
pub fn theta_of(alg: &FiniteAlgebra, f: Filter) -> Result<Congruence, CongruenceError> {
    let o = Ops::new(alg)?;
    let n = alg.size();
    let rel = |a: Elem, b: Elem| f.contains(o.imp.get(a, b)) && f.contains(o.imp.get(b, a));
    let c = Congruence::from_pairs(n, (0..n).flat_map(|a| (0..n).filter(move |&b| rel(a, b)).map(move |b| (a, b))));
    for a in 0..n {
        for b in 0..n {
            if c.related(a, b) != rel(a, b) {
                return Err(CongruenceError::NotAnEquivalence(f.members()));
            }
        }
    }
    Ok(c)
}

/// `{a : (a /\ 1, 1) in theta}`, the up-closure of the block of 1.
///
/// The block itself is only convex; it is up-closed when 1 is the top.
pub fn filter_of(alg: &FiniteAlgebra, theta: &Congruence) -> Result<Filter, AlgebraError> {
    let o = Ops::new(alg)?;
    Ok(Filter(alg.elements().filter(|&a| theta.related(o.meet.get(a, o.one), o.one)).collect()))
}

/// Verifies that `theta_of` and `filter_of` are mutually inverse
/// order-isomorphisms between the filter and congruence lattices.
pub fn check_con_fil_iso(alg: &FiniteAlgebra, cap: usize) -> Result<CheckReport, CongruenceError> {
    let filters = all_filters(alg, cap)?;
    let congs = all_congruences(alg, cap)?;
    let mut r = CheckReport::pass();
    if filters.len() != congs.len() {
        r.push(
            "cardinality",
            vec![filters.len(), congs.len()],
            Some(format!("{} filters vs {} congruences", filters.len(), congs.len())),
        );
    }
    let mut thetas = Vec::with_capacity(filters.len());
    for &f in &filters {
        match theta_of(alg, f) {
            Ok(t) => {
                if let Some((op, w)) = t.compatibility_violation(alg) {
                    r.push("theta-not-congruence", f.members().to_vec(), Some(format!("{op} at {w:?}")));
                }
                if !congs.contains(&t) {
                    r.push("theta-not-listed", f.members().to_vec(), None);
                }
                if filter_of(alg, &t)? != f {
                    r.push("filter-theta-roundtrip", f.members().to_vec(), None);
                }
                thetas.push(t);
            }
            Err(CongruenceError::NotAnEquivalence(_)) => {
                r.push("theta-not-equivalence", f.members().to_vec(), None);
                thetas.push(Congruence::identity(alg.size()));
            }
            Err(e) => return Err(e),
        }
    }
    for c in &congs {
        let f = filter_of(alg, c)?;
        if let Some((cond, _)) = filter_violation(alg, f.members())? {
            r.push("block-of-one-not-filter", c.leader.clone(), Some(cond.to_string()));
            continue;
        }
        if theta_of(alg, f).ok().as_ref() != Some(c) {
            r.push("theta-filter-roundtrip", c.leader.clone(), None);
        }
    }
    for (i, &f) in filters.iter().enumerate() {
        for (j, &g) in filters.iter().enumerate() {
            if f.is_subset(g) != thetas[i].refines(&thetas[j]) {
                r.push("order", vec![i, j], Some(format!("{f:?} vs {g:?}")));
            }
        }
    }
    Ok(r)
}

/// Checks that `Cg(a, b)` computed by closure and via filters agree for
/// every pair.
pub fn check_principal_agreement(alg: &FiniteAlgebra) -> Result<CheckReport, CongruenceError> {
    let mut r = CheckReport::pass();
    for a in alg.elements() {
        for b in alg.elements() {
            if principal_congruence(alg, a, b) != principal_congruence_via_filter(alg, a, b)? {
                r.push("principal-congruence", vec![a, b], None);
            }
        }
    }
    Ok(r)
}

/// `(c, d) in Cg(a, b)` iff `!(a <-> b) <= c <-> d`, for all quadruples.
pub fn edpc_check(alg: &FiniteAlgebra) -> Result<CheckReport, CongruenceError> {
    Ops::new(alg)?;
    let bang = alg.unary_table(UnOp::Bang)?;
    let mut r = CheckReport::pass();
    for a in alg.elements() {
        for b in alg.elements() {
            let cg = principal_congruence(alg, a, b);
            let lhs = bang[biimp(alg, a, b)];
            for c in alg.elements() {
                for d in alg.elements() {
                    if cg.related(c, d) != alg.leq(lhs, biimp(alg, c, d)) {
                        r.push("edpc", vec![a, b, c, d], None);
                        return Ok(r);
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Exactly two congruences.
pub fn is_simple(alg: &FiniteAlgebra) -> Result<bool, CongruenceError> {
    Ok(all_congruences(alg, DEFAULT_CAP)?.len() == 2)
}

/// Nontrivial with a least non-identity congruence.
pub fn is_subdirectly_irreducible(alg: &FiniteAlgebra) -> Result<bool, CongruenceError> {
    let congs = all_congruences(alg, DEFAULT_CAP)?;
    let proper: Vec<&Congruence> = congs.iter().filter(|c| !c.is_identity()).collect();
    if proper.is_empty() {
        return Ok(false);
    }
    Ok(proper.iter().any(|m| proper.iter().all(|c| m.refines(c))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Table;

    fn chain(n: usize) -> FiniteAlgebra {
        // Goedel chain: integral, mult = meet, bang = identity below 1
        FiniteAlgebra::builder_sized(format!("C{n}"), n)
            .binary(BinOp::Meet, Table::from_fn(n, |a, b| a.min(b)))
            .binary(BinOp::Join, Table::from_fn(n, |a, b| a.max(b)))
            .binary(BinOp::Mult, Table::from_fn(n, |a, b| a.min(b)))
            .constant(ConstKind::One, n - 1)
            .build()
            .unwrap()
            .with_derived()
    }

    #[test]
    fn chain_filters_are_up_sets() {
        let c = chain(3);
        let fs = all_filters(&c, DEFAULT_CAP).unwrap();
        let sets: Vec<Vec<Elem>> = fs.iter().map(|f| f.members().to_vec()).collect();
        assert_eq!(sets, vec![vec![2], vec![1, 2], vec![0, 1, 2]]);
        assert!(check_con_fil_iso(&c, DEFAULT_CAP).unwrap().is_pass());
    }

    #[test]
    fn congruence_lattice_of_chain() {
        let c = chain(3);
        let cs = all_congruences(&c, DEFAULT_CAP).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(!is_simple(&c).unwrap());
        assert!(is_subdirectly_irreducible(&c).unwrap());
        assert!(is_simple(&chain(2)).unwrap());
    }

    #[test]
    fn union_find_leaders_are_minima() {
        let c = Congruence::from_pairs(4, [(3, 1), (2, 3)]);
        assert_eq!(c.blocks(), vec![vec![0], vec![1, 2, 3]]);
        let d = Congruence::from_pairs(4, [(0, 1)]);
        assert!(c.join(&d).is_full());
        assert!(c.meet(&d).is_identity());
        assert!(Congruence::identity(4).refines(&c));
    }

    #[test]
    fn size_limit() {
        let c = chain(3);
        assert!(matches!(all_filters(&c, 2), Err(CongruenceError::SizeLimit { size: 3, cap: 2 })));
    }
}
