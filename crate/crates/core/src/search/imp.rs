//! Implication tables over a fixed meet-semilattice, row by row.
//!
//! Every profile searched here includes L3, so each row `b -> a . b` is a
//! meet-preserving self-map; the candidates for a row are drawn from that
//! finite set. After each row is placed, every condition instance whose
//! rows are all known is evaluated.

use crate::algebra::{Elem, Table};

use super::lattice::Shape;

pub(crate) struct PartialImp<'a> {
    shape: &'a Shape,
    one: Option<Elem>,
    rows: Vec<Option<&'a [Elem]>>,
}

impl PartialImp<'_> {
    #[inline]
    fn i(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.rows[a].map(|r| r[b])
    }
    #[inline]
    fn m(&self, a: Elem, b: Elem) -> Elem {
        self.shape.meet.get(a, b)
    }
    #[inline]
    fn le(&self, a: Elem, b: Elem) -> bool {
        self.shape.leq(a, b)
    }
}

/// A condition over a tuple, `None` when an unknown row is needed.
pub(crate) type PartialCond = (usize, fn(&PartialImp, &[Elem]) -> Option<bool>);

pub(crate) const L4: PartialCond = (3, |p, t| {
    let (a, b, x) = (t[0], t[1], t[2]);
    let lhs = p.i(a, b)?;
    Some(p.le(lhs, p.i(p.i(x, a)?, p.i(x, b)?)?))
});
pub(crate) const L5: PartialCond = (3, |p, t| {
    let (a, b, x) = (t[0], t[1], t[2]);
    Some(p.le(p.i(a, p.i(b, x)?)?, p.i(b, p.i(a, x)?)?))
});
pub(crate) const L6: PartialCond = (2, |p, t| {
    let (a, b) = (t[0], t[1]);
    let one = p.one?;
    Some(!(p.le(one, p.i(a, b)?) && p.le(one, p.i(b, a)?)) || a == b)
});
pub(crate) const L7: PartialCond = (2, |p, t| {
    let (x, y) = (t[0], t[1]);
    let one = p.one?;
    Some(p.le(x, p.i(p.m(p.i(x, y)?, one), y)?))
});
pub(crate) const GL_JOIN: PartialCond = (3, |p, t| {
    let (a, b, x) = (t[0], t[1], t[2]);
    let j = p.shape.join.as_ref()?.get(a, b);
    Some(p.m(p.i(a, x)?, p.i(b, x)?) == p.i(j, x)?)
});
pub(crate) const LR: PartialCond = (3, |p, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    Some(p.le(p.i(p.m(p.i(x, x)?, p.i(y, y)?), z)?, z))
});

/// All self-maps of the semilattice preserving binary meets.
fn meet_preserving(shape: &Shape) -> Vec<Vec<Elem>> {
    let n = shape.size();
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        let ok = (0..n).all(|a| (0..n).all(|b| f[shape.meet.get(a, b)] == shape.meet.get(f[a], f[b])));
        if ok {
            out.push(f.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            f[k] += 1;
            if f[k] < n {
                break;
            }
            f[k] = 0;
        }
    }
}

fn holds(p: &PartialImp, conds: &[PartialCond]) -> bool {
    let n = p.shape.size();
    let mut t = [0; 3];
    for &(arity, c) in conds {
        let total = n.pow(arity as u32);
        for code in 0..total {
            let mut r = code;
            for slot in t.iter_mut().take(arity).rev() {
                *slot = r % n;
                r /= n;
            }
            if c(p, &t[..arity]) == Some(false) {
                return false;
            }
        }
    }
    true
}

/// Every implication table on `shape` whose rows preserve meets and which
/// satisfies `conds`. With `one` given, row `one` is the identity and each
/// row `a` has `one <= a -> a` (L1, L2).
pub(crate) fn for_each_imp(
    shape: &Shape,
    one: Option<Elem>,
    conds: &[PartialCond],
    frozen: Option<&Table>,
    emit: &mut dyn FnMut(Table),
) {
    let n = shape.size();
    let maps = meet_preserving(shape);
    let identity: Vec<Elem> = (0..n).collect();
    let candidates: Vec<Vec<&[Elem]>> = (0..n)
        .map(|a| {
            if Some(a) == one {
                return vec![identity.as_slice()];
            }
            maps.iter()
                .filter(|r| one.is_none_or(|o| shape.leq(o, r[a])))
                .filter(|r| frozen.is_none_or(|f| f.row(a) == r.as_slice()))
                .map(|r| r.as_slice())
                .collect()
        })
        .collect();
    if frozen.is_some_and(|f| one.is_some_and(|o| f.row(o) != identity.as_slice())) {
        return;
    }
    let mut p = PartialImp {
        shape,
        one,
        rows: vec![None; n],
    };
    place(&mut p, &candidates, 0, conds, emit);
}

fn place<'a>(
    p: &mut PartialImp<'a>,
    candidates: &[Vec<&'a [Elem]>],
    a: usize,
    conds: &[PartialCond],
    emit: &mut dyn FnMut(Table),
) {
    let n = p.shape.size();
    if a == n {
        let cells = p.rows.iter().flat_map(|r| r.unwrap().iter().copied()).collect();
        emit(Table::new(n, cells));
        return;
    }
    for &row in &candidates[a] {
        p.rows[a] = Some(row);
        if holds(p, conds) {
            place(p, candidates, a + 1, conds, emit);
        }
    }
    p.rows[a] = None;
}
