//! Commutative residuated multiplications on a fixed finite lattice.
//!
//! In a finite lattice a multiplication is residuated iff it preserves
//! finite joins (including the empty one, so `a . bot = bot`) in each
//! argument. Cells are filled in index order, and after each assignment
//! every monotonicity, join-distributivity and associativity instance whose
//! cells are known is checked.

use crate::algebra::{Elem, Table};

use super::lattice::Shape;

const UNSET: u8 = u8::MAX;

struct Partial<'a> {
    shape: &'a Shape,
    join: &'a Table,
    n: usize,
    cells: Vec<u8>,
}

impl Partial<'_> {
    #[inline]
    fn get(&self, a: Elem, b: Elem) -> Option<Elem> {
        let v = self.cells[a * self.n + b];
        (v != UNSET).then_some(v as Elem)
    }

    fn set(&mut self, a: Elem, b: Elem, v: u8) {
        self.cells[a * self.n + b] = v;
        self.cells[b * self.n + a] = v;
    }

    /// Constraints touching row `a` (and, by commutativity, column `a`).
    fn consistent(&self, a: Elem) -> bool {
        let n = self.n;
        let s = self.shape;
        for x in 0..n {
            let Some(ax) = self.get(a, x) else { continue };
            for y in 0..n {
                if s.leq(x, y) {
                    if let Some(ay) = self.get(a, y) {
                        if !s.leq(ax, ay) {
                            return false;
                        }
                    }
                }
                if let (Some(ay), Some(axy)) = (self.get(a, y), self.get(a, self.join.get(x, y))) {
                    if axy != self.join.get(ax, ay) {
                        return false;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.get(x, y) else { continue };
                for z in 0..n {
                    if let (Some(l), Some(yz)) = (self.get(xy, z), self.get(y, z)) {
                        if let Some(r) = self.get(x, yz) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Every commutative, associative, join-preserving multiplication on the
/// lattice `shape` with unit `one`, passed to `emit` as a table.
pub(crate) fn for_each_mult(shape: &Shape, one: Elem, frozen: Option<&Table>, emit: &mut dyn FnMut(Table)) {
    let n = shape.size();
    let join = shape.join.as_ref().expect("multiplications live on lattices");
    let bot = shape.bottom();
    if n > 1 && one == bot {
        return;
    }
    let mut p = Partial {
        shape,
        join,
        n,
        cells: vec![UNSET; n * n],
    };
    for x in 0..n {
        p.set(bot, x, bot as u8);
    }
    for x in 0..n {
        p.set(one, x, x as u8);
    }
    if let Some(f) = frozen {
        for a in 0..n {
            for b in 0..n {
                if let Some(v) = p.get(a, b) {
                    if v != f.get(a, b) {
                        return;
                    }
                }
            }
        }
    }
    if !(0..n).all(|a| p.consistent(a)) {
        return;
    }
    let free: Vec<(Elem, Elem)> = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != bot && b != bot && a != one && b != one)
        .collect();
    fill(&mut p, &free, 0, frozen, emit);
}

fn fill(p: &mut Partial, free: &[(Elem, Elem)], k: usize, frozen: Option<&Table>, emit: &mut dyn FnMut(Table)) {
    if k == free.len() {
        emit(Table::new(p.n, p.cells.iter().map(|&v| v as Elem).collect()));
        return;
    }
    let (a, b) = free[k];
    let values: Vec<Elem> = match frozen {
        Some(f) => vec![f.get(a, b)],
        None => (0..p.n).collect(),
    };
    for v in values {
        p.set(a, b, v as u8);
        if p.consistent(a) && (a == b || p.consistent(b)) {
            fill(p, free, k + 1, frozen, emit);
        }
    }
    p.set(a, b, UNSET);
}
