//! Meet-semilattices and lattices of a given size, one per isomorphism
//! class.

use crate::algebra::{canonical_key, BinOp, Elem, FiniteAlgebra, Table};

/// A finite order given by its meet (and, for lattices, join) table.
#[derive(Debug, Clone)]
pub(crate) struct Shape {
    pub meet: Table,
    pub join: Option<Table>,
}

impl Shape {
    pub fn size(&self) -> usize {
        self.meet.size()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet.get(a, b) == a
    }

    pub fn bottom(&self) -> Elem {
        let n = self.size();
        (0..n).find(|&a| (0..n).all(|b| self.leq(a, b))).expect("finite meet-semilattices have a least element")
    }

    pub fn top(&self) -> Option<Elem> {
        let n = self.size();
        (0..n).find(|&a| (0..n).all(|b| self.leq(b, a)))
    }

    pub fn from_algebra(alg: &FiniteAlgebra) -> Option<Shape> {
        Some(Shape {
            meet: alg.binary(BinOp::Meet)?.clone(),
            join: alg.binary(BinOp::Join).cloned(),
        })
    }
}

/// Greatest lower bounds in the order `lt` (strict, on indices), if all
/// exist.
fn bounds(n: usize, le: &[bool], lower: bool) -> Option<Table> {
    let below = |a: Elem, b: Elem| if lower { le[a * n + b] } else { le[b * n + a] };
    let mut cells = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let common: Vec<Elem> = (0..n).filter(|&c| below(c, a) && below(c, b)).collect();
            let best = common.iter().copied().find(|&c| common.iter().all(|&d| below(d, c)))?;
            cells.push(best);
        }
    }
    Some(Table::new(n, cells))
}

/// Every meet-semilattice (or lattice, when `lattice` is set) of size `n`,
/// up to isomorphism, in canonical order.
pub(crate) fn shapes(n: usize, lattice: bool) -> Vec<Shape> {
    assert!(n >= 1);
    // Orders are generated with a linear extension equal to the index order,
    // so only pairs i < j can be related.
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut found: Vec<(Vec<u16>, Shape)> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| !le[a * n + b] || (0..n).all(|c| !le[b * n + c] || le[a * n + c]))
        });
        if !transitive {
            continue;
        }
        let Some(meet) = bounds(n, &le, true) else { continue };
        let join = if lattice {
            match bounds(n, &le, false) {
                Some(j) => Some(j),
                None => continue,
            }
        } else {
            None
        };
        let mut b = FiniteAlgebra::builder_sized("shape", n).binary(BinOp::Meet, meet.clone());
        if let Some(j) = &join {
            b = b.binary(BinOp::Join, j.clone());
        }
        let key = canonical_key(&b.build().expect("bounds are in range"));
        if !found.iter().any(|(k, _)| *k == key) {
            found.push((key, Shape { meet, join }));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.into_iter().map(|(_, s)| s).collect()
}

/// Whether the lattice is distributive.
pub(crate) fn distributive(s: &Shape) -> bool {
    let n = s.size();
    let j = s.join.as_ref().expect("lattice");
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| s.meet.get(a, j.get(b, c)) == j.get(s.meet.get(a, b), s.meet.get(a, c))))
    })
}
