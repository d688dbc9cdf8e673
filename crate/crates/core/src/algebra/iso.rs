//! Isomorphism testing and canonical forms.
//!
//! The canonical key of an algebra is the lexicographically least encoding of
//! its tables over all relabellings that list elements in increasing order of
//! an isomorphism-invariant signature (constant flags, down-set and up-set
//! sizes, fixed-point flags). Isomorphic algebras have identical sets of such
//! relabellings, so the minimum is an isomorphism invariant, and since the
//! encoding determines every table it is also complete.

use super::{AlgebraError, BinOp, ConstKind, Elem, FiniteAlgebra, Table, UnOp};

const ABSENT: u16 = u16::MAX;

fn invariant(alg: &FiniteAlgebra, a: Elem) -> [u32; 4] {
    let n = alg.size();
    let mut flags = 0u32;
    for (bit, c) in ConstKind::ALL.iter().enumerate() {
        if alg.constant(*c) == Some(a) {
            flags |= 1 << bit;
        }
    }
    if let Some(t) = alg.binary(BinOp::Mult) {
        if t.get(a, a) == a {
            flags |= 1 << 4;
        }
    }
    if let Some(t) = alg.binary(BinOp::Imp) {
        if t.get(a, a) == a {
            flags |= 1 << 5;
        }
    }
    if let Some(u) = alg.unary(UnOp::Neg) {
        if u[a] == a {
            flags |= 1 << 6;
        }
    }
    if let Some(u) = alg.unary(UnOp::Bang) {
        if u[a] == a {
            flags |= 1 << 7;
        }
    }
    let (down, up) = match alg.binary(BinOp::Meet) {
        Some(m) => (
            (0..n).filter(|&b| m.get(b, a) == b).count() as u32,
            (0..n).filter(|&b| m.get(a, b) == a).count() as u32,
        ),
        None => (0, 0),
    };
    // Constants first, then by height.
    [u32::MAX - flags, down, u32::MAX - up, 0]
}

fn encode(alg: &FiniteAlgebra, order: &[Elem], sigma: &[Elem], out: &mut Vec<u16>) {
    let n = alg.size();
    out.clear();
    out.push(n as u16);
    for op in BinOp::ALL {
        match alg.binary(op) {
            Some(t) => {
                out.push(1);
                for i in 0..n {
                    for j in 0..n {
                        out.push(sigma[t.get(order[i], order[j])] as u16);
                    }
                }
            }
            None => out.push(0),
        }
    }
    for op in UnOp::ALL {
        match alg.unary(op) {
            Some(u) => {
                out.push(1);
                for &o in order {
                    out.push(sigma[u[o]] as u16);
                }
            }
            None => out.push(0),
        }
    }
    for c in ConstKind::ALL {
        out.push(alg.constant(c).map_or(ABSENT, |v| sigma[v] as u16));
    }
}

/// Calls `visit(order)` for every arrangement of the carrier that keeps
/// invariant classes contiguous and in increasing invariant order.
fn for_each_arrangement(alg: &FiniteAlgebra, mut visit: impl FnMut(&[Elem])) {
    let n = alg.size();
    let mut elems: Vec<(Vec<u32>, Elem)> = (0..n).map(|a| (invariant(alg, a).to_vec(), a)).collect();
    elems.sort();
    let mut blocks: Vec<Vec<Elem>> = Vec::new();
    for (i, (inv, a)) in elems.iter().enumerate() {
        if i > 0 && elems[i - 1].0 == *inv {
            blocks.last_mut().unwrap().push(*a);
        } else {
            blocks.push(vec![*a]);
        }
    }
    let mut order = Vec::with_capacity(n);
    arrange(&mut blocks, 0, 0, &mut order, &mut visit);
}

fn arrange(
    blocks: &mut [Vec<Elem>],
    bi: usize,
    k: usize,
    order: &mut Vec<Elem>,
    visit: &mut impl FnMut(&[Elem]),
) {
    if bi == blocks.len() {
        visit(order);
        return;
    }
    if k == blocks[bi].len() {
        arrange(blocks, bi + 1, 0, order, visit);
        return;
    }
    for i in k..blocks[bi].len() {
        blocks[bi].swap(k, i);
        order.push(blocks[bi][k]);
        arrange(blocks, bi, k + 1, order, visit);
        order.pop();
        blocks[bi].swap(k, i);
    }
}

/// The canonical byte string of `alg`; equal keys iff isomorphic.
pub fn canonical_key(alg: &FiniteAlgebra) -> Vec<u16> {
    canonical_with_order(alg).0
}

fn canonical_with_order(alg: &FiniteAlgebra) -> (Vec<u16>, Vec<Elem>) {
    assert!(alg.size() < ABSENT as usize);
    let n = alg.size();
    let mut best: Option<(Vec<u16>, Vec<Elem>)> = None;
    let mut sigma = vec![0; n];
    let mut buf = Vec::new();
    for_each_arrangement(alg, |order| {
        for (new, &old) in order.iter().enumerate() {
            sigma[old] = new;
        }
        encode(alg, order, &sigma, &mut buf);
        if best.as_ref().is_none_or(|(b, _)| buf < *b) {
            best = Some((buf.clone(), sigma.clone()));
        }
    });
    best.expect("at least one arrangement")
}

/// Isomorphic copy of `alg` in canonical position, named `canonical` with
/// labels `e0 .. e{n-1}`.
pub fn canonical_form(alg: &FiniteAlgebra) -> FiniteAlgebra {
    let (_, sigma) = canonical_with_order(alg);
    let p = alg.permuted(&sigma);
    let mut b = FiniteAlgebra::builder_sized("canonical", alg.size());
    for op in BinOp::ALL {
        if let Some(t) = p.binary(op) {
            b = b.binary(op, t.clone());
        }
    }
    for op in UnOp::ALL {
        if let Some(u) = p.unary(op) {
            b = b.unary(op, u.to_vec());
        }
    }
    for c in ConstKind::ALL {
        if let Some(v) = p.constant(c) {
            b = b.constant(c, v);
        }
    }
    b.build().expect("permutation preserves validity")
}

/// Finds a bijection `sigma` (element of `a` -> element of `b`) preserving
/// every table and constant, by plain backtracking over all bijections.
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<Elem>>, AlgebraError> {
    if a.size() != b.size() || a.signature() != b.signature() {
        return Err(AlgebraError::SignatureMismatch(format!(
            "{} {:?} vs {} {:?}",
            a.size(),
            a.signature(),
            b.size(),
            b.signature()
        )));
    }
    let n = a.size();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(if extend(a, b, 0, &mut sigma, &mut used) {
        Some(sigma)
    } else {
        None
    })
}

fn extend(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, sigma: &mut [Elem], used: &mut [bool]) -> bool {
    let n = a.size();
    if k == n {
        return preserves(a, b, sigma);
    }
    for img in 0..n {
        if used[img] {
            continue;
        }
        sigma[k] = img;
        used[img] = true;
        if partial_ok(a, b, k, sigma) && extend(a, b, k + 1, sigma, used) {
            return true;
        }
        used[img] = false;
        sigma[k] = usize::MAX;
    }
    false
}

/// Checks every table cell whose arguments and value are all mapped already,
/// for the cells that involve the newly mapped element `k`.
fn partial_ok(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, sigma: &[Elem]) -> bool {
    let mapped = |x: Elem| x <= k;
    for c in ConstKind::ALL {
        if let (Some(x), Some(y)) = (a.constant(c), b.constant(c)) {
            if x == k && sigma[x] != y {
                return false;
            }
            if x != k && sigma[k] == y {
                return false;
            }
        }
    }
    for op in UnOp::ALL {
        if let (Some(u), Some(v)) = (a.unary(op), b.unary(op)) {
            for x in 0..=k {
                if (x == k || u[x] == k) && mapped(u[x]) && sigma[u[x]] != v[sigma[x]] {
                    return false;
                }
            }
        }
    }
    for op in BinOp::ALL {
        if let (Some(s), Some(t)) = (a.binary(op), b.binary(op)) {
            for x in 0..=k {
                for y in 0..=k {
                    let z = s.get(x, y);
                    if (x == k || y == k || z == k) && mapped(z) && sigma[z] != t.get(sigma[x], sigma[y]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn preserves(a: &FiniteAlgebra, b: &FiniteAlgebra, sigma: &[Elem]) -> bool {
    let n = a.size();
    let tab_ok = |s: &Table, t: &Table| {
        (0..n).all(|x| (0..n).all(|y| sigma[s.get(x, y)] == t.get(sigma[x], sigma[y])))
    };
    BinOp::ALL.iter().all(|&op| match (a.binary(op), b.binary(op)) {
        (Some(s), Some(t)) => tab_ok(s, t),
        _ => true,
    }) && UnOp::ALL.iter().all(|&op| match (a.unary(op), b.unary(op)) {
        (Some(u), Some(v)) => (0..n).all(|x| sigma[u[x]] == v[sigma[x]]),
        _ => true,
    }) && ConstKind::ALL.iter().all(|&c| match (a.constant(c), b.constant(c)) {
        (Some(x), Some(y)) => sigma[x] == y,
        _ => true,
    })
}
