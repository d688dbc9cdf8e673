//! The frame completion `D(A)` of an algebra satisfying L1-L7.
//!
//! Points are the semilattice filters of `A` (nonempty, up-closed,
//! meet-closed). Elements of `D(A)` are hereditary (up-closed under
//! inclusion) families of points, with intersection and union as lattice
//! operations and product and implication defined through the ternary
//! relation `R(F, G, H)`: `a in F` and `a -> b in G` imply `b in H`.

use crate::algebra::{check_profile, BinOp, CheckReport, ConstKind, Elem, ElemSet, FiniteAlgebra, Profile, Table};

use super::{require_pass, ConstructionError};

/// Default bound on `|A|`.
pub const FRAME_CAP: usize = 4;

/// Families of points are bitmasks over the point list.
type Family = u64;

#[derive(Debug, Clone)]
pub struct FrameCompletion {
    /// The semilattice filters of `A`, sorted by bitmask.
    pub points: Vec<ElemSet>,
    /// The hereditary families, sorted by bitmask; element `i` of `algebra`
    /// is `families[i]`.
    pub families: Vec<Family>,
    pub algebra: FiniteAlgebra,
    /// `embedding[a]` is the element `{F : a in F}`.
    pub embedding: Vec<Elem>,
    /// Outcome of the injectivity and homomorphism checks for meet, `->`
    /// and 1.
    pub report: CheckReport,
    /// Whether the embedding also preserves joins. This is reported, not
    /// required: it fails for instance on the four-element Boolean lattice.
    pub join_preserved: Option<bool>,
}

fn semilattice_filters(alg: &FiniteAlgebra) -> Vec<ElemSet> {
    let n = alg.size();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let s = ElemSet::from_mask(mask);
        let up = s.iter().all(|a| alg.elements().all(|b| !alg.leq(a, b) || s.contains(b)));
        let meets = s.iter().all(|a| s.iter().all(|b| s.contains(alg.meet(a, b))));
        if up && meets {
            out.push(s);
        }
    }
    out
}

/// Builds `D(A)` and checks that it is a commutative residuated lattice
/// into which `a -> {F : a in F}` embeds `A`.
pub fn frame_completion(alg: &FiniteAlgebra, cap: usize) -> Result<FrameCompletion, ConstructionError> {
    if alg.size() > cap {
        return Err(ConstructionError::SizeLimit { size: alg.size(), cap });
    }
    require_pass("V-L7", check_profile(alg, Profile::VL7)?, alg)?;
    let one = alg.require(ConstKind::One)?;
    let points = semilattice_filters(alg);
    let p = points.len();
    if p > 20 {
        return Err(ConstructionError::SizeLimit { size: p, cap: 20 });
    }
    // rel[f][g] = the set of H with R(F, G, H)
    let rel: Vec<Vec<Family>> = (0..p)
        .map(|f| {
            (0..p)
                .map(|g| {
                    let mut hs = 0;
                    for (h, hset) in points.iter().enumerate() {
                        let ok = points[f].iter().all(|a| {
                            alg.elements()
                                .all(|b| !points[g].contains(alg.imp(a, b)) || hset.contains(b))
                        });
                        if ok {
                            hs |= 1 << h;
                        }
                    }
                    hs
                })
                .collect()
        })
        .collect();
    let hereditary = |x: Family| {
        (0..p).all(|f| x >> f & 1 == 0 || (0..p).all(|g| !points[f].is_subset(points[g]) || x >> g & 1 == 1))
    };
    let families: Vec<Family> = (0..(1u64 << p)).filter(|&x| hereditary(x)).collect();
    let m = families.len();
    let index = |x: Family| families.binary_search(&x).ok();
    let bits = |x: Family| (0..p).filter(move |&i| x >> i & 1 == 1);
    let compose = |x: Family, y: Family| {
        let mut out = 0;
        for f in bits(y) {
            for g in bits(x) {
                out |= rel[f][g];
            }
        }
        out
    };
    let arrow = |x: Family, y: Family| {
        let mut out = 0;
        for h in 0..p {
            if bits(x).all(|f| rel[f][h] & !y == 0) {
                out |= 1 << h;
            }
        }
        out
    };
    let table = |op: &dyn Fn(Family, Family) -> Family, what: &str| -> Result<Table, ConstructionError> {
        let mut cells = Vec::with_capacity(m * m);
        for &x in &families {
            for &y in &families {
                let z = op(x, y);
                cells.push(index(z).ok_or_else(|| {
                    ConstructionError::ProfileFail(format!("{what} of two hereditary families is not hereditary"))
                })?);
            }
        }
        Ok(Table::new(m, cells))
    };
    let meet = table(&|x, y| x & y, "intersection")?;
    let join = table(&|x, y| x | y, "union")?;
    let mult = table(&compose, "product")?;
    let imp = table(&arrow, "implication")?;
    let h = |a: Elem| -> Family { (0..p).filter(|&i| points[i].contains(a)).fold(0, |acc, i| acc | 1 << i) };
    let unit = index(h(one)).expect("{F : 1 in F} is hereditary");
    let labels = (0..m).map(|i| format!("X{i}")).collect();
    let algebra = FiniteAlgebra::builder(format!("D-{}", alg.name()), labels)
        .binary(BinOp::Meet, meet)
        .binary(BinOp::Join, join)
        .binary(BinOp::Mult, mult)
        .binary(BinOp::Imp, imp)
        .constant(ConstKind::One, unit)
        .constant(ConstKind::Top, m - 1)
        .constant(ConstKind::Bot, 0)
        .build()?;
    require_pass("CRL", check_profile(&algebra, Profile::Crl)?, &algebra)?;

    let embedding: Vec<Elem> = alg.elements().map(|a| index(h(a)).expect("principal families are hereditary")).collect();
    let mut report = CheckReport::pass();
    for a in alg.elements() {
        for b in 0..a {
            if embedding[a] == embedding[b] {
                report.push("injective", vec![b, a], None);
            }
        }
    }
    if embedding[one] != unit {
        report.push("unit", vec![one], None);
    }
    for a in alg.elements() {
        for b in alg.elements() {
            if embedding[alg.meet(a, b)] != algebra.meet(embedding[a], embedding[b]) {
                report.push("meet", vec![a, b], None);
            }
            if embedding[alg.imp(a, b)] != algebra.imp(embedding[a], embedding[b]) {
                report.push("imp", vec![a, b], None);
            }
        }
    }
    let join_preserved = alg.binary(BinOp::Join).map(|_| {
        alg.elements()
            .all(|a| alg.elements().all(|b| embedding[alg.join(a, b)] == algebra.join(embedding[a], embedding[b])))
    });
    Ok(FrameCompletion {
        points,
        families,
        algebra,
        embedding,
        report,
        join_preserved,
    })
}
