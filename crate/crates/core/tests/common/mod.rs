//! Helpers shared by the integration tests: a brute-force model enumerator
//! used as an oracle against the search module, and cached model corpora.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Mutex, OnceLock};

use girale_core::algebra::canonical_key;
use girale_core::search::{enumerate_models, SearchSpec};
use girale_core::{check_profile, BinOp, ConstKind, Elem, FiniteAlgebra, Profile, Table, UnOp};

/// All `n`-ary tables over `size` elements, as flat cell vectors.
fn all_vectors(size: usize, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = size.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = code % size;
            code /= size;
        }
        v
    })
}

fn is_semilattice(n: usize, m: &[Elem]) -> bool {
    let g = |a: Elem, b: Elem| m[a * n + b];
    (0..n).all(|a| g(a, a) == a)
        && (0..n).all(|a| (0..n).all(|b| g(a, b) == g(b, a)))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g(g(a, b), c) == g(a, g(b, c)))))
}

fn with_tables(n: usize, tables: &[(BinOp, &[Elem])]) -> girale_core::algebra::AlgebraBuilder {
    let mut b = FiniteAlgebra::builder_sized("naive", n);
    for (op, cells) in tables {
        b = b.binary(*op, Table::new(n, cells.to_vec()));
    }
    b
}

fn meets(n: usize) -> Vec<Vec<Elem>> {
    all_vectors(n, n * n).filter(|m| is_semilattice(n, m)).collect()
}

fn lattices(n: usize) -> Vec<(Vec<Elem>, Vec<Elem>)> {
    let mut out = Vec::new();
    for m in meets(n) {
        for j in all_vectors(n, n * n) {
            // the builder rejects joins that disagree with the meet order
            let Ok(alg) = with_tables(n, &[(BinOp::Meet, &m), (BinOp::Join, &j)]).build() else { continue };
            if check_profile(&alg, Profile::PosetLattice).unwrap().is_pass() {
                out.push((m.clone(), j));
            }
        }
    }
    out
}

/// `max{c : a . c <= b}` for every pair, by scanning, if it always exists.
fn residual(n: usize, meet: &[Elem], mult: &[Elem]) -> Option<Vec<Elem>> {
    let le = |a: Elem, b: Elem| meet[a * n + b] == a;
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let ok: Vec<Elem> = (0..n).filter(|&c| le(mult[a * n + c], b)).collect();
            out.push(ok.iter().copied().find(|&c| ok.iter().all(|&d| le(d, c)))?);
        }
    }
    Some(out)
}

/// Canonical keys of every model of `profile` on `n` elements, found by
/// generating every table of the profile's signature and filtering with
/// `check_profile`. Implications of residuated profiles are computed by
/// scanning rather than enumerated, which keeps size 3 tractable.
pub fn naive_models(profile: Profile, n: usize) -> BTreeSet<Vec<u16>> {
    let mut keys = BTreeSet::new();
    let mut keep = |alg: FiniteAlgebra| {
        if check_profile(&alg, profile).unwrap().is_pass() {
            keys.insert(canonical_key(&alg));
        }
    };
    match profile {
        Profile::PosetLattice => {
            for (m, j) in lattices(n) {
                keep(with_tables(n, &[(BinOp::Meet, &m), (BinOp::Join, &j)]).build().unwrap());
            }
        }
        Profile::Gs | Profile::VL7 => {
            for m in meets(n) {
                for i in all_vectors(n, n * n) {
                    for one in 0..n {
                        keep(with_tables(n, &[(BinOp::Meet, &m), (BinOp::Imp, &i)])
                            .constant(ConstKind::One, one)
                            .build()
                            .unwrap());
                    }
                }
            }
        }
        Profile::Gl | Profile::Heyting => {
            for (m, j) in lattices(n) {
                for i in all_vectors(n, n * n) {
                    for one in 0..n {
                        keep(with_tables(n, &[(BinOp::Meet, &m), (BinOp::Join, &j), (BinOp::Imp, &i)])
                            .constant(ConstKind::One, one)
                            .build()
                            .unwrap());
                    }
                }
            }
        }
        Profile::Lr => {
            let negs: Vec<Vec<Elem>> = all_vectors(n, n).collect();
            for (m, j) in lattices(n) {
                for i in all_vectors(n, n * n) {
                    for neg in &negs {
                        keep(with_tables(n, &[(BinOp::Meet, &m), (BinOp::Join, &j), (BinOp::Imp, &i)])
                            .unary(UnOp::Neg, neg.clone())
                            .build()
                            .unwrap());
                    }
                }
            }
        }
        _ => {
            let bounded = matches!(profile, Profile::BoundedGirard | Profile::BoundedGirale);
            for (m, j) in lattices(n) {
                for x in all_vectors(n, n * n) {
                    let Some(i) = residual(n, &m, &x) else { continue };
                    for one in 0..n {
                        let crl = with_tables(
                            n,
                            &[(BinOp::Meet, &m), (BinOp::Join, &j), (BinOp::Mult, &x), (BinOp::Imp, &i)],
                        )
                        .constant(ConstKind::One, one);
                        if profile == Profile::Crl {
                            keep(crl.build().unwrap());
                            continue;
                        }
                        for zero in 0..n {
                            let neg: Vec<Elem> = (0..n).map(|a| i[a * n + zero]).collect();
                            let girard = crl.clone().constant(ConstKind::Zero, zero).unary(UnOp::Neg, neg.clone());
                            let tops: Vec<Option<Elem>> = if bounded { (0..n).map(Some).collect() } else { vec![None] };
                            for top in tops {
                                let mut b = girard.clone();
                                if let Some(t) = top {
                                    b = b.constant(ConstKind::Top, t).constant(ConstKind::Bot, neg[t]);
                                }
                                if matches!(profile, Profile::Girale | Profile::BoundedGirale) {
                                    // staged filter: a girale's bang-free reduct is Girard
                                    let base = if bounded { Profile::BoundedGirard } else { Profile::Girard };
                                    if !check_profile(&b.clone().build().unwrap(), base).unwrap().is_pass() {
                                        continue;
                                    }
                                    for bang in all_vectors(n, n) {
                                        keep(b.clone().unary(UnOp::Bang, bang).build().unwrap());
                                    }
                                } else {
                                    keep(b.build().unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    keys
}

type CorpusCache = Mutex<BTreeMap<(Profile, usize), &'static [FiniteAlgebra]>>;

/// Every model of `profile` of size at most `max`, computed once per test
/// binary.
pub fn corpus(profile: Profile, max: usize) -> &'static [FiniteAlgebra] {
    static CACHE: OnceLock<CorpusCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    guard.entry((profile, max)).or_insert_with(|| {
        let r = enumerate_models(&SearchSpec::up_to(profile, max)).unwrap();
        Box::leak(r.models.into_boxed_slice())
    })
}

/// The three-element Goedel chain `0 < m < 1` as a girale with `! = id`
/// below 1 and `0` as its own zero.
pub fn godel3() -> FiniteAlgebra {
    FiniteAlgebra::builder("C3", vec!["f".into(), "m".into(), "t".into()])
        .binary(BinOp::Meet, Table::from_fn(3, |a, b| a.min(b)))
        .binary(BinOp::Join, Table::from_fn(3, |a, b| a.max(b)))
        .binary(BinOp::Mult, Table::from_fn(3, |a, b| a.min(b)))
        .unary(UnOp::Bang, vec![0, 1, 2])
        .constant(ConstKind::One, 2)
        .build()
        .unwrap()
        .with_derived()
}

/// Random formulas over `p, q, r` of depth at most `depth`. `!` and `?`
/// appear only with `with_bang`, `T` and `F` only with `with_bounds`.
pub fn formula_strategy(
    depth: u32,
    with_bang: bool,
    with_bounds: bool,
) -> proptest::strategy::BoxedStrategy<girale_core::syntax::Formula> {
    use girale_core::syntax::{Constant, Formula};
    use proptest::prelude::*;
    let leaf = prop_oneof![
        prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::var),
        prop::sample::select(if with_bounds {
            vec![Constant::One, Constant::Zero, Constant::Top, Constant::Bot]
        } else {
            vec![Constant::One, Constant::Zero]
        })
        .prop_map(Formula::Const),
    ];
    leaf.prop_recursive(depth, 64, 2, move |inner| {
        let bin = (inner.clone(), inner.clone(), 0..6u8).prop_map(|(a, b, k)| match k {
            0 => Formula::mult(a, b),
            1 => Formula::par(a, b),
            2 => Formula::imp(a, b),
            3 => Formula::meet(a, b),
            4 => Formula::join(a, b),
            _ => Formula::imp(b, a),
        });
        let un = (inner, 0..3u8).prop_map(move |(a, k)| match k {
            0 => Formula::neg(a),
            1 if with_bang => Formula::bang(a),
            2 if with_bang => Formula::quest(a),
            _ => Formula::neg(a),
        });
        prop_oneof![bin, un]
    })
    .boxed()
}

/// `count` formulas drawn deterministically from `formula_strategy`.
pub fn sample_formulas(count: usize, depth: u32, with_bang: bool, with_bounds: bool) -> Vec<girale_core::syntax::Formula> {
    use proptest::strategy::{Strategy, ValueTree};
    use proptest::test_runner::TestRunner;
    let strat = formula_strategy(depth, with_bang, with_bounds);
    let mut runner = TestRunner::deterministic();
    (0..count).map(|_| strat.new_tree(&mut runner).unwrap().current()).collect()
}
