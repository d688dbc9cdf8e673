mod common;

use std::collections::BTreeSet;

use girale_core::algebra::canonical_key;
use girale_core::algebra::format::print_algebra;
use girale_core::constructions::gen_gn;
use girale_core::search::{enumerate_models, find_countermodel, models_of_size, SearchError, SearchSpec};
use girale_core::syntax::{satisfies, Goal};
use girale_core::{check_profile, BinOp, FiniteAlgebra, Profile};

fn agree(profile: Profile) {
    for n in 1..=3 {
        let fast: BTreeSet<Vec<u16>> = models_of_size(profile, n, None).unwrap().iter().map(canonical_key).collect();
        let slow = common::naive_models(profile, n);
        assert_eq!(fast, slow, "{profile} size {n}: {} vs {}", fast.len(), slow.len());
    }
}

#[test]
fn oracle_poset_lattice() {
    agree(Profile::PosetLattice);
}

#[test]
fn oracle_gs() {
    agree(Profile::Gs);
}

#[test]
fn oracle_gl() {
    agree(Profile::Gl);
}

#[test]
fn oracle_vl7() {
    agree(Profile::VL7);
}

#[test]
fn oracle_crl() {
    agree(Profile::Crl);
}

#[test]
fn oracle_girard() {
    agree(Profile::Girard);
}

#[test]
fn oracle_bounded_girard() {
    agree(Profile::BoundedGirard);
}

#[test]
fn oracle_girale() {
    agree(Profile::Girale);
}

#[test]
fn oracle_bounded_girale() {
    agree(Profile::BoundedGirale);
}

#[test]
fn oracle_lr() {
    agree(Profile::Lr);
}

#[test]
fn oracle_heyting() {
    agree(Profile::Heyting);
}

#[test]
fn crl_sizes_one_and_two() {
    assert_eq!(enumerate_models(&SearchSpec::exactly(Profile::Crl, 1)).unwrap().count(), 1);
    let two = enumerate_models(&SearchSpec::exactly(Profile::Crl, 2)).unwrap();
    assert_eq!(two.count(), common::naive_models(Profile::Crl, 2).len());
}

#[test]
fn emitted_models_pass_their_profile() {
    for p in Profile::ALL {
        for m in common::corpus(p, 4) {
            assert!(check_profile(m, p).unwrap().is_pass(), "{p}: {}", m.name());
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let render = || {
        let r = enumerate_models(&SearchSpec::up_to(Profile::Girale, 4)).unwrap();
        r.models.iter().map(print_algebra).collect::<String>()
    };
    assert_eq!(render(), render());
}

#[test]
fn residuation_quasiequations_have_no_small_countermodel() {
    for goal in ["x /\\ y = x => (x -> y) /\\ 1 = 1", "(x -> y) /\\ 1 = 1 => x /\\ y = x"] {
        let spec = SearchSpec::up_to(Profile::VL7, 4).with_goal(Goal::parse(goal).unwrap());
        let r = find_countermodel(&spec).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.counterexample, None, "{goal}");
    }
}

#[test]
fn gs_residuation_search_replays() {
    let goal = Goal::parse("(x -> y) /\\ 1 = 1 => x /\\ y = x").unwrap();
    let r = find_countermodel(&SearchSpec::up_to(Profile::Gs, 5).with_goal(goal.clone())).unwrap();
    let stop = r.counterexample.as_ref().map_or(r.models.len(), |c| c.index);
    for m in &r.models[..stop] {
        assert!(satisfies(m, &goal).unwrap(), "{}", m.name());
    }
    if let Some(m) = r.counterexample_model() {
        assert!(!satisfies(m, &goal).unwrap());
    } else {
        assert!(r.exhausted);
    }
}

#[test]
fn frozen_lattice_restricts_the_search() {
    let g2 = gen_gn(2, true);
    let frozen = FiniteAlgebra::builder("frozen", g2.labels().to_vec())
        .binary(BinOp::Meet, g2.table(BinOp::Meet).unwrap().clone())
        .binary(BinOp::Mult, g2.table(BinOp::Mult).unwrap().clone())
        .build()
        .unwrap();
    let r = enumerate_models(&SearchSpec::exactly(Profile::BoundedGirale, 4).with_frozen(frozen)).unwrap();
    assert_eq!(r.count(), 1);
    assert_eq!(canonical_key(&r.models[0]), canonical_key(&g2));
    let bad = FiniteAlgebra::builder_sized("nomeet", 4)
        .binary(BinOp::Mult, g2.table(BinOp::Mult).unwrap().clone())
        .build()
        .unwrap();
    assert!(matches!(
        enumerate_models(&SearchSpec::exactly(Profile::Crl, 4).with_frozen(bad)),
        Err(SearchError::Frozen(_))
    ));
}

#[test]
fn size_limits() {
    assert!(matches!(
        enumerate_models(&SearchSpec::up_to(Profile::Gs, 6)),
        Err(SearchError::SizeLimit { .. })
    ));
    assert!(matches!(
        enumerate_models(&SearchSpec::up_to(Profile::Girale, 7)),
        Err(SearchError::SizeLimit { .. })
    ));
}

/// Size-4 GS and V-L7 models from a second oracle: every meet-semilattice
/// order up to isomorphism, every unit, row 1 the identity (L1), every
/// other row a meet-preserving map (L3), then a full profile check.
fn row_oracle(profile: Profile, n: usize) -> BTreeSet<Vec<u16>> {
    use girale_core::{ConstKind, Table};
    let mut shapes: Vec<(Vec<u16>, Table)> = Vec::new();
    for bits in 0u32..(1 << (n * n - n)) {
        let mut le = vec![false; n * n];
        let mut k = 0;
        for a in 0..n {
            for b in 0..n {
                le[a * n + b] = a == b || {
                    k += 1;
                    bits >> (k - 1) & 1 == 1
                };
            }
        }
        let l = |a: usize, b: usize| le[a * n + b];
        let poset = (0..n).all(|a| (0..n).all(|b| a == b || !(l(a, b) && l(b, a))))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(l(a, b) && l(b, c)) || l(a, c))));
        if !poset {
            continue;
        }
        let glb = |a: usize, b: usize| {
            let lower: Vec<usize> = (0..n).filter(|&c| l(c, a) && l(c, b)).collect();
            lower.iter().copied().find(|&m| lower.iter().all(|&c| l(c, m)))
        };
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(glb(a, b));
            }
        }
        let Some(cells) = cells.into_iter().collect::<Option<Vec<_>>>() else { continue };
        let meet = Table::new(n, cells);
        let alg = FiniteAlgebra::builder_sized("s", n).binary(BinOp::Meet, meet.clone()).build().unwrap();
        let key = canonical_key(&alg);
        if !shapes.iter().any(|(k, _)| *k == key) {
            shapes.push((key, meet));
        }
    }
    let mut keys = BTreeSet::new();
    for (_, meet) in &shapes {
        let maps: Vec<Vec<usize>> = (0..n.pow(n as u32))
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let d = c % n;
                        c /= n;
                        d
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|f| (0..n).all(|a| (0..n).all(|b| f[meet.get(a, b)] == meet.get(f[a], f[b]))))
            .collect();
        for one in 0..n {
            let others: Vec<usize> = (0..n).filter(|&a| a != one).collect();
            let mut idx = vec![0; others.len()];
            'rows: loop {
                let mut rows = vec![Vec::new(); n];
                rows[one] = (0..n).collect();
                for (k, &a) in others.iter().enumerate() {
                    rows[a] = maps[idx[k]].clone();
                }
                let imp = Table::from_rows(&rows);
                let alg = FiniteAlgebra::builder_sized("o", n)
                    .binary(BinOp::Meet, meet.clone())
                    .binary(BinOp::Imp, imp)
                    .constant(ConstKind::One, one)
                    .build()
                    .unwrap();
                if check_profile(&alg, profile).unwrap().is_pass() {
                    keys.insert(canonical_key(&alg));
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        break 'rows;
                    }
                    idx[k] += 1;
                    if idx[k] < maps.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
    keys
}

#[test]
fn gs_and_vl7_size_four_match_row_oracle() {
    for p in [Profile::Gs, Profile::VL7] {
        let fast: BTreeSet<Vec<u16>> = models_of_size(p, 4, None).unwrap().iter().map(canonical_key).collect();
        assert_eq!(fast, row_oracle(p, 4), "{p}");
    }
}
