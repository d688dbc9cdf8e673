mod common;

use girale_core::algebra::format::print_algebra;
use girale_core::algebra::{is_isomorphic, order_from_meet};
use girale_core::constructions::{
    bang_image, boolean_girale_check, conservativity_check, frame_completion, gen_gn, heyt, heyt_con_iso,
    induce_modality, phase_completion, rc_heyting_subsets, repair_search, ConstructionError, RepairCells, FRAME_CAP,
    PHASE_CAP,
};
use girale_core::{check_profile, BinOp, ConstKind, Elem, ElemSet, FiniteAlgebra, Profile, Table, UnOp};

const REPAIR_GOLDEN: &str = include_str!("../fixtures/g3_repair_row_a3.golden");

#[test]
fn repair_search_matches_golden() {
    let found = repair_search(3, &RepairCells::mult_row(3, 2)).unwrap();
    assert_eq!(found.len(), 2);
    assert_eq!(found.iter().map(print_algebra).collect::<String>(), REPAIR_GOLDEN);
}

/// Brute force over the row of `a3` in `G_3`: every assignment, residual by
/// scanning, dedup by isomorphism search.
#[test]
fn repair_search_matches_brute_force() {
    let base = gen_gn(3, true);
    let n = base.size();
    let a = 2;
    let mut kept: Vec<FiniteAlgebra> = Vec::new();
    for code in 0..n.pow(n as u32) {
        let mut row = vec![0; n];
        let mut c = code;
        for v in row.iter_mut() {
            *v = c % n;
            c /= n;
        }
        let mut cells = base.table(BinOp::Mult).unwrap().cells().to_vec();
        for x in 0..n {
            cells[a * n + x] = row[x];
            cells[x * n + a] = row[x];
        }
        let mult = Table::new(n, cells);
        let mut imp = Vec::with_capacity(n * n);
        let mut ok = true;
        for x in 0..n {
            for y in 0..n {
                let below: Vec<Elem> = (0..n).filter(|&z| base.leq(mult.get(x, z), y)).collect();
                match below.iter().copied().find(|&m| below.iter().all(|&z| base.leq(z, m))) {
                    Some(m) => imp.push(m),
                    None => ok = false,
                }
            }
        }
        if !ok {
            continue;
        }
        let cand = base
            .to_builder()
            .binary(BinOp::Mult, mult)
            .binary(BinOp::Imp, Table::new(n, imp))
            .build()
            .unwrap();
        if check_profile(&cand, Profile::BoundedGirale).unwrap().is_pass()
            && !kept.iter().any(|k| is_isomorphic(k, &cand).unwrap().is_some())
        {
            kept.push(cand);
        }
    }
    let found = repair_search(3, &RepairCells::mult_row(3, a)).unwrap();
    assert_eq!(kept.len(), found.len());
    for k in &kept {
        assert!(found.iter().any(|f| is_isomorphic(k, f).unwrap().is_some()));
    }
}

#[test]
fn repair_search_budget() {
    let all = RepairCells {
        mult: (0..6).flat_map(|a| (a..6).map(move |b| (a, b))).collect(),
        neg: vec![],
    };
    assert!(matches!(repair_search(4, &all), Err(ConstructionError::SizeLimit { .. })));
}

#[test]
fn phase_completion_on_girard_algebras() {
    for alg in common::corpus(Profile::Girard, 5) {
        let pc = phase_completion(alg, PHASE_CAP).unwrap();
        assert!(pc.report.is_pass(), "{}", pc.report.render(Some(alg)));
        // closed sets are exactly the principal down-sets
        let order = order_from_meet(alg).unwrap();
        let mut downs: Vec<ElemSet> = alg.elements().map(|a| order.down_set(a)).collect();
        downs.sort();
        assert_eq!(pc.closed, downs, "{}", alg.name());
        assert!(check_profile(&pc.algebra, Profile::BoundedGirard).unwrap().is_pass());
        for a in alg.elements() {
            for b in alg.elements() {
                let e = &pc.embedding;
                assert_eq!(e[alg.mult(a, b)], pc.algebra.mult(e[a], e[b]));
                assert_eq!(e[alg.imp(a, b)], pc.algebra.imp(e[a], e[b]));
                assert_eq!(e[alg.join(a, b)], pc.algebra.join(e[a], e[b]));
            }
            assert_eq!(pc.embedding[alg.neg(a)], pc.algebra.neg(pc.embedding[a]));
        }
    }
}

#[test]
fn conservativity_on_girard_algebras() {
    for alg in common::corpus(Profile::Girard, 4) {
        let r = conservativity_check(alg, PHASE_CAP).unwrap();
        assert!(r.is_pass(), "{}: {}", alg.name(), r.render(Some(alg)));
    }
}

#[test]
fn frame_completion_on_small_algebras() {
    for alg in common::corpus(Profile::VL7, 3) {
        let fc = frame_completion(alg, FRAME_CAP).unwrap();
        assert!(fc.report.is_pass(), "{}: {}", alg.name(), fc.report.render(Some(alg)));
        let d = &fc.algebra;
        assert!(check_profile(d, Profile::Crl).unwrap().is_pass(), "{}", alg.name());
        // the embedding sends a to the family of points containing a
        for a in alg.elements() {
            let want: u64 = fc
                .points
                .iter()
                .enumerate()
                .filter(|(_, p)| p.contains(a))
                .map(|(i, _)| 1u64 << i)
                .sum();
            assert_eq!(fc.families[fc.embedding[a]], want);
        }
        // monoid and adjunction, checked directly on D(A)
        let one = d.constant(ConstKind::One).unwrap();
        for x in d.elements() {
            assert_eq!(d.mult(x, one), x);
            for y in d.elements() {
                assert_eq!(d.mult(x, y), d.mult(y, x));
                for z in d.elements() {
                    assert_eq!(d.mult(d.mult(x, y), z), d.mult(x, d.mult(y, z)));
                    assert_eq!(d.leq(d.mult(x, y), z), d.leq(x, d.imp(y, z)));
                }
            }
        }
        for a in alg.elements() {
            for b in alg.elements() {
                let e = &fc.embedding;
                assert_eq!(e[alg.meet(a, b)], d.meet(e[a], e[b]));
                assert_eq!(e[alg.imp(a, b)], d.imp(e[a], e[b]));
            }
        }
    }
}

#[test]
fn frame_completion_rejects_large_and_non_l7() {
    let big = common::corpus(Profile::VL7, 5).iter().find(|a| a.size() == 5).unwrap();
    assert!(matches!(frame_completion(big, FRAME_CAP), Err(ConstructionError::SizeLimit { .. })));
    let g3 = gen_gn(3, false);
    assert!(frame_completion(&g3, 6).is_err());
}

#[test]
fn heyt_is_a_heyting_algebra() {
    for alg in common::corpus(Profile::Girale, 5) {
        let h = heyt(alg).unwrap();
        let b = &h.algebra;
        assert!(check_profile(b, Profile::Heyting).unwrap().is_pass(), "{}", alg.name());
        assert_eq!(ElemSet::from_iter(h.carrier.iter().copied()), bang_image(alg).unwrap());
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(b.meet(x, y), b.mult(x, y));
                for z in b.elements() {
                    assert_eq!(b.leq(b.meet(x, y), z), b.leq(x, b.imp(y, z)));
                    assert!(b.meet(x, b.join(y, z)) == b.join(b.meet(x, y), b.meet(x, z)));
                }
            }
        }
        let r = heyt_con_iso(alg).unwrap();
        assert!(r.is_pass(), "{}: {}", alg.name(), r.render(Some(alg)));
    }
}

#[test]
fn g_n_heyt_is_boolean() {
    // G_3 and up fail associativity even with the amended negation
    for n in 1..=2 {
        let g = gen_gn(n, true);
        assert!(boolean_girale_check(&g).unwrap(), "G{n}");
        assert_eq!(heyt(&g).unwrap().algebra.size(), 2);
    }
    assert!(boolean_girale_check(&common::godel3()).is_ok());
    assert!(!boolean_girale_check(&common::godel3()).unwrap());
}

#[test]
fn induced_modality_recovers_bang() {
    for alg in common::corpus(Profile::Girale, 5) {
        let h = bang_image(alg).unwrap();
        assert_eq!(induce_modality(alg, h).unwrap(), *alg, "{}", alg.name());
        assert!(rc_heyting_subsets(alg).unwrap().contains(&h));
    }
}

#[test]
fn every_heyting_subset_induces_a_girale() {
    for alg in common::corpus(Profile::Girard, 5) {
        for h in rc_heyting_subsets(alg).unwrap() {
            let g = induce_modality(alg, h).unwrap();
            assert!(check_profile(&g, Profile::Girale).unwrap().is_pass(), "{} {h:?}", alg.name());
            let image: ElemSet = g.unary(UnOp::Bang).unwrap().iter().copied().collect();
            assert_eq!(image, h);
        }
    }
}

#[test]
fn invalid_heyting_subsets_are_named() {
    let g = gen_gn(2, true).to_builder().without_unary(UnOp::Bang).build().unwrap();
    let top_only: ElemSet = [3].into_iter().collect();
    assert!(matches!(induce_modality(&g, top_only), Err(ConstructionError::InvalidH(_))));
    let no_one: ElemSet = [0].into_iter().collect();
    assert!(matches!(induce_modality(&g, no_one), Err(ConstructionError::InvalidH(_))));
}
