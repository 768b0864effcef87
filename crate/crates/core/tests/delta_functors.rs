use cohomology_core::abgroups::{FgAbelianGroup, PreimagePolicy};
use cohomology_core::delta_functors::*;
use cohomology_core::group_cohomology::{FiniteGroup, GModule, GMorphism, ModuleSes};
use cohomology_core::intlinalg::IntMatrix;

fn mult_ses(g: &FiniteGroup, m: i64, c: u64) -> ModuleSes {
    // 0 → Z --m--> Z → Z/m → 0 (or Z/c target), trivial action
    let a = GModule::trivial(g, FgAbelianGroup::free(1));
    let q = GModule::trivial(g, FgAbelianGroup::cyclic(c));
    let i = GMorphism::new(&a, &a, IntMatrix::from_i64_rows(&[vec![m]], 1)).unwrap();
    let p = GMorphism::new(&a, &q, IntMatrix::identity(1)).unwrap();
    ModuleSes::new(i, p).unwrap()
}

fn z3_victim_corpus() -> (ModuleSes, DeltaCorpus) {
    let g = FiniteGroup::cyclic(3);
    let top = mult_ses(&g, 3, 3);
    let a = GModule::trivial(&g, FgAbelianGroup::cyclic(3));
    let b = GModule::trivial(&g, FgAbelianGroup::cyclic(9));
    let bottom = ModuleSes::new(
        GMorphism::new(&a, &b, IntMatrix::from_i64_rows(&[vec![3]], 1)).unwrap(),
        GMorphism::new(&b, &a, IntMatrix::identity(1)).unwrap(),
    )
    .unwrap();
    let m = SesMorphism::new(
        top.clone(),
        bottom.clone(),
        GMorphism::new(top.a(), &a, IntMatrix::identity(1)).unwrap(),
        GMorphism::new(top.b(), &b, IntMatrix::identity(1)).unwrap(),
        GMorphism::identity(&a),
    )
    .unwrap();
    let corpus = DeltaCorpus {
        sequences: vec![("Z-3-Z".into(), top.clone()), ("Z3-Z9".into(), bottom)],
        morphisms: vec![("reduce".into(), m)],
    };
    (top, corpus)
}

#[test]
fn bar_and_sm_pass_on_small_corpus() {
    let (_, corpus) = z3_victim_corpus();
    for report in [
        verify_delta_functor(&BarFunctor, &corpus, 2, PreimagePolicy::Canonical),
        verify_delta_functor(&SmFunctor, &corpus, 2, PreimagePolicy::Canonical),
    ] {
        assert!(report.all_pass(), "{report}");
    }
}

#[test]
fn sign_flip_is_caught_by_naturality() {
    let (victim, corpus) = z3_victim_corpus();
    let bad = CorruptedFunctor {
        inner: BarFunctor,
        victim,
        degree: 1,
        corruption: Corruption::SignFlip,
    };
    let report = verify_delta_functor(&bad, &corpus, 2, PreimagePolicy::Canonical);
    let fails: Vec<_> = report.failures().collect();
    assert!(
        fails
            .iter()
            .any(|c| c.kind == CheckKind::ConnectingNaturality { degree: 1 }),
        "{report}"
    );
}

#[test]
fn bar_to_sm_comparison_is_an_isomorphism() {
    let g = FiniteGroup::cyclic(2);
    let sign = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
    let phi =
        comparison_morphism(&BarFunctor, &SmFunctor, &sign, 3, PreimagePolicy::Canonical).unwrap();
    for n in 0..=3 {
        assert!(phi.is_isomorphism(n), "degree {n}");
    }
    let back =
        comparison_morphism(&SmFunctor, &BarFunctor, &sign, 3, PreimagePolicy::Canonical).unwrap();
    assert!(is_identity(&phi.then(&back).unwrap()));
}

#[test]
fn comparison_ignores_preimage_choice() {
    let g = FiniteGroup::cyclic(3);
    let a = GModule::trivial(&g, FgAbelianGroup::free(1));
    let c = comparison_morphism(&BarFunctor, &SmFunctor, &a, 3, PreimagePolicy::Canonical).unwrap();
    let r = comparison_morphism(
        &BarFunctor,
        &SmFunctor,
        &a,
        3,
        PreimagePolicy::Randomized { seed: 9 },
    )
    .unwrap();
    for n in 0..=3 {
        assert!(c.degree(n).equals(r.degree(n)));
    }
}

#[test]
fn comparison_over_order_four_groups() {
    for g in [FiniteGroup::cyclic(4), FiniteGroup::klein()] {
        let sign = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1, 1, -1]).unwrap();
        let phi = comparison_morphism(&BarFunctor, &SmFunctor, &sign, 3, PreimagePolicy::Canonical)
            .unwrap();
        for n in 0..=3 {
            assert!(phi.is_isomorphism(n), "degree {n}");
        }
    }
}

#[test]
fn soft_target_gives_zero_maps() {
    let g = FiniteGroup::cyclic(2);
    let e = cohomology_core::soft_resolution::soft_module_of(&GModule::trivial(
        &g,
        FgAbelianGroup::free(1),
    ))
    .unwrap();
    let phi =
        comparison_morphism(&BarFunctor, &SmFunctor, &e, 2, PreimagePolicy::Canonical).unwrap();
    for n in 1..=2 {
        assert_eq!(phi.degree(n).source().rank(), 0);
        assert_eq!(phi.degree(n).target().rank(), 0);
    }
}

#[test]
fn comparison_commutes_with_connecting_maps() {
    let g = FiniteGroup::cyclic(2);
    let ses = mult_ses(&g, 2, 2);
    let pa = comparison_morphism(
        &BarFunctor,
        &SmFunctor,
        ses.a(),
        3,
        PreimagePolicy::Canonical,
    )
    .unwrap();
    let pc = comparison_morphism(
        &BarFunctor,
        &SmFunctor,
        ses.c(),
        3,
        PreimagePolicy::Canonical,
    )
    .unwrap();
    let pb = comparison_morphism(
        &BarFunctor,
        &SmFunctor,
        ses.b(),
        3,
        PreimagePolicy::Canonical,
    )
    .unwrap();
    for n in 0..3 {
        assert_eq!(
            connecting_witness(
                &BarFunctor,
                &SmFunctor,
                &pa,
                &pc,
                &ses,
                n,
                PreimagePolicy::Canonical
            )
            .unwrap(),
            None
        );
    }
    for n in 0..=3 {
        assert_eq!(
            naturality_witness(&BarFunctor, &SmFunctor, &pa, &pb, &ses.inclusion, n).unwrap(),
            None
        );
        assert_eq!(
            naturality_witness(&BarFunctor, &SmFunctor, &pb, &pc, &ses.projection, n).unwrap(),
            None
        );
    }
}

#[test]
fn single_entry_corruption_is_detected() {
    let (victim, corpus) = z3_victim_corpus();
    let bad = CorruptedFunctor {
        inner: SmFunctor,
        victim,
        degree: 1,
        corruption: Corruption::Entry {
            row: 0,
            col: 0,
            delta: 1,
        },
    };
    assert!(!verify_delta_functor(&bad, &corpus, 2, PreimagePolicy::Canonical).all_pass());
}

#[test]
fn q_f_squares_and_delta_compatibility() {
    let g = FiniteGroup::cyclic(2);
    let a = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
    let b = GModule::trivial(&g, FgAbelianGroup::cyclic(4));
    let ses = ModuleSes::new(
        GMorphism::new(&a, &b, IntMatrix::from_i64_rows(&[vec![2]], 1)).unwrap(),
        GMorphism::new(&b, &a, IntMatrix::identity(1)).unwrap(),
    )
    .unwrap();
    let q = q_f_construction(&ses).unwrap();
    assert!(q
        .sequence
        .inclusion
        .then(&q.sequence.projection)
        .unwrap()
        .as_ab()
        .is_zero());
    let corpus = DeltaCorpus {
        sequences: vec![("qf".into(), q.sequence.clone())],
        morphisms: vec![
            ("shift".into(), q.from_shift.clone()),
            ("ses".into(), q.from_ses.clone()),
        ],
    };
    assert!(verify_delta_functor(&BarFunctor, &corpus, 2, PreimagePolicy::Canonical).all_pass());
}
