use cohomology_core::abgroups::{FgAbelianGroup, PreimagePolicy};
use cohomology_core::crossed_modules::{
    class_equal, reconstruct_from_3cocycle, roundtrip, three_cocycle_of, CrossedModule,
    FourTermData,
};
use cohomology_core::group_cohomology::{
    cohomology, group_differential, is_cocycle, tuple_count, Cochain, FiniteGroup, GModule,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn z2() -> GModule {
    GModule::trivial(&FiniteGroup::cyclic(2), FgAbelianGroup::cyclic(2))
}

fn all_3_cocycles_z2() -> Vec<Cochain> {
    let m = z2();
    let len = tuple_count(2, 3);
    (0u32..1 << len)
        .map(|bits| {
            Cochain::new(
                &m,
                3,
                (0..len).map(|i| BigInt::from((bits >> i) & 1)).collect(),
            )
            .unwrap()
        })
        .filter(|c| is_cocycle(&m, c).unwrap())
        .collect()
}

#[test]
fn both_classes_of_h3_z2_are_hit() {
    let m = z2();
    let trivial = CrossedModule::trivial(&m).unwrap();
    let doubling = CrossedModule::z4_doubling();
    let c0 = three_cocycle_of(
        &trivial,
        &FourTermData::compute(&trivial).unwrap(),
        PreimagePolicy::Canonical,
    )
    .unwrap();
    let d = FourTermData::compute(&doubling).unwrap();
    assert_eq!(d.module, m);
    let c1 = three_cocycle_of(&doubling, &d, PreimagePolicy::Canonical).unwrap();
    assert!(class_equal(&m, &c0, &Cochain::zero(&m, 3))
        .unwrap()
        .is_some());
    assert!(class_equal(&m, &c0, &c1).unwrap().is_none());
    let h = cohomology(&m, 3).unwrap();
    assert_eq!(h.classify(c1.values()).unwrap(), vec![BigInt::from(1)]);
}

#[test]
fn classes_of_h3_z2_by_brute_force() {
    let m = z2();
    let cocycles = all_3_cocycles_z2();
    let zero = Cochain::zero(&m, 3);
    let nonzero: Vec<&Cochain> = cocycles
        .iter()
        .filter(|c| class_equal(&m, &zero, c).unwrap().is_none())
        .collect();
    // the cocycles split into two classes of equal size
    assert_eq!(nonzero.len() * 2, cocycles.len());
    for c in &nonzero {
        assert!(class_equal(&m, nonzero[0], c).unwrap().is_some());
    }
    for c in &cocycles {
        assert!(roundtrip(&m, c, PreimagePolicy::Canonical).unwrap());
    }
}

#[test]
fn reconstructions_are_valid_crossed_modules() {
    let m = z2();
    let h = cohomology(&m, 3).unwrap();
    let c = Cochain::new(&m, 3, h.representative(0)).unwrap();
    let r = reconstruct_from_3cocycle(&m, &c).unwrap();
    assert!(r.crossed.kernel_is_central() && r.crossed.image_is_normal());
    assert_eq!(r.crossed.kernel().len(), 2);
    r.data.validate(&r.crossed).unwrap();
}

#[test]
fn non_cocycle_is_rejected() {
    let m = z2();
    let len = tuple_count(2, 3);
    let c = (0u32..1 << len)
        .map(|bits| {
            Cochain::new(
                &m,
                3,
                (0..len).map(|i| BigInt::from((bits >> i) & 1)).collect(),
            )
            .unwrap()
        })
        .find(|c| !is_cocycle(&m, c).unwrap())
        .unwrap();
    assert!(reconstruct_from_3cocycle(&m, &c).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn z3_roundtrip(k in 0i64..3, raw in prop::collection::vec(-2i64..=2, 9), seed in 0u64..1000) {
        let g = FiniteGroup::cyclic(3);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(3));
        let h = cohomology(&m, 3).unwrap();
        let b = Cochain::new(&m, 2, raw.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let c = Cochain::new(&m, 3, h.representative(0)).unwrap().scale(&BigInt::from(k)).add(&group_differential(&m, &b).unwrap());
        let policy = PreimagePolicy::Randomized { seed };
        prop_assert!(roundtrip(&m, &c, policy).unwrap());
    }

    #[test]
    fn section_choice_does_not_change_the_class(seed in 0u64..10_000) {
        let x = CrossedModule::z4_doubling();
        let d = FourTermData::compute(&x).unwrap();
        let c = three_cocycle_of(&x, &d, PreimagePolicy::Canonical).unwrap();
        let c2 = three_cocycle_of(&x, &d, PreimagePolicy::Randomized { seed }).unwrap();
        prop_assert!(class_equal(&d.module, &c, &c2).unwrap().is_some());
    }
}
