mod common;

use std::collections::BTreeSet;

use common::*;
use conehom::cone::InjectiveResolution;
use conehom::lattice::{FgAbGroup, FgMorphism};
use conehom::limits::*;
use conehom::qz::QZGroup;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn finite_towers_match_enumeration() {
    let mut rng = rng(7);
    for _ in 0..100 {
        let t = random_finite_tower(&mut rng);
        let cert = lim1_tower(&t);
        assert_eq!(cert.verdict, Lim1Verdict::Zero);
        assert!(cert.recheck(t.as_qz()));
        let lim = lim_tower(&t).unwrap();
        assert!(lim.complete);
        let (stats, at_zero, _) = enumerated_limit(&t);
        let elements = lim.group.elements().unwrap();
        assert_eq!(order_statistics(&lim.group, &elements), stats);
        let projected: BTreeSet<Vec<BigInt>> = apply_set(&lim.projection(0), &elements.into_iter().collect());
        assert_eq!(projected, at_zero);
    }
}

#[test]
fn multiplication_by_p_on_integers() {
    for p in [2, 3, 5] {
        let t = TowerOfGroups::periodic(&FgAbGroup::free(1), &FgMorphism::scalar(&FgAbGroup::free(1), p)).unwrap();
        let lim = lim_tower(&t).unwrap();
        assert!(lim.group.is_zero());
        let cert = lim1_tower(&t);
        assert_eq!(cert.verdict, Lim1Verdict::Nonzero);
        assert!(cert.recheck(t.as_qz()));
    }
}

#[test]
fn circle_systems_have_nonvanishing_lim1() {
    let res = InjectiveResolution::from_fg(&FgAbGroup::free(1));
    for p in [2, 3, 5] {
        let s = degree_p_circle_system(p);
        let t = cone_homology_tower(&s, &res, 1).unwrap();
        assert_eq!(lim1_qz(&t).verdict, Lim1Verdict::Nonzero);
        let m = verify_main_sequence(&s, &res, 0).unwrap();
        assert!(m.exact());
        assert!(verify_lemma2(&s, &res, SystemMode::Truncated(6)).unwrap().all_pass());
    }
}

#[test]
fn surjective_systems_satisfy_the_sequences() {
    let mut rng = rng(11);
    let groups = coefficient_groups();
    for i in 0..10 {
        let s = surjective_system(&mut rng);
        let res = InjectiveResolution::from_fg(&groups[i % groups.len()]);
        for n in 0..=1 {
            let m = verify_main_sequence(&s, &res, n).unwrap();
            assert!(m.exact() && m.pi_injective == Some(true), "{m:?}");
            assert!(verify_theorem3(&s, &res, n, 0).unwrap().all_pass());
            assert!(verify_theorem3(&s, &res, n, 1).unwrap().all_pass());
            assert!(verify_cor2(&s, &res, n).unwrap().all_pass());
            assert!(verify_lemma4(&s, &res, n).unwrap().all_pass());
            assert!(verify_cor3(&s, &res, n, 6).unwrap().all_pass());
        }
    }
}

#[test]
fn eventually_iso_systems() {
    let mut rng = rng(13);
    let groups = coefficient_groups();
    for i in 0..10 {
        let s = eventually_iso_system(&mut rng);
        let res = InjectiveResolution::from_fg(&groups[i % groups.len()]);
        assert!(verify_lemma2(&s, &res, SystemMode::Exact).unwrap().all_pass());
        let m = verify_main_sequence(&s, &res, 0).unwrap();
        assert_eq!((m.pi_injective, m.pi_surjective), (Some(true), Some(true)));
        let r = verify_cor5(&s, &InjectiveResolution::standard(&QZGroup::circle(1)), 0).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }
}

#[test]
fn non_stabilizing_systems_truncate() {
    let mut rng = rng(17);
    let res = InjectiveResolution::from_fg(&FgAbGroup::free(1));
    for _ in 0..5 {
        let s = non_stabilizing_system(&mut rng);
        assert!(verify_lemma2(&s, &res, SystemMode::Truncated(6)).unwrap().all_pass());
        assert!(verify_main_sequence(&s, &res, 0).unwrap().exact());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn surjective_bonds_have_no_lim1(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_group(&mut rng, 3, true);
        let m = FgMorphism::scalar(&a, if rng.gen_bool(0.5) { 1 } else { -1 });
        let t = TowerOfGroups::periodic(&a, &m).unwrap();
        prop_assert_eq!(lim1_tower(&t).verdict, Lim1Verdict::Zero);
        let lim = lim_tower(&t).unwrap();
        prop_assert_eq!(&lim.group, &a);
    }

    #[test]
    fn stable_image_size_bounded(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = random_finite_tower(&mut rng);
        let (_, _, steps) = enumerated_limit(&t);
        let bound = stabilization_bound(&QZGroup::from_fg(&t.tail.clone().unwrap().0));
        prop_assert!(steps <= bound);
    }
}
