mod common;

use std::time::Instant;

use conehom::complex::CochainComplex;
use conehom::cone::{naturality_check, verify_classical, verify_ker_xi, verify_ucf, ConeComplex, InjectiveResolution};
use conehom::lattice::{FgAbGroup, FgMorphism};
use conehom::qz::{is_isomorphism, QZGroup, Summand};

fn doubling() -> CochainComplex {
    let z = FgAbGroup::free(1);
    CochainComplex::new(0, vec![z.clone(), z.clone()], vec![FgMorphism::scalar(&z, 2)]).unwrap()
}

#[test]
fn doubling_sequence_with_integers() {
    let cone = ConeComplex::from_fg(&doubling(), &FgAbGroup::free(1)).unwrap();
    let r = verify_ucf(&cone, 0).unwrap();
    assert!(r.all_pass(), "{r:?}");
    assert_eq!(r.hbar, QZGroup::from_fg(&FgAbGroup::cyclic(2)));
    assert_eq!(r.ext, QZGroup::from_fg(&FgAbGroup::cyclic(2)));
    assert!(r.hom.is_zero());
    assert!(verify_ker_xi(&cone, 0).unwrap().all_pass());
    assert!(verify_classical(&cone, 0).unwrap().all_pass());
}

#[test]
fn random_sweep() {
    let mut rng = common::rng(7);
    let start = Instant::now();
    for _ in 0..20 {
        let c = common::random_complex(&mut rng, 3, 3, true, 0);
        for g in common::coefficient_groups() {
            let cone = ConeComplex::from_fg(&c, &g).unwrap();
            for n in cone.lo()..=cone.hi() {
                let r = verify_ucf(&cone, n).unwrap();
                assert!(r.all_pass(), "{c:?} G={g} n={n}: {r:?}");
                let k = verify_ker_xi(&cone, n).unwrap();
                assert!(k.all_pass(), "{c:?} G={g} n={n}: {k:?}");
            }
        }
    }
    eprintln!("sweep: {:?}", start.elapsed());
}

#[test]
fn divisible_coefficients() {
    let mut rng = common::rng(11);
    for _ in 0..10 {
        let c = common::random_complex(&mut rng, 3, 3, true, 0);
        for g in [QZGroup::rationals(1), QZGroup::new(vec![Summand::QZ]).unwrap()] {
            let cone = ConeComplex::new(&c, &InjectiveResolution::standard(&g)).unwrap();
            for n in cone.lo()..=cone.hi() {
                let r = verify_ucf(&cone, n).unwrap();
                assert!(r.all_pass(), "{c:?} G={g} n={n}: {r:?}");
                assert!(is_isomorphism(&cone.ucf_maps(n).unwrap().xi_bar));
            }
        }
    }
}

#[test]
fn free_complexes_match_classical() {
    let mut rng = common::rng(13);
    for _ in 0..20 {
        let c = common::random_complex(&mut rng, 3, 3, false, 0);
        for g in common::coefficient_groups() {
            let cone = ConeComplex::from_fg(&c, &g).unwrap();
            for n in cone.lo()..=cone.hi() {
                let r = verify_classical(&cone, n).unwrap();
                assert!(r.all_pass(), "{c:?} G={g} n={n}: {r:?}");
            }
        }
    }
}

#[test]
fn naturality_on_self_maps() {
    let mut rng = common::rng(17);
    for _ in 0..10 {
        let c = common::random_complex(&mut rng, 3, 3, true, 0);
        let f = common::random_self_map(&mut rng, &c);
        for g in common::coefficient_groups().into_iter().take(3) {
            let cone = ConeComplex::from_fg(&c, &g).unwrap();
            for n in cone.lo()..=cone.hi() {
                let r = naturality_check(&f, &cone, &cone, n).unwrap();
                assert!(r.all_pass(), "{c:?} G={g} n={n}: {r:?}");
            }
        }
    }
}
