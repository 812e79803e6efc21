use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::random::{instance_rng, random_quasi_affine_fan, random_strongly_convex_cone, FanParams};

type V = IntVec<BigInt>;
type C = Cone<BigInt>;

fn v(xs: &[i64]) -> V {
    IntVec::from_i64s(xs)
}

fn root(sigma: &C, rho: &[i64], e: &[i64]) -> DemazureRoot<BigInt> {
    DemazureRoot::new(sigma, &v(rho), v(e)).unwrap()
}

fn plane_minus_origin() -> Fan<BigInt> {
    let rays = [C::from_rays_i64(&[&[1, 0]], 2).unwrap(), C::from_rays_i64(&[&[0, 1]], 2).unwrap()];
    Fan::new(rays.to_vec(), 2).unwrap()
}

#[test]
fn root_set_examples() {
    let quad = C::orthant(2);
    let s = root_set(&quad, &v(&[1, 0])).unwrap();
    assert!(s.contains(&v(&[-1, 0])) && s.contains(&v(&[-1, 9])) && !s.contains(&v(&[-1, -1])));

    let ray = C::from_rays_i64(&[&[1, 0]], 2).unwrap();
    let s = root_set(&ray, &v(&[1, 0])).unwrap();
    assert!(s.contains(&v(&[-1, -5])) && s.contains(&v(&[-1, 5])) && !s.contains(&v(&[0, 5])));

    let wedge = C::from_rays_i64(&[&[1, 0], &[1, 2]], 2).unwrap();
    let s = root_set(&wedge, &v(&[1, 2])).unwrap();
    assert!(s.contains(&v(&[1, -1])));
    assert!(!s.contains(&v(&[-1, 0])));

    assert!(matches!(root_set(&quad, &v(&[1, 1])), Err(Error::NotExtremalRay(_))));
}

#[test]
fn root_validation() {
    let quad = C::orthant(2);
    assert!(matches!(DemazureRoot::new(&quad, &v(&[1, 0]), v(&[1, 0])), Err(Error::InvalidRoot(..))));
    assert!(matches!(DemazureRoot::new(&quad, &v(&[1, 0]), v(&[-1, -1])), Err(Error::InvalidRoot(..))));
    assert!(DemazureRoot::new(&quad, &v(&[2, 0]), v(&[-1, 0])).is_ok());
}

#[test]
fn derivation_examples() {
    let quad = C::orthant(2);
    let r = root(&quad, &[1, 0], &[-1, 1]);
    let t = apply_derivation(&quad, &r, &v(&[2, 0])).unwrap();
    assert_eq!((t.coeff, t.exponent), (BigInt::from(2), v(&[1, 1])));
    assert!(apply_derivation(&quad, &r, &v(&[0, 5])).unwrap().is_zero());
    let t = apply_derivation(&quad, &r, &v(&[1, 0])).unwrap();
    assert_eq!((t.coeff, t.exponent), (BigInt::from(1), v(&[0, 1])));
    assert!(matches!(apply_derivation(&quad, &r, &v(&[-1, 0])), Err(Error::ExponentOutsideCone(_))));
}

#[test]
fn nilpotency_examples() {
    let quad = C::orthant(2);
    let r = root(&quad, &[1, 0], &[-1, 0]);
    assert_eq!(annihilation_steps(&quad, &r, &v(&[3, 0])).unwrap(), 4);
    assert_eq!(annihilation_steps(&quad, &r, &v(&[0, 7])).unwrap(), 1);
    assert!(verify_locally_nilpotent(&quad, &r, 3));
    assert!(!verify_locally_nilpotent(&quad, &r, 0));
}

#[test]
fn orbit_closure_examples() {
    let quad = C::orthant(2);
    let bad = root(&quad, &[1, 0], &[-1, 0]);
    let good = root(&quad, &[1, 0], &[-1, 1]);
    let other = C::from_rays_i64(&[&[0, 1]], 2).unwrap();
    assert!(!preserves_orbit_closure(&quad, &bad, &quad).unwrap());
    assert!(preserves_orbit_closure(&quad, &good, &quad).unwrap());
    assert!(preserves_orbit_closure(&quad, &bad, &other).unwrap());
    for (r, tau) in [(&bad, &quad), (&good, &quad), (&bad, &other)] {
        assert_eq!(preserves_orbit_closure(&quad, r, tau).unwrap(), brute_force_invariance(&quad, r, tau, 6));
    }
    let not_face = C::from_rays_i64(&[&[1, 1]], 2).unwrap();
    assert!(matches!(preserves_orbit_closure(&quad, &bad, &not_face), Err(Error::NotAFace)));
}

#[test]
fn descent_examples() {
    let punctured = plane_minus_origin();
    let quad = C::orthant(2);
    assert!(!descends_to_quasi_affine(&punctured, &root(&quad, &[1, 0], &[-1, 0])).unwrap());
    assert!(descends_to_quasi_affine(&punctured, &root(&quad, &[1, 0], &[-1, 1])).unwrap());
    let plane = Fan::face_fan(&quad).unwrap();
    for r in enumerate_roots(&plane, 3).unwrap() {
        assert!(descends_to_quasi_affine(&plane, &r).unwrap());
    }
    let p1 = Fan::new(
        vec![C::from_rays_i64(&[&[1]], 1).unwrap(), C::from_rays_i64(&[&[-1]], 1).unwrap()],
        1,
    )
    .unwrap();
    let r = root(&C::orthant(1), &[1], &[-1]);
    assert!(matches!(descends_to_quasi_affine(&p1, &r), Err(Error::NotQuasiAffine(_))));
}

#[test]
fn weight_set_examples() {
    let d = weight_set_d(&plane_minus_origin()).unwrap();
    assert!(d.contains(&v(&[-1, 1])) && d.contains(&v(&[4, -1])));
    assert!(!d.contains(&v(&[-1, 0])) && !d.contains(&v(&[0, -1])));

    let d = weight_set_d(&Fan::face_fan(&C::orthant(2)).unwrap()).unwrap();
    assert!(d.contains(&v(&[-1, 0])) && d.contains(&v(&[0, -1])) && d.contains(&v(&[3, -1])));

    let ray = Fan::face_fan(&C::from_rays_i64(&[&[1, 0]], 2).unwrap()).unwrap();
    let d = weight_set_d(&ray).unwrap();
    assert!(d.contains(&v(&[-1, -4])) && d.contains(&v(&[-1, 4])));
}

#[test]
fn enumerate_roots_examples() {
    let plane = Fan::face_fan(&C::orthant(2)).unwrap();
    let es: Vec<(V, V)> = enumerate_roots(&plane, 2).unwrap().into_iter().map(|r| (r.rho, r.e)).collect();
    let expected = vec![
        (v(&[0, 1]), v(&[0, -1])),
        (v(&[0, 1]), v(&[1, -1])),
        (v(&[0, 1]), v(&[2, -1])),
        (v(&[1, 0]), v(&[-1, 0])),
        (v(&[1, 0]), v(&[-1, 1])),
        (v(&[1, 0]), v(&[-1, 2])),
    ];
    assert_eq!(es, expected);
    let es = enumerate_roots(&plane_minus_origin(), 2).unwrap();
    assert_eq!(es.len(), 4);
    assert!(enumerate_roots(&plane, 0).is_err());
}

#[test]
fn oracle_matches_plain_scan() {
    for inst in 0..12u64 {
        let mut rng = instance_rng(5, inst);
        let sigma: C = random_strongly_convex_cone(&mut rng, 3, 4, 2);
        let oracle = InvarianceOracle::new(&sigma, 4).unwrap();
        let fan = Fan::face_fan(&sigma).unwrap();
        let roots = enumerate_roots(&fan, 3).unwrap();
        for face in sigma.faces().unwrap() {
            for r in &roots {
                let plain = brute_force_invariance(&sigma, r, &face.cone, 4);
                assert_eq!(oracle.check(r, &face.cone).unwrap(), plain);
                // a violation may need a larger box, the other direction holds at any size
                if preserves_orbit_closure(&sigma, r, &face.cone).unwrap() {
                    assert!(plain, "{r:?} on {}", face.cone);
                }
            }
        }
    }
}

#[test]
fn random_fans_root_sandwich_and_generation() {
    let params = FanParams { max_rank: 3, ..FanParams::default() };
    for inst in 0..25u64 {
        let mut rng = instance_rng(9, inst);
        let fan = random_quasi_affine_fan(&mut rng, &params);
        let sigma = fan.support_hull().clone();
        let d = weight_set_d(&fan).unwrap();
        for (piece, rho) in d.pieces().iter().zip(sigma.rays()) {
            let s = root_set(&sigma, rho).unwrap();
            let interior = sigma.minus_ray(rho).unwrap().dual();
            for e in s.members_in_box(4).unwrap() {
                if interior.contains_relint(&e) {
                    assert!(piece.contains(&e));
                }
                let r = DemazureRoot::new(&sigma, rho, e.clone()).unwrap();
                assert_eq!(piece.contains(&e), descends_to_quasi_affine(&fan, &r).unwrap());
            }
        }
        if !sigma.is_zero() {
            let weights: Vec<V> = enumerate_roots(&fan, 8).unwrap().into_iter().map(|r| r.e).collect();
            assert!(Sublattice::span(&weights, fan.ambient_rank()).is_full(), "{fan:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derivation_is_graded_and_nilpotent(seed in 0u64..10_000) {
        let mut rng = instance_rng(seed, 3);
        let sigma: C = random_strongly_convex_cone(&mut rng, 3, 4, 3);
        let fan = Fan::face_fan(&sigma).unwrap();
        for r in enumerate_roots(&fan, 2).unwrap() {
            for m in dual_box_points(&sigma, 2) {
                let t = apply_derivation(&sigma, &r, &m).unwrap();
                prop_assert_eq!(&t.exponent, &(&m + r.e()));
                if !t.is_zero() {
                    prop_assert!(sigma.dual().contains(&t.exponent));
                }
            }
            prop_assert!(verify_locally_nilpotent(&sigma, &r, 2));
        }
    }
}
