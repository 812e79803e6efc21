use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::linalg::solve_rational;

type C = Cone<BigInt>;

fn v(c: &[i64]) -> IntVec<BigInt> {
    IntVec::from_i64s(c)
}

fn vs(cs: &[&[i64]]) -> Vec<IntVec<BigInt>> {
    cs.iter().map(|c| v(c)).collect()
}

fn cone(cs: &[&[i64]], n: usize) -> C {
    C::from_rays_i64(cs, n).unwrap()
}

/// Carathéodory: x is in cone(gens) iff it is a nonnegative combination of
/// some linearly independent subset of the generators.
fn in_cone_oracle(gens: &[IntVec<BigInt>], x: &IntVec<BigInt>) -> bool {
    if x.is_zero() {
        return true;
    }
    let n = x.len();
    for k in 1..=n.min(gens.len()) {
        for subset in gens.iter().cloned().combinations(k) {
            if crate::linalg::rank_of(&subset, n) < k {
                continue;
            }
            if let Some(coeffs) = solve_rational(&subset, x) {
                if coeffs.iter().all(|q| !q.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Extremal iff not in the cone of the other generators (and not inside a line).
fn extremal_oracle(gens: &[IntVec<BigInt>]) -> Vec<IntVec<BigInt>> {
    let prim: Vec<IntVec<BigInt>> = gens.iter().map(|g| g.primitive().unwrap()).sorted().dedup().collect();
    prim.iter()
        .filter(|r| {
            let others: Vec<IntVec<BigInt>> = prim.iter().filter(|o| o != r).cloned().collect();
            !in_cone_oracle(&others, r) && !in_cone_oracle(&prim, &-*r)
        })
        .cloned()
        .collect()
}

#[test]
fn orthant_is_self_dual() {
    let c = cone(&[&[1, 0], &[0, 1]], 2);
    assert_eq!(c.rays(), vs(&[&[0, 1], &[1, 0]]).as_slice());
    assert_eq!(c.ineqs(), vs(&[&[0, 1], &[1, 0]]).as_slice());
    assert_eq!(c.dual(), c);
}

#[test]
fn interior_generator_is_dropped() {
    let gens = vs(&[&[1, 0], &[1, 2], &[1, 1]]);
    let c = C::from_rays(&gens, 2).unwrap();
    assert_eq!(c.rays(), extremal_oracle(&gens).as_slice());
    assert_eq!(c.rays(), vs(&[&[1, 0], &[1, 2]]).as_slice());
}

#[test]
fn line_has_lineality_one() {
    let c = cone(&[&[1, 0], &[-1, 0]], 2);
    assert_eq!(c.lineality_rank(), 1);
    assert!(c.rays().is_empty());
    assert!(!c.is_strongly_convex());
    assert_eq!(c.dim(), 1);
}

#[test]
fn dual_of_wedge() {
    let c = cone(&[&[1, 0], &[1, 2]], 2);
    let d = c.dual();
    assert_eq!(d, cone(&[&[0, 1], &[2, -1]], 2));
    // brute force: primitive u in [-3,3]^2 nonnegative on both rays; boundary ones
    // vanish on a ray
    let mut boundary = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            let u = v(&[a, b]);
            if u.is_zero() || !u.content().is_one() {
                continue;
            }
            let (s1, s2) = (u.dot(&v(&[1, 0])), u.dot(&v(&[1, 2])));
            if !s1.is_negative() && !s2.is_negative() && (s1.is_zero() || s2.is_zero()) {
                boundary.push(u);
            }
        }
    }
    boundary.sort();
    assert_eq!(d.rays(), boundary.as_slice());
}

#[test]
fn zero_cone_dual_is_everything() {
    let z = C::zero(2);
    let d = z.dual();
    assert_eq!(d.lineality_rank(), 2);
    assert_eq!(d, C::full_space(2));
    assert_eq!(d.dual(), z);
}

#[test]
fn face_counts() {
    assert_eq!(C::orthant(2).faces().unwrap().len(), 4);
    assert_eq!(C::orthant(3).faces().unwrap().len(), 8);
    let wedge = cone(&[&[1, 0], &[1, 2]], 2);
    let faces = wedge.faces().unwrap();
    assert_eq!(faces.len(), 4);
    let rays: Vec<(IntVec<BigInt>, IntVec<BigInt>)> = faces
        .iter()
        .filter(|f| f.dim == 1)
        .map(|f| (f.cone.rays()[0].clone(), f.normal.clone()))
        .collect();
    assert!(rays.contains(&(v(&[1, 0]), v(&[0, 1]))));
    assert!(rays.contains(&(v(&[1, 2]), v(&[2, -1]))));
    assert!(matches!(cone(&[&[1, 0], &[-1, 0]], 2).faces(), Err(Error::NonStronglyConvex { .. })));
}

#[test]
fn is_face_examples() {
    let o = C::orthant(2);
    assert!(o.is_face(&cone(&[&[1, 0]], 2)));
    assert!(!o.is_face(&cone(&[&[1, 1]], 2)));
    assert!(o.is_face(&C::zero(2)));
    assert!(o.is_face(&o));
    let line = cone(&[&[1, 0], &[-1, 0]], 2);
    let half = line.intersect(&C::full_space(2)).unwrap();
    assert!(!C::half_space(&v(&[0, 1])).unwrap().is_face(&C::zero(2)));
    assert!(C::half_space(&v(&[0, 1])).unwrap().is_face(&half));
}

#[test]
fn minus_ray_examples() {
    let o = C::orthant(2);
    assert_eq!(o.minus_ray(&v(&[1, 0])).unwrap(), cone(&[&[0, 1]], 2));
    assert_eq!(o.minus_ray(&v(&[1, 1])).unwrap(), o);
    let o3 = C::orthant(3);
    assert_eq!(o3.minus_ray(&v(&[0, 0, 1])).unwrap(), cone(&[&[1, 0, 0], &[0, 1, 0]], 3));
}

#[test]
fn membership_examples() {
    let o = C::orthant(2);
    assert!(o.membership(&v(&[1, 1]), Membership::RelativeInterior));
    assert!(!o.membership(&v(&[1, 0]), Membership::RelativeInterior));
    assert!(o.membership(&v(&[1, 0]), Membership::Closed));
    let ray = cone(&[&[1, 2]], 2);
    assert!(ray.membership(&v(&[2, 4]), Membership::RelativeInterior));
    assert!(!ray.membership(&v(&[2, 3]), Membership::Closed));
}

#[test]
fn intersect_examples() {
    let o = C::orthant(2);
    let left = C::half_space(&v(&[-1, 0])).unwrap();
    assert_eq!(o.intersect(&left).unwrap(), cone(&[&[0, 1]], 2));
    assert_eq!(o.intersect(&o).unwrap(), o);
    let neg = cone(&[&[-1, 0], &[0, -1]], 2);
    assert_eq!(o.intersect(&neg).unwrap(), C::zero(2));
}

fn arb_cone() -> impl Strategy<Value = C> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, n), 0..=6).prop_map(move |rows| {
            let gens: Vec<IntVec<BigInt>> = rows.iter().map(|r| v(r)).collect();
            C::from_rays(&gens, n).unwrap()
        })
    })
}

fn arb_pointed_full() -> impl Strategy<Value = C> {
    arb_cone().prop_filter("strongly convex and full-dimensional", |c| {
        c.is_strongly_convex() && c.is_full_dimensional()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn biduality(c in arb_cone()) {
        prop_assert_eq!(c.dual().dual(), c.clone());
        // the inequality description agrees with the generators
        let rebuilt = C::from_inequalities(c.ineqs(), c.equations(), c.ambient_rank()).unwrap();
        prop_assert_eq!(rebuilt, c);
    }

    #[test]
    fn rays_are_extremal(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=6)) {
        let gens: Vec<IntVec<BigInt>> = rows.iter().map(|r| v(r)).filter(|g| !g.is_zero()).collect();
        let c = C::from_rays(&gens, 3).unwrap();
        if c.is_strongly_convex() && !gens.is_empty() {
            let expected = extremal_oracle(&gens);
            prop_assert_eq!(c.rays(), expected.as_slice());
        }
    }

    #[test]
    fn membership_matches_caratheodory(c in arb_cone(), pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 8)) {
        let n = c.ambient_rank();
        let gens = c.generators();
        for p in pts {
            let x = v(&p[..n]);
            prop_assert_eq!(c.contains(&x), in_cone_oracle(&gens, &x));
        }
    }

    #[test]
    fn face_dual_bijection(c in arb_pointed_full()) {
        let n = c.ambient_rank();
        let d = c.dual();
        let faces = c.faces().unwrap();
        let dual_faces = d.faces().unwrap();
        prop_assert_eq!(faces.len(), dual_faces.len());
        let star = |t: &C| d.restrict(&t.generators()).unwrap();
        for f in &faces {
            let fs = star(&f.cone);
            prop_assert!(d.is_face(&fs));
            prop_assert_eq!(f.dim + fs.dim(), n);
            prop_assert_eq!(c.restrict(&fs.generators()).unwrap(), f.cone.clone());
            prop_assert_eq!(c.face_cut_by(&f.normal), f.cone.clone());
            prop_assert!(d.contains(&f.normal));
            for g in &faces {
                if f.cone.contains_cone(&g.cone) {
                    prop_assert!(star(&g.cone).contains_cone(&fs));
                }
            }
        }
    }

    #[test]
    fn tau_rho_is_a_face(c in arb_cone().prop_filter("strongly convex", |c| c.is_strongly_convex())) {
        for rho in c.rays() {
            let sigma_rho = c.minus_ray(rho).unwrap();
            for f in c.faces().unwrap() {
                let tau_rho = f.cone.minus_ray(rho).unwrap();
                prop_assert!(sigma_rho.is_face(&tau_rho));
                if tau_rho.dim() < f.cone.dim() {
                    prop_assert!(f.cone.is_face(&tau_rho));
                }
            }
        }
    }

    #[test]
    fn intersection_is_maximal(a in arb_cone(), rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 0..=5)) {
        let n = a.ambient_rank();
        let gens: Vec<IntVec<BigInt>> = rows.iter().map(|r| v(&r[..n])).collect();
        let b = C::from_rays(&gens, n).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert!(a.contains_cone(&i));
        prop_assert!(b.contains_cone(&i));
        for r in a.rays() {
            if b.contains(r) {
                prop_assert!(i.contains(r));
            }
        }
    }
}
