//! Fans of strongly convex cones, the quasi-affinity test and the minimal
//! faces of the support hull that are missing from the fan.

use std::collections::BTreeSet;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::linalg::IntVec;
use crate::scalar::Int;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan<T> {
    ambient: usize,
    max_cones: Vec<Cone<T>>,
    all_cones: Vec<Cone<T>>,
    support_hull: Cone<T>,
}

/// Why a fan is or is not quasi-affine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiAffinity<T> {
    /// Every maximal cone is a face of the strongly convex support hull.
    QuasiAffine,
    /// The support hull contains a line; the basis of its lineality space.
    SupportHasLineality(Vec<IntVec<T>>),
    /// Indices (into `max_cones`) of maximal cones that are not faces of the support hull.
    NotFaces(Vec<usize>),
}

impl<T> QuasiAffinity<T> {
    pub fn holds(&self) -> bool {
        matches!(self, QuasiAffinity::QuasiAffine)
    }
}

/// A minimal face of the support hull that does not belong to the fan.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryFace<T> {
    pub face: Cone<T>,
    pub dim: usize,
}

impl<T: Int> Fan<T> {
    /// Validates the fan axioms and materializes the face closure.
    pub fn new(max_cones: Vec<Cone<T>>, rank: usize) -> Result<Self> {
        if max_cones.is_empty() {
            return Err(Error::InvalidParameter("a fan needs at least one cone".into()));
        }
        for c in &max_cones {
            if c.ambient_rank() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: c.ambient_rank() });
            }
            if !c.is_strongly_convex() {
                return Err(Error::NonStronglyConvex { lineality: c.lineality_rank() });
            }
        }
        for (i, a) in max_cones.iter().enumerate() {
            for (j, b) in max_cones.iter().enumerate().skip(i + 1) {
                let meet = a.intersect(b)?;
                if !a.is_face(&meet) || !b.is_face(&meet) {
                    return Err(Error::BadIntersection { first: i, second: j });
                }
            }
        }
        let distinct: BTreeSet<Cone<T>> = max_cones.into_iter().collect();
        let maximal: Vec<Cone<T>> = distinct
            .iter()
            .filter(|c| !distinct.iter().any(|d| d != *c && d.contains_cone(c)))
            .cloned()
            .collect();

        let mut all = BTreeSet::new();
        for c in &maximal {
            for f in c.faces()? {
                all.insert(f.cone);
            }
        }
        let mut all_cones: Vec<Cone<T>> = all.into_iter().collect();
        all_cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));

        let gens: Vec<IntVec<T>> = maximal.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        let support_hull = Cone::from_rays(&gens, rank)?;
        Ok(Fan { ambient: rank, max_cones: maximal, all_cones, support_hull })
    }

    /// The fan of all faces of `sigma` (an affine toric variety).
    pub fn face_fan(sigma: &Cone<T>) -> Result<Self> {
        Self::new(vec![sigma.clone()], sigma.ambient_rank())
    }

    /// The fan `{0}` of the torus of rank `rank`.
    pub fn torus(rank: usize) -> Self {
        Self::new(vec![Cone::zero(rank)], rank).expect("zero cone is a fan")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn max_cones(&self) -> &[Cone<T>] {
        &self.max_cones
    }

    /// Every cone of the fan, ordered by dimension.
    pub fn all_cones(&self) -> &[Cone<T>] {
        &self.all_cones
    }

    pub fn support_hull(&self) -> &Cone<T> {
        &self.support_hull
    }

    pub fn contains_cone(&self, c: &Cone<T>) -> bool {
        self.all_cones.contains(c)
    }

    /// One-dimensional cones of the fan, as primitive generators.
    pub fn rays(&self) -> Vec<IntVec<T>> {
        self.all_cones.iter().filter(|c| c.dim() == 1).map(|c| c.rays()[0].clone()).collect()
    }

    pub fn quasi_affinity(&self) -> QuasiAffinity<T> {
        if !self.support_hull.is_strongly_convex() {
            return QuasiAffinity::SupportHasLineality(self.support_hull.lineality().to_vec());
        }
        let bad: Vec<usize> = self
            .max_cones
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.support_hull.is_face(c))
            .map(|(i, _)| i)
            .collect();
        if bad.is_empty() {
            QuasiAffinity::QuasiAffine
        } else {
            QuasiAffinity::NotFaces(bad)
        }
    }

    pub fn is_quasi_affine(&self) -> bool {
        self.quasi_affinity().holds()
    }

    pub(crate) fn require_quasi_affine(&self) -> Result<()> {
        match self.quasi_affinity() {
            QuasiAffinity::QuasiAffine => Ok(()),
            QuasiAffinity::SupportHasLineality(l) => {
                Err(Error::NotQuasiAffine(format!("support hull has lineality rank {}", l.len())))
            }
            QuasiAffinity::NotFaces(idx) => {
                Err(Error::NotQuasiAffine(format!("maximal cones {idx:?} are not faces of the support hull")))
            }
        }
    }

    /// Minimal faces of the support hull not in the fan. For a quasi-affine
    /// fan these have dimension at least two.
    pub fn boundary_faces(&self) -> Result<Vec<BoundaryFace<T>>> {
        self.require_quasi_affine()?;
        let faces = self.support_hull.faces()?;
        let missing: Vec<&Cone<T>> =
            faces.iter().map(|f| &f.cone).filter(|c| !self.contains_cone(c)).collect();
        let mut out = Vec::new();
        for c in &missing {
            let minimal = !missing.iter().any(|d| d != c && c.contains_cone(d));
            if minimal {
                if c.dim() < 2 {
                    return Err(Error::Internal(format!("missing face {c} of dimension {}", c.dim())));
                }
                out.push(BoundaryFace { face: (*c).clone(), dim: c.dim() });
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn convert<U: Int>(&self) -> Option<Fan<U>> {
        let conv = |cs: &[Cone<T>]| cs.iter().map(|c| c.convert()).collect::<Option<Vec<Cone<U>>>>();
        Some(Fan {
            ambient: self.ambient,
            max_cones: conv(&self.max_cones)?,
            all_cones: conv(&self.all_cones)?,
            support_hull: self.support_hull.convert()?,
        })
    }
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::random::{instance_rng, random_quasi_affine_fan, FanParams};
    use num_bigint::BigInt;

    #[test]
    fn random_fans_satisfy_the_boundary_lemmas() {
        for i in 0..60 {
            let mut rng = instance_rng(7, i);
            let f: Fan<BigInt> = random_quasi_affine_fan(&mut rng, &FanParams::default());
            assert!(f.is_quasi_affine(), "instance {i}");
            let sigma = f.support_hull();
            let faces = sigma.faces().unwrap();
            for face in &faces {
                if !f.contains_cone(&face.cone) {
                    assert!(face.dim >= 2, "instance {i}: missing face of dim {}", face.dim);
                }
            }
            let mut rays = f.rays();
            rays.sort();
            assert_eq!(rays, sigma.rays(), "instance {i}");

            let b = f.boundary_faces().unwrap();
            for x in &b {
                for y in &b {
                    assert!(x == y || !x.face.contains_cone(&y.face), "instance {i}: not an antichain");
                }
            }
            // removing exactly the top face leaves the top face as the only boundary face
            if sigma.dim() >= 2 {
                let proper: Vec<Cone<BigInt>> =
                    faces.iter().filter(|g| g.cone != *sigma).map(|g| g.cone.clone()).collect();
                let g = Fan::new(proper, sigma.ambient_rank()).unwrap();
                let only = g.boundary_faces().unwrap();
                assert_eq!(only, vec![BoundaryFace { face: sigma.clone(), dim: sigma.dim() }]);
            }
        }
    }
}
