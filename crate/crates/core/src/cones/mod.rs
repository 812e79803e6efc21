//! Rational polyhedral cones in dual description.
//!
//! A [`Cone`] stores both its generators (primitive extremal rays plus an
//! integral basis of its lineality space) and its inequality description
//! (primitive facet normals plus an integral basis of the equations of its
//! span). Both halves are canonical: rays are taken in the orthogonal
//! complement of the lineality space, facet normals in the span of the cone,
//! and every list is sorted. Equal cones therefore have equal representations.

mod face;

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{cofactor_normal, kernel_basis, IntVec, Sublattice};
use crate::scalar::Int;

pub use face::Face;

/// Membership flavour for [`Cone::membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Closed,
    RelativeInterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone<T> {
    ambient: usize,
    rays: Vec<IntVec<T>>,
    lineality: Vec<IntVec<T>>,
    ineqs: Vec<IntVec<T>>,
    equations: Vec<IntVec<T>>,
}

impl<T: Int> Cone<T> {
    /// Cone generated by `rays` (any nonzero vectors; zero vectors are ignored).
    pub fn from_rays(rays: &[IntVec<T>], rank: usize) -> Result<Self> {
        for r in rays {
            r.check_len(rank)?;
        }
        let (equations, ineqs) = facets_of(rays, &[], rank);
        let (lineality, rays) = facets_of(&ineqs, &equations, rank);
        Ok(Cone { ambient: rank, rays, lineality, ineqs, equations })
    }

    /// Cone `{x : <u, x> >= 0 for u in ineqs, <w, x> = 0 for w in equations}`.
    pub fn from_inequalities(ineqs: &[IntVec<T>], equations: &[IntVec<T>], rank: usize) -> Result<Self> {
        for u in ineqs.iter().chain(equations) {
            u.check_len(rank)?;
        }
        let eq_basis = Sublattice::span(equations, rank);
        let (lineality, rays) = facets_of(ineqs, eq_basis.basis(), rank);
        let (equations, ineqs) = facets_of(&rays, &lineality, rank);
        Ok(Cone { ambient: rank, rays, lineality, ineqs, equations })
    }

    pub fn from_rays_i64(rays: &[&[i64]], rank: usize) -> Result<Self> {
        let rays: Vec<IntVec<T>> = rays.iter().map(|r| IntVec::from_i64s(r)).collect();
        Self::from_rays(&rays, rank)
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_rays(&[], rank).expect("empty generator list")
    }

    pub fn full_space(rank: usize) -> Self {
        Self::zero(rank).dual()
    }

    /// The closed half space `{x : <u, x> >= 0}`.
    pub fn half_space(u: &IntVec<T>) -> Result<Self> {
        Self::from_inequalities(std::slice::from_ref(u), &[], u.len())
    }

    /// The positive orthant of `Z^rank`.
    pub fn orthant(rank: usize) -> Self {
        let rays: Vec<IntVec<T>> = (0..rank).map(|i| IntVec::unit(rank, i)).collect();
        Self::from_rays(&rays, rank).expect("unit vectors")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Primitive extremal rays modulo the lineality space.
    pub fn rays(&self) -> &[IntVec<T>] {
        &self.rays
    }

    /// Integral basis of the lineality space (HNF).
    pub fn lineality(&self) -> &[IntVec<T>] {
        &self.lineality
    }

    pub fn lineality_rank(&self) -> usize {
        self.lineality.len()
    }

    /// Primitive facet normals `u`, with `<u, x> >= 0` on the cone.
    pub fn ineqs(&self) -> &[IntVec<T>] {
        &self.ineqs
    }

    /// Integral basis of the orthogonal complement of the span.
    pub fn equations(&self) -> &[IntVec<T>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Whether the cone is a linear subspace.
    pub fn is_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    /// Rays together with `±` each lineality basis vector.
    pub fn generators(&self) -> Vec<IntVec<T>> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }

    /// Inequalities together with `±` each equation.
    pub fn all_inequalities(&self) -> Vec<IntVec<T>> {
        let mut h = self.ineqs.clone();
        for e in &self.equations {
            h.push(e.clone());
            h.push(-e);
        }
        h
    }

    /// Lattice of the linear span, saturated.
    pub fn span_lattice(&self) -> Sublattice<T> {
        Sublattice::span(&kernel_basis(&self.equations, self.ambient), self.ambient)
    }

    pub fn dual(&self) -> Self {
        Cone {
            ambient: self.ambient,
            rays: self.ineqs.clone(),
            lineality: self.equations.clone(),
            ineqs: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn in_span(&self, x: &IntVec<T>) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
    }

    pub fn contains(&self, x: &IntVec<T>) -> bool {
        self.in_span(x) && self.ineqs.iter().all(|u| !u.dot(x).is_negative())
    }

    /// Membership in the interior relative to the linear span.
    pub fn contains_relint(&self, x: &IntVec<T>) -> bool {
        self.in_span(x) && self.ineqs.iter().all(|u| u.dot(x).is_positive())
    }

    pub fn membership(&self, x: &IntVec<T>, mode: Membership) -> bool {
        match mode {
            Membership::Closed => self.contains(x),
            Membership::RelativeInterior => self.contains_relint(x),
        }
    }

    pub fn contains_cone(&self, other: &Self) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// An integral point in the relative interior: the sum of the rays.
    pub fn relint_point(&self) -> IntVec<T> {
        self.rays.iter().fold(IntVec::zeros(self.ambient), |acc, r| &acc + r)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        let ineqs = [self.ineqs.clone(), other.ineqs.clone()].concat();
        let eqs = [self.equations.clone(), other.equations.clone()].concat();
        Self::from_inequalities(&ineqs, &eqs, self.ambient)
    }

    /// Intersection with the hyperplane `u^⊥`.
    pub fn slice(&self, u: &IntVec<T>) -> Result<Self> {
        let eqs = [self.equations.clone(), vec![u.clone()]].concat();
        Self::from_inequalities(&self.ineqs, &eqs, self.ambient)
    }

    /// Intersection with the subspace cut out by `eqs`.
    pub fn restrict(&self, eqs: &[IntVec<T>]) -> Result<Self> {
        let eqs = [self.equations.clone(), eqs.to_vec()].concat();
        Self::from_inequalities(&self.ineqs, &eqs, self.ambient)
    }

    pub fn has_ray(&self, rho: &IntVec<T>) -> bool {
        match rho.primitive() {
            Ok(p) => self.rays.contains(&p),
            Err(_) => false,
        }
    }

    /// The cone spanned by all extremal rays except `rho` (plus the lineality space).
    pub fn minus_ray(&self, rho: &IntVec<T>) -> Result<Self> {
        rho.check_len(self.ambient)?;
        let rho = rho.primitive()?;
        let mut gens: Vec<IntVec<T>> = self.rays.iter().filter(|r| **r != rho).cloned().collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(-l);
        }
        Self::from_rays(&gens, self.ambient)
    }

    /// Sum of the facet normals vanishing on every generator of `t`.
    fn supporting_normal(&self, t: &Self) -> IntVec<T> {
        let gens = t.generators();
        self.ineqs
            .iter()
            .filter(|u| gens.iter().all(|g| u.dot(g).is_zero()))
            .fold(IntVec::zeros(self.ambient), |acc, u| &acc + u)
    }

    /// `self ∩ u^⊥` for `u` in the dual cone.
    pub fn face_cut_by(&self, u: &IntVec<T>) -> Self {
        let mut gens: Vec<IntVec<T>> = self.rays.iter().filter(|r| u.dot(r).is_zero()).cloned().collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(-l);
        }
        Self::from_rays(&gens, self.ambient).expect("same rank")
    }

    /// Whether `t` is a face of `self`, i.e. `t = self ∩ u^⊥` for some `u` in the dual.
    pub fn is_face(&self, t: &Self) -> bool {
        if t.ambient != self.ambient || !self.contains_cone(t) {
            return false;
        }
        let u = self.supporting_normal(t);
        self.face_cut_by(&u) == *t
    }

    /// Witnessing normal for a face, if `t` is one.
    pub fn face_normal(&self, t: &Self) -> Option<IntVec<T>> {
        self.is_face(t).then(|| self.supporting_normal(t))
    }

    /// All faces of a strongly convex cone, from `{0}` up to the cone itself.
    pub fn faces(&self) -> Result<Vec<Face<T>>> {
        if !self.is_strongly_convex() {
            return Err(Error::NonStronglyConvex { lineality: self.lineality_rank() });
        }
        Ok(self.faces_modulo_lineality())
    }

    /// Faces of an arbitrary cone. Every face contains the lineality space, so
    /// the face lattice is that of the pointed quotient.
    pub fn faces_modulo_lineality(&self) -> Vec<Face<T>> {
        face::enumerate(self)
    }

    pub fn convert<U: Int>(&self) -> Option<Cone<U>> {
        let conv = |vs: &[IntVec<T>]| vs.iter().map(|v| v.convert()).collect::<Option<Vec<IntVec<U>>>>();
        Some(Cone {
            ambient: self.ambient,
            rays: conv(&self.rays)?,
            lineality: conv(&self.lineality)?,
            ineqs: conv(&self.ineqs)?,
            equations: conv(&self.equations)?,
        })
    }
}

impl<T: fmt::Display> fmt::Display for Cone<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone(")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        if !self.lineality.is_empty() {
            write!(f, "; lineality")?;
            for l in &self.lineality {
                write!(f, " {l}")?;
            }
        }
        write!(f, ")")
    }
}

/// Equations of the span and primitive facet normals of `cone(gens) + span(lin)`.
///
/// `lin` must be linearly independent. A facet contains the lineality space
/// and is spanned, together with it, by `dim - 1 - rank(lin)` independent
/// generators, so every facet normal shows up as the cofactor vector of such
/// a subset stacked with `lin` and the span equations. Candidates are kept
/// when the generators all lie on one side.
fn facets_of<T: Int>(gens: &[IntVec<T>], lin: &[IntVec<T>], n: usize) -> (Vec<IntVec<T>>, Vec<IntVec<T>>) {
    let gens: Vec<IntVec<T>> = gens
        .iter()
        .filter_map(|g| g.primitive().ok())
        .sorted()
        .dedup()
        .collect();
    let all = [gens.clone(), lin.to_vec()].concat();
    let equations = kernel_basis(&all, n);
    let d = n - equations.len();
    let r = lin.len();
    if d <= r {
        return (equations, Vec::new());
    }
    let mut facets = Vec::new();
    for subset in gens.iter().combinations(d - 1 - r) {
        let rows: Vec<&IntVec<T>> = subset.into_iter().chain(lin).chain(&equations).collect();
        let u = cofactor_normal(&rows, n);
        let Ok(u) = u.primitive() else { continue };
        let mut pos = false;
        let mut neg = false;
        for g in &gens {
            let s = u.dot(g);
            pos |= s.is_positive();
            neg |= s.is_negative();
            if pos && neg {
                break;
            }
        }
        match (pos, neg) {
            (_, false) => facets.push(u),
            (false, true) => facets.push(-&u),
            (true, true) => {}
        }
    }
    facets.sort();
    facets.dedup();
    (equations, facets)
}

#[cfg(test)]
mod tests;
