//! Demazure roots, the homogeneous locally nilpotent derivations they define,
//! and the descent of those derivations to quasi-affine toric varieties.
//!
//! For an extremal ray `ρ` of `σ` with primitive generator `v`, the roots are
//! the lattice points `e` of `(σ_ρ)^∨` with `<e, v> = -1`, where `σ_ρ` is the
//! cone on the remaining rays. The root `(ρ, e)` acts on monomials by
//! `χ^m ↦ <m, v> χ^(m + e)`.

use std::collections::{BTreeSet, HashMap};

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::fans::Fan;
use crate::lattice_sets::{enumerate_affine_box, ConicLatticeSet, SlicePiece, DEFAULT_SEARCH_CAP};
use crate::linalg::{kernel_basis, IntVec, Sublattice};
use crate::scalar::Int;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DemazureRoot<T> {
    rho: IntVec<T>,
    e: IntVec<T>,
}

impl<T: Int> DemazureRoot<T> {
    /// Checks that `rho` spans an extremal ray of `sigma` and `e` is a root for it.
    pub fn new(sigma: &Cone<T>, rho: &IntVec<T>, e: IntVec<T>) -> Result<Self> {
        let rho = extremal_ray(sigma, rho)?;
        e.check_len(sigma.ambient_rank())?;
        if e.dot(&rho) != -T::one() {
            return Err(Error::InvalidRoot(rho.to_string(), format!("<{e}, {rho}> must be -1")));
        }
        if !sigma.minus_ray(&rho)?.dual().contains(&e) {
            return Err(Error::InvalidRoot(rho.to_string(), format!("{e} is negative on another ray")));
        }
        Ok(DemazureRoot { rho, e })
    }

    pub fn rho(&self) -> &IntVec<T> {
        &self.rho
    }

    pub fn e(&self) -> &IntVec<T> {
        &self.e
    }
}

fn extremal_ray<T: Int>(sigma: &Cone<T>, rho: &IntVec<T>) -> Result<IntVec<T>> {
    rho.check_len(sigma.ambient_rank())?;
    match rho.primitive() {
        Ok(p) if sigma.is_strongly_convex() && sigma.has_ray(&p) => Ok(p),
        _ => Err(Error::NotExtremalRay(rho.to_string())),
    }
}

/// `coeff · χ^exponent`. A zero term keeps the exponent dictated by the grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialTerm<T> {
    pub coeff: T,
    pub exponent: IntVec<T>,
}

impl<T: Int> MonomialTerm<T> {
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// `S_ρ`: lattice points of `(σ_ρ)^∨` at level `-1` on `ρ`.
pub fn root_set<T: Int>(sigma: &Cone<T>, rho: &IntVec<T>) -> Result<ConicLatticeSet<T>> {
    let piece = root_piece(sigma, rho)?;
    if piece.nonempty_witness(DEFAULT_SEARCH_CAP)?.found().is_none() {
        return Err(Error::Internal(format!("no root found for the ray {rho} of {sigma}")));
    }
    ConicLatticeSet::new(vec![piece], sigma.ambient_rank())
}

fn root_piece<T: Int>(sigma: &Cone<T>, rho: &IntVec<T>) -> Result<SlicePiece<T>> {
    let rho = extremal_ray(sigma, rho)?;
    let base = sigma.minus_ray(&rho)?.dual();
    Ok(SlicePiece::lattice_cone(base).with_level(rho, -T::one()))
}

/// Applies `∂_{ρ,e}` to the monomial `χ^m`.
pub fn apply_derivation<T: Int>(sigma: &Cone<T>, r: &DemazureRoot<T>, m: &IntVec<T>) -> Result<MonomialTerm<T>> {
    m.check_len(sigma.ambient_rank())?;
    if !sigma.dual().contains(m) {
        return Err(Error::ExponentOutsideCone(m.to_string()));
    }
    let term = MonomialTerm { coeff: m.dot(&r.rho), exponent: m + &r.e };
    Ok(term)
}

/// Number of applications of `∂` needed to send `χ^m` to zero.
pub fn annihilation_steps<T: Int>(sigma: &Cone<T>, r: &DemazureRoot<T>, m: &IntVec<T>) -> Result<u64> {
    let dual = sigma.dual();
    if !dual.contains(m) {
        return Err(Error::ExponentOutsideCone(m.to_string()));
    }
    // the coefficient after k steps is a product of the levels seen so far,
    // so it vanishes exactly when a level does
    let mut exponent = m.clone();
    let mut steps = 0u64;
    loop {
        steps += 1;
        if exponent.dot(&r.rho).is_zero() {
            return Ok(steps);
        }
        exponent = &exponent + &r.e;
        if !dual.contains(&exponent) {
            return Err(Error::Internal(format!("∂ left the weight cone at {exponent}")));
        }
    }
}

/// Lattice points of `σ^∨` with `‖m‖∞ <= bound`, in lexicographic order.
pub fn dual_box_points<T: Int>(sigma: &Cone<T>, bound: u64) -> Vec<IntVec<T>> {
    let n = sigma.ambient_rank();
    let dual = sigma.dual();
    let units: Vec<IntVec<T>> = (0..n).map(|i| IntVec::unit(n, i)).collect();
    let mut out = Vec::new();
    let b = T::from_u64(bound).expect("bound fits");
    enumerate_affine_box(&IntVec::zeros(n), &units, &b, &mut |m| {
        if dual.contains(m) {
            out.push(m.clone());
        }
    });
    out.sort();
    out
}

/// Checks that every `χ^m` with `‖m‖∞ <= degree_bound` dies after exactly
/// `<m, v_ρ> + 1` applications while staying inside the weight cone.
pub fn verify_locally_nilpotent<T: Int>(sigma: &Cone<T>, r: &DemazureRoot<T>, degree_bound: u64) -> bool {
    if degree_bound == 0 {
        return false;
    }
    dual_box_points(sigma, degree_bound).iter().all(|m| {
        let expected = m.dot(&r.rho).to_u64().map(|k| k + 1);
        annihilation_steps(sigma, r, m).ok() == expected
    })
}

/// Whether `∂_{ρ,e}` leaves the ideal of the orbit closure `V(τ)` invariant:
/// `ρ ⊄ τ`, or `e` is not orthogonal to `τ_ρ`.
pub fn preserves_orbit_closure<T: Int>(sigma: &Cone<T>, r: &DemazureRoot<T>, tau: &Cone<T>) -> Result<bool> {
    if !sigma.is_face(tau) {
        return Err(Error::NotAFace);
    }
    Ok(criterion(r, tau))
}

fn criterion<T: Int>(r: &DemazureRoot<T>, tau: &Cone<T>) -> bool {
    if !tau.has_ray(&r.rho) {
        return true;
    }
    tau.rays().iter().filter(|w| **w != r.rho).any(|w| !r.e.dot(w).is_zero())
}

/// Direct check of the defining condition on a box: for every
/// `m ∈ σ^∨_M` off `τ^⊥ ∪ ρ^⊥`, `m + e` must stay off `τ^⊥`.
pub fn brute_force_invariance<T: Int>(sigma: &Cone<T>, r: &DemazureRoot<T>, tau: &Cone<T>, bx: u64) -> bool {
    let off = |m: &IntVec<T>| tau.rays().iter().any(|w| !m.dot(w).is_zero());
    dual_box_points(sigma, bx)
        .iter()
        .filter(|m| off(m) && !m.dot(&r.rho).is_zero())
        .all(|m| off(&(m + &r.e)))
}

/// Rays of a face and, for each pairing key, the bitmask of rays of σ that
/// some box point with that key does not annihilate.
type FaceTable = (Vec<Vec<i64>>, HashMap<Vec<i64>, u64>);

/// Batched form of [`brute_force_invariance`] for one cone: the box is scanned
/// once per face, indexing points by their pairings with the face's rays.
pub struct InvarianceOracle {
    sigma_rays: Vec<Vec<i64>>,
    faces: Vec<FaceTable>,
    face_index: HashMap<Vec<Vec<i64>>, usize>,
}

impl InvarianceOracle {
    pub fn new<T: Int>(sigma: &Cone<T>, bx: u64) -> Result<Self> {
        let to64 = |v: &IntVec<T>| v.to_i64s().ok_or_else(|| Error::InvalidParameter(format!("{v} overflows i64")));
        let sigma64: Cone<i64> =
            sigma.convert().ok_or_else(|| Error::InvalidParameter("cone entries overflow i64".into()))?;
        let sigma_rays: Vec<Vec<i64>> = sigma.rays().iter().map(to64).collect::<Result<_>>()?;
        if sigma_rays.len() > 64 {
            return Err(Error::InvalidParameter("too many rays for the oracle".into()));
        }
        let points: Vec<Vec<i64>> =
            dual_box_points(&sigma64, bx).into_iter().map(|m| m.into_coords()).collect();
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let masks: Vec<u64> = points
            .iter()
            .map(|m| {
                sigma_rays.iter().enumerate().fold(0u64, |acc, (i, r)| if dot(m, r) != 0 { acc | 1 << i } else { acc })
            })
            .collect();
        let mut faces = Vec::new();
        let mut face_index = HashMap::new();
        for f in sigma.faces()? {
            let rays: Vec<Vec<i64>> = f.cone.rays().iter().map(to64).collect::<Result<_>>()?;
            let mut table: HashMap<Vec<i64>, u64> = HashMap::new();
            for (m, mask) in points.iter().zip(&masks) {
                let key: Vec<i64> = rays.iter().map(|w| dot(m, w)).collect();
                if key.iter().any(|k| *k != 0) {
                    *table.entry(key).or_insert(0) |= mask;
                }
            }
            face_index.insert(rays.clone(), faces.len());
            faces.push((rays, table));
        }
        Ok(InvarianceOracle { sigma_rays, faces, face_index })
    }

    /// Same verdict as [`brute_force_invariance`] with the box given to [`InvarianceOracle::new`].
    pub fn check<T: Int>(&self, r: &DemazureRoot<T>, tau: &Cone<T>) -> Result<bool> {
        let rays: Vec<Vec<i64>> = tau.rays().iter().map(|w| w.to_i64s()).collect::<Option<_>>().ok_or(Error::NotAFace)?;
        let &idx = self.face_index.get(&rays).ok_or(Error::NotAFace)?;
        let rho = r.rho.to_i64s().ok_or(Error::NotAFace)?;
        let e = r.e.to_i64s().ok_or_else(|| Error::InvalidParameter("root overflows i64".into()))?;
        let bit = self.sigma_rays.iter().position(|x| *x == rho).ok_or_else(|| Error::NotExtremalRay(r.rho.to_string()))?;
        let (face_rays, table) = &self.faces[idx];
        // a violating m has pairing key exactly -key(e) with τ's rays
        let target: Vec<i64> = face_rays.iter().map(|w| -w.iter().zip(&e).map(|(a, b)| a * b).sum::<i64>()).collect();
        Ok(table.get(&target).is_none_or(|mask| mask & (1 << bit) == 0))
    }
}

/// Condition (⊛): the derivation descends to the quasi-affine variety of `f`.
pub fn descends_to_quasi_affine<T: Int>(f: &Fan<T>, r: &DemazureRoot<T>) -> Result<bool> {
    f.require_quasi_affine()?;
    Ok(f.boundary_faces()?.iter().all(|b| criterion(r, &b.face)))
}

/// `D(X)` as a union over the rays of `σ` of `S_ρ` minus the subspaces
/// `(τ_i)_ρ^⊥` for the boundary faces `τ_i` containing `ρ`.
pub fn weight_set_d<T: Int>(f: &Fan<T>) -> Result<ConicLatticeSet<T>> {
    f.require_quasi_affine()?;
    let sigma = f.support_hull();
    let n = f.ambient_rank();
    let boundary = f.boundary_faces()?;
    let mut pieces = Vec::new();
    for rho in sigma.rays() {
        let mut piece = root_piece(sigma, rho)?;
        for b in boundary.iter().filter(|b| b.face.has_ray(rho)) {
            let rest = b.face.minus_ray(rho)?;
            let orth = kernel_basis(&rest.generators(), n);
            piece = piece.excluding(Sublattice::span(&orth, n));
        }
        pieces.push(piece);
    }
    ConicLatticeSet::new(pieces, n)
}

/// Every root `(ρ, e)` with `e ∈ D(X)` and `‖e‖∞ <= bound`, sorted by `(ρ, e)`.
pub fn enumerate_roots<T: Int>(f: &Fan<T>, bound: u64) -> Result<Vec<DemazureRoot<T>>> {
    if bound == 0 {
        return Err(Error::InvalidParameter("bound must be at least 1".into()));
    }
    let d = weight_set_d(f)?;
    let sigma = f.support_hull();
    let mut roots = BTreeSet::new();
    for (piece, rho) in d.pieces().iter().zip(sigma.rays()) {
        let single = ConicLatticeSet::new(vec![piece.clone()], f.ambient_rank())?;
        for e in single.members_in_box(bound)? {
            roots.insert(DemazureRoot { rho: rho.clone(), e });
        }
    }
    Ok(roots.into_iter().collect())
}

#[cfg(test)]
mod tests;
