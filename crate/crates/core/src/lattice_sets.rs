//! Structured lattice sets and their exact asymptotic cones.
//!
//! A [`SlicePiece`] is the set of points `x = v + y` where `v` is a fixed
//! translation and `y` ranges over lattice points of a rational cone `C`,
//! optionally cut by an affine hyperplane `<y, f> = level`, optionally
//! restricted to the relative interior of `C`, and optionally avoiding finitely
//! many rational subspaces. A [`ConicLatticeSet`] is a finite union of pieces.
//!
//! The asymptotic cone of a nonempty piece is `C ∩ f^⊥` (or `C` when unsliced).
//! It is only reported once a lattice point `w` of the piece is exhibited with
//! `w + (C ∩ f^⊥ ∩ Λ)` inside the piece, so both inclusions are certified.

use std::collections::BTreeSet;


use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, kernel_basis, IntMatrix, IntVec, Sublattice};
use crate::scalar::{div_ceil, div_floor, Int};

/// Default cap on the ℓ∞ radius of the fallback witness search.
pub const DEFAULT_SEARCH_CAP: u64 = 1024;

/// Affine constraint `<y, functional> = value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level<T> {
    pub functional: IntVec<T>,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlicePiece<T> {
    pub base_cone: Cone<T>,
    pub level: Option<Level<T>>,
    pub translation: IntVec<T>,
    pub interior_only: bool,
    /// Rational subspaces (as saturated lattices) whose points are removed.
    pub excluded: Vec<Sublattice<T>>,
    pub lattice: Sublattice<T>,
}

/// Outcome of a witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<T> {
    Found(IntVec<T>),
    /// Nothing found with slice parameters up to `bound` in ℓ∞ norm.
    /// `proven_empty` is set when the constraints are contradictory outright.
    Absent { bound: u64, proven_empty: bool },
}

impl<T: Int> Witness<T> {
    pub fn found(self) -> Option<IntVec<T>> {
        match self {
            Witness::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Affine lattice `origin + span_Z(steps)` carrying the piece, with the
/// recession cone of the real slice.
#[derive(Clone, Debug)]
struct Geometry<T> {
    recession: Cone<T>,
    /// `None` when the slice has no lattice point at all.
    origin: Option<IntVec<T>>,
    steps: Vec<IntVec<T>>,
}

impl<T: Int> SlicePiece<T> {
    /// Lattice points of `cone` for the full lattice `Z^n`.
    pub fn lattice_cone(cone: Cone<T>) -> Self {
        let n = cone.ambient_rank();
        SlicePiece {
            base_cone: cone,
            level: None,
            translation: IntVec::zeros(n),
            interior_only: false,
            excluded: Vec::new(),
            lattice: Sublattice::full(n),
        }
    }

    pub fn with_level(mut self, functional: IntVec<T>, value: T) -> Self {
        self.level = Some(Level { functional, value });
        self
    }

    pub fn translated(mut self, v: &IntVec<T>) -> Self {
        self.translation = &self.translation + v;
        self
    }

    pub fn interior(mut self) -> Self {
        self.interior_only = true;
        self
    }

    pub fn excluding(mut self, subspace: Sublattice<T>) -> Self {
        self.excluded.push(subspace.saturation());
        self
    }

    pub fn with_lattice(mut self, lattice: Sublattice<T>) -> Self {
        self.lattice = lattice;
        self
    }

    pub fn ambient_rank(&self) -> usize {
        self.base_cone.ambient_rank()
    }

    pub fn contains(&self, x: &IntVec<T>) -> bool {
        if x.len() != self.ambient_rank() {
            return false;
        }
        let y = x - &self.translation;
        self.lattice.contains(&y) && self.contains_untranslated(&y)
    }

    /// All constraints except lattice membership, on the untranslated point.
    fn contains_untranslated(&self, y: &IntVec<T>) -> bool {
        if let Some(l) = &self.level {
            if l.functional.dot(y) != l.value {
                return false;
            }
        }
        let in_cone = if self.interior_only {
            self.base_cone.contains_relint(y)
        } else {
            self.base_cone.contains(y)
        };
        in_cone && !self.excluded.iter().any(|w| w.contains(y))
    }

    fn check_lattice(&self) -> Result<Sublattice<T>> {
        let c = &self.base_cone;
        if c.generators().iter().any(|g| !self.lattice.span_contains(g)) {
            return Err(Error::UnsupportedPiece("base cone leaves the span of the lattice".into()));
        }
        Ok(self.lattice.intersect_kernel(c.equations()))
    }

    fn geometry(&self) -> Result<Geometry<T>> {
        let n = self.ambient_rank();
        let lattice_u = self.check_lattice()?;
        let c = &self.base_cone;
        let Some(level) = &self.level else {
            return Ok(Geometry {
                recession: c.clone(),
                origin: Some(IntVec::zeros(n)),
                steps: lattice_u.basis().to_vec(),
            });
        };
        level.functional.check_len(n)?;
        let f = &level.functional;
        let recession = c.slice(f)?;
        let steps = lattice_u.intersect_kernel(std::slice::from_ref(f)).basis().to_vec();

        if level.value.is_zero() {
            let mut origin = Some(IntVec::zeros(n));
            if self.interior_only && !c.contains_relint(&recession.relint_point()) {
                // the hyperplane misses the relative interior
                origin = None;
            }
            return Ok(Geometry { recession, origin, steps });
        }

        let sign_ok = c.generators().iter().any(|g| {
            let s = f.dot(g);
            !s.is_zero() && s.is_negative() == level.value.is_negative()
        });
        let origin = if sign_ok { solve_level(&lattice_u, f, &level.value) } else { None };
        Ok(Geometry { recession, origin, steps })
    }

    fn check_exclusions(&self) -> Result<()> {
        let c = &self.base_cone;
        for w in &self.excluded {
            let eqs = kernel_basis(w.basis(), self.ambient_rank());
            let meet = c.restrict(&eqs)?;
            if c.contains_relint(&meet.relint_point()) {
                return Err(Error::UnsupportedPiece(
                    "an excluded subspace meets the relative interior of the base cone".into(),
                ));
            }
        }
        Ok(())
    }

    /// A member of the piece. When `strict` the member also lies in the
    /// relative interior of the base cone.
    fn witness_with(&self, geo: &Geometry<T>, strict: bool, cap: u64) -> Witness<T> {
        let Some(origin) = &geo.origin else {
            return Witness::Absent { bound: cap, proven_empty: true };
        };
        let accept = |y: &IntVec<T>| {
            self.contains_untranslated(y) && (!strict || self.base_cone.contains_relint(y))
        };
        // origin + k * c with c in relint(recession) ∩ Λ: linear in k per facet
        let lattice_u = self.lattice.intersect_kernel(self.base_cone.equations());
        let c = geo.recession.rays().iter().fold(IntVec::zeros(self.ambient_rank()), |acc, r| {
            let k = lattice_u.denominator_of(r).unwrap_or_else(T::one);
            acc.add_scaled(&k, r)
        });
        let strict_facets = strict || self.interior_only;
        let mut k_min = Some(T::zero());
        for a in self.base_cone.ineqs() {
            let (g, s) = (a.dot(origin), a.dot(&c));
            if s.is_zero() {
                let ok = if strict_facets { g.is_positive() } else { !g.is_negative() };
                if !ok {
                    k_min = None;
                    break;
                }
                continue;
            }
            // need g + k s > 0 (or >= 0) with s > 0
            let bound = if strict_facets { div_floor(&-g, &s) + T::one() } else { div_ceil(&-g, &s) };
            if let Some(k) = &mut k_min {
                if bound > *k {
                    *k = bound;
                }
            }
        }
        if let Some(k) = k_min {
            let mut y = origin.add_scaled(&k, &c);
            for _ in 0..=self.excluded.len() {
                if accept(&y) {
                    return Witness::Found(&y + &self.translation);
                }
                if c.is_zero() {
                    break;
                }
                y = &y + &c;
            }
        }
        // fallback: expanding boxes in slice coordinates
        let mut lo = 0u64;
        let mut hi = 1u64;
        while lo < cap {
            let hi_c = hi.min(cap);
            if let Some(y) = search_shell(origin, &geo.steps, lo, hi_c, &accept) {
                return Witness::Found(&y + &self.translation);
            }
            lo = hi_c;
            hi = hi_c * 2;
        }
        Witness::Absent { bound: cap, proven_empty: false }
    }

    /// A member of the piece, searching up to `cap` when no direct construction applies.
    pub fn nonempty_witness(&self, cap: u64) -> Result<Witness<T>> {
        let geo = self.geometry()?;
        Ok(self.witness_with(&geo, false, cap))
    }

    /// Exact asymptotic cone; `None` for an empty piece.
    pub fn asymptotic_cone(&self, cap: u64) -> Result<Option<Cone<T>>> {
        let geo = self.geometry()?;
        if geo.origin.is_none() {
            return Ok(None);
        }
        self.check_exclusions()?;
        // the lower bound set w + (K ∩ Λ) must stay inside the piece, which needs
        // an interior witness as soon as anything is cut away
        let strict = self.interior_only || !self.excluded.is_empty();
        match self.witness_with(&geo, strict, cap) {
            Witness::Found(_) => Ok(Some(geo.recession)),
            Witness::Absent { proven_empty: true, .. } => Ok(None),
            Witness::Absent { bound, .. } => Err(Error::UnsupportedPiece(format!(
                "no certifying lattice point within radius {bound}"
            ))),
        }
    }

    /// Calls `visit` on every member with `lo <= ‖x‖∞ <= hi`.
    pub fn for_each_member_in_shell(&self, lo: &T, hi: &T, visit: &mut dyn FnMut(&IntVec<T>)) -> Result<()> {
        let geo = self.geometry()?;
        let Some(origin) = &geo.origin else { return Ok(()) };
        let start = &self.translation + origin;
        enumerate_affine_box(&start, &geo.steps, hi, &mut |x| {
            let norm = x.norm_inf();
            if norm >= *lo && self.contains_untranslated(&(x - &self.translation)) {
                visit(x);
            }
        });
        Ok(())
    }

    /// Group generators of the piece: a witness `w` together with
    /// `w + g` for `g` running through lattice generators of the recession
    /// cone's span, each pushed into the cone. Empty for an empty piece.
    pub fn group_generators(&self, cap: u64) -> Result<Vec<IntVec<T>>> {
        let geo = self.geometry()?;
        if geo.origin.is_none() {
            return Ok(Vec::new());
        }
        let strict = self.interior_only || !self.excluded.is_empty();
        let w = match self.witness_with(&geo, strict, cap) {
            Witness::Found(w) => w,
            Witness::Absent { proven_empty: true, .. } => return Ok(Vec::new()),
            Witness::Absent { bound, .. } => {
                return Err(Error::UnsupportedPiece(format!("no lattice point within radius {bound}")))
            }
        };
        let k = &geo.recession;
        let lattice_k = Sublattice::span(&geo.steps, self.ambient_rank()).intersect_kernel(k.equations());
        let c = k.rays().iter().fold(IntVec::zeros(self.ambient_rank()), |acc, r| {
            let m = lattice_k.denominator_of(r).unwrap_or_else(T::one);
            acc.add_scaled(&m, r)
        });
        let mut out = vec![w.clone()];
        if !c.is_zero() {
            out.push(&w + &c);
        }
        for b in lattice_k.basis() {
            // smallest m >= 0 with m c + b in K
            let mut m = T::zero();
            for a in k.ineqs() {
                let (g, s) = (a.dot(b), a.dot(&c));
                if s.is_positive() {
                    let need = div_ceil(&-g, &s);
                    if need > m {
                        m = need;
                    }
                }
            }
            let g = c.scale(&m);
            let g = &g + b;
            if !k.contains(&g) {
                return Err(Error::Internal(format!("lattice generator {b} could not be pushed into {k}")));
            }
            out.push(&w + &g);
        }
        Ok(out)
    }

    pub fn convert<U: Int>(&self) -> Option<SlicePiece<U>> {
        Some(SlicePiece {
            base_cone: self.base_cone.convert()?,
            level: match &self.level {
                Some(l) => Some(Level { functional: l.functional.convert()?, value: l.value.convert()? }),
                None => None,
            },
            translation: self.translation.convert()?,
            interior_only: self.interior_only,
            excluded: self.excluded.iter().map(|w| convert_lattice(w)).collect::<Option<_>>()?,
            lattice: convert_lattice(&self.lattice)?,
        })
    }
}

fn convert_lattice<T: Int, U: Int>(l: &Sublattice<T>) -> Option<Sublattice<U>> {
    let basis = l.basis().iter().map(|b| b.convert()).collect::<Option<Vec<IntVec<U>>>>()?;
    Some(Sublattice::span(&basis, l.ambient_rank()))
}

/// A lattice point `γ` of `lattice` with `<γ, f> = value`, if one exists.
fn solve_level<T: Int>(lattice: &Sublattice<T>, f: &IntVec<T>, value: &T) -> Option<IntVec<T>> {
    if lattice.rank() == 0 {
        return None;
    }
    let images: Vec<IntVec<T>> = lattice.basis().iter().map(|b| IntVec::new(vec![b.dot(f)])).collect();
    let m = IntMatrix::new(images, 1).expect("column");
    let (h, u) = hermite_normal_form(&m);
    let g = h.get(0, 0).clone();
    if g.is_zero() || !value.is_multiple_of(&g) {
        return None;
    }
    let t = u.row(0).scale(&(value.clone() / g));
    Some(lattice.combine(t.coords()))
}

/// Visits `origin + sum t_i steps_i` for every integer `t` with the point
/// inside the ℓ∞ box of radius `bound`. `steps` must be in Hermite normal form,
/// so each pivot coordinate is pinned by a single parameter.
pub(crate) fn enumerate_affine_box<T: Int>(
    origin: &IntVec<T>,
    steps: &[IntVec<T>],
    bound: &T,
    visit: &mut dyn FnMut(&IntVec<T>),
) {
    fn rec<T: Int>(x: &IntVec<T>, steps: &[IntVec<T>], bound: &T, visit: &mut dyn FnMut(&IntVec<T>)) {
        let Some((h, rest)) = steps.split_first() else {
            if x.norm_inf() <= *bound {
                visit(x);
            }
            return;
        };
        let p = (0..h.len()).find(|&j| !h[j].is_zero()).expect("nonzero step");
        let (lo, hi) = (div_ceil(&(-bound.clone() - x[p].clone()), &h[p]), div_floor(&(bound.clone() - x[p].clone()), &h[p]));
        let mut t = lo;
        while t <= hi {
            rec(&x.add_scaled(&t, h), rest, bound, visit);
            t = t + T::one();
        }
    }
    let hnf_steps = if steps.is_empty() {
        Vec::new()
    } else {
        Sublattice::span(steps, origin.len()).basis().to_vec()
    };
    rec(origin, &hnf_steps, bound, visit);
}

/// First accepted point with parameter radius in `(lo, hi]`.
fn search_shell<T: Int>(
    origin: &IntVec<T>,
    steps: &[IntVec<T>],
    lo: u64,
    hi: u64,
    accept: &dyn Fn(&IntVec<T>) -> bool,
) -> Option<IntVec<T>> {
    let k = steps.len();
    if k == 0 {
        return (lo == 0 && accept(origin)).then(|| origin.clone());
    }
    let hi = hi as i64;
    let lo = lo as i64;
    let mut t = vec![-hi; k];
    loop {
        let norm = t.iter().map(|c| c.abs()).max().unwrap_or(0);
        if norm > lo || (lo == 0 && norm == 0) {
            let mut y = origin.clone();
            for (c, s) in t.iter().zip(steps) {
                y = y.add_scaled(&T::from_i64_exact(*c), s);
            }
            if accept(&y) {
                return Some(y);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            if t[i] < hi {
                t[i] += 1;
                break;
            }
            t[i] = -hi;
            i += 1;
        }
    }
}

/// Finite union of slice pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConicLatticeSet<T> {
    ambient: usize,
    pieces: Vec<SlicePiece<T>>,
}

impl<T: Int> ConicLatticeSet<T> {
    pub fn new(pieces: Vec<SlicePiece<T>>, rank: usize) -> Result<Self> {
        for p in &pieces {
            if p.ambient_rank() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: p.ambient_rank() });
            }
        }
        Ok(ConicLatticeSet { ambient: rank, pieces })
    }

    pub fn empty(rank: usize) -> Self {
        ConicLatticeSet { ambient: rank, pieces: Vec::new() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[SlicePiece<T>] {
        &self.pieces
    }

    pub fn contains(&self, x: &IntVec<T>) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn translated(&self, v: &IntVec<T>) -> Self {
        ConicLatticeSet {
            ambient: self.ambient,
            pieces: self.pieces.iter().cloned().map(|p| p.translated(v)).collect(),
        }
    }

    /// Union with another set of the same rank.
    pub fn union(&self, other: &Self) -> Self {
        ConicLatticeSet { ambient: self.ambient, pieces: [self.pieces.clone(), other.pieces.clone()].concat() }
    }

    /// The asymptotic cone as a sorted list of distinct cones whose union it is.
    /// Empty pieces contribute nothing; a finite nonempty set gives `[{0}]`.
    pub fn asymptotic_cone(&self, cap: u64) -> Result<Vec<Cone<T>>> {
        let mut out = BTreeSet::new();
        for p in &self.pieces {
            if let Some(k) = p.asymptotic_cone(cap)? {
                out.insert(k);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Primitive directions of all members `x` with `radius <= ‖x‖∞ <= 2 radius`.
    pub fn sample_directions(&self, radius: u64) -> Result<Vec<IntVec<T>>> {
        if radius == 0 {
            return Err(Error::InvalidParameter("radius must be at least 1".into()));
        }
        let lo = T::from_u64(radius).ok_or_else(|| Error::InvalidParameter("radius overflows".into()))?;
        let hi = lo.clone() + lo.clone();
        let mut dirs = BTreeSet::new();
        for p in &self.pieces {
            p.for_each_member_in_shell(&lo, &hi, &mut |x| {
                dirs.insert(x.primitive().expect("nonzero member of the shell"));
            })?;
        }
        Ok(dirs.into_iter().collect())
    }

    /// Every member with `‖x‖∞ <= bound`, sorted and deduplicated.
    pub fn members_in_box(&self, bound: u64) -> Result<Vec<IntVec<T>>> {
        let hi = T::from_u64(bound).ok_or_else(|| Error::InvalidParameter("bound overflows".into()))?;
        let mut out = BTreeSet::new();
        for p in &self.pieces {
            p.for_each_member_in_shell(&T::zero(), &hi, &mut |x| {
                out.insert(x.clone());
            })?;
        }
        Ok(out.into_iter().collect())
    }

    pub fn convert<U: Int>(&self) -> Option<ConicLatticeSet<U>> {
        Some(ConicLatticeSet {
            ambient: self.ambient,
            pieces: self.pieces.iter().map(|p| p.convert()).collect::<Option<_>>()?,
        })
    }
}

/// Given `γ₋ ∈ C` at level −1 and `γ₀` in the relative interior of `C` at level 0
/// (levels measured by `h0_normal`), returns `m γ₀ − γ₋` for the least `m >= 0`
/// that puts it back into `C`; the result sits at level 1.
pub fn transfer_lattice_point<T: Int>(
    c: &Cone<T>,
    h0_normal: &IntVec<T>,
    gamma_minus: &IntVec<T>,
    gamma0: &IntVec<T>,
) -> Result<IntVec<T>> {
    let n = c.ambient_rank();
    for v in [h0_normal, gamma_minus, gamma0] {
        v.check_len(n)?;
    }
    if !c.contains(gamma_minus) || h0_normal.dot(gamma_minus) != -T::one() {
        return Err(Error::PreconditionViolated("γ₋ must lie in C at level −1".into()));
    }
    if !h0_normal.dot(gamma0).is_zero() {
        return Err(Error::PreconditionViolated("γ₀ must lie at level 0".into()));
    }
    if !c.contains_relint(gamma0) {
        return Err(Error::PreconditionViolated("γ₀ lies on the boundary of C".into()));
    }
    let mut m = T::zero();
    for a in c.ineqs() {
        // m <γ₀, a> - <γ₋, a> >= 0 with <γ₀, a> > 0
        let need = div_ceil(&a.dot(gamma_minus), &a.dot(gamma0));
        if need > m {
            m = need;
        }
    }
    let out = &gamma0.scale(&m) - gamma_minus;
    debug_assert!(c.contains(&out) && h0_normal.dot(&out).is_one());
    Ok(out)
}
