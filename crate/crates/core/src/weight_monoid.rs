//! Weight monoids `σ^∨ ∩ M` and their reconstruction from the weight set `D(X)`
//! as `Conv(D_∞) ∩ Span_Z(D)`.

use std::collections::BTreeSet;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice_sets::{ConicLatticeSet, DEFAULT_SEARCH_CAP};
use crate::linalg::{kernel_basis, IntVec, Sublattice};
use crate::scalar::Int;

/// The monoid of lattice points of `lattice` inside `cone`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSemigroup<T> {
    pub cone: Cone<T>,
    pub lattice: Sublattice<T>,
}

impl<T: Int> AffineSemigroup<T> {
    pub fn new(cone: Cone<T>, lattice: Sublattice<T>) -> Result<Self> {
        if cone.ambient_rank() != lattice.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: cone.ambient_rank(), found: lattice.ambient_rank() });
        }
        Ok(AffineSemigroup { cone, lattice })
    }

    pub fn ambient_rank(&self) -> usize {
        self.cone.ambient_rank()
    }

    pub fn contains(&self, m: &IntVec<T>) -> bool {
        m.len() == self.ambient_rank() && self.lattice.contains(m) && self.cone.contains(m)
    }

    /// Minimal generators of a pointed monoid of rank at most three.
    ///
    /// Experimental: a plain search through the box spanned by the
    /// fundamental parallelepipeds, reducing candidates by increasing degree.
    pub fn hilbert_basis_experimental(&self) -> Result<Vec<IntVec<T>>> {
        let n = self.ambient_rank();
        if n > 3 {
            return Err(Error::InvalidParameter("Hilbert bases are only offered up to rank 3".into()));
        }
        let c = self.cone.restrict(&kernel_basis(self.lattice.basis(), n))?;
        if !c.is_strongly_convex() {
            return Err(Error::NonStronglyConvex { lineality: c.lineality_rank() });
        }
        let lattice_c = self.lattice.intersect_kernel(c.equations());
        let rays: Vec<IntVec<T>> = c
            .rays()
            .iter()
            .map(|r| r.scale(&lattice_c.denominator_of(r).unwrap_or_else(T::one)))
            .collect();
        let bound = rays.iter().fold(T::zero(), |acc, r| acc + r.norm_inf());
        // degree: a functional positive on every nonzero point of the cone
        let grading = c.dual().relint_point();
        let mut candidates = Vec::new();
        let hi = bound;
        crate::lattice_sets::enumerate_affine_box(&IntVec::zeros(n), lattice_c.basis(), &hi, &mut |x| {
            if !x.is_zero() && c.contains(x) {
                candidates.push(x.clone());
            }
        });
        candidates.sort_by(|a, b| grading.dot(a).cmp(&grading.dot(b)).then_with(|| a.cmp(b)));
        let mut basis: Vec<IntVec<T>> = Vec::new();
        for x in candidates {
            let reducible = basis.iter().any(|h| {
                let rest = &x - h;
                !rest.is_zero() && c.contains(&rest)
            });
            if !reducible {
                basis.push(x);
            }
        }
        basis.sort();
        Ok(basis)
    }

    pub fn convert<U: Int>(&self) -> Option<AffineSemigroup<U>> {
        let basis = self.lattice.basis().iter().map(|b| b.convert()).collect::<Option<Vec<IntVec<U>>>>()?;
        Some(AffineSemigroup { cone: self.cone.convert()?, lattice: Sublattice::span(&basis, self.ambient_rank()) })
    }
}

/// Equality of the represented point sets, via canonical cone and lattice forms.
pub fn semigroup_equal<T: Int>(a: &AffineSemigroup<T>, b: &AffineSemigroup<T>) -> bool {
    if a.ambient_rank() != b.ambient_rank() || a.lattice != b.lattice {
        return false;
    }
    // only the part of each cone inside the lattice's span is visible
    let eqs = kernel_basis(a.lattice.basis(), a.ambient_rank());
    match (a.cone.restrict(&eqs), b.cone.restrict(&eqs)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// `σ^∨ ∩ M` for a strongly convex `σ`.
pub fn toric_weight_monoid<T: Int>(sigma: &Cone<T>) -> Result<AffineSemigroup<T>> {
    if !sigma.is_strongly_convex() {
        return Err(Error::NonStronglyConvex { lineality: sigma.lineality_rank() });
    }
    AffineSemigroup::new(sigma.dual(), Sublattice::full(sigma.ambient_rank()))
}

/// Which branch of the reconstruction produced the monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReconstructionCase {
    /// `dim Conv(D_∞) = dim Span_R(D)`.
    Convex,
    /// `D_∞` is a hyperplane; the monoid is the half-space missing `D`.
    HalfSpace,
    /// `D` is empty and the monoid is the whole lattice.
    Torus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction<T> {
    pub semigroup: AffineSemigroup<T>,
    pub case: ReconstructionCase,
    /// Window bound at which the group span stabilized.
    pub span_bound: u64,
}

const FIRST_WINDOW: u64 = 4;
const LAST_WINDOW: u64 = 64;

/// `Conv(D_∞) ∩ Span_Z(D)` with the half-space and torus degenerations.
pub fn reconstruct<T: Int>(d: &ConicLatticeSet<T>) -> Result<Reconstruction<T>> {
    reconstruct_with_cap(d, DEFAULT_SEARCH_CAP)
}

/// [`reconstruct`] with an explicit cap for the fallback witness search.
pub fn reconstruct_with_cap<T: Int>(d: &ConicLatticeSet<T>, cap: u64) -> Result<Reconstruction<T>> {
    let n = d.ambient_rank();
    let mut gens = Vec::new();
    for p in d.pieces() {
        gens.extend(p.group_generators(cap)?);
    }
    if gens.is_empty() {
        return Ok(Reconstruction {
            semigroup: AffineSemigroup::new(Cone::full_space(n), Sublattice::full(n))?,
            case: ReconstructionCase::Torus,
            span_bound: 0,
        });
    }
    let (lattice, span_bound) = stable_span(d, &gens)?;

    let ks = d.asymptotic_cone(cap)?;
    let hull_gens: Vec<IntVec<T>> = ks.iter().flat_map(|k| k.generators()).collect();
    let hull = Cone::from_rays(&hull_gens, n)?;
    let span_eqs = kernel_basis(lattice.basis(), n);
    if hull.generators().iter().any(|g| !lattice.span_contains(g)) {
        return Err(Error::MalformedWeightSet("asymptotic directions leave the span of the set".into()));
    }
    if hull.dim() == lattice.rank() {
        return Ok(Reconstruction {
            semigroup: AffineSemigroup::new(hull, lattice)?,
            case: ReconstructionCase::Convex,
            span_bound,
        });
    }
    if hull.dim() + 1 == lattice.rank() && hull.is_subspace() && ks.contains(&hull) {
        let normals = kernel_basis(&[hull.generators(), span_eqs.clone()].concat(), n);
        let [u] = normals.as_slice() else {
            return Err(Error::Internal("hyperplane normal is not unique".into()));
        };
        let w = &gens[0];
        let side = u.dot(w);
        if side.is_zero() {
            return Err(Error::MalformedWeightSet(format!("{w} lies on the asymptotic hyperplane")));
        }
        let u = if side.is_negative() { u.clone() } else { -u };
        let half = Cone::from_inequalities(&[u], &span_eqs, n)?;
        return Ok(Reconstruction {
            semigroup: AffineSemigroup::new(half, lattice)?,
            case: ReconstructionCase::HalfSpace,
            span_bound,
        });
    }
    Err(Error::MalformedWeightSet(format!(
        "convex hull of the asymptotic cone has dimension {} inside a span of rank {}",
        hull.dim(),
        lattice.rank()
    )))
}

/// Span of the constructive generators and of the members in growing windows,
/// stopped once a doubling of the window adds nothing.
fn stable_span<T: Int>(d: &ConicLatticeSet<T>, gens: &[IntVec<T>]) -> Result<(Sublattice<T>, u64)> {
    let n = d.ambient_rank();
    let fast: Option<ConicLatticeSet<i64>> = d.convert();
    let window = |b: u64| -> Result<Vec<IntVec<T>>> {
        match &fast {
            Some(f) => Ok(f.members_in_box(b)?.iter().filter_map(|x| x.convert()).collect()),
            None => d.members_in_box(b),
        }
    };
    let mut all: BTreeSet<IntVec<T>> = gens.iter().cloned().collect();
    all.extend(window(FIRST_WINDOW)?);
    let mut current = Sublattice::span(&all.iter().cloned().collect::<Vec<_>>(), n);
    let mut b = FIRST_WINDOW;
    while b < LAST_WINDOW {
        b *= 2;
        let mut grown = current.basis().to_vec();
        grown.extend(window(b)?);
        let next = Sublattice::span(&grown, n);
        if next == current {
            return Ok((current, b));
        }
        current = next;
    }
    Err(Error::MalformedWeightSet(format!("group span still growing at window {LAST_WINDOW}")))
}

/// `{k d : k >= 0}`, or `{k d : k = 0 or k >= s}` when `thinned`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NumericalMonoidWindow {
    pub modulus: u64,
    pub threshold: u64,
    pub thinned: bool,
}

impl NumericalMonoidWindow {
    pub fn new(modulus: u64, threshold: u64, thinned: bool) -> Result<Self> {
        if modulus < 2 || threshold < 2 {
            return Err(Error::InvalidParameter(format!("need d >= 2 and s >= 2, got d = {modulus}, s = {threshold}")));
        }
        Ok(NumericalMonoidWindow { modulus, threshold, thinned })
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 || !(x as u64).is_multiple_of(self.modulus) {
            return false;
        }
        let k = x as u64 / self.modulus;
        !self.thinned || k == 0 || k >= self.threshold
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub quotient: NumericalMonoidWindow,
    pub thinned: NumericalMonoidWindow,
    pub distinct: bool,
    /// Smallest element of the first monoid missing from the second.
    pub witness: Option<i64>,
}

/// Compares `{k d : k >= 0}` with `{k d : k = 0 or k >= s}`.
pub fn counterexample_monoids(d: u64, s: u64) -> Result<Counterexample> {
    let quotient = NumericalMonoidWindow::new(d, s, false)?;
    let thinned = NumericalMonoidWindow::new(d, s, true)?;
    // a difference, if any, shows up below (s + 1) d
    let limit = ((s + 1) * d) as i64;
    let witness = (0..=limit).find(|&x| quotient.contains(x) != thinned.contains(x));
    Ok(Counterexample { quotient, thinned, distinct: witness.is_some(), witness })
}
