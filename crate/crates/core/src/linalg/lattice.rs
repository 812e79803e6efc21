use num_traits::Zero;

use super::{hermite_normal_form, smith_normal_form, IntMatrix, IntVec};
use crate::scalar::{Int, Rational};

/// A subgroup of `Z^n`, held as the nonzero rows of its Hermite normal form.
///
/// The basis is canonical, so two sublattices are equal iff their
/// representations are equal. The zero sublattice has an empty basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice<T> {
    ambient: usize,
    basis: Vec<IntVec<T>>,
}

/// Group generated by `vs` inside `Z^rank`.
pub fn sublattice_span<T: Int>(vs: &[IntVec<T>], rank: usize) -> Sublattice<T> {
    Sublattice::span(vs, rank)
}

impl<T: Int> Sublattice<T> {
    pub fn span(vs: &[IntVec<T>], rank: usize) -> Self {
        for v in vs {
            assert_eq!(v.len(), rank, "vector length differs from the ambient rank");
        }
        if vs.is_empty() {
            return Sublattice { ambient: rank, basis: Vec::new() };
        }
        let m = IntMatrix::new(vs.to_vec(), rank).expect("lengths checked");
        let (h, _) = hermite_normal_form(&m);
        let basis = h.into_rows().into_iter().filter(|r| !r.is_zero()).collect();
        Sublattice { ambient: rank, basis }
    }

    pub fn zero(rank: usize) -> Self {
        Sublattice { ambient: rank, basis: Vec::new() }
    }

    pub fn full(rank: usize) -> Self {
        Sublattice { ambient: rank, basis: (0..rank).map(|i| IntVec::unit(rank, i)).collect() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec<T>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.ambient)
    }

    /// Integer membership by reduction against the echelon basis.
    pub fn contains(&self, v: &IntVec<T>) -> bool {
        self.coefficients(v).is_some()
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the sublattice.
    pub fn coefficients(&self, v: &IntVec<T>) -> Option<Vec<T>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.clone();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        let mut col = 0;
        for b in &self.basis {
            let pivot_col = (0..self.ambient).find(|&j| !b[j].is_zero()).expect("nonzero basis row");
            if rest.coords()[col..pivot_col].iter().any(|a| !a.is_zero()) {
                return None;
            }
            let (q, r) = rest[pivot_col].div_rem(&b[pivot_col]);
            if !r.is_zero() {
                return None;
            }
            rest = rest.add_scaled(&-q.clone(), b);
            coeffs.push(q);
            col = pivot_col + 1;
        }
        rest.is_zero().then_some(coeffs)
    }

    /// Membership in the real span of the sublattice.
    pub fn span_contains(&self, v: &IntVec<T>) -> bool {
        rank_of(&[self.basis.clone(), vec![v.clone()]].concat(), self.ambient) == self.rank()
    }

    /// Lattice points of the real span: `span_R(self) ∩ Z^n`.
    pub fn saturation(&self) -> Self {
        let orth = kernel_basis(&self.basis, self.ambient);
        let basis = kernel_basis(&orth, self.ambient);
        Sublattice { ambient: self.ambient, basis }
    }

    pub fn is_saturated(&self) -> bool {
        *self == self.saturation()
    }

    /// Index `[Z^n : self]` for a full-rank sublattice; `None` otherwise.
    pub fn index(&self) -> Option<T> {
        if self.rank() != self.ambient {
            return None;
        }
        let m = IntMatrix::new(self.basis.clone(), self.ambient).ok()?;
        Some(smith_normal_form(&m).into_iter().fold(T::one(), |acc, d| acc * d))
    }

    /// Intersection with the rational subspace cut out by `equations`.
    pub fn intersect_kernel(&self, equations: &[IntVec<T>]) -> Self {
        if self.basis.is_empty() || equations.is_empty() {
            return self.clone();
        }
        // t . B lies in the subspace iff (B E^T)^T t = 0
        let images: Vec<IntVec<T>> = self
            .basis
            .iter()
            .map(|b| IntVec::new(equations.iter().map(|e| b.dot(e)).collect()))
            .collect();
        let coeff_rows = IntMatrix::new(images, equations.len()).expect("uniform").transpose();
        let ts = kernel_basis(coeff_rows.rows(), self.basis.len());
        let vs: Vec<IntVec<T>> = ts.iter().map(|t| self.combine(t.coords())).collect();
        Sublattice::span(&vs, self.ambient)
    }

    /// `sum_i coeffs[i] * basis[i]`
    pub fn combine(&self, coeffs: &[T]) -> IntVec<T> {
        let mut acc = IntVec::zeros(self.ambient);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            acc = acc.add_scaled(c, b);
        }
        acc
    }

    /// Smallest positive `k` with `k * v` in the sublattice, if `v` is in its span.
    pub fn denominator_of(&self, v: &IntVec<T>) -> Option<T> {
        let coeffs = solve_rational(&self.basis, v)?;
        Some(coeffs.iter().fold(T::one(), |l, q| l.lcm(q.denom())))
    }
}

/// Rank of the span of `rows` in `Q^n`.
pub fn rank_of<T: Int>(rows: &[IntVec<T>], n: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = IntMatrix::new(rows.to_vec(), n).expect("rank of ragged rows");
    let (h, _) = hermite_normal_form(&m);
    h.rows().iter().filter(|r| !r.is_zero()).count()
}

/// Canonical (HNF) basis of the saturated lattice `{x in Z^n : <r, x> = 0 for all rows r}`.
pub fn kernel_basis<T: Int>(rows: &[IntVec<T>], n: usize) -> Vec<IntVec<T>> {
    if rows.is_empty() {
        return Sublattice::full(n).basis;
    }
    let m = IntMatrix::new(rows.to_vec(), n).expect("kernel of ragged rows");
    let (h, u) = hermite_normal_form(&m.transpose());
    let kernel: Vec<IntVec<T>> = h
        .rows()
        .iter()
        .zip(u.rows())
        .filter(|(hr, _)| hr.is_zero())
        .map(|(_, ur)| ur.clone())
        .collect();
    Sublattice::span(&kernel, n).basis
}

/// Rational coefficients `c` with `sum c_i basis_i = v`, if any.
pub fn solve_rational<T: Int>(basis: &[IntVec<T>], v: &IntVec<T>) -> Option<Vec<Rational<T>>> {
    let k = basis.len();
    let n = v.len();
    // augmented system: columns are basis vectors, rhs v
    let mut a: Vec<Vec<Rational<T>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational<T>> = basis.iter().map(|b| Rational::from_integer(b[i].clone())).collect();
            row.push(Rational::from_integer(v[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let d = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = a[i][k].clone();
    }
    Some(sol)
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    fn v(c: &[i64]) -> IntVec<BigInt> {
        IntVec::from_i64s(c)
    }

    #[test]
    fn span_example() {
        let l = sublattice_span(&[v(&[2, 0]), v(&[0, 2]), v(&[1, 1])], 2);
        assert_eq!(l.basis(), &[v(&[1, 1]), v(&[0, 2])]);
        assert_eq!(l.index(), Some(BigInt::from(2)));
        assert!(!l.is_full());
        assert!(l.contains(&v(&[3, 1])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    #[test]
    fn full_and_empty() {
        assert!(sublattice_span(&[v(&[1, 0]), v(&[0, 1])], 2).is_full());
        let z = sublattice_span::<BigInt>(&[], 2);
        assert_eq!(z.rank(), 0);
        assert_eq!(z, Sublattice::zero(2));
        assert!(z.contains(&v(&[0, 0])));
        assert!(!z.contains(&v(&[0, 1])));
    }

    #[test]
    fn kernel_of_line() {
        let k = kernel_basis(&[v(&[1, 2, 3])], 3);
        assert_eq!(k.len(), 2);
        for b in &k {
            assert_eq!(b.dot(&v(&[1, 2, 3])), BigInt::from(0));
        }
        // saturated: (0,3,-2) must be reachable, not just a multiple
        assert!(sublattice_span(&k, 3).contains(&v(&[0, 3, -2])));
    }

    #[test]
    fn saturation_and_intersection() {
        let l = sublattice_span(&[v(&[2, 2, 0])], 3);
        assert_eq!(l.saturation(), sublattice_span(&[v(&[1, 1, 0])], 3));
        let plane = Sublattice::<BigInt>::full(3).intersect_kernel(&[v(&[1, -1, 0])]);
        assert_eq!(plane, sublattice_span(&[v(&[1, 1, 0]), v(&[0, 0, 1])], 3));
        assert_eq!(l.denominator_of(&v(&[1, 1, 0])), Some(BigInt::from(2)));
    }

    fn row_lattice_equal(a: &[IntVec<BigInt>], b: &[IntVec<BigInt>], n: usize) -> bool {
        let la = sublattice_span(a, n);
        let lb = sublattice_span(b, n);
        a.iter().all(|r| lb.contains(r)) && b.iter().all(|r| la.contains(r))
    }

    proptest! {
        #[test]
        fn hnf_is_unimodular_and_lattice_preserving(
            rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 1..=4), 1..=4)
                .prop_filter("rectangular", |m| m.iter().all(|r| r.len() == m[0].len()))
        ) {
            let n = rows[0].len();
            let m = IntMatrix::new(rows.iter().map(|r| v(r)).collect(), n).unwrap();
            let (h, u) = hermite_normal_form(&m);
            prop_assert!(u.det().abs().is_one());
            prop_assert_eq!(u.mul(&m), h.clone());
            prop_assert!(row_lattice_equal(m.rows(), h.rows(), n));
        }

        #[test]
        fn span_is_order_independent(
            rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..=5),
            seed in any::<u64>()
        ) {
            let vs: Vec<IntVec<BigInt>> = rows.iter().map(|r| v(r)).collect();
            let mut shuffled = vs.clone();
            let len = shuffled.len();
            if len > 1 {
                for i in 0..len {
                    let j = (seed.rotate_left(i as u32 * 7) as usize) % len;
                    shuffled.swap(i, j);
                }
            }
            prop_assert_eq!(sublattice_span(&vs, 3), sublattice_span(&shuffled, 3));
        }

        #[test]
        fn primitive_is_idempotent(c in prop::collection::vec(-30i64..=30, 1..=4)) {
            let x = v(&c);
            if let Ok(p) = x.primitive() {
                prop_assert!(p.content().is_one());
                prop_assert_eq!(p.primitive().unwrap(), p.clone());
                // positive multiple of the input
                let g = x.content();
                prop_assert_eq!(p.scale(&g), x);
            }
        }
    }
}
