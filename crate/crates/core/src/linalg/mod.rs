//! Exact integer linear algebra: lattice vectors, matrices, Hermite and Smith
//! normal forms, sublattices.

mod hnf;
mod lattice;
mod snf;

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Int;

pub use hnf::hermite_normal_form;
pub use lattice::{kernel_basis, rank_of, solve_rational, sublattice_span, Sublattice};
pub use snf::smith_normal_form;

/// A vector of the lattice `Z^n` (or its dual).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec<T>(Vec<T>);

impl<T: Int> IntVec<T> {
    pub fn new(coords: Vec<T>) -> Self {
        IntVec(coords)
    }

    pub fn zeros(n: usize) -> Self {
        IntVec(vec![T::zero(); n])
    }

    /// The `i`-th standard basis vector of `Z^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVec(coords.iter().map(|&c| T::from_i64_exact(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The standard pairing `<self, other>`.
    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        IntVec(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: &T, other: &Self) -> Self {
        IntVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + k.clone() * b.clone())
                .collect(),
        )
    }

    /// Exact division of every coordinate; the caller guarantees divisibility.
    pub fn div_exact(&self, k: &T) -> Self {
        IntVec(self.0.iter().map(|a| a.clone() / k.clone()).collect())
    }

    /// Greatest common divisor of the coordinates (zero for the zero vector).
    pub fn content(&self) -> T {
        self.0.iter().fold(T::zero(), |g, a| g.gcd(a))
    }

    /// The primitive lattice vector on the ray through `self`.
    pub fn primitive(&self) -> Result<Self> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.div_exact(&g))
    }

    pub fn norm_inf(&self) -> T {
        self.0.iter().map(|a| a.abs()).max().unwrap_or_else(T::zero)
    }

    pub fn convert<U: Int>(&self) -> Option<IntVec<U>> {
        self.0.iter().map(|a| a.convert()).collect::<Option<Vec<U>>>().map(IntVec)
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|a| a.to_i64()).collect()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.len() });
        }
        Ok(())
    }
}

impl<T> Index<usize> for IntVec<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Int> Add for &IntVec<T> {
    type Output = IntVec<T>;
    fn add(self, rhs: Self) -> IntVec<T> {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<T: Int> Sub for &IntVec<T> {
    type Output = IntVec<T>;
    fn sub(self, rhs: Self) -> IntVec<T> {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<T: Int> Neg for &IntVec<T> {
    type Output = IntVec<T>;
    fn neg(self) -> IntVec<T> {
        IntVec(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: fmt::Display> fmt::Display for IntVec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: Vec<IntVec<T>>,
    ncols: usize,
}

impl<T: Int> IntMatrix<T> {
    pub fn new(rows: Vec<IntVec<T>>, ncols: usize) -> Result<Self> {
        for r in &rows {
            r.check_len(ncols)?;
        }
        Ok(IntMatrix { rows, ncols })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| IntVec::from_i64s(r)).collect();
        IntMatrix::new(rows, ncols).expect("ragged matrix literal")
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { rows: (0..n).map(|i| IntVec::unit(n, i)).collect(), ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[IntVec<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<IntVec<T>> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &IntVec<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i].0[j]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols)
            .map(|j| IntVec(self.rows.iter().map(|r| r.0[j].clone()).collect()))
            .collect();
        IntMatrix { rows, ncols: self.nrows() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows(), "incompatible matrix shapes");
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| IntVec(t.rows.iter().map(|c| r.dot(c)).collect()))
            .collect();
        IntMatrix { rows, ncols: other.ncols }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> T {
        let n = self.nrows();
        assert_eq!(n, self.ncols, "determinant of a non-square matrix");
        if n == 0 {
            return T::one();
        }
        let mut a: Vec<Vec<T>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = v / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows, self.ncols)
    }
}

/// Vector orthogonal to `n - 1` given vectors of `Z^n`: the signed maximal
/// minors of the stacked matrix. Zero iff the rows are dependent.
pub fn cofactor_normal<T: Int>(rows: &[&IntVec<T>], n: usize) -> IntVec<T> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<IntVec<T>> = rows
            .iter()
            .map(|r| IntVec(r.0.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, a)| a.clone()).collect()))
            .collect();
        let d = IntMatrix { rows: minor, ncols: n - 1 }.det();
        out.push(if skip % 2 == 0 { d } else { -d });
    }
    IntVec(out)
}
