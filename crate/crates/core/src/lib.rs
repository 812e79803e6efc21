//! Exact toric geometry for Demazure roots and homogeneous additive-group
//! actions on quasi-affine toric varieties.
//!
//! The core is generic over the integer type (see [`scalar::Int`]); the
//! aliases below fix it to arbitrary-precision [`BigInt`].
//!
//! ```
//! use torus_roots::{demazure, weight_monoid, Cone, Fan};
//!
//! let sigma = Cone::from_rays_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3)?;
//! let fan = Fan::face_fan(&sigma)?;
//! let roots = demazure::enumerate_roots(&fan, 2)?;
//! assert!(!roots.is_empty());
//! let d = demazure::weight_set_d(&fan)?;
//! let rebuilt = weight_monoid::reconstruct(&d)?;
//! let expected = weight_monoid::toric_weight_monoid(fan.support_hull())?;
//! assert!(weight_monoid::semigroup_equal(&rebuilt.semigroup, &expected));
//! # Ok::<(), torus_roots::Error>(())
//! ```

pub mod cones;
pub mod corpus;
pub mod demazure;
pub mod error;
pub mod fans;
pub mod lattice_sets;
pub mod linalg;
pub mod random;
pub mod scalar;
pub mod weight_monoid;

pub use num_bigint::BigInt;

pub use error::{Error, Result};

pub type Vector = linalg::IntVec<BigInt>;
pub type Matrix = linalg::IntMatrix<BigInt>;
pub type Lattice = linalg::Sublattice<BigInt>;
pub type Cone = cones::Cone<BigInt>;
pub type Fan = fans::Fan<BigInt>;
pub type SlicePiece = lattice_sets::SlicePiece<BigInt>;
pub type ConicLatticeSet = lattice_sets::ConicLatticeSet<BigInt>;
pub type DemazureRoot = demazure::DemazureRoot<BigInt>;
pub type AffineSemigroup = weight_monoid::AffineSemigroup<BigInt>;
