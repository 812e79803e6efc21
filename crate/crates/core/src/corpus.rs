//! Small named fans with well-known weight data, used as fixed test inputs.

use crate::cones::Cone;
use crate::error::Result;
use crate::fans::Fan;
use crate::linalg::IntVec;
use crate::scalar::Int;

fn cone<T: Int>(rays: &[&[i64]], n: usize) -> Result<Cone<T>> {
    Cone::from_rays_i64(rays, n)
}

fn coordinate_cones<T: Int>(n: usize, subsets: &[&[usize]]) -> Result<Fan<T>> {
    let cones = subsets
        .iter()
        .map(|s| {
            let rays: Vec<IntVec<T>> = s.iter().map(|&i| IntVec::unit(n, i)).collect();
            Cone::from_rays(&rays, n)
        })
        .collect::<Result<Vec<_>>>()?;
    Fan::new(cones, n)
}

/// Affine spaces, punctured affine spaces, a complement of a coordinate line,
/// single-ray cylinders, the torus and one non-smooth cone.
pub fn named_fans<T: Int>() -> Result<Vec<(&'static str, Fan<T>)>> {
    Ok(vec![
        ("affine-line", Fan::face_fan(&Cone::orthant(1))?),
        ("affine-plane", Fan::face_fan(&Cone::orthant(2))?),
        ("affine-space-3", Fan::face_fan(&Cone::orthant(3))?),
        ("punctured-plane", coordinate_cones(2, &[&[0], &[1]])?),
        ("punctured-space-3", coordinate_cones(3, &[&[0, 1], &[1, 2], &[0, 2]])?),
        ("space-3-minus-line", coordinate_cones(3, &[&[0, 2], &[1, 2]])?),
        ("cylinder-2", Fan::face_fan(&cone(&[&[1, 0]], 2)?)?),
        ("cylinder-3", Fan::face_fan(&cone(&[&[0, 0, 1]], 3)?)?),
        ("torus-2", Fan::torus(2)),
        ("a1-cone", Fan::face_fan(&cone(&[&[1, 0], &[1, 2]], 2)?)?),
    ])
}
