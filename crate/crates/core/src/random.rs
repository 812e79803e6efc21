//! Seeded random instances: strongly convex cones and quasi-affine fans.
//!
//! Every instance is drawn from its own ChaCha stream, so instance `i` of a
//! run with seed `s` can be replayed alone.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cones::Cone;
use crate::fans::Fan;
use crate::linalg::IntVec;
use crate::scalar::Int;

/// Generator for instance `instance` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, instance: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanParams {
    pub max_rank: usize,
    pub max_rays: usize,
    pub entry_bound: i64,
    /// One in `torus_odds` fans is the torus fan `{0}`; zero disables it.
    pub torus_odds: u32,
}

impl Default for FanParams {
    fn default() -> Self {
        FanParams { max_rank: 4, max_rays: 8, entry_bound: 4, torus_odds: 25 }
    }
}

pub fn random_vector<T: Int, R: Rng>(rng: &mut R, rank: usize, bound: i64) -> IntVec<T> {
    loop {
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&c| c != 0) {
            return IntVec::from_i64s(&v);
        }
    }
}

/// A strongly convex cone with between one and `max_rays` random generators.
pub fn random_strongly_convex_cone<T: Int, R: Rng>(rng: &mut R, rank: usize, max_rays: usize, bound: i64) -> Cone<T> {
    loop {
        let k = rng.gen_range(1..=max_rays);
        let gens: Vec<IntVec<T>> = (0..k).map(|_| random_vector(rng, rank, bound)).collect();
        let c = Cone::from_rays(&gens, rank).expect("uniform rank");
        if c.is_strongly_convex() {
            return c;
        }
    }
}

/// A quasi-affine fan: the face fan of a random strongly convex cone with a
/// random up-set of faces of dimension at least two removed. Removing an
/// up-set keeps the collection face-closed and keeps every ray.
pub fn random_quasi_affine_fan<T: Int, R: Rng>(rng: &mut R, params: &FanParams) -> Fan<T> {
    let rank = rng.gen_range(1..=params.max_rank);
    if params.torus_odds > 0 && rng.gen_ratio(1, params.torus_odds) {
        return Fan::torus(rank);
    }
    let sigma = random_strongly_convex_cone(rng, rank, params.max_rays, params.entry_bound);
    let faces: Vec<Cone<T>> = sigma.faces().expect("strongly convex").into_iter().map(|f| f.cone).collect();
    let removal_rate = [0.0, 0.15, 0.35, 0.6][rng.gen_range(0..4)];
    let seeds: Vec<&Cone<T>> = faces.iter().filter(|f| f.dim() >= 2 && rng.gen_bool(removal_rate)).collect();
    let kept: Vec<&Cone<T>> = faces.iter().filter(|f| !seeds.iter().any(|s| f.contains_cone(s))).collect();
    let kept_set: BTreeSet<&Cone<T>> = kept.iter().copied().collect();
    let maximal: Vec<Cone<T>> = kept
        .iter()
        .filter(|c| !kept_set.iter().any(|d| d != *c && d.contains_cone(c)))
        .map(|c| (*c).clone())
        .collect();
    Fan::new(maximal, rank).expect("faces of a strongly convex cone form a fan")
}
