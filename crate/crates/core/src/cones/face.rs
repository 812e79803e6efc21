use std::collections::BTreeSet;


use super::Cone;
use crate::linalg::IntVec;
use crate::scalar::Int;

/// A face `cone ∩ normal^⊥` of some parent cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face<T> {
    pub cone: Cone<T>,
    pub normal: IntVec<T>,
    pub dim: usize,
}

/// Every face is an intersection of facets, so the ray sets of faces are the
/// closure of the facets' tight ray sets under intersection.
pub(super) fn enumerate<T: Int>(c: &Cone<T>) -> Vec<Face<T>> {
    let n = c.ambient_rank();
    let tight: Vec<BTreeSet<usize>> = c
        .ineqs()
        .iter()
        .map(|u| (0..c.rays().len()).filter(|&i| u.dot(&c.rays()[i]).is_zero()).collect())
        .collect();

    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert((0..c.rays().len()).collect());
    let mut frontier: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for t in &tight {
            let meet: BTreeSet<usize> = s.intersection(t).copied().collect();
            if sets.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }

    let mut faces: Vec<Face<T>> = sets
        .into_iter()
        .map(|s| {
            let mut gens: Vec<IntVec<T>> = s.iter().map(|&i| c.rays()[i].clone()).collect();
            for l in c.lineality() {
                gens.push(l.clone());
                gens.push(-l);
            }
            let cone = Cone::from_rays(&gens, n).expect("same rank");
            let normal = c
                .ineqs()
                .iter()
                .zip(&tight)
                .filter(|(_, t)| s.is_subset(t))
                .fold(IntVec::zeros(n), |acc, (u, _)| &acc + u);
            let dim = cone.dim();
            Face { cone, normal, dim }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.cone.cmp(&b.cone)));
    faces
}
