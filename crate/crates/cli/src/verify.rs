//! Seeded property suites over random instances, run in parallel and merged
//! in instance order so the report does not depend on scheduling.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::json;

use torus_roots::demazure::{
    enumerate_roots, preserves_orbit_closure, verify_locally_nilpotent, weight_set_d, InvarianceOracle,
};
use torus_roots::random::{instance_rng, random_quasi_affine_fan, random_strongly_convex_cone, random_vector, FanParams};
use torus_roots::weight_monoid::{reconstruct_with_cap, semigroup_equal, toric_weight_monoid};
use torus_roots::{Cone, Fan, Vector};

use crate::report::{ReportDocument, Verdict};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Asymcone,
    Demazure,
    Reconstruct,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Asymcone => "asymcone",
            Suite::Demazure => "demazure",
            Suite::Reconstruct => "reconstruct",
            Suite::All => "all",
        }
    }
}

/// Box for the orbit-closure oracle and window for the roots it is run on.
const ORACLE_BOX: u64 = 8;
const ORACLE_ROOTS: u64 = 6;

fn facet_cones(sigma: &Cone) -> Vec<Cone> {
    let dual = sigma.dual();
    let set: BTreeSet<Cone> = sigma.rays().iter().map(|r| dual.slice(r).expect("same rank")).collect();
    set.into_iter().collect()
}

fn check(name: &str, outcome: torus_roots::Result<(bool, String)>) -> Verdict {
    match outcome {
        Ok((pass, detail)) => Verdict::new(name, pass).with_detail(detail),
        Err(e) => Verdict::new(name, false).with_detail(format!("error: {e}")),
    }
}

fn asymcone(seed: u64, instance: u64, max_rank: usize, cap: u64) -> Vec<Verdict> {
    let mut rng = instance_rng(seed, instance);
    let fan: Fan = random_quasi_affine_fan(&mut rng, &FanParams { max_rank, ..FanParams::default() });
    let shift: Vector = random_vector(&mut rng, fan.ambient_rank(), 3);
    let outcome = (|| {
        let d = weight_set_d(&fan)?;
        let k = d.asymptotic_cone(cap)?;
        let expected = facet_cones(fan.support_hull());
        let moved = d.translated(&shift).asymptotic_cone(cap)?;
        let ok = k == expected && moved == k;
        Ok((ok, format!("rank {}, {} facet cones", fan.ambient_rank(), expected.len())))
    })();
    vec![check("asymptotic cone of D(X) is the dual boundary", outcome)]
}

fn demazure(seed: u64, instance: u64, max_rank: usize) -> Vec<Verdict> {
    let mut rng = instance_rng(seed, instance);
    let rank = 1 + (instance as usize % max_rank);
    let sigma: Cone = random_strongly_convex_cone(&mut rng, rank, 6, 1);
    let outcome = (|| {
        let fan = Fan::face_fan(&sigma)?;
        let roots = enumerate_roots(&fan, ORACLE_ROOTS)?;
        let oracle = InvarianceOracle::new(&sigma, ORACLE_BOX)?;
        let (mut checks, mut mismatches) = (0usize, 0usize);
        for face in sigma.faces()? {
            for r in &roots {
                checks += 1;
                if preserves_orbit_closure(&sigma, r, &face.cone)? != oracle.check(r, &face.cone)? {
                    mismatches += 1;
                }
            }
        }
        Ok((mismatches == 0, format!("rank {rank}, {checks} checks, {mismatches} mismatches")))
    })();
    let nilpotent = (|| {
        let fan = Fan::face_fan(&sigma)?;
        let roots = enumerate_roots(&fan, 2)?;
        let ok = roots.iter().all(|r| verify_locally_nilpotent(&sigma, r, 3));
        Ok((ok, format!("{} roots", roots.len())))
    })();
    vec![check("criterion agrees with the box oracle", outcome), check("derivations are locally nilpotent", nilpotent)]
}

fn reconstruct(seed: u64, instance: u64, max_rank: usize, cap: u64) -> Vec<Verdict> {
    let mut rng = instance_rng(seed, instance);
    let fan: Fan = random_quasi_affine_fan(&mut rng, &FanParams { max_rank, ..FanParams::default() });
    let outcome = (|| {
        let rec = reconstruct_with_cap(&weight_set_d(&fan)?, cap)?;
        let equal = semigroup_equal(&rec.semigroup, &toric_weight_monoid(fan.support_hull())?);
        Ok((equal, format!("rank {}, case {:?}", fan.ambient_rank(), rec.case)))
    })();
    vec![check("reconstruction equals the weight monoid", outcome)]
}

fn run_instance(suite: Suite, seed: u64, instance: u64, max_rank: usize, cap: u64) -> Vec<Verdict> {
    match suite {
        Suite::Asymcone => asymcone(seed, instance, max_rank, cap),
        Suite::Demazure => demazure(seed, instance, max_rank),
        Suite::Reconstruct => reconstruct(seed, instance, max_rank, cap),
        Suite::All => [
            asymcone(seed, instance, max_rank, cap),
            demazure(seed, instance, max_rank),
            reconstruct(seed, instance, max_rank, cap),
        ]
        .concat(),
    }
}

pub fn verify(suite: Suite, instances: u64, seed: u64, max_rank: usize, cap: u64) -> Result<ReportDocument, CliError> {
    if instances == 0 {
        return Err(CliError::Usage("--instances must be at least 1".into()));
    }
    if !(1..=4).contains(&max_rank) {
        return Err(CliError::Usage(format!("--rank must be between 1 and 4, got {max_rank}")));
    }
    let outcomes: Vec<Vec<Verdict>> =
        (0..instances).into_par_iter().map(|i| run_instance(suite, seed, i, max_rank, cap)).collect();
    let mut verdicts = Vec::new();
    let mut listed = Vec::new();
    for (i, checks) in outcomes.into_iter().enumerate() {
        let pass = checks.iter().all(|c| c.pass);
        verdicts.push(Verdict::new(format!("instance {i}"), pass));
        listed.push(json!({ "instance": i, "seed": seed, "stream": i, "pass": pass, "checks": checks }));
    }
    let passed = verdicts.iter().filter(|v| v.pass).count();
    let results = json!({
        "suite": suite.name(),
        "max_rank": max_rank,
        "passed": passed,
        "total": instances,
        "instances": listed,
    });
    let args = BTreeMap::from([
        ("suite".to_string(), suite.name().to_string()),
        ("instances".to_string(), instances.to_string()),
        ("rank".to_string(), max_rank.to_string()),
    ]);
    Ok(ReportDocument::new("verify", args, None, Some(seed)).finish(results, verdicts))
}
