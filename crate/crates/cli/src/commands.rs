use std::collections::BTreeMap;

use serde_json::{json, Value};

use torus_roots::cones::Face;
use torus_roots::demazure::{descends_to_quasi_affine, enumerate_roots, weight_set_d};
use torus_roots::fans::QuasiAffinity;
use torus_roots::weight_monoid::{counterexample_monoids, reconstruct_with_cap, semigroup_equal, toric_weight_monoid};
use torus_roots::{BigInt, Fan};

use crate::document::{cone_json, int_json, lattice_json, semigroup_json, set_json, vector_json, vectors_json, FanDocument};
use crate::report::{ReportDocument, Verdict};
use crate::CliError;

/// A fan read from a document, with the raw bytes kept for the digest.
pub struct Input {
    pub bytes: Vec<u8>,
    pub fan: Fan,
    pub warnings: Vec<String>,
}

impl Input {
    pub fn parse(bytes: Vec<u8>) -> Result<Self, CliError> {
        let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Invalid(format!("input is not UTF-8: {e}")))?;
        let loaded = FanDocument::parse(text)?.to_fan()?;
        Ok(Input { fan: loaded.fan, warnings: loaded.warnings, bytes })
    }

    fn report(&self, command: &str, arguments: BTreeMap<String, String>) -> ReportDocument {
        let mut r = ReportDocument::new(command, arguments, Some(&self.bytes), None);
        r.warnings = self.warnings.clone();
        r
    }
}

fn face_json(f: &Face<BigInt>) -> Value {
    json!({ "dim": f.dim, "cone": cone_json(&f.cone), "normal": vector_json(&f.normal) })
}

pub fn dual(input: &Input) -> Result<ReportDocument, CliError> {
    let mut cones = Vec::new();
    let mut verdicts = Vec::new();
    for (i, c) in input.fan.max_cones().iter().enumerate() {
        let d = c.dual();
        verdicts.push(Verdict::new(format!("cone {i}: dual of dual is the cone"), d.dual() == *c));
        cones.push(json!({ "cone": cone_json(c), "dual": cone_json(&d), "self_dual": d == *c }));
    }
    Ok(input.report("dual", BTreeMap::new()).finish(json!({ "cones": cones }), verdicts))
}

pub fn faces(input: &Input) -> Result<ReportDocument, CliError> {
    let mut cones = Vec::new();
    let mut verdicts = Vec::new();
    for (i, c) in input.fan.max_cones().iter().enumerate() {
        let fs = c.faces()?;
        let dual_count = c.dual().faces_modulo_lineality().len();
        verdicts.push(
            Verdict::new(format!("cone {i}: faces match faces of the dual"), fs.len() == dual_count)
                .with_detail(format!("{} faces, {dual_count} dual faces", fs.len())),
        );
        cones.push(json!({ "cone": cone_json(c), "faces": fs.iter().map(face_json).collect::<Vec<_>>() }));
    }
    Ok(input.report("faces", BTreeMap::new()).finish(json!({ "cones": cones }), verdicts))
}

pub fn quasi_affine(input: &Input) -> Result<ReportDocument, CliError> {
    let fan = &input.fan;
    let qa = fan.quasi_affinity();
    let reason = match &qa {
        QuasiAffinity::QuasiAffine => Value::Null,
        QuasiAffinity::SupportHasLineality(l) => json!({ "support_lineality": vectors_json(l) }),
        QuasiAffinity::NotFaces(idx) => json!({ "max_cones_not_faces": idx }),
    };
    let boundary = if qa.holds() {
        Value::Array(fan.boundary_faces()?.iter().map(|b| cone_json(&b.face)).collect())
    } else {
        Value::Null
    };
    let results = json!({
        "quasi_affine": qa.holds(),
        "reason": reason,
        "support_hull": cone_json(fan.support_hull()),
        "boundary_faces": boundary,
    });
    Ok(input.report("quasi-affine", BTreeMap::new()).finish(results, Vec::new()))
}

pub fn roots(input: &Input, bound: u64, classify: bool, cap: u64) -> Result<ReportDocument, CliError> {
    if bound == 0 {
        return Err(CliError::Usage("--bound must be at least 1".into()));
    }
    let fan = &input.fan;
    let roots = enumerate_roots(fan, bound)?;
    let mut verdicts = Vec::new();
    let mut listed = Vec::new();
    for r in &roots {
        let descends = descends_to_quasi_affine(fan, r)?;
        verdicts.push(Verdict::new(format!("root {} {}: descends", r.rho(), r.e()), descends));
        listed.push(json!({ "rho": vector_json(r.rho()), "e": vector_json(r.e()), "descends": descends }));
    }
    let mut results = json!({ "bound": bound, "count": roots.len(), "roots": listed });
    if classify {
        let d = weight_set_d(fan)?;
        let k = d.asymptotic_cone(cap)?;
        results["weight_set"] = set_json(&d);
        results["asymptotic_cone"] = Value::Array(k.iter().map(cone_json).collect());
    }
    let mut args = BTreeMap::from([("bound".to_string(), bound.to_string())]);
    if classify {
        args.insert("classify".into(), "true".into());
    }
    Ok(input.report("roots", args).finish(results, verdicts))
}

pub fn reconstruct(input: &Input, cap: u64) -> Result<ReportDocument, CliError> {
    let fan = &input.fan;
    let d = weight_set_d(fan)?;
    let k = d.asymptotic_cone(cap)?;
    let rec = reconstruct_with_cap(&d, cap)?;
    let oracle = toric_weight_monoid(fan.support_hull())?;
    let equal = semigroup_equal(&rec.semigroup, &oracle);
    let results = json!({
        "weight_set": set_json(&d),
        "asymptotic_cone": k.iter().map(cone_json).collect::<Vec<_>>(),
        "span_basis": lattice_json(&rec.semigroup.lattice),
        "span_window": rec.span_bound,
        "case": format!("{:?}", rec.case),
        "reconstructed": semigroup_json(&rec.semigroup),
        "oracle": semigroup_json(&oracle),
        "verdict": if equal { "EQUAL" } else { "DIFFERENT" },
    });
    let verdicts = vec![Verdict::new("reconstruction equals the weight monoid", equal)];
    Ok(input.report("reconstruct", BTreeMap::new()).finish(results, verdicts))
}

pub fn counterexample(d: u64, s: u64, n: u64) -> Result<ReportDocument, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    let c = counterexample_monoids(d, s).map_err(|e| CliError::Usage(e.to_string()))?;
    let limit = ((s + 2) * d) as i64;
    let window = |m: &torus_roots::weight_monoid::NumericalMonoidWindow| -> Vec<i64> {
        (0..=limit).filter(|&x| m.contains(x)).collect()
    };
    let mut verdicts = vec![Verdict::new("monoids are distinct", c.distinct)];
    if let Some(w) = c.witness {
        verdicts.push(Verdict::new("witness lies in the quotient monoid", c.quotient.contains(w)));
        verdicts.push(Verdict::new("witness is missing from the thinned monoid", !c.thinned.contains(w)));
    }
    let results = json!({
        "quotient": { "description": "{k d : k >= 0}", "elements_up_to": limit, "elements": window(&c.quotient) },
        "thinned": { "description": "{k d : k = 0 or k >= s}", "elements_up_to": limit, "elements": window(&c.thinned) },
        "distinct": c.distinct,
        "witness": c.witness.map(|w| int_json(&BigInt::from(w))),
    });
    let args = BTreeMap::from([("d".to_string(), d.to_string()), ("s".to_string(), s.to_string()), ("n".to_string(), n.to_string())]);
    Ok(ReportDocument::new("counterexample", args, None, None).finish(results, verdicts))
}
