//! The `torus-roots/1` wire format for fans and the JSON encoding of results.
//!
//! Integers are JSON numbers when they fit in an `i64` and decimal strings
//! otherwise, so nothing ever goes through floating point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use torus_roots::lattice_sets::SlicePiece as GPiece;
use torus_roots::weight_monoid::AffineSemigroup as GSemigroup;
use torus_roots::{Cone, ConicLatticeSet, Fan, Lattice, Vector};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "torus-roots/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    pub fn from_big(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(x.to_string()),
        }
    }

    pub fn to_big(&self) -> Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub schema_version: String,
    pub lattice_rank: usize,
    pub rays: Vec<Vec<JsonInt>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

/// A validated fan together with notes about normalizations applied on load.
pub struct LoadedFan {
    pub fan: Fan,
    pub warnings: Vec<String>,
}

impl FanDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn from_fan(fan: &Fan, metadata: BTreeMap<String, String>) -> Self {
        let rays = fan.rays();
        let max_cones = fan
            .max_cones()
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> =
                    c.rays().iter().map(|r| rays.iter().position(|x| x == r).expect("ray of the fan")).collect();
                idx.sort();
                idx
            })
            .collect();
        FanDocument {
            schema_version: SCHEMA_VERSION.into(),
            lattice_rank: fan.ambient_rank(),
            rays: rays.iter().map(|r| r.iter().map(JsonInt::from_big).collect()).collect(),
            max_cones,
            metadata,
        }
    }

    pub fn to_fan(&self) -> Result<LoadedFan, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Invalid(format!(
                "schema_version {:?} is not supported (expected {SCHEMA_VERSION:?})",
                self.schema_version
            )));
        }
        let n = self.lattice_rank;
        let mut warnings = Vec::new();
        let mut rays = Vec::with_capacity(self.rays.len());
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != n {
                return Err(CliError::Invalid(format!("rays[{i}] has {} entries, lattice_rank is {n}", r.len())));
            }
            let v = Vector::new(r.iter().map(|x| x.to_big()).collect::<Result<_, _>>().map_err(CliError::Invalid)?);
            let p = v.primitive().map_err(|_| CliError::Invalid(format!("rays[{i}] is zero")))?;
            if p != v {
                warnings.push(format!("rays[{i}] = {v} normalized to {p}"));
            }
            rays.push(p);
        }
        if self.max_cones.is_empty() {
            return Err(CliError::Invalid("max_cones is empty".into()));
        }
        let mut cones = Vec::new();
        for (i, idx) in self.max_cones.iter().enumerate() {
            let mut gens = Vec::new();
            for (j, &k) in idx.iter().enumerate() {
                let r = rays
                    .get(k)
                    .ok_or_else(|| CliError::Invalid(format!("max_cones[{i}][{j}] = {k} is not a ray index (have {})", rays.len())))?;
                gens.push(r.clone());
            }
            cones.push(Cone::from_rays(&gens, n)?);
        }
        Ok(LoadedFan { fan: Fan::new(cones, n)?, warnings })
    }
}

pub fn int_json(x: &BigInt) -> Value {
    serde_json::to_value(JsonInt::from_big(x)).expect("integers serialize")
}

pub fn vector_json(v: &Vector) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn vectors_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(vector_json).collect())
}

pub fn cone_json(c: &Cone) -> Value {
    json!({
        "dim": c.dim(),
        "rays": vectors_json(c.rays()),
        "lineality": vectors_json(c.lineality()),
        "inequalities": vectors_json(c.ineqs()),
        "equations": vectors_json(c.equations()),
    })
}

pub fn lattice_json(l: &Lattice) -> Value {
    vectors_json(l.basis())
}

pub fn semigroup_json(s: &GSemigroup<BigInt>) -> Value {
    json!({ "cone": cone_json(&s.cone), "lattice_basis": lattice_json(&s.lattice) })
}

pub fn piece_json(p: &GPiece<BigInt>) -> Value {
    json!({
        "base_cone": cone_json(&p.base_cone),
        "level": p.level.as_ref().map(|l| json!({ "functional": vector_json(&l.functional), "value": int_json(&l.value) })),
        "translation": vector_json(&p.translation),
        "interior_only": p.interior_only,
        "excluded_subspaces": p.excluded.iter().map(lattice_json).collect::<Vec<_>>(),
        "lattice_basis": lattice_json(&p.lattice),
    })
}

pub fn set_json(s: &ConicLatticeSet) -> Value {
    json!({ "ambient_rank": s.ambient_rank(), "pieces": s.pieces().iter().map(piece_json).collect::<Vec<_>>() })
}
