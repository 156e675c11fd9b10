//! JSON group specifications.
//!
//! A spec names a family with integer parameters,
//!
//! ```json
//! {"family": "dihedral", "params": {"k": 6}}
//! {"family": "direct_product", "left": {"family": "dihedral", "params": {"k": 4}},
//!                              "right": {"family": "cyclic", "params": {"n": 3}}}
//! ```
//!
//! or lists generators: permutations in cycle notation on `points` points,
//! or square matrices over `GF(p^n)` (entries are field elements in their
//! integer encoding).
//!
//! ```json
//! {"generators": ["(0 1)", "(0 1 2)"], "points": 3}
//! {"generators": [[[1,1],[0,1]], [[0,1],[1,0]]], "field": {"p": 2, "n": 1}}
//! ```

use std::sync::Arc;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::algebra::{Field, Mat, Perm};
use crate::group::{make_family, Family, FamilyParams, GroupError, GroupTable, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("invalid spec at {path}: {msg}")]
    Shape { path: String, msg: String },
    #[error("generator {index}: {reason}")]
    Generator { index: usize, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl SpecError {
    /// Malformed input, as opposed to a well-formed spec that cannot be built.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, SpecError::Parse { .. } | SpecError::Shape { .. })
    }
}

/// A parsed construction route.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Family(Family),
    Permutations {
        points: usize,
        generators: Vec<String>,
    },
    Matrices {
        p: u32,
        n: u32,
        generators: Vec<Vec<Vec<u32>>>,
    },
}

fn shape(path: &str, msg: impl Into<String>) -> SpecError {
    SpecError::Shape {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn as_u32(v: &Value, path: &str) -> Result<u32, SpecError> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| shape(path, "expected a nonnegative integer"))
}

fn family_from(obj: &Map<String, Value>, path: &str) -> Result<Family, SpecError> {
    let name = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| shape(&format!("{path}.family"), "expected a string"))?;
    if name == "direct_product" {
        let params = obj.get("params").and_then(Value::as_object);
        let side = |key: &str| {
            let v = obj
                .get(key)
                .or_else(|| params.and_then(|p| p.get(key)))
                .ok_or_else(|| shape(&format!("{path}.{key}"), "missing factor"))?;
            let inner = v
                .as_object()
                .ok_or_else(|| shape(&format!("{path}.{key}"), "expected an object"))?;
            family_from(inner, &format!("{path}.{key}"))
        };
        return Ok(Family::DirectProduct(
            Box::new(side("left")?),
            Box::new(side("right")?),
        ));
    }
    let mut params = FamilyParams::new();
    if let Some(p) = obj.get("params") {
        let p = p
            .as_object()
            .ok_or_else(|| shape(&format!("{path}.params"), "expected an object"))?;
        for (k, v) in p {
            let v = v
                .as_i64()
                .ok_or_else(|| shape(&format!("{path}.params.{k}"), "expected an integer"))?;
            params.insert(k.clone(), v);
        }
    }
    Family::from_params(name, &params).map_err(|e| match e {
        GroupError::BadParams(msg) => shape(&format!("{path}.params"), msg),
        other => SpecError::Group(other),
    })
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let value: Value = serde_json::from_str(text).map_err(|e| SpecError::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, SpecError> {
        let obj = value
            .as_object()
            .ok_or_else(|| shape("$", "expected an object"))?;
        match (obj.contains_key("family"), obj.contains_key("generators")) {
            (true, true) => Err(shape("$", "give either 'family' or 'generators', not both")),
            (false, false) => Err(shape("$", "missing 'family' or 'generators'")),
            (true, false) => Ok(GroupSpec::Family(family_from(obj, "$")?)),
            (false, true) => {
                let gens = obj["generators"]
                    .as_array()
                    .ok_or_else(|| shape("$.generators", "expected an array"))?;
                if gens.is_empty() {
                    return Err(shape("$.generators", "at least one generator is required"));
                }
                if let Some(field) = obj.get("field") {
                    let f = field
                        .as_object()
                        .ok_or_else(|| shape("$.field", "expected an object"))?;
                    let p = as_u32(f.get("p").unwrap_or(&Value::Null), "$.field.p")?;
                    let n = match f.get("n") {
                        Some(v) => as_u32(v, "$.field.n")?,
                        None => 1,
                    };
                    let mut mats = Vec::with_capacity(gens.len());
                    for (i, g) in gens.iter().enumerate() {
                        let path = format!("$.generators[{i}]");
                        let rows = g
                            .as_array()
                            .ok_or_else(|| shape(&path, "expected a matrix"))?;
                        let mut m = Vec::with_capacity(rows.len());
                        for (r, row) in rows.iter().enumerate() {
                            let cells = row
                                .as_array()
                                .ok_or_else(|| shape(&format!("{path}[{r}]"), "expected a row"))?;
                            m.push(
                                cells
                                    .iter()
                                    .enumerate()
                                    .map(|(c, x)| as_u32(x, &format!("{path}[{r}][{c}]")))
                                    .collect::<Result<Vec<u32>, _>>()?,
                            );
                        }
                        mats.push(m);
                    }
                    Ok(GroupSpec::Matrices {
                        p,
                        n,
                        generators: mats,
                    })
                } else {
                    let generators = gens
                        .iter()
                        .enumerate()
                        .map(|(i, g)| {
                            g.as_str().map(str::to_string).ok_or_else(|| {
                                shape(&format!("$.generators[{i}]"), "expected a cycle string")
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let points = match obj.get("points") {
                        Some(v) => as_u32(v, "$.points")? as usize,
                        None => infer_points(&generators),
                    };
                    Ok(GroupSpec::Permutations { points, generators })
                }
            }
        }
    }

    pub fn build(&self) -> Result<GroupTable, SpecError> {
        match self {
            GroupSpec::Family(f) => Ok(make_family(f)?),
            GroupSpec::Permutations { points, generators } => {
                let perms = generators
                    .iter()
                    .enumerate()
                    .map(|(index, text)| {
                        Perm::from_cycles(text, *points).map_err(|e| SpecError::Generator {
                            index,
                            reason: e.to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GroupTable::generate("perm", &perms, DEFAULT_ORDER_CAP)
                    .map_err(generator_error)?)
            }
            GroupSpec::Matrices { p, n, generators } => {
                let field = Arc::new(Field::new(*p, *n).map_err(GroupError::from)?);
                let mats = generators
                    .iter()
                    .enumerate()
                    .map(|(index, rows)| {
                        Mat::new(field.clone(), rows).map_err(|e| SpecError::Generator {
                            index,
                            reason: e.to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(
                    GroupTable::generate_matrices("matrix", &mats, DEFAULT_ORDER_CAP)
                        .map_err(generator_error)?,
                )
            }
        }
    }
}

fn generator_error(e: GroupError) -> SpecError {
    match e {
        GroupError::InvalidGenerator { index, reason } => SpecError::Generator { index, reason },
        other => SpecError::Group(other),
    }
}

/// One more than the largest point mentioned in any cycle string.
fn infer_points(generators: &[String]) -> usize {
    generators
        .iter()
        .flat_map(|g| g.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .map_or(1, |m| m + 1)
}

/// Parses and builds in one step.
pub fn build_group(text: &str) -> Result<GroupTable, SpecError> {
    GroupSpec::parse(text)?.build()
}
