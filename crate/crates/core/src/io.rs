//! JSON formats for algebras, modules and periodic complexes.
//!
//! Vertices are 1-based in files. Matrix entries are integers over `F_p` and
//! strings such as `"-3/4"` over `Q` (plain integers are accepted there too).

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complex::PeriodicComplex;
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{Arrow, ModuleMap, Quiver, QuiverAlgebra, Representation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    pub field: FieldSpec,
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field, IoError> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rationals),
            FieldSpec::Named(s) => Err(IoError::Invalid(format!("unknown field {s:?}"))),
            FieldSpec::Prime { fp } => Field::prime(*fp).map_err(invalid),
        }
    }

    pub fn of(field: Field) -> Self {
        match field {
            Field::Rationals => FieldSpec::Named("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { fp: p },
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<QuiverAlgebra, IoError> {
    let file: QuiverFile = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    algebra_from_file(&file)
}

pub fn algebra_from_file(file: &QuiverFile) -> Result<QuiverAlgebra, IoError> {
    let field = file.field.to_field()?;
    let mut arrows = Vec::with_capacity(file.arrows.len());
    for (s, t, label) in &file.arrows {
        if *s == 0 || *t == 0 || *s > file.vertices || *t > file.vertices {
            return Err(IoError::Invalid(format!("arrow {label} has an endpoint outside 1..={}", file.vertices)));
        }
        arrows.push(Arrow { source: s - 1, target: t - 1, label: label.clone() });
    }
    let quiver = Quiver::new(file.vertices, arrows).map_err(invalid)?;
    let relations = file
        .relations
        .iter()
        .map(|r| {
            let labels: Vec<&str> = r.iter().map(String::as_str).collect();
            QuiverAlgebra::relation_from_labels(&quiver, &labels)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(invalid)?;
    QuiverAlgebra::new(quiver, field, relations).map_err(invalid)
}

pub fn algebra_to_json(alg: &QuiverAlgebra) -> Value {
    let q = alg.quiver();
    let file = QuiverFile {
        vertices: q.vertex_count(),
        arrows: q.arrows().iter().map(|a| (a.source + 1, a.target + 1, a.label.clone())).collect(),
        relations: alg
            .relations()
            .iter()
            .map(|p| p.arrows.iter().rev().map(|&a| q.arrow(a).label.clone()).collect())
            .collect(),
        field: FieldSpec::of(alg.field()),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

fn parse_scalar(field: Field, v: &Value) -> Result<Scalar, IoError> {
    match (field, v) {
        (Field::Prime(_), Value::Number(n)) => {
            n.as_i64().map(|x| field.from_i64(x)).ok_or_else(|| IoError::Invalid(format!("{n} is not an integer")))
        }
        (Field::Rationals, Value::Number(n)) => {
            n.as_i64().map(|x| field.from_i64(x)).ok_or_else(|| IoError::Invalid(format!("{n} is not an integer")))
        }
        (Field::Rationals, Value::String(s)) => {
            s.trim().parse::<BigRational>().map(Scalar::Rational).map_err(|_| IoError::Invalid(format!("bad rational {s:?}")))
        }
        (Field::Prime(_), Value::String(s)) => s
            .trim()
            .parse::<i64>()
            .map(|x| field.from_i64(x))
            .map_err(|_| IoError::Invalid(format!("bad F_p element {s:?}"))),
        (_, other) => Err(IoError::Invalid(format!("matrix entry {other} is neither a number nor a string"))),
    }
}

/// Parses a matrix of the given shape. An empty list stands for any matrix with no entries.
pub fn parse_matrix(field: Field, rows: usize, cols: usize, v: &Value) -> Result<Matrix, IoError> {
    let list = v.as_array().ok_or_else(|| IoError::Invalid("matrix must be a list of rows".into()))?;
    if rows * cols == 0 && list.iter().all(|r| r.as_array().is_some_and(Vec::is_empty)) {
        if list.len() == rows || list.is_empty() {
            return Ok(Matrix::zeros(field, rows, cols));
        }
    }
    if list.len() != rows {
        return Err(IoError::Invalid(format!("expected {rows} rows, found {}", list.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in list {
        let row = row.as_array().ok_or_else(|| IoError::Invalid("matrix row must be a list".into()))?;
        if row.len() != cols {
            return Err(IoError::Invalid(format!("expected {cols} columns, found {}", row.len())));
        }
        for x in row {
            data.push(parse_scalar(field, x)?);
        }
    }
    Matrix::from_scalars(field, rows, cols, data).map_err(invalid)
}

fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(x) => Value::String(x.to_string()),
        Scalar::Modular(x) => json!(x),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array((0..m.cols()).map(|c| scalar_to_json(m.get(r, c))).collect())).collect())
}

/// `{"dims": [...], "maps": {"label": matrix}}`; missing labels are zero maps.
pub fn parse_representation(alg: &QuiverAlgebra, v: &Value) -> Result<Representation, IoError> {
    let dims: Vec<usize> = serde_json::from_value(v.get("dims").cloned().unwrap_or(Value::Null))
        .map_err(|e| IoError::Invalid(format!("dims: {e}")))?;
    if dims.len() != alg.vertex_count() {
        return Err(IoError::Invalid(format!("{} dims for {} vertices", dims.len(), alg.vertex_count())));
    }
    let empty = serde_json::Map::new();
    let maps_obj = match v.get("maps") {
        None => &empty,
        Some(m) => m.as_object().ok_or_else(|| IoError::Invalid("maps must be an object".into()))?,
    };
    for label in maps_obj.keys() {
        if alg.quiver().arrow_index(label).is_none() {
            return Err(IoError::Invalid(format!("unknown arrow label {label}")));
        }
    }
    let f = alg.field();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| match maps_obj.get(&a.label) {
            Some(m) => parse_matrix(f, dims[a.target], dims[a.source], m),
            None => Ok(Matrix::zeros(f, dims[a.target], dims[a.source])),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Representation::new(alg, dims, maps).map_err(invalid)
}

pub fn representation_to_json(alg: &QuiverAlgebra, rep: &Representation) -> Value {
    let maps: BTreeMap<String, Value> = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| (a.label.clone(), matrix_to_json(rep.arrow_map(idx))))
        .collect();
    json!({ "dims": rep.dims(), "maps": maps })
}

/// A module map as the list of its per-vertex matrices.
pub fn parse_module_map(
    alg: &QuiverAlgebra,
    source: &Representation,
    target: &Representation,
    v: &Value,
) -> Result<ModuleMap, IoError> {
    let list = v.as_array().ok_or_else(|| IoError::Invalid("module map must be a list of matrices".into()))?;
    if list.len() != alg.vertex_count() {
        return Err(IoError::Invalid(format!("{} matrices for {} vertices", list.len(), alg.vertex_count())));
    }
    let f = alg.field();
    let maps = list
        .iter()
        .enumerate()
        .map(|(vert, m)| parse_matrix(f, target.dims()[vert], source.dims()[vert], m))
        .collect::<Result<Vec<_>, _>>()?;
    ModuleMap::new(alg, source, target, maps).map_err(invalid)
}

pub fn module_map_to_json(f: &ModuleMap) -> Value {
    Value::Array(f.matrices().iter().map(matrix_to_json).collect())
}

/// `{"m": m, "components": [...], "differentials": [...]}`; differential `i` maps
/// component `i` to component `i + 1 mod m`.
pub fn parse_complex(alg: &QuiverAlgebra, v: &Value) -> Result<PeriodicComplex, IoError> {
    let m = v.get("m").and_then(Value::as_u64).ok_or_else(|| IoError::Invalid("missing period m".into()))? as usize;
    let comps = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Invalid("components must be a list".into()))?;
    let diffs = v
        .get("differentials")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Invalid("differentials must be a list".into()))?;
    if m == 0 || comps.len() != m || diffs.len() != m {
        return Err(IoError::Invalid(format!(
            "period {m} needs {m} components and differentials, found {} and {}",
            comps.len(),
            diffs.len()
        )));
    }
    let components = comps.iter().map(|c| parse_representation(alg, c)).collect::<Result<Vec<_>, _>>()?;
    let differentials = diffs
        .iter()
        .enumerate()
        .map(|(i, d)| parse_module_map(alg, &components[i], &components[(i + 1) % m], d))
        .collect::<Result<Vec<_>, _>>()?;
    PeriodicComplex::new(alg, m, components, differentials).map_err(invalid)
}

pub fn complex_to_json(alg: &QuiverAlgebra, v: &PeriodicComplex) -> Value {
    json!({
        "m": v.period(),
        "components": v.components().iter().map(|c| representation_to_json(alg, c)).collect::<Vec<_>>(),
        "differentials": v.differentials().iter().map(module_map_to_json).collect::<Vec<_>>(),
    })
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}
