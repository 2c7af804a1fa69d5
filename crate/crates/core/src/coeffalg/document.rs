use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactlinalg::{Field, Matrix, Scalar};

use super::module::check_keys;
use super::{Algebra, CoeffError, MultiModule};

/// `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field, CoeffError> {
        match self {
            FieldSpec::Named(n) if n == "Q" => Ok(Field::Rationals),
            FieldSpec::Named(n) => Err(CoeffError::UnknownField(n.clone())),
            FieldSpec::Prime { p } => Ok(Field::prime(*p)?),
        }
    }
}

impl From<Field> for FieldSpec {
    fn from(f: Field) -> Self {
        match f {
            Field::Rationals => FieldSpec::Named("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { p: p as u64 },
        }
    }
}

/// A matrix or vector entry: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn to_scalar(&self, field: Field) -> Result<Scalar, CoeffError> {
        Ok(match self {
            Entry::Int(n) => field.from_i64(*n),
            Entry::Text(s) => field.parse_scalar(s.trim())?,
        })
    }

    fn from_scalar(s: &Scalar) -> Self {
        match s {
            Scalar::Rational(q) if q.is_integer() => match q.to_string().parse() {
                Ok(n) => Entry::Int(n),
                Err(_) => Entry::Text(q.to_string()),
            },
            Scalar::Rational(q) => Entry::Text(q.to_string()),
            Scalar::Residue { value, .. } => Entry::Int(*value as i64),
        }
    }
}

/// `{ "field": ..., "basis": [names], "mul": d x d array of length-d coordinate arrays }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub field: FieldSpec,
    pub basis: Vec<String>,
    pub mul: Vec<Vec<Vec<Entry>>>,
}

/// `{ "dim": m, "actions": { key: [d matrices, each m x m] } }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDocument {
    pub dim: usize,
    pub actions: BTreeMap<String, Vec<Vec<Vec<Entry>>>>,
}

impl AlgebraDocument {
    /// Builds the algebra, reading entries in `field` instead of the document's
    /// own field when given.
    pub fn to_algebra(&self, field: Option<Field>) -> Result<Algebra, CoeffError> {
        let field = match field {
            Some(f) => f,
            None => self.field.to_field()?,
        };
        let mul = self
            .mul
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|e| e.to_scalar(field)).collect()).collect())
            .collect::<Result<_, _>>()?;
        Algebra::new(field, self.basis.clone(), mul)
    }
}

impl Algebra {
    pub fn to_document(&self) -> AlgebraDocument {
        let d = self.dim();
        AlgebraDocument {
            field: self.field().into(),
            basis: self.basis().to_vec(),
            mul: (0..d)
                .map(|i| (0..d).map(|j| self.product(i, j).iter().map(Entry::from_scalar).collect()).collect())
                .collect(),
        }
    }
}

impl ModuleDocument {
    pub fn to_module(&self, alg: &Algebra) -> Result<MultiModule, CoeffError> {
        let field = alg.field();
        let m = self.dim;
        let mut actions = BTreeMap::new();
        for (key, mats) in &self.actions {
            let mut parsed = Vec::with_capacity(mats.len());
            for (t, mat) in mats.iter().enumerate() {
                if mat.len() != m || mat.iter().any(|r| r.len() != m) {
                    return Err(CoeffError::Shape(format!("matrix {t} of action {key:?} is not {m}x{m}")));
                }
                let dense = mat
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_scalar(field)).collect())
                    .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
                parsed.push(Matrix::from_dense(field, m, &dense)?);
            }
            actions.insert(key.clone(), parsed);
        }
        MultiModule::new(alg, m, actions)
    }
}

impl MultiModule {
    pub fn to_document(&self) -> ModuleDocument {
        ModuleDocument {
            dim: self.dim(),
            actions: self
                .actions()
                .iter()
                .map(|(k, mats)| {
                    let mats = mats
                        .iter()
                        .map(|m| m.to_dense().iter().map(|r| r.iter().map(Entry::from_scalar).collect()).collect())
                        .collect();
                    (k.clone(), mats)
                })
                .collect(),
        }
    }

    /// A module document with identity matrices in place of every action, to
    /// be filled in by hand.
    pub fn template(alg: &Algebra, dim: usize, keys: &[String]) -> ModuleDocument {
        let identity: Vec<Vec<Entry>> =
            (0..dim).map(|r| (0..dim).map(|c| Entry::Int((r == c) as i64)).collect()).collect();
        let zero: Vec<Vec<Entry>> = vec![vec![Entry::Int(0); dim]; dim];
        let mats: Vec<_> = (0..alg.dim()).map(|t| if t == 0 { identity.clone() } else { zero.clone() }).collect();
        ModuleDocument { dim, actions: keys.iter().map(|k| (k.clone(), mats.clone())).collect() }
    }
}

pub fn parse_algebra(text: &str, field: Option<Field>) -> Result<Algebra, CoeffError> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| CoeffError::Json(e.to_string()))?;
    doc.to_algebra(field)
}

/// Parses and validates a module whose keys must be exactly `expected_keys`.
pub fn parse_module(text: &str, alg: &Algebra, expected_keys: &[String]) -> Result<MultiModule, CoeffError> {
    let doc: ModuleDocument = serde_json::from_str(text).map_err(|e| CoeffError::Json(e.to_string()))?;
    check_keys(expected_keys, doc.actions.keys().map(String::as_str))?;
    doc.to_module(alg)
}
