//! Coefficients: finite-dimensional commutative algebras given by structure
//! constants, and modules carrying one commuting action per action class.
//!
//! Basis element 0 is always the unit. Every axiom is checked when a value is
//! built, so downstream code can assume a valid algebra and module.

mod document;
mod module;

use std::fmt;

use crate::exactlinalg::{Field, LinalgError, Scalar};

pub use document::{parse_algebra, parse_module, AlgebraDocument, Entry, FieldSpec, ModuleDocument};
pub use module::{expected_keys, regular_representation, CoefficientAssignment, Keying, MultiModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unknown field {0:?} (expected \"Q\" or {{\"Fp\": p}})")]
    UnknownField(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("multiplication is not commutative: {0}*{1} != {1}*{0}")]
    NotCommutative(String, String),
    #[error("multiplication is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("basis element {unit} is not a two-sided unit (fails against {against})")]
    BadUnit { unit: String, against: String },
    #[error("action {key:?} does not send the unit to the identity")]
    NotUnital { key: String },
    #[error("action {key:?} is not multiplicative on ({left}, {right})")]
    NotMultiplicative { key: String, left: String, right: String },
    #[error("actions {key_a:?} of {a} and {key_b:?} of {b} do not commute")]
    NotCommuting { key_a: String, a: String, key_b: String, b: String },
    #[error("module keys do not match: missing {missing:?}, unexpected {extra:?}")]
    KeyMismatch { missing: Vec<String>, extra: Vec<String> },
    #[error("unknown action key {0:?}")]
    UnknownKey(String),
}

impl CoeffError {
    /// True for errors in the shape of the input rather than in the algebra it describes.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, CoeffError::Json(_) | CoeffError::Linalg(_) | CoeffError::UnknownField(_) | CoeffError::Shape(_))
    }
}

/// A commutative unital algebra over a field with basis `e_0 = 1, e_1, ..., e_{d-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    basis: Vec<String>,
    /// `mul[i][j]` holds the coordinates of `e_i e_j`.
    mul: Vec<Vec<Vec<Scalar>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({} over {}, basis {:?})", self.basis.len(), self.field, self.basis)
    }
}

impl Algebra {
    /// Validates commutativity, associativity and that `e_0` is the unit.
    pub fn new(field: Field, basis: Vec<String>, mul: Vec<Vec<Vec<Scalar>>>) -> Result<Self, CoeffError> {
        let d = basis.len();
        if d == 0 {
            return Err(CoeffError::Shape("an algebra needs at least the unit".into()));
        }
        if mul.len() != d || mul.iter().any(|row| row.len() != d || row.iter().any(|v| v.len() != d)) {
            return Err(CoeffError::Shape(format!("multiplication table must be {d}x{d} vectors of length {d}")));
        }
        if mul.iter().flatten().flatten().any(|x| !field.contains(x)) {
            return Err(LinalgError::FieldMismatch.into());
        }
        let alg = Algebra { field, basis, mul };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<(), CoeffError> {
        let d = self.dim();
        let name = |i: usize| self.basis[i].clone();
        for j in 0..d {
            let ej = self.basis_vector(j);
            if self.mul[0][j] != ej || self.mul[j][0] != ej {
                return Err(CoeffError::BadUnit { unit: name(0), against: name(j) });
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                if self.mul[i][j] != self.mul[j][i] {
                    return Err(CoeffError::NotCommutative(name(i), name(j)));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let left = self.multiply(&self.mul[i][j], &self.basis_vector(l));
                    let right = self.multiply(&self.basis_vector(i), &self.mul[j][l]);
                    if left != right {
                        return Err(CoeffError::NotAssociative(name(i), name(j), name(l)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The field itself, with basis `["1"]`.
    pub fn ground_field(field: Field) -> Self {
        Algebra { field, basis: vec!["1".into()], mul: vec![vec![vec![field.one()]]] }
    }

    /// `k[x]/(x^k)` with basis `1, x, ..., x^{k-1}`.
    pub fn truncated_polynomial(field: Field, k: usize) -> Self {
        Self::monogenic(field, &vec![field.zero(); k.max(1)]).expect("truncated polynomial ring is valid")
    }

    /// `k[x]/(x^k - c_{k-1} x^{k-1} - ... - c_0)` where `relation = [c_0, ..., c_{k-1}]`.
    pub fn monogenic(field: Field, relation: &[Scalar]) -> Result<Self, CoeffError> {
        let k = relation.len();
        if k == 0 {
            return Err(CoeffError::Shape("relation must have degree at least 1".into()));
        }
        if k == 1 {
            return Ok(Self::ground_field(field));
        }
        // coordinates of x^n for n < 2k - 1
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * k - 1);
        for n in 0..2 * k - 1 {
            let v = if n < k {
                let mut v = vec![field.zero(); k];
                v[n] = field.one();
                v
            } else {
                let prev = &powers[n - 1];
                let top = prev[k - 1].clone();
                let mut v = vec![field.zero(); k];
                v[1..].clone_from_slice(&prev[..k - 1]);
                for t in 0..k {
                    v[t] = &v[t] + &(&top * &relation[t]);
                }
                v
            };
            powers.push(v);
        }
        let basis = (0..k)
            .map(|n| match n {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{n}"),
            })
            .collect();
        let mul = (0..k).map(|i| (0..k).map(|j| powers[i + j].clone()).collect()).collect();
        Algebra::new(field, basis, mul)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mul[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn unit(&self) -> Vec<Scalar> {
        self.basis_vector(0)
    }

    /// Product of two elements given in coordinates.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = ai * bj;
                for (t, m) in self.mul[i][j].iter().enumerate() {
                    if !m.is_zero() {
                        out[t] = &out[t] + &(&c * m);
                    }
                }
            }
        }
        out
    }
}
