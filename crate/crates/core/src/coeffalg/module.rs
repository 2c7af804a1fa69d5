use std::collections::BTreeMap;

use crate::actions::{ActionPartition, ActionSlot};
use crate::exactlinalg::{Field, Matrix, Scalar};

use super::{Algebra, CoeffError};

/// A vector space `k^m` with one action of the algebra per key. Key `c` maps
/// to `d` matrices, the `t`-th being the action of `e_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiModule {
    field: Field,
    algebra_dim: usize,
    dim: usize,
    actions: BTreeMap<String, Vec<Matrix>>,
}

impl MultiModule {
    /// Checks that every action is unital and multiplicative and that actions
    /// under distinct keys commute.
    pub fn new(alg: &Algebra, dim: usize, actions: BTreeMap<String, Vec<Matrix>>) -> Result<Self, CoeffError> {
        let d = alg.dim();
        let field = alg.field();
        for (key, mats) in &actions {
            if mats.len() != d {
                return Err(CoeffError::Shape(format!(
                    "action {key:?} has {} matrices, the algebra has dimension {d}",
                    mats.len()
                )));
            }
            for (t, m) in mats.iter().enumerate() {
                if m.rows() != dim || m.cols() != dim {
                    return Err(CoeffError::Shape(format!(
                        "action {key:?} of {} is {}x{}, expected {dim}x{dim}",
                        alg.basis()[t],
                        m.rows(),
                        m.cols()
                    )));
                }
                if m.field() != field {
                    return Err(crate::exactlinalg::LinalgError::FieldMismatch.into());
                }
            }
        }
        let module = MultiModule { field, algebra_dim: d, dim, actions };
        module.check_axioms(alg)?;
        Ok(module)
    }

    fn check_axioms(&self, alg: &Algebra) -> Result<(), CoeffError> {
        let d = alg.dim();
        let name = |i: usize| alg.basis()[i].clone();
        let identity = Matrix::identity(self.field, self.dim);
        for (key, mats) in &self.actions {
            if mats[0] != identity {
                return Err(CoeffError::NotUnital { key: key.clone() });
            }
            for i in 0..d {
                for j in i..d {
                    let lhs = mats[i].mul(&mats[j])?;
                    if lhs != self.act_matrices(mats, alg.product(i, j)) {
                        return Err(CoeffError::NotMultiplicative { key: key.clone(), left: name(i), right: name(j) });
                    }
                }
            }
        }
        let keys: Vec<&String> = self.actions.keys().collect();
        for (ka, key_a) in keys.iter().enumerate() {
            for key_b in &keys[ka + 1..] {
                let (ma, mb) = (&self.actions[*key_a], &self.actions[*key_b]);
                for (i, a) in ma.iter().enumerate().skip(1) {
                    for (j, b) in mb.iter().enumerate().skip(1) {
                        if a.mul(b)? != b.mul(a)? {
                            return Err(CoeffError::NotCommuting {
                                key_a: (*key_a).clone(),
                                a: name(i),
                                key_b: (*key_b).clone(),
                                b: name(j),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn act_matrices(&self, mats: &[Matrix], a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.dim, self.dim);
        for (m, c) in mats.iter().zip(a) {
            if !c.is_zero() {
                out = out.add_scaled(m, c).expect("square matrices of equal size");
            }
        }
        out
    }

    /// Every key acts through the same `A`-module structure `rho` on `k^m`.
    pub fn uniform<S: AsRef<str>>(alg: &Algebra, rho: &[Matrix], keys: &[S]) -> Result<Self, CoeffError> {
        let dim = rho.first().map_or(0, Matrix::rows);
        let actions = keys.iter().map(|k| (k.as_ref().to_string(), rho.to_vec())).collect();
        Self::new(alg, dim, actions)
    }

    /// `M = A`, every key acting by multiplication.
    pub fn regular<S: AsRef<str>>(alg: &Algebra, keys: &[S]) -> Result<Self, CoeffError> {
        Self::uniform(alg, &regular_representation(alg), keys)
    }

    /// `M = A` where `twisted_key` acts by multiplication after the algebra
    /// automorphism `phi` (a `d x d` matrix on coordinates) and the other keys
    /// act by plain multiplication.
    pub fn twisted<S: AsRef<str>>(
        alg: &Algebra,
        keys: &[S],
        twisted_key: &str,
        phi: &Matrix,
    ) -> Result<Self, CoeffError> {
        let left = regular_representation(alg);
        let mut actions = BTreeMap::new();
        for key in keys {
            let key = key.as_ref();
            let mats = if key == twisted_key {
                (0..alg.dim())
                    .map(|t| {
                        let image: Vec<Scalar> = (0..alg.dim()).map(|s| phi.get(s, t)).collect();
                        combination(alg.field(), alg.dim(), &left, &image)
                    })
                    .collect()
            } else {
                left.clone()
            };
            actions.insert(key.to_string(), mats);
        }
        if !actions.contains_key(twisted_key) {
            return Err(CoeffError::UnknownKey(twisted_key.to_string()));
        }
        Self::new(alg, alg.dim(), actions)
    }

    /// `End_k(N)` for an `A`-module `rho` on `k^m`: `left_key` acts by
    /// post-composition `f ↦ rho(a) ∘ f`, `right_key` by pre-composition
    /// `f ↦ f ∘ rho(a)`. An endomorphism `f` has coordinate `r*m + c` for its
    /// entry in row `r`, column `c`. With `right_key = None` only the
    /// post-composition action is kept.
    pub fn endomorphism(
        alg: &Algebra,
        rho: &[Matrix],
        left_key: &str,
        right_key: Option<&str>,
    ) -> Result<Self, CoeffError> {
        // the input must itself be a module
        Self::uniform(alg, rho, &["input"])?;
        let field = alg.field();
        let m = rho.first().map_or(0, Matrix::rows);
        let identity = Matrix::identity(field, m);
        let mut actions = BTreeMap::new();
        actions.insert(left_key.to_string(), rho.iter().map(|r| kronecker(r, &identity)).collect());
        if let Some(right) = right_key {
            actions.insert(right.to_string(), rho.iter().map(|r| kronecker(&identity, &r.transpose())).collect());
        }
        Self::new(alg, m * m, actions)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.actions.keys().map(String::as_str)
    }

    /// The `d` matrices of one action.
    pub fn action(&self, key: &str) -> Option<&[Matrix]> {
        self.actions.get(key).map(Vec::as_slice)
    }

    /// The action of `a = sum a_t e_t` under `key`.
    pub fn act(&self, key: &str, a: &[Scalar]) -> Result<Matrix, CoeffError> {
        let mats = self.actions.get(key).ok_or_else(|| CoeffError::UnknownKey(key.to_string()))?;
        if a.len() != self.algebra_dim {
            return Err(CoeffError::Shape(format!(
                "element has {} coordinates, expected {}",
                a.len(),
                self.algebra_dim
            )));
        }
        Ok(self.act_matrices(mats, a))
    }

    /// Renames keys; `rename` must be injective on the current keys.
    pub fn rekey(&self, mut rename: impl FnMut(&str) -> String) -> Self {
        let actions = self.actions.iter().map(|(k, v)| (rename(k), v.clone())).collect();
        MultiModule { actions, ..self.clone() }
    }

    pub(crate) fn actions(&self) -> &BTreeMap<String, Vec<Matrix>> {
        &self.actions
    }
}

/// Left multiplication matrices `L_t` with `L_t e_s = e_t e_s`.
pub fn regular_representation(alg: &Algebra) -> Vec<Matrix> {
    let d = alg.dim();
    (0..d)
        .map(|t| {
            let rows: Vec<Vec<(usize, Scalar)>> =
                (0..d).map(|r| (0..d).map(|s| (s, alg.product(t, s)[r].clone())).collect()).collect();
            Matrix::from_rows(alg.field(), d, rows).expect("structure constants lie in the field")
        })
        .collect()
}

fn combination(field: Field, dim: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zero(field, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add_scaled(m, c).expect("equal shapes");
        }
    }
    out
}

fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let (br, bc) = (b.rows(), b.cols());
    let rows = (0..a.rows() * br)
        .map(|r| {
            let (ra, rb) = (r / br, r % br);
            let mut row = Vec::new();
            for (ca, x) in a.row(ra) {
                for (cb, y) in b.row(rb) {
                    row.push((ca * bc + cb, x * y));
                }
            }
            row
        })
        .collect();
    Matrix::from_rows(a.field(), a.cols() * bc, rows).expect("indices in range")
}

/// How module keys are matched to slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keying {
    /// One action per sweep class, keyed by class id.
    ByClass,
    /// One action per slot, keyed by slot name, ignoring the classes. Used to
    /// demonstrate that the identifications are necessary.
    BySlot,
}

/// A module paired with the partition whose keys it carries.
#[derive(Clone, Debug)]
pub struct CoefficientAssignment {
    partition: ActionPartition,
    module: MultiModule,
    keying: Keying,
}

impl CoefficientAssignment {
    /// Requires the module keys to be exactly the expected ones for `keying`.
    pub fn new(partition: ActionPartition, module: MultiModule, keying: Keying) -> Result<Self, CoeffError> {
        let expected = expected_keys(&partition, keying);
        check_keys(&expected, module.keys())?;
        Ok(CoefficientAssignment { partition, module, keying })
    }

    pub fn by_class(partition: ActionPartition, module: MultiModule) -> Result<Self, CoeffError> {
        Self::new(partition, module, Keying::ByClass)
    }

    pub fn partition(&self) -> &ActionPartition {
        &self.partition
    }

    pub fn module(&self) -> &MultiModule {
        &self.module
    }

    pub fn keying(&self) -> Keying {
        self.keying
    }

    /// Module key carrying the action of `slot`.
    pub fn key_for(&self, slot: &ActionSlot) -> Option<String> {
        let k = self.partition.slots().binary_search(slot).ok()?;
        Some(match self.keying {
            Keying::ByClass => self.partition.class_of(slot)?.to_string(),
            Keying::BySlot => self.partition.slot_names()[k].clone(),
        })
    }
}

/// Keys a module must carry for `partition` under `keying`.
pub fn expected_keys(partition: &ActionPartition, keying: Keying) -> Vec<String> {
    match keying {
        Keying::ByClass => partition.class_ids(),
        Keying::BySlot => partition.slot_names().to_vec(),
    }
}

pub(super) fn check_keys<'a>(expected: &[String], found: impl Iterator<Item = &'a str>) -> Result<(), CoeffError> {
    let found: Vec<&str> = found.collect();
    let missing: Vec<String> = expected.iter().filter(|k| !found.contains(&k.as_str())).cloned().collect();
    let extra: Vec<String> =
        found.iter().filter(|k| !expected.iter().any(|e| e == *k)).map(|k| k.to_string()).collect();
    if missing.is_empty() && extra.is_empty() {
        Ok(())
    } else {
        Err(CoeffError::KeyMismatch { missing, extra })
    }
}
