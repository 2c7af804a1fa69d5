//! The cosimplicial vector space `(M, X)^n = Hom(A^{⊗ t_n}, M)` as explicit
//! matrices, where `t_n` counts the non-basepoint `n`-simplices of `X`.
//!
//! The coface `d^i` sends `f` to the cochain whose value on a basis tensor
//! `b = ⊗_σ b_σ` (one factor per non-basepoint `(n+1)`-simplex) is
//!
//! ```text
//! (d^i f)(b) = [∏_{d_i σ = ∗} ρ_{slot(σ, i)}(b_σ)] · f(⊗_τ ∏_{d_i σ = τ} b_σ)
//! ```
//!
//! where `slot(σ, i)` is the generator slot [`reduce_slot`] finds for `(σ, i)`.
//! The codegeneracy `s^i` evaluates `f` on the tensor that places `b_τ` at
//! `s_i τ` and the unit everywhere else.
//!
//! A cochain `f` in degree `n` is a column vector with one coordinate per pair
//! (basis tensor `β`, module basis index `μ`), at position `β · m + μ`. The
//! tensor index `β` reads the factors in canonical simplex order as base-`d`
//! digits, first simplex most significant.

mod classical;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::actions::{reduce_slot, ActionError};
use crate::coeffalg::{Algebra, CoefficientAssignment};
use crate::exactlinalg::{Field, LinalgError, Matrix, Scalar};
use crate::simplicial::{Simplex, SimplicialSpace};

pub use classical::classical_oracle;

/// Default cap on the dimension of any hom space the complex needs.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CochainError {
    #[error("hom space in degree {degree} has dimension {dimension}, above the budget of {budget}")]
    Budget {
        degree: usize,
        /// Decimal, since it may not fit in a machine word.
        dimension: String,
        budget: usize,
    },
    #[error("maximum degree must be at least 1")]
    MaxDegree,
    #[error("degree {degree} is outside 0..={cap}")]
    DegreeOutOfRange { degree: usize, cap: usize },
    #[error("index {index} is out of range in degree {degree}")]
    IndexOutOfRange { degree: usize, index: usize },
    #[error("module is over {module}, algebra over {algebra}")]
    FieldMismatch { algebra: Field, module: Field },
    #[error("module actions have {module} matrices, the algebra has dimension {algebra}")]
    AlgebraMismatch { algebra: usize, module: usize },
    #[error("slot {0} has no action in the coefficient assignment")]
    MissingAction(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("negative cohomology dimension in degree {0}")]
    Inconsistent(usize),
}

type Dense = Vec<Vec<Scalar>>;

/// Index set of the hom space in one degree.
#[derive(Clone, Debug)]
pub struct HomBasis {
    degree: usize,
    simplices: Vec<Simplex>,
    position: HashMap<Simplex, usize>,
    algebra_dim: usize,
    module_dim: usize,
}

impl HomBasis {
    fn new(space: &SimplicialSpace, degree: usize, algebra_dim: usize, module_dim: usize) -> Self {
        let simplices = space.non_basepoint_simplices(degree);
        let position = simplices.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        HomBasis { degree, simplices, position, algebra_dim, module_dim }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Non-basepoint simplices in canonical order; one tensor factor each.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn tensor_count(&self) -> usize {
        self.algebra_dim.pow(self.simplices.len() as u32)
    }

    pub fn dim(&self) -> usize {
        if self.module_dim == 0 {
            return 0;
        }
        self.module_dim * self.tensor_count()
    }

    /// Index of basis element (`digits`, `mu`).
    pub fn encode(&self, digits: &[usize], mu: usize) -> usize {
        self.tensor_index(digits) * self.module_dim + mu
    }

    pub fn decode(&self, index: usize) -> (Vec<usize>, usize) {
        (self.tensor_digits(index / self.module_dim), index % self.module_dim)
    }

    fn tensor_index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &b| acc * self.algebra_dim + b)
    }

    fn tensor_digits(&self, mut beta: usize) -> Vec<usize> {
        let mut digits = vec![0; self.simplices.len()];
        for slot in digits.iter_mut().rev() {
            *slot = beta % self.algebra_dim;
            beta /= self.algebra_dim;
        }
        digits
    }
}

/// Where one `(n+1)`-simplex goes under `d_i`.
#[derive(Clone, Copy, Debug)]
enum Target {
    /// `d_i σ = ∗`: the factor acts on the value through this key.
    Act(usize),
    /// `d_i σ` is the simplex at this position in degree `n`.
    Factor(usize),
}

/// Space, algebra and coefficients, with the hom spaces of degrees `0..=N+1`
/// checked against the budget.
#[derive(Debug)]
pub struct CochainSetup {
    space: SimplicialSpace,
    algebra: Algebra,
    assignment: CoefficientAssignment,
    max_degree: usize,
    budget: usize,
    bases: Vec<HomBasis>,
    keys: Vec<String>,
    /// `actions[key][t]` is the action of `e_t`, dense.
    actions: Vec<Vec<Dense>>,
}

/// `m · d^t` as a decimal string, exact.
fn big_dimension(m: usize, d: usize, t: usize) -> String {
    let n = num_bigint::BigUint::from(m) * num_bigint::BigUint::from(d).pow(t as u32);
    n.to_string()
}

impl CochainSetup {
    pub fn new(
        space: SimplicialSpace,
        algebra: Algebra,
        assignment: CoefficientAssignment,
        max_degree: usize,
    ) -> Result<Self, CochainError> {
        Self::with_budget(space, algebra, assignment, max_degree, DEFAULT_BUDGET)
    }

    pub fn with_budget(
        space: SimplicialSpace,
        algebra: Algebra,
        assignment: CoefficientAssignment,
        max_degree: usize,
        budget: usize,
    ) -> Result<Self, CochainError> {
        if max_degree == 0 {
            return Err(CochainError::MaxDegree);
        }
        let module = assignment.module();
        if module.field() != algebra.field() {
            return Err(CochainError::FieldMismatch { algebra: algebra.field(), module: module.field() });
        }
        if module.algebra_dim() != algebra.dim() {
            return Err(CochainError::AlgebraMismatch { algebra: algebra.dim(), module: module.algebra_dim() });
        }
        let (d, m) = (algebra.dim(), module.dim());
        for degree in 0..=max_degree + 1 {
            let t = space.count_non_basepoint(degree);
            let dim = match m {
                0 => Some(0),
                _ => (d as u128).checked_pow(t as u32).and_then(|p| p.checked_mul(m as u128)),
            };
            if dim.filter(|&x| x <= budget as u128).is_none() {
                return Err(CochainError::Budget { degree, dimension: big_dimension(m, d, t), budget });
            }
        }
        let bases = (0..=max_degree + 1).map(|n| HomBasis::new(&space, n, d, m)).collect();
        let keys: Vec<String> = module.keys().map(str::to_string).collect();
        let actions =
            keys.iter().map(|k| module.action(k).expect("listed key").iter().map(Matrix::to_dense).collect()).collect();
        Ok(CochainSetup { space, algebra, assignment, max_degree, budget, bases, keys, actions })
    }

    pub fn space(&self) -> &SimplicialSpace {
        &self.space
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn assignment(&self) -> &CoefficientAssignment {
        &self.assignment
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn field(&self) -> Field {
        self.algebra.field()
    }

    fn module_dim(&self) -> usize {
        self.assignment.module().dim()
    }

    /// Hom space basis in degree `n`, for `n <= N + 1`.
    pub fn basis(&self, n: usize) -> Result<&HomBasis, CochainError> {
        self.bases.get(n).ok_or(CochainError::DegreeOutOfRange { degree: n, cap: self.max_degree + 1 })
    }

    /// `t_n`, the number of non-basepoint `n`-simplices.
    pub fn tensor_factors(&self, n: usize) -> Result<usize, CochainError> {
        Ok(self.basis(n)?.simplices.len())
    }

    /// `m · d^{t_n}`.
    pub fn hom_dimension(&self, n: usize) -> Result<usize, CochainError> {
        Ok(self.basis(n)?.dim())
    }

    fn targets(&self, n: usize, i: usize) -> Result<Vec<Target>, CochainError> {
        let upper = self.basis(n + 1)?;
        let lower = self.basis(n)?;
        upper
            .simplices
            .iter()
            .map(|sigma| {
                let face = self.space.apply_face(sigma, i).map_err(ActionError::from)?;
                if self.space.is_basepoint(&face) {
                    let slot = reduce_slot(&self.space, sigma, i)?;
                    let key = self
                        .assignment
                        .key_for(&slot)
                        .ok_or_else(|| CochainError::MissingAction(slot.name(&self.space)))?;
                    let k = self.keys.iter().position(|x| *x == key).ok_or(CochainError::MissingAction(key))?;
                    Ok(Target::Act(k))
                } else {
                    Ok(Target::Factor(lower.position[&face]))
                }
            })
            .collect()
    }

    /// `d^i: (M,X)^n -> (M,X)^{n+1}` for `0 <= i <= n+1`, as a
    /// `hom(n+1) x hom(n)` matrix.
    pub fn coface_matrix(&self, n: usize, i: usize) -> Result<Matrix, CochainError> {
        if i > n + 1 {
            return Err(CochainError::IndexOutOfRange { degree: n, index: i });
        }
        let targets = self.targets(n, i)?;
        let upper = self.basis(n + 1)?;
        let lower = self.basis(n)?;
        let (field, m, d) = (self.field(), self.module_dim(), self.algebra.dim());
        let blocks = if m == 0 { 0 } else { upper.tensor_count() };
        let rows: Vec<Vec<Vec<(usize, Scalar)>>> = (0..blocks)
            .into_par_iter()
            .map(|beta| {
                let digits = upper.tensor_digits(beta);
                let mut action: Option<Dense> = None;
                let mut grouped: Vec<Vec<Scalar>> = vec![self.algebra.unit(); lower.simplices.len()];
                for (k, target) in targets.iter().enumerate() {
                    let b = digits[k];
                    if b == 0 {
                        continue;
                    }
                    match *target {
                        Target::Act(key) => {
                            let rho = &self.actions[key][b];
                            action = Some(match action {
                                None => rho.clone(),
                                Some(a) => dense_mul(&a, rho, field),
                            });
                        }
                        Target::Factor(tau) => {
                            grouped[tau] = self.algebra.multiply(&grouped[tau], &self.algebra.basis_vector(b));
                        }
                    }
                }
                let terms = expand_tensor(&grouped, d, field);
                (0..m)
                    .map(|mu| {
                        let mut row = Vec::new();
                        for (gamma, c) in &terms {
                            match &action {
                                None => row.push((gamma * m + mu, c.clone())),
                                Some(a) => {
                                    for (nu, x) in a[mu].iter().enumerate() {
                                        if !x.is_zero() {
                                            row.push((gamma * m + nu, c * x));
                                        }
                                    }
                                }
                            }
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        Ok(Matrix::from_rows(field, lower.dim(), rows.into_iter().flatten().collect())?)
    }

    /// `s^i: (M,X)^{n+1} -> (M,X)^n` for `0 <= i <= n`, as a
    /// `hom(n) x hom(n+1)` matrix.
    pub fn codegeneracy_matrix(&self, n: usize, i: usize) -> Result<Matrix, CochainError> {
        if i > n {
            return Err(CochainError::IndexOutOfRange { degree: n, index: i });
        }
        let upper = self.basis(n + 1)?;
        let lower = self.basis(n)?;
        let image: Vec<usize> = lower
            .simplices
            .iter()
            .map(|tau| {
                let s = self.space.apply_degeneracy(tau, i).expect("index checked");
                upper.position[&s]
            })
            .collect();
        let (field, m) = (self.field(), self.module_dim());
        let blocks = if m == 0 { 0 } else { lower.tensor_count() };
        let mut rows = Vec::with_capacity(lower.dim());
        for beta in 0..blocks {
            let digits = lower.tensor_digits(beta);
            let mut lifted = vec![0; upper.simplices.len()];
            for (k, &b) in digits.iter().enumerate() {
                lifted[image[k]] = b;
            }
            let gamma = upper.tensor_index(&lifted);
            for mu in 0..m {
                rows.push(vec![(gamma * m + mu, field.one())]);
            }
        }
        Ok(Matrix::from_rows(field, upper.dim(), rows)?)
    }

    /// `δ^n = Σ_i (-1)^i d^i` for `n <= N`.
    pub fn differential(&self, n: usize) -> Result<Matrix, CochainError> {
        self.check_degree(n)?;
        let mut out = Matrix::zero(self.field(), self.hom_dimension(n + 1)?, self.hom_dimension(n)?);
        for i in 0..=n + 1 {
            let sign = self.field().from_i64(if i % 2 == 0 { 1 } else { -1 });
            out = out.add_scaled(&self.coface_matrix(n, i)?, &sign)?;
        }
        Ok(out)
    }

    fn check_degree(&self, n: usize) -> Result<(), CochainError> {
        if n > self.max_degree {
            return Err(CochainError::DegreeOutOfRange { degree: n, cap: self.max_degree });
        }
        Ok(())
    }

    /// Checks the cosimplicial identities on every instance whose matrices
    /// all live in degrees `<= N + 1`:
    ///
    /// * a) `d^j d^i = d^i d^{j-1}` for `i < j`
    /// * b) `s^j s^i = s^{i-1} s^j` for `i > j`
    /// * c) `s^j d^i = d^i s^{j-1}` for `i < j`, `= id` for `i ∈ {j, j+1}`,
    ///   `= d^{i-1} s^j` for `i > j + 1`
    /// * dd) `δ^{n+1} δ^n = 0`
    ///
    /// A failure records the domain degree of the composite.
    pub fn check_cosimplicial_identities(&self) -> Result<IdentityReport, CochainError> {
        let top = self.max_degree + 1;
        let mut coface: HashMap<(usize, usize), Matrix> = HashMap::new();
        let mut codeg: HashMap<(usize, usize), Matrix> = HashMap::new();
        for n in 0..top {
            for i in 0..=n + 1 {
                coface.insert((n, i), self.coface_matrix(n, i)?);
            }
            for i in 0..=n {
                codeg.insert((n, i), self.codegeneracy_matrix(n, i)?);
            }
        }
        let mut failures = Vec::new();
        let mut record = |holds: bool, relation: Relation, degree: usize, ij: Option<(usize, usize)>| {
            if !holds {
                failures.push(IdentityFailure { relation, degree, i: ij.map(|p| p.0), j: ij.map(|p| p.1) });
            }
        };

        for n in 0..top.saturating_sub(1) {
            for j in 1..=n + 2 {
                for i in 0..j {
                    let lhs = coface[&(n + 1, j)].mul(&coface[&(n, i)])?;
                    let rhs = coface[&(n + 1, i)].mul(&coface[&(n, j - 1)])?;
                    record(lhs == rhs, Relation::A, n, Some((i, j)));
                }
            }
            for i in 1..=n + 1 {
                for j in 0..i {
                    let lhs = codeg[&(n, j)].mul(&codeg[&(n + 1, i)])?;
                    let rhs = codeg[&(n, i - 1)].mul(&codeg[&(n + 1, j)])?;
                    record(lhs == rhs, Relation::B, n + 2, Some((i, j)));
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = codeg[&(n, j)].mul(&coface[&(n, i)])?;
                    let rhs = if i < j {
                        coface[&(n - 1, i)].mul(&codeg[&(n - 1, j - 1)])?
                    } else if i == j || i == j + 1 {
                        Matrix::identity(self.field(), self.hom_dimension(n)?)
                    } else {
                        coface[&(n - 1, i - 1)].mul(&codeg[&(n - 1, j)])?
                    };
                    record(lhs == rhs, Relation::C, n, Some((i, j)));
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            let dd = self.differential(n + 1)?.mul(&self.differential(n)?)?;
            record(dd.is_zero(), Relation::DeltaSquared, n, None);
        }
        Ok(IdentityReport { failures })
    }

    /// `HH^0 .. HH^N`, with `HH^n = dim ker δ^n - rank δ^{n-1}`.
    pub fn cohomology_dims(&self) -> Result<Vec<usize>, CochainError> {
        let ranks: Vec<usize> =
            (0..=self.max_degree).map(|n| self.differential(n).map(|m| m.rank())).collect::<Result<_, _>>()?;
        (0..=self.max_degree)
            .map(|n| {
                let kernel = self.hom_dimension(n)? - ranks[n];
                let image = if n == 0 { 0 } else { ranks[n - 1] };
                kernel.checked_sub(image).ok_or(CochainError::Inconsistent(n))
            })
            .collect()
    }

    /// Identity check and cohomology in one report.
    pub fn report(&self) -> Result<CochainReport, CochainError> {
        let top = self.max_degree + 1;
        let identities = self.check_cosimplicial_identities()?;
        let hh_dims = if identities.passed() { Some(self.cohomology_dims()?) } else { None };
        Ok(CochainReport {
            space: self.space.name().to_string(),
            t: (0..=top).map(|n| self.tensor_factors(n)).collect::<Result<_, _>>()?,
            hom_dims: (0..=top).map(|n| self.hom_dimension(n)).collect::<Result<_, _>>()?,
            identities: identities.into(),
            hh_dims,
        })
    }
}

fn dense_mul(a: &Dense, b: &Dense, field: Field) -> Dense {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|c| {
                    let mut acc = field.zero();
                    for (x, brow) in row.iter().zip(b) {
                        if !x.is_zero() && !brow[c].is_zero() {
                            acc = &acc + &(x * &brow[c]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Expands `⊗_k v_k` into `(tensor index, coefficient)` pairs, first factor
/// most significant.
fn expand_tensor(factors: &[Vec<Scalar>], d: usize, field: Field) -> Vec<(usize, Scalar)> {
    let mut terms = vec![(0usize, field.one())];
    for v in factors {
        let mut next = Vec::with_capacity(terms.len());
        for (idx, c) in &terms {
            for (t, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    next.push((idx * d + t, c * x));
                }
            }
        }
        terms = next;
    }
    terms
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "dd")]
    DeltaSquared,
}

/// A failing instance: relation, domain degree of the composite, and indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub relation: Relation,
    pub degree: usize,
    /// Absent for `dd`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, relation: Relation) -> bool {
        self.failures.iter().any(|f| f.relation == relation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PassMarker {
    #[serde(rename = "pass")]
    Pass,
}

/// `"pass"` or the list of failures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdentityOutcome {
    Pass(PassMarker),
    Failures(Vec<IdentityFailure>),
}

impl From<IdentityReport> for IdentityOutcome {
    fn from(r: IdentityReport) -> Self {
        if r.failures.is_empty() {
            IdentityOutcome::Pass(PassMarker::Pass)
        } else {
            IdentityOutcome::Failures(r.failures)
        }
    }
}

/// JSON report of a cohomology run. `hh_dims` is absent when an identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainReport {
    pub space: String,
    pub t: Vec<usize>,
    pub hom_dims: Vec<usize>,
    pub identities: IdentityOutcome,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hh_dims: Option<Vec<usize>>,
}

#[cfg(test)]
mod tests;
