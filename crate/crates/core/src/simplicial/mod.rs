//! Finite pointed simplicial sets.
//!
//! A space is given by its non-degenerate simplices ("generators") together with
//! their face tables. Every simplex is represented in Eilenberg–Zilber normal
//! form: a strictly decreasing degeneracy word applied to a single generator.
//! The word `[j1, j2, ..., jr]` with `j1 > j2 > ... > jr` denotes
//! `s_j1 ∘ s_j2 ∘ ... ∘ s_jr` applied to the generator, so `jr` acts first.
//! Because the representation is unique, equality of simplices is structural
//! and "is this the basepoint" is a check on the generator alone.

mod builtin;
mod document;

use std::fmt;

pub use document::{parse_space, FaceRef, GeneratorDocument, SpaceDocument};

/// Index of a generator inside its [`SimplicialSpace`]. Generators are kept
/// sorted by name, so `GenId` order is name order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub(crate) usize);

impl GenId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A simplex in normal form. Ordering is canonical: generator, then word
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    base: GenId,
    word: Vec<usize>,
    dim: usize,
}

impl Simplex {
    pub fn base(&self) -> GenId {
        self.base
    }

    /// Degeneracy word, outermost first.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    name: String,
    dim: usize,
    faces: Vec<Simplex>,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Faces `d_0 .. d_dim`; empty for vertices.
    pub fn faces(&self) -> &[Simplex] {
        &self.faces
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("malformed space document: {0}")]
    Json(String),
    #[error("generator {0:?} is defined more than once")]
    DuplicateGenerator(String),
    #[error("{referenced_by:?} refers to unknown generator {name:?}")]
    UnknownGenerator { name: String, referenced_by: String },
    #[error("basepoint {0:?} is missing or not a vertex")]
    BadBasepoint(String),
    #[error("generator {generator:?} of dimension {dim} lists {found} faces, expected {expected}")]
    FaceCount { generator: String, dim: usize, expected: usize, found: usize },
    #[error("face {face} of {generator:?} has dimension {found}, expected {expected}")]
    FaceDimension { generator: String, face: usize, expected: usize, found: usize },
    #[error("face {face} of {generator:?} uses degeneracy word {word:?}, which is not in normal form")]
    NonNormalWord { generator: String, face: usize, word: Vec<usize> },
    #[error("simplicial identities fail: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    IdentityViolation(Vec<IdentityViolation>),
    #[error("face index {index} out of range for a {dim}-simplex")]
    FaceIndex { index: usize, dim: usize },
    #[error("degeneracy index {index} out of range for a {dim}-simplex")]
    DegeneracyIndex { index: usize, dim: usize },
    #[error("unknown builtin space {0:?} (expected circle, sphereN, torus or pinched-torus)")]
    UnknownBuiltin(String),
}

/// A failure of `d_i d_j = d_{j-1} d_i` (`i < j`) on a generator.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IdentityViolation {
    pub generator: String,
    pub i: usize,
    pub j: usize,
    /// `d_i d_j g`
    pub left: String,
    /// `d_{j-1} d_i g`
    pub right: String,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: d{}d{} = {} but d{}d{} = {}",
            self.generator,
            self.i,
            self.j,
            self.left,
            self.j - 1,
            self.i,
            self.right
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<IdentityViolation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite pointed simplicial set, immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSpace {
    name: String,
    generators: Vec<Generator>,
    basepoint: GenId,
}

/// Strictly decreasing words of length `len` with entries `< n`, in
/// lexicographic order.
pub(crate) fn decreasing_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in len - 1..n {
        for tail in decreasing_words(first, len - 1) {
            let mut w = Vec::with_capacity(len);
            w.push(first);
            w.extend(tail);
            out.push(w);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl SimplicialSpace {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.generators[id.0]
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.generators.len()).map(GenId)
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name).map(GenId)
    }

    pub fn basepoint(&self) -> GenId {
        self.basepoint
    }

    pub fn max_dim(&self) -> usize {
        self.generators.iter().map(|g| g.dim).max().unwrap_or(0)
    }

    /// The generator itself as a non-degenerate simplex.
    pub fn simplex(&self, id: GenId) -> Simplex {
        Simplex { base: id, word: Vec::new(), dim: self.generators[id.0].dim }
    }

    /// The basepoint of dimension `n`: `s_{n-1} ... s_0 ∗`.
    pub fn basepoint_simplex(&self, n: usize) -> Simplex {
        Simplex { base: self.basepoint, word: (0..n).rev().collect(), dim: n }
    }

    pub fn is_basepoint(&self, s: &Simplex) -> bool {
        s.base == self.basepoint
    }

    /// `d_i s`, computed by pushing the face through the degeneracy word.
    pub fn apply_face(&self, s: &Simplex, i: usize) -> Result<Simplex, SpaceError> {
        if s.dim == 0 || i > s.dim {
            return Err(SpaceError::FaceIndex { index: i, dim: s.dim });
        }
        let mut i = i;
        let mut outer = Vec::with_capacity(s.word.len());
        for (k, &j) in s.word.iter().enumerate() {
            if i < j {
                // d_i s_j = s_{j-1} d_i
                outer.push(j - 1);
            } else if i == j || i == j + 1 {
                // d_j s_j = d_{j+1} s_j = id
                outer.extend_from_slice(&s.word[k + 1..]);
                return Ok(Simplex { base: s.base, word: outer, dim: s.dim - 1 });
            } else {
                // d_i s_j = s_j d_{i-1}
                outer.push(j);
                i -= 1;
            }
        }
        let mut out = self.generators[s.base.0].faces[i].clone();
        for &j in outer.iter().rev() {
            out = self.apply_degeneracy(&out, j)?;
        }
        Ok(out)
    }

    /// `s_i s`, re-normalized with `s_i s_j = s_{j+1} s_i` for `i <= j`.
    pub fn apply_degeneracy(&self, s: &Simplex, i: usize) -> Result<Simplex, SpaceError> {
        if i > s.dim {
            return Err(SpaceError::DegeneracyIndex { index: i, dim: s.dim });
        }
        let mut word: Vec<usize> = Vec::with_capacity(s.word.len() + 1);
        let mut placed = false;
        for &j in &s.word {
            if j >= i {
                word.push(j + 1);
            } else {
                if !placed {
                    word.push(i);
                    placed = true;
                }
                word.push(j);
            }
        }
        if !placed {
            word.push(i);
        }
        Ok(Simplex { base: s.base, word, dim: s.dim + 1 })
    }

    /// All `n`-simplices in canonical order, the basepoint included.
    pub fn enumerate_simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (g, gen) in self.generators.iter().enumerate() {
            if gen.dim > n {
                continue;
            }
            for word in decreasing_words(n, n - gen.dim) {
                out.push(Simplex { base: GenId(g), word, dim: n });
            }
        }
        out
    }

    /// The `n`-simplices other than the basepoint, in canonical order.
    pub fn non_basepoint_simplices(&self, n: usize) -> Vec<Simplex> {
        let mut all = self.enumerate_simplices(n);
        all.retain(|s| !self.is_basepoint(s));
        all
    }

    /// Number of non-basepoint `n`-simplices, by the closed form
    /// `sum over generators g != ∗ of C(n, n - dim g)`.
    pub fn count_non_basepoint(&self, n: usize) -> usize {
        self.generators
            .iter()
            .enumerate()
            .filter(|(g, gen)| *g != self.basepoint.0 && gen.dim <= n)
            .map(|(_, gen)| binomial(n, n - gen.dim))
            .sum()
    }

    /// Renders a simplex as e.g. `s2s0(pt)`, or just the name when non-degenerate.
    pub fn render(&self, s: &Simplex) -> String {
        let name = &self.generators[s.base.0].name;
        if s.word.is_empty() {
            return name.clone();
        }
        let word: String = s.word.iter().map(|j| format!("s{j}")).collect();
        format!("{word}({name})")
    }

    /// Checks `d_i d_j g = d_{j-1} d_i g` for every generator of dimension at
    /// least two and every `i < j`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for id in self.generator_ids() {
            let g = self.simplex(id);
            if g.dim < 2 {
                continue;
            }
            for j in 1..=g.dim {
                for i in 0..j {
                    let left = self.apply_face(&g, j).and_then(|f| self.apply_face(&f, i)).expect("indices in range");
                    let right =
                        self.apply_face(&g, i).and_then(|f| self.apply_face(&f, j - 1)).expect("indices in range");
                    if left != right {
                        report.violations.push(IdentityViolation {
                            generator: self.generators[id.0].name.clone(),
                            i,
                            j,
                            left: self.render(&left),
                            right: self.render(&right),
                        });
                    }
                }
            }
        }
        report
    }

    /// One of the built-in minimal spaces: `circle`, `sphereN` (also `sphere(N)`),
    /// `torus`, `pinched-torus`.
    pub fn builtin(name: &str) -> Result<Self, SpaceError> {
        builtin::builtin(name)
    }
}

/// Free-function form of [`SimplicialSpace::validate`].
pub fn validate_space(space: &SimplicialSpace) -> ValidationReport {
    space.validate()
}

/// Free-function form of [`SimplicialSpace::builtin`].
pub fn builtin_space(name: &str) -> Result<SimplicialSpace, SpaceError> {
    SimplicialSpace::builtin(name)
}

#[cfg(test)]
mod tests;
