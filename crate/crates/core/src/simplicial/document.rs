use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{GenId, Generator, Simplex, SimplicialSpace, SpaceError};

/// JSON form of a space:
///
/// ```json
/// { "name": "circle", "basepoint": "pt",
///   "simplices": [ { "name": "pt", "dim": 0, "faces": [] },
///                  { "name": "e", "dim": 1, "faces": [["pt", []], ["pt", []]] } ] }
/// ```
///
/// Faces are listed `d_0 .. d_dim`; each is a generator name and a strictly
/// decreasing degeneracy word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub name: String,
    pub basepoint: String,
    pub simplices: Vec<GeneratorDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDocument {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<FaceRef>,
}

/// `[generator-name, [word...]]`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRef(pub String, pub Vec<usize>);

impl FaceRef {
    pub fn plain(name: &str) -> Self {
        FaceRef(name.to_string(), Vec::new())
    }
}

impl SpaceDocument {
    pub fn from_json(text: &str) -> Result<Self, SpaceError> {
        serde_json::from_str(text).map_err(|e| SpaceError::Json(e.to_string()))
    }

    /// Resolves names and checks dimensions and normal forms. Simplicial
    /// identities are not checked here; see [`SimplicialSpace::validate`].
    pub fn resolve(&self) -> Result<SimplicialSpace, SpaceError> {
        let mut order: Vec<&GeneratorDocument> = self.simplices.iter().collect();
        order.sort_by(|a, b| a.name.cmp(&b.name));
        for w in order.windows(2) {
            if w[0].name == w[1].name {
                return Err(SpaceError::DuplicateGenerator(w[0].name.clone()));
            }
        }
        let index: HashMap<&str, (usize, usize)> =
            order.iter().enumerate().map(|(k, g)| (g.name.as_str(), (k, g.dim))).collect();
        let basepoint = match index.get(self.basepoint.as_str()) {
            Some(&(k, 0)) => GenId(k),
            _ => return Err(SpaceError::BadBasepoint(self.basepoint.clone())),
        };

        let mut generators = Vec::with_capacity(order.len());
        for g in &order {
            let expected = if g.dim == 0 { 0 } else { g.dim + 1 };
            if g.faces.len() != expected {
                return Err(SpaceError::FaceCount {
                    generator: g.name.clone(),
                    dim: g.dim,
                    expected,
                    found: g.faces.len(),
                });
            }
            let mut faces = Vec::with_capacity(g.faces.len());
            for (k, FaceRef(target, word)) in g.faces.iter().enumerate() {
                let &(t, tdim) = index.get(target.as_str()).ok_or_else(|| SpaceError::UnknownGenerator {
                    name: target.clone(),
                    referenced_by: g.name.clone(),
                })?;
                let dim = tdim + word.len();
                if dim != g.dim - 1 {
                    return Err(SpaceError::FaceDimension {
                        generator: g.name.clone(),
                        face: k,
                        expected: g.dim - 1,
                        found: dim,
                    });
                }
                let decreasing = word.windows(2).all(|w| w[0] > w[1]);
                if !decreasing || word.first().is_some_and(|&j| j >= dim) {
                    return Err(SpaceError::NonNormalWord { generator: g.name.clone(), face: k, word: word.clone() });
                }
                faces.push(Simplex { base: GenId(t), word: word.clone(), dim });
            }
            generators.push(Generator { name: g.name.clone(), dim: g.dim, faces });
        }
        Ok(SimplicialSpace { name: self.name.clone(), generators, basepoint })
    }
}

impl SimplicialSpace {
    /// Inverse of [`SpaceDocument::resolve`].
    pub fn to_document(&self) -> SpaceDocument {
        SpaceDocument {
            name: self.name.clone(),
            basepoint: self.generators[self.basepoint.0].name.clone(),
            simplices: self
                .generators
                .iter()
                .map(|g| GeneratorDocument {
                    name: g.name.clone(),
                    dim: g.dim,
                    faces: g
                        .faces
                        .iter()
                        .map(|f| FaceRef(self.generators[f.base.0].name.clone(), f.word.clone()))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Parses and fully validates a space document; identity violations are errors.
pub fn parse_space(text: &str) -> Result<SimplicialSpace, SpaceError> {
    let space = SpaceDocument::from_json(text)?.resolve()?;
    let report = space.validate();
    if !report.passed() {
        return Err(SpaceError::IdentityViolation(report.violations));
    }
    Ok(space)
}
