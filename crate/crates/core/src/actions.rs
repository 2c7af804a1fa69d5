//! Action slots and the sweep closure.
//!
//! Whenever a simplex `σ ≠ ∗` has `d_i σ = ∗`, the coface maps act on the
//! coefficient module through an action attached to the pair `(σ, i)`, which we
//! call a slot and render as `"name.i"`. For an edge, index 0 is its forward
//! action and index 1 its backward action.
//!
//! The cosimplicial identities force certain slots to carry the same action.
//! For a simplex `σ` of dimension at least two and `i < j`, with
//! `F_i = d_i σ` and `F_j = d_j σ`:
//!
//! | faces                     | identification                           | name         |
//! |---------------------------|------------------------------------------|--------------|
//! | `F_i = ∗`, `F_j = ∗`      | `(σ, i) ~ (σ, j)`                        | sweep around |
//! | `F_i ≠ ∗`, `F_j = ∗`      | `(σ, j) ~ (F_i, j-1)`                    | sweep out 1  |
//! | `F_i = ∗`, `F_j ≠ ∗`      | `(σ, i) ~ (F_j, i)`                      | sweep out 2  |
//! | both `≠ ∗`, `d_i F_j = ∗` | `(F_j, i) ~ (F_i, j-1)`                  | sweep across |
//!
//! Slots on degenerate simplices are first pushed down to the underlying
//! generator with [`reduce_slot`]. Scanning the generators alone already
//! produces the full closure; [`paranoid_closure`] rescans every simplex up to
//! a dimension cap to confirm that.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::simplicial::{GenId, Simplex, SimplicialSpace, SpaceError};

/// The action of a generator `σ ≠ ∗` pointed at its `index`-th face, which is `∗`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionSlot {
    generator: GenId,
    index: usize,
}

impl ActionSlot {
    pub fn generator(&self) -> GenId {
        self.generator
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `"sigma.1"`
    pub fn name(&self, space: &SimplicialSpace) -> String {
        format!("{}.{}", space.generator(self.generator).name(), self.index)
    }

    /// Human-readable direction: forward/backward for edges, the face index otherwise.
    pub fn describe(&self, space: &SimplicialSpace) -> String {
        let g = space.generator(self.generator);
        match (g.dim(), self.index) {
            (1, 0) => format!("{} forward", g.name()),
            (1, _) => format!("{} backward", g.name()),
            (_, i) => format!("{} towards face {i}", g.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{simplex} is the basepoint and carries no actions")]
    BasepointSlot { simplex: String },
    #[error("face {index} of {simplex} is not the basepoint")]
    NotBasepointFace { simplex: String, index: usize },
    #[error("slot ({simplex}, {index}) collapses through s{layer}; the space is inconsistent")]
    Collapsing { simplex: String, index: usize, layer: usize },
    #[error("sweep across on {simplex} ({i}, {j}): d{i} of face {j} is the basepoint but d{jm} of face {i} is not", jm = j - 1)]
    AcrossMismatch { simplex: String, i: usize, j: usize },
    #[error("slot {0} is not among the generator slots")]
    UnknownSlot(String),
    #[error("paranoid cap {cap} is below max generator dimension + 1 = {needed}")]
    CapTooSmall { cap: usize, needed: usize },
}

/// All generator slots, in canonical order (generator name, then index).
pub fn enumerate_slots(space: &SimplicialSpace) -> Vec<ActionSlot> {
    let mut out = Vec::new();
    for id in space.generator_ids() {
        if id == space.basepoint() {
            continue;
        }
        let g = space.simplex(id);
        for index in 0..=g.dim() {
            if g.dim() == 0 {
                break;
            }
            let face = space.apply_face(&g, index).expect("index in range");
            if space.is_basepoint(&face) {
                out.push(ActionSlot { generator: id, index });
            }
        }
    }
    out
}

/// Reduces the slot `(s, i)` on a possibly degenerate simplex to a generator slot.
///
/// Peeling `s_j` off the front of the word keeps `i` when `i < j` and lowers it
/// to `i - 1` when `i > j + 1`; `i ∈ {j, j+1}` cannot point at the basepoint.
pub fn reduce_slot(space: &SimplicialSpace, s: &Simplex, i: usize) -> Result<ActionSlot, ActionError> {
    if space.is_basepoint(s) {
        return Err(ActionError::BasepointSlot { simplex: space.render(s) });
    }
    let face = space.apply_face(s, i)?;
    if !space.is_basepoint(&face) {
        return Err(ActionError::NotBasepointFace { simplex: space.render(s), index: i });
    }
    let mut index = i;
    for &j in s.word() {
        if index == j || index == j + 1 {
            return Err(ActionError::Collapsing { simplex: space.render(s), index: i, layer: j });
        }
        if index > j + 1 {
            index -= 1;
        }
    }
    Ok(ActionSlot { generator: s.base(), index })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepRule {
    SweepAround,
    SweepOutOne,
    SweepOutTwo,
    SweepAcross,
}

impl fmt::Display for SweepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepRule::SweepAround => "sweep around",
            SweepRule::SweepOutOne => "sweep out 1",
            SweepRule::SweepOutTwo => "sweep out 2",
            SweepRule::SweepAcross => "sweep across",
        })
    }
}

/// One forced equality between two slots, with the simplex and index pair
/// that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub rule: SweepRule,
    pub simplex: Simplex,
    pub i: usize,
    pub j: usize,
    pub left: ActionSlot,
    pub right: ActionSlot,
}

/// Applies the four sweep rules to every `i < j` on each given simplex of
/// dimension at least two.
pub fn sweep_identifications(
    space: &SimplicialSpace,
    simplices: &[Simplex],
) -> Result<Vec<Identification>, ActionError> {
    let mut out = Vec::new();
    for sigma in simplices {
        let n = sigma.dim();
        if n < 2 || space.is_basepoint(sigma) {
            continue;
        }
        let faces: Vec<Simplex> = (0..=n).map(|k| space.apply_face(sigma, k)).collect::<Result<_, _>>()?;
        for j in 1..=n {
            for i in 0..j {
                let (fi, fj) = (&faces[i], &faces[j]);
                let (star_i, star_j) = (space.is_basepoint(fi), space.is_basepoint(fj));
                let (rule, left, right) = match (star_i, star_j) {
                    (true, true) => {
                        (SweepRule::SweepAround, reduce_slot(space, sigma, i)?, reduce_slot(space, sigma, j)?)
                    }
                    (false, true) => {
                        (SweepRule::SweepOutOne, reduce_slot(space, sigma, j)?, reduce_slot(space, fi, j - 1)?)
                    }
                    (true, false) => {
                        (SweepRule::SweepOutTwo, reduce_slot(space, sigma, i)?, reduce_slot(space, fj, i)?)
                    }
                    (false, false) => {
                        let across = space.is_basepoint(&space.apply_face(fj, i)?);
                        let mirror = space.is_basepoint(&space.apply_face(fi, j - 1)?);
                        if across != mirror {
                            return Err(ActionError::AcrossMismatch { simplex: space.render(sigma), i, j });
                        }
                        if !across {
                            continue;
                        }
                        (SweepRule::SweepAcross, reduce_slot(space, fj, i)?, reduce_slot(space, fi, j - 1)?)
                    }
                };
                out.push(Identification { rule, simplex: sigma.clone(), i, j, left, right });
            }
        }
    }
    Ok(out)
}

/// Classes of slots that must carry the same action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionPartition {
    slots: Vec<ActionSlot>,
    names: Vec<String>,
    class_of: Vec<usize>,
    classes: Vec<SlotClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotClass {
    /// Name of the least member.
    pub id: String,
    /// Indices into [`ActionPartition::slots`], increasing.
    pub members: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

impl ActionPartition {
    /// The finest partition of `slots` in which every identification holds.
    pub fn from_identifications(
        space: &SimplicialSpace,
        mut slots: Vec<ActionSlot>,
        identifications: &[Identification],
    ) -> Result<Self, ActionError> {
        slots.sort();
        slots.dedup();
        let position: HashMap<ActionSlot, usize> = slots.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let lookup = |s: &ActionSlot| position.get(s).copied().ok_or_else(|| ActionError::UnknownSlot(s.name(space)));
        let mut uf = UnionFind::new(slots.len());
        for ident in identifications {
            uf.union(lookup(&ident.left)?, lookup(&ident.right)?);
        }

        // classes in order of their least member, which is also the id
        let mut class_of = vec![usize::MAX; slots.len()];
        let mut root_class: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<SlotClass> = Vec::new();
        let names: Vec<String> = slots.iter().map(|s| s.name(space)).collect();
        for k in 0..slots.len() {
            let root = uf.find(k);
            let c = *root_class.entry(root).or_insert_with(|| {
                classes.push(SlotClass { id: names[k].clone(), members: Vec::new() });
                classes.len() - 1
            });
            classes[c].members.push(k);
            class_of[k] = c;
        }
        Ok(ActionPartition { slots, names, class_of, classes })
    }

    pub fn slots(&self) -> &[ActionSlot] {
        &self.slots
    }

    pub fn slot_names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[SlotClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_ids(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.id.clone()).collect()
    }

    /// Class id of a slot, if the slot belongs to this partition.
    pub fn class_of(&self, slot: &ActionSlot) -> Option<&str> {
        let k = self.slots.binary_search(slot).ok()?;
        Some(&self.classes[self.class_of[k]].id)
    }

    /// Member names of each class.
    pub fn class_members(&self) -> Vec<Vec<String>> {
        self.classes.iter().map(|c| c.members.iter().map(|&k| self.names[k].clone()).collect()).collect()
    }

    /// `uni-module`, `bi-module`, or `k-multi-module`.
    pub fn coefficient_kind(&self) -> String {
        match self.classes.len() {
            1 => "uni-module".to_string(),
            2 => "bi-module".to_string(),
            k => format!("{k}-multi-module"),
        }
    }

    /// True when no identification would merge two distinct classes.
    pub fn is_closed_under(&self, identifications: &[Identification]) -> bool {
        identifications.iter().all(|id| {
            match (self.slots.binary_search(&id.left), self.slots.binary_search(&id.right)) {
                (Ok(a), Ok(b)) => self.class_of[a] == self.class_of[b],
                _ => false,
            }
        })
    }

    pub fn report(&self) -> ActionReport {
        ActionReport {
            slots: self.names.clone(),
            classes: self
                .classes
                .iter()
                .zip(self.class_members())
                .map(|(c, members)| ClassReport { id: c.id.clone(), members })
                .collect(),
            class_count: self.class_count(),
            coefficient_kind: self.coefficient_kind(),
        }
    }
}

/// JSON report of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub slots: Vec<String>,
    pub classes: Vec<ClassReport>,
    pub class_count: usize,
    pub coefficient_kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub id: String,
    pub members: Vec<String>,
}

/// The sweep closure computed over generators only.
pub fn sweep_closure(space: &SimplicialSpace) -> Result<ActionPartition, ActionError> {
    let generators: Vec<Simplex> = space.generator_ids().map(|g| space.simplex(g)).collect();
    let idents = sweep_identifications(space, &generators)?;
    ActionPartition::from_identifications(space, enumerate_slots(space), &idents)
}

/// The sweep closure over every simplex, degenerate ones included, of
/// dimension `2..=cap`. Fails if a degenerate simplex produces a slot that no
/// generator has.
pub fn paranoid_closure(space: &SimplicialSpace, cap: usize) -> Result<ActionPartition, ActionError> {
    let needed = space.max_dim() + 1;
    if cap < needed {
        return Err(ActionError::CapTooSmall { cap, needed });
    }
    let mut all = Vec::new();
    for n in 2..=cap {
        all.extend(space.non_basepoint_simplices(n));
    }
    // every slot on every simplex must reduce into the generator slot set
    let slots = enumerate_slots(space);
    for s in &all {
        for i in 0..=s.dim() {
            if space.is_basepoint(&space.apply_face(s, i)?) {
                let slot = reduce_slot(space, s, i)?;
                if slots.binary_search(&slot).is_err() {
                    return Err(ActionError::UnknownSlot(slot.name(space)));
                }
            }
        }
    }
    let idents = sweep_identifications(space, &all)?;
    ActionPartition::from_identifications(space, slots, &idents)
}
