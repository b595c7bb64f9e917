//! Finite posets and bounded lattices.
//!
//! A [`Poset`] stores its order as a dense boolean matrix together with its
//! cover relations. A [`FinLattice`] is a bounded poset in which every pair
//! has a meet and a join; binary meets and joins are tabulated at
//! construction.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element inside one poset or lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Closed interval `[lo, hi]` of a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: ElementId,
    pub hi: ElementId,
}

impl Interval {
    pub fn new(lo: ElementId, hi: ElementId) -> Self {
        Self { lo, hi }
    }

    /// The singleton interval `[x, x]`.
    pub fn point(x: ElementId) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Which bound is missing when a poset fails to be a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => f.write_str("meet"),
            BoundKind::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("poset has no unique minimum or no unique maximum")]
    NotBounded,
    #[error("`{a}` and `{b}` have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: BoundKind,
    },
    #[error("poset has no elements")]
    Empty,
    #[error("order matrix has size {got}, expected {expected}")]
    BadMatrix { expected: usize, got: usize },
    #[error("unknown lattice family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// A finite partially ordered set.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, ElementId>,
    leq: Vec<bool>,
    covers: Vec<(ElementId, ElementId)>,
    lower_covers: Vec<Vec<ElementId>>,
    upper_covers: Vec<Vec<ElementId>>,
}

impl Poset {
    /// Builds a poset from a full order matrix (`leq[i * n + j]` iff `i <= j`).
    /// Element order is kept as given.
    pub fn from_relation(labels: Vec<String>, leq: Vec<bool>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(LatticeError::BadMatrix {
                expected: n * n,
                got: leq.len(),
            });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), ElementId(i)).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(LatticeError::BadParams(format!(
                    "order is not reflexive at `{}`",
                    labels[i]
                )));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::CycleDetected(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j * n + k] && !leq[i * n + k] {
                        return Err(LatticeError::BadParams(format!(
                            "order is not transitive at `{}` <= `{}` <= `{}`",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(Self::assemble(labels, index, leq))
    }

    /// Builds a poset as the reflexive-transitive closure of the given
    /// relation pairs `(lower, upper)`. Element order is kept as given.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(LatticeError::BadParams(format!(
                    "relation pair ({a}, {b}) out of range"
                )));
            }
            leq[a * n + b] = true;
        }
        transitive_closure(&mut leq, n);
        Self::from_relation(labels, leq)
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, ElementId>, leq: Vec<bool>) -> Self {
        let n = labels.len();
        let mut covers = Vec::new();
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if a == b || !leq[a * n + b] {
                    continue;
                }
                let between = (0..n).any(|z| z != a && z != b && leq[a * n + z] && leq[z * n + b]);
                if !between {
                    covers.push((ElementId(a), ElementId(b)));
                    lower_covers[b].push(ElementId(a));
                    upper_covers[a].push(ElementId(b));
                }
            }
        }
        Self {
            labels,
            index,
            leq,
            covers,
            lower_covers,
            upper_covers,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.len()).map(ElementId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x.0]
    }

    pub fn find(&self, label: &str) -> Option<ElementId> {
        self.index.get(label).copied()
    }

    /// Looks up a label, failing with [`LatticeError::UnknownLabel`].
    pub fn id(&self, label: &str) -> Result<ElementId, LatticeError> {
        self.find(label)
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Cover pairs `(lower, upper)`, sorted by `(lower, upper)`.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    pub fn is_cover(&self, a: ElementId, b: ElementId) -> bool {
        self.upper_covers[a.0].contains(&b)
    }

    pub fn lower_covers(&self, x: ElementId) -> &[ElementId] {
        &self.lower_covers[x.0]
    }

    pub fn upper_covers(&self, x: ElementId) -> &[ElementId] {
        &self.upper_covers[x.0]
    }

    /// Elements below every member of `set` (all elements for the empty set).
    pub fn lower_bounds(&self, set: &[ElementId]) -> Vec<ElementId> {
        self.elements()
            .filter(|&z| set.iter().all(|&s| self.leq(z, s)))
            .collect()
    }

    pub fn upper_bounds(&self, set: &[ElementId]) -> Vec<ElementId> {
        self.elements()
            .filter(|&z| set.iter().all(|&s| self.leq(s, z)))
            .collect()
    }

    pub fn maximum(&self, set: &[ElementId]) -> Option<ElementId> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&s| self.leq(s, m)))
    }

    pub fn minimum(&self, set: &[ElementId]) -> Option<ElementId> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&s| self.leq(m, s)))
    }

    pub fn maximal(&self, set: &[ElementId]) -> Vec<ElementId> {
        set.iter()
            .copied()
            .filter(|&m| !set.iter().any(|&s| self.lt(m, s)))
            .collect()
    }

    pub fn minimal(&self, set: &[ElementId]) -> Vec<ElementId> {
        set.iter()
            .copied()
            .filter(|&m| !set.iter().any(|&s| self.lt(s, m)))
            .collect()
    }

    /// Greatest lower bound of `set`, if it exists.
    pub fn meet_of(&self, set: &[ElementId]) -> Option<ElementId> {
        self.maximum(&self.lower_bounds(set))
    }

    /// Least upper bound of `set`, if it exists.
    pub fn join_of(&self, set: &[ElementId]) -> Option<ElementId> {
        self.minimum(&self.upper_bounds(set))
    }

    pub fn bottom(&self) -> Option<ElementId> {
        self.minimum(&self.elements().collect::<Vec<_>>())
    }

    pub fn top(&self) -> Option<ElementId> {
        self.maximum(&self.elements().collect::<Vec<_>>())
    }

    /// Length of the longest chain from a minimal element up to each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // number of strict predecessors is a linear extension key
        order.sort_by_key(|&i| (0..n).filter(|&j| j != i && self.leq[j * n + i]).count());
        let mut height = vec![0usize; n];
        for &x in &order {
            height[x] = self.lower_covers[x]
                .iter()
                .map(|y| height[y.0] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    /// The order-dual poset (same labels and indices, order reversed).
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq[j * n + i];
            }
        }
        Self::assemble(self.labels.clone(), self.index.clone(), leq)
    }

    /// Graphviz DOT rendering of the Hasse quiver: one arrow from the upper
    /// element to the lower element of every cover.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph {} {{\n", dot_quote(name)));
        for x in self.elements() {
            out.push_str(&format!(
                "  n{} [label={}];\n",
                x.0,
                dot_quote(self.label(x))
            ));
        }
        for &(lo, hi) in &self.covers {
            out.push_str(&format!("  n{} -> n{};\n", hi.0, lo.0));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn dot_quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

fn transitive_closure(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
}

/// Outcome of a lattice test on a bounded poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeVerdict {
    Lattice,
    Missing {
        a: ElementId,
        b: ElementId,
        missing: BoundKind,
    },
}

impl LatticeVerdict {
    pub fn is_lattice(&self) -> bool {
        matches!(self, LatticeVerdict::Lattice)
    }
}

/// Checks that every pair of elements has a meet and a join. The first
/// failing pair in index order is returned as a witness.
pub fn is_lattice(poset: &Poset) -> LatticeVerdict {
    for a in poset.elements() {
        for b in poset.elements().filter(|&b| b > a) {
            if poset.meet_of(&[a, b]).is_none() {
                return LatticeVerdict::Missing {
                    a,
                    b,
                    missing: BoundKind::Meet,
                };
            }
            if poset.join_of(&[a, b]).is_none() {
                return LatticeVerdict::Missing {
                    a,
                    b,
                    missing: BoundKind::Join,
                };
            }
        }
    }
    LatticeVerdict::Lattice
}

/// A finite bounded lattice. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FinLattice {
    name: String,
    poset: Poset,
    bottom: ElementId,
    top: ElementId,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
}

impl FinLattice {
    /// Builds a lattice from labels and cover pairs given by label. Elements
    /// are reordered canonically by `(height, label)`.
    pub fn build(
        name: impl Into<String>,
        labels: &[&str],
        cover_pairs: &[(&str, &str)],
    ) -> Result<Self, LatticeError> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let pairs: Vec<(String, String)> = cover_pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self::build_owned(name, owned, &pairs)
    }

    pub fn build_owned(
        name: impl Into<String>,
        labels: Vec<String>,
        cover_pairs: &[(String, String)],
    ) -> Result<Self, LatticeError> {
        if labels.is_empty() {
            return Err(LatticeError::Empty);
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(cover_pairs.len());
        for (a, b) in cover_pairs {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| LatticeError::UnknownLabel(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| LatticeError::UnknownLabel(b.clone()))?;
            if ia == ib {
                return Err(LatticeError::CycleDetected(a.clone(), b.clone()));
            }
            pairs.push((ia, ib));
        }
        let raw = Poset::from_pairs(labels, &pairs)?;
        Self::from_poset(name, canonical_order(&raw))
    }

    /// Builds a lattice from an order matrix, reordering canonically.
    pub fn from_relation(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: Vec<bool>,
    ) -> Result<Self, LatticeError> {
        if labels.is_empty() {
            return Err(LatticeError::Empty);
        }
        let raw = Poset::from_relation(labels, leq)?;
        Self::from_poset(name, canonical_order(&raw))
    }

    /// Wraps an existing poset, keeping its element order. Fails unless the
    /// poset is bounded and every pair has a meet and a join.
    pub fn from_poset(name: impl Into<String>, poset: Poset) -> Result<Self, LatticeError> {
        if poset.is_empty() {
            return Err(LatticeError::Empty);
        }
        let (bottom, top) = match (poset.bottom(), poset.top()) {
            (Some(b), Some(t)) => (b, t),
            _ => return Err(LatticeError::NotBounded),
        };
        let n = poset.len();
        let mut meet = vec![ElementId(0); n * n];
        let mut join = vec![ElementId(0); n * n];
        for a in poset.elements() {
            for b in poset.elements().filter(|&b| b >= a) {
                let m = poset
                    .meet_of(&[a, b])
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: poset.label(a).to_string(),
                        b: poset.label(b).to_string(),
                        missing: BoundKind::Meet,
                    })?;
                let j = poset
                    .join_of(&[a, b])
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: poset.label(a).to_string(),
                        b: poset.label(b).to_string(),
                        missing: BoundKind::Join,
                    })?;
                meet[a.0 * n + b.0] = m;
                meet[b.0 * n + a.0] = m;
                join[a.0 * n + b.0] = j;
                join[b.0 * n + a.0] = j;
            }
        }
        Ok(Self {
            name: name.into(),
            poset,
            bottom,
            top,
            meet,
            join,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        self.poset.elements()
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn label(&self, x: ElementId) -> &str {
        self.poset.label(x)
    }

    pub fn find(&self, label: &str) -> Option<ElementId> {
        self.poset.find(label)
    }

    pub fn id(&self, label: &str) -> Result<ElementId, LatticeError> {
        self.poset.id(label)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.lt(a, b)
    }

    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        self.poset.covers()
    }

    pub fn is_cover(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.is_cover(a, b)
    }

    pub fn lower_covers(&self, x: ElementId) -> &[ElementId] {
        self.poset.lower_covers(x)
    }

    pub fn upper_covers(&self, x: ElementId) -> &[ElementId] {
        self.poset.upper_covers(x)
    }

    #[inline]
    pub fn meet2(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn join2(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.0 * self.len() + b.0]
    }

    /// Greatest lower bound of an arbitrary set; the top for the empty set.
    pub fn meet<I: IntoIterator<Item = ElementId>>(&self, set: I) -> ElementId {
        let set: Vec<ElementId> = set.into_iter().collect();
        self.poset
            .meet_of(&set)
            .expect("finite lattice has all meets")
    }

    /// Least upper bound of an arbitrary set; the bottom for the empty set.
    pub fn join<I: IntoIterator<Item = ElementId>>(&self, set: I) -> ElementId {
        let set: Vec<ElementId> = set.into_iter().collect();
        self.poset
            .join_of(&set)
            .expect("finite lattice has all joins")
    }

    pub fn interval(&self, lo: ElementId, hi: ElementId) -> Option<Interval> {
        self.leq(lo, hi).then_some(Interval { lo, hi })
    }

    /// All intervals `[x, y]` with `x <= y`, ordered by `(lo, hi)`.
    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        self.elements().flat_map(move |lo| {
            self.elements()
                .filter(move |&hi| self.leq(lo, hi))
                .map(move |hi| Interval { lo, hi })
        })
    }

    /// Elements `z` with `iv.lo <= z <= iv.hi`.
    pub fn members(&self, iv: Interval) -> Vec<ElementId> {
        self.elements()
            .filter(|&z| self.leq(iv.lo, z) && self.leq(z, iv.hi))
            .collect()
    }

    pub fn interval_label(&self, iv: Interval) -> String {
        format!("[{},{}]", self.label(iv.lo), self.label(iv.hi))
    }

    /// The order-dual lattice, with the same labels and element indices.
    pub fn dual(&self) -> FinLattice {
        let poset = self.poset.dual();
        let n = self.len();
        let mut meet = vec![ElementId(0); n * n];
        let mut join = vec![ElementId(0); n * n];
        meet.copy_from_slice(&self.join);
        join.copy_from_slice(&self.meet);
        FinLattice {
            name: format!("{}-dual", self.name),
            poset,
            bottom: self.top,
            top: self.bottom,
            meet,
            join,
        }
    }

    pub fn to_dot(&self) -> String {
        self.poset.to_dot(&self.name)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson::from_poset(&self.name, &self.poset)
    }
}

/// Reorders a poset by `(height, label)`.
fn canonical_order(raw: &Poset) -> Poset {
    let heights = raw.heights();
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| {
        heights[a]
            .cmp(&heights[b])
            .then_with(|| raw.labels[a].cmp(&raw.labels[b]))
    });
    let n = raw.len();
    let labels: Vec<String> = order.iter().map(|&i| raw.labels[i].clone()).collect();
    let mut leq = vec![false; n * n];
    for (ni, &oi) in order.iter().enumerate() {
        for (nj, &oj) in order.iter().enumerate() {
            leq[ni * n + nj] = raw.leq[oi * n + oj];
        }
    }
    let index = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), ElementId(i)))
        .collect();
    Poset::assemble(labels, index, leq)
}

/// Serialized lattice: element labels and `[lower, upper]` cover pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    /// Torsion-class members per element, present for lattices of torsion
    /// classes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<std::collections::BTreeMap<String, Vec<String>>>,
}

impl LatticeJson {
    pub fn from_poset(name: &str, poset: &Poset) -> Self {
        Self {
            name: name.to_string(),
            elements: poset.labels().to_vec(),
            covers: poset
                .covers()
                .iter()
                .map(|&(a, b)| [poset.label(a).to_string(), poset.label(b).to_string()])
                .collect(),
            classes: None,
        }
    }

    pub fn to_lattice(&self) -> Result<FinLattice, LatticeError> {
        let pairs: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|[a, b]| (a.clone(), b.clone()))
            .collect();
        FinLattice::build_owned(self.name.clone(), self.elements.clone(), &pairs)
    }

    /// Builds the poset only, without requiring lattice structure.
    pub fn to_poset(&self) -> Result<Poset, LatticeError> {
        let mut index = HashMap::new();
        for (i, l) in self.elements.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::new();
        for [a, b] in &self.covers {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| LatticeError::UnknownLabel(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| LatticeError::UnknownLabel(b.clone()))?;
            pairs.push((ia, ib));
        }
        Poset::from_pairs(self.elements.clone(), &pairs)
    }
}
