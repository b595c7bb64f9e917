//! Combinatorial description of a representation-finite algebra: its
//! indecomposable modules, which pairs have nonzero morphisms, indecomposable
//! quotients, the AR translate, g-vectors, and a list of short exact
//! sequences sufficient to test extension closure.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of indecomposables a [`Subcat`] bitset can hold.
pub const MAX_INDECOMPOSABLES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violated at {entry}: {reason}")]
    InvariantViolation { entry: String, reason: String },
    #[error("rank {0} out of range (1..=6)")]
    BadRank(usize),
    #[error("bad orientation `{0}`: expected {1} characters from `<` and `>`")]
    BadOrientation(String, usize),
}

fn violation(entry: impl Into<String>, reason: impl Into<String>) -> AlgebraError {
    AlgebraError::InvariantViolation {
        entry: entry.into(),
        reason: reason.into(),
    }
}

/// A set of indecomposables, standing for its additive closure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subcat(pub u64);

impl Subcat {
    pub const EMPTY: Subcat = Subcat(0);

    pub fn full(n: usize) -> Subcat {
        if n >= 64 {
            Subcat(u64::MAX)
        } else {
            Subcat((1u64 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Subcat {
        Subcat(1 << i)
    }

    pub fn from_ids(ids: impl IntoIterator<Item = usize>) -> Subcat {
        Subcat(ids.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subcat) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subcat) -> Subcat {
        Subcat(self.0 | other.0)
    }

    pub fn intersect(self, other: Subcat) -> Subcat {
        Subcat(self.0 & other.0)
    }

    pub fn minus(self, other: Subcat) -> Subcat {
        Subcat(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indecomposable {
    pub id: String,
    pub dim: Vec<u32>,
    pub projective: bool,
    pub end_dim: u32,
    pub g: Vec<i64>,
    /// Indecomposable quotient modules, including the module itself.
    pub quotients: Subcat,
    pub tau: Option<usize>,
}

/// A non-split short exact sequence; each side is a sorted multiset of
/// indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ses {
    pub sub: Vec<usize>,
    pub mid: Vec<usize>,
    pub quot: Vec<usize>,
}

impl Ses {
    pub fn sub_set(&self) -> Subcat {
        Subcat::from_ids(self.sub.iter().copied())
    }

    pub fn mid_set(&self) -> Subcat {
        Subcat::from_ids(self.mid.iter().copied())
    }

    pub fn quot_set(&self) -> Subcat {
        Subcat::from_ids(self.quot.iter().copied())
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    name: String,
    rank: usize,
    indecs: Vec<Indecomposable>,
    /// `hom_out[x]`: all `y` with `Hom(x, y) != 0`.
    hom_out: Vec<Subcat>,
    /// `hom_in[y]`: all `x` with `Hom(x, y) != 0`.
    hom_in: Vec<Subcat>,
    ses: Vec<Ses>,
    /// `(sub, mid, quot)` as bitsets, parallel to `ses`.
    ses_masks: Vec<(Subcat, Subcat, Subcat)>,
    index: HashMap<String, usize>,
}

impl AlgebraSpec {
    /// Assembles and validates a spec.
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        indecs: Vec<Indecomposable>,
        hom: &[(usize, usize)],
        mut ses: Vec<Ses>,
    ) -> Result<AlgebraSpec, AlgebraError> {
        let name = name.into();
        if rank == 0 {
            return Err(AlgebraError::Schema("rank must be positive".into()));
        }
        if indecs.is_empty() {
            return Err(AlgebraError::Schema("no indecomposables".into()));
        }
        if indecs.len() > MAX_INDECOMPOSABLES {
            return Err(AlgebraError::Schema(format!(
                "{} indecomposables exceed the limit of {MAX_INDECOMPOSABLES}",
                indecs.len()
            )));
        }
        let m = indecs.len();
        let mut index = HashMap::new();
        for (i, x) in indecs.iter().enumerate() {
            if index.insert(x.id.clone(), i).is_some() {
                return Err(AlgebraError::Schema(format!("duplicate id `{}`", x.id)));
            }
        }
        let mut hom_out = vec![Subcat::EMPTY; m];
        let mut hom_in = vec![Subcat::EMPTY; m];
        for &(x, y) in hom {
            if x >= m || y >= m {
                return Err(AlgebraError::Schema("hom entry out of range".into()));
            }
            hom_out[x].insert(y);
            hom_in[y].insert(x);
        }
        for s in ses.iter_mut() {
            s.sub.sort_unstable();
            s.mid.sort_unstable();
            s.quot.sort_unstable();
        }
        ses.sort();
        ses.dedup();
        let ses_masks = ses
            .iter()
            .map(|s| (s.sub_set(), s.mid_set(), s.quot_set()))
            .collect();
        let spec = AlgebraSpec {
            name,
            rank,
            indecs,
            hom_out,
            hom_in,
            ses,
            ses_masks,
            index,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.rank;
        let m = self.indecs.len();
        for (i, x) in self.indecs.iter().enumerate() {
            if x.dim.len() != n {
                return Err(AlgebraError::Schema(format!(
                    "`{}`: dim has length {}, expected {n}",
                    x.id,
                    x.dim.len()
                )));
            }
            if x.g.len() != n {
                return Err(AlgebraError::Schema(format!(
                    "`{}`: g has length {}, expected {n}",
                    x.id,
                    x.g.len()
                )));
            }
            if x.dim.iter().all(|&d| d == 0) {
                return Err(violation(&x.id, "zero dimension vector"));
            }
            if x.end_dim == 0 {
                return Err(violation(&x.id, "end_dim must be positive"));
            }
            if m < 64 && x.quotients.0 >> m != 0 {
                return Err(AlgebraError::Schema(format!(
                    "`{}`: unknown quotient",
                    x.id
                )));
            }
            if !x.quotients.contains(i) {
                return Err(violation(&x.id, "module is missing from its own quotients"));
            }
            for q in x.quotients.iter() {
                let qd = &self.indecs[q].dim;
                if qd.iter().zip(&x.dim).any(|(a, b)| a > b) {
                    return Err(violation(
                        &x.id,
                        format!("quotient `{}` has larger dimension", self.indecs[q].id),
                    ));
                }
                if !self.hom_out[i].contains(q) {
                    return Err(violation(
                        &x.id,
                        format!("quotient `{}` but no nonzero morphism", self.indecs[q].id),
                    ));
                }
            }
            if !self.hom_out[i].contains(i) {
                return Err(violation(&x.id, "hom is not reflexive"));
            }
            match x.tau {
                Some(t) if t >= m => {
                    return Err(AlgebraError::Schema(format!(
                        "`{}`: tau out of range",
                        x.id
                    )))
                }
                Some(_) if x.projective => {
                    return Err(violation(&x.id, "tau defined on a projective"))
                }
                None if !x.projective => {
                    return Err(violation(&x.id, "tau missing on a non-projective"))
                }
                _ => {}
            }
        }
        for s in &self.ses {
            let label = self.ses_label(s);
            for &i in s.sub.iter().chain(&s.mid).chain(&s.quot) {
                if i >= m {
                    return Err(AlgebraError::Schema(format!("{label}: id out of range")));
                }
            }
            if s.sub.is_empty() || s.mid.is_empty() || s.quot.is_empty() {
                return Err(violation(&label, "empty term"));
            }
            let sum = |ids: &[usize]| -> Vec<u32> {
                let mut v = vec![0; n];
                for &i in ids {
                    for (a, b) in v.iter_mut().zip(&self.indecs[i].dim) {
                        *a += b;
                    }
                }
                v
            };
            let (a, b, c) = (sum(&s.sub), sum(&s.mid), sum(&s.quot));
            if a.iter().zip(&c).map(|(x, y)| x + y).ne(b.iter().copied()) {
                return Err(violation(&label, "dim(sub) + dim(quot) != dim(mid)"));
            }
        }
        Ok(())
    }

    fn ses_label(&self, s: &Ses) -> String {
        let part = |ids: &[usize]| {
            ids.iter()
                .map(|&i| self.indecs.get(i).map_or("?", |x| x.id.as_str()))
                .collect::<Vec<_>>()
                .join("+")
        };
        format!(
            "ses 0 -> {} -> {} -> {} -> 0",
            part(&s.sub),
            part(&s.mid),
            part(&s.quot)
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn indecomposables(&self) -> &[Indecomposable] {
        &self.indecs
    }

    pub fn indec(&self, i: usize) -> &Indecomposable {
        &self.indecs[i]
    }

    pub fn find(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn all(&self) -> Subcat {
        Subcat::full(self.indecs.len())
    }

    pub fn hom_nonzero(&self, x: usize, y: usize) -> bool {
        self.hom_out[x].contains(y)
    }

    pub fn hom_out(&self, x: usize) -> Subcat {
        self.hom_out[x]
    }

    pub fn hom_in(&self, y: usize) -> Subcat {
        self.hom_in[y]
    }

    pub fn ses(&self) -> &[Ses] {
        &self.ses
    }

    pub(crate) fn ses_masks(&self) -> &[(Subcat, Subcat, Subcat)] {
        &self.ses_masks
    }

    pub fn projectives(&self) -> Subcat {
        Subcat::from_ids((0..self.len()).filter(|&i| self.indecs[i].projective))
    }

    /// Indecomposables with a one-dimensional endomorphism ring.
    pub fn bricks(&self) -> Subcat {
        Subcat::from_ids((0..self.len()).filter(|&i| self.indecs[i].end_dim == 1))
    }

    /// `X` such that the simple at vertex `v` is the only nonzero entry.
    pub fn simple(&self, v: usize) -> Option<usize> {
        self.indecs.iter().position(|x| {
            x.dim
                .iter()
                .enumerate()
                .all(|(i, &d)| d == u32::from(i == v))
        })
    }

    /// The projective cover of the simple at vertex `v`: the projective
    /// with a nonzero map to that simple.
    pub fn projective_cover(&self, v: usize) -> Option<usize> {
        let s = self.simple(v)?;
        self.projectives().iter().find(|&p| self.hom_nonzero(p, s))
    }

    pub fn label(&self, s: Subcat) -> String {
        if s.is_empty() {
            return "0".to_string();
        }
        s.iter()
            .map(|i| self.indecs[i].id.as_str())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn to_json(&self) -> AlgebraJson {
        let ids =
            |s: Subcat| -> Vec<String> { s.iter().map(|i| self.indecs[i].id.clone()).collect() };
        let list =
            |v: &[usize]| -> Vec<String> { v.iter().map(|&i| self.indecs[i].id.clone()).collect() };
        AlgebraJson {
            name: self.name.clone(),
            rank: self.rank,
            indecomposables: self
                .indecs
                .iter()
                .map(|x| IndecJson {
                    id: x.id.clone(),
                    dim: x.dim.clone(),
                    projective: x.projective,
                    end_dim: x.end_dim,
                    g: x.g.clone(),
                    quotients: ids(x.quotients),
                    tau: x.tau.map(|t| self.indecs[t].id.clone()),
                })
                .collect(),
            hom: (0..self.len())
                .flat_map(|x| {
                    self.hom_out[x]
                        .iter()
                        .map(move |y| [self.indecs[x].id.clone(), self.indecs[y].id.clone()])
                })
                .collect(),
            ses: self
                .ses
                .iter()
                .map(|s| SesJson {
                    sub: list(&s.sub),
                    mid: list(&s.mid),
                    quot: list(&s.quot),
                })
                .collect(),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (rank {}, {} indecomposables, {} ses)",
            self.name,
            self.rank,
            self.indecs.len(),
            self.ses.len()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndecJson {
    pub id: String,
    pub dim: Vec<u32>,
    pub projective: bool,
    pub end_dim: u32,
    pub g: Vec<i64>,
    pub quotients: Vec<String>,
    #[serde(default)]
    pub tau: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesJson {
    pub sub: Vec<String>,
    pub mid: Vec<String>,
    pub quot: Vec<String>,
}

/// Serialized form of an [`AlgebraSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub name: String,
    pub rank: usize,
    pub indecomposables: Vec<IndecJson>,
    pub hom: Vec<[String; 2]>,
    pub ses: Vec<SesJson>,
}

impl AlgebraJson {
    pub fn to_spec(&self) -> Result<AlgebraSpec, AlgebraError> {
        let index: HashMap<&str, usize> = self
            .indecomposables
            .iter()
            .enumerate()
            .map(|(i, x)| (x.id.as_str(), i))
            .collect();
        let look = |id: &str, ctx: &str| -> Result<usize, AlgebraError> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| AlgebraError::Schema(format!("{ctx}: unknown id `{id}`")))
        };
        if self.indecomposables.len() > MAX_INDECOMPOSABLES {
            return Err(AlgebraError::Schema(format!(
                "{} indecomposables exceed the limit of {MAX_INDECOMPOSABLES}",
                self.indecomposables.len()
            )));
        }
        let mut indecs = Vec::new();
        for x in &self.indecomposables {
            let mut q = Subcat::EMPTY;
            for id in &x.quotients {
                q.insert(look(id, &x.id)?);
            }
            let tau = match &x.tau {
                Some(t) => Some(look(t, &x.id)?),
                None => None,
            };
            indecs.push(Indecomposable {
                id: x.id.clone(),
                dim: x.dim.clone(),
                projective: x.projective,
                end_dim: x.end_dim,
                g: x.g.clone(),
                quotients: q,
                tau,
            });
        }
        let mut hom = Vec::new();
        for [a, b] in &self.hom {
            hom.push((look(a, "hom")?, look(b, "hom")?));
        }
        let mut ses = Vec::new();
        for s in &self.ses {
            let ids = |v: &[String]| -> Result<Vec<usize>, AlgebraError> {
                v.iter().map(|id| look(id, "ses")).collect()
            };
            ses.push(Ses {
                sub: ids(&s.sub)?,
                mid: ids(&s.mid)?,
                quot: ids(&s.quot)?,
            });
        }
        AlgebraSpec::new(self.name.clone(), self.rank, indecs, &hom, ses)
    }
}

/// Parses and validates an algebra from JSON text.
pub fn load_algebra(json: &str) -> Result<AlgebraSpec, AlgebraError> {
    let raw: AlgebraJson =
        serde_json::from_str(json).map_err(|e| AlgebraError::Schema(e.to_string()))?;
    raw.to_spec()
}
