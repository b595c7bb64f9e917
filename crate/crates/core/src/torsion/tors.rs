use std::collections::{BTreeMap, HashMap};

use super::algebra::{AlgebraSpec, Subcat};
use super::TorsionError;
use crate::binuclear::{build_ni_order, is_binuclear, BinucPoset};
use crate::lattice::{ElementId, FinLattice, Interval, LatticeJson};
use crate::semidistrib::{irreducibles, kappa, kappa_dual, KappaValue};

/// Default cap on the number of indecomposables for subset enumeration.
pub const DEFAULT_MAX_INDEC: usize = 20;

/// Closed under indecomposable quotients and under the listed extensions.
pub fn is_torsion_class(spec: &AlgebraSpec, s: Subcat) -> bool {
    s.iter().all(|x| spec.indec(x).quotients.is_subset(s))
        && spec
            .ses_masks()
            .iter()
            .all(|&(sub, mid, quot)| !(sub.is_subset(s) && quot.is_subset(s)) || mid.is_subset(s))
}

/// Smallest torsion class containing `s`.
pub fn tors_closure(spec: &AlgebraSpec, s: Subcat) -> Subcat {
    let mut cur = s;
    loop {
        let mut next = cur;
        for x in cur.iter() {
            next = next.union(spec.indec(x).quotients);
        }
        for &(sub, mid, quot) in spec.ses_masks() {
            if sub.is_subset(next) && quot.is_subset(next) {
                next = next.union(mid);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `{X | Hom(X, s) = 0 for all s ∈ S}`; checked to be a torsion class.
pub fn left_perp(spec: &AlgebraSpec, s: Subcat) -> Result<Subcat, TorsionError> {
    let out =
        Subcat::from_ids((0..spec.len()).filter(|&x| spec.hom_out(x).intersect(s).is_empty()));
    if !is_torsion_class(spec, out) {
        return Err(TorsionError::ClosureViolation(spec.label(out)));
    }
    Ok(out)
}

/// `{Y | Hom(s, Y) = 0 for all s ∈ S}`.
pub fn right_perp(spec: &AlgebraSpec, s: Subcat) -> Subcat {
    Subcat::from_ids((0..spec.len()).filter(|&y| spec.hom_in(y).intersect(s).is_empty()))
}

/// `A * U`: indecomposables `X` admitting `0 → A' → X → U' → 0` with
/// `A' ∈ add A` and `U' ∈ add U`.
pub fn star(spec: &AlgebraSpec, a: Subcat, u: Subcat) -> Subcat {
    let mut out = a.union(u);
    for s in spec.ses() {
        if let [x] = s.mid[..] {
            if s.sub_set().is_subset(a) && s.quot_set().is_subset(u) {
                out.insert(x);
            }
        }
    }
    out
}

/// Torsion classes of an algebra as a lattice under inclusion.
#[derive(Clone, Debug)]
pub struct TorsData {
    spec: AlgebraSpec,
    lattice: FinLattice,
    class_of: Vec<Subcat>,
    element_of: HashMap<Subcat, ElementId>,
    binuc: BinucPoset,
}

pub fn enumerate_tors(spec: &AlgebraSpec) -> Result<TorsData, TorsionError> {
    enumerate_tors_with_limit(spec, DEFAULT_MAX_INDEC)
}

/// Enumerates every subset of indecomposables and keeps the torsion
/// classes.
pub fn enumerate_tors_with_limit(
    spec: &AlgebraSpec,
    max_indec: usize,
) -> Result<TorsData, TorsionError> {
    let m = spec.len();
    if m > max_indec || m >= 64 {
        return Err(TorsionError::TooLarge {
            count: m,
            max: max_indec.min(63),
        });
    }
    let classes: Vec<Subcat> = (0..1u64 << m)
        .map(Subcat)
        .filter(|&s| is_torsion_class(spec, s))
        .collect();
    let k = classes.len();
    let mut leq = vec![false; k * k];
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            leq[i * k + j] = a.is_subset(*b);
        }
    }
    let labels: Vec<String> = classes.iter().map(|&c| spec.label(c)).collect();
    let lattice = FinLattice::from_relation(format!("tors({})", spec.name()), labels.clone(), leq)
        .map_err(|e| {
            TorsionError::NotATorsionClass(format!("torsion classes do not form a lattice: {e}"))
        })?;
    let by_label: HashMap<&str, Subcat> = labels
        .iter()
        .map(String::as_str)
        .zip(classes.iter().copied())
        .collect();
    let class_of: Vec<Subcat> = lattice
        .elements()
        .map(|x| by_label[lattice.label(x)])
        .collect();
    let element_of = class_of
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, ElementId(i)))
        .collect();
    let binuc = build_ni_order(&lattice);
    Ok(TorsData {
        spec: spec.clone(),
        lattice,
        class_of,
        element_of,
        binuc,
    })
}

impl TorsData {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.lattice
    }

    pub fn binuc(&self) -> &BinucPoset {
        &self.binuc
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_of(&self, x: ElementId) -> Subcat {
        self.class_of[x.0]
    }

    pub fn element_of(&self, s: Subcat) -> Option<ElementId> {
        self.element_of.get(&s).copied()
    }

    /// Element for a subcategory that must be a torsion class.
    pub fn element(&self, s: Subcat) -> Result<ElementId, TorsionError> {
        self.element_of(s)
            .ok_or_else(|| TorsionError::NotATorsionClass(self.spec.label(s)))
    }

    pub fn label(&self, x: ElementId) -> &str {
        self.lattice.label(x)
    }

    pub fn interval_label(&self, iv: Interval) -> String {
        self.lattice.interval_label(iv)
    }

    /// Lattice JSON with the member list of every class.
    pub fn to_json(&self) -> LatticeJson {
        let mut json = self.lattice.to_json();
        let classes: BTreeMap<String, Vec<String>> = self
            .lattice
            .elements()
            .map(|x| {
                let ids = self
                    .class_of(x)
                    .iter()
                    .map(|i| self.spec.indec(i).id.clone())
                    .collect();
                (self.label(x).to_string(), ids)
            })
            .collect();
        json.classes = Some(classes);
        json
    }
}

/// `(I⁻)^⊥ ∩ I⁺`.
pub fn heart(td: &TorsData, iv: Interval) -> Subcat {
    let lo = td.class_of(iv.lo);
    let hi = td.class_of(iv.hi);
    hi.intersect(right_perp(&td.spec, lo))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResReport {
    pub heart: Subcat,
    /// `T ∩ heart` for each member `T` of the interval, in element order.
    pub image: Vec<(ElementId, Subcat)>,
    /// Torsion classes of the heart computed inside the heart.
    pub heart_tors: Vec<Subcat>,
    pub failures: Vec<String>,
}

impl ResReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Torsion classes of the abelian subcategory `w`: subsets closed under
/// quotients lying in `w` and under extensions.
fn tors_inside(spec: &AlgebraSpec, w: Subcat) -> Vec<Subcat> {
    let ids: Vec<usize> = w.iter().collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << ids.len() {
        let u = Subcat::from_ids(
            ids.iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &i)| i),
        );
        let quot_closed = u
            .iter()
            .all(|x| spec.indec(x).quotients.intersect(w).is_subset(u));
        let ext_closed = spec
            .ses_masks()
            .iter()
            .all(|&(sub, mid, quot)| !(sub.is_subset(u) && quot.is_subset(u)) || mid.is_subset(u));
        if quot_closed && ext_closed {
            out.push(u);
        }
    }
    out.sort();
    out
}

/// Restriction `T ↦ T ∩ heart(I)` on the members of a binuclear interval,
/// checked to be an order isomorphism onto the torsion classes of the
/// heart with inverse `U ↦ I⁻ * U`.
pub fn res_interval(td: &TorsData, iv: Interval) -> Result<ResReport, TorsionError> {
    if !is_binuclear(&td.lattice, iv) {
        return Err(TorsionError::NotBinuclear(td.interval_label(iv)));
    }
    let spec = &td.spec;
    let w = heart(td, iv);
    let members = td.lattice.members(iv);
    let image: Vec<(ElementId, Subcat)> = members
        .iter()
        .map(|&t| (t, td.class_of(t).intersect(w)))
        .collect();
    let heart_tors = tors_inside(spec, w);
    let mut failures = Vec::new();
    let mut imgs: Vec<Subcat> = image.iter().map(|p| p.1).collect();
    imgs.sort();
    imgs.dedup();
    if imgs.len() != members.len() {
        failures.push("restriction is not injective".to_string());
    }
    if imgs != heart_tors {
        failures.push(format!(
            "image has {} classes, heart has {} torsion classes",
            imgs.len(),
            heart_tors.len()
        ));
    }
    for &(a, ia) in &image {
        for &(b, ib) in &image {
            if td.lattice.leq(a, b) != ia.is_subset(ib) {
                failures.push(format!(
                    "order not preserved between {} and {}",
                    td.label(a),
                    td.label(b)
                ));
            }
        }
        let back = star(spec, td.class_of(iv.lo), ia);
        if back != td.class_of(a) {
            failures.push(format!("I⁻ * res({}) = {}", td.label(a), spec.label(back)));
        }
    }
    Ok(ResReport {
        heart: w,
        image,
        heart_tors,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickReport {
    pub bricks: Vec<usize>,
    /// `(X, T(X), ⊥X)` for each brick.
    pub brick_classes: Vec<(usize, ElementId, ElementId)>,
    /// The unique brick in the heart of each cover `T ⋖ T'`.
    pub cover_labels: Vec<((ElementId, ElementId), usize)>,
}

/// Checks that `X ↦ T(X)` and `X ↦ ⊥X` biject bricks onto the join- and
/// meet-irreducible torsion classes, that `κ(T(X)) = ⊥X` and
/// `κ_dual(⊥X) = T(X)`, and that each cover has exactly one brick in its
/// heart.
pub fn bricks_and_kappa(td: &TorsData) -> Result<BrickReport, TorsionError> {
    let spec = &td.spec;
    let l = &td.lattice;
    let irr = irreducibles(l);
    let bricks: Vec<usize> = spec.bricks().iter().collect();
    let name = |x: usize| spec.indec(x).id.clone();
    let mut brick_classes = Vec::new();
    for &x in &bricks {
        let t = td.element(tors_closure(spec, Subcat::single(x)))?;
        let p = td.element(left_perp(spec, Subcat::single(x))?)?;
        if irr.lower_star(t).is_none() {
            return Err(TorsionError::BijectionFailure(format!(
                "T({}) = {} is not join-irreducible",
                name(x),
                td.label(t)
            )));
        }
        if irr.upper_star(p).is_none() {
            return Err(TorsionError::BijectionFailure(format!(
                "⊥{} = {} is not meet-irreducible",
                name(x),
                td.label(p)
            )));
        }
        if kappa(l, t).ok() != Some(KappaValue::Defined(p)) {
            return Err(TorsionError::BijectionFailure(format!(
                "κ(T({})) differs from ⊥{}",
                name(x),
                name(x)
            )));
        }
        if kappa_dual(l, p).ok() != Some(KappaValue::Defined(t)) {
            return Err(TorsionError::BijectionFailure(format!(
                "dual κ(⊥{}) differs from T({})",
                name(x),
                name(x)
            )));
        }
        brick_classes.push((x, t, p));
    }
    let mut ts: Vec<ElementId> = brick_classes.iter().map(|b| b.1).collect();
    let mut ps: Vec<ElementId> = brick_classes.iter().map(|b| b.2).collect();
    ts.sort();
    ts.dedup();
    ps.sort();
    ps.dedup();
    if ts.len() != bricks.len() || ts.len() != irr.cj_irr.len() {
        return Err(TorsionError::BijectionFailure(format!(
            "{} bricks, {} distinct T(X), {} join-irreducibles",
            bricks.len(),
            ts.len(),
            irr.cj_irr.len()
        )));
    }
    if ps.len() != bricks.len() || ps.len() != irr.cm_irr.len() {
        return Err(TorsionError::BijectionFailure(format!(
            "{} bricks, {} distinct ⊥X, {} meet-irreducibles",
            bricks.len(),
            ps.len(),
            irr.cm_irr.len()
        )));
    }
    let mut cover_labels = Vec::new();
    for &(a, b) in l.covers() {
        let h = heart(td, Interval::new(a, b)).intersect(spec.bricks());
        match h.iter().collect::<Vec<_>>()[..] {
            [x] => cover_labels.push(((a, b), x)),
            _ => {
                return Err(TorsionError::BijectionFailure(format!(
                    "heart of cover {} ⋖ {} has {} bricks",
                    td.label(a),
                    td.label(b),
                    h.len()
                )))
            }
        }
    }
    Ok(BrickReport {
        bricks,
        brick_classes,
        cover_labels,
    })
}
