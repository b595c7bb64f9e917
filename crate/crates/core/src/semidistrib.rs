//! Irreducible elements, the κ map, semidistributivity and related
//! lattice-theoretic flags, and κ on the binuclear interval order.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::binuclear::{build_ni_order, is_binuclear_lattice, BinucPoset};
use crate::lattice::{ElementId, FinLattice, Interval};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KappaError {
    #[error("`{0}` is not completely join-irreducible")]
    NotJoinIrreducible(String),
    #[error("`{0}` is not completely meet-irreducible")]
    NotMeetIrreducible(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(
        "κ mismatch at {source_label}: formula gives {formula}, direct computation gives {direct}"
    )]
    Mismatch {
        source_label: String,
        formula: String,
        direct: String,
    },
}

/// Completely join-irreducibles with their unique lower cover, and
/// completely meet-irreducibles with their unique upper cover.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IrreducibleData {
    pub cj_irr: Vec<(ElementId, ElementId)>,
    pub cm_irr: Vec<(ElementId, ElementId)>,
}

impl IrreducibleData {
    pub fn lower_star(&self, j: ElementId) -> Option<ElementId> {
        self.cj_irr.iter().find(|p| p.0 == j).map(|p| p.1)
    }

    pub fn upper_star(&self, m: ElementId) -> Option<ElementId> {
        self.cm_irr.iter().find(|p| p.0 == m).map(|p| p.1)
    }

    pub fn join_irreducibles(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.cj_irr.iter().map(|p| p.0)
    }

    pub fn meet_irreducibles(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.cm_irr.iter().map(|p| p.0)
    }
}

pub fn irreducibles(l: &FinLattice) -> IrreducibleData {
    let mut data = IrreducibleData::default();
    for x in l.elements() {
        if let [lo] = l.lower_covers(x) {
            data.cj_irr.push((x, *lo));
        }
        if let [hi] = l.upper_covers(x) {
            data.cm_irr.push((x, *hi));
        }
    }
    data
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KappaValue {
    Defined(ElementId),
    /// No maximum (resp. minimum); the maximal (resp. minimal) elements.
    Undefined(Vec<ElementId>),
}

impl KappaValue {
    pub fn defined(&self) -> Option<ElementId> {
        match self {
            KappaValue::Defined(x) => Some(*x),
            KappaValue::Undefined(_) => None,
        }
    }
}

/// `K(j) = {y | j ∧ y = j_*}`.
pub fn kappa_set(l: &FinLattice, j: ElementId, j_star: ElementId) -> Vec<ElementId> {
    l.elements().filter(|&y| l.meet2(j, y) == j_star).collect()
}

/// The maximum of `K(j)`, or its maximal elements.
pub fn kappa(l: &FinLattice, j: ElementId) -> Result<KappaValue, KappaError> {
    let j_star = match l.lower_covers(j) {
        [lo] => *lo,
        _ => return Err(KappaError::NotJoinIrreducible(l.label(j).to_string())),
    };
    let k = kappa_set(l, j, j_star);
    let maximal: Vec<ElementId> = k
        .iter()
        .copied()
        .filter(|&y| !k.iter().any(|&z| l.lt(y, z)))
        .collect();
    Ok(match maximal[..] {
        [m] => KappaValue::Defined(m),
        _ => KappaValue::Undefined(maximal),
    })
}

/// The minimum of `{y | m ∨ y = m^*}`, or its minimal elements.
pub fn kappa_dual(l: &FinLattice, m: ElementId) -> Result<KappaValue, KappaError> {
    let m_star = match l.upper_covers(m) {
        [hi] => *hi,
        _ => return Err(KappaError::NotMeetIrreducible(l.label(m).to_string())),
    };
    let k: Vec<ElementId> = l.elements().filter(|&y| l.join2(m, y) == m_star).collect();
    let minimal: Vec<ElementId> = k
        .iter()
        .copied()
        .filter(|&y| !k.iter().any(|&z| l.lt(z, y)))
        .collect();
    Ok(match minimal[..] {
        [x] => KappaValue::Defined(x),
        _ => KappaValue::Undefined(minimal),
    })
}

/// κ and its dual where defined, keyed by element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KappaMap {
    pub forward: BTreeMap<ElementId, ElementId>,
    pub backward: BTreeMap<ElementId, ElementId>,
}

impl KappaMap {
    /// Both directions total on the given irreducibles and mutually inverse.
    pub fn is_bijection(&self, irr: &IrreducibleData) -> bool {
        self.forward.len() == irr.cj_irr.len()
            && self.backward.len() == irr.cm_irr.len()
            && self
                .forward
                .iter()
                .all(|(j, m)| self.backward.get(m) == Some(j))
    }
}

pub fn kappa_map(l: &FinLattice) -> KappaMap {
    let irr = irreducibles(l);
    let mut map = KappaMap::default();
    for j in irr.join_irreducibles() {
        if let Ok(KappaValue::Defined(m)) = kappa(l, j) {
            map.forward.insert(j, m);
        }
    }
    for m in irr.meet_irreducibles() {
        if let Ok(KappaValue::Defined(j)) = kappa_dual(l, m) {
            map.backward.insert(m, j);
        }
    }
    map
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SdVerdict {
    pub meet_sd: bool,
    pub join_sd: bool,
    /// `(x, y, z)` with `x ∧ y = x ∧ z` but `x ∧ (y ∨ z) != x ∧ y`.
    pub meet_witness: Option<[ElementId; 3]>,
    /// `(x, y, z)` with `x ∨ y = x ∨ z` but `x ∨ (y ∧ z) != x ∨ y`.
    pub join_witness: Option<[ElementId; 3]>,
}

impl SdVerdict {
    pub fn holds(&self) -> bool {
        self.meet_sd && self.join_sd
    }
}

/// Pairwise semidistributive laws, scanning triples in index order.
pub fn check_semidistributivity(l: &FinLattice) -> SdVerdict {
    let meet_witness = sd_witness(l, |a, b| l.meet2(a, b), |a, b| l.join2(a, b));
    let join_witness = sd_witness(l, |a, b| l.join2(a, b), |a, b| l.meet2(a, b));
    SdVerdict {
        meet_sd: meet_witness.is_none(),
        join_sd: join_witness.is_none(),
        meet_witness,
        join_witness,
    }
}

fn sd_witness(
    l: &FinLattice,
    op: impl Fn(ElementId, ElementId) -> ElementId,
    co: impl Fn(ElementId, ElementId) -> ElementId,
) -> Option<[ElementId; 3]> {
    for x in l.elements() {
        for y in l.elements() {
            let v = op(x, y);
            for z in l.elements().filter(|&z| z > y) {
                if op(x, z) == v && op(x, co(y, z)) != v {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KappaFlags {
    pub spatial: bool,
    pub cospatial: bool,
    pub weak_meet_kappa: bool,
    pub weak_join_kappa: bool,
    pub meet_kappa: bool,
    pub join_kappa: bool,
    pub meet_semidistributive: bool,
    pub join_semidistributive: bool,
    /// Only meaningful for weak κ-lattices; false otherwise.
    pub well_separated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagWitness {
    pub flag: &'static str,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaReport {
    pub lattice: String,
    pub flags: KappaFlags,
    pub witnesses: Vec<FlagWitness>,
}

fn labels(l: &FinLattice, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| l.label(x).to_string()).collect()
}

/// The `m` in `cm_irr` with `m ∨ j = m^*` and `m ∧ j = j_*`, if unique.
fn weak_kappa_partner(
    l: &FinLattice,
    irr: &IrreducibleData,
    j: ElementId,
    j_star: ElementId,
) -> Result<ElementId, Vec<ElementId>> {
    let found: Vec<ElementId> = irr
        .cm_irr
        .iter()
        .filter(|&&(m, m_star)| l.join2(m, j) == m_star && l.meet2(m, j) == j_star)
        .map(|p| p.0)
        .collect();
    match found[..] {
        [m] => Ok(m),
        _ => Err(found),
    }
}

fn weak_kappa_partner_dual(
    l: &FinLattice,
    irr: &IrreducibleData,
    m: ElementId,
    m_star: ElementId,
) -> Result<ElementId, Vec<ElementId>> {
    let found: Vec<ElementId> = irr
        .cj_irr
        .iter()
        .filter(|&&(j, j_star)| l.meet2(j, m) == j_star && l.join2(j, m) == m_star)
        .map(|p| p.0)
        .collect();
    match found[..] {
        [j] => Ok(j),
        _ => Err(found),
    }
}

/// Computes every flag directly from its definition and records a witness
/// for each failure.
pub fn check_kappa_properties(l: &FinLattice) -> KappaReport {
    let irr = irreducibles(l);
    let mut witnesses = Vec::new();

    let spatial = l.elements().all(|x| {
        let ok = l.join(irr.join_irreducibles().filter(|&j| l.leq(j, x))) == x;
        if !ok {
            witnesses.push(FlagWitness {
                flag: "spatial",
                elements: labels(l, &[x]),
            });
        }
        ok
    });
    let cospatial = l.elements().all(|x| {
        let ok = l.meet(irr.meet_irreducibles().filter(|&m| l.leq(x, m))) == x;
        if !ok {
            witnesses.push(FlagWitness {
                flag: "cospatial",
                elements: labels(l, &[x]),
            });
        }
        ok
    });

    let mut weak_kappa = BTreeMap::new();
    let mut weak_meet = cospatial;
    for &(j, j_star) in &irr.cj_irr {
        match weak_kappa_partner(l, &irr, j, j_star) {
            Ok(m) => {
                weak_kappa.insert(j, m);
            }
            Err(found) => {
                weak_meet = false;
                let mut e = labels(l, &[j]);
                e.extend(labels(l, &found));
                witnesses.push(FlagWitness {
                    flag: "weak_meet_kappa",
                    elements: e,
                });
            }
        }
    }
    let mut weak_join = spatial;
    for &(m, m_star) in &irr.cm_irr {
        if let Err(found) = weak_kappa_partner_dual(l, &irr, m, m_star) {
            weak_join = false;
            let mut e = labels(l, &[m]);
            e.extend(labels(l, &found));
            witnesses.push(FlagWitness {
                flag: "weak_join_kappa",
                elements: e,
            });
        }
    }

    let mut meet_kappa = cospatial;
    for j in irr.join_irreducibles() {
        if let Ok(KappaValue::Undefined(max)) = kappa(l, j) {
            meet_kappa = false;
            let mut e = labels(l, &[j]);
            e.extend(labels(l, &max));
            witnesses.push(FlagWitness {
                flag: "meet_kappa",
                elements: e,
            });
        }
    }
    let mut join_kappa = spatial;
    for m in irr.meet_irreducibles() {
        if let Ok(KappaValue::Undefined(min)) = kappa_dual(l, m) {
            join_kappa = false;
            let mut e = labels(l, &[m]);
            e.extend(labels(l, &min));
            witnesses.push(FlagWitness {
                flag: "join_kappa",
                elements: e,
            });
        }
    }

    let sd = check_semidistributivity(l);
    if let Some(w) = sd.meet_witness {
        witnesses.push(FlagWitness {
            flag: "meet_semidistributive",
            elements: labels(l, &w),
        });
    }
    if let Some(w) = sd.join_witness {
        witnesses.push(FlagWitness {
            flag: "join_semidistributive",
            elements: labels(l, &w),
        });
    }

    let mut well_separated = weak_meet && weak_join;
    if well_separated {
        'outer: for x in l.elements() {
            for y in l.elements().filter(|&y| !l.leq(x, y)) {
                let separated = weak_kappa.iter().any(|(&j, &k)| l.leq(j, x) && l.leq(y, k));
                if !separated {
                    well_separated = false;
                    witnesses.push(FlagWitness {
                        flag: "well_separated",
                        elements: labels(l, &[x, y]),
                    });
                    break 'outer;
                }
            }
        }
    }

    KappaReport {
        lattice: l.name().to_string(),
        flags: KappaFlags {
            spatial,
            cospatial,
            weak_meet_kappa: weak_meet,
            weak_join_kappa: weak_join,
            meet_kappa,
            join_kappa,
            meet_semidistributive: sd.meet_sd,
            join_semidistributive: sd.join_sd,
            well_separated,
        },
        witnesses,
    }
}

/// κ on the binuclear interval order.
#[derive(Clone, Debug)]
pub struct NiKappa {
    pub binuc: BinucPoset,
    /// The interval order as a lattice; element `k` is `binuc.intervals()[k]`.
    pub lattice: FinLattice,
    /// `(J, κ(J))` for every completely join-irreducible `J`, sorted by `J`.
    pub map: Vec<(Interval, Interval)>,
}

fn binuc_lattice(l: &FinLattice) -> Result<(BinucPoset, FinLattice), KappaError> {
    let bp = build_ni_order(l);
    let bl = bp.to_lattice().map_err(|e| {
        KappaError::PreconditionFailed(format!("binuclear interval order is not a lattice: {e}"))
    })?;
    Ok((bp, bl))
}

/// Builds κ on `binuc(L)` by
/// `[j, j] ↦ [κ(j), κ(j)^*]` and `[j_*, j] ↦ [κ(j), κ(j)]`, and checks it
/// against the maximum of `K(J)` computed inside `binuc(L)`.
pub fn kappa_ni(l: &FinLattice) -> Result<NiKappa, KappaError> {
    let sd = check_semidistributivity(l);
    if !sd.holds() {
        return Err(KappaError::PreconditionFailed(format!(
            "`{}` is not semidistributive",
            l.name()
        )));
    }
    let (bp, bl) = binuc_lattice(l)?;
    let irr = irreducibles(l);
    let mut map = Vec::new();
    for &(j, j_star) in &irr.cj_irr {
        let k = kappa(l, j)?
            .defined()
            .ok_or_else(|| KappaError::PreconditionFailed("κ undefined".into()))?;
        let k_star = irr
            .upper_star(k)
            .ok_or_else(|| KappaError::PreconditionFailed("κ(j) not meet-irreducible".into()))?;
        map.push((Interval::point(j), Interval::new(k, k_star)));
        map.push((Interval::new(j_star, j), Interval::point(k)));
    }
    map.sort();
    let binuc_irr = irreducibles(&bl);
    if binuc_irr.cj_irr.len() != map.len() {
        return Err(KappaError::Mismatch {
            source_label: "cj-irr(binuc)".into(),
            formula: format!("{} elements", map.len()),
            direct: format!("{} elements", binuc_irr.cj_irr.len()),
        });
    }
    for &(src, dst) in &map {
        let pos = bp.position(src).ok_or_else(|| KappaError::Mismatch {
            source_label: l.interval_label(src),
            formula: "binuclear".into(),
            direct: "not binuclear".into(),
        })?;
        let direct = kappa(&bl, pos).map_err(|_| KappaError::Mismatch {
            source_label: l.interval_label(src),
            formula: "join-irreducible".into(),
            direct: "not join-irreducible".into(),
        })?;
        let direct_iv = direct.defined().map(|d| bp.interval(d));
        if direct_iv != Some(dst) {
            return Err(KappaError::Mismatch {
                source_label: l.interval_label(src),
                formula: l.interval_label(dst),
                direct: match direct_iv {
                    Some(iv) => l.interval_label(iv),
                    None => "undefined".into(),
                },
            });
        }
    }
    Ok(NiKappa {
        binuc: bp,
        lattice: bl,
        map,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CjIrrReport {
    pub cj_irr: Vec<Interval>,
    pub cm_irr: Vec<Interval>,
    /// Human-readable description of each failed check.
    pub failures: Vec<String>,
}

impl CjIrrReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `I` is join-irreducible in `binuc(L)` iff `I⁺` is in `L`
/// (with `I⁻ ∈ {I⁺, (I⁺)_*}`), the dual statement, and the shapes of the
/// unique lower and upper covers of irreducible intervals.
pub fn verify_cjirr_binuc(l: &FinLattice) -> Result<CjIrrReport, KappaError> {
    if let crate::binuclear::BinuclearVerdict::Witness { interval, .. } = is_binuclear_lattice(l) {
        return Err(KappaError::PreconditionFailed(format!(
            "lattice is not binuclear at {}",
            l.interval_label(interval)
        )));
    }
    let (bp, bl) = binuc_lattice(l)?;
    let irr = irreducibles(l);
    let birr = irreducibles(&bl);
    let mut report = CjIrrReport::default();
    for (k, &iv) in bp.intervals().iter().enumerate() {
        let name = l.interval_label(iv);
        let id = ElementId(k);

        let in_binuc = birr.lower_star(id);
        let top_star = irr.lower_star(iv.hi);
        if in_binuc.is_some() != top_star.is_some() {
            report.failures.push(format!(
                "{name}: join-irreducible in binuc = {}, upper endpoint join-irreducible = {}",
                in_binuc.is_some(),
                top_star.is_some()
            ));
        }
        if let (Some(lower), Some(hs)) = (in_binuc, top_star) {
            report.cj_irr.push(iv);
            let expected = if iv.is_point() {
                Interval::new(hs, iv.hi)
            } else {
                Interval::point(iv.lo)
            };
            if iv.lo != iv.hi && iv.lo != hs {
                report
                    .failures
                    .push(format!("{name}: lower endpoint is neither I⁺ nor (I⁺)_*"));
            }
            if bp.interval(lower) != expected {
                report.failures.push(format!(
                    "{name}: lower cover is {}, expected {}",
                    l.interval_label(bp.interval(lower)),
                    l.interval_label(expected)
                ));
            }
        }

        let in_binuc = birr.upper_star(id);
        let bot_star = irr.upper_star(iv.lo);
        if in_binuc.is_some() != bot_star.is_some() {
            report.failures.push(format!(
                "{name}: meet-irreducible in binuc = {}, lower endpoint meet-irreducible = {}",
                in_binuc.is_some(),
                bot_star.is_some()
            ));
        }
        if let (Some(upper), Some(ls)) = (in_binuc, bot_star) {
            report.cm_irr.push(iv);
            let expected = if iv.is_point() {
                Interval::new(iv.lo, ls)
            } else {
                Interval::point(iv.hi)
            };
            if iv.lo != iv.hi && iv.hi != ls {
                report
                    .failures
                    .push(format!("{name}: upper endpoint is neither I⁻ nor (I⁻)^*"));
            }
            if bp.interval(upper) != expected {
                report.failures.push(format!(
                    "{name}: upper cover is {}, expected {}",
                    l.interval_label(bp.interval(upper)),
                    l.interval_label(expected)
                ));
            }
        }
    }
    Ok(report)
}
