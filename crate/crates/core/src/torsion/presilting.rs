use num_rational::Rational64;

use super::algebra::{AlgebraSpec, Subcat};
use super::tors::{left_perp, right_perp, tors_closure, TorsData};
use super::TorsionError;
use crate::lattice::Interval;
use crate::linalg::rank_rational;

/// A support τ-rigid pair `(M, P)`: `M` a set of indecomposables with
/// `Hom(M, τM) = 0`, `P` a set of projectives with `Hom(P, M) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauRigidPair {
    pub modules: Subcat,
    pub shifted: Subcat,
}

impl TauRigidPair {
    pub fn summands(&self) -> usize {
        self.modules.len() + self.shifted.len()
    }

    /// `self` is a direct summand of `other`.
    pub fn is_summand_of(&self, other: &TauRigidPair) -> bool {
        self.modules.is_subset(other.modules) && self.shifted.is_subset(other.shifted)
    }

    pub fn label(&self, spec: &AlgebraSpec) -> String {
        format!(
            "({}, {})",
            spec.label(self.modules),
            spec.label(self.shifted)
        )
    }
}

fn tau_of(spec: &AlgebraSpec, m: Subcat) -> Subcat {
    Subcat::from_ids(m.iter().filter_map(|x| spec.indec(x).tau))
}

pub fn is_tau_rigid_pair(spec: &AlgebraSpec, pair: &TauRigidPair) -> bool {
    let m = pair.modules;
    let p = pair.shifted;
    let tau_m = tau_of(spec, m);
    p.is_subset(spec.projectives())
        && m.intersect(p).is_empty()
        && m.iter()
            .all(|x| spec.hom_out(x).intersect(tau_m).is_empty())
        && p.iter().all(|q| spec.hom_out(q).intersect(m).is_empty())
}

/// All support τ-rigid pairs, by backtracking over indecomposables.
pub fn enumerate_tau_rigid_pairs(spec: &AlgebraSpec) -> Vec<TauRigidPair> {
    fn rec(spec: &AlgebraSpec, i: usize, cur: TauRigidPair, out: &mut Vec<TauRigidPair>) {
        if i == spec.len() {
            out.push(cur);
            return;
        }
        rec(spec, i + 1, cur, out);
        if cur.summands() == spec.rank() {
            return;
        }
        let mut with_m = cur;
        with_m.modules.insert(i);
        if is_tau_rigid_pair(spec, &with_m) {
            rec(spec, i + 1, with_m, out);
        }
        if spec.indec(i).projective {
            let mut with_p = cur;
            with_p.shifted.insert(i);
            if is_tau_rigid_pair(spec, &with_p) {
                rec(spec, i + 1, with_p, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(
        spec,
        0,
        TauRigidPair {
            modules: Subcat::EMPTY,
            shifted: Subcat::EMPTY,
        },
        &mut out,
    );
    out.sort();
    out
}

/// `[T(M), ⊥(τM) ∩ P^⊥]`.
pub fn pair_interval(td: &TorsData, pair: &TauRigidPair) -> Result<Interval, TorsionError> {
    let spec = td.spec();
    let lo = tors_closure(spec, pair.modules);
    let hi = left_perp(spec, tau_of(spec, pair.modules))?.intersect(right_perp(spec, pair.shifted));
    Ok(Interval::new(td.element(lo)?, td.element(hi)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresiltingEntry {
    pub pair: TauRigidPair,
    pub interval: Interval,
}

/// Every support τ-rigid pair with its interval, sorted by interval. Fails
/// unless the intervals are exactly the binuclear intervals, each hit once.
pub fn enumerate_presilting(td: &TorsData) -> Result<Vec<PresiltingEntry>, TorsionError> {
    let spec = td.spec();
    let mut entries = Vec::new();
    for pair in enumerate_tau_rigid_pairs(spec) {
        let interval = pair_interval(td, &pair)?;
        entries.push(PresiltingEntry { pair, interval });
    }
    entries.sort_by_key(|e| (e.interval, e.pair));
    for w in entries.windows(2) {
        if w[0].interval == w[1].interval {
            return Err(TorsionError::NotBijective(format!(
                "pairs {} and {} share interval {}",
                w[0].pair.label(spec),
                w[1].pair.label(spec),
                td.interval_label(w[0].interval)
            )));
        }
    }
    let binuc = td.binuc().intervals();
    for e in &entries {
        if !td.binuc().contains(e.interval) {
            return Err(TorsionError::NotBijective(format!(
                "pair {} gives non-binuclear {}",
                e.pair.label(spec),
                td.interval_label(e.interval)
            )));
        }
    }
    if let Some(&missing) = binuc
        .iter()
        .find(|&&iv| entries.binary_search_by_key(&iv, |e| e.interval).is_err())
    {
        return Err(TorsionError::NotBijective(format!(
            "no pair for {}",
            td.interval_label(missing)
        )));
    }
    Ok(entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeData {
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
}

/// Dimension of the cone of a binuclear interval, as `n` minus the number
/// of atoms of the interval, together with the g-vectors of the matching
/// pair (negated for shifted projectives). Both descriptions must agree
/// and the generators must be independent.
pub fn cone_data(
    td: &TorsData,
    entries: &[PresiltingEntry],
    iv: Interval,
) -> Result<ConeData, TorsionError> {
    let spec = td.spec();
    let l = td.lattice();
    if !td.binuc().contains(iv) {
        return Err(TorsionError::NotBinuclear(td.interval_label(iv)));
    }
    let atoms = l
        .upper_covers(iv.lo)
        .iter()
        .filter(|&&t| l.leq(t, iv.hi))
        .count();
    let dim = spec.rank() - atoms;
    let entry = entries.iter().find(|e| e.interval == iv).ok_or_else(|| {
        TorsionError::NotBijective(format!("no pair for {}", td.interval_label(iv)))
    })?;
    let mut generators: Vec<Vec<i64>> = entry
        .pair
        .modules
        .iter()
        .map(|x| spec.indec(x).g.clone())
        .collect();
    generators.extend(
        entry
            .pair
            .shifted
            .iter()
            .map(|p| spec.indec(p).g.iter().map(|v| -v).collect()),
    );
    if generators.len() != dim {
        return Err(TorsionError::DimensionMismatch(format!(
            "{}: {} atoms give dimension {dim}, pair {} has {} summands",
            td.interval_label(iv),
            atoms,
            entry.pair.label(spec),
            generators.len()
        )));
    }
    let rational: Vec<Vec<Rational64>> = generators
        .iter()
        .map(|g| g.iter().map(|&v| Rational64::from_integer(v)).collect())
        .collect();
    if rank_rational(&rational) != generators.len() {
        return Err(TorsionError::DependentGenerators(entry.pair.label(spec)));
    }
    Ok(ConeData { dim, generators })
}
