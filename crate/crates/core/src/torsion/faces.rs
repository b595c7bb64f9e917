//! Cover relations of the binuclear interval order on torsion classes,
//! their comparison with face incidence of cones, and the partition by
//! hearts.

use std::collections::BTreeMap;

use super::algebra::Subcat;
use super::presilting::{cone_data, PresiltingEntry};
use super::tors::{heart, TorsData};
use super::TorsionError;
use crate::lattice::{FinLattice, Interval, Poset};
use crate::semidistrib::check_semidistributivity;

/// `outer` contains `inner` as a set of torsion classes.
fn nests(td: &TorsData, inner: Interval, outer: Interval) -> bool {
    let l = td.lattice();
    l.leq(outer.lo, inner.lo) && l.leq(inner.hi, outer.hi)
}

fn dims(
    td: &TorsData,
    entries: &[PresiltingEntry],
) -> Result<BTreeMap<Interval, usize>, TorsionError> {
    td.binuc()
        .intervals()
        .iter()
        .map(|&iv| Ok((iv, cone_data(td, entries, iv)?.dim)))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverReport {
    pub covers: usize,
    /// Covers with equal upper endpoints (a cone gaining one dimension).
    pub same_hi: usize,
    /// Covers with equal lower endpoints (a cone losing one dimension).
    pub same_lo: usize,
    pub failures: Vec<String>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For `I < J` in the binuclear order: `I.hi = J.hi`, `J` nested in `I`,
/// and `dim J = dim I + 1`.
fn clause_one(td: &TorsData, d: &BTreeMap<Interval, usize>, i: Interval, j: Interval) -> bool {
    i.hi == j.hi && nests(td, j, i) && d[&j] == d[&i] + 1
}

/// For `I < J`: `I.lo = J.lo`, `I` nested in `J`, and `dim I = dim J + 1`.
fn clause_two(td: &TorsData, d: &BTreeMap<Interval, usize>, i: Interval, j: Interval) -> bool {
    i.lo == j.lo && nests(td, i, j) && d[&i] == d[&j] + 1
}

/// Checks that covers of the binuclear order are exactly the comparable
/// pairs satisfying one of the two face clauses, that each cover shares
/// exactly one endpoint, and the two-of-three statements relating direct
/// summands, shared endpoints and the order.
pub fn fss_cover_check(
    td: &TorsData,
    entries: &[PresiltingEntry],
) -> Result<CoverReport, TorsionError> {
    let bp = td.binuc();
    let d = dims(td, entries)?;
    let mut report = CoverReport::default();
    let name = |iv: Interval| td.interval_label(iv);
    for (i, j) in bp.covers() {
        report.covers += 1;
        let c1 = clause_one(td, &d, i, j);
        let c2 = clause_two(td, &d, i, j);
        if c1 == c2 {
            report.failures.push(format!(
                "cover {} ⋖ {} satisfies {} clauses",
                name(i),
                name(j),
                if c1 { "both" } else { "neither" }
            ));
        }
        if (i.lo == j.lo) == (i.hi == j.hi) {
            report.failures.push(format!(
                "cover {} ⋖ {} shares {} endpoint",
                name(i),
                name(j),
                if i.lo == j.lo { "both" } else { "no" }
            ));
        }
        if i.hi == j.hi {
            report.same_hi += 1;
        } else if i.lo == j.lo {
            report.same_lo += 1;
        }
    }
    let ivs = bp.intervals();
    for &i in ivs {
        for &j in ivs {
            if i == j || !bp.leq(i, j) {
                continue;
            }
            let pos_i = bp.position(i).expect("binuclear");
            let pos_j = bp.position(j).expect("binuclear");
            let cover = bp.poset().is_cover(pos_i, pos_j);
            if !cover && (clause_one(td, &d, i, j) || clause_two(td, &d, i, j)) {
                report.failures.push(format!(
                    "{} < {} satisfies a face clause but is not a cover",
                    name(i),
                    name(j)
                ));
            }
        }
    }
    for u in entries {
        for v in entries {
            let le = bp.leq(u.interval, v.interval);
            let first = [
                u.pair.is_summand_of(&v.pair),
                u.interval.hi == v.interval.hi,
                le,
            ];
            let second = [
                v.pair.is_summand_of(&u.pair),
                u.interval.lo == v.interval.lo,
                le,
            ];
            for (k, conds) in [first, second].iter().enumerate() {
                if conds.iter().filter(|&&c| c).count() == 2 {
                    report.failures.push(format!(
                        "two-of-three ({}) fails for {} and {}",
                        k + 1,
                        u.pair.label(td.spec()),
                        v.pair.label(td.spec())
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Symmetric difference between the undirected Hasse graph of the
/// binuclear order and the graph of codimension-one face incidences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IncidenceDiff {
    /// Hasse edges that are not face incidences.
    pub hasse_only: Vec<(Interval, Interval)>,
    /// Face incidences that are not Hasse edges.
    pub incidence_only: Vec<(Interval, Interval)>,
}

impl IncidenceDiff {
    pub fn len(&self) -> usize {
        self.hasse_only.len() + self.incidence_only.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn unordered(a: Interval, b: Interval) -> (Interval, Interval) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn hasse_vs_incidence(
    td: &TorsData,
    entries: &[PresiltingEntry],
) -> Result<IncidenceDiff, TorsionError> {
    let d = dims(td, entries)?;
    let hasse: std::collections::BTreeSet<(Interval, Interval)> = td
        .binuc()
        .covers()
        .into_iter()
        .map(|(a, b)| unordered(a, b))
        .collect();
    let mut incidence = std::collections::BTreeSet::new();
    for &big in td.binuc().intervals() {
        for &small in td.binuc().intervals() {
            // the cone of `big` is a facet of the cone of `small`
            if big != small && nests(td, small, big) && d[&small] == d[&big] + 1 {
                incidence.insert(unordered(big, small));
            }
        }
    }
    Ok(IncidenceDiff {
        hasse_only: hasse.difference(&incidence).copied().collect(),
        incidence_only: incidence.difference(&hasse).copied().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwBlock {
    pub heart: Subcat,
    pub intervals: Vec<Interval>,
    pub is_chain: bool,
    pub semidistributive: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CwReport {
    pub blocks: Vec<CwBlock>,
    pub failures: Vec<String>,
}

impl CwReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn block(&self, heart: Subcat) -> Option<&CwBlock> {
        self.blocks.iter().find(|b| b.heart == heart)
    }
}

/// Groups binuclear intervals by heart and checks each block: the set of
/// intervals whose heart contains it is convex, the block is closed under
/// endpointwise meets and joins, it is a semidistributive lattice, and the
/// empty-heart block is `T ↦ [T, T]`, isomorphic to the torsion lattice.
pub fn cw_partition(td: &TorsData) -> CwReport {
    let l = td.lattice();
    let bp = td.binuc();
    let mut groups: BTreeMap<Subcat, Vec<Interval>> = BTreeMap::new();
    for &iv in bp.intervals() {
        groups.entry(heart(td, iv)).or_default().push(iv);
    }
    let mut report = CwReport::default();
    let total: usize = groups.values().map(Vec::len).sum();
    if total != bp.len() {
        report
            .failures
            .push("blocks do not partition the intervals".into());
    }
    for (&w, block) in &groups {
        let label = td.spec().label(w);
        let closure: Vec<Interval> = bp
            .intervals()
            .iter()
            .copied()
            .filter(|&iv| w.is_subset(heart(td, iv)))
            .collect();
        if block.iter().any(|iv| !closure.contains(iv)) {
            report
                .failures
                .push(format!("block {label} is not inside its closure"));
        }
        for &a in &closure {
            for &c in &closure {
                if !bp.leq(a, c) {
                    continue;
                }
                for &b in bp.intervals() {
                    if bp.leq(a, b) && bp.leq(b, c) && !closure.contains(&b) {
                        report.failures.push(format!(
                            "closure of {label} is not convex at {}",
                            td.interval_label(b)
                        ));
                    }
                }
            }
        }
        for &a in block {
            for &b in block {
                let m = Interval::new(l.meet2(a.lo, b.lo), l.meet2(a.hi, b.hi));
                let j = Interval::new(l.join2(a.lo, b.lo), l.join2(a.hi, b.hi));
                if !block.contains(&m) || !block.contains(&j) {
                    report.failures.push(format!(
                        "block {label} not closed under endpoint bounds of {} and {}",
                        td.interval_label(a),
                        td.interval_label(b)
                    ));
                }
            }
        }
        let k = block.len();
        let mut leq = vec![false; k * k];
        for (x, &a) in block.iter().enumerate() {
            for (y, &b) in block.iter().enumerate() {
                leq[x * k + y] = bp.leq(a, b);
            }
        }
        let labels = block.iter().map(|&iv| td.interval_label(iv)).collect();
        let poset = Poset::from_relation(labels, leq).expect("subposet");
        let is_chain = block
            .iter()
            .all(|&a| block.iter().all(|&b| bp.leq(a, b) || bp.leq(b, a)));
        let semidistributive = match FinLattice::from_poset(format!("C({label})"), poset) {
            Ok(bl) => check_semidistributivity(&bl).holds(),
            Err(e) => {
                report
                    .failures
                    .push(format!("block {label} is not a lattice: {e}"));
                false
            }
        };
        if !semidistributive {
            report
                .failures
                .push(format!("block {label} is not semidistributive"));
        }
        report.blocks.push(CwBlock {
            heart: w,
            intervals: block.clone(),
            is_chain,
            semidistributive,
        });
    }
    match report.block(Subcat::EMPTY) {
        Some(b) => {
            let points: Vec<Interval> = l.elements().map(Interval::point).collect();
            let mut got = b.intervals.clone();
            got.sort();
            if got != points {
                report
                    .failures
                    .push("empty-heart block is not the set of points".into());
            }
        }
        None => report.failures.push("no empty-heart block".into()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{enumerate_presilting, enumerate_tors, gen_linear_an};

    #[test]
    fn a2_covers() {
        let td = enumerate_tors(&gen_linear_an(2).unwrap()).unwrap();
        let e = enumerate_presilting(&td).unwrap();
        let r = fss_cover_check(&td, &e).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.covers, 14);
        assert_eq!(r.same_hi + r.same_lo, 14);
    }

    #[test]
    fn a2_side_atom_cover() {
        // [0, s] ⋖ [s, s] with equal upper endpoints
        let spec = gen_linear_an(2).unwrap();
        let td = enumerate_tors(&spec).unwrap();
        let l = td.lattice();
        let s = td
            .element(Subcat::single(spec.find("M[1,1]").unwrap()))
            .unwrap();
        let a = td.binuc().position(Interval::new(l.bottom(), s)).unwrap();
        let b = td.binuc().position(Interval::point(s)).unwrap();
        assert!(td.binuc().poset().is_cover(a, b));
        let e = enumerate_presilting(&td).unwrap();
        assert_eq!(
            cone_data(&td, &e, Interval::new(l.bottom(), s))
                .unwrap()
                .dim,
            1
        );
        assert_eq!(cone_data(&td, &e, Interval::point(s)).unwrap().dim, 2);
    }

    #[test]
    fn a1_incidence_agrees() {
        let td = enumerate_tors(&gen_linear_an(1).unwrap()).unwrap();
        let e = enumerate_presilting(&td).unwrap();
        assert!(hasse_vs_incidence(&td, &e).unwrap().is_empty());
    }

    #[test]
    fn a2_incidence_differs_at_origin() {
        let spec = gen_linear_an(2).unwrap();
        let td = enumerate_tors(&spec).unwrap();
        let l = td.lattice();
        let e = enumerate_presilting(&td).unwrap();
        let diff = hasse_vs_incidence(&td, &e).unwrap();
        let s2 = spec.find("M[2,2]").unwrap();
        let p2 = spec.find("M[1,2]").unwrap();
        let t1 = td.element(Subcat::single(s2)).unwrap();
        let t2 = td.element(Subcat::from_ids([s2, p2])).unwrap();
        assert!(diff.hasse_only.is_empty());
        assert_eq!(
            diff.incidence_only,
            [unordered(
                Interval::new(l.bottom(), l.top()),
                Interval::new(t1, t2)
            )]
        );
    }

    #[test]
    fn face_nesting_matches_summands() {
        for n in 1..=3 {
            let td = enumerate_tors(&gen_linear_an(n).unwrap()).unwrap();
            let e = enumerate_presilting(&td).unwrap();
            for u in &e {
                for v in &e {
                    assert_eq!(
                        u.pair.is_summand_of(&v.pair),
                        nests(&td, v.interval, u.interval),
                        "{} vs {}",
                        u.pair.label(td.spec()),
                        v.pair.label(td.spec())
                    );
                }
            }
        }
    }

    #[test]
    fn a2_partition() {
        let spec = gen_linear_an(2).unwrap();
        let td = enumerate_tors(&spec).unwrap();
        let r = cw_partition(&td);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(
            r.blocks.iter().map(|b| b.intervals.len()).sum::<usize>(),
            11
        );
        assert_eq!(r.block(Subcat::EMPTY).unwrap().intervals.len(), 5);
        // heart add P(2): only [T(S2), T(P2)]
        let p2 = spec.find("M[1,2]").unwrap();
        assert_eq!(r.block(Subcat::single(p2)).unwrap().intervals.len(), 1);
    }
}
