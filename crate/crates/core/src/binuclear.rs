//! Pop operators, binuclear intervals and the binuclear interval order.
//!
//! For `x <= y` in a finite lattice, `pop_down(x, y)` meets `y` with every
//! lower cover of `y` lying above `x`, and `pop_up(x, y)` joins `x` with every
//! upper cover of `x` lying below `y`. An interval `[a, b]` is nuclear when
//! `pop_down(a, b) = a`, conuclear when `pop_up(a, b) = b`, and binuclear when
//! both hold. Binuclear intervals are ordered componentwise on endpoints.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{ElementId, FinLattice, Interval, LatticeError, LatticeJson, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BinucError {
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("interval {0} is not binuclear")]
    NotBinuclearInput(String),
    #[error("lattice is not binuclear: {0} is nuclear xor conuclear")]
    NotBinuclearLattice(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `y ∧ ⋀{z | x <= z ⋖ y}`.
pub fn pop_down(l: &FinLattice, x: ElementId, y: ElementId) -> Result<ElementId, BinucError> {
    if !l.leq(x, y) {
        return Err(BinucError::NotComparable(
            l.label(x).to_string(),
            l.label(y).to_string(),
        ));
    }
    Ok(pop_down_unchecked(l, x, y))
}

/// `x ∨ ⋁{z | x ⋖ z <= y}`.
pub fn pop_up(l: &FinLattice, x: ElementId, y: ElementId) -> Result<ElementId, BinucError> {
    if !l.leq(x, y) {
        return Err(BinucError::NotComparable(
            l.label(x).to_string(),
            l.label(y).to_string(),
        ));
    }
    Ok(pop_up_unchecked(l, x, y))
}

fn pop_down_unchecked(l: &FinLattice, x: ElementId, y: ElementId) -> ElementId {
    l.lower_covers(y)
        .iter()
        .filter(|&&z| l.leq(x, z))
        .fold(y, |acc, &z| l.meet2(acc, z))
}

fn pop_up_unchecked(l: &FinLattice, x: ElementId, y: ElementId) -> ElementId {
    l.upper_covers(x)
        .iter()
        .filter(|&&z| l.leq(z, y))
        .fold(x, |acc, &z| l.join2(acc, z))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalClass {
    pub nuclear: bool,
    pub conuclear: bool,
    pub binuclear: bool,
}

pub fn classify_interval(l: &FinLattice, iv: Interval) -> IntervalClass {
    debug_assert!(l.leq(iv.lo, iv.hi));
    let nuclear = pop_down_unchecked(l, iv.lo, iv.hi) == iv.lo;
    let conuclear = pop_up_unchecked(l, iv.lo, iv.hi) == iv.hi;
    IntervalClass {
        nuclear,
        conuclear,
        binuclear: nuclear && conuclear,
    }
}

pub fn is_binuclear(l: &FinLattice, iv: Interval) -> bool {
    classify_interval(l, iv).binuclear
}

/// All binuclear intervals ordered by `(lo, hi)`.
pub fn binuclear_intervals(l: &FinLattice) -> Vec<Interval> {
    l.intervals().filter(|&iv| is_binuclear(l, iv)).collect()
}

/// Intervals `[x, y]` with `y <= pop_up(x, top)`.
pub fn ice_intervals(l: &FinLattice) -> Vec<Interval> {
    l.intervals()
        .filter(|iv| l.leq(iv.hi, pop_up_unchecked(l, iv.lo, l.top())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinuclearVerdict {
    Binuclear,
    /// First interval (in `(lo, hi)` order) that is nuclear or conuclear but
    /// not both.
    Witness {
        interval: Interval,
        class: IntervalClass,
    },
}

impl BinuclearVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, BinuclearVerdict::Binuclear)
    }
}

pub fn is_binuclear_lattice(l: &FinLattice) -> BinuclearVerdict {
    for iv in l.intervals() {
        let class = classify_interval(l, iv);
        if class.nuclear != class.conuclear {
            return BinuclearVerdict::Witness {
                interval: iv,
                class,
            };
        }
    }
    BinuclearVerdict::Binuclear
}

/// `I <=_NI J` on raw endpoints.
#[inline]
pub fn ni_leq(l: &FinLattice, a: Interval, b: Interval) -> bool {
    l.leq(a.lo, b.lo) && l.leq(a.hi, b.hi)
}

/// Binuclear intervals of a lattice under the componentwise order.
#[derive(Clone, Debug)]
pub struct BinucPoset {
    base: FinLattice,
    base_binuclear: BinuclearVerdict,
    intervals: Vec<Interval>,
    position: HashMap<Interval, ElementId>,
    poset: Poset,
}

/// Builds the binuclear interval order. Works for any finite lattice; the
/// carrier is always the set of intervals that are both nuclear and
/// conuclear.
pub fn build_ni_order(l: &FinLattice) -> BinucPoset {
    let intervals = binuclear_intervals(l);
    let m = intervals.len();
    let mut leq = vec![false; m * m];
    for (i, &a) in intervals.iter().enumerate() {
        for (j, &b) in intervals.iter().enumerate() {
            leq[i * m + j] = ni_leq(l, a, b);
        }
    }
    let labels: Vec<String> = intervals.iter().map(|&iv| l.interval_label(iv)).collect();
    let poset = Poset::from_relation(labels, leq).expect("componentwise order is a partial order");
    let position = intervals
        .iter()
        .enumerate()
        .map(|(i, &iv)| (iv, ElementId(i)))
        .collect();
    BinucPoset {
        base: l.clone(),
        base_binuclear: is_binuclear_lattice(l),
        intervals,
        position,
        poset,
    }
}

impl BinucPoset {
    pub fn base(&self) -> &FinLattice {
        &self.base
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn position(&self, iv: Interval) -> Option<ElementId> {
        self.position.get(&iv).copied()
    }

    pub fn contains(&self, iv: Interval) -> bool {
        self.position.contains_key(&iv)
    }

    pub fn interval(&self, x: ElementId) -> Interval {
        self.intervals[x.0]
    }

    pub fn leq(&self, a: Interval, b: Interval) -> bool {
        ni_leq(&self.base, a, b)
    }

    pub fn base_is_binuclear(&self) -> bool {
        self.base_binuclear.holds()
    }

    /// Cover pairs of `<=_NI` as intervals.
    pub fn covers(&self) -> Vec<(Interval, Interval)> {
        self.poset
            .covers()
            .iter()
            .map(|&(a, b)| (self.intervals[a.0], self.intervals[b.0]))
            .collect()
    }

    pub fn label(&self, iv: Interval) -> String {
        self.base.interval_label(iv)
    }

    /// The order as a lattice, if it is one. Element `k` of the result is
    /// `self.intervals()[k]`.
    pub fn to_lattice(&self) -> Result<FinLattice, LatticeError> {
        FinLattice::from_poset(format!("binuc({})", self.base.name()), self.poset.clone())
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson::from_poset(&format!("binuc({})", self.base.name()), &self.poset)
    }

    pub fn to_dot(&self) -> String {
        self.poset.to_dot(&format!("binuc({})", self.base.name()))
    }

    fn check_inputs(&self, a: Interval, b: Interval) -> Result<(), BinucError> {
        for iv in [a, b] {
            if !self.contains(iv) {
                return Err(BinucError::NotBinuclearInput(self.label(iv)));
            }
        }
        if let BinuclearVerdict::Witness { interval, .. } = self.base_binuclear {
            return Err(BinucError::NotBinuclearLattice(self.label(interval)));
        }
        Ok(())
    }
}

/// Result of a meet or join query in the binuclear interval order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiBound {
    Exists(Interval),
    /// The bound does not exist. `candidate` is the interval given by the
    /// endpoint formula; `witness`, when present, is a maximal common lower
    /// (resp. minimal common upper) bound not comparable to it in the
    /// required direction.
    Missing {
        candidate: Interval,
        witness: Option<Interval>,
    },
}

impl NiBound {
    pub fn value(&self) -> Option<Interval> {
        match *self {
            NiBound::Exists(iv) => Some(iv),
            NiBound::Missing { .. } => None,
        }
    }
}

/// Meet in the binuclear interval order. The candidate
/// `[a⁻ ∧ b⁻, pop_up(a⁻ ∧ b⁻, a⁺ ∧ b⁺)]` is always verified against every
/// common lower bound before it is returned.
pub fn ni_meet(bp: &BinucPoset, a: Interval, b: Interval) -> Result<NiBound, BinucError> {
    bp.check_inputs(a, b)?;
    let l = &bp.base;
    let lo = l.meet2(a.lo, b.lo);
    let hi = pop_up_unchecked(l, lo, l.meet2(a.hi, b.hi));
    let candidate = Interval::new(lo, hi);
    let lower: Vec<Interval> = bp
        .intervals
        .iter()
        .copied()
        .filter(|&k| bp.leq(k, a) && bp.leq(k, b))
        .collect();
    let valid = bp.contains(candidate) && bp.leq(candidate, a) && bp.leq(candidate, b);
    if valid && lower.iter().all(|&k| bp.leq(k, candidate)) {
        return Ok(NiBound::Exists(candidate));
    }
    let witness = lower
        .iter()
        .copied()
        .filter(|&k| !lower.iter().any(|&k2| k2 != k && bp.leq(k, k2)))
        .find(|&k| !bp.leq(k, candidate));
    Ok(NiBound::Missing { candidate, witness })
}

/// Join in the binuclear interval order, dual to [`ni_meet`]:
/// `[pop_down(a⁻ ∨ b⁻, a⁺ ∨ b⁺), a⁺ ∨ b⁺]`.
pub fn ni_join(bp: &BinucPoset, a: Interval, b: Interval) -> Result<NiBound, BinucError> {
    bp.check_inputs(a, b)?;
    let l = &bp.base;
    let hi = l.join2(a.hi, b.hi);
    let lo = pop_down_unchecked(l, l.join2(a.lo, b.lo), hi);
    let candidate = Interval::new(lo, hi);
    let upper: Vec<Interval> = bp
        .intervals
        .iter()
        .copied()
        .filter(|&k| bp.leq(a, k) && bp.leq(b, k))
        .collect();
    let valid = bp.contains(candidate) && bp.leq(a, candidate) && bp.leq(b, candidate);
    if valid && upper.iter().all(|&k| bp.leq(candidate, k)) {
        return Ok(NiBound::Exists(candidate));
    }
    let witness = upper
        .iter()
        .copied()
        .filter(|&k| !upper.iter().any(|&k2| k2 != k && bp.leq(k2, k)))
        .find(|&k| !bp.leq(candidate, k));
    Ok(NiBound::Missing { candidate, witness })
}

/// Outcome of the co-covered meet criterion on a finite bounded poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BezVerdict {
    pub holds: bool,
    /// `(x, y, z)` with `x, y ⋖ z` and no meet of `x, y`.
    pub witness: Option<(ElementId, ElementId, ElementId)>,
    /// The criterion holds and the poset is bounded, hence it is a lattice.
    pub lattice_implied: bool,
}

/// Checks that any two elements covered by a common element have a meet.
pub fn check_bez(p: &Poset) -> BezVerdict {
    for z in p.elements() {
        let lower = p.lower_covers(z);
        for (i, &x) in lower.iter().enumerate() {
            for &y in &lower[i + 1..] {
                if p.meet_of(&[x, y]).is_none() {
                    return BezVerdict {
                        holds: false,
                        witness: Some((x, y, z)),
                        lattice_implied: false,
                    };
                }
            }
        }
    }
    let bounded = p.bottom().is_some() && p.top().is_some();
    BezVerdict {
        holds: true,
        witness: None,
        lattice_implied: bounded,
    }
}

/// A counterexample to one of the pop-operator reformulations of
/// (co)nuclearity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopCharacterizationFailure {
    pub statement: &'static str,
    pub interval: Interval,
}

/// Exhaustively checks, on one lattice:
///
/// * for every `x` and every set `S` of lower covers of `x`, the interval
///   `[x ∧ ⋀S, x]` is nuclear, and every nuclear interval with top `x` arises
///   this way (and the dual statement for conuclear intervals);
/// * an interval is nuclear iff `lo = pop_down(z, hi)` for some `z <= hi`,
///   and conuclear iff `hi = pop_up(lo, z)` for some `z >= lo`.
///
/// Elements with more than `max_degree` covers on the relevant side are
/// skipped in the subset enumeration.
pub fn verify_pop_characterization(
    l: &FinLattice,
    max_degree: usize,
) -> Result<(), PopCharacterizationFailure> {
    for x in l.elements() {
        let lower = l.lower_covers(x);
        if lower.len() <= max_degree {
            let mut reached = vec![false; l.len()];
            for mask in 0u64..1 << lower.len() {
                let lo = subset_fold(lower, mask, x, |a, b| l.meet2(a, b));
                reached[lo.0] = true;
                let iv = Interval::new(lo, x);
                if !classify_interval(l, iv).nuclear {
                    return Err(PopCharacterizationFailure {
                        statement: "meet with lower covers gives a nuclear interval",
                        interval: iv,
                    });
                }
            }
            for z in l.elements().filter(|&z| l.leq(z, x)) {
                let iv = Interval::new(z, x);
                if classify_interval(l, iv).nuclear && !reached[z.0] {
                    return Err(PopCharacterizationFailure {
                        statement: "nuclear interval is a meet with lower covers",
                        interval: iv,
                    });
                }
            }
        }
        let upper = l.upper_covers(x);
        if upper.len() <= max_degree {
            let mut reached = vec![false; l.len()];
            for mask in 0u64..1 << upper.len() {
                let hi = subset_fold(upper, mask, x, |a, b| l.join2(a, b));
                reached[hi.0] = true;
                let iv = Interval::new(x, hi);
                if !classify_interval(l, iv).conuclear {
                    return Err(PopCharacterizationFailure {
                        statement: "join with upper covers gives a conuclear interval",
                        interval: iv,
                    });
                }
            }
            for z in l.elements().filter(|&z| l.leq(x, z)) {
                let iv = Interval::new(x, z);
                if classify_interval(l, iv).conuclear && !reached[z.0] {
                    return Err(PopCharacterizationFailure {
                        statement: "conuclear interval is a join with upper covers",
                        interval: iv,
                    });
                }
            }
        }
    }
    for iv in l.intervals() {
        let class = classify_interval(l, iv);
        let via_down = l
            .elements()
            .filter(|&z| l.leq(z, iv.hi))
            .any(|z| pop_down_unchecked(l, z, iv.hi) == iv.lo);
        if via_down != class.nuclear {
            return Err(PopCharacterizationFailure {
                statement: "nuclear iff lo = pop_down(z, hi) for some z",
                interval: iv,
            });
        }
        let via_up = l
            .elements()
            .filter(|&z| l.leq(iv.lo, z))
            .any(|z| pop_up_unchecked(l, iv.lo, z) == iv.hi);
        if via_up != class.conuclear {
            return Err(PopCharacterizationFailure {
                statement: "conuclear iff hi = pop_up(lo, z) for some z",
                interval: iv,
            });
        }
    }
    Ok(())
}

fn subset_fold(
    items: &[ElementId],
    mask: u64,
    init: ElementId,
    op: impl Fn(ElementId, ElementId) -> ElementId,
) -> ElementId {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(init, |acc, (_, &z)| op(acc, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{boolean, chain, fig1, fig2, weak_order};

    fn iv(l: &FinLattice, lo: &str, hi: &str) -> Interval {
        Interval::new(l.id(lo).unwrap(), l.id(hi).unwrap())
    }

    #[test]
    fn fig1_pops() {
        let l = fig1().unwrap();
        let (bot, top) = (l.bottom(), l.top());
        assert_eq!(pop_down(&l, bot, top).unwrap(), bot);
        assert_eq!(pop_up(&l, bot, top).unwrap(), l.id("y").unwrap());
        let c = classify_interval(&l, Interval::new(bot, top));
        assert!(c.nuclear && !c.conuclear && !c.binuclear);
        match is_binuclear_lattice(&l) {
            BinuclearVerdict::Witness { interval, .. } => {
                assert_eq!(interval, Interval::new(bot, top))
            }
            BinuclearVerdict::Binuclear => panic!("fig1 is not binuclear"),
        }
    }

    #[test]
    fn fig2_pops() {
        let l = fig2().unwrap();
        assert_eq!(
            pop_up(&l, l.id("i").unwrap(), l.id("c").unwrap()).unwrap(),
            l.id("f").unwrap()
        );
        assert_eq!(
            pop_down(&l, l.bottom(), l.id("c").unwrap()).unwrap(),
            l.bottom()
        );
        for s in [("g", "a"), ("h", "b"), ("i", "f"), ("bot", "c")] {
            assert!(is_binuclear(&l, iv(&l, s.0, s.1)), "{s:?}");
        }
    }

    #[test]
    fn pop_on_point_is_identity() {
        let l = fig2().unwrap();
        for x in l.elements() {
            assert_eq!(pop_down(&l, x, x).unwrap(), x);
            assert_eq!(pop_up(&l, x, x).unwrap(), x);
        }
    }

    #[test]
    fn pop_rejects_incomparable() {
        let l = fig2().unwrap();
        let err = pop_down(&l, l.id("g").unwrap(), l.id("h").unwrap()).unwrap_err();
        assert!(matches!(err, BinucError::NotComparable(..)));
        assert!(pop_up(&l, l.top(), l.bottom()).is_err());
    }

    #[test]
    fn covers_and_points_are_binuclear() {
        for l in [fig1().unwrap(), fig2().unwrap(), weak_order(3).unwrap()] {
            for x in l.elements() {
                assert!(is_binuclear(&l, Interval::point(x)));
            }
            for &(a, b) in l.covers() {
                assert!(is_binuclear(&l, Interval::new(a, b)));
            }
        }
    }

    #[test]
    fn chain_and_boolean_counts() {
        for n in 1..=6 {
            assert_eq!(binuclear_intervals(&chain(n).unwrap()).len(), 2 * n - 1);
        }
        assert_eq!(binuclear_intervals(&boolean(2).unwrap()).len(), 9);
        for n in 0..=4 {
            assert!(is_binuclear_lattice(&boolean(n).unwrap()).holds());
        }
    }

    #[test]
    fn chain3_order_is_a_chain() {
        let l = chain(3).unwrap();
        let bp = build_ni_order(&l);
        let names: Vec<String> = bp.intervals().iter().map(|&i| bp.label(i)).collect();
        assert_eq!(names, ["[0,0]", "[0,1]", "[1,1]", "[1,2]", "[2,2]"]);
        for w in bp.intervals().windows(2) {
            assert!(bp.leq(w[0], w[1]));
        }
        assert_eq!(ice_intervals(&l), bp.intervals());
    }

    #[test]
    fn weak_order_3_binuc_size() {
        assert_eq!(build_ni_order(&weak_order(3).unwrap()).len(), 13);
    }

    #[test]
    fn fig2_meet_missing() {
        let l = fig2().unwrap();
        let bp = build_ni_order(&l);
        let got = ni_meet(&bp, iv(&l, "g", "a"), iv(&l, "h", "b")).unwrap();
        assert_eq!(
            got,
            NiBound::Missing {
                candidate: iv(&l, "i", "f"),
                witness: Some(iv(&l, "bot", "c")),
            }
        );
    }

    #[test]
    fn dual_fig2_join_missing() {
        let l = fig2().unwrap().dual();
        let bp = build_ni_order(&l);
        // [g,a] in fig2 is [a,g] in the dual
        let got = ni_join(&bp, iv(&l, "a", "g"), iv(&l, "b", "h")).unwrap();
        assert!(matches!(got, NiBound::Missing { .. }));
    }

    #[test]
    fn idempotent_bounds() {
        let l = weak_order(3).unwrap();
        let bp = build_ni_order(&l);
        for &i in bp.intervals() {
            assert_eq!(ni_meet(&bp, i, i).unwrap(), NiBound::Exists(i));
            assert_eq!(ni_join(&bp, i, i).unwrap(), NiBound::Exists(i));
        }
    }

    #[test]
    fn meet_preconditions() {
        let l = fig1().unwrap();
        let bp = build_ni_order(&l);
        let p = Interval::point(l.bottom());
        assert!(matches!(
            ni_meet(&bp, p, p),
            Err(BinucError::NotBinuclearLattice(_))
        ));
        let l = fig2().unwrap();
        let bp = build_ni_order(&l);
        let not_binuc = iv(&l, "i", "c");
        assert!(matches!(
            ni_meet(&bp, not_binuc, not_binuc),
            Err(BinucError::NotBinuclearInput(_))
        ));
    }

    #[test]
    fn bez_on_fig2_fails() {
        let bp = build_ni_order(&fig2().unwrap());
        let v = check_bez(bp.poset());
        assert!(!v.holds);
        assert!(v.witness.is_some());
        let one = build_ni_order(&chain(1).unwrap());
        assert!(check_bez(one.poset()).holds);
        assert!(check_bez(one.poset()).lattice_implied);
    }

    #[test]
    fn duality_of_binuclear_intervals() {
        for l in [fig1().unwrap(), fig2().unwrap(), weak_order(3).unwrap()] {
            let d = l.dual();
            let mut flipped: Vec<Interval> = binuclear_intervals(&l)
                .into_iter()
                .map(|i| Interval::new(i.hi, i.lo))
                .collect();
            flipped.sort();
            assert_eq!(binuclear_intervals(&d), flipped);
        }
    }

    #[test]
    fn pop_characterization_on_corpus() {
        for l in [
            fig1().unwrap(),
            fig2().unwrap(),
            weak_order(4).unwrap(),
            boolean(3).unwrap(),
        ] {
            verify_pop_characterization(&l, 12).unwrap();
        }
    }
}
