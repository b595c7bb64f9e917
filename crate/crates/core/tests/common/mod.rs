//! Brute-force reference implementations. Everything here works from the
//! raw order relation only: no meet tables, no cached covers.

#![allow(dead_code)]

use binuc_core::generate::{boolean, chain, diamond_m3, fig1, fig2, weak_order};
use binuc_core::lattice::{ElementId, FinLattice, Interval};
use binuc_core::torsion::{enumerate_tors, gen_type_a};

pub struct Raw {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
}

impl Raw {
    pub fn of(l: &FinLattice) -> Raw {
        let n = l.len();
        let leq = (0..n)
            .map(|a| (0..n).map(|b| l.leq(ElementId(a), ElementId(b))).collect())
            .collect();
        Raw { n, leq }
    }

    pub fn covered_by(&self, a: usize, b: usize) -> bool {
        a != b
            && self.leq[a][b]
            && !(0..self.n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
    }

    pub fn glb(&self, set: &[usize]) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&x| set.iter().all(|&s| self.leq[x][s]))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&x| lower.iter().all(|&y| self.leq[y][x]))
    }

    pub fn lub(&self, set: &[usize]) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n)
            .filter(|&x| set.iter().all(|&s| self.leq[s][x]))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&x| upper.iter().all(|&y| self.leq[x][y]))
    }

    /// `x = y ∧ ⋀{z : x <= z ⋖ y}`.
    pub fn nuclear(&self, x: usize, y: usize) -> bool {
        let mut set = vec![y];
        set.extend((0..self.n).filter(|&z| self.leq[x][z] && self.covered_by(z, y)));
        self.leq[x][y] && self.glb(&set) == Some(x)
    }

    /// `y = x ∨ ⋁{z : x ⋖ z <= y}`.
    pub fn conuclear(&self, x: usize, y: usize) -> bool {
        let mut set = vec![x];
        set.extend((0..self.n).filter(|&z| self.covered_by(x, z) && self.leq[z][y]));
        self.leq[x][y] && self.lub(&set) == Some(y)
    }

    pub fn binuclear(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.nuclear(x, y) && self.conuclear(x, y) {
                    v.push((x, y));
                }
            }
        }
        v
    }

    pub fn ni_leq(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.leq[a.0][b.0] && self.leq[a.1][b.1]
    }

    /// Greatest common lower bound of `a`, `b` among `carrier`.
    pub fn ni_glb(
        &self,
        carrier: &[(usize, usize)],
        a: (usize, usize),
        b: (usize, usize),
    ) -> Option<(usize, usize)> {
        let lower: Vec<_> = carrier
            .iter()
            .copied()
            .filter(|&k| self.ni_leq(k, a) && self.ni_leq(k, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&k| lower.iter().all(|&k2| self.ni_leq(k2, k)))
    }

    pub fn ni_lub(
        &self,
        carrier: &[(usize, usize)],
        a: (usize, usize),
        b: (usize, usize),
    ) -> Option<(usize, usize)> {
        let upper: Vec<_> = carrier
            .iter()
            .copied()
            .filter(|&k| self.ni_leq(a, k) && self.ni_leq(b, k))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&k| upper.iter().all(|&k2| self.ni_leq(k, k2)))
    }

    pub fn join_irreducible(&self, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n).filter(|&x| self.covered_by(x, j)).collect();
        match lower[..] {
            [x] => Some(x),
            _ => None,
        }
    }

    pub fn meet_irreducible(&self, m: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n).filter(|&x| self.covered_by(m, x)).collect();
        match upper[..] {
            [x] => Some(x),
            _ => None,
        }
    }

    /// Maximum of `{y : j ∧ y = j_*}`, if it exists.
    pub fn kappa(&self, j: usize) -> Option<usize> {
        let js = self.join_irreducible(j)?;
        let set: Vec<usize> = (0..self.n)
            .filter(|&y| self.glb(&[j, y]) == Some(js))
            .collect();
        set.iter()
            .copied()
            .find(|&y| set.iter().all(|&z| self.leq[z][y]))
    }

    /// Both semidistributive laws, checked over all triples.
    pub fn semidistributive(&self) -> bool {
        let m = |a, b| self.glb(&[a, b]).unwrap();
        let j = |a, b| self.lub(&[a, b]).unwrap();
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if m(x, y) == m(x, z) && m(x, j(y, z)) != m(x, y) {
                        return false;
                    }
                    if j(x, y) == j(x, z) && j(x, m(y, z)) != j(x, y) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn pairs(ivs: &[Interval]) -> Vec<(usize, usize)> {
    ivs.iter().map(|iv| (iv.lo.0, iv.hi.0)).collect()
}

pub fn interval(p: (usize, usize)) -> Interval {
    Interval::new(ElementId(p.0), ElementId(p.1))
}

/// Lattice of the sets in `family` plus the full set, closed under
/// intersection, ordered by inclusion.
pub fn intersection_closure(universe: usize, family: &[u32]) -> FinLattice {
    let full = (1u32 << universe) - 1;
    let mut sets: Vec<u32> = family.iter().map(|s| s & full).collect();
    sets.push(full);
    sets.sort_unstable();
    sets.dedup();
    loop {
        let mut grown = sets.clone();
        for &a in &sets {
            for &b in &sets {
                grown.push(a & b);
            }
        }
        grown.sort_unstable();
        grown.dedup();
        if grown.len() == sets.len() {
            break;
        }
        sets = grown;
    }
    let k = sets.len();
    let mut leq = vec![false; k * k];
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            leq[i * k + j] = a & b == a;
        }
    }
    let labels = sets.iter().map(|s| format!("s{s:x}")).collect();
    FinLattice::from_relation("random", labels, leq)
        .expect("intersection-closed family is a lattice")
}

/// Built-in lattices with at most 30 elements, torsion lattices included.
pub fn corpus() -> Vec<FinLattice> {
    let mut v = vec![fig1().unwrap(), fig2().unwrap(), diamond_m3().unwrap()];
    v.extend((1..=6).map(|n| chain(n).unwrap()));
    v.extend((0..=4).map(|n| boolean(n).unwrap()));
    v.extend((3..=4).map(|n| weak_order(n).unwrap()));
    for (n, word) in [(2, "<"), (3, "<<"), (3, "><"), (3, "<>")] {
        let td = enumerate_tors(&gen_type_a(n, word).unwrap()).unwrap();
        v.push(td.lattice().clone());
    }
    let duals: Vec<FinLattice> = v.iter().map(FinLattice::dual).collect();
    v.extend(duals);
    v.retain(|l| l.len() <= 30);
    v
}
