//! Built-in lattice corpus.

use std::str::FromStr;

use crate::lattice::{FinLattice, LatticeError};

/// Named lattice families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Fig1,
    Fig2,
    Chain,
    Boolean,
    WeakOrder,
    DiamondM3,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Fig1,
        Family::Fig2,
        Family::Chain,
        Family::Boolean,
        Family::WeakOrder,
        Family::DiamondM3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fig1 => "fig1",
            Family::Fig2 => "fig2",
            Family::Chain => "chain",
            Family::Boolean => "boolean",
            Family::WeakOrder => "weak_order",
            Family::DiamondM3 => "diamond_M3",
        }
    }

    pub fn takes_n(self) -> bool {
        matches!(self, Family::Chain | Family::Boolean | Family::WeakOrder)
    }
}

impl FromStr for Family {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .or(match s {
                "m3" | "M3" | "diamond" => Some(Family::DiamondM3),
                "weak" => Some(Family::WeakOrder),
                _ => None,
            })
            .ok_or_else(|| LatticeError::UnknownFamily(s.to_string()))
    }
}

/// Generates a named lattice. `n` is required for the parametric families.
pub fn generate(family: Family, n: Option<usize>) -> Result<FinLattice, LatticeError> {
    let need = |lo: usize, hi: usize| -> Result<usize, LatticeError> {
        let n = n.ok_or_else(|| {
            LatticeError::BadParams(format!("family `{}` needs n", family.name()))
        })?;
        if n < lo || n > hi {
            return Err(LatticeError::BadParams(format!(
                "family `{}` needs {lo} <= n <= {hi}, got {n}",
                family.name()
            )));
        }
        Ok(n)
    };
    match family {
        Family::Fig1 => fig1(),
        Family::Fig2 => fig2(),
        Family::DiamondM3 => diamond_m3(),
        Family::Chain => chain(need(1, 64)?),
        Family::Boolean => boolean(need(0, 6)?),
        Family::WeakOrder => weak_order(need(1, 5)?),
    }
}

/// Seven-element lattice with a nuclear but not conuclear interval `[bot, top]`.
pub fn fig1() -> Result<FinLattice, LatticeError> {
    FinLattice::build(
        "fig1",
        &["bot", "w", "v", "x", "y", "z", "top"],
        &[
            ("bot", "w"),
            ("bot", "v"),
            ("w", "x"),
            ("w", "y"),
            ("v", "y"),
            ("v", "z"),
            ("x", "top"),
            ("y", "top"),
            ("z", "top"),
        ],
    )
}

/// Twelve-element lattice whose binuclear interval order is not a lattice.
pub fn fig2() -> Result<FinLattice, LatticeError> {
    FinLattice::build(
        "fig2",
        &[
            "bot", "i", "j", "g", "h", "f", "d", "e", "c", "a", "b", "top",
        ],
        &[
            ("bot", "i"),
            ("bot", "j"),
            ("i", "g"),
            ("i", "h"),
            ("g", "f"),
            ("h", "f"),
            ("g", "d"),
            ("h", "e"),
            ("f", "c"),
            ("j", "c"),
            ("c", "a"),
            ("c", "b"),
            ("d", "a"),
            ("e", "b"),
            ("a", "top"),
            ("b", "top"),
        ],
    )
}

pub fn diamond_m3() -> Result<FinLattice, LatticeError> {
    FinLattice::build(
        "diamond_M3",
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
}

/// Chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<FinLattice, LatticeError> {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = (1..n)
        .map(|i| ((i - 1).to_string(), i.to_string()))
        .collect();
    FinLattice::build_owned(format!("chain{n}"), labels, &covers)
}

/// Subsets of `{1..n}` under inclusion, labelled like `{1,3}`.
pub fn boolean(n: usize) -> Result<FinLattice, LatticeError> {
    let label = |mask: usize| {
        let parts: Vec<String> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i + 1).to_string())
            .collect();
        format!("{{{}}}", parts.join(","))
    };
    let labels: Vec<String> = (0..1usize << n).map(label).collect();
    let mut covers = Vec::new();
    for mask in 0..1usize << n {
        for i in 0..n {
            if mask >> i & 1 == 0 {
                covers.push((label(mask), label(mask | 1 << i)));
            }
        }
    }
    FinLattice::build_owned(format!("boolean{n}"), labels, &covers)
}

/// Inversion set of a permutation in one-line notation: value pairs
/// `(a, b)` with `a < b` where `b` appears before `a`.
pub fn inversions(perm: &[usize]) -> Vec<(usize, usize)> {
    let mut inv = Vec::new();
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv.push((perm[j], perm[i]));
            }
        }
    }
    inv.sort_unstable();
    inv
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Weak order on permutations of `{1..n}`: order is inversion-set
/// inclusion, covers swap an adjacent ascent. Labels are one-line words.
pub fn weak_order(n: usize) -> Result<FinLattice, LatticeError> {
    let perms = permutations(n);
    let word = |p: &[usize]| p.iter().map(|v| v.to_string()).collect::<String>();
    let labels: Vec<String> = perms.iter().map(|p| word(p)).collect();
    let mut covers = Vec::new();
    for p in &perms {
        for i in 0..n.saturating_sub(1) {
            if p[i] < p[i + 1] {
                let mut q = p.clone();
                q.swap(i, i + 1);
                covers.push((word(p), word(&q)));
            }
        }
    }
    FinLattice::build_owned(format!("weak_order{n}"), labels, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!(
            "pentagon".parse::<Family>(),
            Err(LatticeError::UnknownFamily(_))
        ));
    }

    #[test]
    fn sizes() {
        assert_eq!(fig1().unwrap().len(), 7);
        assert_eq!(fig2().unwrap().len(), 12);
        assert_eq!(fig2().unwrap().covers().len(), 16);
        assert_eq!(boolean(2).unwrap().len(), 4);
        assert_eq!(chain(1).unwrap().len(), 1);
        assert_eq!(weak_order(4).unwrap().len(), 24);
    }

    #[test]
    fn weak_order_3_shape() {
        let l = weak_order(3).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.covers().len(), 6);
        assert_eq!(l.label(l.bottom()), "123");
        assert_eq!(l.label(l.top()), "321");
    }

    #[test]
    fn weak_order_matches_inversion_inclusion() {
        for n in 1..=4 {
            let l = weak_order(n).unwrap();
            let invs: Vec<Vec<(usize, usize)>> = l
                .elements()
                .map(|x| {
                    let p: Vec<usize> = l
                        .label(x)
                        .chars()
                        .map(|c| c.to_digit(10).unwrap() as usize)
                        .collect();
                    inversions(&p)
                })
                .collect();
            for a in l.elements() {
                for b in l.elements() {
                    let subset = invs[a.0].iter().all(|p| invs[b.0].contains(p));
                    assert_eq!(subset, l.leq(a, b), "n={n}");
                }
            }
        }
    }

    #[test]
    fn bad_params() {
        assert!(matches!(
            generate(Family::Chain, None),
            Err(LatticeError::BadParams(_))
        ));
        assert!(matches!(
            generate(Family::Chain, Some(0)),
            Err(LatticeError::BadParams(_))
        ));
    }
}
