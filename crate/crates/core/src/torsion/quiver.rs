//! Path algebras of type A quivers.
//!
//! Indecomposables are the interval modules `M[a,b]`, one-dimensional at
//! vertices `a..=b` with identity maps along the arrows inside the support.
//! Morphism and extension dimensions are computed by linear algebra on
//! representations over a large prime field; the AR translate is found from
//! `Ext(X, Z) ≅ D Hom(Z, τX)`, and modules are identified by their vectors
//! of `dim Hom(M, -)` over all indecomposables `M`.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Zero;

use super::algebra::{AlgebraError, AlgebraSpec, Indecomposable, Ses, Subcat};
use crate::linalg::{fp, rank_mod_p, solve_rational};

/// A quiver on vertices `0..n` given by its arrows `(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Type A quiver from an orientation word over `<` and `>` of length
    /// `n - 1`. Position `k` describes the arrow between vertices `k+1` and
    /// `k+2` (1-based): `<` means `k+1 ← k+2`, `>` means `k+1 → k+2`.
    pub fn type_a(n: usize, orientation: &str) -> Result<Quiver, AlgebraError> {
        let chars: Vec<char> = orientation.chars().collect();
        if chars.len() + 1 != n || chars.iter().any(|c| !matches!(c, '<' | '>')) {
            return Err(AlgebraError::BadOrientation(
                orientation.to_string(),
                n.saturating_sub(1),
            ));
        }
        let arrows = chars
            .iter()
            .enumerate()
            .map(|(k, &c)| if c == '<' { (k + 1, k) } else { (k, k + 1) })
            .collect();
        Ok(Quiver { n, arrows })
    }
}

/// A representation: a vector space per vertex and a matrix per arrow
/// (rows indexed by the target space).
#[derive(Clone, Debug)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<u64>>>,
}

impl Rep {
    /// Thin module supported on the vertex set `support`, identity maps on
    /// arrows inside it.
    pub fn thin(q: &Quiver, support: &[bool]) -> Rep {
        let dims: Vec<usize> = support.iter().map(|&b| usize::from(b)).collect();
        let maps = q
            .arrows
            .iter()
            .map(|&(s, t)| {
                let mut m = vec![vec![0; dims[s]]; dims[t]];
                if support[s] && support[t] {
                    m[0][0] = 1;
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The map `δ(f)_α = X_α f_s − f_t Z_α` from `⊕ Hom_k(Z_i, X_i)` to
/// `⊕ Hom_k(Z_s(α), X_t(α))`, as a row-major matrix. Its kernel is
/// `Hom(Z, X)` and its cokernel is `Ext¹(Z, X)`.
fn delta(q: &Quiver, z: &Rep, x: &Rep) -> (Vec<Vec<u64>>, usize, usize) {
    let mut var_off = vec![0; q.n + 1];
    for i in 0..q.n {
        var_off[i + 1] = var_off[i] + x.dims[i] * z.dims[i];
    }
    let nvars = var_off[q.n];
    let var = |i: usize, r: usize, c: usize| var_off[i] + r * z.dims[i] + c;
    let mut rows = Vec::new();
    for (a, &(s, t)) in q.arrows.iter().enumerate() {
        for r in 0..x.dims[t] {
            for c in 0..z.dims[s] {
                let mut row = vec![0u64; nvars];
                for k in 0..x.dims[s] {
                    let v = x.maps[a][r][k];
                    if v != 0 {
                        let idx = var(s, k, c);
                        row[idx] = (row[idx] + v) % crate::linalg::P;
                    }
                }
                for k in 0..z.dims[t] {
                    let v = z.maps[a][k][c];
                    if v != 0 {
                        let idx = var(t, r, k);
                        row[idx] = (row[idx] + fp(-(v as i64))) % crate::linalg::P;
                    }
                }
                rows.push(row);
            }
        }
    }
    let nrows = rows.len();
    (rows, nvars, nrows)
}

/// `(dim Hom(Z, X), dim Ext¹(Z, X))`.
pub fn hom_ext(q: &Quiver, z: &Rep, x: &Rep) -> (usize, usize) {
    let (rows, nvars, nrows) = delta(q, z, x);
    let rank = rank_mod_p(rows);
    (nvars - rank, nrows - rank)
}

/// Middle term of a non-split extension `0 → X → E → Z → 0`, if one exists.
#[allow(clippy::needless_range_loop)]
pub fn nonsplit_extension(q: &Quiver, z: &Rep, x: &Rep) -> Option<Rep> {
    let (rows, nvars, nrows) = delta(q, z, x);
    let base = rank_mod_p(rows.clone());
    if base == nrows {
        return None;
    }
    // The image of δ is its column space; find a target basis vector
    // outside it.
    let cols: Vec<Vec<u64>> = (0..nvars)
        .map(|v| rows.iter().map(|row| row[v]).collect())
        .collect();
    let pick = (0..nrows).find(|&k| {
        let mut m = cols.clone();
        let mut e = vec![0; nrows];
        e[k] = 1;
        m.push(e);
        rank_mod_p(m) > base
    })?;
    let mut e = Rep {
        dims: (0..q.n).map(|i| x.dims[i] + z.dims[i]).collect(),
        maps: Vec::new(),
    };
    let mut k = 0;
    for (a, &(s, t)) in q.arrows.iter().enumerate() {
        let mut m = vec![vec![0u64; e.dims[s]]; e.dims[t]];
        for r in 0..x.dims[t] {
            for c in 0..x.dims[s] {
                m[r][c] = x.maps[a][r][c];
            }
        }
        for r in 0..z.dims[t] {
            for c in 0..z.dims[s] {
                m[x.dims[t] + r][x.dims[s] + c] = z.maps[a][r][c];
            }
        }
        for r in 0..x.dims[t] {
            for c in 0..z.dims[s] {
                if k == pick {
                    m[r][x.dims[s] + c] = 1;
                }
                k += 1;
            }
        }
        e.maps.push(m);
    }
    Some(e)
}

/// Supports `a..=b` (0-based) of all interval modules, ordered by `(a, b)`.
fn intervals(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
}

fn support(n: usize, a: usize, b: usize) -> Vec<bool> {
    (0..n).map(|i| a <= i && i <= b).collect()
}

/// Maximal runs of consecutive vertices in `mask` (a subset of `a..=b`).
fn runs(mask: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < mask.len() {
        if mask[i] {
            let start = i;
            while i + 1 < mask.len() && mask[i + 1] {
                i += 1;
            }
            out.push((start, i));
        }
        i += 1;
    }
    out
}

/// Path algebra of the linearly oriented quiver `1 ← 2 ← ... ← n`.
pub fn gen_linear_an(n: usize) -> Result<AlgebraSpec, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::BadRank(n));
    }
    gen_type_a(n, &"<".repeat(n - 1))
}

/// Path algebra of a type A quiver; see [`Quiver::type_a`] for the
/// orientation word. Named `A{n}` for the linear orientation and
/// `A{n}({word})` otherwise.
pub fn gen_type_a(n: usize, orientation: &str) -> Result<AlgebraSpec, AlgebraError> {
    if !(1..=6).contains(&n) {
        return Err(AlgebraError::BadRank(n));
    }
    let q = Quiver::type_a(n, orientation)?;
    let supports = intervals(n);
    let m = supports.len();
    let reps: Vec<Rep> = supports
        .iter()
        .map(|&(a, b)| Rep::thin(&q, &support(n, a, b)))
        .collect();
    let index_of = |a: usize, b: usize| supports.iter().position(|&s| s == (a, b)).unwrap();

    let mut hom = vec![vec![0usize; m]; m];
    let mut ext = vec![vec![0usize; m]; m];
    for x in 0..m {
        for y in 0..m {
            let (h, e) = hom_ext(&q, &reps[x], &reps[y]);
            hom[x][y] = h;
            ext[x][y] = e;
        }
    }
    // hom_matrix[j][k] = dim Hom(M_j, M_k)
    let hom_matrix: Vec<Vec<Rational64>> = hom
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| Rational64::from_integer(v as i64))
                .collect()
        })
        .collect();
    let decompose = |profile: Vec<usize>, what: &str| -> Result<Vec<usize>, AlgebraError> {
        let rhs: Vec<Rational64> = profile
            .iter()
            .map(|&v| Rational64::from_integer(v as i64))
            .collect();
        let sol =
            solve_rational(&hom_matrix, &rhs).ok_or_else(|| AlgebraError::InvariantViolation {
                entry: what.to_string(),
                reason: "Hom-dimension matrix is singular".into(),
            })?;
        let mut mult = Vec::new();
        for (k, v) in sol.iter().enumerate() {
            if !v.is_integer() || *v < Rational64::zero() {
                return Err(AlgebraError::InvariantViolation {
                    entry: what.to_string(),
                    reason: "Hom profile is not a nonnegative integer combination".into(),
                });
            }
            for _ in 0..v.to_integer() {
                mult.push(k);
            }
        }
        Ok(mult)
    };
    let name_of = |k: usize| format!("M[{},{}]", supports[k].0 + 1, supports[k].1 + 1);

    let mut indecs = Vec::with_capacity(m);
    for (k, &(a, b)) in supports.iter().enumerate() {
        let projective = (0..m).all(|z| ext[k][z] == 0);
        let tau = if projective {
            None
        } else {
            let profile: Vec<usize> = (0..m).map(|z| ext[k][z]).collect();
            match decompose(profile, &name_of(k))?[..] {
                [t] => Some(t),
                _ => {
                    return Err(AlgebraError::InvariantViolation {
                        entry: name_of(k),
                        reason: "AR translate is not indecomposable".into(),
                    })
                }
            }
        };
        let g: Vec<i64> = (0..n)
            .map(|v| {
                let s = index_of(v, v);
                hom[k][s] as i64 - ext[k][s] as i64
            })
            .collect();

        // Quotients are Y/U for arrow-closed U inside the support.
        let width = b - a + 1;
        let mut quotients = Subcat::EMPTY;
        for mask in 0u32..1 << width {
            let in_u: Vec<bool> = (0..n)
                .map(|i| i >= a && i <= b && mask >> (i - a) & 1 == 1)
                .collect();
            if !arrow_closed(&q, a, b, &in_u) {
                continue;
            }
            let rest: Vec<bool> = (0..n).map(|i| i >= a && i <= b && !in_u[i]).collect();
            if let [(c, d)] = runs(&rest)[..] {
                quotients.insert(index_of(c, d));
            }
        }
        indecs.push(Indecomposable {
            id: name_of(k),
            dim: (0..n).map(|i| u32::from(a <= i && i <= b)).collect(),
            projective,
            end_dim: hom[k][k] as u32,
            g,
            quotients,
            tau,
        });
    }

    let mut ses = BTreeSet::new();
    // Indecomposable middle term: every proper nonzero submodule.
    for (k, &(a, b)) in supports.iter().enumerate() {
        let width = b - a + 1;
        for mask in 1u32..(1 << width) - 1 {
            let in_u: Vec<bool> = (0..n)
                .map(|i| i >= a && i <= b && mask >> (i - a) & 1 == 1)
                .collect();
            if !arrow_closed(&q, a, b, &in_u) {
                continue;
            }
            let rest: Vec<bool> = (0..n).map(|i| i >= a && i <= b && !in_u[i]).collect();
            let mut sub: Vec<usize> = runs(&in_u).iter().map(|&(c, d)| index_of(c, d)).collect();
            let mut quot: Vec<usize> = runs(&rest).iter().map(|&(c, d)| index_of(c, d)).collect();
            sub.sort_unstable();
            quot.sort_unstable();
            ses.insert(Ses {
                sub,
                mid: vec![k],
                quot,
            });
        }
    }
    // Indecomposable end terms: the non-split extension, when it exists.
    for x in 0..m {
        for z in 0..m {
            if ext[z][x] == 0 {
                continue;
            }
            if ext[z][x] > 1 {
                return Err(AlgebraError::InvariantViolation {
                    entry: format!("Ext({}, {})", name_of(z), name_of(x)),
                    reason: "extension space has dimension above one".into(),
                });
            }
            let e = nonsplit_extension(&q, &reps[z], &reps[x]).expect("Ext is nonzero");
            let profile: Vec<usize> = (0..m).map(|j| hom_ext(&q, &reps[j], &e).0).collect();
            let mid = decompose(
                profile,
                &format!("extension of {} by {}", name_of(z), name_of(x)),
            )?;
            ses.insert(Ses {
                sub: vec![x],
                mid,
                quot: vec![z],
            });
        }
    }

    let hom_pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .filter(|&(x, y)| hom[x][y] > 0)
        .collect();
    let name = if orientation.chars().all(|c| c == '<') {
        format!("A{n}")
    } else {
        format!("A{n}({orientation})")
    };
    let spec = AlgebraSpec::new(name, n, indecs, &hom_pairs, ses.into_iter().collect())?;
    check_g_vectors(&spec)?;
    Ok(spec)
}

/// `U` (inside `a..=b`) contains the target of every arrow leaving it
/// within the support.
fn arrow_closed(q: &Quiver, a: usize, b: usize, in_u: &[bool]) -> bool {
    q.arrows.iter().all(|&(s, t)| {
        let inside = (a..=b).contains(&s) && (a..=b).contains(&t);
        !inside || !in_u[s] || in_u[t]
    })
}

/// `Σ g_i · dim P(i) = dim X` for every indecomposable.
fn check_g_vectors(spec: &AlgebraSpec) -> Result<(), AlgebraError> {
    let n = spec.rank();
    let proj: Vec<usize> = (0..n)
        .map(|v| {
            spec.projective_cover(v)
                .ok_or_else(|| AlgebraError::InvariantViolation {
                    entry: format!("vertex {}", v + 1),
                    reason: "no projective cover of the simple".into(),
                })
        })
        .collect::<Result<_, _>>()?;
    for x in spec.indecomposables() {
        let mut total = vec![0i64; n];
        for (v, &p) in proj.iter().enumerate() {
            for (t, &d) in total.iter_mut().zip(&spec.indec(p).dim) {
                *t += x.g[v] * i64::from(d);
            }
        }
        if total.iter().zip(&x.dim).any(|(&a, &b)| a != i64::from(b)) {
            return Err(AlgebraError::InvariantViolation {
                entry: x.id.clone(),
                reason: "g-vector does not recover the dimension vector".into(),
            });
        }
    }
    Ok(())
}
