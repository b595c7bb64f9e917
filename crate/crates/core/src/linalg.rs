//! Small dense linear algebra: ranks over a prime field and exact rational
//! elimination.

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Prime modulus used for representation computations.
pub const P: u64 = 1_000_000_007;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

/// Reduces a signed integer into `[0, P)`.
pub fn fp(x: i64) -> u64 {
    x.rem_euclid(P as i64) as u64
}

/// Rank of a row-major matrix over GF(P). The matrix is consumed.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % P;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (v, &p) in row.iter_mut().zip(&pivot) {
                    *v = (*v + P - f * p % P) % P;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of a list of rational vectors.
pub fn rank_rational(vectors: &[Vec<Rational64>]) -> usize {
    let mut rows: Vec<Vec<Rational64>> = vectors.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = Rational64::one() / rows[rank][col];
        for v in rows[rank].iter_mut() {
            *v *= inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col];
                for (v, &p) in row.iter_mut().zip(&pivot) {
                    *v -= f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `a x = b` for square invertible `a`; `None` if singular.
pub fn solve_rational(a: &[Vec<Rational64>], b: &[Rational64]) -> Option<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational64::one() / m[col][col];
        for v in m[col].iter_mut() {
            *v *= inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col];
                for (v, &p) in row.iter_mut().zip(&pivot) {
                    *v -= f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

pub fn int_vec(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&x| Rational64::from_integer(x)).collect()
}
