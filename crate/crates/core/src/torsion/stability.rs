use num_rational::Rational64;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::algebra::{AlgebraSpec, Subcat};
use super::tors::TorsData;
use super::TorsionError;
use crate::binuclear::is_binuclear;
use crate::lattice::Interval;

/// A rational vector paired against dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVector(pub Vec<Rational64>);

impl StabilityVector {
    pub fn from_ints(v: &[i64]) -> Self {
        StabilityVector(v.iter().map(|&x| Rational64::from_integer(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        StabilityVector(vec![Rational64::zero(); n])
    }

    pub fn pair(&self, dim: &[u32]) -> Rational64 {
        self.0
            .iter()
            .zip(dim)
            .map(|(t, &d)| *t * Rational64::from_integer(i64::from(d)))
            .sum()
    }
}

fn check_arity(spec: &AlgebraSpec, theta: &StabilityVector) -> Result<(), TorsionError> {
    if theta.0.len() != spec.rank() {
        return Err(TorsionError::BadTheta {
            expected: spec.rank(),
            got: theta.0.len(),
        });
    }
    Ok(())
}

/// Indecomposables all of whose indecomposable quotients pair positively.
pub fn theta_t(spec: &AlgebraSpec, theta: &StabilityVector) -> Subcat {
    Subcat::from_ids((0..spec.len()).filter(|&x| {
        spec.indec(x)
            .quotients
            .iter()
            .all(|q| theta.pair(&spec.indec(q).dim) > Rational64::zero())
    }))
}

/// Indecomposables all of whose indecomposable quotients pair
/// nonnegatively.
pub fn theta_tbar(spec: &AlgebraSpec, theta: &StabilityVector) -> Subcat {
    Subcat::from_ids((0..spec.len()).filter(|&x| {
        spec.indec(x)
            .quotients
            .iter()
            .all(|q| theta.pair(&spec.indec(q).dim) >= Rational64::zero())
    }))
}

/// The interval `[T_θ, T̄_θ]`, checked to be binuclear.
pub fn tf_interval(td: &TorsData, theta: &StabilityVector) -> Result<Interval, TorsionError> {
    let spec = td.spec();
    check_arity(spec, theta)?;
    let lo = td.element(theta_t(spec, theta))?;
    let hi = td.element(theta_tbar(spec, theta))?;
    let iv = Interval::new(lo, hi);
    if !td.lattice().leq(lo, hi) || !is_binuclear(td.lattice(), iv) {
        return Err(TorsionError::NotBinuclear(td.interval_label(iv)));
    }
    Ok(iv)
}

/// A random rational vector with entries `a / b`, `|a| <= 4`, `1 <= b <= 3`.
/// Small numerators put a fair share of samples on walls and rays.
pub fn random_theta<R: Rng + ?Sized>(rank: usize, rng: &mut R) -> StabilityVector {
    StabilityVector(
        (0..rank)
            .map(|_| Rational64::new(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
            .collect(),
    )
}

/// The sum of the generators of a cone, a point of its relative interior.
pub fn interior_point(rank: usize, generators: &[Vec<i64>]) -> StabilityVector {
    let mut v = vec![0i64; rank];
    for g in generators {
        for (a, b) in v.iter_mut().zip(g) {
            *a += b;
        }
    }
    StabilityVector::from_ints(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{enumerate_tors, gen_linear_an};

    #[test]
    fn a2_fixtures() {
        let spec = gen_linear_an(2).unwrap();
        let td = enumerate_tors(&spec).unwrap();
        let l = td.lattice();
        let s2 = spec.find("M[2,2]").unwrap();
        let p2 = spec.find("M[1,2]").unwrap();
        let t2 = td.element(Subcat::from_ids([p2, s2])).unwrap();

        let origin = tf_interval(&td, &StabilityVector::zero(2)).unwrap();
        assert_eq!(origin, Interval::new(l.bottom(), l.top()));
        // g(P(2)) = (0, 1)
        let ray = tf_interval(&td, &StabilityVector::from_ints(&[0, 1])).unwrap();
        assert_eq!(ray, Interval::new(t2, l.top()));
        let chamber = tf_interval(&td, &StabilityVector::from_ints(&[1, 1])).unwrap();
        assert_eq!(chamber, Interval::point(l.top()));
        let neg = tf_interval(&td, &StabilityVector::from_ints(&[-1, -1])).unwrap();
        assert_eq!(neg, Interval::point(l.bottom()));
    }

    #[test]
    fn cone_interiors_recover_intervals() {
        use crate::torsion::{cone_data, enumerate_presilting};
        for n in 1..=3 {
            let td = enumerate_tors(&gen_linear_an(n).unwrap()).unwrap();
            let e = enumerate_presilting(&td).unwrap();
            for &iv in td.binuc().intervals() {
                let c = cone_data(&td, &e, iv).unwrap();
                let theta = interior_point(n, &c.generators);
                assert_eq!(
                    tf_interval(&td, &theta).unwrap(),
                    iv,
                    "{}",
                    td.interval_label(iv)
                );
            }
        }
    }

    #[test]
    fn random_samples_are_binuclear() {
        use rand::SeedableRng;
        let td = enumerate_tors(&gen_linear_an(3).unwrap()).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            tf_interval(&td, &random_theta(3, &mut rng)).unwrap();
        }
    }

    #[test]
    fn arity_checked() {
        let td = enumerate_tors(&gen_linear_an(2).unwrap()).unwrap();
        assert!(matches!(
            tf_interval(&td, &StabilityVector::from_ints(&[1])),
            Err(TorsionError::BadTheta {
                expected: 2,
                got: 1
            })
        ));
    }
}
