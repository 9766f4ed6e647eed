//! Seeded random polynomials for the property suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mvpoly::{Monomial, MultiPoly};

#[derive(Debug, Clone, Copy)]
pub struct PolySampler {
    pub n: usize,
    pub terms: usize,
    /// Largest exponent of any single variable.
    pub max_exp: u16,
    /// Coefficients are drawn from `[-coef_bound, coef_bound]`.
    pub coef_bound: i64,
}

impl PolySampler {
    pub fn new(n: usize) -> Self {
        Self { n, terms: 6, max_exp: 3, coef_bound: 5 }
    }
}

pub fn random_poly<R: Rng>(rng: &mut R, s: &PolySampler) -> MultiPoly {
    let mut p = MultiPoly::zero(s.n);
    for _ in 0..s.terms {
        let x: Vec<u16> = (0..s.n).map(|_| rng.gen_range(0..=s.max_exp)).collect();
        let y: Vec<u16> = (0..s.n).map(|_| rng.gen_range(0..=s.max_exp)).collect();
        let c = rng.gen_range(-s.coef_bound..=s.coef_bound);
        p.add_term(Monomial::new(&x, &y), BigRational::from_integer(BigInt::from(c)));
    }
    p
}

/// `count` polynomials in `n` variables from a ChaCha stream seeded with `seed`.
pub fn seeded_polys(n: usize, seed: u64, count: usize) -> Vec<MultiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = PolySampler::new(n);
    (0..count).map(|_| random_poly(&mut rng, &s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let s = PolySampler::new(3);
        let a = random_poly(&mut ChaCha8Rng::seed_from_u64(9), &s);
        let b = random_poly(&mut ChaCha8Rng::seed_from_u64(9), &s);
        assert_eq!(a, b);
        assert!(a.terms().all(|(m, _)| m.raw().iter().all(|&e| e <= 3)));
    }
}
