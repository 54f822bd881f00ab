//! Seeded random draws used wherever a generic choice is needed.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Rational;

/// Seed, coefficient range and retry budget for generic draws.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityConfig {
    pub seed: u64,
    /// Numerators are drawn from `[-bound, bound]`, denominators from `[1, bound]`.
    pub coeff_bound: i64,
    /// Attempts allowed before a degeneracy is reported.
    pub retries: usize,
    /// Number of independent successful draws that must agree.
    pub agreement: usize,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        GenericityConfig {
            seed: 0,
            coeff_bound: 30,
            retries: 8,
            agreement: 2,
        }
    }
}

impl GenericityConfig {
    pub fn new(seed: u64, coeff_bound: i64, retries: usize) -> Result<Self> {
        if retries < 3 {
            return Err(Error::Unsupported("retry count must be at least 3".into()));
        }
        if coeff_bound < 2 {
            return Err(Error::Unsupported(
                "coefficient bound must be at least 2".into(),
            ));
        }
        Ok(GenericityConfig {
            seed,
            coeff_bound,
            retries,
            agreement: 2,
        })
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenericityConfig {
            seed,
            ..self.clone()
        }
    }

    /// Generator for one named task; the stream depends only on the seed and the tag.
    pub fn rng(&self, tag: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(tag.as_bytes()))
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// A random rational `n/d` with `|n| ≤ bound`, `1 ≤ d ≤ bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.random_range(-bound..=bound);
    let d = rng.random_range(1..=bound);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// As [`random_rational`] but never zero.
pub fn random_nonzero<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = random_rational(rng, bound);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// A random small integer in `[-bound, bound]`, as a rational.
pub fn random_integer<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.random_range(-bound..=bound)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let cfg = GenericityConfig::default();
        let a: Vec<Rational> = (0..5)
            .map(|_| random_rational(&mut cfg.rng("t"), 9))
            .collect();
        let b: Vec<Rational> = (0..5)
            .map(|_| random_rational(&mut cfg.rng("t"), 9))
            .collect();
        assert_eq!(a, b);
        let mut r1 = cfg.rng("u");
        let mut r2 = cfg.with_seed(1).rng("u");
        let x: Vec<i64> = (0..8).map(|_| r1.random_range(0..1000)).collect();
        let y: Vec<i64> = (0..8).map(|_| r2.random_range(0..1000)).collect();
        assert_ne!(x, y);
    }

    #[test]
    fn retry_floor() {
        assert!(GenericityConfig::new(0, 10, 2).is_err());
        assert!(GenericityConfig::new(0, 10, 3).is_ok());
    }
}
