//! Arbitrary-precision naturals and prime-power factorizations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serializer;

/// Every tree number is a `BigNat`.
pub type BigNat = BigUint;

/// Serializes a big natural as a decimal string.
pub fn serialize_decimal<S: Serializer>(v: &BigNat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

/// A product of prime powers with exact `u64` exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    powers: BTreeMap<u64, u64>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factors `n ≥ 1` by trial division.
    pub fn of(mut n: u64) -> Self {
        assert!(n >= 1, "cannot factor zero");
        let mut powers = BTreeMap::new();
        let mut d = 2u64;
        while d * d <= n {
            while n % d == 0 {
                *powers.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            *powers.entry(n).or_insert(0) += 1;
        }
        Factorization { powers }
    }

    /// `base^exp` with `base` factored by trial division.
    pub fn power_of(base: u64, exp: u64) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Self::of(base).pow(exp)
    }

    pub fn pow(mut self, exp: u64) -> Self {
        if exp == 0 {
            return Self::one();
        }
        for e in self.powers.values_mut() {
            *e *= exp;
        }
        self
    }

    pub fn exponent(&self, p: u64) -> u64 {
        self.powers.get(&p).copied().unwrap_or(0)
    }

    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.powers.iter().map(|(&p, &e)| (p, e)).collect()
    }

    pub fn value(&self) -> BigNat {
        self.powers.iter().fold(BigNat::one(), |acc, (&p, &e)| {
            acc * BigNat::from(p).pow(u32::try_from(e).expect("exponent fits in u32"))
        })
    }
}

impl Mul for Factorization {
    type Output = Factorization;

    fn mul(mut self, rhs: Factorization) -> Factorization {
        for (p, e) in rhs.powers {
            *self.powers.entry(p).or_insert(0) += e;
        }
        self
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "1");
        }
        let terms: Vec<String> = self
            .powers
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", terms.join("·"))
    }
}
