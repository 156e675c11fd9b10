//! Element arithmetic backends for the group engine.

mod field;
mod matrix;
mod perm;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub(crate) use field::is_prime;
pub use field::{is_irreducible_gf2, least_irreducible_gf2, Field, MAX_FIELD_SIZE};
pub use matrix::Mat;
pub use perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("unsupported field GF({p}^{n})")]
    UnsupportedSize { p: u32, n: u32 },
    #[error("elements live on different carriers")]
    CarrierMismatch,
    #[error("image array is not a bijection")]
    NotABijection,
    #[error("bad cycle notation: {0}")]
    CycleSyntax(String),
    #[error("matrix dimension {0} is not supported (2 or 3)")]
    BadDimension(usize),
    #[error("entry {0} is not a field element")]
    EntryOutOfField(u32),
}

/// The contract the group engine needs from a concrete element type.
pub trait GroupElement: Clone + Eq + Hash + Ord + fmt::Display {
    fn compose(&self, other: &Self) -> Result<Self, AlgebraError>;
    fn inverse(&self) -> Self;
    /// The identity of this element's carrier.
    fn identity_like(&self) -> Self;
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn assoc_and_identity<E: GroupElement + fmt::Debug>(sample: &[E]) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let a = &sample[rng.gen_range(0..sample.len())];
            let b = &sample[rng.gen_range(0..sample.len())];
            let c = &sample[rng.gen_range(0..sample.len())];
            let left = a.compose(&b.compose(c).unwrap()).unwrap();
            let right = a.compose(b).unwrap().compose(c).unwrap();
            assert_eq!(left, right);
            assert_eq!(a.identity_like().compose(a).unwrap(), *a);
            assert_eq!(a.compose(&a.inverse()).unwrap(), a.identity_like());
        }
    }

    #[test]
    fn perm_laws_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sample: Vec<Perm> = (0..40)
            .map(|_| {
                let mut imgs: Vec<u32> = (0..7).collect();
                for i in (1..imgs.len()).rev() {
                    imgs.swap(i, rng.gen_range(0..=i));
                }
                Perm::from_images(imgs).unwrap()
            })
            .collect();
        assoc_and_identity(&sample);
    }

    #[test]
    fn matrix_laws_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, n) in [(2, 2), (3, 1), (2, 4)] {
            let f = Arc::new(Field::new(p, n).unwrap());
            let q = f.size();
            let mut sample = Vec::new();
            while sample.len() < 40 {
                let rows: Vec<Vec<u32>> = (0..3)
                    .map(|_| (0..3).map(|_| rng.gen_range(0..q)).collect())
                    .collect();
                let m = Mat::new(f.clone(), &rows).unwrap();
                if m.is_invertible() {
                    sample.push(m);
                }
            }
            assoc_and_identity(&sample);
        }
    }
}
