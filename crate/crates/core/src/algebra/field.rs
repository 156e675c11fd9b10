//! Prime fields GF(p) and binary extension fields GF(2^n).
//!
//! Elements are plain `u32` values: residues `0..p` for prime fields and
//! bit-packed polynomial coefficients (bit `i` is the coefficient of `x^i`)
//! for GF(2^n).

use std::fmt;

use super::AlgebraError;

/// Multiplication tables are materialized up to this field size.
const TABLE_LIMIT: u32 = 256;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

#[derive(Clone)]
pub struct Field {
    p: u32,
    n: u32,
    /// Bit-encoded modulus of degree `n`; zero for prime fields.
    modulus: u32,
    q: u32,
    inverses: Vec<u32>,
    mul_table: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#b}", self.modulus))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Carry-less product of two bit polynomials.
fn clmul(a: u32, b: u32) -> u64 {
    let (a, mut b) = (a as u64, b as u64);
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn degree(poly: u64) -> i32 {
    63 - poly.leading_zeros() as i32
}

/// Remainder of bit polynomial `a` modulo nonzero `m`.
fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree at most `deg / 2`.
pub fn is_irreducible_gf2(poly: u32) -> bool {
    let deg = degree(poly as u64);
    if deg < 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(poly as u64, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least (smallest encoding) irreducible polynomial of
/// degree `n` over GF(2).
pub fn least_irreducible_gf2(n: u32) -> u32 {
    ((1u32 << n)..(1u32 << (n + 1)))
        .find(|&f| is_irreducible_gf2(f))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds GF(p^n). Extension fields are only supported in characteristic 2.
    pub fn new(p: u32, n: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NonPrimeCharacteristic(p));
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| n >= 1 && q <= MAX_FIELD_SIZE as u64);
        let q = match q {
            Some(q) if n == 1 || p == 2 => q as u32,
            _ => return Err(AlgebraError::UnsupportedSize { p, n }),
        };
        let modulus = if n > 1 { least_irreducible_gf2(n) } else { 0 };
        let mut field = Field {
            p,
            n,
            modulus,
            q,
            inverses: Vec::new(),
            mul_table: None,
        };
        if q <= TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.mul_slow(a, b) as u16;
                }
            }
            field.mul_table = Some(table);
        }
        let mut inverses = vec![0u32; q as usize];
        for a in 1..q {
            inverses[a as usize] = field.pow(a, (q - 2) as u64);
        }
        field.inverses = inverses;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Bit-encoded modulus polynomial; `None` for prime fields.
    pub fn modulus(&self) -> Option<u32> {
        (self.n > 1).then_some(self.modulus)
    }

    fn key(&self) -> (u32, u32, u32) {
        (self.p, self.n, self.modulus)
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else {
            (a + b) % self.p
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            a
        } else {
            (self.p - a) % self.p
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            poly_rem(clmul(a, b), self.modulus as u64) as u32
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize] as u32,
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inverses[a as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> u32 {
        assert!(a != 0 && a < self.q);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The smallest-encoded generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        (2..self.q)
            .find(|&a| self.order_of(a) == self.q - 1)
            .expect("multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_and_gf3() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.size(), 2);
        assert_eq!(f2.modulus(), None);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.neg(1), 2);
    }

    #[test]
    fn gf4_modulus_is_the_unique_irreducible_quadratic() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), Some(0b111));
        // x * x = x + 1
        assert_eq!(f4.mul(0b10, 0b10), 0b11);
    }

    #[test]
    fn deterministic_moduli() {
        assert_eq!(least_irreducible_gf2(3), 0b1011);
        assert_eq!(least_irreducible_gf2(4), 0b10011);
        assert_eq!(least_irreducible_gf2(8), 0b1_0001_1011);
        assert!(!is_irreducible_gf2(0b101));
        assert!(!is_irreducible_gf2(0b10101)); // (x^2+x+1)^2
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Field::new(4, 1).unwrap_err(),
            AlgebraError::NonPrimeCharacteristic(4)
        );
        assert_eq!(
            Field::new(3, 2).unwrap_err(),
            AlgebraError::UnsupportedSize { p: 3, n: 2 }
        );
        assert_eq!(
            Field::new(2, 17).unwrap_err(),
            AlgebraError::UnsupportedSize { p: 2, n: 17 }
        );
        assert!(Field::new(2, 16).is_ok());
        assert!(Field::new(251, 1).is_ok());
    }

    fn check_axioms(f: &Field) {
        let q = f.size();
        for a in 0..q {
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{f} inverse of {a}");
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..q {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, b), f.add(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, n) in [
            (2, 1),
            (3, 1),
            (5, 1),
            (7, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (2, 5),
            (13, 1),
            (31, 1),
        ] {
            check_axioms(&Field::new(p, n).unwrap());
        }
    }

    #[test]
    fn field_axioms_exhaustive_256() {
        check_axioms(&Field::new(2, 8).unwrap());
        check_axioms(&Field::new(251, 1).unwrap());
    }

    #[test]
    fn large_field_inverses() {
        let f = Field::new(2, 16).unwrap();
        for a in (1..f.size()).step_by(97) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::new(7, 1).unwrap().primitive_element(), 3);
        let f8 = Field::new(2, 3).unwrap();
        assert_eq!(f8.order_of(f8.primitive_element()), 7);
    }
}
