//! Multi-modular determinant of the reduced Laplacian with CRT
//! reconstruction.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bignum::BigNat;

/// Primes just below `2^62`, descending. Each is the largest prime below its
/// predecessor, starting from `2^62`. Requests beyond this list continue the
/// same descent with a deterministic Miller–Rabin test.
pub const PRIMES: [u64; 192] = [
    0x3fffffffffffffc7,
    0x3fffffffffffffa9,
    0x3fffffffffffff8b,
    0x3fffffffffffff71,
    0x3fffffffffffff67,
    0x3fffffffffffff59,
    0x3fffffffffffff55,
    0x3fffffffffffff3d,
    0x3fffffffffffff35,
    0x3ffffffffffffeef,
    0x3ffffffffffffee1,
    0x3ffffffffffffec3,
    0x3ffffffffffffe45,
    0x3ffffffffffffe1d,
    0x3ffffffffffffe11,
    0x3ffffffffffffdc1,
    0x3ffffffffffffdbb,
    0x3ffffffffffffda5,
    0x3ffffffffffffd87,
    0x3ffffffffffffd69,
    0x3ffffffffffffd03,
    0x3ffffffffffffcfb,
    0x3ffffffffffffcf7,
    0x3ffffffffffffce9,
    0x3ffffffffffffcd3,
    0x3ffffffffffffcc1,
    0x3ffffffffffffc65,
    0x3ffffffffffffc2b,
    0x3ffffffffffffc1f,
    0x3ffffffffffffc17,
    0x3ffffffffffffc11,
    0x3ffffffffffffc07,
    0x3ffffffffffffb53,
    0x3ffffffffffffb27,
    0x3ffffffffffffaf3,
    0x3ffffffffffffab7,
    0x3ffffffffffffa67,
    0x3ffffffffffffa15,
    0x3ffffffffffff9ef,
    0x3ffffffffffff9d9,
    0x3ffffffffffff9d3,
    0x3ffffffffffff9c5,
    0x3ffffffffffff9af,
    0x3ffffffffffff977,
    0x3ffffffffffff95f,
    0x3ffffffffffff95b,
    0x3ffffffffffff959,
    0x3ffffffffffff8e1,
    0x3ffffffffffff8a7,
    0x3ffffffffffff889,
    0x3ffffffffffff87d,
    0x3ffffffffffff805,
    0x3ffffffffffff7e7,
    0x3ffffffffffff7c9,
    0x3ffffffffffff7a3,
    0x3ffffffffffff775,
    0x3ffffffffffff757,
    0x3ffffffffffff739,
    0x3ffffffffffff713,
    0x3ffffffffffff6d1,
    0x3ffffffffffff6c1,
    0x3ffffffffffff6b9,
    0x3ffffffffffff6a3,
    0x3ffffffffffff68b,
    0x3ffffffffffff631,
    0x3ffffffffffff613,
    0x3ffffffffffff5e9,
    0x3ffffffffffff59b,
    0x3ffffffffffff58d,
    0x3ffffffffffff53f,
    0x3ffffffffffff527,
    0x3ffffffffffff517,
    0x3ffffffffffff4d3,
    0x3ffffffffffff4b5,
    0x3ffffffffffff491,
    0x3ffffffffffff431,
    0x3ffffffffffff41f,
    0x3ffffffffffff36b,
    0x3ffffffffffff34d,
    0x3ffffffffffff349,
    0x3ffffffffffff347,
    0x3ffffffffffff341,
    0x3ffffffffffff30b,
    0x3ffffffffffff2cf,
    0x3ffffffffffff23f,
    0x3ffffffffffff22f,
    0x3ffffffffffff227,
    0x3ffffffffffff221,
    0x3ffffffffffff215,
    0x3ffffffffffff1a9,
    0x3ffffffffffff187,
    0x3ffffffffffff149,
    0x3ffffffffffff12b,
    0x3ffffffffffff125,
    0x3ffffffffffff0df,
    0x3ffffffffffff0a3,
    0x3fffffffffffefbd,
    0x3fffffffffffef69,
    0x3fffffffffffef4d,
    0x3fffffffffffef33,
    0x3fffffffffffeee7,
    0x3fffffffffffeecd,
    0x3fffffffffffee7b,
    0x3fffffffffffee33,
    0x3fffffffffffee0d,
    0x3fffffffffffeddf,
    0x3fffffffffffedcb,
    0x3fffffffffffed9d,
    0x3fffffffffffed53,
    0x3fffffffffffed31,
    0x3fffffffffffed2b,
    0x3fffffffffffed07,
    0x3fffffffffffecef,
    0x3fffffffffffeccb,
    0x3fffffffffffecb3,
    0x3fffffffffffec95,
    0x3fffffffffffec81,
    0x3fffffffffffec7b,
    0x3fffffffffffec75,
    0x3fffffffffffec41,
    0x3fffffffffffec11,
    0x3fffffffffffebf3,
    0x3fffffffffffebdf,
    0x3fffffffffffeb6f,
    0x3fffffffffffeb15,
    0x3fffffffffffeaef,
    0x3fffffffffffeabb,
    0x3fffffffffffeaa7,
    0x3fffffffffffea9d,
    0x3fffffffffffea95,
    0x3fffffffffffea55,
    0x3fffffffffffea3d,
    0x3fffffffffffe9fb,
    0x3fffffffffffe9f3,
    0x3fffffffffffe9c3,
    0x3fffffffffffe975,
    0x3fffffffffffe953,
    0x3fffffffffffe947,
    0x3fffffffffffe905,
    0x3fffffffffffe903,
    0x3fffffffffffe8e5,
    0x3fffffffffffe8d9,
    0x3fffffffffffe8c9,
    0x3fffffffffffe899,
    0x3fffffffffffe875,
    0x3fffffffffffe86d,
    0x3fffffffffffe857,
    0x3fffffffffffe851,
    0x3fffffffffffe843,
    0x3fffffffffffe815,
    0x3fffffffffffe809,
    0x3fffffffffffe7fd,
    0x3fffffffffffe7af,
    0x3fffffffffffe7a3,
    0x3fffffffffffe77f,
    0x3fffffffffffe777,
    0x3fffffffffffe74d,
    0x3fffffffffffe749,
    0x3fffffffffffe743,
    0x3fffffffffffe6f5,
    0x3fffffffffffe6e7,
    0x3fffffffffffe683,
    0x3fffffffffffe653,
    0x3fffffffffffe63b,
    0x3fffffffffffe627,
    0x3fffffffffffe61d,
    0x3fffffffffffe5f7,
    0x3fffffffffffe555,
    0x3fffffffffffe507,
    0x3fffffffffffe4a1,
    0x3fffffffffffe47d,
    0x3fffffffffffe461,
    0x3fffffffffffe437,
    0x3fffffffffffe38d,
    0x3fffffffffffe359,
    0x3fffffffffffe335,
    0x3fffffffffffe31d,
    0x3fffffffffffe309,
    0x3fffffffffffe29f,
    0x3fffffffffffe291,
    0x3fffffffffffe28b,
    0x3fffffffffffe285,
    0x3fffffffffffe24f,
    0x3fffffffffffe22b,
    0x3fffffffffffe1e5,
    0x3fffffffffffe1b3,
    0x3fffffffffffe179,
    0x3fffffffffffe173,
    0x3fffffffffffe15f,
    0x3fffffffffffe15b,
    0x3fffffffffffe119,
    0x3fffffffffffe0b1,
];

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `k` primes of the descending sequence.
pub fn primes(k: usize) -> Vec<u64> {
    let mut out: Vec<u64> = PRIMES.iter().copied().take(k).collect();
    let mut c = *PRIMES.last().expect("nonempty");
    while out.len() < k {
        c -= 2;
        if is_prime_u64(c) {
            out.push(c);
        }
    }
    out
}

/// Montgomery arithmetic modulo an odd `p < 2^63`.
#[derive(Clone, Copy)]
struct Mont {
    p: u64,
    /// `-p^{-1} mod 2^64`
    pinv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont {
            p,
            pinv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = self.to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Determinant of a small-entry integer matrix modulo `p`, by Gaussian
/// elimination with first-nonzero pivoting.
pub(crate) fn det_mod(rows: &[Vec<i64>], p: u64) -> u64 {
    let n = rows.len();
    if n == 0 {
        return 1 % p;
    }
    let mt = Mont::new(p);
    let mut a: Vec<u64> = rows
        .iter()
        .flat_map(|r| r.iter().map(|&x| mt.to_mont(x.rem_euclid(p as i64) as u64)))
        .collect();
    let mut det = mt.to_mont(1);
    let mut negate = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                a.swap(piv * n + j, k * n + j);
            }
            negate = !negate;
        }
        let pk = a[k * n + k];
        det = mt.mul(det, pk);
        let pinv = mt.inv(pk);
        let (head, tail) = a.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n..];
        for row in tail.chunks_exact_mut(n) {
            if row[k] == 0 {
                continue;
            }
            let f = mt.mul(row[k], pinv);
            for j in k..n {
                row[j] = mt.sub(row[j], mt.mul(f, pivot_row[j]));
            }
        }
    }
    let d = mt.from_mont(det);
    if negate && d != 0 {
        p - d
    } else {
        d
    }
}

/// Smallest nonnegative `x` with `x ≡ r_i (mod p_i)` for all `i`, by an
/// incremental (Garner-style) fold.
pub(crate) fn crt(residues: &[(u64, u64)]) -> BigNat {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::from(1u32);
    for &(r, p) in residues {
        let pm = Mont::new(p);
        let x_mod = (&x % p).to_u64().expect("fits");
        let m_mod = (&modulus % p).to_u64().expect("fits");
        let diff = pm.sub(pm.to_mont(r), pm.to_mont(x_mod));
        let coef = pm.from_mont(pm.mul(diff, pm.inv(pm.to_mont(m_mod))));
        x += &modulus * coef;
        modulus *= p;
    }
    x
}

/// Determinant modulo each prime (in parallel), then CRT.
pub(crate) fn det_crt(rows: &[Vec<i64>], primes: &[u64]) -> BigNat {
    let residues: Vec<(u64, u64)> = primes.par_iter().map(|&p| (det_mod(rows, p), p)).collect();
    crt(&residues)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hardcoded_primes_are_the_descending_sequence() {
        let mut c = 1u64 << 62;
        for &p in PRIMES.iter() {
            c -= 1;
            while !is_prime_u64(c) {
                c -= 1;
            }
            assert_eq!(p, c);
        }
        let more = primes(PRIMES.len() + 3);
        assert_eq!(more.len(), PRIMES.len() + 3);
        assert!(more.windows(2).all(|w| w[0] > w[1]));
        assert!(more.iter().all(|&p| is_prime_u64(p)));
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0u64..5000 {
            let slow = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), slow, "{n}");
        }
        assert!(!is_prime_u64(3215031751));
        assert!(is_prime_u64((1 << 61) - 1));
    }

    #[test]
    fn montgomery_matches_u128() {
        let p = PRIMES[0];
        let mt = Mont::new(p);
        let samples = [0u64, 1, 2, p - 1, p / 3, 0x1234_5678_9abc_def0 % p];
        for &a in &samples {
            for &b in &samples {
                let want = ((a as u128 * b as u128) % p as u128) as u64;
                assert_eq!(mt.from_mont(mt.mul(mt.to_mont(a), mt.to_mont(b))), want);
            }
            if a != 0 {
                let ia = mt.from_mont(mt.inv(mt.to_mont(a)));
                assert_eq!((a as u128 * ia as u128) % p as u128, 1);
            }
        }
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det_mod(&m, 7), 4);
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(det_mod(&swap, 11), 10);
        assert_eq!(det_crt(&m, &primes(2)), BigNat::from(4u32));
    }

    #[test]
    fn crt_reconstructs_beyond_one_prime() {
        let ps = primes(3);
        let x = BigNat::from(ps[0]) * BigNat::from(ps[1]) * 12345u32 + 678u32;
        let residues: Vec<(u64, u64)> = ps
            .iter()
            .map(|&p| ((&x % p).to_u64().unwrap(), p))
            .collect();
        assert_eq!(crt(&residues), x);
    }
}
