//! Fraction-free (Bareiss) determinant over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact determinant. Every division is exact; the pivot is the first
/// nonzero entry of the column in row order.
pub(crate) fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut sign = false;
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap(piv, k);
            sign = !sign;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = &row[j] * &pivot_row[k];
                if !lead.is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}
