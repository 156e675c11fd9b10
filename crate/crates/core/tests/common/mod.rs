//! Oracles shared by the integration suites. Nothing here calls into the
//! library's determinant or spectrum code.

#![allow(dead_code)]

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use commtree::graph::full_commuting_graph;
use commtree::group::GroupTable;
use commtree::spectra::CliqueExpr;

/// Determinant by Gaussian elimination over the rationals.
pub fn rational_det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Laplacian of an adjacency list of bitsets.
pub fn laplacian(adj: &[FixedBitSet]) -> Vec<Vec<i64>> {
    let n = adj.len();
    (0..n)
        .map(|i| {
            let mut row = vec![0i64; n];
            for j in adj[i].ones() {
                row[j] = -1;
            }
            row[i] = adj[i].count_ones(..) as i64;
            row
        })
        .collect()
}

/// Spanning-tree count: the `(0,0)` cofactor of the Laplacian.
pub fn tree_count(adj: &[FixedBitSet]) -> BigUint {
    let l = laplacian(adj);
    if l.len() <= 1 {
        return BigUint::one();
    }
    let minor: Vec<Vec<i64>> = l[1..].iter().map(|r| r[1..].to_vec()).collect();
    let d = rational_det(&minor);
    assert!(!d.is_negative());
    d.magnitude().clone()
}

/// `det(xI − L)` at an integer point.
pub fn char_poly_at(adj: &[FixedBitSet], x: i64) -> BigInt {
    let mut m = laplacian(adj);
    for (i, row) in m.iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v = -*v;
        }
        row[i] += x;
    }
    rational_det(&m)
}

/// Commuting-graph adjacency straight from the multiplication table.
pub fn commuting_adjacency(g: &GroupTable) -> Vec<FixedBitSet> {
    let n = g.order();
    (0..n)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            for b in 0..n {
                if a != b && g.mul(a, b) == g.mul(b, a) {
                    row.insert(b);
                }
            }
            row
        })
        .collect()
}

pub fn group_tree_count(g: &GroupTable) -> BigUint {
    tree_count(&commuting_adjacency(g))
}

/// `∏ p^e` as an exact integer.
pub fn pp(factors: &[(u32, u32)]) -> BigUint {
    factors
        .iter()
        .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
}

/// Random clique expression on at most `budget` vertices (at least one).
pub fn random_expr<R: Rng>(rng: &mut R, budget: usize) -> CliqueExpr {
    let budget = budget.max(1);
    if budget <= 2 || rng.gen_bool(0.3) {
        let s = rng.gen_range(1..=budget.min(8));
        return if rng.gen_bool(0.6) {
            CliqueExpr::complete(s)
        } else {
            CliqueExpr::empty(s)
        };
    }
    let left_budget = rng.gen_range(1..budget);
    let a = random_expr(rng, left_budget);
    let b = random_expr(rng, budget - a.vertex_count());
    if rng.gen_bool(0.5) {
        CliqueExpr::join(a, b)
    } else {
        CliqueExpr::union(vec![a, b])
    }
}

/// Sanity check that the realized graph of an expression is the one the
/// library's commuting graph would build for a group.
pub fn same_graph(a: &[FixedBitSet], g: &GroupTable) -> bool {
    let c = full_commuting_graph(g);
    a.len() == c.vertex_count() && (0..a.len()).all(|i| a[i] == *c.neighbors(i))
}
