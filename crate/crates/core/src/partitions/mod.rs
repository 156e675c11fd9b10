//! Partitions `G = A ⊎ A_1 ⊎ … ⊎ A_n` into an abelian subgroup `A` and
//! `n ≥ 2` commuting blocks of size at least two.

mod classify;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{center, profile, GroupError, GroupTable, Subgroup};

pub use classify::{
    classify_2_abelian, classify_3_abelian, frobenius_empty_complement, FrobeniusWitness,
    ThreeAbelianCase, ThreeAbelianWitness, TwoAbelianWitness,
};
pub use search::{find_partition, find_partition_with_n, SearchMode, EXACT_SEARCH_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("group of order {order} exceeds the exact search cap {cap}")]
    ExactCapExceeded { order: usize, cap: usize },
    #[error("center has order {0}; at least 2 is required")]
    CenterTooSmall(usize),
    #[error("center has index {0}; at least 4 is required")]
    IndexTooSmall(usize),
    #[error("group is abelian")]
    AbelianInput,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A claimed partition; `verified` is set only by [`verify_partition`] or by
/// constructions that check themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub n: usize,
    #[serde(default)]
    pub verified: bool,
}

/// The first failed clause of the definition, in checking order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    #[error("n = {n} but {blocks} blocks are listed")]
    CountMismatch { n: usize, blocks: usize },
    #[error("element {element} is not in the group")]
    OutOfRange { element: usize },
    #[error("element {element} appears twice")]
    Overlap { element: usize },
    #[error("element {element} is not covered")]
    NotCovered { element: usize },
    #[error("A is not a subgroup")]
    ANotSubgroup,
    #[error("A is not abelian")]
    ANotAbelian,
    #[error("block {block}: {x} and {y} do not commute")]
    BlockNotCommuting { block: usize, x: usize, y: usize },
    #[error("block {block} has {size} element(s)")]
    BlockTooSmall { block: usize, size: usize },
    #[error("n = {n} is below 2")]
    TooFewBlocks { n: usize },
}

impl PartitionCertificate {
    /// Canonical form: every set sorted, blocks ordered by least element.
    pub fn new(mut a: Vec<usize>, mut blocks: Vec<Vec<usize>>) -> Self {
        a.sort_unstable();
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let n = blocks.len();
        PartitionCertificate {
            a,
            blocks,
            n,
            verified: false,
        }
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    /// Verifies against `g` and records the outcome.
    pub fn verified_in(mut self, g: &GroupTable) -> Result<Self, Violation> {
        verify_partition(g, &self)?;
        self.verified = true;
        Ok(self)
    }
}

pub fn verify_partition(g: &GroupTable, cert: &PartitionCertificate) -> Result<(), Violation> {
    if cert.n != cert.blocks.len() {
        return Err(Violation::CountMismatch {
            n: cert.n,
            blocks: cert.blocks.len(),
        });
    }
    let mut seen = vec![false; g.order()];
    for &x in cert.a.iter().chain(cert.blocks.iter().flatten()) {
        if x >= g.order() {
            return Err(Violation::OutOfRange { element: x });
        }
        if seen[x] {
            return Err(Violation::Overlap { element: x });
        }
        seen[x] = true;
    }
    if let Some(element) = seen.iter().position(|&s| !s) {
        return Err(Violation::NotCovered { element });
    }
    let a = Subgroup::from_elements(g, cert.a.clone()).map_err(|_| Violation::ANotSubgroup)?;
    if !a.is_abelian() {
        return Err(Violation::ANotAbelian);
    }
    for (i, block) in cert.blocks.iter().enumerate() {
        for (j, &x) in block.iter().enumerate() {
            if let Some(&y) = block[j + 1..].iter().find(|&&y| !g.commute(x, y)) {
                return Err(Violation::BlockNotCommuting { block: i, x, y });
            }
        }
    }
    for (i, block) in cert.blocks.iter().enumerate() {
        if block.len() < 2 {
            return Err(Violation::BlockTooSmall {
                block: i,
                size: block.len(),
            });
        }
    }
    if cert.n < 2 {
        return Err(Violation::TooFewBlocks { n: cert.n });
    }
    Ok(())
}

/// Cosets of `N` other than `N` itself, each sorted, ordered by least element.
pub(crate) fn nontrivial_cosets(g: &GroupTable, n: &Subgroup) -> Vec<Vec<usize>> {
    let mut done = vec![false; g.order()];
    for &z in n.elements() {
        done[z] = true;
    }
    let mut out = Vec::new();
    for x in g.elements() {
        if done[x] {
            continue;
        }
        let mut coset: Vec<usize> = n.elements().iter().map(|&z| g.mul(z, x)).collect();
        coset.sort_unstable();
        for &y in &coset {
            done[y] = true;
        }
        out.push(coset);
    }
    out
}

/// `A = Z(G)` with the nontrivial cosets of the center as blocks.
pub fn coset_partition(g: &GroupTable) -> Result<PartitionCertificate, PartitionError> {
    let z = center(g);
    if z.order() < 2 {
        return Err(PartitionError::CenterTooSmall(z.order()));
    }
    let index = g.order() / z.order();
    if index < 4 {
        return Err(PartitionError::IndexTooSmall(index));
    }
    let cert = PartitionCertificate::new(z.elements().to_vec(), nontrivial_cosets(g, &z));
    Ok(cert.verified_in(g).expect("center cosets form a partition"))
}

/// `⌊|G| / k(G)⌋ − 1`, from `|G| ≤ nc(G)·k(G) ≤ (n+1)·k(G)`.
pub fn lower_bound_blocks(g: &GroupTable) -> usize {
    (g.order() / profile(g).class_count()).saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_family, Family};

    fn q8() -> GroupTable {
        make_family(&Family::Quaternion { k: 2 }).unwrap()
    }

    #[test]
    fn q8_coset_partition() {
        let g = q8();
        let cert = coset_partition(&g).unwrap();
        assert_eq!(cert.n, 3);
        assert_eq!(cert.block_sizes(), vec![2, 2, 2]);
        assert!(cert.verified);
        let json = cert.to_json();
        assert_eq!(json["n"], 3);
        assert_eq!(json["A"].as_array().unwrap().len(), 2);
        let back: PartitionCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn coset_partition_preconditions() {
        let s3 = make_family(&Family::Symmetric { d: 3 }).unwrap();
        assert_eq!(coset_partition(&s3), Err(PartitionError::CenterTooSmall(1)));
        let d12 = make_family(&Family::Dihedral { k: 6 }).unwrap();
        assert_eq!(coset_partition(&d12).unwrap().n, 5);
    }

    #[test]
    fn violations_in_order() {
        let g = q8();
        let good = coset_partition(&g).unwrap();
        let mut c = good.clone();
        c.n = 4;
        assert!(matches!(
            verify_partition(&g, &c),
            Err(Violation::CountMismatch { .. })
        ));
        let mut c = good.clone();
        let dup = c.blocks[1][0];
        c.blocks[0].push(dup);
        assert!(matches!(
            verify_partition(&g, &c),
            Err(Violation::Overlap { .. })
        ));
        let mut c = good.clone();
        c.blocks.pop();
        c.n = 2;
        assert!(matches!(
            verify_partition(&g, &c),
            Err(Violation::NotCovered { .. })
        ));
        // A = {1}, one block holding everything else
        let mut c = good.clone();
        c.a = vec![0];
        c.blocks = vec![(1..8).collect(), vec![]];
        c.n = 2;
        assert!(matches!(
            verify_partition(&g, &c),
            Err(Violation::BlockNotCommuting { block: 0, .. })
        ));
    }

    #[test]
    fn bound_on_a5() {
        let a5 = make_family(&Family::Alternating { d: 5 }).unwrap();
        assert_eq!(lower_bound_blocks(&a5), 11);
    }
}
