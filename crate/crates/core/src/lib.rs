//! Exact spanning-tree counts of commuting graphs of finite groups.
//!
//! The crate builds finite groups as Cayley tables ([`group`]), forms their
//! commuting graphs ([`graph`]), and counts spanning trees with independent
//! exact engines ([`treecount`]): fraction-free elimination, a multi-modular
//! determinant with CRT reconstruction, the centralizer-structure formula for
//! AC-groups, and symbolic Laplacian spectra of clique expressions
//! ([`spectra`]). The [`partitions`] module searches and classifies
//! partitions into an abelian subgroup plus commuting blocks, and
//! [`formulas`] checks closed-form tree counts against the engines.

pub mod algebra;
pub mod bignum;
pub mod formulas;

pub mod graph;
pub mod group;
pub mod partitions;

pub mod spec;
pub mod spectra;
pub mod treecount;

pub use algebra::{Field, GroupElement, Mat, Perm};
pub use bignum::{BigNat, Factorization};
pub use graph::CommGraph;
pub use group::{make_family, profile, Family, GroupProfile, GroupTable, Subgroup};

pub use partitions::PartitionCertificate;
pub use spectra::{CliqueExpr, LapSpectrum};

pub use treecount::{KappaMethod, KappaResult};
