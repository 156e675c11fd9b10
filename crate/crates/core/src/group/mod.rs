//! Finite groups as canonical Cayley tables.
//!
//! A [`GroupTable`] is built by breadth-first closure from the identity over
//! an ordered generator list. Element `0` is always the identity and the
//! remaining elements are numbered in discovery order, so every downstream
//! structure (graphs, partitions, witnesses) is reproducible.

mod families;
mod profile;
mod subgroup;

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, GroupElement, Mat};

pub use families::{catalog, make_family, Family, FamilyParams};
pub use profile::{profile, GroupProfile};
pub use subgroup::{
    center, centralizer, is_ac_group, is_isomorphic_small, is_ti_subgroup, normalizer, quotient,
    subgroup_table, sylow_subgroups, SmallGroup, Subgroup,
};

pub const DEFAULT_ORDER_CAP: usize = 8192;

/// Table entries are stored as `u16`.
pub const MAX_ORDER: usize = 1 << 16;

/// Groups up to this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeds the order cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("generator {index} is invalid: {reason}")]
    InvalidGenerator { index: usize, reason: String },
    #[error("no generators given")]
    NoGenerators,
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("constructed order {got} differs from the expected order {expected}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("isomorphism test only covers groups of order at most 9 (got {0})")]
    TargetTooLarge(usize),
    #[error("{p} does not divide the group order {order}")]
    PDoesNotDivideOrder { p: usize, order: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    name: String,
    order: usize,
    /// Row-major `order × order` multiplication table.
    table: Vec<u16>,
    inverse: Vec<u16>,
    labels: Vec<String>,
    generators: Vec<usize>,
}

impl GroupTable {
    /// Closure of concrete elements (permutations, matrices, ...).
    pub fn generate<E: GroupElement>(
        name: impl Into<String>,
        generators: &[E],
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        for (index, g) in generators.iter().enumerate() {
            g.compose(first).map_err(|e| GroupError::InvalidGenerator {
                index,
                reason: e.to_string(),
            })?;
        }
        generate_with(
            name,
            first.identity_like(),
            generators,
            |a, b| a.compose(b).expect("carriers checked"),
            |e| e.to_string(),
            order_cap,
        )
    }

    /// Like [`GroupTable::generate`], rejecting singular matrices up front.
    pub fn generate_matrices(
        name: impl Into<String>,
        generators: &[Mat],
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        if let Some(index) = generators.iter().position(|m| !m.is_invertible()) {
            return Err(GroupError::InvalidGenerator {
                index,
                reason: "matrix is singular".into(),
            });
        }
        Self::generate(name, generators, order_cap)
    }

    /// Wraps an explicit table, validating every group axiom.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u16>,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        if order == 0 || order > MAX_ORDER || table.len() != order * order || labels.len() != order
        {
            return Err(GroupError::InvalidTable("inconsistent dimensions".into()));
        }
        let mut g = GroupTable {
            name: name.into(),
            order,
            table,
            inverse: Vec::new(),
            labels,
            generators: Vec::new(),
        };
        g.inverse = g.compute_inverses()?;
        g.validate()?;
        g.generators = g.greedy_generators();
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Indices of the generators the table was built from.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn row(&self, a: usize) -> &[u16] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.commute(a, b)))
    }

    pub fn power(&self, a: usize, mut k: u64) -> usize {
        let (mut acc, mut base) = (0, a);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn compute_inverses(&self) -> Result<Vec<u16>, GroupError> {
        (0..self.order)
            .map(|a| {
                self.row(a)
                    .iter()
                    .position(|&x| x == 0)
                    .map(|b| b as u16)
                    .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no inverse")))
            })
            .collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(self);
        for x in self.elements() {
            if span.order() == self.order {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = Subgroup::generated_by(self, &gens);
            }
        }
        gens
    }

    /// Checks identity placement, the Latin-square property, inverse
    /// consistency and associativity (exhaustive up to order 128, otherwise
    /// `10·n²` seeded random triples).
    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        let bad = |m: String| Err(GroupError::InvalidTable(m));
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return bad(format!("element 0 is not the identity at {a}"));
            }
        }
        let mut stamp = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let x = self.mul(a, b);
                if x >= n || stamp[x] == a {
                    return bad(format!("row {a} is not a permutation"));
                }
                stamp[x] = a;
            }
        }
        stamp.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let x = self.mul(a, b);
                if stamp[x] == b {
                    return bad(format!("column {b} is not a permutation"));
                }
                stamp[x] = b;
            }
        }
        for a in 0..n {
            if self.mul(a, self.inv(a)) != 0 {
                return bad(format!("inverse table wrong at {a}"));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return bad(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..10 * n * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(a, b, c) {
                    return bad(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
        Ok(())
    }
}

/// Breadth-first closure over an arbitrary element representation.
///
/// Elements are discovered by right multiplication with the generators in
/// order; the full table is then filled from the right-multiplication table
/// using `a·b = (a·parent(b))·gen(b)`.
pub(crate) fn generate_with<E, M, L>(
    name: impl Into<String>,
    identity: E,
    generators: &[E],
    mul: M,
    label: L,
    order_cap: usize,
) -> Result<GroupTable, GroupError>
where
    E: Clone + Eq + Hash,
    M: Fn(&E, &E) -> E,
    L: Fn(&E) -> String,
{
    let cap = order_cap.min(MAX_ORDER);
    let ngens = generators.len();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<E, usize> = HashMap::from([(identity, 0)]);
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut right: Vec<u16> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (j, g) in generators.iter().enumerate() {
            let prod = mul(&elements[i], g);
            let k = match index.get(&prod) {
                Some(&k) => k,
                None => {
                    let k = elements.len();
                    if k >= cap {
                        return Err(GroupError::OrderCapExceeded { cap: order_cap });
                    }
                    index.insert(prod.clone(), k);
                    elements.push(prod);
                    parent.push((i, j));
                    k
                }
            };
            right.push(k as u16);
        }
        i += 1;
    }
    let n = elements.len();
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        let row = &mut table[a * n..(a + 1) * n];
        row[0] = a as u16;
        for b in 1..n {
            let (p, j) = parent[b];
            row[b] = right[row[p] as usize * ngens + j];
        }
    }
    let labels = elements.iter().map(label).collect();
    let gens = generators.iter().map(|g| index[g]).collect();
    let mut g = GroupTable {
        name: name.into(),
        order: n,
        table,
        inverse: Vec::new(),
        labels,
        generators: gens,
    };
    // Products of concrete elements are associative by construction, so only
    // tables supplied from outside go through `validate`.
    g.inverse = g.compute_inverses()?;
    Ok(g)
}
