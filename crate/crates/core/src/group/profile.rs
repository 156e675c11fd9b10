use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::GroupTable;

/// Structural invariants of a group, each computed straight from the
/// definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupProfile {
    pub order: usize,
    pub center: Vec<usize>,
    /// Conjugacy classes, each sorted, ordered by least element.
    pub classes: Vec<Vec<usize>>,
    pub class_sizes: BTreeSet<usize>,
    pub element_orders: Vec<usize>,
    /// `ω(G)`.
    pub order_spectrum: BTreeSet<usize>,
    /// `μ(G)`: the elements of `ω(G)` maximal under divisibility.
    pub max_spectrum: BTreeSet<usize>,
    /// `#Cent(G)`, counting `C_G(z) = G` once.
    pub centralizer_count: usize,
    pub is_ac: bool,
}

/// Stable JSON shape of a [`GroupProfile`].
#[derive(Serialize)]
struct ProfileJson<'a> {
    order: usize,
    center_size: usize,
    class_count: usize,
    class_sizes: &'a BTreeSet<usize>,
    element_order_spectrum: &'a BTreeSet<usize>,
    max_spectrum: &'a BTreeSet<usize>,
    centralizer_count: usize,
    is_ac: bool,
}

impl GroupProfile {
    pub fn center_size(&self) -> usize {
        self.center.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ProfileJson {
            order: self.order,
            center_size: self.center_size(),
            class_count: self.class_count(),
            class_sizes: &self.class_sizes,
            element_order_spectrum: &self.order_spectrum,
            max_spectrum: &self.max_spectrum,
            centralizer_count: self.centralizer_count,
            is_ac: self.is_ac,
        })
        .expect("profile serializes")
    }
}

pub(crate) fn centralizer_bits(g: &GroupTable, x: usize) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in g.elements() {
        if g.commute(x, y) {
            bits.insert(y);
        }
    }
    bits
}

pub fn profile(g: &GroupTable) -> GroupProfile {
    let n = g.order();

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = Vec::new();
        for t in 0..n {
            let c = g.conjugate(x, t);
            if class_of[c] == usize::MAX {
                class_of[c] = id;
                class.push(c);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    let center: Vec<usize> = classes
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| c[0])
        .collect();
    let class_sizes = classes.iter().map(Vec::len).collect();

    let element_orders: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    let order_spectrum: BTreeSet<usize> = element_orders.iter().copied().collect();
    let max_spectrum = order_spectrum
        .iter()
        .copied()
        .filter(|&a| !order_spectrum.iter().any(|&b| b != a && b % a == 0))
        .collect();

    let mut distinct: HashSet<FixedBitSet> = HashSet::new();
    let mut is_ac = true;
    for x in 0..n {
        let c = centralizer_bits(g, x);
        if distinct.contains(&c) {
            continue;
        }
        if c.count_ones(..) < n && is_ac {
            let els: Vec<usize> = c.ones().collect();
            is_ac = els.iter().all(|&a| els.iter().all(|&b| g.commute(a, b)));
        }
        distinct.insert(c);
    }

    GroupProfile {
        order: n,
        center,
        classes,
        class_sizes,
        element_orders,
        order_spectrum,
        max_spectrum,
        centralizer_count: distinct.len(),
        is_ac,
    }
}
