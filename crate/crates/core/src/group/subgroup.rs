//! Subgroups and the structural queries built on them.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{GroupError, GroupTable};
use crate::algebra::is_prime;

/// A subgroup stored as its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
    normal: bool,
    abelian: bool,
}

impl Subgroup {
    /// Validates closure under the group operation.
    pub fn from_elements(g: &GroupTable, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; g.order()];
        for &x in &elements {
            if x >= g.order() {
                return Err(GroupError::NotASubgroup(format!("index {x} out of range")));
            }
            member[x] = true;
        }
        if elements.first() != Some(&0) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        for &a in &elements {
            for &b in &elements {
                if !member[g.mul(a, b)] {
                    return Err(GroupError::NotASubgroup(format!("{a}·{b} escapes")));
                }
            }
        }
        Ok(Self::with_flags(g, elements))
    }

    pub(crate) fn with_flags(g: &GroupTable, elements: Vec<usize>) -> Self {
        let abelian = elements
            .iter()
            .all(|&a| elements.iter().all(|&b| g.commute(a, b)));
        let mut sg = Subgroup {
            elements,
            normal: false,
            abelian,
        };
        sg.normal = g
            .generators()
            .iter()
            .all(|&t| sg.elements.iter().all(|&h| sg.contains(g.conjugate(h, t))));
        sg
    }

    pub fn trivial(_g: &GroupTable) -> Self {
        Subgroup {
            elements: vec![0],
            normal: true,
            abelian: true,
        }
    }

    pub fn whole(g: &GroupTable) -> Self {
        Self::with_flags(g, g.elements().collect())
    }

    /// Closure of `gens` under multiplication.
    pub fn generated_by(g: &GroupTable, gens: &[usize]) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        let mut elements = vec![0];
        let mut i = 0;
        while i < elements.len() {
            for &t in gens {
                let x = g.mul(elements[i], t);
                if !member[x] {
                    member[x] = true;
                    elements.push(x);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Self::with_flags(g, elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// The sorted element set `t⁻¹ H t`.
    pub fn conjugate_set(&self, g: &GroupTable, t: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.elements.iter().map(|&h| g.conjugate(h, t)).collect();
        out.sort_unstable();
        out
    }
}

/// `C_G(x) = { g : gx = xg }`.
pub fn centralizer(g: &GroupTable, x: usize) -> Subgroup {
    let elements = g.elements().filter(|&y| g.commute(x, y)).collect();
    Subgroup::with_flags(g, elements)
}

pub fn center(g: &GroupTable) -> Subgroup {
    let gens = g.generators();
    let elements = g
        .elements()
        .filter(|&z| gens.iter().all(|&t| g.commute(z, t)))
        .collect();
    Subgroup::with_flags(g, elements)
}

pub fn normalizer(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let elements = g
        .elements()
        .filter(|&t| h.elements().iter().all(|&x| h.contains(g.conjugate(x, t))))
        .collect();
    Subgroup::with_flags(g, elements)
}

/// Factor group on the cosets of a normal subgroup. Cosets are numbered by
/// their least element, so the identity coset is index 0.
pub fn quotient(g: &GroupTable, n: &Subgroup) -> Result<GroupTable, GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &h in n.elements() {
                coset_of[g.mul(x, h)] = id;
            }
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)] as u16);
        }
    }
    let labels = reps.iter().map(|&r| format!("{}N", g.label(r))).collect();
    GroupTable::from_table(format!("{}/N", g.name()), k, table, labels)
}

/// `H` as a group in its own right, its elements renumbered in sorted order.
pub fn subgroup_table(g: &GroupTable, h: &Subgroup) -> GroupTable {
    let els = h.elements();
    let pos = |x: usize| els.binary_search(&x).expect("subgroup is closed");
    let table = els
        .iter()
        .flat_map(|&a| els.iter().map(move |&b| pos(g.mul(a, b)) as u16))
        .collect();
    let labels = els.iter().map(|&x| g.label(x).to_string()).collect();
    GroupTable::from_table(format!("H<{}", g.name()), els.len(), table, labels)
        .expect("subgroup table is valid")
}

/// The tiny catalog used to recognize `G/Z(G)` in the partition classifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallGroup {
    Trivial,
    Z2xZ2,
    Z3xZ3,
    S3,
    Z4,
    Z6,
    Z9,
}

impl SmallGroup {
    /// Order, abelian flag and sorted element-order multiset; these separate
    /// every pair in the catalog.
    fn fingerprint(self) -> (usize, bool, Vec<usize>) {
        match self {
            SmallGroup::Trivial => (1, true, vec![1]),
            SmallGroup::Z2xZ2 => (4, true, vec![1, 2, 2, 2]),
            SmallGroup::Z3xZ3 => (9, true, vec![1, 3, 3, 3, 3, 3, 3, 3, 3]),
            SmallGroup::S3 => (6, false, vec![1, 2, 2, 2, 3, 3]),
            SmallGroup::Z4 => (4, true, vec![1, 2, 4, 4]),
            SmallGroup::Z6 => (6, true, vec![1, 2, 3, 3, 6, 6]),
            SmallGroup::Z9 => (9, true, vec![1, 3, 3, 9, 9, 9, 9, 9, 9]),
        }
    }
}

pub fn is_isomorphic_small(g: &GroupTable, target: SmallGroup) -> Result<bool, GroupError> {
    if g.order() > 9 {
        return Err(GroupError::TargetTooLarge(g.order()));
    }
    let mut orders: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    orders.sort_unstable();
    Ok((g.order(), g.is_abelian(), orders) == target.fingerprint())
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

/// All Sylow `p`-subgroups, sorted by element list.
///
/// One Sylow subgroup is grown greedily: starting from the trivial group,
/// the first `p`-element (in index order) whose adjunction still yields a
/// `p`-group is added until the full `p`-part of the order is reached. The
/// rest are its conjugates.
pub fn sylow_subgroups(g: &GroupTable, p: usize) -> Result<Vec<Subgroup>, GroupError> {
    let n = g.order();
    if !is_prime(p as u64) || n % p != 0 {
        return Err(GroupError::PDoesNotDivideOrder { p, order: n });
    }
    let mut target = 1;
    while n % (target * p) == 0 {
        target *= p;
    }
    let mut h = Subgroup::trivial(g);
    let mut gens = Vec::new();
    while h.order() < target {
        let next = g
            .elements()
            .filter(|&x| !h.contains(x) && is_power_of(g.element_order(x), p))
            .find_map(|x| {
                let mut trial = gens.clone();
                trial.push(x);
                let k = Subgroup::generated_by(g, &trial);
                is_power_of(k.order(), p).then_some((x, k))
            })
            .expect("every non-Sylow p-subgroup has a proper p-overgroup");
        gens.push(next.0);
        h = next.1;
    }
    let conjugates: BTreeSet<Vec<usize>> = g.elements().map(|t| h.conjugate_set(g, t)).collect();
    let out: Vec<Subgroup> = conjugates
        .into_iter()
        .map(|els| Subgroup::with_flags(g, els))
        .collect();
    debug_assert_eq!(out.len() % p, 1 % p);
    Ok(out)
}

/// Every centralizer of a noncentral element is abelian.
pub fn is_ac_group(g: &GroupTable) -> bool {
    let z = center(g);
    let mut seen = BTreeSet::new();
    g.elements().filter(|&x| !z.contains(x)).all(|x| {
        let c = centralizer(g, x);
        if seen.contains(c.elements()) {
            return true;
        }
        let ok = c.is_abelian();
        seen.insert(c.elements().to_vec());
        ok
    })
}

/// `H^t = H` or `H ∩ H^t = 1` for every `t`.
pub fn is_ti_subgroup(g: &GroupTable, h: &Subgroup) -> bool {
    g.elements().all(|t| {
        let conj = h.conjugate_set(g, t);
        conj == h.elements() || conj.iter().filter(|&&x| h.contains(x)).count() == 1
    })
}
