use std::collections::BTreeSet;

use super::{PartitionCertificate, PartitionError};
use crate::group::{GroupTable, Subgroup};

/// Default order cap for exhaustive search.
pub const EXACT_SEARCH_CAP: usize = 24;

/// Candidate subgroups tried as `A` by the heuristic.
const HEURISTIC_CANDIDATES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Minimum `n` over every abelian subgroup `A`; `None` proves nonexistence.
    Exact { cap: usize },
    /// Greedy cover by maximal abelian subgroups; `None` is inconclusive.
    Heuristic,
}

impl SearchMode {
    pub fn exact() -> Self {
        SearchMode::Exact {
            cap: EXACT_SEARCH_CAP,
        }
    }
}

pub fn find_partition(
    g: &GroupTable,
    mode: SearchMode,
    n_max: Option<usize>,
) -> Result<Option<PartitionCertificate>, PartitionError> {
    if g.is_abelian() {
        return Err(PartitionError::AbelianInput);
    }
    let n_max = n_max.unwrap_or(usize::MAX);
    let found = match mode {
        SearchMode::Exact { cap } => {
            if g.order() > cap {
                return Err(PartitionError::ExactCapExceeded {
                    order: g.order(),
                    cap,
                });
            }
            exact(g, n_max)
        }
        SearchMode::Heuristic => heuristic(g, n_max),
    };
    Ok(found.map(|c| {
        c.verified_in(g)
            .expect("search output is a valid partition")
    }))
}

/// An `n`-abelian partition for this exact `n`, by exhaustive search over
/// every abelian subgroup `A`. `None` proves there is none.
pub fn find_partition_with_n(
    g: &GroupTable,
    n: usize,
    cap: usize,
) -> Result<Option<PartitionCertificate>, PartitionError> {
    if g.is_abelian() {
        return Err(PartitionError::AbelianInput);
    }
    if g.order() > cap {
        return Err(PartitionError::ExactCapExceeded {
            order: g.order(),
            cap,
        });
    }
    if n < 2 {
        return Ok(None);
    }
    for a in abelian_subgroups(g) {
        let r: Vec<usize> = g.elements().filter(|&x| !a.contains(x)).collect();
        if 2 * n > r.len() || noncommuting_lower_bound(g, &r) > n {
            continue;
        }
        if let Some(blocks) = split_into(g, &r, n) {
            let cert = PartitionCertificate::new(a.elements().to_vec(), blocks);
            return Ok(Some(
                cert.verified_in(g)
                    .expect("search output is a valid partition"),
            ));
        }
    }
    Ok(None)
}

/// Every abelian subgroup, by closure from the trivial one, in sorted order.
pub(crate) fn abelian_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(vec![0]);
    let mut queue = vec![Subgroup::trivial(g)];
    let mut i = 0;
    while i < queue.len() {
        let h = queue[i].clone();
        for x in g.elements() {
            if h.contains(x) || !h.elements().iter().all(|&y| g.commute(x, y)) {
                continue;
            }
            let mut gens = h.elements().to_vec();
            gens.push(x);
            let k = Subgroup::generated_by(g, &gens);
            if seen.insert(k.elements().to_vec()) {
                queue.push(k);
            }
        }
        i += 1;
    }
    queue.sort();
    queue
}

/// Greedy noncommuting subset of `r`; each member needs its own block.
fn noncommuting_lower_bound(g: &GroupTable, r: &[usize]) -> usize {
    let mut picked: Vec<usize> = Vec::new();
    for &x in r {
        if picked.iter().all(|&y| !g.commute(x, y)) {
            picked.push(x);
        }
    }
    picked.len()
}

/// Splits `r` into exactly `k` commuting blocks of size ≥ 2, if possible.
fn split_into(g: &GroupTable, r: &[usize], k: usize) -> Option<Vec<Vec<usize>>> {
    let mut order = r.to_vec();
    order.sort_by_key(|&x| {
        (
            std::cmp::Reverse(r.iter().filter(|&&y| !g.commute(x, y)).count()),
            x,
        )
    });
    let mut classes: Vec<Vec<usize>> = Vec::with_capacity(k);
    fn rec(
        g: &GroupTable,
        order: &[usize],
        idx: usize,
        k: usize,
        classes: &mut Vec<Vec<usize>>,
    ) -> bool {
        let remaining = order.len() - idx;
        let singles = classes.iter().filter(|c| c.len() == 1).count();
        if singles + 2 * (k - classes.len()) > remaining {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        let v = order[idx];
        for c in 0..classes.len() {
            if classes[c].iter().all(|&u| g.commute(u, v)) {
                classes[c].push(v);
                if rec(g, order, idx + 1, k, classes) {
                    return true;
                }
                classes[c].pop();
            }
        }
        if classes.len() < k {
            classes.push(vec![v]);
            if rec(g, order, idx + 1, k, classes) {
                return true;
            }
            classes.pop();
        }
        false
    }
    rec(g, &order, 0, k, &mut classes).then_some(classes)
}

fn exact(g: &GroupTable, n_max: usize) -> Option<PartitionCertificate> {
    let mut best: Option<PartitionCertificate> = None;
    for a in abelian_subgroups(g) {
        let r: Vec<usize> = g.elements().filter(|&x| !a.contains(x)).collect();
        let limit = best
            .as_ref()
            .map_or(n_max, |b| b.n.saturating_sub(1).min(n_max));
        let lo = noncommuting_lower_bound(g, &r).max(2);
        for k in lo..=limit.min(r.len() / 2) {
            if let Some(blocks) = split_into(g, &r, k) {
                best = Some(PartitionCertificate::new(a.elements().to_vec(), blocks));
                break;
            }
        }
    }
    best
}

/// Maximal abelian subgroups covering `G`, largest first.
fn maximal_abelian_cover(g: &GroupTable) -> Vec<Subgroup> {
    let mut covered = vec![false; g.order()];
    let mut out: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        if covered[x] {
            continue;
        }
        let mut gens = vec![x];
        let mut h = Subgroup::generated_by(g, &gens);
        for y in g.elements() {
            if !h.contains(y) && h.elements().iter().all(|&z| g.commute(y, z)) {
                gens.push(y);
                h = Subgroup::generated_by(g, &gens);
            }
        }
        for &y in h.elements() {
            covered[y] = true;
        }
        out.push(h);
    }
    out.sort_by(|p, q| q.order().cmp(&p.order()).then_with(|| p.cmp(q)));
    out
}

fn greedy_with(g: &GroupTable, cover: &[Subgroup], a: &Subgroup) -> Option<PartitionCertificate> {
    let mut covered = vec![false; g.order()];
    for &x in a.elements() {
        covered[x] = true;
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for s in cover {
        let block: Vec<usize> = s
            .elements()
            .iter()
            .copied()
            .filter(|&x| !covered[x])
            .collect();
        if block.len() >= 2 {
            for &x in &block {
                covered[x] = true;
            }
            blocks.push(block);
        }
    }
    // Repair: leftovers join an existing block, else pair up among themselves.
    let mut pending: Vec<Vec<usize>> = Vec::new();
    for x in g.elements().filter(|&x| !covered[x]) {
        let fits = |b: &Vec<usize>| b.iter().all(|&y| g.commute(x, y));
        if let Some(b) = blocks.iter_mut().find(|b| fits(b)) {
            b.push(x);
        } else if let Some(p) = pending.iter_mut().find(|p| fits(p)) {
            p.push(x);
        } else {
            pending.push(vec![x]);
        }
    }
    if pending.iter().any(|p| p.len() < 2) {
        return None;
    }
    blocks.extend(pending);
    (blocks.len() >= 2).then(|| PartitionCertificate::new(a.elements().to_vec(), blocks))
}

fn heuristic(g: &GroupTable, n_max: usize) -> Option<PartitionCertificate> {
    let cover = maximal_abelian_cover(g);
    let mut best: Option<PartitionCertificate> = None;
    for a in cover.iter().take(HEURISTIC_CANDIDATES) {
        if let Some(c) = greedy_with(g, &cover, a) {
            if c.n <= n_max && best.as_ref().map_or(true, |b| c.n < b.n) {
                best = Some(c);
            }
        }
    }
    best
}
