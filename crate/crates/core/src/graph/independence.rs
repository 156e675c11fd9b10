//! Maximum noncommuting sets: maximum independent sets of `C(X)`, found as
//! maximum cliques of the complement by branch and bound with a greedy
//! coloring bound.

use fixedbitset::FixedBitSet;

use super::{CommGraph, GraphError, NoncommutingSet};

pub const EXACT_INDEPENDENCE_CAP: usize = 600;

/// Greedy independent set: repeatedly take the remaining vertex of least
/// degree and discard its neighbours.
fn greedy_independent(graph: &CommGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut out = Vec::new();
    while let Some(v) = alive
        .ones()
        .min_by_key(|&v| graph.neighbors(v).intersection(&alive).count())
    {
        out.push(v);
        alive.set(v, false);
        alive.difference_with(graph.neighbors(v));
    }
    out
}

fn to_elements(graph: &CommGraph, local: &[usize], maximum: bool) -> NoncommutingSet {
    let mut elements: Vec<usize> = local.iter().map(|&i| graph.vertices()[i]).collect();
    elements.sort_unstable();
    NoncommutingSet { elements, maximum }
}

/// Exact maximum independent set, up to [`EXACT_INDEPENDENCE_CAP`] vertices.
/// Above the cap the error carries a greedy lower-bound witness.
pub fn max_independent_set(graph: &CommGraph) -> Result<NoncommutingSet, GraphError> {
    let n = graph.vertex_count();
    let greedy = greedy_independent(graph);
    if n > EXACT_INDEPENDENCE_CAP {
        return Err(GraphError::TooLargeForExact {
            vertices: n,
            lower_bound: to_elements(graph, &greedy, false),
        });
    }
    // Relabel so that low positions carry high complement degree.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (graph.degree(v), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let comp: Vec<FixedBitSet> = order
        .iter()
        .map(|&v| {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert_range(..);
            for w in graph.neighbors(v).ones() {
                row.set(pos[w], false);
            }
            row.set(pos[v], false);
            row
        })
        .collect();

    let mut best: Vec<usize> = greedy.iter().map(|&v| pos[v]).collect();
    let mut cand = FixedBitSet::with_capacity(n);
    cand.insert_range(..);
    expand(&comp, cand, &mut Vec::new(), &mut best);
    let local: Vec<usize> = best.iter().map(|&i| order[i]).collect();
    Ok(to_elements(graph, &local, true))
}

/// `nc` together with its witness.
pub fn independence_number(graph: &CommGraph) -> Result<(usize, NoncommutingSet), GraphError> {
    let set = max_independent_set(graph)?;
    Ok((set.elements.len(), set))
}

/// Greedy sequential coloring of `cand` in the complement graph; returns
/// vertices in color order with their color numbers (non-decreasing).
fn color_sort(comp: &[FixedBitSet], cand: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = cand.clone();
    let mut order = Vec::with_capacity(cand.count_ones(..));
    let mut colors = Vec::with_capacity(order.capacity());
    let mut color = 0;
    while !uncolored.is_clear() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.minimum() {
            uncolored.set(v, false);
            q.set(v, false);
            q.difference_with(&comp[v]);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

fn expand(
    comp: &[FixedBitSet],
    mut cand: FixedBitSet,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    let (order, colors) = color_sort(comp, &cand);
    for idx in (0..order.len()).rev() {
        if current.len() + colors[idx] <= best.len() {
            return;
        }
        let v = order[idx];
        current.push(v);
        let mut next = cand.clone();
        next.intersect_with(&comp[v]);
        if next.is_clear() {
            if current.len() > best.len() {
                best.clone_from(current);
            }
        } else {
            expand(comp, next, current, best);
        }
        current.pop();
        cand.set(v, false);
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> CommGraph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        CommGraph::from_adjacency("test", (0..n).collect(), adj)
    }

    fn brute_force_alpha(g: &CommGraph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|mask| {
                (0..n).all(|i| {
                    mask >> i & 1 == 0
                        || (i + 1..n).all(|j| mask >> j & 1 == 0 || !g.adjacent(i, j))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn complete_graph_has_alpha_one() {
        let edges: Vec<_> = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .collect();
        let g = graph_from_edges(6, &edges);
        assert_eq!(independence_number(&g).unwrap().0, 1);
    }

    #[test]
    fn above_cap_returns_lower_bound() {
        let g = graph_from_edges(EXACT_INDEPENDENCE_CAP + 1, &[(0, 1)]);
        match max_independent_set(&g) {
            Err(GraphError::TooLargeForExact { lower_bound, .. }) => {
                assert!(!lower_bound.maximum);
                assert_eq!(lower_bound.elements.len(), EXACT_INDEPENDENCE_CAP);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..=12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let edges: Vec<_> = raw.into_iter().filter(|&(u, v)| u < n && v < n).collect();
            let g = graph_from_edges(n, &edges);
            let (alpha, witness) = independence_number(&g).unwrap();
            prop_assert_eq!(alpha, brute_force_alpha(&g));
            for (i, &u) in witness.elements.iter().enumerate() {
                for &v in &witness.elements[i + 1..] {
                    prop_assert!(!g.adjacent(u, v));
                }
            }
        }
    }
}
