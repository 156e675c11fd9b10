//! Commuting graphs `C(X)` over subsets of a group.

mod independence;

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::group::{center, centralizer, is_ac_group, GroupTable};

pub use independence::{independence_number, max_independent_set, EXACT_INDEPENDENCE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {vertices} vertices, above the exact cap; greedy lower bound {}", lower_bound.elements.len())]
    TooLargeForExact {
        vertices: usize,
        lower_bound: NoncommutingSet,
    },
    #[error("witness is not a maximum noncommuting set")]
    NotMaximumWitness,
    #[error("group is not an AC-group")]
    NotACGroup,
    #[error("vertex {0} is not an element of the group")]
    UnknownElement(usize),
}

/// A simple undirected graph whose vertices are group element indices.
/// Adjacency is stored per local vertex position as a bitset.
#[derive(Clone, Debug)]
pub struct CommGraph {
    source: String,
    vertices: Vec<usize>,
    adj: Vec<FixedBitSet>,
}

/// A set of pairwise noncommuting elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncommutingSet {
    pub elements: Vec<usize>,
    /// Certified maximum by exhaustive search.
    pub maximum: bool,
}

impl CommGraph {
    /// Wraps explicit adjacency; `adj` must be symmetric and loop-free.
    pub fn from_adjacency(
        source: impl Into<String>,
        vertices: Vec<usize>,
        adj: Vec<FixedBitSet>,
    ) -> Self {
        assert_eq!(vertices.len(), adj.len());
        for (i, row) in adj.iter().enumerate() {
            assert!(!row.contains(i), "loop at {i}");
            assert!(row.ones().all(|j| adj[j].contains(i)), "asymmetric at {i}");
        }
        CommGraph {
            source: source.into(),
            vertices,
            adj,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Element index of each local vertex.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn adjacency(&self) -> &[FixedBitSet] {
        &self.adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones(..)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Connected components as sorted local-index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for w in self.adj[v].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    pub fn is_clique(&self, local: &[usize]) -> bool {
        local
            .iter()
            .enumerate()
            .all(|(a, &u)| local[a + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// One `u v` line per edge (`u < v`, canonical element indices).
    pub fn edge_list(&self) -> String {
        let mut edges = Vec::new();
        for i in 0..self.vertex_count() {
            for j in self.adj[i].ones() {
                let (u, v) = (self.vertices[i], self.vertices[j]);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
    }
}

/// `C(X)`: distinct elements of `X` adjacent when they commute.
pub fn commuting_graph(g: &GroupTable, subset: &[usize]) -> Result<CommGraph, GraphError> {
    let vertices: Vec<usize> = subset
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if let Some(&bad) = vertices.iter().find(|&&x| x >= g.order()) {
        return Err(GraphError::UnknownElement(bad));
    }
    let n = vertices.len();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        let row = g.row(vertices[i]);
        for j in i + 1..n {
            let (u, v) = (vertices[i], vertices[j]);
            if row[v] as usize == g.mul(v, u) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let graph = CommGraph {
        source: g.name().to_string(),
        vertices,
        adj,
    };
    if graph.vertices.first() == Some(&0) {
        assert!(
            graph.is_connected(),
            "a commuting graph containing 1 is connected"
        );
    }
    Ok(graph)
}

/// `C(G)`.
pub fn full_commuting_graph(g: &GroupTable) -> CommGraph {
    let all: Vec<usize> = g.elements().collect();
    commuting_graph(g, &all).expect("all elements are in range")
}

/// `Δ(G) = C(G ∖ Z(G))`.
pub fn noncentral_graph(g: &GroupTable) -> CommGraph {
    let z = center(g);
    let rest: Vec<usize> = g.elements().filter(|&x| !z.contains(x)).collect();
    commuting_graph(g, &rest).expect("all elements are in range")
}

/// Element indices of the vertices adjacent to every other vertex.
pub fn universal_vertices(graph: &CommGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    (0..n)
        .filter(|&i| graph.degree(i) + 1 == n)
        .map(|i| graph.vertices[i])
        .collect()
}

/// Intersection of the centralizers of a maximum noncommuting set, and
/// whether it is abelian (it always should be).
pub fn centralizer_core_abelian(
    g: &GroupTable,
    witness: &NoncommutingSet,
) -> Result<bool, GraphError> {
    let s = &witness.elements;
    let pairwise = s
        .iter()
        .enumerate()
        .all(|(i, &a)| s[i + 1..].iter().all(|&b| !g.commute(a, b)));
    if !pairwise {
        return Err(GraphError::NotMaximumWitness);
    }
    let exact = max_independent_set(&full_commuting_graph(g))?;
    if exact.elements.len() != s.len() {
        return Err(GraphError::NotMaximumWitness);
    }
    let core: Vec<usize> = g
        .elements()
        .filter(|&x| s.iter().all(|&y| g.commute(x, y)))
        .collect();
    Ok(core.iter().all(|&a| core.iter().all(|&b| g.commute(a, b))))
}

/// The clique structure of `Δ(G)` for an AC-group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerDecomposition {
    pub order: usize,
    pub center_size: usize,
    /// `(m_i, multiplicity)` sorted by `m_i` descending.
    pub blocks: Vec<(usize, usize)>,
    /// The sets `C_G(x) ∖ Z(G)`, ordered by least element.
    pub cliques: Vec<Vec<usize>>,
}

impl CentralizerDecomposition {
    /// Number of distinct noncentral centralizers.
    pub fn t(&self) -> usize {
        self.cliques.len()
    }

    /// All `m_i`, descending.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .flat_map(|&(m, k)| std::iter::repeat(m).take(k))
            .collect()
    }
}

pub fn centralizer_decomposition(g: &GroupTable) -> Result<CentralizerDecomposition, GraphError> {
    if !is_ac_group(g) {
        return Err(GraphError::NotACGroup);
    }
    let z = center(g);
    let mut assigned = vec![false; g.order()];
    let mut cliques = Vec::new();
    for x in g.elements() {
        if z.contains(x) || assigned[x] {
            continue;
        }
        let block: Vec<usize> = centralizer(g, x)
            .elements()
            .iter()
            .copied()
            .filter(|&y| !z.contains(y))
            .collect();
        for &y in &block {
            assigned[y] = true;
        }
        cliques.push(block);
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &cliques {
        *counts.entry(c.len()).or_insert(0) += 1;
    }
    Ok(CentralizerDecomposition {
        order: g.order(),
        center_size: z.order(),
        blocks: counts.into_iter().rev().collect(),
        cliques,
    })
}
