//! Exact tree numbers `κ` by independent engines.

mod bareiss;
mod modular;

use num_bigint::Sign;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bignum::{BigNat, Factorization};
use crate::graph::{
    centralizer_decomposition, full_commuting_graph, CentralizerDecomposition, CommGraph,
    GraphError,
};
use crate::group::GroupTable;
use crate::spectra::{kappa_from_spectrum, spectrum, CliqueExpr, SpectrumError};

pub use modular::{primes, PRIMES};

/// Largest graph the fraction-free engine accepts by default.
pub const EXACT_CAP: usize = 1000;

/// Groups up to this order get a matrix-tree cross-check in [`kappa_auto`].
pub const AUTO_CROSS_CHECK_ORDER: usize = 200;

/// Note attached to the zero result for a disconnected graph.
pub const DISCONNECTED: &str = "disconnected";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeCountError {
    #[error("{vertices} vertices exceed the exact cap {cap}; use the modular engine")]
    ExactCapExceeded { vertices: usize, cap: usize },
    #[error("bit bound {bits} needs more primes than the engine supports")]
    BitBoundTooLarge { bits: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaMethod {
    MatrixTree,
    ModularCrt,
    AcStructure,
    Spectrum,
}

impl KappaMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            KappaMethod::MatrixTree => "matrix_tree",
            KappaMethod::ModularCrt => "modular_crt",
            KappaMethod::AcStructure => "ac_structure",
            KappaMethod::Spectrum => "spectrum",
        }
    }
}

impl std::fmt::Display for KappaMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaResult {
    pub value: BigNat,
    pub method: KappaMethod,
    /// Present only when computed structurally; its value equals `value`.
    pub factors: Option<Factorization>,
    pub notes: Vec<String>,
    /// Every engine that ran, with its answer.
    pub engines: Vec<(KappaMethod, BigNat)>,
}

#[derive(Serialize)]
struct KappaJson {
    value: String,
    method: KappaMethod,
    factors: Option<Vec<(u64, u64)>>,
    engines_agreed: bool,
}

impl KappaResult {
    fn single(value: BigNat, method: KappaMethod, factors: Option<Factorization>) -> Self {
        KappaResult {
            engines: vec![(method, value.clone())],
            value,
            method,
            factors,
            notes: Vec::new(),
        }
    }

    fn disconnected(method: KappaMethod) -> Self {
        let mut r = Self::single(BigNat::zero(), method, None);
        r.notes.push(DISCONNECTED.into());
        r
    }

    pub fn is_disconnected(&self) -> bool {
        self.notes.iter().any(|n| n == DISCONNECTED)
    }

    pub fn engines_agreed(&self) -> bool {
        self.engines.iter().all(|(_, v)| *v == self.value)
    }

    /// Runs another engine's answer into the record.
    pub fn record(&mut self, other: &KappaResult) {
        for e in &other.engines {
            if !self.engines.iter().any(|(m, _)| *m == e.0) {
                self.engines.push(e.clone());
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(KappaJson {
            value: self.value.to_str_radix(10),
            method: self.method,
            factors: self.factors.as_ref().map(Factorization::pairs),
            engines_agreed: self.engines_agreed(),
        })
        .expect("result serializes")
    }
}

/// Laplacian with the first vertex's row and column removed.
fn reduced_laplacian(graph: &CommGraph) -> Vec<Vec<i64>> {
    let n = graph.vertex_count();
    (1..n)
        .map(|i| {
            let mut row = vec![0i64; n - 1];
            row[i - 1] = graph.degree(i) as i64;
            for j in graph.neighbors(i).ones().filter(|&j| j > 0) {
                row[j - 1] = -1;
            }
            row
        })
        .collect()
}

/// `κ` as the reduced-Laplacian determinant, by fraction-free elimination.
pub fn kappa_matrix_tree(graph: &CommGraph) -> Result<KappaResult, TreeCountError> {
    kappa_matrix_tree_capped(graph, EXACT_CAP)
}

pub fn kappa_matrix_tree_capped(
    graph: &CommGraph,
    cap: usize,
) -> Result<KappaResult, TreeCountError> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(TreeCountError::ExactCapExceeded { vertices: n, cap });
    }
    if !graph.is_connected() {
        return Ok(KappaResult::disconnected(KappaMethod::MatrixTree));
    }
    let (sign, value) = bareiss::det(&reduced_laplacian(graph)).into_parts();
    assert!(
        sign != Sign::Minus,
        "reduced Laplacian has a negative determinant"
    );
    Ok(KappaResult::single(value, KappaMethod::MatrixTree, None))
}

/// Certified `log2 κ` bound: bits of `∏ (d_i + 1)` over the reduced rows,
/// since each row has Euclidean norm at most `d_i + 1`.
pub fn hadamard_bits(graph: &CommGraph) -> u64 {
    let prod = (1..graph.vertex_count()).fold(BigNat::from(1u32), |acc, i| {
        acc * (graph.degree(i) as u64 + 1)
    });
    prod.bits()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ModularOptions {
    /// Must be at least `log2 κ`; defaults to [`hadamard_bits`].
    pub bit_bound: Option<u64>,
    /// Primes used beyond what the bound requires.
    pub extra_primes: usize,
}

/// Number of primes whose product certainly exceeds `2^bits`.
pub fn primes_for_bits(bits: u64) -> usize {
    (bits / 61 + 1) as usize
}

const MAX_PRIMES: usize = 4096;

/// `κ` from determinants modulo primes just below `2^62`, reconstructed by CRT.
pub fn kappa_modular(
    graph: &CommGraph,
    opts: ModularOptions,
) -> Result<KappaResult, TreeCountError> {
    if !graph.is_connected() {
        return Ok(KappaResult::disconnected(KappaMethod::ModularCrt));
    }
    let bits = opts.bit_bound.unwrap_or_else(|| hadamard_bits(graph));
    let k = primes_for_bits(bits) + opts.extra_primes;
    if k > MAX_PRIMES {
        return Err(TreeCountError::BitBoundTooLarge { bits });
    }
    let value = modular::det_crt(&reduced_laplacian(graph), &primes(k));
    let mut r = KappaResult::single(value, KappaMethod::ModularCrt, None);
    r.notes.push(format!("primes={k}"));
    Ok(r)
}

/// The clique expression `K_m ∨ (K_{m_1} ⊕ … ⊕ K_{m_t})` of `C(G)`.
pub fn ac_clique_expr(d: &CentralizerDecomposition) -> CliqueExpr {
    let center = CliqueExpr::complete(d.center_size);
    if d.t() == 0 {
        return center;
    }
    let parts = d.sizes().into_iter().map(CliqueExpr::complete).collect();
    CliqueExpr::join(center, CliqueExpr::union(parts))
}

fn cayley(n: usize) -> KappaResult {
    let f = Factorization::power_of(n as u64, n.saturating_sub(2) as u64);
    let mut r = KappaResult::single(f.value(), KappaMethod::AcStructure, Some(f));
    r.notes.push("abelian: n^(n-2)".into());
    r
}

/// `n^{m−1} m^{t−1} ∏ (m_i + m)^{m_i − 1}` for an AC-group.
pub fn ac_formula(d: &CentralizerDecomposition) -> Factorization {
    let (n, m) = (d.order as u64, d.center_size as u64);
    let mut f = Factorization::power_of(n, m - 1) * Factorization::power_of(m, d.t() as u64 - 1);
    for &(mi, k) in &d.blocks {
        f = f * Factorization::power_of(mi as u64 + m, (mi as u64 - 1) * k as u64);
    }
    f
}

pub fn kappa_ac(g: &GroupTable) -> Result<KappaResult, TreeCountError> {
    let d = centralizer_decomposition(g)?;
    if d.t() == 0 {
        return Ok(cayley(g.order()));
    }
    let f = ac_formula(&d);
    Ok(KappaResult::single(
        f.value(),
        KappaMethod::AcStructure,
        Some(f),
    ))
}

/// `κ` from the spectrum of the clique-expression model of an AC-group.
pub fn kappa_spectrum(g: &GroupTable) -> Result<KappaResult, TreeCountError> {
    let d = centralizer_decomposition(g)?;
    let value = kappa_from_spectrum(&spectrum(&ac_clique_expr(&d)))?;
    Ok(KappaResult::single(value, KappaMethod::Spectrum, None))
}

/// Matrix-tree up to [`EXACT_CAP`] vertices, modular above.
pub fn kappa_graph(graph: &CommGraph) -> Result<KappaResult, TreeCountError> {
    if graph.vertex_count() <= EXACT_CAP {
        kappa_matrix_tree(graph)
    } else {
        kappa_modular(graph, ModularOptions::default())
    }
}

/// Dispatcher: Cayley's formula for abelian groups, the structural formula
/// for AC-groups (cross-checked by matrix-tree on small orders), and the
/// determinant engines otherwise.
pub fn kappa_auto(g: &GroupTable) -> Result<KappaResult, TreeCountError> {
    if g.is_abelian() {
        return Ok(cayley(g.order()));
    }
    match kappa_ac(g) {
        Ok(mut r) => {
            if g.order() <= AUTO_CROSS_CHECK_ORDER {
                let check = kappa_matrix_tree(&full_commuting_graph(g))?;
                r.record(&check);
            }
            Ok(r)
        }
        Err(TreeCountError::Graph(GraphError::NotACGroup)) => kappa_graph(&full_commuting_graph(g)),
        Err(e) => Err(e),
    }
}

/// Every applicable engine, the first as the reported value.
pub fn kappa_all(g: &GroupTable) -> Result<KappaResult, TreeCountError> {
    let graph = full_commuting_graph(g);
    let mut runs = Vec::new();
    match kappa_ac(g) {
        Ok(r) => {
            runs.push(r);
            runs.push(kappa_spectrum(g)?);
        }
        Err(TreeCountError::Graph(GraphError::NotACGroup)) => {}
        Err(e) => return Err(e),
    }
    if graph.vertex_count() <= EXACT_CAP {
        runs.push(kappa_matrix_tree(&graph)?);
    }
    runs.push(kappa_modular(&graph, ModularOptions::default())?);
    let mut out = runs.remove(0);
    for r in &runs {
        out.record(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use fixedbitset::FixedBitSet;

    use super::*;
    use crate::group::{make_family, Family};

    fn complete(n: usize) -> CommGraph {
        let adj = (0..n)
            .map(|i| {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert_range(..);
                r.set(i, false);
                r
            })
            .collect();
        CommGraph::from_adjacency("K", (0..n).collect(), adj)
    }

    #[test]
    fn k4_both_engines() {
        let g = complete(4);
        assert_eq!(kappa_matrix_tree(&g).unwrap().value, BigNat::from(16u32));
        assert_eq!(
            kappa_modular(&g, ModularOptions::default()).unwrap().value,
            BigNat::from(16u32)
        );
        let tight = ModularOptions {
            bit_bound: Some(5),
            extra_primes: 0,
        };
        assert_eq!(kappa_modular(&g, tight).unwrap().value, BigNat::from(16u32));
    }

    #[test]
    fn disconnected_is_zero_with_marker() {
        let adj = vec![FixedBitSet::with_capacity(2); 2];
        let g = CommGraph::from_adjacency("E2", vec![0, 1], adj);
        let r = kappa_matrix_tree(&g).unwrap();
        assert!(r.value.is_zero() && r.is_disconnected());
        assert!(kappa_modular(&g, ModularOptions::default())
            .unwrap()
            .is_disconnected());
    }

    #[test]
    fn cap_is_enforced() {
        let g = complete(5);
        assert_eq!(
            kappa_matrix_tree_capped(&g, 4),
            Err(TreeCountError::ExactCapExceeded {
                vertices: 5,
                cap: 4
            })
        );
    }

    #[test]
    fn s3_and_z6() {
        let s3 = make_family(&Family::Symmetric { d: 3 }).unwrap();
        let r = kappa_auto(&s3).unwrap();
        assert_eq!(r.value, BigNat::from(3u32));
        assert_eq!(r.engines.len(), 2);
        assert!(r.engines_agreed());
        let z6 = make_family(&Family::Cyclic { n: 6 }).unwrap();
        assert_eq!(kappa_auto(&z6).unwrap().value, BigNat::from(1296u32));
    }

    #[test]
    fn json_shape() {
        let q8 = make_family(&Family::Quaternion { k: 2 }).unwrap();
        let j = kappa_auto(&q8).unwrap().to_json();
        assert_eq!(j["value"], "2048");
        assert_eq!(j["method"], "ac_structure");
        assert_eq!(j["factors"], serde_json::json!([[2, 11]]));
        assert_eq!(j["engines_agreed"], true);
    }
}
