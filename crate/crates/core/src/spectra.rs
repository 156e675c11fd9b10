//! Laplacian spectra of graphs built from complete and empty graphs by
//! disjoint union and join.
//!
//! For `Γ1` on `m` vertices and `Γ2` on `n` vertices the union spectrum is the
//! multiset sum, and the join spectrum is
//! `{m+n} ∪ {μ(Γ1)+n} ∪ {μ(Γ2)+m} ∪ {0}` with one zero dropped from each
//! side. Every such spectrum is integral, so everything here is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bignum::BigNat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("eigenvalue product is not divisible by the vertex count")]
    NonIntegerResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Complete(usize),
    Empty(usize),
    Union(Vec<CliqueExpr>),
    Join(Box<CliqueExpr>, Box<CliqueExpr>),
}

/// Expression tree over `K_s`, `E_s`, union and join, with its vertex count
/// cached at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueExpr {
    node: Node,
    vertices: usize,
}

impl CliqueExpr {
    pub fn complete(s: usize) -> Self {
        assert!(s >= 1, "K_0 is not a graph");
        CliqueExpr {
            node: Node::Complete(s),
            vertices: s,
        }
    }

    pub fn empty(s: usize) -> Self {
        assert!(s >= 1, "E_0 is not a graph");
        CliqueExpr {
            node: Node::Empty(s),
            vertices: s,
        }
    }

    pub fn union(parts: Vec<CliqueExpr>) -> Self {
        assert!(!parts.is_empty(), "empty union");
        let vertices = parts.iter().map(|p| p.vertices).sum();
        CliqueExpr {
            node: Node::Union(parts),
            vertices,
        }
    }

    pub fn join(a: CliqueExpr, b: CliqueExpr) -> Self {
        let vertices = a.vertices + b.vertices;
        CliqueExpr {
            node: Node::Join(Box::new(a), Box::new(b)),
            vertices,
        }
    }

    /// `k` disjoint copies of `e`.
    pub fn copies(k: usize, e: &CliqueExpr) -> Self {
        Self::union(vec![e.clone(); k])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Explicit adjacency on vertices `0..n`, laid out left to right.
    pub fn realize(&self) -> Vec<FixedBitSet> {
        let n = self.vertices;
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        self.fill(&mut adj, 0);
        adj
    }

    fn fill(&self, adj: &mut [FixedBitSet], offset: usize) {
        match &self.node {
            Node::Complete(s) => {
                for i in offset..offset + s {
                    for j in offset..offset + s {
                        if i != j {
                            adj[i].insert(j);
                        }
                    }
                }
            }
            Node::Empty(_) => {}
            Node::Union(parts) => {
                let mut at = offset;
                for p in parts {
                    p.fill(adj, at);
                    at += p.vertices;
                }
            }
            Node::Join(a, b) => {
                a.fill(adj, offset);
                b.fill(adj, offset + a.vertices);
                let split = offset + a.vertices;
                for i in offset..split {
                    for j in split..split + b.vertices {
                        adj[i].insert(j);
                        adj[j].insert(i);
                    }
                }
            }
        }
    }
}

impl fmt::Display for CliqueExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Complete(s) => write!(f, "K{s}"),
            Node::Empty(s) => write!(f, "E{s}"),
            Node::Union(parts) => {
                write!(f, "U(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Node::Join(a, b) => write!(f, "J({a},{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, SpectrumError> {
        Err(SpectrumError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SpectrumError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> Result<usize, SpectrumError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<usize>() {
            Ok(s) if s >= 1 => Ok(s),
            _ => {
                self.pos = start;
                self.err("expected a positive vertex count")
            }
        }
    }

    fn expr(&mut self) -> Result<CliqueExpr, SpectrumError> {
        self.skip_ws();
        let head = self.src.get(self.pos).copied();
        self.pos += 1;
        match head {
            Some(b'K') => Ok(CliqueExpr::complete(self.number()?)),
            Some(b'E') => Ok(CliqueExpr::empty(self.number()?)),
            Some(b'U') => {
                self.expect(b'(')?;
                let mut parts = vec![self.expr()?];
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            parts.push(self.expr()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(CliqueExpr::union(parts));
                        }
                        _ => return self.err("expected ',' or ')'"),
                    }
                }
            }
            Some(b'J') => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(CliqueExpr::join(a, b))
            }
            _ => {
                self.pos -= 1;
                self.err("expected K, E, U or J")
            }
        }
    }
}

impl FromStr for CliqueExpr {
    type Err = SpectrumError;

    /// Syntax: `K5`, `E3`, `U(e1,e2,…)`, `J(e1,e2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

/// Integral Laplacian spectrum as eigenvalue → multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LapSpectrum {
    eigen: BTreeMap<u64, usize>,
    vertices: usize,
}

impl LapSpectrum {
    pub fn from_values(values: &[u64]) -> Self {
        let mut eigen = BTreeMap::new();
        for &v in values {
            *eigen.entry(v).or_insert(0) += 1;
        }
        LapSpectrum {
            eigen,
            vertices: values.len(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn multiplicity(&self, value: u64) -> usize {
        self.eigen.get(&value).copied().unwrap_or(0)
    }

    pub fn largest(&self) -> u64 {
        self.eigen.keys().next_back().copied().unwrap_or(0)
    }

    /// `(value, multiplicity)` pairs, largest value first.
    pub fn pairs(&self) -> Vec<(u64, usize)> {
        self.eigen.iter().rev().map(|(&v, &m)| (v, m)).collect()
    }

    /// Eigenvalues in weakly decreasing order.
    pub fn values(&self) -> Vec<u64> {
        self.pairs()
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat(v).take(m))
            .collect()
    }

    fn add(&mut self, value: u64, mult: usize) {
        if mult > 0 {
            *self.eigen.entry(value).or_insert(0) += mult;
            self.vertices += mult;
        }
    }

    /// The spectrum with one zero removed and every value shifted.
    fn shifted_without_zero(&self, shift: u64) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.eigen.iter().filter_map(move |(&v, &m)| {
            let m = if v == 0 { m - 1 } else { m };
            (m > 0).then_some((v + shift, m))
        })
    }

    /// `∏ (μ + shift)^mult` over all eigenvalues but one zero.
    fn shifted_product(&self, shift: u64) -> BigNat {
        self.shifted_without_zero(shift)
            .fold(BigNat::one(), |acc, (v, m)| {
                acc * BigNat::from(v).pow(m as u32)
            })
    }
}

impl fmt::Display for LapSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .pairs()
            .iter()
            .map(|(v, m)| format!("{v}^{m}"))
            .collect();
        write!(f, "{}", terms.join(" "))
    }
}

pub fn spectrum(e: &CliqueExpr) -> LapSpectrum {
    let mut out = LapSpectrum {
        eigen: BTreeMap::new(),
        vertices: 0,
    };
    match &e.node {
        Node::Complete(s) => {
            out.add(*s as u64, s - 1);
            out.add(0, 1);
        }
        Node::Empty(s) => out.add(0, *s),
        Node::Union(parts) => {
            for p in parts {
                for (v, m) in spectrum(p).eigen {
                    out.add(v, m);
                }
            }
        }
        Node::Join(a, b) => {
            let (sa, sb) = (spectrum(a), spectrum(b));
            let (m, n) = (a.vertices as u64, b.vertices as u64);
            out.add(m + n, 1);
            for (v, k) in sa.shifted_without_zero(n) {
                out.add(v, k);
            }
            for (v, k) in sb.shifted_without_zero(m) {
                out.add(v, k);
            }
            out.add(0, 1);
        }
    }
    out
}

/// Tree number from the spectrum: product of the nonzero eigenvalues over
/// the vertex count; zero when the zero eigenvalue is repeated.
pub fn kappa_from_spectrum(s: &LapSpectrum) -> Result<BigNat, SpectrumError> {
    if s.multiplicity(0) != 1 {
        return Ok(BigNat::zero());
    }
    let (q, r) = s.shifted_product(0).div_rem(&BigNat::from(s.vertices));
    if !r.is_zero() {
        return Err(SpectrumError::NonIntegerResult);
    }
    Ok(q)
}

/// The Laplacian characteristic polynomial evaluated at `-m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaEval {
    pub m: u64,
    /// `σ(Γ; −m) = (−1)^n · m · ∏_{i<n} (μ_i + m)`.
    pub sigma: BigInt,
    /// `∏_{i<n} (μ_i + m)`: the shifted eigenvalues with one zero left out.
    pub shifted_product: BigNat,
}

impl SigmaEval {
    /// `m | σ(Γ; −m)`; always true since `c_n = 0`.
    pub fn sigma_divisible(&self) -> bool {
        (&self.sigma % BigInt::from(self.m)).is_zero()
    }

    /// `m | ∏_{i<n} (μ_i + m)`. This can fail: `K3` at `m = 2` gives `25`.
    pub fn shifted_product_divisible(&self) -> bool {
        (&self.shifted_product % BigNat::from(self.m)).is_zero()
    }
}

pub fn sigma_eval(s: &LapSpectrum, m: u64) -> SigmaEval {
    assert!(m >= 1);
    assert!(s.multiplicity(0) >= 1, "Laplacian spectra contain zero");
    let shifted_product = s.shifted_product(m);
    let mut sigma = BigInt::from(m) * BigInt::from(shifted_product.clone());
    if s.vertices % 2 == 1 {
        sigma = -sigma;
    }
    SigmaEval {
        m,
        sigma,
        shifted_product,
    }
}

/// `κ(G) = ∏ (μ_i + 1)` over the spectrum of `Δ(G)` with one zero left out,
/// for a centerless group.
pub fn kappa_centerless(delta: &LapSpectrum) -> BigNat {
    delta.shifted_product(1)
}
