use num_traits::Zero;

use super::{nontrivial_cosets, PartitionCertificate, PartitionError};
use crate::bignum::BigNat;
use crate::graph::full_commuting_graph;
use crate::group::{
    center, is_isomorphic_small, quotient, subgroup_table, sylow_subgroups, GroupTable, SmallGroup,
    Subgroup,
};
use crate::spectra::{kappa_from_spectrum, spectrum, CliqueExpr};

/// Outcome of the direct-product test for 2-block partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAbelianWitness {
    pub holds: bool,
    /// Sylow 2-subgroup `P`, when `|G|` is even.
    pub p: Option<Subgroup>,
    /// The elements of odd order, when they form a subgroup.
    pub q: Option<Subgroup>,
    /// `A = ⟨Z(G), t⟩` with two coset blocks, when `holds`.
    pub certificate: Option<PartitionCertificate>,
}

/// `G = P × Q` with `P` a Sylow 2-subgroup, `P/Z(P) ≅ Z2 × Z2` and `Q`
/// abelian.
pub fn classify_2_abelian(g: &GroupTable) -> Result<TwoAbelianWitness, PartitionError> {
    if g.is_abelian() {
        return Err(PartitionError::AbelianInput);
    }
    let mut out = TwoAbelianWitness {
        holds: false,
        p: None,
        q: None,
        certificate: None,
    };
    if g.order() % 2 != 0 {
        return Ok(out);
    }
    let p = sylow_subgroups(g, 2)?.swap_remove(0);
    let odd: Vec<usize> = g
        .elements()
        .filter(|&x| g.element_order(x) % 2 == 1)
        .collect();
    let q = Subgroup::from_elements(g, odd).ok();
    out.p = Some(p.clone());
    out.q = q.clone();
    let Some(q) = q else {
        return Ok(out);
    };
    let direct = q.is_abelian()
        && q.is_normal()
        && p.order() * q.order() == g.order()
        && p.elements()
            .iter()
            .all(|&x| q.elements().iter().all(|&y| g.commute(x, y)));
    if !direct {
        return Ok(out);
    }
    let pt = subgroup_table(g, &p);
    let pz = center(&pt);
    if !is_isomorphic_small(&quotient(&pt, &pz)?, SmallGroup::Z2xZ2)? {
        return Ok(out);
    }
    out.holds = true;

    let z = center(g);
    let t = g.elements().find(|&x| !z.contains(x)).expect("nonabelian");
    let mut gens = z.elements().to_vec();
    gens.push(t);
    let a = Subgroup::generated_by(g, &gens);
    let cert = PartitionCertificate::new(
        a.elements().to_vec(),
        nontrivial_cosets(g, &a)
            .into_iter()
            .flat_map(|c| split_by(g, &z, c))
            .collect(),
    );
    out.certificate = Some(
        cert.verified_in(g)
            .expect("Z-cosets outside ⟨Z, t⟩ form a 2-block partition"),
    );
    Ok(out)
}

/// Cosets of `z` inside `coset` (a coset of a larger subgroup).
fn split_by(g: &GroupTable, z: &Subgroup, coset: Vec<usize>) -> Vec<Vec<usize>> {
    let mut done = vec![false; g.order()];
    let mut out = Vec::new();
    for &x in &coset {
        if done[x] {
            continue;
        }
        let mut c: Vec<usize> = z.elements().iter().map(|&w| g.mul(w, x)).collect();
        c.sort_unstable();
        for &y in &c {
            done[y] = true;
        }
        out.push(c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeAbelianCase {
    /// `G/Z ≅ Z2 × Z2`
    A,
    /// `G/Z ≅ Z3 × Z3`
    B,
    /// `G/Z ≅ S3`
    C,
}

impl ThreeAbelianCase {
    pub fn tag(self) -> &'static str {
        match self {
            ThreeAbelianCase::A => "a",
            ThreeAbelianCase::B => "b",
            ThreeAbelianCase::C => "c",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeAbelianWitness {
    pub case: ThreeAbelianCase,
    pub center_order: usize,
    pub certificate: PartitionCertificate,
}

/// `|Z(G)| ≥ 2` and `G/Z(G)` is one of `Z2 × Z2`, `Z3 × Z3`, `S3`, with the
/// matching 3-block partition.
pub fn classify_3_abelian(g: &GroupTable) -> Result<Option<ThreeAbelianWitness>, PartitionError> {
    if g.is_abelian() {
        return Err(PartitionError::AbelianInput);
    }
    let z = center(g);
    let index = g.order() / z.order();
    if z.order() < 2 || !matches!(index, 4 | 6 | 9) {
        return Ok(None);
    }
    let gz = quotient(g, &z)?;
    let case = if is_isomorphic_small(&gz, SmallGroup::Z2xZ2)? {
        ThreeAbelianCase::A
    } else if is_isomorphic_small(&gz, SmallGroup::Z3xZ3)? {
        ThreeAbelianCase::B
    } else if is_isomorphic_small(&gz, SmallGroup::S3)? {
        ThreeAbelianCase::C
    } else {
        return Ok(None);
    };
    let with_center = |x: usize| {
        let mut gens = z.elements().to_vec();
        gens.push(x);
        Subgroup::generated_by(g, &gens)
    };
    let cert = match case {
        ThreeAbelianCase::A => {
            PartitionCertificate::new(z.elements().to_vec(), nontrivial_cosets(g, &z))
        }
        ThreeAbelianCase::B => {
            // ⟨Z, x⟩ for the four cyclic subgroups of G/Z.
            let mut subs: Vec<Subgroup> = Vec::new();
            for x in g.elements().filter(|&x| !z.contains(x)) {
                if !subs.iter().any(|s| s.contains(x)) {
                    subs.push(with_center(x));
                }
            }
            let a = subs.remove(0);
            let blocks = subs
                .iter()
                .map(|s| {
                    s.elements()
                        .iter()
                        .copied()
                        .filter(|&y| !z.contains(y))
                        .collect()
                })
                .collect();
            PartitionCertificate::new(a.elements().to_vec(), blocks)
        }
        ThreeAbelianCase::C => {
            let x = g
                .elements()
                .find(|&x| !z.contains(x) && z.contains(g.power(x, 3)))
                .expect("G/Z ≅ S3 has elements of order 3");
            let a = with_center(x);
            let blocks = nontrivial_cosets(g, &a)
                .into_iter()
                .flat_map(|c| split_by(g, &z, c))
                .collect();
            PartitionCertificate::new(a.elements().to_vec(), blocks)
        }
    };
    Ok(Some(ThreeAbelianWitness {
        case,
        center_order: z.order(),
        certificate: cert.verified_in(g).expect("classifier partition verifies"),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusWitness {
    /// The kernel: the elements of odd order, an abelian subgroup of index 2.
    pub h: Subgroup,
    /// `|H|^{|H|−2}`, confirmed against the spectrum of `K1 ∨ (K_{h−1} ⊕ E_h)`.
    pub kappa: BigNat,
}

/// A subgroup `H` with `C(G ∖ H)` edgeless, which makes `G` a Frobenius
/// group with abelian kernel `H` of odd order and complement `Z2`.
pub fn frobenius_empty_complement(g: &GroupTable) -> Option<FrobeniusWitness> {
    if g.is_abelian() {
        return None;
    }
    let odd: Vec<usize> = g
        .elements()
        .filter(|&x| g.element_order(x) % 2 == 1)
        .collect();
    let h = Subgroup::from_elements(g, odd).ok()?;
    if 2 * h.order() != g.order() {
        return None;
    }
    let outside: Vec<usize> = g.elements().filter(|&x| !h.contains(x)).collect();
    let edgeless = outside
        .iter()
        .enumerate()
        .all(|(i, &x)| outside[i + 1..].iter().all(|&y| !g.commute(x, y)));
    if !edgeless {
        return None;
    }
    let n = h.order();
    assert!(
        h.is_abelian() && n % 2 == 1,
        "kernel is abelian of odd order"
    );
    assert!(
        outside.iter().all(|&x| g.element_order(x) == 2),
        "outside elements are involutions"
    );

    // C(G) = K1 ∨ (K_{h−1} ⊕ E_h): degrees g−1, h−1 and 1.
    let graph = full_commuting_graph(g);
    for (i, &x) in graph.vertices().iter().enumerate() {
        let want = if x == 0 {
            g.order() - 1
        } else if h.contains(x) {
            n - 1
        } else {
            1
        };
        assert_eq!(
            graph.degree(i),
            want,
            "commuting graph has the kernel-plus-star shape"
        );
    }
    let model = if n == 1 {
        CliqueExpr::join(CliqueExpr::complete(1), CliqueExpr::empty(1))
    } else {
        CliqueExpr::join(
            CliqueExpr::complete(1),
            CliqueExpr::union(vec![CliqueExpr::complete(n - 1), CliqueExpr::empty(n)]),
        )
    };
    let kappa = kappa_from_spectrum(&spectrum(&model)).expect("integral spectrum");
    let closed = BigNat::from(n).pow(n.saturating_sub(2) as u32);
    assert!(!kappa.is_zero());
    assert_eq!(kappa, closed, "spectrum and |H|^(|H|-2) agree");
    Some(FrobeniusWitness { h, kappa })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_family, Family};

    fn fam(f: Family) -> GroupTable {
        make_family(&f).unwrap()
    }

    #[test]
    fn two_abelian_examples() {
        let q8 = classify_2_abelian(&fam(Family::Quaternion { k: 2 })).unwrap();
        assert!(q8.holds);
        let cert = q8.certificate.unwrap();
        assert_eq!((cert.n, cert.a.len()), (2, 4));
        assert!(
            !classify_2_abelian(&fam(Family::Dihedral { k: 6 }))
                .unwrap()
                .holds
        );
        assert!(
            !classify_2_abelian(&fam(Family::Symmetric { d: 3 }))
                .unwrap()
                .holds
        );
        assert_eq!(
            classify_2_abelian(&fam(Family::Cyclic { n: 4 })),
            Err(PartitionError::AbelianInput)
        );
    }

    #[test]
    fn three_abelian_cases() {
        let case = |f| classify_3_abelian(&fam(f)).unwrap().map(|w| w.case);
        assert_eq!(case(Family::Quaternion { k: 2 }), Some(ThreeAbelianCase::A));
        assert_eq!(case(Family::Dihedral { k: 6 }), Some(ThreeAbelianCase::C));
        assert_eq!(case(Family::Heisenberg { p: 3 }), Some(ThreeAbelianCase::B));
        assert_eq!(case(Family::Symmetric { d: 3 }), None);
        assert_eq!(case(Family::Dihedral { k: 8 }), None);
        let w = classify_3_abelian(&fam(Family::Heisenberg { p: 3 }))
            .unwrap()
            .unwrap();
        assert_eq!((w.certificate.n, w.certificate.a.len()), (3, 9));
    }

    #[test]
    fn frobenius_examples() {
        let s3 = frobenius_empty_complement(&fam(Family::Symmetric { d: 3 })).unwrap();
        assert_eq!((s3.h.order(), s3.kappa.clone()), (3, BigNat::from(3u32)));
        let d10 = frobenius_empty_complement(&fam(Family::Dihedral { k: 5 })).unwrap();
        assert_eq!(d10.kappa, BigNat::from(125u32));
        assert!(frobenius_empty_complement(&fam(Family::Quaternion { k: 2 })).is_none());
        assert!(frobenius_empty_complement(&fam(Family::Alternating { d: 4 })).is_none());
    }
}
