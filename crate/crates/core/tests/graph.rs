mod common;

use commtree::graph::{
    centralizer_core_abelian, centralizer_decomposition, commuting_graph, full_commuting_graph,
    independence_number, noncentral_graph, universal_vertices, GraphError,
};
use commtree::group::{catalog, center, make_family, Family, GroupTable};

fn fam(f: Family) -> GroupTable {
    make_family(&f).unwrap()
}

/// Sorted component sizes.
fn component_sizes(g: &commtree::graph::CommGraph) -> Vec<usize> {
    let mut s: Vec<usize> = g.components().iter().map(Vec::len).collect();
    s.sort_unstable();
    s
}

#[test]
fn commuting_graphs_match_the_table() {
    for f in catalog().into_iter().take(20) {
        let g = fam(f);
        assert!(
            common::same_graph(&common::commuting_adjacency(&g), &g),
            "{}",
            g.name()
        );
    }
}

#[test]
fn abelian_gives_complete() {
    let z4 = fam(Family::Cyclic { n: 4 });
    let c = full_commuting_graph(&z4);
    assert_eq!(c.edge_count(), 6);
    assert_eq!(
        universal_vertices(&full_commuting_graph(&fam(Family::Cyclic { n: 6 }))).len(),
        6
    );
}

#[test]
fn q8_noncentral_graph() {
    let q8 = fam(Family::Quaternion { k: 2 });
    let d = noncentral_graph(&q8);
    assert_eq!(d.vertex_count(), 6);
    assert_eq!(component_sizes(&d), vec![2, 2, 2]);
    assert!(d.components().iter().all(|c| d.is_clique(c)));
    assert_eq!(
        universal_vertices(&full_commuting_graph(&q8)),
        center(&q8).elements().to_vec()
    );
}

#[test]
fn l2_4_structure() {
    let g = fam(Family::L2 { k: 2 });
    assert_eq!(universal_vertices(&full_commuting_graph(&g)), vec![0]);
    let d = noncentral_graph(&g);
    let sizes = component_sizes(&d);
    let count = |s| sizes.iter().filter(|&&x| x == s).count();
    assert_eq!((count(3), count(2), count(4)), (5, 10, 6));
    assert_eq!(sizes.len(), 21);
    assert!(d.components().iter().all(|c| d.is_clique(c)));
}

#[test]
fn subset_graphs() {
    let s3 = fam(Family::Symmetric { d: 3 });
    let c = commuting_graph(&s3, &[1, 2, 3]).unwrap();
    assert_eq!(c.vertex_count(), 3);
    assert!(matches!(
        commuting_graph(&s3, &[0, 9]),
        Err(GraphError::UnknownElement(9))
    ));
}

#[test]
fn independence_numbers() {
    let s3 = fam(Family::Symmetric { d: 3 });
    let (nc, w) = independence_number(&full_commuting_graph(&s3)).unwrap();
    assert_eq!(nc, 4);
    // one rotation and the three reflections
    let orders: Vec<usize> = w.elements.iter().map(|&x| s3.element_order(x)).collect();
    assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
    assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 1);

    let q8 = fam(Family::Quaternion { k: 2 });
    let (nc, w) = independence_number(&full_commuting_graph(&q8)).unwrap();
    assert_eq!(nc, 3);
    assert!(w.elements.iter().all(|&x| q8.element_order(x) == 4));

    let k5 = full_commuting_graph(&fam(Family::Cyclic { n: 5 }));
    assert_eq!(independence_number(&k5).unwrap().0, 1);
}

/// Exhaustive maximum noncommuting set size over all subsets.
fn brute_nc(g: &GroupTable) -> usize {
    let n = g.order();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if set.len() <= best {
            continue;
        }
        if set
            .iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !g.commute(a, b)))
        {
            best = set.len();
        }
    }
    best
}

#[test]
fn independence_against_brute_force() {
    for f in [
        Family::Symmetric { d: 3 },
        Family::Dihedral { k: 4 },
        Family::Quaternion { k: 2 },
        Family::Dihedral { k: 5 },
        Family::Alternating { d: 4 },
        Family::Dihedral { k: 6 },
        Family::Quaternion { k: 4 },
        Family::Semidihedral { k: 4 },
    ] {
        let g = fam(f);
        assert_eq!(
            independence_number(&full_commuting_graph(&g)).unwrap().0,
            brute_nc(&g),
            "{}",
            g.name()
        );
    }
}

#[test]
fn abelian_core() {
    for f in [
        Family::Symmetric { d: 3 },
        Family::Quaternion { k: 2 },
        Family::Dihedral { k: 5 },
    ] {
        let g = fam(f);
        let (_, w) = independence_number(&full_commuting_graph(&g)).unwrap();
        assert!(centralizer_core_abelian(&g, &w).unwrap(), "{}", g.name());
    }
    let q8 = fam(Family::Quaternion { k: 2 });
    let (_, mut w) = independence_number(&full_commuting_graph(&q8)).unwrap();
    w.elements.pop();
    assert!(matches!(
        centralizer_core_abelian(&q8, &w),
        Err(GraphError::NotMaximumWitness)
    ));
}

#[test]
fn decompositions() {
    let q8 = centralizer_decomposition(&fam(Family::Quaternion { k: 2 })).unwrap();
    assert_eq!((q8.center_size, q8.t(), q8.sizes()), (2, 3, vec![2, 2, 2]));

    let l2 = centralizer_decomposition(&fam(Family::L2 { k: 2 })).unwrap();
    assert_eq!(l2.blocks, vec![(4, 6), (3, 5), (2, 10)]);
    assert_eq!(l2.t(), 21);

    let d10 = centralizer_decomposition(&fam(Family::Dihedral { k: 5 })).unwrap();
    assert_eq!(d10.t(), 6);
    assert_eq!(d10.blocks, vec![(4, 1), (1, 5)]);

    assert_eq!(
        centralizer_decomposition(&fam(Family::Symmetric { d: 4 })),
        Err(GraphError::NotACGroup)
    );
}

#[test]
fn decomposition_covers_the_noncentral_part() {
    for f in catalog() {
        let g = fam(f);
        let Ok(d) = centralizer_decomposition(&g) else {
            continue;
        };
        assert_eq!(
            d.sizes().iter().sum::<usize>() + d.center_size,
            g.order(),
            "{}",
            g.name()
        );
        for c in &d.cliques {
            assert!(c.iter().all(|&a| c.iter().all(|&b| g.commute(a, b))));
        }
        // distinct blocks never commute across
        for (i, a) in d.cliques.iter().enumerate() {
            for b in &d.cliques[i + 1..] {
                assert!(a.iter().all(|&x| b.iter().all(|&y| !g.commute(x, y))));
            }
        }
    }
}
