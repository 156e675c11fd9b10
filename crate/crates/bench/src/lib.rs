//! Fixtures shared by the benchmarks.

use commtree::graph::{full_commuting_graph, CommGraph};
use commtree::group::{make_family, Family, GroupTable};

pub fn group(f: Family) -> GroupTable {
    make_family(&f).expect("fixture families build")
}

/// Groups for the determinant engines, smallest first.
pub fn determinant_fixtures() -> Vec<(String, CommGraph)> {
    [
        Family::Dihedral { k: 8 },
        Family::GL2 { q: 3 },
        Family::Alternating { d: 5 },
        Family::GL2 { q: 4 },
    ]
    .into_iter()
    .map(|f| {
        let g = group(f);
        (g.name().to_string(), full_commuting_graph(&g))
    })
    .collect()
}

/// AC-groups for the structural engine, including ones too large for a
/// determinant.
pub fn structural_fixtures() -> Vec<GroupTable> {
    [
        Family::GL2 { q: 4 },
        Family::L2 { k: 3 },
        Family::L2 { k: 4 },
    ]
    .into_iter()
    .map(group)
    .collect()
}
