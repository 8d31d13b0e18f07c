//! Subgroup-lattice enumeration against a powerset scan with independently
//! written predicates.

use nearring_core::substructures::enumerate;
use nearring_core::testing::Oracle;
use nearring_core::{standard_catalog, OrderCap, StructureKind};

#[test]
fn lattice_enumeration_matches_powerset_for_small_entries() {
    for entry in standard_catalog(8) {
        let oracle = Oracle::new(&entry.nearring);
        for kind in StructureKind::ALL {
            let expected = oracle.powerset_filter(kind);
            let mut got: Vec<Vec<usize>> = enumerate(&entry.nearring, kind, OrderCap::DEFAULT)
                .unwrap()
                .members
                .iter()
                .map(|s| s.to_vec())
                .collect();
            // Both sides are in increasing bit-mask order already.
            assert_eq!(got, expected, "{} / {kind}", entry.name);
            got.dedup();
            assert_eq!(got.len(), expected.len());
        }
    }
}

#[test]
fn pinned_counts() {
    let by_name = |name: &str| {
        standard_catalog(27)
            .into_iter()
            .find(|e| e.name == name)
            .unwrap()
            .nearring
    };
    let z6 = by_name("Z6");
    let z4 = by_name("Z4");
    let count = |n, k| enumerate(n, k, OrderCap::DEFAULT).unwrap().len();
    assert_eq!(count(&z6, StructureKind::BiIdeal), 4);
    assert_eq!(count(&z6, StructureKind::QuasiIdeal), 4);
    assert_eq!(count(&z4, StructureKind::Ideal), 3);
    assert_eq!(Oracle::new(&z6).powerset_filter(StructureKind::BiIdeal).len(), 4);
    assert_eq!(Oracle::new(&z4).powerset_filter(StructureKind::Ideal).len(), 3);

    // M(Z2): {0} is only a right ideal, since N{0} is the set of constant maps.
    let m = by_name("M(Z2)");
    let lists = |k| -> Vec<Vec<usize>> {
        enumerate(&m, k, OrderCap::DEFAULT)
            .unwrap()
            .members
            .iter()
            .map(|s| s.to_vec())
            .collect()
    };
    assert_eq!(lists(StructureKind::Subgroup).len(), 5);
    assert_eq!(lists(StructureKind::Ideal), vec![vec![0, 3], vec![0, 1, 2, 3]]);
    assert_eq!(
        lists(StructureKind::RightIdeal),
        vec![vec![0], vec![0, 3], vec![0, 1, 2, 3]]
    );
    assert_eq!(
        lists(StructureKind::BiIdeal),
        vec![vec![0], vec![0, 3], vec![0, 1, 2, 3]]
    );
}

#[test]
fn s3_normal_subgroups() {
    let s3 = standard_catalog(6)
        .into_iter()
        .find(|e| e.name == "zero(S3)")
        .unwrap()
        .nearring;
    let normal: Vec<Vec<usize>> = enumerate(&s3, StructureKind::NormalSubgroup, OrderCap::DEFAULT)
        .unwrap()
        .members
        .iter()
        .map(|s| s.to_vec())
        .collect();
    assert_eq!(normal, vec![vec![0], vec![0, 3, 4], vec![0, 1, 2, 3, 4, 5]]);
    assert_eq!(
        enumerate(&s3, StructureKind::Subgroup, OrderCap::DEFAULT)
            .unwrap()
            .len(),
        6
    );
}
