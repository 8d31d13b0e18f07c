//! Substructure predicates and enumeration.
//!
//! Every substructure kind is in particular an additive subgroup, so the
//! enumerator walks the subgroup lattice (grown from `{0}` one generator at
//! a time) and filters it with the kind's predicate. The empty set fails
//! every predicate.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::{FiniteNearring, OrderCap, Result, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealSide {
    Left,
    Right,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    Subgroup,
    NormalSubgroup,
    LeftNSubgroup,
    RightNSubgroup,
    LeftIdeal,
    RightIdeal,
    Ideal,
    QuasiIdeal,
    BiIdeal,
}

impl StructureKind {
    pub const ALL: [StructureKind; 9] = [
        StructureKind::Subgroup,
        StructureKind::NormalSubgroup,
        StructureKind::LeftNSubgroup,
        StructureKind::RightNSubgroup,
        StructureKind::LeftIdeal,
        StructureKind::RightIdeal,
        StructureKind::Ideal,
        StructureKind::QuasiIdeal,
        StructureKind::BiIdeal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Subgroup => "subgroup",
            StructureKind::NormalSubgroup => "normal-subgroup",
            StructureKind::LeftNSubgroup => "left-n-subgroup",
            StructureKind::RightNSubgroup => "right-n-subgroup",
            StructureKind::LeftIdeal => "left-ideal",
            StructureKind::RightIdeal => "right-ideal",
            StructureKind::Ideal => "ideal",
            StructureKind::QuasiIdeal => "quasi-ideal",
            StructureKind::BiIdeal => "bi-ideal",
        }
    }

    /// Evaluates this kind's predicate.
    pub fn holds(self, n: &FiniteNearring, s: &Subset) -> bool {
        match self {
            StructureKind::Subgroup => is_subgroup(n, s),
            StructureKind::NormalSubgroup => is_normal(n, s),
            StructureKind::LeftNSubgroup => is_n_subgroup(n, s, Side::Left),
            StructureKind::RightNSubgroup => is_n_subgroup(n, s, Side::Right),
            StructureKind::LeftIdeal => is_ideal(n, s, IdealSide::Left),
            StructureKind::RightIdeal => is_ideal(n, s, IdealSide::Right),
            StructureKind::Ideal => is_ideal(n, s, IdealSide::TwoSided),
            StructureKind::QuasiIdeal => is_quasi_ideal(n, s),
            StructureKind::BiIdeal => is_bi_ideal(n, s),
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        StructureKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| {
                let names: Vec<_> = StructureKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown structure kind `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// All substructures of one kind, sorted canonically and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureList {
    pub kind: StructureKind,
    pub members: Vec<Subset>,
}

impl StructureList {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.members.iter()
    }
}

fn is_ambient(n: &FiniteNearring, s: &Subset) -> bool {
    s.order() == n.order()
}

pub fn is_subgroup(n: &FiniteNearring, s: &Subset) -> bool {
    if !is_ambient(n, s) || !s.contains(0) {
        return false;
    }
    s.iter()
        .all(|a| s.contains(n.neg(a)) && s.iter().all(|b| s.contains(n.add(a, b))))
}

/// Subgroup closed under conjugation `-x + s + x`.
pub fn is_normal(n: &FiniteNearring, s: &Subset) -> bool {
    is_subgroup(n, s) && is_conjugation_closed(n, s)
}

fn is_conjugation_closed(n: &FiniteNearring, s: &Subset) -> bool {
    n.elements()
        .all(|x| s.iter().all(|e| s.contains(n.add(n.add(n.neg(x), e), x))))
}

fn left_absorbs(n: &FiniteNearring, s: &Subset) -> bool {
    n.elements().all(|x| s.iter().all(|e| s.contains(n.mul(x, e))))
}

fn right_absorbs(n: &FiniteNearring, s: &Subset) -> bool {
    s.iter().all(|e| n.elements().all(|x| s.contains(n.mul(e, x))))
}

/// `n1(n2 + s) - n1 n2 ∈ S` for all `s ∈ S` and `n1, n2 ∈ N`.
pub(crate) fn is_left_translation_closed(n: &FiniteNearring, s: &Subset) -> bool {
    n.elements().all(|n1| {
        n.elements().all(|n2| {
            let base = n.mul(n1, n2);
            s.iter().all(|e| s.contains(n.sub(n.mul(n1, n.add(n2, e)), base)))
        })
    })
}

/// Left (`NS ⊆ S`) or right (`SN ⊆ S`) N-subgroup.
pub fn is_n_subgroup(n: &FiniteNearring, s: &Subset, side: Side) -> bool {
    is_subgroup(n, s)
        && match side {
            Side::Left => left_absorbs(n, s),
            Side::Right => right_absorbs(n, s),
        }
}

/// Ideal conditions: a normal subgroup with `SN ⊆ S` (right), or with
/// `NS ⊆ S` and `n1(n2+s) - n1n2 ∈ S` (left), or all of them (two-sided).
pub fn is_ideal(n: &FiniteNearring, s: &Subset, side: IdealSide) -> bool {
    if !is_normal(n, s) {
        return false;
    }
    let left = || left_absorbs(n, s) && is_left_translation_closed(n, s);
    match side {
        IdealSide::Left => left(),
        IdealSide::Right => right_absorbs(n, s),
        IdealSide::TwoSided => right_absorbs(n, s) && left(),
    }
}

/// Subgroup with `QN ∩ NQ ⊆ Q`.
pub fn is_quasi_ideal(n: &FiniteNearring, q: &Subset) -> bool {
    if !is_subgroup(n, q) {
        return false;
    }
    let full = n.full();
    let qn = n.subset_product(q, &full);
    let nq = n.subset_product(&full, q);
    qn.intersection(&nq).is_subset_of(q)
}

/// Subgroup with `BNB ⊆ B`.
pub fn is_bi_ideal(n: &FiniteNearring, b: &Subset) -> bool {
    is_subgroup(n, b) && n.sandwich(b, b).is_subset_of(b)
}

/// Every additive subgroup, canonically ordered.
///
/// Starts at `{0}` and extends each subgroup found by one element outside
/// it, deduplicating on the bit-vector. Each breadth level is expanded in
/// parallel; the result is sorted, so it does not depend on scheduling.
pub fn enumerate_subgroups(n: &FiniteNearring, cap: OrderCap) -> Result<StructureList> {
    cap.check(n.order())?;
    let trivial = (n.zero_set(), Vec::<usize>::new());
    let mut seen: HashSet<Subset> = HashSet::from([trivial.0.clone()]);
    let mut frontier = vec![trivial];
    let mut members = vec![n.zero_set()];

    while !frontier.is_empty() {
        let children: Vec<(Subset, Vec<usize>)> = frontier
            .par_iter()
            .flat_map_iter(|(group, gens)| {
                n.elements().filter(|&g| !group.contains(g)).map(move |g| {
                    let mut next_gens = gens.clone();
                    next_gens.push(g);
                    (n.generated_subgroup(&next_gens), next_gens)
                })
            })
            .collect();
        frontier = Vec::new();
        for (group, gens) in children {
            if seen.insert(group.clone()) {
                members.push(group.clone());
                frontier.push((group, gens));
            }
        }
    }

    members.sort();
    Ok(StructureList {
        kind: StructureKind::Subgroup,
        members,
    })
}

/// Every substructure of the given kind, canonically ordered.
pub fn enumerate(n: &FiniteNearring, kind: StructureKind, cap: OrderCap) -> Result<StructureList> {
    let subgroups = enumerate_subgroups(n, cap)?;
    if kind == StructureKind::Subgroup {
        return Ok(subgroups);
    }
    Ok(filter(n, kind, &subgroups.members))
}

/// Filters an already enumerated subgroup list by a kind predicate.
pub fn filter(n: &FiniteNearring, kind: StructureKind, subgroups: &[Subset]) -> StructureList {
    let members = subgroups.par_iter().filter(|s| kind.holds(n, s)).cloned().collect();
    StructureList { kind, members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn s(order: usize, v: &[usize]) -> Subset {
        Subset::from_elements(order, v.iter().copied())
    }

    #[test]
    fn subgroup_examples() {
        let z6 = catalog::ring_as_nearring(6, OrderCap::DEFAULT).unwrap().nearring;
        assert!(is_subgroup(&z6, &s(6, &[0, 3])));
        assert!(!is_subgroup(&z6, &s(6, &[0, 1])));
        assert!(is_subgroup(&z6, &s(6, &[0])));
        assert!(!is_subgroup(&z6, &Subset::empty(6)));
        assert!(!is_subgroup(&z6, &s(4, &[0])));
    }

    #[test]
    fn normality_in_s3() {
        let s3 = catalog::zero_mul_nearring("zero(S3)", &catalog::groups::symmetric3())
            .unwrap()
            .nearring;
        // Index 1 is the transposition swapping the last two points.
        let transposition = s(6, &[0, 1]);
        assert!(is_subgroup(&s3, &transposition));
        assert!(!is_normal(&s3, &transposition));
        assert!(is_normal(&s3, &s(6, &[0, 3, 4])));
        assert!(is_normal(&s3, &s3.zero_set()));
        assert!(is_normal(&s3, &s3.full()));
    }

    #[test]
    fn n_subgroups() {
        let z6 = catalog::ring_as_nearring(6, OrderCap::DEFAULT).unwrap().nearring;
        let z4 = catalog::ring_as_nearring(4, OrderCap::DEFAULT).unwrap().nearring;
        let evens = s(6, &[0, 2, 4]);
        assert!(is_n_subgroup(&z6, &evens, Side::Left));
        assert!(is_n_subgroup(&z6, &evens, Side::Right));
        assert!(is_n_subgroup(&z6, &z6.full(), Side::Left));
        assert!(!is_n_subgroup(&z4, &s(4, &[0, 1]), Side::Left));
        assert!(!z4
            .subset_product(&z4.full(), &s(4, &[0, 1]))
            .is_subset_of(&s(4, &[0, 1])));
    }

    #[test]
    fn maps_fixing_zero_in_m_z2() {
        let m = catalog::transformation_nearring("M(Z2)", &catalog::groups::cyclic(2), OrderCap::DEFAULT)
            .unwrap()
            .nearring;
        // Index 0 is the zero map, index 2 the identity map.
        let fixing_zero = s(4, &[0, 2]);
        assert!(is_normal(&m, &fixing_zero));
        assert!(!is_n_subgroup(&m, &fixing_zero, Side::Left));
        assert!(!is_n_subgroup(&m, &fixing_zero, Side::Right));
        for side in [IdealSide::Left, IdealSide::Right, IdealSide::TwoSided] {
            assert!(!is_ideal(&m, &fixing_zero, side));
        }
        // N{0} is the set of constant maps, so {0} is not an ideal here.
        assert!(!is_ideal(&m, &m.zero_set(), IdealSide::TwoSided));
        assert!(is_ideal(&m, &m.zero_set(), IdealSide::Right));
        assert!(is_ideal(&m, &s(4, &[0, 3]), IdealSide::TwoSided));
    }

    #[test]
    fn quasi_and_bi_ideals() {
        let z6 = catalog::ring_as_nearring(6, OrderCap::DEFAULT).unwrap().nearring;
        for q in [z6.zero_set(), s(6, &[0, 3]), z6.full()] {
            assert!(is_quasi_ideal(&z6, &q));
        }
        assert!(is_bi_ideal(&z6, &s(6, &[0, 2, 4])));
        assert!(is_bi_ideal(&z6, &z6.zero_set()));
        assert!(!is_bi_ideal(&z6, &Subset::empty(6)));
    }

    #[test]
    fn ring_ideals() {
        let z6 = catalog::ring_as_nearring(6, OrderCap::DEFAULT).unwrap().nearring;
        for g in enumerate_subgroups(&z6, OrderCap::DEFAULT).unwrap().iter() {
            assert!(is_ideal(&z6, g, IdealSide::TwoSided));
        }
        let z4 = catalog::ring_as_nearring(4, OrderCap::DEFAULT).unwrap().nearring;
        let ideals = enumerate(&z4, StructureKind::Ideal, OrderCap::DEFAULT).unwrap();
        assert_eq!(ideals.members, vec![s(4, &[0]), s(4, &[0, 2]), z4.full()]);
    }

    #[test]
    fn subgroup_counts() {
        let cap = OrderCap::DEFAULT;
        let count = |m| {
            let n = catalog::ring_as_nearring(m, cap).unwrap().nearring;
            enumerate_subgroups(&n, cap).unwrap().len()
        };
        assert_eq!(count(6), 4);
        assert_eq!(count(4), 3);
        assert_eq!(count(1), 1);
        let z6 = catalog::ring_as_nearring(6, cap).unwrap().nearring;
        assert_eq!(
            enumerate_subgroups(&z6, cap).unwrap().members,
            vec![s(6, &[0]), s(6, &[0, 3]), s(6, &[0, 2, 4]), z6.full()]
        );
        assert_eq!(enumerate(&z6, StructureKind::BiIdeal, cap).unwrap().len(), 4);
    }

    #[test]
    fn order_cap_is_enforced() {
        let z8 = catalog::ring_as_nearring(8, OrderCap::DEFAULT).unwrap().nearring;
        assert!(matches!(
            enumerate_subgroups(&z8, OrderCap(4)),
            Err(crate::Error::OrderCapExceeded { order: 8, cap: 4 })
        ));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in StructureKind::ALL {
            assert_eq!(k.name().parse::<StructureKind>().unwrap(), k);
        }
        assert_eq!("bi_ideal".parse::<StructureKind>().unwrap(), StructureKind::BiIdeal);
        assert!("semi-ideal".parse::<StructureKind>().is_err());
    }
}
