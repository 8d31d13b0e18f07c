//! Shared instances for the criterion benchmarks.

use nearring_core::catalog::{self, groups};
use nearring_core::{FiniteNearring, OrderCap};

/// `M(Z3)`, the largest shipped instance (order 27).
pub fn m_z3() -> FiniteNearring {
    catalog::transformation_nearring("Z3", &groups::cyclic(3), OrderCap::DEFAULT)
        .expect("M(Z3) fits the default cap")
        .nearring
}

/// `Z2 × Z2 × Z2 × Z2 × Z2 × Z2` as a ring, order 64: the elementary abelian
/// group with the most subgroups under the default cap.
pub fn boolean_ring_64() -> FiniteNearring {
    let cap = OrderCap::DEFAULT;
    let z2 = catalog::ring_as_nearring(2, cap).unwrap().nearring;
    (1..6).fold(z2.clone(), |acc, _| {
        catalog::direct_product(&acc, &z2, "Z2^k", cap).unwrap().nearring
    })
}

pub fn ring(m: usize) -> FiniteNearring {
    catalog::ring_as_nearring(m, OrderCap::DEFAULT).unwrap().nearring
}
