//! Finite nearrings represented by their Cayley tables.
//!
//! A nearring is a group under `+` (not necessarily abelian), a semigroup
//! under `*`, and satisfies right distributivity `(a+b)c = ac + bc`. This
//! crate validates such tables, enumerates their substructures (N-subgroups,
//! ideals, quasi-ideals and bi-ideals), decides P-regularity with explicit
//! witness certificates, and checks the bi-ideal characterisations of
//! P-regular nearrings on concrete instances.
//!
//! Elements are indices `0..n`, index 0 always being the additive identity.
//! Subsets of a nearring are bit-vectors ([`Subset`]), and every set identity
//! is evaluated on raw elementwise sums and products, never on their closures.

pub mod catalog;
mod error;
pub mod io;
mod nearring;
pub mod regularity;
mod subset;
pub mod substructures;
pub mod theorems;
pub mod verify;

#[cfg(feature = "testing")]
pub mod testing;

pub use catalog::{standard_catalog, CatalogEntry};
pub use error::{Error, Result};
pub use nearring::{validate_nearring, Axiom, FiniteNearring, Violation, ViolationReport};
pub use regularity::{RegularityCertificate, RegularityVerdict, UnityMode};
pub use subset::Subset;
pub use substructures::{IdealSide, Side, StructureKind, StructureList};
pub use theorems::{DecompositionWitness, TheoremChecker, TheoremId, TheoremReport, Verdict};

/// Environment variable overriding [`OrderCap::default`].
pub const ORDER_CAP_ENV: &str = "NEARRING_ORDER_CAP";

/// Largest nearring order accepted by the enumerators and constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderCap(pub usize);

impl OrderCap {
    pub const DEFAULT: OrderCap = OrderCap(64);

    /// Reads [`ORDER_CAP_ENV`], falling back to the default when it is unset
    /// or does not parse as a positive integer.
    pub fn from_env() -> Self {
        std::env::var(ORDER_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .map(OrderCap)
            .unwrap_or_default()
    }

    pub fn check(self, order: usize) -> Result<()> {
        if order > self.0 {
            Err(Error::OrderCapExceeded { order, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for OrderCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}
