//! Regularity and P-regularity with per-element witness certificates.
//!
//! `N` is P-regular for an ideal `P` when every `x` has some `y` with
//! `xyx - x ∈ P`, the difference being evaluated as `(xy)x + (-x)`. The
//! search picks the smallest such `y` for every `x`, so certificates are
//! reproducible.

use rayon::prelude::*;
use serde::Serialize;

use crate::substructures::{self, IdealSide, StructureKind};
use crate::{Error, FiniteNearring, OrderCap, Result, Subset};

/// Whether P-regularity insists on a nearring with unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnityMode {
    /// Unity is not required; certificates record whether it was absent.
    #[default]
    Lenient,
    /// The nearring must have a unity, otherwise [`Error::NoUnity`].
    Strict,
}

/// `xyx - x = p` for one element `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementWitness {
    pub y: usize,
    pub p: usize,
}

/// Proof that a nearring is P-regular: one witness per element.
///
/// Only the search functions in this module construct certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    ideal: Subset,
    witnesses: Vec<ElementWitness>,
    unity_mode: UnityMode,
    /// Set when the lenient mode certified a nearring without unity.
    unity_missing: bool,
}

impl RegularityCertificate {
    pub fn ideal(&self) -> &Subset {
        &self.ideal
    }

    pub fn witnesses(&self) -> &[ElementWitness] {
        &self.witnesses
    }

    pub fn witness(&self, x: usize) -> ElementWitness {
        self.witnesses[x]
    }

    pub fn unity_mode(&self) -> UnityMode {
        self.unity_mode
    }

    /// Warning text when the certificate was issued without the unity the
    /// classical definition asks for.
    pub fn warning(&self) -> Option<&'static str> {
        self.unity_missing
            .then_some("nearring has no unity; certified in lenient mode")
    }

    /// Reuses these witnesses for a larger ideal `bigger ⊇ P`.
    pub fn transfer(&self, n: &FiniteNearring, bigger: &Subset) -> Result<RegularityCertificate> {
        n.check_subset(bigger)?;
        if !substructures::is_ideal(n, bigger, IdealSide::TwoSided) {
            return Err(Error::NotAnIdeal(bigger.clone()));
        }
        if !self.ideal.is_subset_of(bigger) {
            return Err(Error::InternalCheckFailed(format!(
                "cannot transfer a certificate for {} to {bigger}, which does not contain it",
                self.ideal
            )));
        }
        Ok(RegularityCertificate {
            ideal: bigger.clone(),
            ..self.clone()
        })
    }
}

/// Outcome of a regularity decision. Refutation is a result, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityVerdict {
    Certified(RegularityCertificate),
    /// The smallest element admitting no witness `y`.
    Refuted {
        element: usize,
    },
}

impl RegularityVerdict {
    pub fn certificate(&self) -> Option<&RegularityCertificate> {
        match self {
            RegularityVerdict::Certified(c) => Some(c),
            RegularityVerdict::Refuted { .. } => None,
        }
    }

    pub fn into_certificate(self) -> Option<RegularityCertificate> {
        match self {
            RegularityVerdict::Certified(c) => Some(c),
            RegularityVerdict::Refuted { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, RegularityVerdict::Certified(_))
    }
}

fn search<F>(n: &FiniteNearring, accept: F) -> std::result::Result<Vec<ElementWitness>, usize>
where
    F: Fn(usize, usize) -> Option<usize> + Sync,
{
    let found: Vec<Option<ElementWitness>> = n
        .elements()
        .into_par_iter()
        .map(|x| n.elements().find_map(|y| accept(x, y).map(|p| ElementWitness { y, p })))
        .collect();
    match found.iter().position(Option::is_none) {
        Some(x) => Err(x),
        None => Ok(found.into_iter().flatten().collect()),
    }
}

/// Von Neumann regularity: every `x` has a `y` with `xyx = x`.
pub fn is_regular(n: &FiniteNearring) -> RegularityVerdict {
    let outcome = search(n, |x, y| (n.mul(n.mul(x, y), x) == x).then_some(0));
    match outcome {
        Ok(witnesses) => RegularityVerdict::Certified(RegularityCertificate {
            ideal: n.zero_set(),
            witnesses,
            unity_mode: UnityMode::Lenient,
            unity_missing: n.unity().is_none(),
        }),
        Err(element) => RegularityVerdict::Refuted { element },
    }
}

/// P-regularity for a two-sided ideal `p`.
pub fn is_p_regular(n: &FiniteNearring, p: &Subset, mode: UnityMode) -> Result<RegularityVerdict> {
    n.check_subset(p)?;
    if !substructures::is_ideal(n, p, IdealSide::TwoSided) {
        return Err(Error::NotAnIdeal(p.clone()));
    }
    if mode == UnityMode::Strict && n.unity().is_none() {
        return Err(Error::NoUnity);
    }
    Ok(p_regular_unchecked(n, p, mode))
}

pub(crate) fn p_regular_unchecked(n: &FiniteNearring, p: &Subset, mode: UnityMode) -> RegularityVerdict {
    let outcome = search(n, |x, y| {
        let d = n.sub(n.mul(n.mul(x, y), x), x);
        p.contains(d).then_some(d)
    });
    match outcome {
        Ok(witnesses) => RegularityVerdict::Certified(RegularityCertificate {
            ideal: p.clone(),
            witnesses,
            unity_mode: mode,
            unity_missing: n.unity().is_none(),
        }),
        Err(element) => RegularityVerdict::Refuted { element },
    }
}

/// Every two-sided ideal `P` for which `n` is P-regular, canonically ordered.
pub fn find_p_regular_ideals(
    n: &FiniteNearring,
    mode: UnityMode,
    cap: OrderCap,
) -> Result<Vec<(Subset, RegularityCertificate)>> {
    if mode == UnityMode::Strict && n.unity().is_none() {
        return Err(Error::NoUnity);
    }
    let ideals = substructures::enumerate(n, StructureKind::Ideal, cap)?;
    Ok(ideals
        .members
        .into_iter()
        .filter_map(|p| {
            let cert = p_regular_unchecked(n, &p, mode).into_certificate()?;
            Some((p, cert))
        })
        .collect())
}

/// Elements `n'` with `n' m ∈ P` for a fixed `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LeftMultiplierWitness {
    /// Smallest qualifying `n'`; always 0, since `0m = 0`.
    pub smallest: usize,
    pub smallest_nonzero: Option<usize>,
}

/// For a P-regular nearring, finds `n'` with `n' m ∈ P`.
///
/// Returns `None` only if no element qualifies, which cannot happen in a
/// valid nearring.
pub fn left_multiplier_witness(
    n: &FiniteNearring,
    cert: &RegularityCertificate,
    m: usize,
) -> Result<Option<LeftMultiplierWitness>> {
    n.check_element(m)?;
    let p = cert.ideal();
    let mut hits = n.elements().filter(|&k| p.contains(n.mul(k, m)));
    let Some(smallest) = hits.next() else {
        return Ok(None);
    };
    let smallest_nonzero = if smallest == 0 { hits.next() } else { Some(smallest) };
    Ok(Some(LeftMultiplierWitness {
        smallest,
        smallest_nonzero,
    }))
}
