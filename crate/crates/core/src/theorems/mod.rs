//! Checks of the bi-ideal characterisations of P-regular nearrings on
//! concrete instances.
//!
//! Set identities are compared as exact bit-vectors over raw elementwise
//! sums and products. Decomposition statements are checked by building the
//! explicit witnesses (`b = p + b1 x1 b2 … bn`) and re-evaluating them with
//! the independent verifier in [`crate::verify`].
//!
//! A check whose hypotheses are not met reports [`Verdict::Inapplicable`]
//! naming the failed hypothesis; it never extrapolates.

mod checker;
mod decompose;
mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::regularity::LeftMultiplierWitness;
use crate::Subset;

pub use checker::{
    check_bi_ideal_intersection, check_quasi_implies_bi, check_zero_regular_implies_regular, TheoremChecker,
};
pub use decompose::DecompositionWitness;
pub use suite::{run_full_suite, SuiteOptions, SuiteReport, SummaryRow};

/// The statements this crate checks. The CLI addresses them by label
/// (`2.1` … `3.8`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// `{0}`-regular implies regular.
    ZeroRegularImpliesRegular,
    /// Intersections of bi-ideals are bi-ideals.
    BiIdealIntersection,
    /// Every quasi-ideal is a bi-ideal.
    QuasiIdealIsBiIdeal,
    /// Every `m` has some `n'` with `n'm ∈ P`.
    LeftMultiplier,
    /// `(P+R) ∩ (P+L) = P + RL` for right ideals `R`, left ideals `L`.
    IdealProductIdentity,
    /// `x = p' + b'` with `p' ∈ P`, `b' ∈ B`.
    SingleDecomposition,
    /// `b = p + b1 x1 b2` with `b1 x1 b2 x P ⊆ P`.
    PairDecomposition,
    /// `b = p + b1 x1 … x(n-1) bn` with the chain product times `xP` inside `P`.
    ChainDecomposition,
    /// `P + B = P + BNB`.
    BiIdealAbsorption,
    /// `P + (B1 ∩ B2) ⊆ P + (B1NB2 ∩ B2NB1)`.
    PairInclusion,
    /// `P + ⋂Bi ⊆ P + (⋂ BiNBn ∩ ⋂ BnNBi)`.
    FamilyInclusion,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::ZeroRegularImpliesRegular,
        TheoremId::BiIdealIntersection,
        TheoremId::QuasiIdealIsBiIdeal,
        TheoremId::LeftMultiplier,
        TheoremId::IdealProductIdentity,
        TheoremId::SingleDecomposition,
        TheoremId::PairDecomposition,
        TheoremId::ChainDecomposition,
        TheoremId::BiIdealAbsorption,
        TheoremId::PairInclusion,
        TheoremId::FamilyInclusion,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::ZeroRegularImpliesRegular => "2.1",
            TheoremId::BiIdealIntersection => "2.2",
            TheoremId::QuasiIdealIsBiIdeal => "2.4",
            TheoremId::LeftMultiplier => "3.1",
            TheoremId::IdealProductIdentity => "3.2",
            TheoremId::SingleDecomposition => "3.3",
            TheoremId::PairDecomposition => "3.4",
            TheoremId::ChainDecomposition => "3.5",
            TheoremId::BiIdealAbsorption => "3.6",
            TheoremId::PairInclusion => "3.7",
            TheoremId::FamilyInclusion => "3.8",
        }
    }

    /// Whether the statement is about a fixed ideal `P`.
    pub fn depends_on_ideal(self) -> bool {
        !matches!(
            self,
            TheoremId::ZeroRegularImpliesRegular | TheoremId::BiIdealIntersection | TheoremId::QuasiIdealIsBiIdeal
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        // 2.3 is the finite-family form of 2.2.
        if s == "2.3" {
            return Ok(TheoremId::BiIdealIntersection);
        }
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| format!("unknown theorem `{s}` (expected 2.1-2.4 or 3.1-3.8)"))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

/// The hypothesis that made a check inapplicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnmetHypothesis {
    NotAnIdeal(Subset),
    NotPRegular { element: usize },
    NoUnity,
    NotDistributive,
    NotRightIdeal(Subset),
    NotLeftIdeal(Subset),
    NotBiIdeal(Subset),
    NotAMember { element: usize, set: Subset },
    ElementOutOfRange { element: usize },
    WrongOrder { found: usize },
}

impl fmt::Display for UnmetHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnmetHypothesis::NotAnIdeal(p) => write!(f, "P = {p} is not an ideal"),
            UnmetHypothesis::NotPRegular { element } => {
                write!(f, "not P-regular (no witness for element {element})")
            }
            UnmetHypothesis::NoUnity => f.write_str("no unity (strict unity mode)"),
            UnmetHypothesis::NotDistributive => f.write_str("not distributive"),
            UnmetHypothesis::NotRightIdeal(s) => write!(f, "{s} is not a right ideal"),
            UnmetHypothesis::NotLeftIdeal(s) => write!(f, "{s} is not a left ideal"),
            UnmetHypothesis::NotBiIdeal(s) => write!(f, "{s} is not a bi-ideal"),
            UnmetHypothesis::NotAMember { element, set } => write!(f, "{element} is not in {set}"),
            UnmetHypothesis::ElementOutOfRange { element } => write!(f, "element {element} out of range"),
            UnmetHypothesis::WrongOrder { found } => write!(f, "subset has the wrong ambient order {found}"),
        }
    }
}

impl Serialize for UnmetHypothesis {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Counterexample {
    Element(usize),
    Subset(Subset),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
    Inapplicable(UnmetHypothesis),
}

impl Verdict {
    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn is_inapplicable(&self) -> bool {
        matches!(self, Verdict::Inapplicable(_))
    }
}

/// Informational data attached to a report. Never affects the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Observation {
    /// Whether an inclusion was strict.
    StrictInclusion(bool),
    LeftMultiplier(LeftMultiplierWitness),
    Intersection(Subset),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Subset>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observation: Option<Observation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<DecompositionWitness>,
}

impl TheoremReport {
    pub(crate) fn new(theorem: TheoremId, verdict: Verdict) -> Self {
        TheoremReport {
            theorem,
            ideal: None,
            sets: Vec::new(),
            element: None,
            verdict,
            observation: None,
            witnesses: Vec::new(),
        }
    }

    pub(crate) fn with_ideal(mut self, p: &Subset) -> Self {
        self.ideal = Some(p.clone());
        self
    }

    pub(crate) fn with_sets<'a>(mut self, sets: impl IntoIterator<Item = &'a Subset>) -> Self {
        self.sets = sets.into_iter().cloned().collect();
        self
    }

    pub(crate) fn with_element(mut self, e: usize) -> Self {
        self.element = Some(e);
        self
    }

    pub(crate) fn with_observation(mut self, o: Observation) -> Self {
        self.observation = Some(o);
        self
    }
}
