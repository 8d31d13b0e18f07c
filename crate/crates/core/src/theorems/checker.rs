use super::decompose::{self, DecompositionWitness};
use super::{Counterexample, Observation, TheoremId, TheoremReport, UnmetHypothesis, Verdict};
use crate::regularity::{self, left_multiplier_witness, RegularityVerdict, UnityMode};
use crate::substructures::{self, is_bi_ideal, IdealSide, StructureKind};
use crate::{verify, Error, FiniteNearring, OrderCap, RegularityCertificate, Result, Subset};

/// Checks statements about one nearring and one ideal `P`.
///
/// Construction decides once whether `P` is an ideal and whether the
/// nearring is P-regular; every check then reports `Inapplicable` if that
/// failed.
#[derive(Debug, Clone)]
pub struct TheoremChecker<'a> {
    n: &'a FiniteNearring,
    ideal: Subset,
    status: std::result::Result<RegularityCertificate, UnmetHypothesis>,
}

impl<'a> TheoremChecker<'a> {
    pub fn new(n: &'a FiniteNearring, p: &Subset, mode: UnityMode) -> Self {
        let status = match regularity::is_p_regular(n, p, mode) {
            Ok(RegularityVerdict::Certified(c)) => Ok(c),
            Ok(RegularityVerdict::Refuted { element }) => Err(UnmetHypothesis::NotPRegular { element }),
            Err(Error::NoUnity) => Err(UnmetHypothesis::NoUnity),
            Err(Error::OrderMismatch { found, .. }) => Err(UnmetHypothesis::WrongOrder { found }),
            Err(_) => Err(UnmetHypothesis::NotAnIdeal(p.clone())),
        };
        TheoremChecker {
            n,
            ideal: p.clone(),
            status,
        }
    }

    pub fn from_certificate(n: &'a FiniteNearring, cert: RegularityCertificate) -> Self {
        TheoremChecker {
            n,
            ideal: cert.ideal().clone(),
            status: Ok(cert),
        }
    }

    pub fn nearring(&self) -> &FiniteNearring {
        self.n
    }

    pub fn ideal(&self) -> &Subset {
        &self.ideal
    }

    pub fn certificate(&self) -> Option<&RegularityCertificate> {
        self.status.as_ref().ok()
    }

    pub fn unmet(&self) -> Option<&UnmetHypothesis> {
        self.status.as_ref().err()
    }

    fn report(&self, theorem: TheoremId, verdict: Verdict) -> TheoremReport {
        TheoremReport::new(theorem, verdict).with_ideal(&self.ideal)
    }

    /// Inapplicable report for when `P` itself disqualifies the instance.
    pub fn inapplicable(&self, theorem: TheoremId) -> Option<TheoremReport> {
        let h = self.unmet()?;
        Some(self.report(theorem, Verdict::Inapplicable(h.clone())))
    }

    #[allow(clippy::result_large_err)]
    fn gate(&self, theorem: TheoremId, sets: &[&Subset]) -> std::result::Result<&RegularityCertificate, TheoremReport> {
        let cert = match &self.status {
            Ok(c) => c,
            Err(h) => {
                return Err(self
                    .report(theorem, Verdict::Inapplicable(h.clone()))
                    .with_sets(sets.iter().copied()))
            }
        };
        if let Some(s) = sets.iter().find(|s| s.order() != self.n.order()) {
            return Err(self
                .report(
                    theorem,
                    Verdict::Inapplicable(UnmetHypothesis::WrongOrder { found: s.order() }),
                )
                .with_sets(sets.iter().copied()));
        }
        Ok(cert)
    }

    fn not_bi_ideal(&self, theorem: TheoremId, sets: &[&Subset]) -> Option<TheoremReport> {
        let bad = sets.iter().find(|b| !is_bi_ideal(self.n, b))?;
        Some(
            self.report(
                theorem,
                Verdict::Inapplicable(UnmetHypothesis::NotBiIdeal((*bad).clone())),
            )
            .with_sets(sets.iter().copied()),
        )
    }

    /// Some `n'` with `n'm ∈ P`; records the smallest nonzero one as well.
    pub fn left_multiplier(&self, m: usize) -> TheoremReport {
        let id = TheoremId::LeftMultiplier;
        let cert = match self.gate(id, &[]) {
            Ok(c) => c,
            Err(r) => return r.with_element(m),
        };
        match left_multiplier_witness(self.n, cert, m) {
            Ok(Some(w)) => self
                .report(id, Verdict::Holds)
                .with_element(m)
                .with_observation(Observation::LeftMultiplier(w)),
            Ok(None) => self
                .report(id, Verdict::Fails(Counterexample::Element(m)))
                .with_element(m),
            Err(_) => self
                .report(
                    id,
                    Verdict::Inapplicable(UnmetHypothesis::ElementOutOfRange { element: m }),
                )
                .with_element(m),
        }
    }

    /// `(P+R) ∩ (P+L) = P + RL`.
    pub fn ideal_product_identity(&self, r: &Subset, l: &Subset) -> TheoremReport {
        let id = TheoremId::IdealProductIdentity;
        let sets = [r, l];
        let p = match self.gate(id, &sets) {
            Ok(c) => c.ideal(),
            Err(rep) => return rep,
        };
        let n = self.n;
        let unmet = if !n.is_distributive() {
            Some(UnmetHypothesis::NotDistributive)
        } else if !substructures::is_ideal(n, r, IdealSide::Right) {
            Some(UnmetHypothesis::NotRightIdeal(r.clone()))
        } else if !substructures::is_ideal(n, l, IdealSide::Left) {
            Some(UnmetHypothesis::NotLeftIdeal(l.clone()))
        } else {
            None
        };
        if let Some(h) = unmet {
            return self.report(id, Verdict::Inapplicable(h)).with_sets(sets);
        }
        let lhs = n.subset_sum(p, r).intersection(&n.subset_sum(p, l));
        let rhs = n.subset_sum(p, &n.subset_product(r, l));
        self.report(id, equality_verdict(&lhs, &rhs)).with_sets(sets)
    }

    /// Decomposes `x ∈ B` as `p' + b'`.
    pub fn decompose_single(&self, block: &Subset, x: usize) -> Result<DecompositionWitness> {
        decompose::single(self.n, self.require_certificate()?, block, x)
    }

    /// Decomposes `b ∈ B1 ∩ B2` as `p + b1 x1 b2` and checks `b1 x1 b2 x P ⊆ P`.
    pub fn decompose_pair(&self, first: &Subset, second: &Subset, b: usize, x: usize) -> Result<DecompositionWitness> {
        decompose::pair(self.n, self.require_certificate()?, first, second, b, x)
    }

    /// Decomposes `b ∈ ⋂ blocks` along the whole family.
    pub fn decompose_chain(&self, blocks: &[Subset], b: usize, x: usize) -> Result<DecompositionWitness> {
        decompose::chain(self.n, self.require_certificate()?, blocks, b, x)
    }

    fn require_certificate(&self) -> Result<&RegularityCertificate> {
        self.status.as_ref().map_err(|h| Error::HypothesisViolation(h.clone()))
    }

    /// Decomposition report for every `x ∈ B`.
    pub fn single_decomposition_report(&self, block: &Subset) -> TheoremReport {
        let id = TheoremId::SingleDecomposition;
        if let Err(r) = self.gate(id, &[block]) {
            return r;
        }
        if let Some(r) = self.not_bi_ideal(id, &[block]) {
            return r;
        }
        let blocks = std::slice::from_ref(block);
        self.collect(id, blocks, block.iter().map(|x| (x, None)), |x, _| {
            self.decompose_single(block, x)
        })
    }

    /// Pair decomposition report for every `b ∈ B1 ∩ B2` and every `x ∈ N`.
    pub fn pair_decomposition_report(&self, first: &Subset, second: &Subset) -> TheoremReport {
        let id = TheoremId::PairDecomposition;
        let sets = [first, second];
        if let Err(r) = self.gate(id, &sets) {
            return r;
        }
        if !self.n.is_distributive() {
            return self
                .report(id, Verdict::Inapplicable(UnmetHypothesis::NotDistributive))
                .with_sets(sets);
        }
        if let Some(r) = self.not_bi_ideal(id, &sets) {
            return r;
        }
        let blocks = [first.clone(), second.clone()];
        let shared = first.intersection(second);
        let cases = shared
            .iter()
            .flat_map(|b| self.n.elements().map(move |x| (b, Some(x))))
            .collect::<Vec<_>>();
        self.collect(id, &blocks, cases, |b, x| {
            self.decompose_pair(first, second, b, x.unwrap())
        })
    }

    /// Chain decomposition report for every `b ∈ ⋂ blocks` and `x ∈ N`. For
    /// one and two blocks the witnesses must coincide with the single and
    /// pair constructions; a mismatch fails the report.
    pub fn chain_decomposition_report(&self, blocks: &[Subset]) -> Result<TheoremReport> {
        let id = TheoremId::ChainDecomposition;
        if blocks.is_empty() {
            return Err(Error::EmptyFamily { min: 1 });
        }
        let refs: Vec<&Subset> = blocks.iter().collect();
        if let Err(r) = self.gate(id, &refs) {
            return Ok(r);
        }
        if !self.n.is_distributive() {
            return Ok(self
                .report(id, Verdict::Inapplicable(UnmetHypothesis::NotDistributive))
                .with_sets(blocks));
        }
        if let Some(r) = self.not_bi_ideal(id, &refs) {
            return Ok(r);
        }
        let shared = Subset::intersect_all(blocks).expect("nonempty");
        let cases = shared
            .iter()
            .flat_map(|b| self.n.elements().map(move |x| (b, Some(x))))
            .collect::<Vec<_>>();
        Ok(self.collect(id, blocks, cases, |b, x| {
            let x = x.unwrap();
            let w = self.decompose_chain(blocks, b, x)?;
            let reference = match blocks {
                [one] => Some(self.decompose_single(one, b)?.with_parameter(self.n, &self.ideal, x)),
                [first, second] => Some(self.decompose_pair(first, second, b, x)?),
                _ => None,
            };
            match reference {
                Some(r) if r != w => Err(Error::InternalCheckFailed(format!(
                    "chain witness for {b} differs from the direct construction"
                ))),
                _ => Ok(w),
            }
        }))
    }

    fn collect<I, F>(&self, id: TheoremId, blocks: &[Subset], cases: I, build: F) -> TheoremReport
    where
        I: IntoIterator<Item = (usize, Option<usize>)>,
        F: Fn(usize, Option<usize>) -> Result<DecompositionWitness>,
    {
        let mut witnesses = Vec::new();
        for (b, x) in cases {
            let outcome = build(b, x).and_then(|w| {
                verify::decomposition(self.n, &self.ideal, blocks, &w)
                    .map(|_| w)
                    .map_err(Error::InternalCheckFailed)
            });
            match outcome {
                Ok(w) => witnesses.push(w),
                Err(Error::HypothesisViolation(h)) => {
                    return self.report(id, Verdict::Inapplicable(h)).with_sets(blocks);
                }
                Err(_) => {
                    let mut r = self
                        .report(id, Verdict::Fails(Counterexample::Element(b)))
                        .with_sets(blocks)
                        .with_element(b);
                    r.witnesses = witnesses;
                    return r;
                }
            }
        }
        let mut r = self.report(id, Verdict::Holds).with_sets(blocks);
        r.witnesses = witnesses;
        r
    }

    /// `P + B = P + BNB`.
    pub fn bi_ideal_absorption(&self, block: &Subset) -> TheoremReport {
        let id = TheoremId::BiIdealAbsorption;
        let p = match self.gate(id, &[block]) {
            Ok(c) => c.ideal(),
            Err(r) => return r,
        };
        if let Some(r) = self.not_bi_ideal(id, &[block]) {
            return r;
        }
        let n = self.n;
        let lhs = n.subset_sum(p, block);
        let rhs = n.subset_sum(p, &n.sandwich(block, block));
        self.report(id, equality_verdict(&lhs, &rhs)).with_sets([block])
    }

    /// `P + (B1 ∩ B2) ⊆ P + (B1NB2 ∩ B2NB1)`; strictness is recorded.
    pub fn pair_inclusion(&self, first: &Subset, second: &Subset) -> TheoremReport {
        let id = TheoremId::PairInclusion;
        let sets = [first, second];
        let p = match self.gate(id, &sets) {
            Ok(c) => c.ideal(),
            Err(r) => return r,
        };
        if let Some(r) = self.not_bi_ideal(id, &sets) {
            return r;
        }
        let n = self.n;
        let lhs = n.subset_sum(p, &first.intersection(second));
        let core = n.sandwich(first, second).intersection(&n.sandwich(second, first));
        let rhs = n.subset_sum(p, &core);
        self.inclusion_report(id, &lhs, &rhs).with_sets(sets)
    }

    /// `P + ⋂Bi ⊆ P + (B1NBn ∩ … ∩ B(n-1)NBn ∩ BnNB1 ∩ … ∩ BnNB(n-1))`.
    pub fn family_inclusion(&self, blocks: &[Subset]) -> Result<TheoremReport> {
        self.family_inclusion_with(blocks, |a, b| self.n.sandwich(&blocks[a], &blocks[b]))
    }

    /// As [`Self::family_inclusion`], with `sandwich(i, j) = Bi N Bj`
    /// supplied by the caller.
    pub(crate) fn family_inclusion_with<F>(&self, blocks: &[Subset], sandwich: F) -> Result<TheoremReport>
    where
        F: Fn(usize, usize) -> Subset,
    {
        let id = TheoremId::FamilyInclusion;
        if blocks.len() < 2 {
            return Err(Error::EmptyFamily { min: 2 });
        }
        let refs: Vec<&Subset> = blocks.iter().collect();
        let p = match self.gate(id, &refs) {
            Ok(c) => c.ideal(),
            Err(r) => return Ok(r),
        };
        if let Some(r) = self.not_bi_ideal(id, &refs) {
            return Ok(r);
        }
        let n = self.n;
        let last = blocks.len() - 1;
        let mut core = n.full();
        for i in 0..last {
            core = core.intersection(&sandwich(i, last)).intersection(&sandwich(last, i));
        }
        let shared = Subset::intersect_all(blocks).expect("nonempty");
        let lhs = n.subset_sum(p, &shared);
        let rhs = n.subset_sum(p, &core);
        Ok(self.inclusion_report(id, &lhs, &rhs).with_sets(blocks))
    }

    fn inclusion_report(&self, id: TheoremId, lhs: &Subset, rhs: &Subset) -> TheoremReport {
        match lhs.difference(rhs).iter().next() {
            Some(e) => self.report(id, Verdict::Fails(Counterexample::Element(e))),
            None => self
                .report(id, Verdict::Holds)
                .with_observation(Observation::StrictInclusion(lhs != rhs)),
        }
    }
}

fn equality_verdict(lhs: &Subset, rhs: &Subset) -> Verdict {
    match lhs.symmetric_difference(rhs).iter().next() {
        Some(e) => Verdict::Fails(Counterexample::Element(e)),
        None => Verdict::Holds,
    }
}

/// `{0}`-regularity implies regularity.
pub fn check_zero_regular_implies_regular(n: &FiniteNearring) -> TheoremReport {
    let id = TheoremId::ZeroRegularImpliesRegular;
    let zero = n.zero_set();
    let base = TheoremReport::new(id, Verdict::Holds).with_ideal(&zero);
    // {0} need not be an ideal (e.g. when N{0} ≠ {0}); then N is not
    // {0}-regular and the implication holds vacuously.
    if !substructures::is_ideal(n, &zero, IdealSide::TwoSided) {
        return base;
    }
    let premise = regularity::p_regular_unchecked(n, &n.zero_set(), UnityMode::Lenient);
    match (premise, regularity::is_regular(n)) {
        (RegularityVerdict::Certified(_), RegularityVerdict::Refuted { element }) => TheoremReport {
            verdict: Verdict::Fails(Counterexample::Element(element)),
            ..base
        },
        _ => base,
    }
}

/// The intersection of a nonempty family of bi-ideals is a bi-ideal.
pub fn check_bi_ideal_intersection(n: &FiniteNearring, family: &[Subset]) -> Result<TheoremReport> {
    let id = TheoremId::BiIdealIntersection;
    for b in family {
        n.check_subset(b)?;
        if !is_bi_ideal(n, b) {
            return Err(Error::NotABiIdeal(b.clone()));
        }
    }
    let meet = Subset::intersect_all(family).ok_or(Error::EmptyFamily { min: 1 })?;
    let verdict = if is_bi_ideal(n, &meet) {
        Verdict::Holds
    } else {
        Verdict::Fails(Counterexample::Subset(meet.clone()))
    };
    Ok(TheoremReport::new(id, verdict)
        .with_sets(family)
        .with_observation(Observation::Intersection(meet)))
}

/// Every quasi-ideal is a bi-ideal.
pub fn check_quasi_implies_bi(n: &FiniteNearring, cap: OrderCap) -> Result<TheoremReport> {
    let quasi = substructures::enumerate(n, StructureKind::QuasiIdeal, cap)?;
    Ok(quasi_implies_bi_over(n, &quasi.members))
}

pub(crate) fn quasi_implies_bi_over(n: &FiniteNearring, quasi: &[Subset]) -> TheoremReport {
    let verdict = match quasi.iter().find(|q| !is_bi_ideal(n, q)) {
        Some(q) => Verdict::Fails(Counterexample::Subset(q.clone())),
        None => Verdict::Holds,
    };
    TheoremReport::new(TheoremId::QuasiIdealIsBiIdeal, verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ring(m: usize) -> FiniteNearring {
        catalog::ring_as_nearring(m, OrderCap::DEFAULT).unwrap().nearring
    }

    fn s(order: usize, v: &[usize]) -> Subset {
        Subset::from_elements(order, v.iter().copied())
    }

    #[test]
    fn lemma_on_small_rings() {
        assert!(check_zero_regular_implies_regular(&ring(6)).verdict.is_holds());
        assert!(check_zero_regular_implies_regular(&ring(4)).verdict.is_holds());
        assert!(check_zero_regular_implies_regular(&ring(1)).verdict.is_holds());
    }

    #[test]
    fn intersections() {
        let z6 = ring(6);
        let r = check_bi_ideal_intersection(&z6, &[s(6, &[0, 3]), s(6, &[0, 2, 4])]).unwrap();
        assert!(r.verdict.is_holds());
        assert_eq!(r.observation, Some(Observation::Intersection(z6.zero_set())));
        let b = s(6, &[0, 2, 4]);
        let r = check_bi_ideal_intersection(&z6, &[b.clone(), z6.full()]).unwrap();
        assert_eq!(r.observation, Some(Observation::Intersection(b)));
        assert!(matches!(
            check_bi_ideal_intersection(&z6, &[s(6, &[0, 1])]),
            Err(Error::NotABiIdeal(_))
        ));
        assert!(matches!(
            check_bi_ideal_intersection(&z6, &[]),
            Err(Error::EmptyFamily { .. })
        ));
    }

    #[test]
    fn ideal_product_identity() {
        let z6 = ring(6);
        let c = TheoremChecker::new(&z6, &z6.zero_set(), UnityMode::Lenient);
        let evens = s(6, &[0, 2, 4]);
        assert!(c.ideal_product_identity(&evens, &evens).verdict.is_holds());

        let z4 = ring(4);
        let c = TheoremChecker::new(&z4, &s(4, &[0, 2]), UnityMode::Lenient);
        let half = s(4, &[0, 2]);
        assert!(c.ideal_product_identity(&half, &half).verdict.is_holds());
        let c = TheoremChecker::new(&z4, &z4.full(), UnityMode::Lenient);
        assert!(c.ideal_product_identity(&half, &z4.zero_set()).verdict.is_holds());

        let c = TheoremChecker::new(&z4, &z4.zero_set(), UnityMode::Lenient);
        assert_eq!(
            c.ideal_product_identity(&half, &half).verdict,
            Verdict::Inapplicable(UnmetHypothesis::NotPRegular { element: 2 })
        );
    }

    #[test]
    fn single_decompositions() {
        let z4 = ring(4);
        let c = TheoremChecker::new(&z4, &s(4, &[0, 2]), UnityMode::Lenient);
        let w = c.decompose_single(&s(4, &[0, 2]), 2).unwrap();
        assert_eq!((w.p, w.chain.clone()), (2, vec![0]));
        let w = c.decompose_single(&s(4, &[0, 2]), 0).unwrap();
        assert_eq!((w.p, w.chain.clone()), (0, vec![0]));
        assert!(matches!(
            c.decompose_single(&s(4, &[0, 2]), 1),
            Err(Error::HypothesisViolation(UnmetHypothesis::NotAMember { .. }))
        ));

        let z6 = ring(6);
        let c = TheoremChecker::new(&z6, &z6.zero_set(), UnityMode::Lenient);
        let w = c.decompose_single(&s(6, &[0, 2, 4]), 2).unwrap();
        assert_eq!((w.p, w.chain), (0, vec![2]));
    }

    #[test]
    fn pair_decompositions() {
        let z6 = ring(6);
        let c = TheoremChecker::new(&z6, &s(6, &[0, 2, 4]), UnityMode::Lenient);
        let w = c.decompose_pair(&z6.full(), &z6.full(), 3, 1).unwrap();
        assert_eq!(w.p, 0);
        assert_eq!(w.chain, vec![3, 1, 3]);
        assert_eq!(w.containment_verified, Some(true));

        let c = TheoremChecker::new(&z6, &z6.zero_set(), UnityMode::Lenient);
        let w = c.decompose_pair(&s(6, &[0, 2, 4]), &s(6, &[0, 3]), 0, 5).unwrap();
        assert_eq!((w.p, w.chain), (0, vec![0, 0, 0]));
    }

    #[test]
    fn non_distributive_instances_refuse_expansions() {
        let m = catalog::transformation_nearring("Z2", &catalog::groups::cyclic(2), OrderCap::DEFAULT)
            .unwrap()
            .nearring;
        let c = TheoremChecker::new(&m, &m.full(), UnityMode::Lenient);
        assert!(matches!(
            c.decompose_pair(&m.full(), &m.full(), 1, 0),
            Err(Error::HypothesisViolation(UnmetHypothesis::NotDistributive))
        ));
        assert_eq!(
            c.ideal_product_identity(&m.full(), &m.full()).verdict,
            Verdict::Inapplicable(UnmetHypothesis::NotDistributive)
        );
        assert!(c.single_decomposition_report(&m.full()).verdict.is_holds());
    }

    #[test]
    fn chain_decomposition_of_three_blocks() {
        let z6 = ring(6);
        let c = TheoremChecker::new(&z6, &s(6, &[0, 2, 4]), UnityMode::Lenient);
        let blocks = vec![z6.full(); 3];
        let w = c.decompose_chain(&blocks, 3, 1).unwrap();
        assert_eq!(w.block_count(), 3);
        assert_eq!(z6.add(w.p, w.chain_product(&z6)), 3);
        assert_eq!(w.containment_verified, Some(true));
        assert!(matches!(c.decompose_chain(&[], 3, 1), Err(Error::EmptyFamily { .. })));
    }

    #[test]
    fn set_identities() {
        let z4 = ring(4);
        let half = s(4, &[0, 2]);
        let c = TheoremChecker::new(&z4, &half, UnityMode::Lenient);
        assert!(c.bi_ideal_absorption(&half).verdict.is_holds());
        assert!(c.bi_ideal_absorption(&z4.zero_set()).verdict.is_holds());

        let z6 = ring(6);
        let c = TheoremChecker::new(&z6, &z6.zero_set(), UnityMode::Lenient);
        let r = c.pair_inclusion(&s(6, &[0, 2, 4]), &s(6, &[0, 3]));
        assert!(r.verdict.is_holds());
        assert_eq!(r.observation, Some(Observation::StrictInclusion(false)));

        let c = TheoremChecker::new(&z6, &s(6, &[0, 3]), UnityMode::Lenient);
        let blocks = [s(6, &[0, 2, 4]), s(6, &[0, 2, 4]), z6.full()];
        assert!(c.family_inclusion(&blocks).unwrap().verdict.is_holds());
        assert!(matches!(
            c.family_inclusion(&blocks[..1]),
            Err(Error::EmptyFamily { min: 2 })
        ));
        let two = c.family_inclusion(&blocks[..2]).unwrap();
        let pair = c.pair_inclusion(&blocks[0], &blocks[1]);
        assert_eq!((two.verdict, two.observation), (pair.verdict, pair.observation));
    }
}
