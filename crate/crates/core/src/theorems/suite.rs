use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::checker::{check_bi_ideal_intersection, check_zero_regular_implies_regular, quasi_implies_bi_over};
use super::{TheoremChecker, TheoremId, TheoremReport, UnmetHypothesis, Verdict};
use crate::regularity::{find_p_regular_ideals, UnityMode};
use crate::substructures::{self, StructureKind};
use crate::{FiniteNearring, OrderCap, Result, Subset};

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub mode: UnityMode,
    pub cap: OrderCap,
    /// Restricts the run to these statements; `None` runs all of them.
    pub only: Option<Vec<TheoremId>>,
    /// Longest block family for the chain decomposition and the family
    /// inclusion (at least 2).
    pub max_family: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            mode: UnityMode::Lenient,
            cap: OrderCap::default(),
            only: None,
            max_family: 3,
        }
    }
}

impl SuiteOptions {
    fn wants(&self, id: TheoremId) -> bool {
        self.only.as_ref().is_none_or(|ids| ids.contains(&id))
    }
}

/// Verdict counts per statement and ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Subset>,
    pub holds: usize,
    pub inapplicable: usize,
    pub fails: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    /// The ideals `P` the P-dependent statements were run against.
    pub ideals: Vec<Subset>,
    pub reports: Vec<TheoremReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremReport> {
        self.reports.iter().filter(|r| r.verdict.is_fails())
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut rows: BTreeMap<(TheoremId, Option<Subset>), SummaryRow> = BTreeMap::new();
        for r in &self.reports {
            let row = rows.entry((r.theorem, r.ideal.clone())).or_insert_with(|| SummaryRow {
                theorem: r.theorem,
                ideal: r.ideal.clone(),
                holds: 0,
                inapplicable: 0,
                fails: 0,
            });
            match r.verdict {
                Verdict::Holds => row.holds += 1,
                Verdict::Inapplicable(_) => row.inapplicable += 1,
                Verdict::Fails(_) => row.fails += 1,
            }
        }
        rows.into_values().collect()
    }
}

/// Runs every applicable check over all substructures of `n`.
///
/// With `ideal = None` the P-dependent statements run for every P from
/// [`find_p_regular_ideals`]; with an explicit ideal that is not usable they
/// are reported inapplicable. Block families range over the bi-ideals:
/// unordered pairs and triples for intersections and the pair inclusion,
/// ordered tuples for the decompositions and the family inclusion.
pub fn run_full_suite(n: &FiniteNearring, ideal: Option<&Subset>, options: &SuiteOptions) -> Result<SuiteReport> {
    let subgroups = substructures::enumerate_subgroups(n, options.cap)?;
    let bi = substructures::filter(n, StructureKind::BiIdeal, &subgroups.members).members;
    let mut reports = Vec::new();

    if options.wants(TheoremId::ZeroRegularImpliesRegular) {
        reports.push(check_zero_regular_implies_regular(n));
    }
    if options.wants(TheoremId::BiIdealIntersection) {
        let k = bi.len();
        let mut families: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                families.push(vec![i, j]);
                for l in j + 1..k {
                    families.push(vec![i, j, l]);
                }
            }
        }
        let found: Vec<TheoremReport> = families
            .par_iter()
            .map(|f| {
                let family: Vec<Subset> = f.iter().map(|&i| bi[i].clone()).collect();
                check_bi_ideal_intersection(n, &family).expect("members are bi-ideals")
            })
            .collect();
        reports.extend(found);
    }
    if options.wants(TheoremId::QuasiIdealIsBiIdeal) {
        let quasi = substructures::filter(n, StructureKind::QuasiIdeal, &subgroups.members);
        reports.push(quasi_implies_bi_over(n, &quasi.members));
    }

    let checkers: Vec<TheoremChecker<'_>> = match ideal {
        Some(p) => vec![TheoremChecker::new(n, p, options.mode)],
        None => find_p_regular_ideals(n, options.mode, options.cap)?
            .into_iter()
            .map(|(_, cert)| TheoremChecker::from_certificate(n, cert))
            .collect(),
    };
    let ideals = checkers.iter().map(|c| c.ideal().clone()).collect();

    let left = substructures::filter(n, StructureKind::LeftIdeal, &subgroups.members).members;
    let right = substructures::filter(n, StructureKind::RightIdeal, &subgroups.members).members;
    let ctx = Context {
        n,
        bi: &bi,
        left: &left,
        right: &right,
        sandwiches: sandwich_table(n, &bi),
        options,
    };
    for checker in &checkers {
        reports.extend(ctx.run_for_ideal(checker)?);
    }

    Ok(SuiteReport { ideals, reports })
}

struct Context<'a> {
    n: &'a FiniteNearring,
    bi: &'a [Subset],
    left: &'a [Subset],
    right: &'a [Subset],
    /// `sandwiches[i][j] = Bi N Bj` over the bi-ideal list.
    sandwiches: Vec<Vec<Subset>>,
    options: &'a SuiteOptions,
}

fn sandwich_table(n: &FiniteNearring, bi: &[Subset]) -> Vec<Vec<Subset>> {
    let full = n.full();
    let heads: Vec<Subset> = bi.par_iter().map(|b| n.subset_product(b, &full)).collect();
    heads
        .par_iter()
        .map(|h| bi.iter().map(|b| n.subset_product(h, b)).collect())
        .collect()
}

fn tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |i| {
                    let mut next = t.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
    }
    out
}

impl Context<'_> {
    fn run_for_ideal(&self, c: &TheoremChecker<'_>) -> Result<Vec<TheoremReport>> {
        let n = self.n;
        let opts = self.options;
        let ids = TheoremId::ALL
            .into_iter()
            .filter(|id| id.depends_on_ideal() && opts.wants(*id));

        // A disqualified P makes every statement inapplicable at once.
        if c.unmet().is_some() {
            return Ok(ids.filter_map(|id| c.inapplicable(id)).collect());
        }

        let mut out = Vec::new();
        for id in ids {
            let reports: Vec<TheoremReport> = match id {
                TheoremId::LeftMultiplier => n.elements().into_par_iter().map(|m| c.left_multiplier(m)).collect(),
                TheoremId::IdealProductIdentity if !n.is_distributive() => {
                    vec![not_distributive(c, id)]
                }
                TheoremId::IdealProductIdentity => {
                    let pairs: Vec<(&Subset, &Subset)> = self
                        .right
                        .iter()
                        .flat_map(|r| self.left.iter().map(move |l| (r, l)))
                        .collect();
                    pairs.par_iter().map(|(r, l)| c.ideal_product_identity(r, l)).collect()
                }
                TheoremId::SingleDecomposition => {
                    self.bi.par_iter().map(|b| c.single_decomposition_report(b)).collect()
                }
                TheoremId::PairDecomposition if !n.is_distributive() => vec![not_distributive(c, id)],
                TheoremId::PairDecomposition => tuples(self.bi.len(), 2)
                    .par_iter()
                    .map(|t| c.pair_decomposition_report(&self.bi[t[0]], &self.bi[t[1]]))
                    .collect(),
                TheoremId::ChainDecomposition if !n.is_distributive() => vec![not_distributive(c, id)],
                TheoremId::ChainDecomposition => {
                    let all: Vec<Vec<usize>> = (1..=opts.max_family.max(2))
                        .flat_map(|len| tuples(self.bi.len(), len))
                        .collect();
                    all.par_iter()
                        .map(|t| {
                            let blocks: Vec<Subset> = t.iter().map(|&i| self.bi[i].clone()).collect();
                            c.chain_decomposition_report(&blocks)
                        })
                        .collect::<Result<_>>()?
                }
                TheoremId::BiIdealAbsorption => self.bi.par_iter().map(|b| c.bi_ideal_absorption(b)).collect(),
                TheoremId::PairInclusion => {
                    let k = self.bi.len();
                    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
                    pairs
                        .par_iter()
                        .map(|&(i, j)| c.pair_inclusion(&self.bi[i], &self.bi[j]))
                        .collect()
                }
                TheoremId::FamilyInclusion => {
                    let all: Vec<Vec<usize>> = (2..=opts.max_family.max(2))
                        .flat_map(|len| tuples(self.bi.len(), len))
                        .collect();
                    all.par_iter()
                        .map(|t| {
                            let blocks: Vec<Subset> = t.iter().map(|&i| self.bi[i].clone()).collect();
                            c.family_inclusion_with(&blocks, |a, b| self.sandwiches[t[a]][t[b]].clone())
                        })
                        .collect::<Result<_>>()?
                }
                TheoremId::ZeroRegularImpliesRegular
                | TheoremId::BiIdealIntersection
                | TheoremId::QuasiIdealIsBiIdeal => unreachable!("filtered above"),
            };
            out.extend(reports);
        }
        Ok(out)
    }
}

fn not_distributive(c: &TheoremChecker<'_>, id: TheoremId) -> TheoremReport {
    TheoremReport::new(id, Verdict::Inapplicable(UnmetHypothesis::NotDistributive)).with_ideal(c.ideal())
}
