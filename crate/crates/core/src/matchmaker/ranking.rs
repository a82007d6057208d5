use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::reasoner::Reasoner;

use super::compare::{phi_from_evidence, ComparisonValue, Evidence};
use super::party::{is_recommendation, PartyRecord};

/// How pairwise comparisons are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool; runs sequentially when the `parallel` feature
    /// is off.
    #[default]
    Parallel,
}

/// Alternatives compared pairwise on several criteria.
pub trait Criteria: Sync {
    fn alternatives(&self) -> usize;

    fn criteria(&self) -> usize;

    /// How alternative `i` fares against alternative `j` on `criterion`.
    fn compare(&self, criterion: usize, i: usize, j: usize) -> Result<ComparisonValue>;
}

/// Outcome of comparing alternatives `first < second` on every criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComparison {
    pub first: usize,
    pub second: usize,
    pub values: Vec<ComparisonValue>,
}

/// Per-alternative vote counts by criterion, plus the pairwise outcomes
/// they were summed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Concordance {
    pub votes: Vec<Vec<i64>>,
    pub pairs: Vec<PairComparison>,
}

impl Concordance {
    /// `score(x) = Σ_k w_k · votes(x, k)`.
    pub fn scores(&self, weights: &[BigRational]) -> Vec<BigRational> {
        self.votes
            .iter()
            .map(|row| {
                row.iter()
                    .zip(weights)
                    .fold(BigRational::zero(), |acc, (&v, w)| acc + w * BigRational::from_integer(BigInt::from(v)))
            })
            .collect()
    }
}

/// Compares every pair `i < j` on every criterion; each vote is added to
/// `i` and subtracted from `j`.
pub fn concordance<C: Criteria + ?Sized>(criteria: &C, execution: Execution) -> Result<Concordance> {
    let n = criteria.alternatives();
    let k = criteria.criteria();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let compare_pair = |&(i, j): &(usize, usize)| -> Result<PairComparison> {
        let values = (0..k).map(|c| criteria.compare(c, i, j)).collect::<Result<Vec<_>>>()?;
        Ok(PairComparison { first: i, second: j, values })
    };
    let pairs: Vec<PairComparison> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => pairs.par_iter().map(compare_pair).collect::<Result<_>>()?,
        _ => pairs.iter().map(compare_pair).collect::<Result<_>>()?,
    };

    let mut votes = vec![vec![0i64; k]; n];
    for p in &pairs {
        for (c, v) in p.values.iter().enumerate() {
            votes[p.first][c] += v.value();
            votes[p.second][c] -= v.value();
        }
    }
    Ok(Concordance { votes, pairs })
}

/// Positive weight per component role; unlisted components weigh 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightTable {
    weights: BTreeMap<String, BigRational>,
}

impl WeightTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, role: impl Into<String>, weight: BigRational) -> Result<()> {
        let role = role.into();
        if !weight.is_positive() {
            return Err(Error::NonPositiveWeight { role, weight: weight.to_string() });
        }
        self.weights.insert(role, weight);
        Ok(())
    }

    pub fn get(&self, role: &str) -> BigRational {
        self.weights.get(role).cloned().unwrap_or_else(BigRational::one)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.weights.iter().map(|(r, w)| (r.as_str(), w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedOffer {
    pub name: String,
    pub score: BigRational,
    /// Competition rank, starting at 1.
    pub rank: usize,
}

/// Evidence and pairwise outcomes behind a ranking. Offer indices refer to
/// `offers`, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub components: Vec<String>,
    pub offers: Vec<String>,
    /// `evidence[offer][component]`.
    pub evidence: Vec<Vec<Evidence>>,
    pub pairs: Vec<PairComparison>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankingResult {
    pub ranked: Vec<RankedOffer>,
    /// Offers sharing no existing component with the demand, by name.
    pub excluded: Vec<String>,
    pub trace: Trace,
}

/// Semantic criteria: one per component, alternatives are the offers.
struct ComponentCriteria<'a> {
    reasoner: &'a Reasoner,
    evidence: Vec<Vec<Evidence>>,
    components: usize,
}

impl Criteria for ComponentCriteria<'_> {
    fn alternatives(&self) -> usize {
        self.evidence.len()
    }

    fn criteria(&self) -> usize {
        self.components
    }

    fn compare(&self, criterion: usize, i: usize, j: usize) -> Result<ComparisonValue> {
        phi_from_evidence(&self.evidence[i][criterion], &self.evidence[j][criterion], self.reasoner)
    }
}

/// Ranks offers against a demand.
#[derive(Clone, Copy, Debug)]
pub struct Matchmaker<'a> {
    reasoner: &'a Reasoner,
    execution: Execution,
}

impl<'a> Matchmaker<'a> {
    pub fn new(reasoner: &'a Reasoner) -> Self {
        Matchmaker { reasoner, execution: Execution::default() }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn components(&self) -> Vec<String> {
        self.reasoner.ontology().components().iter().map(|c| c.role.clone()).collect()
    }

    fn evidence(&self, demand: &PartyRecord, offers: &[&PartyRecord]) -> Result<Vec<Vec<Evidence>>> {
        let components = self.components();
        let one = |o: &&PartyRecord| -> Result<Vec<Evidence>> {
            components
                .iter()
                .map(|role| Evidence::compute(o.projection(role)?, demand.projection(role)?, self.reasoner))
                .collect()
        };
        match self.execution {
            #[cfg(feature = "parallel")]
            Execution::Parallel => offers.par_iter().map(one).collect(),
            _ => offers.iter().map(one).collect(),
        }
    }

    fn concordance(&self, demand: &PartyRecord, offers: &[&PartyRecord]) -> Result<(Vec<Vec<Evidence>>, Concordance)> {
        let evidence = self.evidence(demand, offers)?;
        let criteria = ComponentCriteria { reasoner: self.reasoner, evidence, components: self.components().len() };
        let conc = concordance(&criteria, self.execution)?;
        Ok((criteria.evidence, conc))
    }

    fn weight_vector(&self, weights: &WeightTable) -> Vec<BigRational> {
        self.components().iter().map(|r| weights.get(r)).collect()
    }

    /// Weighted concordance score of every offer, keyed by name. All offers
    /// are scored, recommendation or not.
    pub fn concordance_scores(
        &self,
        demand: &PartyRecord,
        offers: &[PartyRecord],
        weights: &WeightTable,
    ) -> Result<BTreeMap<String, BigRational>> {
        let sorted = sorted_by_name(offers)?;
        let (_, conc) = self.concordance(demand, &sorted)?;
        let scores = conc.scores(&self.weight_vector(weights));
        Ok(sorted.iter().map(|o| o.name.clone()).zip(scores).collect())
    }

    /// Filters recommendations, scores them and sorts by score descending,
    /// then name ascending.
    pub fn rank(&self, demand: &PartyRecord, offers: &[PartyRecord], weights: &WeightTable) -> Result<RankingResult> {
        let sorted = sorted_by_name(offers)?;
        let check = |o: &&PartyRecord| is_recommendation(o, demand, self.reasoner);
        let verdicts: Vec<bool> = match self.execution {
            #[cfg(feature = "parallel")]
            Execution::Parallel => sorted.par_iter().map(check).collect::<Result<_>>()?,
            _ => sorted.iter().map(check).collect::<Result<_>>()?,
        };
        let mut kept = Vec::new();
        let mut excluded = Vec::new();
        for (o, keep) in sorted.into_iter().zip(verdicts) {
            if keep {
                kept.push(o);
            } else {
                excluded.push(o.name.clone());
            }
        }
        let (evidence, conc) = self.concordance(demand, &kept)?;
        let scores = conc.scores(&self.weight_vector(weights));

        let mut order: Vec<usize> = (0..kept.len()).collect();
        order.sort_by(|&x, &y| scores[y].cmp(&scores[x]).then_with(|| kept[x].name.cmp(&kept[y].name)));
        let mut ranked: Vec<RankedOffer> = Vec::with_capacity(order.len());
        for (pos, &i) in order.iter().enumerate() {
            let rank = match ranked.last() {
                Some(prev) if prev.score == scores[i] => prev.rank,
                _ => pos + 1,
            };
            ranked.push(RankedOffer { name: kept[i].name.clone(), score: scores[i].clone(), rank });
        }
        let trace = Trace {
            components: self.components(),
            offers: kept.iter().map(|o| o.name.clone()).collect(),
            evidence,
            pairs: conc.pairs,
        };
        Ok(RankingResult { ranked, excluded, trace })
    }
}

fn sorted_by_name(offers: &[PartyRecord]) -> Result<Vec<&PartyRecord>> {
    let mut seen = BTreeSet::new();
    for o in offers {
        if !seen.insert(o.name.as_str()) {
            return Err(Error::DuplicateOfferName(o.name.clone()));
        }
    }
    let mut sorted: Vec<&PartyRecord> = offers.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(sorted)
}
