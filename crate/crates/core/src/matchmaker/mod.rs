//! Component form, the pairwise comparator and concordance ranking.

mod compare;
mod party;
mod ranking;

pub use compare::{compare_residues, phi, phi_from_evidence, zone_of, ComparisonValue, Evidence, Zone};
pub use party::{component_existing, is_recommendation, to_component_form, PartyKind, PartyRecord};
pub use ranking::{
    concordance, Concordance, Criteria, Execution, Matchmaker, PairComparison, RankedOffer, RankingResult, Trace,
    WeightTable,
};
