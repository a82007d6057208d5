//! Semantic matchmaking over EL++ ontologies.
//!
//! Offers and demands are descriptions split into components. Each offer is
//! compared with every other offer, per component, by how its projection
//! relates to the demand's projection (equivalent, more precise, less
//! precise or distant) and by the size and generality of what is left over
//! on either side (`Rest` and `Miss`). The per-component votes are summed
//! into concordance scores that order the offers.
//!
//! The crate is layered bottom-up:
//!
//! * [`concept`] and [`ontology`]: abstract syntax, canonical forms.
//! * [`reasoner`]: normalization and completion-rule saturation deciding
//!   subsumption.
//! * [`inference`]: reduction, least common subsumer, semantic difference,
//!   `Rest` and `Miss`.
//! * [`matchmaker`]: component form, the pairwise comparator and ranking.
//! * [`syntax`]: the line-oriented document formats and result rendering.

pub mod concept;
pub mod error;
pub mod inference;
pub mod matchmaker;
pub mod ontology;
pub mod reasoner;
pub mod syntax;

#[cfg(test)]
mod testutil;

pub use concept::{canonicalize, syntactic_length, ConceptExpr};
pub use error::{Error, Result};
pub use ontology::{Axiom, ComponentDecl, Ontology, RoleChain};
pub use inference::{lcs, miss, reduce, rest, semantic_difference, SimpleDescription};
pub use matchmaker::{Matchmaker, PartyKind, PartyRecord, RankingResult, WeightTable};
pub use reasoner::Reasoner;
