//! Subsumption reasoning by normalization and saturation.
//!
//! [`Reasoner`] saturates the ontology once and answers queries by
//! saturating only the query description on top of the frozen result.
//! [`subsumes_by_resaturation`] is the direct route: it adds fresh
//! definitions for both sides and saturates everything again. When the
//! ontology or a query contains nominals the reasoner takes the direct route.

mod normalize;
mod query;
mod saturate;
mod taxonomy;

use std::borrow::Cow;

use rustc_hash::FxHashSet;

pub use normalize::{normalize, ConceptId, ConceptKind, NormalGci, NormalRoleAxiom, NormalizedAxiomSet, RoleId, Signature};
pub use query::ConceptModel;
pub use saturate::{saturate, saturate_from, ClassificationIndex};
pub use taxonomy::Taxonomy;

use crate::concept::{canonicalize, ConceptExpr};
use crate::error::{Error, Result, SymbolKind};
use crate::ontology::{Axiom, Ontology};

/// Decides `c ⊑ d` w.r.t. `ont` by saturating the ontology extended with
/// `Q1 ≡ c` and `Q2 ≡ d` and testing `Q2 ∈ S(Q1)`.
pub fn subsumes_by_resaturation(ont: &Ontology, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool> {
    ont.check_symbols(c)?;
    ont.check_symbols(d)?;
    let q1 = ConceptExpr::atom("_Q1");
    let q2 = ConceptExpr::atom("_Q2");
    let extra = [
        Axiom::gci(q1.clone(), c.clone()),
        Axiom::gci(c.clone(), q1),
        Axiom::gci(q2.clone(), d.clone()),
        Axiom::gci(d.clone(), q2),
    ];
    let set = normalize(ont, &extra)?;
    let (root, target) = (set.signature().concept("_Q1"), set.signature().concept("_Q2"));
    let (root, target) = (root.expect("query name interned"), target.expect("query name interned"));
    let index = saturate_from(&set, Some(root));
    Ok(index.entails(root, target))
}

/// Subsumption oracle for one ontology, saturated once.
#[derive(Clone, Debug)]
pub struct Reasoner {
    ontology: Ontology,
    normalized: NormalizedAxiomSet,
    index: ClassificationIndex,
    nominal_mode: bool,
}

/// A description prepared for repeated `⊑ d` tests.
#[derive(Clone, Debug)]
pub struct Model<'a> {
    reasoner: &'a Reasoner,
    expr: ConceptExpr,
    /// Absent for nominal-bearing input, which re-saturates on every test.
    saturated: Option<ConceptModel<'a>>,
}

impl Model<'_> {
    /// Whether the prepared description is subsumed by `sup`.
    pub fn entails(&self, sup: &ConceptExpr) -> Result<bool> {
        self.reasoner.ontology.check_symbols(sup)?;
        match &self.saturated {
            Some(m) if !sup.contains_nominal() => Ok(m.entails(sup)),
            _ => subsumes_by_resaturation(&self.reasoner.ontology, &self.expr, sup),
        }
    }

    pub fn is_satisfiable(&self) -> Result<bool> {
        Ok(!self.entails(&ConceptExpr::Bottom)?)
    }

    pub fn expr(&self) -> &ConceptExpr {
        &self.expr
    }
}

impl Reasoner {
    pub fn new(ontology: &Ontology) -> Self {
        let normalized = normalize(ontology, &[]).expect("the ontology's own symbols are declared");
        let index = saturate(&normalized);
        let nominal_mode = normalized.gcis().iter().any(|g| {
            let ids: &[ConceptId] = match g {
                NormalGci::Sub(a, b) => &[*a, *b],
                NormalGci::Conj(a, b, c) => &[*a, *b, *c],
                NormalGci::ExistsRight(a, _, b) | NormalGci::ExistsLeft(_, a, b) => &[*a, *b],
            };
            ids.iter().any(|&id| normalized.signature().concept_kind(id) == ConceptKind::Nominal)
        });
        Reasoner { ontology: ontology.clone(), normalized, index, nominal_mode }
    }

    pub fn ontology(&self) -> &Ontology {
        &self.ontology
    }

    pub fn normalized(&self) -> &NormalizedAxiomSet {
        &self.normalized
    }

    pub fn index(&self) -> &ClassificationIndex {
        &self.index
    }

    fn nominal_mode(&self) -> bool {
        self.nominal_mode
    }

    /// Prepares `c` for subsumption tests against many candidates.
    pub fn model(&self, c: &ConceptExpr) -> Result<Model<'_>> {
        self.ontology.check_symbols(c)?;
        let c = canonicalize(c);
        let saturated = if self.nominal_mode() || c.contains_nominal() {
            None
        } else {
            Some(ConceptModel::build(&self.index, &c))
        };
        Ok(Model { reasoner: self, expr: c, saturated })
    }

    pub fn subsumes(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool> {
        self.model(c)?.entails(d)
    }

    pub fn equivalent(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool> {
        Ok(self.subsumes(c, d)? && self.subsumes(d, c)?)
    }

    pub fn strictly_subsumed(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool> {
        Ok(self.subsumes(c, d)? && !self.subsumes(d, c)?)
    }

    pub fn is_satisfiable(&self, c: &ConceptExpr) -> Result<bool> {
        Ok(!self.subsumes(c, &ConceptExpr::Bottom)?)
    }

    fn concept_id(&self, name: &str) -> Result<ConceptId> {
        match self.normalized.signature().concept(name) {
            Some(id) if self.normalized.signature().concept_kind(id) == ConceptKind::Named => Ok(id),
            _ => Err(Error::UnknownSymbol { kind: SymbolKind::Concept, name: name.to_string() }),
        }
    }

    /// The index answering for `id`: the shared one, or a saturation rooted
    /// at `id` when nominals are around.
    fn index_for(&self, id: ConceptId) -> Cow<'_, ClassificationIndex> {
        if self.nominal_mode() {
            Cow::Owned(saturate_from(&self.normalized, Some(id)))
        } else {
            Cow::Borrowed(&self.index)
        }
    }

    /// Named concepts subsuming `name` (itself included), plus whether
    /// `name` is unsatisfiable.
    pub(crate) fn named_supers(&self, id: ConceptId) -> (FxHashSet<ConceptId>, bool) {
        let index = self.index_for(id);
        let sig = self.normalized.signature();
        let supers = index
            .supers(id)
            .into_iter()
            .filter(|&c| sig.concept_kind(c) == ConceptKind::Named)
            .collect();
        (supers, index.entails(id, ConceptId::BOTTOM))
    }

    /// The ⊑-minimal named concepts subsuming every name in `names`; empty
    /// when only `Top` does. Equivalent names are represented by the
    /// lexicographically smallest. Sorted.
    pub fn min_common_named_subsumers<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<String>> {
        let ids = names.iter().map(|n| self.concept_id(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let mut common: Option<FxHashSet<ConceptId>> = None;
        for &id in &ids {
            let (supers, unsat) = self.named_supers(id);
            if unsat {
                continue;
            }
            common = Some(match common {
                None => supers,
                Some(acc) => acc.intersection(&supers).copied().collect(),
            });
        }
        let candidates: Vec<ConceptId> = match common {
            Some(set) => set.into_iter().collect(),
            None => ids.clone(),
        };
        Ok(self.minimal_named(&candidates))
    }

    /// ⊑-minimal elements of `candidates` by name, one per equivalence class.
    fn minimal_named(&self, candidates: &[ConceptId]) -> Vec<String> {
        let sig = self.normalized.signature();
        let supers: Vec<FxHashSet<ConceptId>> = candidates.iter().map(|&c| self.named_supers(c).0).collect();
        let below = |i: usize, j: usize| supers[i].contains(&candidates[j]);
        let mut out: Vec<String> = Vec::new();
        for i in 0..candidates.len() {
            let name_i = sig.concept_name(candidates[i]);
            let dominated = (0..candidates.len()).any(|j| {
                if i == j || !below(j, i) {
                    return false;
                }
                // j ⊑ i: strictly below, or equivalent with a smaller name
                !below(i, j) || sig.concept_name(candidates[j]) < name_i
            });
            if !dominated {
                out.push(name_i.to_string());
            }
        }
        out.sort();
        out
    }

    /// Named-concept hierarchy, transitively reduced.
    pub fn taxonomy(&self) -> Taxonomy {
        Taxonomy::build(self)
    }
}

#[cfg(test)]
mod tests;
