use std::fmt;

use indexmap::IndexMap;

use crate::concept::ConceptExpr;
use crate::error::{Error, Result, SymbolKind};
use crate::inference::{reduce, SimpleDescription};
use crate::reasoner::Reasoner;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartyKind {
    Offer,
    Demand,
}

impl fmt::Display for PartyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartyKind::Offer => "offer",
            PartyKind::Demand => "demand",
        })
    }
}

/// A named offer or demand in component form: one filler per declared
/// component, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyRecord {
    pub name: String,
    pub kind: PartyKind,
    fillers: IndexMap<String, SimpleDescription>,
}

impl PartyRecord {
    pub fn new(name: impl Into<String>, kind: PartyKind, description: &ConceptExpr, reasoner: &Reasoner) -> Result<Self> {
        let fillers = to_component_form(description, reasoner)?;
        Ok(PartyRecord { name: name.into(), kind, fillers })
    }

    pub fn fillers(&self) -> &IndexMap<String, SimpleDescription> {
        &self.fillers
    }

    /// The projection on `role`.
    pub fn projection(&self, role: &str) -> Result<&SimpleDescription> {
        self.fillers.get(role).ok_or_else(|| Error::UnknownComponent(role.to_string()))
    }

    /// Reassembles `⨅ ∃R.filler` over the fillers that are not `Top`.
    pub fn to_expr(&self) -> ConceptExpr {
        ConceptExpr::conjunction(
            self.fillers
                .iter()
                .filter(|(_, f)| !f.is_top())
                .map(|(role, f)| ConceptExpr::some(role.clone(), f.expr().clone())),
        )
    }
}

/// Splits a description into one reduced filler per declared component;
/// components the description does not mention get `Top`.
pub fn to_component_form(c: &ConceptExpr, reasoner: &Reasoner) -> Result<IndexMap<String, SimpleDescription>> {
    let ont = reasoner.ontology();
    ont.check_symbols(c)?;
    let c = crate::concept::canonicalize(c);
    let mut given: IndexMap<&str, &ConceptExpr> = IndexMap::new();
    for conjunct in c.conjuncts() {
        match conjunct {
            ConceptExpr::Some(role, filler) if ont.component(role).is_some() => {
                if given.insert(role, filler).is_some() {
                    return Err(Error::DuplicateComponent(role.clone()));
                }
            }
            other => return Err(Error::NonComponentConjunct(other.to_string())),
        }
    }

    let mut fillers = IndexMap::with_capacity(ont.components().len());
    for decl in ont.components() {
        let filler = match given.get(decl.role.as_str()) {
            Some(f) => reduce(&SimpleDescription::new(f)?, reasoner)?,
            None => SimpleDescription::top(),
        };
        if !filler.is_top() {
            let top = ConceptExpr::atom(decl.top_concept.clone());
            let joined = ConceptExpr::And(vec![filler.expr().clone(), top]);
            if !reasoner.is_satisfiable(&joined)? {
                return Err(Error::ComponentRangeViolated {
                    role: decl.role.clone(),
                    filler: filler.to_string(),
                    top: decl.top_concept.clone(),
                });
            }
        }
        fillers.insert(decl.role.clone(), filler);
    }
    Ok(fillers)
}

/// Whether the projection of `party` on `role` is not equivalent to `Top`.
pub fn component_existing(party: &PartyRecord, role: &str, reasoner: &Reasoner) -> Result<bool> {
    if !reasoner.ontology().role_names().contains(role) {
        return Err(Error::UnknownSymbol { kind: SymbolKind::Role, name: role.to_string() });
    }
    let filler = party.projection(role)?;
    Ok(!reasoner.subsumes(&ConceptExpr::Top, filler.expr())?)
}

/// Whether `offer` and `demand` share at least one existing component.
pub fn is_recommendation(offer: &PartyRecord, demand: &PartyRecord, reasoner: &Reasoner) -> Result<bool> {
    for role in reasoner.ontology().components().iter().map(|c| c.role.as_str()) {
        if component_existing(demand, role, reasoner)? && component_existing(offer, role, reasoner)? {
            return Ok(true);
        }
    }
    Ok(false)
}
