//! Normal forms for the saturation calculus.
//!
//! Every concept inclusion is rewritten into one of
//! `A ⊑ B`, `A1 ⊓ A2 ⊑ B`, `A ⊑ ∃r.B` and `∃r.A ⊑ B` over basic concepts
//! (concept names, `Top`, `Bottom`, nominals), introducing fresh names for
//! complex subexpressions. Role inclusions become `r ⊑ s` or `r1 ∘ r2 ⊑ s`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use rustc_hash::FxHashMap;

use crate::concept::{canonicalize, ConceptExpr, Symbol};
use crate::error::{Error, Result, SymbolKind};
use crate::ontology::{Axiom, Ontology};

/// Prefix reserved for generated names; user identifiers cannot start with it.
pub(crate) const RESERVED_PREFIX: char = '_';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConceptId(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleId(pub(crate) u32);

impl ConceptId {
    pub const TOP: ConceptId = ConceptId(0);
    pub const BOTTOM: ConceptId = ConceptId(1);

    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }
}

impl RoleId {
    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConceptKind {
    Top,
    Bottom,
    Named,
    Nominal,
    /// Introduced by normalization or by a query.
    Fresh,
}

/// Interned concept and role names. Nominals are keyed as `{a}`.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    concepts: Vec<(String, ConceptKind)>,
    concept_ids: FxHashMap<String, ConceptId>,
    roles: Vec<String>,
    role_ids: FxHashMap<String, RoleId>,
}

impl Signature {
    fn new() -> Self {
        let mut sig = Signature::default();
        sig.intern_concept("Top", ConceptKind::Top);
        sig.intern_concept("Bottom", ConceptKind::Bottom);
        sig
    }

    fn intern_concept(&mut self, key: &str, kind: ConceptKind) -> ConceptId {
        if let Some(&id) = self.concept_ids.get(key) {
            return id;
        }
        let id = ConceptId(self.concepts.len() as u32);
        self.concepts.push((key.to_string(), kind));
        self.concept_ids.insert(key.to_string(), id);
        id
    }

    fn intern_role(&mut self, name: &str) -> RoleId {
        if let Some(&id) = self.role_ids.get(name) {
            return id;
        }
        let id = RoleId(self.roles.len() as u32);
        self.roles.push(name.to_string());
        self.role_ids.insert(name.to_string(), id);
        id
    }

    pub fn concept_count(&self) -> usize {
        self.concepts.len()
    }

    pub fn role_count(&self) -> usize {
        self.roles.len()
    }

    pub fn concept(&self, name: &str) -> Option<ConceptId> {
        self.concept_ids.get(name).copied()
    }

    pub fn nominal(&self, individual: &str) -> Option<ConceptId> {
        self.concept_ids.get(&format!("{{{individual}}}")).copied()
    }

    pub fn role(&self, name: &str) -> Option<RoleId> {
        self.role_ids.get(name).copied()
    }

    pub fn concept_name(&self, id: ConceptId) -> &str {
        &self.concepts[id.index()].0
    }

    pub fn concept_kind(&self, id: ConceptId) -> ConceptKind {
        self.concepts[id.index()].1
    }

    pub fn role_name(&self, id: RoleId) -> &str {
        &self.roles[id.index()]
    }

    pub fn concept_ids(&self) -> impl Iterator<Item = ConceptId> {
        (0..self.concepts.len() as u32).map(ConceptId)
    }

    /// User-declared concept names.
    pub fn named_concepts(&self) -> impl Iterator<Item = ConceptId> + '_ {
        self.concept_ids().filter(|&id| self.concept_kind(id) == ConceptKind::Named)
    }

    pub fn nominals(&self) -> impl Iterator<Item = ConceptId> + '_ {
        self.concept_ids().filter(|&id| self.concept_kind(id) == ConceptKind::Nominal)
    }

    pub fn has_nominals(&self) -> bool {
        self.nominals().next().is_some()
    }

    /// Id of a basic concept expression, if it is basic and interned.
    pub fn basic(&self, expr: &ConceptExpr) -> Option<ConceptId> {
        match expr {
            ConceptExpr::Top => Some(ConceptId::TOP),
            ConceptExpr::Bottom => Some(ConceptId::BOTTOM),
            ConceptExpr::Atom(name) => self.concept(name),
            ConceptExpr::Nominal(ind) => self.nominal(ind),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalGci {
    /// `A ⊑ B`
    Sub(ConceptId, ConceptId),
    /// `A1 ⊓ A2 ⊑ B`
    Conj(ConceptId, ConceptId, ConceptId),
    /// `A ⊑ ∃r.B`
    ExistsRight(ConceptId, RoleId, ConceptId),
    /// `∃r.A ⊑ B`
    ExistsLeft(RoleId, ConceptId, ConceptId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalRoleAxiom {
    /// `r ⊑ s`
    Sub(RoleId, RoleId),
    /// `r1 ∘ r2 ⊑ s`
    Chain(RoleId, RoleId, RoleId),
}

/// Normalized CBox together with the signature it is expressed in.
#[derive(Clone, Debug)]
pub struct NormalizedAxiomSet {
    pub(crate) signature: Signature,
    pub(crate) gcis: Vec<NormalGci>,
    pub(crate) role_axioms: Vec<NormalRoleAxiom>,
    pub(crate) fresh: BTreeMap<ConceptExpr, ConceptId>,
    fresh_roles: usize,
}

impl NormalizedAxiomSet {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn gcis(&self) -> &[NormalGci] {
        &self.gcis
    }

    pub fn role_axioms(&self) -> &[NormalRoleAxiom] {
        &self.role_axioms
    }

    /// Complex subexpression → the fresh name standing for it.
    pub fn fresh_names(&self) -> &BTreeMap<ConceptExpr, ConceptId> {
        &self.fresh
    }

    pub fn len(&self) -> usize {
        self.gcis.len() + self.role_axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Renders every normalized axiom in document syntax, in order.
    pub fn render(&self) -> Vec<String> {
        let c = |id: ConceptId| self.render_basic(id);
        let r = |id: RoleId| self.signature.role_name(id);
        let mut out: Vec<String> = self
            .gcis
            .iter()
            .map(|g| match *g {
                NormalGci::Sub(a, b) => format!("sub {} {}", c(a), c(b)),
                NormalGci::Conj(a1, a2, b) => format!("sub and({}, {}) {}", c(a1), c(a2), c(b)),
                NormalGci::ExistsRight(a, role, b) => {
                    format!("sub {} some({}, {})", c(a), r(role), c(b))
                }
                NormalGci::ExistsLeft(role, a, b) => {
                    format!("sub some({}, {}) {}", r(role), c(a), c(b))
                }
            })
            .collect();
        out.extend(self.role_axioms.iter().map(|ra| match *ra {
            NormalRoleAxiom::Sub(a, b) => format!("rsub {} {}", r(a), r(b)),
            NormalRoleAxiom::Chain(a, b, s) => format!("rchain {} {} -> {}", r(a), r(b), r(s)),
        }));
        out
    }

    fn render_basic(&self, id: ConceptId) -> String {
        self.signature.concept_name(id).to_string()
    }
}

impl fmt::Display for NormalizedAxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.render() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Normalizes the CBox of `ont` plus `extra` axioms.
///
/// `extra` may use identifiers starting with `_` as query names; any other
/// identifier must be declared in `ont`. Assertions are skipped.
pub fn normalize(ont: &Ontology, extra: &[Axiom]) -> Result<NormalizedAxiomSet> {
    for axiom in extra {
        check_extra_symbols(ont, axiom)?;
    }

    let mut sig = Signature::new();
    for name in ont.concept_names() {
        sig.intern_concept(name, ConceptKind::Named);
    }
    for ind in ont.individual_names() {
        sig.intern_concept(&format!("{{{ind}}}"), ConceptKind::Nominal);
    }
    for role in ont.role_names() {
        sig.intern_role(role);
    }

    let mut n = Normalizer {
        set: NormalizedAxiomSet {
            signature: sig,
            gcis: Vec::new(),
            role_axioms: Vec::new(),
            fresh: BTreeMap::new(),
            fresh_roles: 0,
        },
        emitted: HashSet::new(),
        seen: HashSet::new(),
        conj_names: BTreeMap::new(),
        fresh_count: 0,
    };
    for axiom in ont.cbox().chain(extra.iter().filter(|a| !a.is_assertion())) {
        n.axiom(axiom);
    }
    Ok(n.set)
}

fn check_extra_symbols(ont: &Ontology, axiom: &Axiom) -> Result<()> {
    let mut err = None;
    axiom.visit_symbols(&mut |s| {
        let (known, kind, name) = match s {
            Symbol::Concept(n) => (ont.concept_names().contains(n), SymbolKind::Concept, n),
            Symbol::Role(n) => (ont.role_names().contains(n), SymbolKind::Role, n),
            Symbol::Individual(n) => (ont.individual_names().contains(n), SymbolKind::Individual, n),
        };
        let query_name = kind == SymbolKind::Concept && name.starts_with(RESERVED_PREFIX);
        if !known && !query_name && err.is_none() {
            err = Some(Error::UnknownSymbol { kind, name: name.to_string() });
        }
    });
    err.map_or(Ok(()), Err)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Polarity {
    /// fresh name sits on the right: `expr ⊑ N`
    Lhs,
    /// fresh name sits on the left: `N ⊑ expr`
    Rhs,
}

struct Normalizer {
    set: NormalizedAxiomSet,
    emitted: HashSet<(ConceptId, Polarity)>,
    seen: HashSet<NormalGci>,
    conj_names: BTreeMap<Vec<ConceptId>, ConceptId>,
    fresh_count: usize,
}

impl Normalizer {
    fn axiom(&mut self, axiom: &Axiom) {
        match axiom {
            Axiom::Gci(lhs, rhs) => self.gci(canonicalize(lhs), canonicalize(rhs)),
            Axiom::RoleInclusion(chain, sup) => {
                let sup = self.role(sup);
                let roles: Vec<RoleId> = chain.roles().iter().map(|r| self.role(r)).collect();
                self.role_inclusion(&roles, sup);
            }
            Axiom::ConceptAssertion(..) | Axiom::RoleAssertion(..) => {}
        }
    }

    fn role(&mut self, name: &str) -> RoleId {
        self.set.signature.intern_role(name)
    }

    fn role_inclusion(&mut self, chain: &[RoleId], sup: RoleId) {
        match chain {
            [r] => self.set.role_axioms.push(NormalRoleAxiom::Sub(*r, sup)),
            [r, s] => self.set.role_axioms.push(NormalRoleAxiom::Chain(*r, *s, sup)),
            [first, second, rest @ ..] => {
                self.set.fresh_roles += 1;
                let name = format!("{RESERVED_PREFIX}R{}", self.set.fresh_roles);
                let u = self.set.signature.intern_role(&name);
                self.set.role_axioms.push(NormalRoleAxiom::Chain(*first, *second, u));
                let mut tail = vec![u];
                tail.extend_from_slice(rest);
                self.role_inclusion(&tail, sup);
            }
            [] => {}
        }
    }

    fn emit(&mut self, gci: NormalGci) {
        if self.seen.insert(gci) {
            self.set.gcis.push(gci);
        }
    }

    fn basic_lhs(&mut self, e: &ConceptExpr) -> Option<ConceptId> {
        match e {
            ConceptExpr::Top | ConceptExpr::Atom(_) | ConceptExpr::Nominal(_) => self.intern_basic(e),
            _ => None,
        }
    }

    fn basic_rhs(&mut self, e: &ConceptExpr) -> Option<ConceptId> {
        match e {
            ConceptExpr::Bottom => Some(ConceptId::BOTTOM),
            _ => self.basic_lhs(e),
        }
    }

    fn intern_basic(&mut self, e: &ConceptExpr) -> Option<ConceptId> {
        let sig = &mut self.set.signature;
        match e {
            ConceptExpr::Top => Some(ConceptId::TOP),
            ConceptExpr::Bottom => Some(ConceptId::BOTTOM),
            ConceptExpr::Atom(name) => Some(match sig.concept(name) {
                Some(id) => id,
                // only query names reach this point
                None => sig.intern_concept(name, ConceptKind::Fresh),
            }),
            ConceptExpr::Nominal(ind) => {
                Some(sig.intern_concept(&format!("{{{ind}}}"), ConceptKind::Nominal))
            }
            _ => None,
        }
    }

    /// Fresh name for `expr`, queuing its defining inclusion for `polarity`.
    fn name_for(&mut self, expr: &ConceptExpr, polarity: Polarity, queue: &mut VecDeque<(ConceptExpr, ConceptExpr)>) -> ConceptId {
        let id = match self.set.fresh.get(expr) {
            Some(&id) => id,
            None => {
                let id = self.fresh_concept();
                self.set.fresh.insert(expr.clone(), id);
                id
            }
        };
        if self.emitted.insert((id, polarity)) {
            let name = ConceptExpr::Atom(self.set.signature.concept_name(id).to_string());
            match polarity {
                Polarity::Lhs => queue.push_back((expr.clone(), name)),
                Polarity::Rhs => queue.push_back((name, expr.clone())),
            }
        }
        id
    }

    fn gci(&mut self, lhs: ConceptExpr, rhs: ConceptExpr) {
        let mut queue = VecDeque::from([(lhs, rhs)]);
        while let Some((lhs, rhs)) = queue.pop_front() {
            self.step(lhs, rhs, &mut queue);
        }
    }

    fn step(&mut self, lhs: ConceptExpr, rhs: ConceptExpr, queue: &mut VecDeque<(ConceptExpr, ConceptExpr)>) {
        if lhs.is_bottom() || rhs.is_top() {
            return;
        }
        if let ConceptExpr::And(members) = &rhs {
            for m in members {
                queue.push_back((lhs.clone(), m.clone()));
            }
            return;
        }
        let left = self.basic_lhs(&lhs);
        let right = self.basic_rhs(&rhs);
        match (left, right) {
            (Some(a), Some(b)) => self.emit(NormalGci::Sub(a, b)),
            (Some(a), None) => {
                let ConceptExpr::Some(role, filler) = &rhs else {
                    unreachable!("non-basic rhs after splitting is an existential")
                };
                let r = self.role(role);
                let b = match self.basic_rhs(filler) {
                    Some(b) => b,
                    None => self.name_for(filler, Polarity::Rhs, queue),
                };
                self.emit(NormalGci::ExistsRight(a, r, b));
            }
            (None, Some(b)) => self.complex_lhs(&lhs, b, queue),
            (None, None) => {
                let n = self.name_for(&lhs, Polarity::Lhs, queue);
                queue.push_back((ConceptExpr::Atom(self.set.signature.concept_name(n).to_string()), rhs));
            }
        }
    }

    fn complex_lhs(&mut self, lhs: &ConceptExpr, b: ConceptId, queue: &mut VecDeque<(ConceptExpr, ConceptExpr)>) {
        match lhs {
            ConceptExpr::Some(role, filler) => {
                let r = self.role(role);
                let a = match self.basic_lhs(filler) {
                    Some(a) => a,
                    None => self.name_for(filler, Polarity::Lhs, queue),
                };
                self.emit(NormalGci::ExistsLeft(r, a, b));
            }
            ConceptExpr::And(members) => {
                let ids: Vec<ConceptId> = members
                    .iter()
                    .map(|m| match self.basic_lhs(m) {
                        Some(id) => id,
                        None => self.name_for(m, Polarity::Lhs, queue),
                    })
                    .collect();
                // left-fold into binary conjunctions: ((a1 ⊓ a2) ⊓ a3) ...
                let mut acc = ids[0];
                for (i, &next) in ids.iter().enumerate().skip(1) {
                    if i + 1 == ids.len() {
                        self.emit(NormalGci::Conj(acc, next, b));
                    } else {
                        let n = self.conj_name(&ids[..=i]);
                        self.emit(NormalGci::Conj(acc, next, n));
                        acc = n;
                    }
                }
                if ids.len() == 1 {
                    self.emit(NormalGci::Sub(acc, b));
                }
            }
            _ => unreachable!("basic lhs handled by caller"),
        }
    }

    /// Name for an intermediate binary conjunction; its only defining axiom
    /// is the `Conj` emitted by the caller.
    fn conj_name(&mut self, prefix: &[ConceptId]) -> ConceptId {
        if let Some(&id) = self.conj_names.get(prefix) {
            return id;
        }
        let id = self.fresh_concept();
        self.conj_names.insert(prefix.to_vec(), id);
        id
    }

    fn fresh_concept(&mut self) -> ConceptId {
        self.fresh_count += 1;
        let name = format!("{RESERVED_PREFIX}N{}", self.fresh_count);
        self.set.signature.intern_concept(&name, ConceptKind::Fresh)
    }
}
