//! Axioms, component declarations and the ontology (CBox plus a parsed but
//! unreasoned ABox).

use std::collections::BTreeSet;
use std::fmt;

use crate::concept::{ConceptExpr, Symbol};
use crate::error::{Error, Result, SymbolKind};

/// Non-empty composition of roles `r1 o r2 o ... o rn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RoleChain(Vec<String>);

impl RoleChain {
    pub fn new(roles: Vec<String>) -> Result<Self> {
        if roles.is_empty() {
            return Err(Error::EmptyRoleChain);
        }
        Ok(RoleChain(roles))
    }

    pub fn single(role: impl Into<String>) -> Self {
        RoleChain(vec![role.into()])
    }

    pub fn roles(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `lhs ⊑ rhs`
    Gci(ConceptExpr, ConceptExpr),
    /// `r1 o ... o rn ⊑ s`
    RoleInclusion(RoleChain, String),
    /// `C(a)`
    ConceptAssertion(ConceptExpr, String),
    /// `r(a, b)`
    RoleAssertion(String, String, String),
}

impl Axiom {
    pub fn gci(lhs: ConceptExpr, rhs: ConceptExpr) -> Self {
        Axiom::Gci(lhs, rhs)
    }

    pub fn is_assertion(&self) -> bool {
        matches!(self, Axiom::ConceptAssertion(..) | Axiom::RoleAssertion(..))
    }

    pub fn visit_symbols<'a>(&'a self, f: &mut impl FnMut(Symbol<'a>)) {
        match self {
            Axiom::Gci(lhs, rhs) => {
                lhs.visit_symbols(f);
                rhs.visit_symbols(f);
            }
            Axiom::RoleInclusion(chain, sup) => {
                chain.roles().iter().for_each(|r| f(Symbol::Role(r)));
                f(Symbol::Role(sup));
            }
            Axiom::ConceptAssertion(c, ind) => {
                c.visit_symbols(f);
                f(Symbol::Individual(ind));
            }
            Axiom::RoleAssertion(role, a, b) => {
                f(Symbol::Role(role));
                f(Symbol::Individual(a));
                f(Symbol::Individual(b));
            }
        }
    }
}

/// Renders in the line grammar of ontology documents.
impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Gci(lhs, rhs) => write!(f, "sub {lhs} {rhs}"),
            Axiom::RoleInclusion(chain, sup) if chain.len() == 1 => {
                write!(f, "rsub {} {sup}", chain.roles()[0])
            }
            Axiom::RoleInclusion(chain, sup) => {
                write!(f, "rchain {} -> {sup}", chain.roles().join(" "))
            }
            Axiom::ConceptAssertion(c, ind) => write!(f, "instance {c} {ind}"),
            Axiom::RoleAssertion(role, a, b) => write!(f, "related {role} {a} {b}"),
        }
    }
}

/// A component: the descriptions subsumed by `top_concept`, reached through
/// the dedicated component role.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentDecl {
    pub role: String,
    pub top_concept: String,
}

impl ComponentDecl {
    pub fn new(role: impl Into<String>, top_concept: impl Into<String>) -> Self {
        ComponentDecl { role: role.into(), top_concept: top_concept.into() }
    }
}

/// The reasoning context: axioms, components in declaration order and the
/// symbol tables. Symbols are registered as axioms and components are added.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    axioms: Vec<Axiom>,
    components: Vec<ComponentDecl>,
    concept_names: BTreeSet<String>,
    role_names: BTreeSet<String>,
    individual_names: BTreeSet<String>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_axiom(&mut self, axiom: Axiom) {
        let Self { concept_names, role_names, individual_names, .. } = self;
        axiom.visit_symbols(&mut |s| match s {
            Symbol::Concept(n) => insert(concept_names, n),
            Symbol::Role(n) => insert(role_names, n),
            Symbol::Individual(n) => insert(individual_names, n),
        });
        self.axioms.push(axiom);
    }

    pub fn add_component(&mut self, decl: ComponentDecl) -> Result<()> {
        if self.component(&decl.role).is_some() {
            return Err(Error::DuplicateComponent(decl.role));
        }
        insert(&mut self.role_names, &decl.role);
        insert(&mut self.concept_names, &decl.top_concept);
        self.components.push(decl);
        Ok(())
    }

    pub fn declare_concept(&mut self, name: &str) {
        insert(&mut self.concept_names, name);
    }

    pub fn declare_role(&mut self, name: &str) {
        insert(&mut self.role_names, name);
    }

    pub fn declare_individual(&mut self, name: &str) {
        insert(&mut self.individual_names, name);
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    /// Axioms the reasoner works on (assertions excluded).
    pub fn cbox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(|a| !a.is_assertion())
    }

    pub fn assertions(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(|a| a.is_assertion())
    }

    pub fn components(&self) -> &[ComponentDecl] {
        &self.components
    }

    pub fn component(&self, role: &str) -> Option<&ComponentDecl> {
        self.components.iter().find(|c| c.role == role)
    }

    pub fn concept_names(&self) -> &BTreeSet<String> {
        &self.concept_names
    }

    pub fn role_names(&self) -> &BTreeSet<String> {
        &self.role_names
    }

    pub fn individual_names(&self) -> &BTreeSet<String> {
        &self.individual_names
    }

    /// Fails with `UnknownSymbol` on the first identifier of `expr` missing
    /// from the symbol tables.
    pub fn check_symbols(&self, expr: &ConceptExpr) -> Result<()> {
        let mut missing = None;
        expr.visit_symbols(&mut |s| {
            if missing.is_some() {
                return;
            }
            let (table, kind, name) = match s {
                Symbol::Concept(n) => (&self.concept_names, SymbolKind::Concept, n),
                Symbol::Role(n) => (&self.role_names, SymbolKind::Role, n),
                Symbol::Individual(n) => (&self.individual_names, SymbolKind::Individual, n),
            };
            if !table.contains(name) {
                missing = Some(Error::UnknownSymbol { kind, name: name.to_string() });
            }
        });
        missing.map_or(Ok(()), Err)
    }
}

fn insert(table: &mut BTreeSet<String>, name: &str) {
    if !table.contains(name) {
        table.insert(name.to_string());
    }
}

/// Renders the ontology as a document the parser reads back into an equal
/// model. Equivalences come back as their two inclusions.
impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "component {} {}", c.role, c.top_concept)?;
        }
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}
