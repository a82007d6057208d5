//! Query answering on top of a frozen base saturation.
//!
//! A description `C` gets a fresh node `Q` with `Q ⊑ C` (normalized into
//! fresh, left-hand-only names). Only the fresh nodes are saturated; the base
//! stays untouched. `C ⊑ D` is then read off the saturated graph, which is a
//! canonical model of the ontology: `D` is evaluated at `Q` structurally.
//! This is complete in the absence of nominals.

use rustc_hash::FxHashMap;

use super::normalize::{ConceptId, RoleId};
use super::saturate::{ClassificationIndex, Engine, LocalRules, Node};
use crate::concept::ConceptExpr;

/// Saturated graph of a single description over a frozen base index.
#[derive(Clone, Debug)]
pub struct ConceptModel<'a> {
    index: &'a ClassificationIndex,
    root: ConceptId,
    nodes: Vec<Node>,
}

impl<'a> ConceptModel<'a> {
    /// Builds the model of `expr`. Every symbol must be interned in the
    /// index signature and `expr` must be nominal-free.
    pub(crate) fn build(index: &'a ClassificationIndex, expr: &ConceptExpr) -> Self {
        let offset = index.nodes.len();
        let mut defs = Definitions { index, offset, rules: LocalRules::default(), memo: FxHashMap::default() };
        let root = defs.define(expr);
        let nodes = {
            let mut engine = Engine::overlay(&index.rules, &index.nodes, defs.rules);
            engine.run(None);
            engine.nodes
        };
        ConceptModel { index, root, nodes }
    }

    fn node(&self, id: ConceptId) -> &Node {
        let i = id.index();
        if i < self.index.nodes.len() {
            &self.index.nodes[i]
        } else {
            &self.nodes[i - self.index.nodes.len()]
        }
    }

    pub fn is_unsatisfiable(&self) -> bool {
        self.node(self.root).is_unsatisfiable() || self.index.is_inconsistent()
    }

    /// Whether the modelled description is subsumed by `sup`.
    pub fn entails(&self, sup: &ConceptExpr) -> bool {
        self.is_unsatisfiable() || self.holds_at(self.root, sup)
    }

    /// Basic concepts subsuming the modelled description.
    pub fn supers(&self) -> impl Iterator<Item = ConceptId> + '_ {
        self.node(self.root).supers.iter().copied()
    }

    fn holds_at(&self, x: ConceptId, d: &ConceptExpr) -> bool {
        let node = self.node(x);
        if node.is_unsatisfiable() {
            return true;
        }
        let sig = &self.index.signature;
        match d {
            ConceptExpr::Top => true,
            ConceptExpr::Bottom => false,
            ConceptExpr::Atom(name) => sig.concept(name).is_some_and(|a| node.supers.contains(&a)),
            ConceptExpr::Nominal(ind) => sig.nominal(ind).is_some_and(|a| node.supers.contains(&a)),
            ConceptExpr::And(members) => members.iter().all(|m| self.holds_at(x, m)),
            ConceptExpr::Some(role, filler) => match sig.role(role) {
                Some(r) => node.succ.iter().any(|&(s, y)| s == r && self.holds_at(y, filler)),
                None => false,
            },
        }
    }
}

struct Definitions<'a> {
    index: &'a ClassificationIndex,
    offset: usize,
    rules: LocalRules,
    memo: FxHashMap<ConceptExpr, ConceptId>,
}

impl Definitions<'_> {
    fn fresh(&mut self) -> ConceptId {
        let id = ConceptId((self.offset + self.rules.told.len()) as u32);
        self.rules.told.push(Vec::new());
        self.rules.exists_right.push(Vec::new());
        id
    }

    fn local(&mut self, id: ConceptId) -> usize {
        id.index() - self.offset
    }

    /// Fresh `Q` with `Q ⊑ expr`.
    fn define(&mut self, expr: &ConceptExpr) -> ConceptId {
        if let Some(&id) = self.memo.get(expr) {
            return id;
        }
        let q = self.fresh();
        for conjunct in expr.conjuncts() {
            match conjunct {
                ConceptExpr::Some(role, filler) => {
                    let r: RoleId = self.index.signature.role(role).expect("role checked by caller");
                    let y = match self.basic(filler) {
                        Some(y) => y,
                        None => self.define(filler),
                    };
                    let i = self.local(q);
                    self.rules.exists_right[i].push((r, y));
                }
                other => {
                    let b = self.basic(other).expect("symbol checked by caller");
                    let i = self.local(q);
                    self.rules.told[i].push(b);
                }
            }
        }
        self.memo.insert(expr.clone(), q);
        q
    }

    fn basic(&self, e: &ConceptExpr) -> Option<ConceptId> {
        self.index.signature.basic(e)
    }
}
