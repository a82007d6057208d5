//! Completion-rule saturation over a normalized axiom set.
//!
//! For every basic concept `X` the engine maintains `S(X)`, the basic
//! concepts known to subsume `X`, and the outgoing role edges `R(X)`.
//! Rules:
//!
//! * `A ∈ S(X)`, `A ⊑ B` ⇒ `B ∈ S(X)`
//! * `A1, A2 ∈ S(X)`, `A1 ⊓ A2 ⊑ B` ⇒ `B ∈ S(X)`
//! * `A ∈ S(X)`, `A ⊑ ∃r.B` ⇒ `(X, B) ∈ R(r)`
//! * `(X, Y) ∈ R(r)`, `A ∈ S(Y)`, `∃r.A ⊑ B` ⇒ `B ∈ S(X)`
//! * `(X, Y) ∈ R(r)`, `⊥ ∈ S(Y)` ⇒ `⊥ ∈ S(X)`
//! * `(X, Y) ∈ R(r)`, `r ⊑ s` ⇒ `(X, Y) ∈ R(s)`
//! * `(X, Y) ∈ R(r1)`, `(Y, Z) ∈ R(r2)`, `r1 ∘ r2 ⊑ s` ⇒ `(X, Z) ∈ R(s)`
//! * `{a} ∈ S(X) ∩ S(Y)`, `X` and `Y` both reachable from the root or a
//!   nominal ⇒ `S(X) = S(Y)`
//!
//! An engine can also run on top of a frozen [`ClassificationIndex`]: the
//! base nodes are read-only and only fresh query nodes are saturated.

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use super::normalize::{ConceptId, ConceptKind, NormalGci, NormalRoleAxiom, NormalizedAxiomSet, RoleId, Signature};

/// Axioms indexed for rule application.
#[derive(Clone, Debug, Default)]
pub(crate) struct RuleIndex {
    told: Vec<Vec<ConceptId>>,
    conj: Vec<Vec<(ConceptId, ConceptId)>>,
    exists_right: Vec<Vec<(RoleId, ConceptId)>>,
    exists_left: FxHashMap<(RoleId, ConceptId), Vec<ConceptId>>,
    /// Per filler `A`, the roles `r` and conclusions `B` of `∃r.A ⊑ B`.
    exists_left_by_filler: Vec<Vec<(RoleId, Vec<ConceptId>)>>,
    /// Reflexive-transitive super-roles.
    role_supers: Vec<Vec<RoleId>>,
    chain_first: Vec<Vec<(RoleId, RoleId)>>,
    chain_second: Vec<Vec<(RoleId, RoleId)>>,
}

impl RuleIndex {
    pub(crate) fn build(set: &NormalizedAxiomSet) -> Self {
        let nc = set.signature.concept_count();
        let nr = set.signature.role_count();
        let mut idx = RuleIndex {
            told: vec![Vec::new(); nc],
            conj: vec![Vec::new(); nc],
            exists_right: vec![Vec::new(); nc],
            exists_left: FxHashMap::default(),
            exists_left_by_filler: vec![Vec::new(); nc],
            role_supers: Vec::new(),
            chain_first: vec![Vec::new(); nr],
            chain_second: vec![Vec::new(); nr],
        };
        for g in &set.gcis {
            match *g {
                NormalGci::Sub(a, b) => idx.told[a.index()].push(b),
                NormalGci::Conj(a1, a2, b) => {
                    idx.conj[a1.index()].push((a2, b));
                    idx.conj[a2.index()].push((a1, b));
                }
                NormalGci::ExistsRight(a, r, b) => idx.exists_right[a.index()].push((r, b)),
                NormalGci::ExistsLeft(r, a, b) => {
                    idx.exists_left.entry((r, a)).or_default().push(b);
                }
            }
        }

        let mut left: Vec<_> = idx.exists_left.iter().map(|(&(r, a), bs)| (a, r, bs.clone())).collect();
        left.sort();
        for (a, r, bs) in left {
            idx.exists_left_by_filler[a.index()].push((r, bs));
        }

        let mut direct = vec![Vec::new(); nr];
        for ra in &set.role_axioms {
            match *ra {
                NormalRoleAxiom::Sub(r, s) => direct[r.index()].push(s),
                NormalRoleAxiom::Chain(r1, r2, s) => {
                    idx.chain_first[r1.index()].push((r2, s));
                    idx.chain_second[r2.index()].push((r1, s));
                }
            }
        }
        idx.role_supers = (0..nr)
            .map(|r| {
                let mut seen = vec![false; nr];
                let mut stack = vec![r];
                let mut out = Vec::new();
                seen[r] = true;
                while let Some(x) = stack.pop() {
                    out.push(RoleId(x as u32));
                    for s in &direct[x] {
                        if !seen[s.index()] {
                            seen[s.index()] = true;
                            stack.push(s.index());
                        }
                    }
                }
                out.sort();
                out
            })
            .collect();
        idx
    }

    pub(crate) fn concept_count(&self) -> usize {
        self.told.len()
    }

    pub(crate) fn role_supers(&self, r: RoleId) -> &[RoleId] {
        &self.role_supers[r.index()]
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Node {
    pub(crate) supers: FxHashSet<ConceptId>,
    pub(crate) succ: Vec<(RoleId, ConceptId)>,
    succ_set: FxHashSet<(RoleId, ConceptId)>,
    pred: FxHashMap<RoleId, Vec<ConceptId>>,
    /// Per role `r`, the conclusions `B` of `∃r.A ⊑ B` with `A` in `supers`.
    left: FxHashMap<RoleId, Vec<ConceptId>>,
}

impl Node {
    pub(crate) fn is_unsatisfiable(&self) -> bool {
        self.supers.contains(&ConceptId::BOTTOM)
    }
}

/// Rules for query nodes; indexed by `id - offset`.
#[derive(Clone, Debug, Default)]
pub(crate) struct LocalRules {
    pub(crate) told: Vec<Vec<ConceptId>>,
    pub(crate) exists_right: Vec<Vec<(RoleId, ConceptId)>>,
}

#[derive(Clone, Copy, Debug)]
enum Task {
    Concept(ConceptId),
    Edge(RoleId, ConceptId),
}

pub(crate) struct Engine<'a> {
    rules: &'a RuleIndex,
    local_rules: LocalRules,
    base: &'a [Node],
    offset: usize,
    pub(crate) nodes: Vec<Node>,
    queue: VecDeque<(ConceptId, Task)>,
}

impl<'a> Engine<'a> {
    /// Engine saturating every concept of `rules` from scratch.
    pub(crate) fn full(rules: &'a RuleIndex) -> Self {
        let n = rules.concept_count();
        let mut engine = Engine {
            rules,
            local_rules: LocalRules::default(),
            base: &[],
            offset: 0,
            nodes: vec![Node::default(); n],
            queue: VecDeque::new(),
        };
        for i in 0..n as u32 {
            engine.init(ConceptId(i));
        }
        engine
    }

    /// Engine over a frozen base; `local` holds the rules of the query nodes
    /// `base.len()..`.
    pub(crate) fn overlay(rules: &'a RuleIndex, base: &'a [Node], local: LocalRules) -> Self {
        let offset = base.len();
        let n = local.told.len();
        let mut engine = Engine {
            rules,
            local_rules: local,
            base,
            offset,
            nodes: vec![Node::default(); n],
            queue: VecDeque::new(),
        };
        for i in 0..n {
            engine.init(ConceptId((offset + i) as u32));
        }
        engine
    }

    fn init(&mut self, x: ConceptId) {
        self.queue.push_back((x, Task::Concept(x)));
        self.queue.push_back((x, Task::Concept(ConceptId::TOP)));
    }

    pub(crate) fn node(&self, id: ConceptId) -> &Node {
        let i = id.index();
        if i < self.offset {
            &self.base[i]
        } else {
            &self.nodes[i - self.offset]
        }
    }

    fn local_mut(&mut self, id: ConceptId) -> &mut Node {
        let i = id.index() - self.offset;
        &mut self.nodes[i]
    }

    fn told(&self, a: ConceptId) -> &[ConceptId] {
        let i = a.index();
        if i < self.rules.concept_count() {
            &self.rules.told[i]
        } else {
            &self.local_rules.told[i - self.rules.concept_count()]
        }
    }

    fn exists_right(&self, a: ConceptId) -> &[(RoleId, ConceptId)] {
        let i = a.index();
        if i < self.rules.concept_count() {
            &self.rules.exists_right[i]
        } else {
            &self.local_rules.exists_right[i - self.rules.concept_count()]
        }
    }

    fn conj(&self, a: ConceptId) -> &[(ConceptId, ConceptId)] {
        self.rules.conj.get(a.index()).map_or(&[], Vec::as_slice)
    }

    /// Runs all rules to fixpoint. `nominal_root` enables the nominal rule
    /// with reachability measured from that node (plus all nominals).
    pub(crate) fn run(&mut self, signature: Option<(&Signature, Option<ConceptId>)>) {
        loop {
            while let Some((x, task)) = self.queue.pop_front() {
                match task {
                    Task::Concept(b) => self.add_concept(x, b),
                    Task::Edge(r, y) => {
                        let rules = self.rules;
                        for &s in rules.role_supers(r) {
                            self.add_edge(x, s, y);
                        }
                    }
                }
            }
            match signature {
                Some((sig, root)) if sig.has_nominals() => {
                    if !self.nominal_rule(sig, root) {
                        break;
                    }
                }
                _ => break,
            }
        }
    }

    fn add_concept(&mut self, x: ConceptId, b: ConceptId) {
        if !self.local_mut(x).supers.insert(b) {
            return;
        }
        let mut out: Vec<(ConceptId, Task)> = Vec::new();
        for &c in self.told(b) {
            out.push((x, Task::Concept(c)));
        }
        {
            let supers = &self.node(x).supers;
            for &(other, c) in self.conj(b) {
                if supers.contains(&other) {
                    out.push((x, Task::Concept(c)));
                }
            }
        }
        for &(r, y) in self.exists_right(b) {
            out.push((x, Task::Edge(r, y)));
        }
        if let Some(by_role) = self.rules.exists_left_by_filler.get(b.index()) {
            let node = self.local_mut(x);
            for (r, cs) in by_role {
                node.left.entry(*r).or_default().extend_from_slice(cs);
            }
        }
        for (r, preds) in &self.node(x).pred {
            if b == ConceptId::BOTTOM {
                out.extend(preds.iter().map(|&p| (p, Task::Concept(ConceptId::BOTTOM))));
            }
            if let Some(cs) = self.rules.exists_left.get(&(*r, b)) {
                for &p in preds {
                    out.extend(cs.iter().map(|&c| (p, Task::Concept(c))));
                }
            }
        }
        self.queue.extend(out);
    }

    fn add_edge(&mut self, x: ConceptId, r: RoleId, y: ConceptId) {
        {
            let node = self.local_mut(x);
            if !node.succ_set.insert((r, y)) {
                return;
            }
            node.succ.push((r, y));
        }
        if y.index() >= self.offset {
            self.local_mut(y).pred.entry(r).or_default().push(x);
        }

        let mut out: Vec<(ConceptId, Task)> = Vec::new();
        let target = self.node(y);
        if target.is_unsatisfiable() {
            out.push((x, Task::Concept(ConceptId::BOTTOM)));
        }
        if let Some(cs) = target.left.get(&r) {
            out.extend(cs.iter().map(|&c| (x, Task::Concept(c))));
        }
        for &(second, s) in &self.rules.chain_first[r.index()] {
            for &(t, z) in &target.succ {
                if t == second {
                    out.push((x, Task::Edge(s, z)));
                }
            }
        }
        if let Some(chains) = self.rules.chain_second.get(r.index()) {
            for &(first, s) in chains {
                if let Some(preds) = self.node(x).pred.get(&first) {
                    out.extend(preds.iter().map(|&w| (w, Task::Edge(s, y))));
                }
            }
        }
        self.queue.extend(out);
    }

    /// Applies the nominal rule once over all pairs; returns whether anything
    /// was queued.
    fn nominal_rule(&mut self, sig: &Signature, root: Option<ConceptId>) -> bool {
        let n = self.nodes.len();
        let mut reach = vec![false; n];
        let mut stack: Vec<ConceptId> = sig.nominals().collect();
        stack.extend(root);
        while let Some(x) = stack.pop() {
            if std::mem::replace(&mut reach[x.index()], true) {
                continue;
            }
            stack.extend(self.nodes[x.index()].succ.iter().map(|&(_, y)| y).filter(|y| !reach[y.index()]));
        }
        let mut changed = false;
        for a in sig.nominals() {
            let members: Vec<usize> =
                (0..n).filter(|&i| reach[i] && self.nodes[i].supers.contains(&a)).collect();
            if members.len() < 2 {
                continue;
            }
            let union: FxHashSet<ConceptId> =
                members.iter().flat_map(|&i| self.nodes[i].supers.iter().copied()).collect();
            for &i in &members {
                for &c in &union {
                    if !self.nodes[i].supers.contains(&c) {
                        self.queue.push_back((ConceptId(i as u32), Task::Concept(c)));
                        changed = true;
                    }
                }
            }
        }
        changed
    }
}

/// Saturated subsumption structure; immutable once built.
#[derive(Clone, Debug)]
pub struct ClassificationIndex {
    pub(crate) signature: Signature,
    pub(crate) rules: RuleIndex,
    pub(crate) nodes: Vec<Node>,
    root: Option<ConceptId>,
}

/// Saturates `set` to fixpoint. With nominals present, the nominal rule
/// only relates concepts reachable from nominals.
pub fn saturate(set: &NormalizedAxiomSet) -> ClassificationIndex {
    saturate_from(set, None)
}

/// Saturates `set`, treating `root` as the concept assumed non-empty for the
/// nominal rule. Answers for `root` are then complete in the presence of
/// nominals.
pub fn saturate_from(set: &NormalizedAxiomSet, root: Option<ConceptId>) -> ClassificationIndex {
    let rules = RuleIndex::build(set);
    let nodes = {
        let mut engine = Engine::full(&rules);
        engine.run(Some((&set.signature, root)));
        engine.nodes
    };
    ClassificationIndex { signature: set.signature.clone(), rules, nodes, root }
}

impl ClassificationIndex {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn root(&self) -> Option<ConceptId> {
        self.root
    }

    pub(crate) fn node(&self, id: ConceptId) -> &Node {
        &self.nodes[id.index()]
    }

    /// `S(id)`, sorted.
    pub fn supers(&self, id: ConceptId) -> Vec<ConceptId> {
        let mut v: Vec<ConceptId> = self.node(id).supers.iter().copied().collect();
        v.sort();
        v
    }

    /// Outgoing role edges of `id`, sorted.
    pub fn edges(&self, id: ConceptId) -> Vec<(RoleId, ConceptId)> {
        let mut v = self.node(id).succ.clone();
        v.sort();
        v
    }

    pub fn is_unsatisfiable(&self, id: ConceptId) -> bool {
        self.node(id).is_unsatisfiable()
    }

    /// Some nominal is unsatisfiable, so every subsumption holds.
    pub fn is_inconsistent(&self) -> bool {
        self.signature.nominals().any(|n| self.is_unsatisfiable(n))
    }

    /// Whether `sub ⊑ sup` was derived.
    pub fn entails(&self, sub: ConceptId, sup: ConceptId) -> bool {
        let node = self.node(sub);
        node.supers.contains(&sup) || node.is_unsatisfiable() || self.is_inconsistent()
    }

    /// Named concepts subsuming `name`, sorted by name, `Top` excluded.
    pub fn named_supers(&self, name: &str) -> Option<Vec<&str>> {
        let id = self.signature.concept(name)?;
        let mut v: Vec<&str> = self
            .node(id)
            .supers
            .iter()
            .filter(|&&c| self.signature.concept_kind(c) == ConceptKind::Named)
            .map(|&c| self.signature.concept_name(c))
            .collect();
        v.sort_unstable();
        Some(v)
    }

    /// Total number of `S` entries and role edges.
    pub fn size(&self) -> usize {
        self.nodes.iter().map(|n| n.supers.len() + n.succ.len()).sum()
    }
}
