//! Concept expressions of the EL++ fragment (without concrete domains).
//!
//! Expressions render to the same concrete syntax the parser accepts:
//! `Top`, `Bottom`, `Name`, `{ind}`, `and(C, D, ...)` and `some(role, C)`.
//! That rendering doubles as the canonical ordering key for conjunctions.

use std::fmt;

/// An EL++ concept description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConceptExpr {
    Top,
    Bottom,
    Atom(String),
    Nominal(String),
    And(Vec<ConceptExpr>),
    Some(String, Box<ConceptExpr>),
}

impl ConceptExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        ConceptExpr::Atom(name.into())
    }

    pub fn nominal(individual: impl Into<String>) -> Self {
        ConceptExpr::Nominal(individual.into())
    }

    pub fn some(role: impl Into<String>, filler: ConceptExpr) -> Self {
        ConceptExpr::Some(role.into(), Box::new(filler))
    }

    /// Raw conjunction, not canonicalized. Zero members give `Top`, one
    /// member gives the member itself.
    pub fn and(members: impl IntoIterator<Item = ConceptExpr>) -> Self {
        let mut members: Vec<ConceptExpr> = members.into_iter().collect();
        match members.len() {
            0 => ConceptExpr::Top,
            1 => members.pop().unwrap(),
            _ => ConceptExpr::And(members),
        }
    }

    /// Canonical conjunction of the given members.
    pub fn conjunction(members: impl IntoIterator<Item = ConceptExpr>) -> Self {
        canonicalize(&ConceptExpr::and(members))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, ConceptExpr::Top)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, ConceptExpr::Bottom)
    }

    /// Top-level conjuncts. `Top` has none; a non-conjunction is its own
    /// single conjunct.
    pub fn conjuncts(&self) -> &[ConceptExpr] {
        match self {
            ConceptExpr::Top => &[],
            ConceptExpr::And(members) => members,
            other => std::slice::from_ref(other),
        }
    }

    /// Maximal nesting depth of existential restrictions.
    pub fn role_depth(&self) -> usize {
        match self {
            ConceptExpr::And(members) => members.iter().map(Self::role_depth).max().unwrap_or(0),
            ConceptExpr::Some(_, filler) => 1 + filler.role_depth(),
            _ => 0,
        }
    }

    pub fn contains_nominal(&self) -> bool {
        match self {
            ConceptExpr::Nominal(_) => true,
            ConceptExpr::And(members) => members.iter().any(Self::contains_nominal),
            ConceptExpr::Some(_, filler) => filler.contains_nominal(),
            _ => false,
        }
    }

    pub fn contains_bottom(&self) -> bool {
        match self {
            ConceptExpr::Bottom => true,
            ConceptExpr::And(members) => members.iter().any(Self::contains_bottom),
            ConceptExpr::Some(_, filler) => filler.contains_bottom(),
            _ => false,
        }
    }

    /// Visits every concept name, role name and individual name, in
    /// left-to-right order.
    pub fn visit_symbols<'a>(&'a self, f: &mut impl FnMut(Symbol<'a>)) {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom => {}
            ConceptExpr::Atom(name) => f(Symbol::Concept(name)),
            ConceptExpr::Nominal(ind) => f(Symbol::Individual(ind)),
            ConceptExpr::And(members) => members.iter().for_each(|m| m.visit_symbols(f)),
            ConceptExpr::Some(role, filler) => {
                f(Symbol::Role(role));
                filler.visit_symbols(f);
            }
        }
    }
}

/// A reference to a named symbol inside an expression or axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol<'a> {
    Concept(&'a str),
    Role(&'a str),
    Individual(&'a str),
}

impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptExpr::Top => f.write_str("Top"),
            ConceptExpr::Bottom => f.write_str("Bottom"),
            ConceptExpr::Atom(name) => f.write_str(name),
            ConceptExpr::Nominal(ind) => write!(f, "{{{ind}}}"),
            ConceptExpr::And(members) => {
                f.write_str("and(")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
            ConceptExpr::Some(role, filler) => write!(f, "some({role}, {filler})"),
        }
    }
}

/// Returns the canonical form of `expr`.
///
/// Conjunctions are flattened, `Top` members dropped, duplicates removed and
/// members sorted by their rendering. `Bottom` absorbs a conjunction, and
/// `some(r, Bottom)` collapses to `Bottom`.
pub fn canonicalize(expr: &ConceptExpr) -> ConceptExpr {
    match expr {
        ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Atom(_) | ConceptExpr::Nominal(_) => {
            expr.clone()
        }
        ConceptExpr::Some(role, filler) => match canonicalize(filler) {
            ConceptExpr::Bottom => ConceptExpr::Bottom,
            filler => ConceptExpr::Some(role.clone(), Box::new(filler)),
        },
        ConceptExpr::And(members) => {
            let mut flat = Vec::with_capacity(members.len());
            for m in members {
                match canonicalize(m) {
                    ConceptExpr::Bottom => return ConceptExpr::Bottom,
                    ConceptExpr::Top => {}
                    ConceptExpr::And(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            let mut keyed: Vec<(String, ConceptExpr)> =
                flat.into_iter().map(|m| (m.to_string(), m)).collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            keyed.dedup_by(|a, b| a.0 == b.0);
            ConceptExpr::and(keyed.into_iter().map(|(_, m)| m))
        }
    }
}

/// Number of atomic concept occurrences; nominals count as one, `Top` and
/// `Bottom` as zero.
pub fn syntactic_length(expr: &ConceptExpr) -> usize {
    match expr {
        ConceptExpr::Top | ConceptExpr::Bottom => 0,
        ConceptExpr::Atom(_) | ConceptExpr::Nominal(_) => 1,
        ConceptExpr::And(members) => members.iter().map(syntactic_length).sum(),
        ConceptExpr::Some(_, filler) => syntactic_length(filler),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(n: &str) -> ConceptExpr {
        ConceptExpr::atom(n)
    }

    #[test]
    fn canonical_examples() {
        let e = ConceptExpr::And(vec![a("B"), a("A"), a("A")]);
        assert_eq!(canonicalize(&e), ConceptExpr::And(vec![a("A"), a("B")]));

        let e = ConceptExpr::And(vec![a("A"), ConceptExpr::And(vec![a("B"), a("C")])]);
        assert_eq!(canonicalize(&e), ConceptExpr::And(vec![a("A"), a("B"), a("C")]));

        let e = ConceptExpr::And(vec![a("A"), ConceptExpr::Bottom]);
        assert_eq!(canonicalize(&e), ConceptExpr::Bottom);
    }

    #[test]
    fn top_is_dropped_from_conjunctions() {
        let e = ConceptExpr::And(vec![ConceptExpr::Top, a("A")]);
        assert_eq!(canonicalize(&e), a("A"));
        let e = ConceptExpr::And(vec![ConceptExpr::Top, ConceptExpr::Top]);
        assert_eq!(canonicalize(&e), ConceptExpr::Top);
    }

    #[test]
    fn nested_fillers_are_canonical() {
        let e = ConceptExpr::some("r", ConceptExpr::And(vec![a("B"), a("A")]));
        assert_eq!(canonicalize(&e).to_string(), "some(r, and(A, B))");
        let e = ConceptExpr::some("r", ConceptExpr::Bottom);
        assert_eq!(canonicalize(&e), ConceptExpr::Bottom);
    }

    #[test]
    fn length_examples() {
        assert_eq!(syntactic_length(&ConceptExpr::And(vec![a("Steel"), a("Analogic")])), 2);
        assert_eq!(syntactic_length(&ConceptExpr::Top), 0);
        let e = ConceptExpr::And(vec![
            ConceptExpr::some("hasMat", a("Metal")),
            ConceptExpr::some("hasRM", a("Analogic")),
        ]);
        assert_eq!(syntactic_length(&e), 2);
        assert_eq!(syntactic_length(&ConceptExpr::nominal("a")), 1);
    }

    #[test]
    fn rendering() {
        let e = ConceptExpr::And(vec![
            ConceptExpr::some("r", ConceptExpr::nominal("x")),
            ConceptExpr::Top,
            a("A"),
        ]);
        assert_eq!(e.to_string(), "and(some(r, {x}), Top, A)");
    }

    pub(crate) fn arb_expr() -> impl Strategy<Value = ConceptExpr> {
        let leaf = prop_oneof![
            Just(ConceptExpr::Top),
            Just(ConceptExpr::Bottom),
            prop::sample::select(vec!["A", "B", "C", "D"]).prop_map(ConceptExpr::atom),
            prop::sample::select(vec!["x", "y"]).prop_map(ConceptExpr::nominal),
        ];
        leaf.prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(ConceptExpr::And),
                (prop::sample::select(vec!["r", "s"]), inner)
                    .prop_map(|(r, f)| ConceptExpr::some(r, f)),
            ]
        })
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(e in arb_expr()) {
            let once = canonicalize(&e);
            prop_assert_eq!(canonicalize(&once), once);
        }

        #[test]
        fn canonicalize_ignores_member_order(
            members in prop::collection::vec(arb_expr(), 2..5),
            seed in any::<u64>(),
        ) {
            let mut shuffled = members.clone();
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            if seed % 2 == 0 {
                shuffled.reverse();
            }
            prop_assert_eq!(
                canonicalize(&ConceptExpr::And(members)),
                canonicalize(&ConceptExpr::And(shuffled))
            );
        }

        #[test]
        fn canonicalize_never_grows_length(e in arb_expr()) {
            prop_assert!(syntactic_length(&canonicalize(&e)) <= syntactic_length(&e));
        }

        #[test]
        fn length_is_additive_without_shared_conjuncts(x in arb_expr(), y in arb_expr()) {
            let (x, y) = (canonicalize(&x), canonicalize(&y));
            let shared = x.conjuncts().iter().any(|c| y.conjuncts().contains(c));
            prop_assume!(!shared && !x.is_bottom() && !y.is_bottom());
            let both = canonicalize(&ConceptExpr::And(vec![x.clone(), y.clone()]));
            prop_assert_eq!(syntactic_length(&both), syntactic_length(&x) + syntactic_length(&y));
        }
    }
}
