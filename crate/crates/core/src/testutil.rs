//! Shared fixtures and generators for unit tests.

use proptest::prelude::*;

use crate::concept::ConceptExpr as C;
use crate::ontology::{Axiom, ComponentDecl, Ontology};

pub(crate) fn a(name: &str) -> C {
    C::atom(name)
}

pub(crate) fn some(role: &str, filler: C) -> C {
    C::some(role, filler)
}

pub(crate) fn and<const N: usize>(members: [C; N]) -> C {
    C::conjunction(members)
}

pub(crate) fn sub(lhs: &str, rhs: &str) -> Axiom {
    Axiom::gci(a(lhs), a(rhs))
}

/// The metrology CBox with its two components.
pub(crate) fn metrology() -> Ontology {
    let mut o = Ontology::new();
    o.add_axiom(Axiom::gci(
        a("Measure"),
        and([some("hasUnit", a("Unit")), some("hasDim", a("Dimension"))]),
    ));
    o.add_axiom(Axiom::gci(
        a("Instrument"),
        and([
            some("hasMat", a("Material")),
            some("hasIT", a("InstrumentType")),
            some("hasRM", a("ReadingMode")),
        ]),
    ));
    for (x, y) in [
        ("Metal", "Material"),
        ("Steel", "Metal"),
        ("Iron", "Metal"),
        ("Wood", "Material"),
        ("Oak", "Wood"),
        ("Analogic", "ReadingMode"),
        ("Numeric", "ReadingMode"),
        ("Length", "Dimension"),
        ("Centimeter", "Unit"),
        ("Ruler", "InstrumentType"),
        ("Calliper", "InstrumentType"),
    ] {
        o.add_axiom(sub(x, y));
    }
    o.add_component(ComponentDecl::new("hasInstrument", "Instrument")).unwrap();
    o.add_component(ComponentDecl::new("hasMeasure", "Measure")).unwrap();
    o
}

pub(crate) const NAMES: [&str; 5] = ["A", "B", "C", "D", "E"];
pub(crate) const ROLES: [&str; 2] = ["r", "s"];

/// Nominal-free, Bottom-free descriptions over [`NAMES`] and [`ROLES`].
pub(crate) fn arb_el(depth: u32) -> impl Strategy<Value = C> {
    let leaf = prop_oneof![1 => Just(C::Top), 6 => prop::sample::select(NAMES.to_vec()).prop_map(C::atom)];
    leaf.prop_recursive(depth, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(C::conjunction),
            (prop::sample::select(ROLES.to_vec()), inner).prop_map(|(r, f)| C::some(r, f)),
        ]
    })
}

/// Random EL ontologies over [`NAMES`] and [`ROLES`]: GCIs between
/// descriptions of depth ≤ 1, every name declared.
pub(crate) fn arb_ontology(max_axioms: usize) -> impl Strategy<Value = Ontology> {
    prop::collection::vec((arb_el(1), arb_el(1)), 0..=max_axioms).prop_map(|gcis| {
        let mut o = Ontology::new();
        for n in NAMES {
            o.declare_concept(n);
        }
        for r in ROLES {
            o.declare_role(r);
        }
        for (l, r) in gcis {
            o.add_axiom(Axiom::gci(l, r));
        }
        o
    })
}

/// Random atom hierarchies over [`NAMES`]; roles declared, no role axioms.
pub(crate) fn arb_hierarchy(max_axioms: usize) -> impl Strategy<Value = Ontology> {
    let name = || prop::sample::select(NAMES.to_vec());
    prop::collection::vec((name(), name()), 0..=max_axioms).prop_map(|pairs| {
        let mut o = Ontology::new();
        for n in NAMES {
            o.declare_concept(n);
        }
        for r in ROLES {
            o.declare_role(r);
        }
        for (x, y) in pairs {
            o.add_axiom(sub(x, y));
        }
        o
    })
}
