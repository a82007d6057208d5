use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::*;
use crate::concept::ConceptExpr as C;
use crate::ontology::RoleChain;
use crate::testutil::{a, and, arb_el, arb_ontology, metrology, some, sub, NAMES, ROLES};

fn ont(axioms: Vec<Axiom>) -> Ontology {
    let mut o = Ontology::new();
    for ax in axioms {
        o.add_axiom(ax);
    }
    o
}

#[test]
fn metrology_subsumptions() {
    let r = Reasoner::new(&metrology());
    assert!(r.subsumes(&a("Steel"), &a("Material")).unwrap());
    assert!(r.subsumes(&a("Oak"), &C::Top).unwrap());
    assert!(r.subsumes(&some("hasMat", a("Steel")), &some("hasMat", a("Metal"))).unwrap());
    assert!(!r.subsumes(&some("hasMat", a("Metal")), &some("hasMat", a("Steel"))).unwrap());
    assert!(r.strictly_subsumed(&a("Steel"), &a("Metal")).unwrap());
    assert!(!r.strictly_subsumed(&a("Metal"), &a("Metal")).unwrap());
    assert!(r.equivalent(&and([a("Steel"), a("Analogic")]), &C::And(vec![a("Analogic"), a("Steel")])).unwrap());
    assert!(r
        .equivalent(
            &some("hasMat", a("Steel")),
            &and([some("hasMat", a("Steel")), some("hasMat", a("Metal"))])
        )
        .unwrap());
}

#[test]
fn told_existentials_are_inherited() {
    let r = Reasoner::new(&metrology());
    assert!(r.subsumes(&a("Instrument"), &some("hasMat", a("Material"))).unwrap());
    assert!(r.subsumes(&a("Measure"), &and([some("hasUnit", C::Top), some("hasDim", a("Dimension"))])).unwrap());
    assert!(!r.subsumes(&a("Instrument"), &some("hasMat", a("Metal"))).unwrap());
}

#[test]
fn unknown_symbols_are_rejected() {
    let r = Reasoner::new(&metrology());
    let err = r.subsumes(&a("Gold"), &a("Metal")).unwrap_err();
    assert!(matches!(err, Error::UnknownSymbol { kind: SymbolKind::Concept, .. }));
    let err = r.subsumes(&some("madeOf", C::Top), &C::Top).unwrap_err();
    assert!(matches!(err, Error::UnknownSymbol { kind: SymbolKind::Role, .. }));
    assert!(r.min_common_named_subsumers(&["Gold"]).is_err());
}

#[test]
fn common_named_subsumers() {
    let r = Reasoner::new(&metrology());
    assert_eq!(r.min_common_named_subsumers(&["Steel", "Iron"]).unwrap(), vec!["Metal"]);
    assert_eq!(r.min_common_named_subsumers(&["Oak", "Steel"]).unwrap(), vec!["Material"]);
    assert_eq!(r.min_common_named_subsumers(&["Steel"]).unwrap(), vec!["Steel"]);
    assert!(r.min_common_named_subsumers(&["Analogic", "Oak"]).unwrap().is_empty());
}

#[test]
fn common_named_subsumers_pick_one_per_equivalence_class() {
    let o = ont(vec![sub("A", "M"), sub("B", "M"), sub("M", "N"), sub("N", "M"), sub("M", "P")]);
    let r = Reasoner::new(&o);
    assert_eq!(r.min_common_named_subsumers(&["A", "B"]).unwrap(), vec!["M"]);
    let o = ont(vec![sub("A", "M"), sub("B", "M"), sub("A", "K"), sub("B", "K")]);
    let r = Reasoner::new(&o);
    assert_eq!(r.min_common_named_subsumers(&["A", "B"]).unwrap(), vec!["K", "M"]);
}

#[test]
fn taxonomy_is_transitively_reduced() {
    let o = ont(vec![sub("A", "B"), sub("B", "C"), sub("A", "C"), sub("C", "D"), sub("D", "C"), Axiom::gci(a("E"), C::Bottom)]);
    let r = Reasoner::new(&o);
    let lines = r.taxonomy().lines();
    assert_eq!(lines, vec!["equiv C D", "sub A B", "sub B C", "sub E Bottom"]);
}

#[test]
fn bottom_and_top() {
    let o = ont(vec![Axiom::gci(a("A"), some("r", a("B"))), Axiom::gci(a("B"), C::Bottom)]);
    let r = Reasoner::new(&o);
    assert!(!r.is_satisfiable(&a("A")).unwrap());
    assert!(r.subsumes(&a("A"), &a("B")).unwrap());
    assert!(!r.is_satisfiable(&some("r", a("A"))).unwrap());
    assert!(r.subsumes(&C::Bottom, &a("A")).unwrap());
    assert!(!r.subsumes(&C::Top, &a("A")).unwrap());
}

#[test]
fn role_axioms_feed_query_answers() {
    let mut o = ont(vec![Axiom::gci(some("t", a("B")), a("F"))]);
    o.add_axiom(Axiom::RoleInclusion(RoleChain::single("r"), "t".into()));
    o.add_axiom(Axiom::RoleInclusion(RoleChain::new(vec!["r".into(), "r".into(), "r".into()]).unwrap(), "u".into()));
    let r = Reasoner::new(&o);
    assert!(r.subsumes(&some("r", a("B")), &a("F")).unwrap());
    assert!(r.subsumes(&some("r", a("B")), &some("t", C::Top)).unwrap());
    let chain = some("r", some("r", some("r", a("B"))));
    assert!(r.subsumes(&chain, &some("u", a("B"))).unwrap());
    assert!(!r.subsumes(&some("r", some("r", a("B"))), &some("u", a("B"))).unwrap());
}

#[test]
fn nominal_consequences_through_the_query() {
    let mut o = ont(vec![Axiom::gci(a("B"), C::nominal("x"))]);
    o.declare_concept("A");
    o.declare_role("r");
    o.declare_role("s");
    let r = Reasoner::new(&o);
    let c = and([some("r", and([a("A"), C::nominal("x")])), some("s", a("B"))]);
    assert!(r.subsumes(&c, &some("s", a("A"))).unwrap());
    assert!(!r.subsumes(&some("s", a("B")), &some("s", a("A"))).unwrap());
    assert!(subsumes_by_resaturation(&o, &c, &some("s", a("A"))).unwrap());
}

#[test]
fn nominal_consequences_through_nominals() {
    let o = ont(vec![
        Axiom::gci(C::nominal("x"), some("r", and([a("A"), C::nominal("y")]))),
        Axiom::gci(a("B"), C::nominal("y")),
    ]);
    let r = Reasoner::new(&o);
    assert!(r.subsumes(&a("B"), &a("A")).unwrap());
    assert!(r.min_common_named_subsumers(&["B"]).unwrap() == vec!["B"]);
    assert!(r.taxonomy().direct.contains(&("B".to_string(), "A".to_string())));
}

#[test]
fn nominal_rule_needs_reachable_holders() {
    // C may be empty, so D ⊑ {a} does not make D inherit C's subsumers
    let o = ont(vec![
        Axiom::gci(a("C"), C::nominal("a")),
        Axiom::gci(a("C"), a("B")),
        Axiom::gci(a("C"), some("r", a("D"))),
        Axiom::gci(a("D"), C::nominal("a")),
    ]);
    let r = Reasoner::new(&o);
    assert!(!r.subsumes(&a("D"), &a("B")).unwrap());
    assert!(!subsumes_by_resaturation(&o, &a("D"), &a("B")).unwrap());
    assert!(r.subsumes(&a("C"), &some("r", a("B"))).unwrap());
}

/// Subsumption by completion over the subterms of the ontology and the
/// queries, without normalization. Nodes are subterms; `S(X)` collects the
/// subterms implied by `X`; edges follow existentials.
struct SubtermClosure {
    terms: Vec<C>,
    supers: Vec<BTreeSet<usize>>,
}

impl SubtermClosure {
    fn new(o: &Ontology, queries: &[C]) -> Self {
        fn collect(e: &C, out: &mut BTreeSet<C>) {
            out.insert(e.clone());
            match e {
                C::And(ms) => ms.iter().for_each(|m| collect(m, out)),
                C::Some(_, f) => collect(f, out),
                _ => {}
            }
        }
        let mut set = BTreeSet::new();
        set.insert(C::Top);
        set.extend(o.concept_names().iter().map(C::atom));
        let gcis: Vec<(C, C)> = o
            .cbox()
            .map(|ax| match ax {
                Axiom::Gci(l, r) => (canonicalize(l), canonicalize(r)),
                other => panic!("unsupported axiom {other}"),
            })
            .collect();
        for (l, r) in &gcis {
            collect(l, &mut set);
            collect(r, &mut set);
        }
        for q in queries {
            collect(&canonicalize(q), &mut set);
        }
        let terms: Vec<C> = set.into_iter().collect();
        let id: BTreeMap<&C, usize> = terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let top = id[&C::Top];
        let n = terms.len();
        let mut supers: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i, top])).collect();
        let axioms: Vec<(usize, usize)> = gcis.iter().map(|(l, r)| (id[l], id[r])).collect();
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut add = BTreeSet::new();
                for &e in &supers[x] {
                    for &(l, r) in &axioms {
                        if l == e {
                            add.insert(r);
                        }
                    }
                    if let C::And(ms) = &terms[e] {
                        add.extend(ms.iter().map(|m| id[m]));
                    }
                }
                for (t, term) in terms.iter().enumerate() {
                    match term {
                        C::And(ms) if ms.iter().all(|m| supers[x].contains(&id[m])) => {
                            add.insert(t);
                        }
                        C::Some(role, g) => {
                            let g = id[&**g];
                            let fires = supers[x].iter().any(|&e| match &terms[e] {
                                C::Some(r2, y) => r2 == role && supers[id[&**y]].contains(&g),
                                _ => false,
                            });
                            if fires {
                                add.insert(t);
                            }
                        }
                        _ => {}
                    }
                }
                let before = supers[x].len();
                supers[x].extend(add);
                changed |= supers[x].len() != before;
            }
            if !changed {
                break;
            }
        }
        SubtermClosure { terms, supers }
    }

    fn subsumes(&self, c: &C, d: &C) -> bool {
        let (c, d) = (canonicalize(c), canonicalize(d));
        let ci = self.terms.iter().position(|t| *t == c).unwrap();
        let di = self.terms.iter().position(|t| *t == d).unwrap();
        self.supers[ci].contains(&di)
    }
}

/// Naive fixpoint over every rule instantiation of a nominal-free
/// normalized set. Returns `S` per concept.
#[allow(clippy::needless_range_loop)]
fn brute_force_closure(set: &NormalizedAxiomSet) -> Vec<BTreeSet<ConceptId>> {
    let n = set.signature().concept_count();
    let mut s: Vec<BTreeSet<ConceptId>> =
        (0..n as u32).map(|i| BTreeSet::from([ConceptId(i), ConceptId::TOP])).collect();
    let mut edges: BTreeSet<(RoleId, ConceptId, ConceptId)> = BTreeSet::new();
    loop {
        let before = (s.iter().map(BTreeSet::len).sum::<usize>(), edges.len());
        for x in 0..n {
            for g in set.gcis() {
                match *g {
                    NormalGci::Sub(p, q) if s[x].contains(&p) => {
                        s[x].insert(q);
                    }
                    NormalGci::Conj(p1, p2, q) if s[x].contains(&p1) && s[x].contains(&p2) => {
                        s[x].insert(q);
                    }
                    NormalGci::ExistsRight(p, r, q) if s[x].contains(&p) => {
                        edges.insert((r, ConceptId(x as u32), q));
                    }
                    _ => {}
                }
            }
        }
        let snapshot: Vec<_> = edges.iter().copied().collect();
        for &(r, x, y) in &snapshot {
            for g in set.gcis() {
                if let NormalGci::ExistsLeft(r2, p, q) = *g {
                    if r2 == r && s[y.index()].contains(&p) {
                        s[x.index()].insert(q);
                    }
                }
            }
            if s[y.index()].contains(&ConceptId::BOTTOM) {
                s[x.index()].insert(ConceptId::BOTTOM);
            }
            for ra in set.role_axioms() {
                match *ra {
                    NormalRoleAxiom::Sub(r1, r2) if r1 == r => {
                        edges.insert((r2, x, y));
                    }
                    NormalRoleAxiom::Chain(r1, r2, t) if r1 == r => {
                        for &(r3, y2, z) in &snapshot {
                            if r3 == r2 && y2 == y {
                                edges.insert((t, x, z));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        if (s.iter().map(BTreeSet::len).sum::<usize>(), edges.len()) == before {
            return s;
        }
    }
}

fn closure_agrees(o: &Ontology) {
    let set = normalize(o, &[]).unwrap();
    let index = saturate(&set);
    let oracle = brute_force_closure(&set);
    for id in set.signature().concept_ids() {
        let got: BTreeSet<ConceptId> = index.supers(id).into_iter().collect();
        assert_eq!(got, oracle[id.index()], "concept {}", set.signature().concept_name(id));
    }
}

#[test]
fn brute_force_confirms_introduction_then_elimination() {
    let o = ont(vec![Axiom::gci(a("A"), some("r", a("B"))), Axiom::gci(some("r", a("B")), a("C"))]);
    closure_agrees(&o);
    let r = Reasoner::new(&o);
    assert!(r.subsumes(&a("A"), &a("C")).unwrap());
    let sat = saturate(&normalize(&o, &[]).unwrap());
    assert!(sat.named_supers("A").unwrap().contains(&"C"));
}

#[test]
fn brute_force_confirms_existential_monotonicity_on_metrology() {
    let o = ont(vec![sub("Steel", "Metal"), sub("Metal", "Material")]);
    let mut o2 = o.clone();
    o2.declare_role("hasMat");
    let oracle = SubtermClosure::new(&o2, &[some("hasMat", a("Steel")), some("hasMat", a("Metal"))]);
    assert!(oracle.subsumes(&some("hasMat", a("Steel")), &some("hasMat", a("Metal"))));
    assert!(!oracle.subsumes(&some("hasMat", a("Metal")), &some("hasMat", a("Steel"))));
}

#[test]
fn normalization_is_conservative_on_a_nested_left_side() {
    let o = ont(vec![
        Axiom::gci(some("r", and([a("C"), a("D")])), a("E")),
        Axiom::gci(a("A"), some("r", a("C"))),
        Axiom::gci(a("A"), some("r", a("D"))),
        Axiom::gci(a("B"), some("r", and([a("C"), a("D")]))),
    ]);
    let r = Reasoner::new(&o);
    let oracle = SubtermClosure::new(&o, &[]);
    for x in NAMES {
        for y in NAMES {
            assert_eq!(r.subsumes(&a(x), &a(y)).unwrap(), oracle.subsumes(&a(x), &a(y)), "{x} ⊑ {y}");
        }
    }
    assert!(r.subsumes(&a("B"), &a("E")).unwrap());
    assert!(!r.subsumes(&a("A"), &a("E")).unwrap());
}

fn atomic_ontology(edges: &[(usize, usize)]) -> Ontology {
    let names = ["N0", "N1", "N2", "N3", "N4", "N5"];
    let mut o = Ontology::new();
    for n in names {
        o.declare_concept(n);
    }
    for &(x, y) in edges {
        o.add_axiom(sub(names[x], names[y]));
    }
    o
}

fn graph_closure(edges: &[(usize, usize)]) -> [[bool; 6]; 6] {
    let mut reach = [[false; 6]; 6];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(x, y) in edges {
        reach[x][y] = true;
    }
    for k in 0..6 {
        for i in 0..6 {
            for j in 0..6 {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach
}

fn role_axioms() -> impl Strategy<Value = Vec<Axiom>> {
    let role = || prop::sample::select(vec!["r", "s", "t"]);
    prop::collection::vec(
        prop_oneof![
            (role(), role()).prop_map(|(x, y)| Axiom::RoleInclusion(RoleChain::single(x), y.into())),
            (role(), role(), role()).prop_map(|(x, y, z)| Axiom::RoleInclusion(
                RoleChain::new(vec![x.into(), y.into()]).unwrap(),
                z.into()
            )),
        ],
        0..3,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn agrees_with_graph_closure(edges in prop::collection::vec((0usize..6, 0usize..6), 0..12)) {
        let o = atomic_ontology(&edges);
        let r = Reasoner::new(&o);
        let reach = graph_closure(&edges);
        for (i, row) in reach.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                let (x, y) = (a(&format!("N{i}")), a(&format!("N{j}")));
                prop_assert_eq!(r.subsumes(&x, &y).unwrap(), want);
            }
        }
    }

    #[test]
    fn saturation_matches_brute_force(o in arb_ontology(6), roles in role_axioms()) {
        let mut o = o;
        for ax in roles {
            o.add_axiom(ax);
        }
        closure_agrees(&o);
    }

    #[test]
    fn agrees_with_subterm_closure(o in arb_ontology(5), c in arb_el(2), d in arb_el(2)) {
        let r = Reasoner::new(&o);
        let oracle = SubtermClosure::new(&o, &[c.clone(), d.clone()]);
        prop_assert_eq!(r.subsumes(&c, &d).unwrap(), oracle.subsumes(&c, &d));
        for x in NAMES {
            for y in NAMES {
                prop_assert_eq!(r.subsumes(&a(x), &a(y)).unwrap(), oracle.subsumes(&a(x), &a(y)));
            }
        }
    }

    #[test]
    fn overlay_agrees_with_resaturation(o in arb_ontology(5), c in arb_el(2), d in arb_el(2)) {
        let r = Reasoner::new(&o);
        prop_assert_eq!(r.subsumes(&c, &d).unwrap(), subsumes_by_resaturation(&o, &c, &d).unwrap());
    }

    #[test]
    fn reflexivity_and_bounds(o in arb_ontology(4), c in arb_el(2)) {
        let r = Reasoner::new(&o);
        prop_assert!(r.subsumes(&c, &c).unwrap());
        prop_assert!(r.subsumes(&c, &C::Top).unwrap());
        prop_assert!(r.subsumes(&C::Bottom, &c).unwrap());
    }

    #[test]
    fn transitivity(o in arb_ontology(4), x in arb_el(2), y in arb_el(2), z in arb_el(2)) {
        let r = Reasoner::new(&o);
        if r.subsumes(&x, &y).unwrap() && r.subsumes(&y, &z).unwrap() {
            prop_assert!(r.subsumes(&x, &z).unwrap());
        }
    }

    #[test]
    fn conjunction_laws(o in arb_ontology(4), c in arb_el(2), d in arb_el(2), e in arb_el(2)) {
        let r = Reasoner::new(&o);
        let cd = C::And(vec![c.clone(), d.clone()]);
        prop_assert!(r.subsumes(&cd, &c).unwrap());
        prop_assert!(r.subsumes(&cd, &d).unwrap());
        prop_assert_eq!(
            r.subsumes(&e, &cd).unwrap(),
            r.subsumes(&e, &c).unwrap() && r.subsumes(&e, &d).unwrap()
        );
    }

    #[test]
    fn existential_monotonicity(o in arb_ontology(4), c in arb_el(2), d in arb_el(2), role in prop::sample::select(ROLES.to_vec())) {
        let r = Reasoner::new(&o);
        if r.subsumes(&c, &d).unwrap() {
            prop_assert!(r.subsumes(&C::some(role, c), &C::some(role, d)).unwrap());
        }
    }

    #[test]
    fn model_answers_match_one_shot_queries(o in arb_ontology(4), c in arb_el(2), ds in prop::collection::vec(arb_el(2), 1..5)) {
        let r = Reasoner::new(&o);
        let m = r.model(&c).unwrap();
        for d in &ds {
            prop_assert_eq!(m.entails(d).unwrap(), r.subsumes(&c, d).unwrap());
        }
    }
}
