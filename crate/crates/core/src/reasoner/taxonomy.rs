use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashSet;

use super::{ConceptId, Reasoner};

/// Named-concept hierarchy: equivalence classes and their direct
/// subsumers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Taxonomy {
    /// Each class sorted, representative first; classes sorted by
    /// representative.
    pub classes: Vec<Vec<String>>,
    /// `(sub, sup)` between representatives, transitively reduced.
    pub direct: Vec<(String, String)>,
    pub unsatisfiable: Vec<String>,
}

impl Taxonomy {
    pub(crate) fn build(reasoner: &Reasoner) -> Self {
        let sig = reasoner.normalized().signature();
        let mut unsatisfiable = Vec::new();
        let mut supers: BTreeMap<String, FxHashSet<ConceptId>> = BTreeMap::new();
        let mut ids: BTreeMap<String, ConceptId> = BTreeMap::new();
        for id in sig.named_concepts() {
            let name = sig.concept_name(id).to_string();
            let (s, unsat) = reasoner.named_supers(id);
            if unsat {
                unsatisfiable.push(name);
            } else {
                ids.insert(name.clone(), id);
                supers.insert(name, s);
            }
        }
        unsatisfiable.sort();

        // representative = smallest name of its equivalence class
        let mut rep: BTreeMap<&str, &str> = BTreeMap::new();
        let mut classes: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        for (name, s) in &supers {
            let r = s
                .iter()
                .map(|&c| sig.concept_name(c))
                .filter(|other| supers.get(*other).is_some_and(|o| o.contains(&ids[name])))
                .min()
                .unwrap_or(name);
            rep.insert(name, r);
            classes.entry(r).or_default().push(name.clone());
        }

        let mut direct = Vec::new();
        for &r in classes.keys() {
            let strict: Vec<&str> = supers[r]
                .iter()
                .map(|&c| rep[sig.concept_name(c)])
                .filter(|&s| s != r)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            for &s in &strict {
                let implied = strict.iter().any(|&m| m != s && supers[m].contains(&ids[s]));
                if !implied {
                    direct.push((r.to_string(), s.to_string()));
                }
            }
        }

        let classes = classes
            .into_values()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        Taxonomy { classes, direct, unsatisfiable }
    }

    /// `sub`/`equiv` lines in ontology document syntax.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for class in &self.classes {
            for other in &class[1..] {
                out.push(format!("equiv {} {}", class[0], other));
            }
        }
        out.extend(self.direct.iter().map(|(a, b)| format!("sub {a} {b}")));
        out.extend(self.unsatisfiable.iter().map(|a| format!("sub {a} Bottom")));
        out
    }
}

impl fmt::Display for Taxonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
