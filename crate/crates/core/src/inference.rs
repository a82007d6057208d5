//! Non-standard inferences over a [`Reasoner`]: reduction, least common
//! subsumer, semantic difference and the `Rest`/`Miss` residues.
//!
//! All services work on [`SimpleDescription`]s, conjunctions of atoms and
//! existentials without `Bottom` or nominals.

use std::fmt;

use crate::concept::{canonicalize, syntactic_length, ConceptExpr};
use crate::error::{Error, Result};
use crate::reasoner::Reasoner;

/// A canonical description built from `Top`, atoms, existentials and
/// conjunctions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleDescription(ConceptExpr);

impl SimpleDescription {
    pub fn new(expr: &ConceptExpr) -> Result<Self> {
        if expr.contains_nominal() {
            return Err(Error::NominalUnsupported(expr.to_string()));
        }
        if expr.contains_bottom() {
            return Err(Error::BottomUnsupported(expr.to_string()));
        }
        Ok(SimpleDescription(canonicalize(expr)))
    }

    pub fn top() -> Self {
        SimpleDescription(ConceptExpr::Top)
    }

    pub fn expr(&self) -> &ConceptExpr {
        &self.0
    }

    pub fn into_expr(self) -> ConceptExpr {
        self.0
    }

    pub fn is_top(&self) -> bool {
        self.0.is_top()
    }

    pub fn conjuncts(&self) -> &[ConceptExpr] {
        self.0.conjuncts()
    }

    pub fn len(&self) -> usize {
        syntactic_length(&self.0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn from_conjuncts(members: Vec<ConceptExpr>) -> Self {
        SimpleDescription(ConceptExpr::conjunction(members))
    }
}

impl fmt::Display for SimpleDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<ConceptExpr> for SimpleDescription {
    type Error = Error;

    fn try_from(expr: ConceptExpr) -> Result<Self> {
        SimpleDescription::new(&expr)
    }
}

/// Removes conjuncts strictly subsumed by a sibling and keeps the smallest
/// rendering among equivalent siblings, fillers first.
pub fn reduce(c: &SimpleDescription, reasoner: &Reasoner) -> Result<SimpleDescription> {
    Ok(SimpleDescription(reduce_expr(c.expr(), reasoner)?))
}

fn reduce_expr(c: &ConceptExpr, reasoner: &Reasoner) -> Result<ConceptExpr> {
    let mut members = Vec::with_capacity(c.conjuncts().len());
    for m in c.conjuncts() {
        members.push(match m {
            ConceptExpr::Some(r, f) => ConceptExpr::some(r.clone(), reduce_expr(f, reasoner)?),
            other => other.clone(),
        });
    }
    let members = match ConceptExpr::conjunction(members) {
        ConceptExpr::And(ms) => ms,
        single => return Ok(single),
    };

    let keys: Vec<String> = members.iter().map(ToString::to_string).collect();
    let models = members.iter().map(|m| reasoner.model(m)).collect::<Result<Vec<_>>>()?;
    let n = members.len();
    // below[i][j]: members[i] ⊑ members[j]
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            below[i][j] = i == j || models[i].entails(&members[j])?;
        }
    }
    let kept = (0..n).filter(|&x| {
        !(0..n).any(|y| y != x && below[y][x] && (!below[x][y] || keys[y] < keys[x]))
    });
    Ok(ConceptExpr::conjunction(kept.map(|i| members[i].clone())))
}

/// Least common subsumer, built structurally: for every pair of atoms the
/// more general one when they are comparable and their minimal common named
/// subsumers otherwise, and `∃r.lcs(c', d')` for every pair of
/// existentials over the same role. The result is reduced.
pub fn lcs(c: &SimpleDescription, d: &SimpleDescription, reasoner: &Reasoner) -> Result<SimpleDescription> {
    let raw = lcs_expr(c.expr(), d.expr(), reasoner)?;
    Ok(SimpleDescription(reduce_expr(&raw, reasoner)?))
}

fn lcs_expr(c: &ConceptExpr, d: &ConceptExpr, reasoner: &Reasoner) -> Result<ConceptExpr> {
    let mut members = Vec::new();
    for x in c.conjuncts() {
        for y in d.conjuncts() {
            match (x, y) {
                (ConceptExpr::Atom(p), ConceptExpr::Atom(q)) => {
                    let (up, down) = (reasoner.subsumes(x, y)?, reasoner.subsumes(y, x)?);
                    if up && down {
                        members.push(x.min(y).clone());
                    } else if up {
                        members.push(y.clone());
                    } else if down {
                        members.push(x.clone());
                    } else {
                        let common = reasoner.min_common_named_subsumers(&[p, q])?;
                        members.extend(common.into_iter().map(ConceptExpr::Atom));
                    }
                }
                (ConceptExpr::Some(r, f), ConceptExpr::Some(s, g)) if r == s => {
                    members.push(ConceptExpr::some(r.clone(), lcs_expr(f, g, reasoner)?));
                }
                _ => {}
            }
        }
    }
    Ok(ConceptExpr::conjunction(members))
}

/// `c ⊖ d` for `c ⊑ d`: the conjuncts of `c` not implied by `d`, `Top` when
/// none remain. Verifies that the result conjoined with `d` is equivalent to
/// `c`.
pub fn semantic_difference(
    c: &SimpleDescription,
    d: &SimpleDescription,
    reasoner: &Reasoner,
) -> Result<SimpleDescription> {
    if !reasoner.subsumes(c.expr(), d.expr())? {
        return Err(Error::PreconditionViolated { sub: c.to_string(), sup: d.to_string() });
    }
    let dm = reasoner.model(d.expr())?;
    let mut kept = Vec::new();
    for x in c.conjuncts() {
        if !dm.entails(x)? {
            kept.push(x.clone());
        }
    }
    let diff = reduce(&SimpleDescription::from_conjuncts(kept), reasoner)?;
    let rebuilt = ConceptExpr::And(vec![diff.expr().clone(), d.expr().clone()]);
    if !reasoner.equivalent(&rebuilt, c.expr())? {
        return Err(Error::ReconstructionFailed { minuend: c.to_string(), subtrahend: d.to_string() });
    }
    Ok(diff)
}

/// The common part of a demand and an offer and what is left on either side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub lcs: SimpleDescription,
    /// Demand content the offer does not cover.
    pub rest: SimpleDescription,
    /// Offer content the demand does not ask for.
    pub miss: SimpleDescription,
}

pub fn residue(demand: &SimpleDescription, offer: &SimpleDescription, reasoner: &Reasoner) -> Result<Residue> {
    let common = lcs(demand, offer, reasoner)?;
    let rest = semantic_difference(demand, &common, reasoner)?;
    let miss = semantic_difference(offer, &common, reasoner)?;
    Ok(Residue { lcs: common, rest, miss })
}

pub fn rest(demand: &SimpleDescription, offer: &SimpleDescription, reasoner: &Reasoner) -> Result<SimpleDescription> {
    let common = lcs(demand, offer, reasoner)?;
    semantic_difference(demand, &common, reasoner)
}

pub fn miss(demand: &SimpleDescription, offer: &SimpleDescription, reasoner: &Reasoner) -> Result<SimpleDescription> {
    let common = lcs(demand, offer, reasoner)?;
    semantic_difference(offer, &common, reasoner)
}
