use std::cmp::Ordering;
use std::fmt;

use crate::error::Result;
use crate::inference::{residue, SimpleDescription};
use crate::reasoner::Reasoner;

use super::party::PartyRecord;

/// Position of an offer projection relative to the demand projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zone {
    Equivalent,
    MorePrecise,
    LessPrecise,
    Distant,
}

impl Zone {
    pub fn as_str(self) -> &'static str {
        match self {
            Zone::Equivalent => "equivalent",
            Zone::MorePrecise => "more-precise",
            Zone::LessPrecise => "less-precise",
            Zone::Distant => "distant",
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of comparing two offers on one component, from the first
/// offer's point of view.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComparisonValue {
    Worse = -1,
    Tie = 0,
    Better = 1,
}

impl ComparisonValue {
    pub fn value(self) -> i64 {
        self as i64
    }

    pub fn reverse(self) -> Self {
        match self {
            ComparisonValue::Worse => ComparisonValue::Better,
            ComparisonValue::Tie => ComparisonValue::Tie,
            ComparisonValue::Better => ComparisonValue::Worse,
        }
    }
}

impl From<Ordering> for ComparisonValue {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => ComparisonValue::Worse,
            Ordering::Equal => ComparisonValue::Tie,
            Ordering::Greater => ComparisonValue::Better,
        }
    }
}

impl fmt::Display for ComparisonValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

pub fn zone_of(offer: &SimpleDescription, demand: &SimpleDescription, reasoner: &Reasoner) -> Result<Zone> {
    let below = reasoner.subsumes(offer.expr(), demand.expr())?;
    let above = reasoner.subsumes(demand.expr(), offer.expr())?;
    Ok(match (below, above) {
        (true, true) => Zone::Equivalent,
        (true, false) => Zone::MorePrecise,
        (false, true) => Zone::LessPrecise,
        (false, false) => Zone::Distant,
    })
}

/// Zone, `Rest` and `Miss` of one offer projection against the demand
/// projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub zone: Zone,
    pub rest: SimpleDescription,
    pub miss: SimpleDescription,
}

impl Evidence {
    pub fn compute(offer: &SimpleDescription, demand: &SimpleDescription, reasoner: &Reasoner) -> Result<Self> {
        let zone = zone_of(offer, demand, reasoner)?;
        let r = residue(demand, offer, reasoner)?;
        Ok(Evidence { zone, rest: r.rest, miss: r.miss })
    }
}

/// Compares two residues: the strictly more general one wins, then the
/// shorter one.
pub fn compare_residues(
    first: &SimpleDescription,
    second: &SimpleDescription,
    reasoner: &Reasoner,
) -> Result<ComparisonValue> {
    if reasoner.strictly_subsumed(first.expr(), second.expr())? {
        return Ok(ComparisonValue::Worse);
    }
    if reasoner.strictly_subsumed(second.expr(), first.expr())? {
        return Ok(ComparisonValue::Better);
    }
    Ok(second.len().cmp(&first.len()).into())
}

/// Orders two offers on one component given their evidence. Zones rank
/// equivalent, more precise, less precise, distant; ties are broken on
/// `Miss` among more precise offers, on `Rest` among less precise ones,
/// and on `Rest` then `Miss` among distant ones.
pub fn phi_from_evidence(first: &Evidence, second: &Evidence, reasoner: &Reasoner) -> Result<ComparisonValue> {
    use ComparisonValue::*;
    use Zone::*;
    Ok(match (first.zone, second.zone) {
        (Equivalent, Equivalent) => Tie,
        (Equivalent, _) => Better,
        (_, Equivalent) => Worse,
        (MorePrecise, MorePrecise) => compare_residues(&first.miss, &second.miss, reasoner)?,
        (MorePrecise, _) => Better,
        (_, MorePrecise) => Worse,
        (LessPrecise, LessPrecise) => compare_residues(&first.rest, &second.rest, reasoner)?,
        (LessPrecise, Distant) => Better,
        (Distant, LessPrecise) => Worse,
        (Distant, Distant) => match compare_residues(&first.rest, &second.rest, reasoner)? {
            Tie => compare_residues(&first.miss, &second.miss, reasoner)?,
            decided => decided,
        },
    })
}

/// Compares offers `o1` and `o2` for `demand` on component `role`.
pub fn phi(
    role: &str,
    reasoner: &Reasoner,
    demand: &PartyRecord,
    o1: &PartyRecord,
    o2: &PartyRecord,
) -> Result<ComparisonValue> {
    let d = demand.projection(role)?;
    let e1 = Evidence::compute(o1.projection(role)?, d, reasoner)?;
    let e2 = Evidence::compute(o2.projection(role)?, d, reasoner)?;
    phi_from_evidence(&e1, &e2, reasoner)
}
