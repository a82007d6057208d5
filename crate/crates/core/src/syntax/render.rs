use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::matchmaker::{PartyRecord, RankingResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

/// Renders an exact score: an integer when integral, a decimal when the
/// expansion terminates, `p/q` otherwise.
pub fn format_score(q: &BigRational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let mut rest = q.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut digits = 0u32;
    for p in [&two, &five] {
        let mut count = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            count += 1;
        }
        digits = digits.max(count);
    }
    if rest != BigInt::from(1) {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let scale = BigInt::from(10).pow(digits);
    let scaled = (q.numer().abs() * &scale) / q.denom();
    let (int, frac) = (&scaled / &scale, &scaled % &scale);
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac:0>width$}", frac = frac.to_string(), width = digits as usize)
}

#[derive(Serialize)]
struct JsonRanking<'a> {
    ranked: Vec<JsonRow<'a>>,
    excluded: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<JsonComparison<'a>>>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    rank: usize,
    name: &'a str,
    score: String,
}

#[derive(Serialize)]
struct JsonComparison<'a> {
    first: &'a str,
    second: &'a str,
    component: &'a str,
    phi: i64,
    evidence: [JsonEvidence<'a>; 2],
}

#[derive(Serialize)]
struct JsonEvidence<'a> {
    offer: &'a str,
    zone: &'static str,
    rest: String,
    miss: String,
}

fn comparisons(r: &RankingResult) -> Vec<JsonComparison<'_>> {
    let t = &r.trace;
    let evidence = |offer: usize, component: usize| {
        let e = &t.evidence[offer][component];
        JsonEvidence { offer: &t.offers[offer], zone: e.zone.as_str(), rest: e.rest.to_string(), miss: e.miss.to_string() }
    };
    t.pairs
        .iter()
        .flat_map(|p| {
            p.values.iter().enumerate().map(move |(k, v)| JsonComparison {
                first: &t.offers[p.first],
                second: &t.offers[p.second],
                component: &t.components[k],
                phi: v.value(),
                evidence: [evidence(p.first, k), evidence(p.second, k)],
            })
        })
        .collect()
}

/// Renders a ranking. With `explain`, the per-pair, per-component trace is
/// included: as `#`-prefixed lines in TSV, as a `trace` array in JSON.
pub fn render_ranking(result: &RankingResult, format: OutputFormat, explain: bool) -> String {
    match format {
        OutputFormat::Tsv => {
            let mut out = String::from("rank\tname\tscore\n");
            for r in &result.ranked {
                let _ = writeln!(out, "{}\t{}\t{}", r.rank, r.name, format_score(&r.score));
            }
            for name in &result.excluded {
                let _ = writeln!(out, "# excluded: {name}");
            }
            if explain {
                for c in comparisons(result) {
                    let _ = writeln!(out, "# compare\t{}\t{}\t{}\t{}", c.first, c.second, c.component, c.phi);
                    for e in &c.evidence {
                        let _ = writeln!(out, "#   {}\t{}\trest={}\tmiss={}", e.offer, e.zone, e.rest, e.miss);
                    }
                }
            }
            out
        }
        OutputFormat::Json => {
            let doc = JsonRanking {
                ranked: result
                    .ranked
                    .iter()
                    .map(|r| JsonRow { rank: r.rank, name: &r.name, score: format_score(&r.score) })
                    .collect(),
                excluded: &result.excluded,
                trace: explain.then(|| comparisons(result)),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("ranking serializes");
            s.push('\n');
            s
        }
    }
}

/// Renders parties as a document that parses back to equal records.
pub fn render_parties(parties: &[PartyRecord]) -> String {
    let mut out = String::new();
    for p in parties {
        let _ = writeln!(out, "{} {} = {}", p.kind, p.name, p.to_expr());
    }
    out
}
