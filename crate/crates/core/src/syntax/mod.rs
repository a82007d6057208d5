//! Line-oriented document formats and result rendering.
//!
//! Ontology documents hold one statement per line:
//!
//! ```text
//! # comment
//! component hasInstrument Instrument
//! sub Steel Metal
//! equiv Tool and(Instrument, some(hasMat, Metal))
//! rsub partOf locatedIn
//! rchain partOf partOf -> partOf
//! instance Steel s1
//! related hasMat i1 s1
//! ```
//!
//! Party documents hold `offer NAME = cexpr` and `demand NAME = cexpr`
//! lines, weight documents `ROLE WEIGHT` lines.

mod parser;
mod render;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::concept::ConceptExpr;
use crate::error::Error;
use crate::matchmaker::{PartyKind, PartyRecord, WeightTable};
use crate::ontology::{Axiom, ComponentDecl, Ontology, RoleChain};
use crate::reasoner::Reasoner;

use parser::{lex, Cursor, Tok};

pub use render::{format_score, render_parties, render_ranking, OutputFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DocumentKind {
    Ontology,
    Parties,
    Weights,
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DocumentKind::Ontology => "ontology",
            DocumentKind::Parties => "parties",
            DocumentKind::Weights => "weights",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDocument {
    pub path: PathBuf,
    pub text: String,
    pub kind: DocumentKind,
}

impl SourceDocument {
    pub fn new(path: impl Into<PathBuf>, text: impl Into<String>, kind: DocumentKind) -> Self {
        SourceDocument { path: path.into(), text: text.into(), kind }
    }

    pub fn read(path: impl AsRef<Path>, kind: DocumentKind) -> std::io::Result<Self> {
        let path = path.as_ref();
        Ok(Self::new(path, std::fs::read_to_string(path)?, kind))
    }

    /// Non-blank, non-comment lines with their 1-based numbers.
    fn statements(&self) -> impl Iterator<Item = (usize, &str)> {
        self.text.lines().enumerate().filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("");
            (!body.trim().is_empty()).then_some((i + 1, body))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A located message. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub code: &'static str,
}

impl Diagnostic {
    pub fn error(line: usize, column: usize, code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, line, column, message: message.into(), code }
    }

    pub fn warning(line: usize, column: usize, code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, line, column, message: message.into(), code }
    }

    pub fn from_error(line: usize, column: usize, err: &Error) -> Self {
        Self::error(line, column, err.code(), err.to_string())
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `path:line:column: severity[code]: message`.
    pub fn render(&self, path: &Path) -> String {
        format!("{}:{self}", path.display())
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}[{}]: {}", self.line, self.column, self.severity, self.code, self.message)
    }
}

/// A parsed value with the warnings raised on the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<Diagnostic>,
}

/// Either the parsed value, or every diagnostic (errors and warnings) in
/// line order.
pub type ParseResult<T> = Result<Parsed<T>, Vec<Diagnostic>>;

fn finish<T>(value: T, mut diagnostics: Vec<Diagnostic>) -> ParseResult<T> {
    diagnostics.sort_by_key(|d| (d.line, d.column));
    if diagnostics.iter().any(Diagnostic::is_error) {
        Err(diagnostics)
    } else {
        Ok(Parsed { value, warnings: diagnostics })
    }
}

fn check_kind(doc: &SourceDocument, expected: DocumentKind) -> Result<(), Vec<Diagnostic>> {
    if doc.kind == expected {
        Ok(())
    } else {
        Err(vec![Diagnostic::error(1, 1, "document-kind", format!("expected a {expected} document, got {}", doc.kind))])
    }
}

/// Parses a single concept expression.
pub fn parse_concept(text: &str) -> Result<ConceptExpr, Diagnostic> {
    let tokens = lex(text, 1)?;
    let mut cur = Cursor::new(&tokens, 1, text.chars().count());
    let e = cur.concept()?;
    cur.finish()?;
    Ok(e)
}

enum Statement {
    Axioms(Vec<Axiom>),
    Component(ComponentDecl),
}

fn ontology_statement(cur: &mut Cursor<'_>, line: usize) -> Result<(Statement, Option<Diagnostic>), Diagnostic> {
    let column = cur.column();
    let keyword = cur.ident("a statement keyword")?;
    let mut warning = None;
    let stmt = match keyword.as_str() {
        "sub" => {
            let lhs = cur.concept()?;
            let rhs = cur.concept()?;
            Statement::Axioms(vec![Axiom::Gci(lhs, rhs)])
        }
        "equiv" => {
            let lhs = cur.concept()?;
            let rhs = cur.concept()?;
            Statement::Axioms(vec![Axiom::Gci(lhs.clone(), rhs.clone()), Axiom::Gci(rhs, lhs)])
        }
        "rsub" => {
            let sub = cur.name("a role name")?;
            let sup = cur.name("a role name")?;
            Statement::Axioms(vec![Axiom::RoleInclusion(RoleChain::single(sub), sup)])
        }
        "rchain" => {
            let mut roles = vec![cur.name("a role name")?];
            roles.push(cur.name("a role name")?);
            while !cur.at(&Tok::Arrow) {
                roles.push(cur.name("a role name or `->`")?);
            }
            cur.expect(Tok::Arrow, "`->`")?;
            let sup = cur.name("a role name")?;
            let chain = RoleChain::new(roles).map_err(|e| Diagnostic::from_error(line, column, &e))?;
            Statement::Axioms(vec![Axiom::RoleInclusion(chain, sup)])
        }
        "component" => {
            let role = cur.name("a role name")?;
            let top = cur.name("a concept name")?;
            Statement::Component(ComponentDecl::new(role, top))
        }
        "instance" => {
            let c = cur.concept()?;
            let ind = cur.name("an individual name")?;
            warning = Some(Diagnostic::warning(line, column, "abox-ignored", "concept assertion is not used in reasoning"));
            Statement::Axioms(vec![Axiom::ConceptAssertion(c, ind)])
        }
        "related" => {
            let role = cur.name("a role name")?;
            let a = cur.name("an individual name")?;
            let b = cur.name("an individual name")?;
            warning = Some(Diagnostic::warning(line, column, "abox-ignored", "role assertion is not used in reasoning"));
            Statement::Axioms(vec![Axiom::RoleAssertion(role, a, b)])
        }
        other => {
            return Err(Diagnostic::error(line, column, "syntax", format!("unknown statement `{other}`")));
        }
    };
    cur.finish()?;
    Ok((stmt, warning))
}

/// Parses an ontology document. Symbols are registered as they are used.
pub fn parse_ontology(doc: &SourceDocument) -> ParseResult<Ontology> {
    check_kind(doc, DocumentKind::Ontology)?;
    let mut ont = Ontology::new();
    let mut diagnostics = Vec::new();
    for (line, text) in doc.statements() {
        let tokens = match lex(text, line) {
            Ok(t) => t,
            Err(d) => {
                diagnostics.push(d);
                continue;
            }
        };
        let mut cur = Cursor::new(&tokens, line, text.chars().count());
        let column = cur.column();
        match ontology_statement(&mut cur, line) {
            Ok((stmt, warning)) => {
                diagnostics.extend(warning);
                match stmt {
                    Statement::Axioms(axioms) => axioms.into_iter().for_each(|a| ont.add_axiom(a)),
                    Statement::Component(decl) => {
                        if let Err(e) = ont.add_component(decl) {
                            diagnostics.push(Diagnostic::from_error(line, column, &e));
                        }
                    }
                }
            }
            Err(d) => diagnostics.push(d),
        }
    }
    finish(ont, diagnostics)
}

/// Parses a party document into component form. Names are unique across
/// offers and demands.
pub fn parse_parties(doc: &SourceDocument, reasoner: &Reasoner) -> ParseResult<Vec<PartyRecord>> {
    check_kind(doc, DocumentKind::Parties)?;
    let mut parties = Vec::new();
    let mut names = BTreeSet::new();
    let mut diagnostics = Vec::new();
    for (line, text) in doc.statements() {
        let parsed = lex(text, line).and_then(|tokens| {
            let mut cur = Cursor::new(&tokens, line, text.chars().count());
            let kind_column = cur.column();
            let kind = match cur.ident("`offer` or `demand`")?.as_str() {
                "offer" => PartyKind::Offer,
                "demand" => PartyKind::Demand,
                other => {
                    let message = format!("expected `offer` or `demand`, found `{other}`");
                    return Err(Diagnostic::error(line, kind_column, "syntax", message));
                }
            };
            let name_column = cur.column();
            let name = cur.name("a party name")?;
            cur.expect(Tok::Equals, "`=`")?;
            let expr_column = cur.column();
            let expr = cur.concept()?;
            cur.finish()?;
            if !names.insert(name.clone()) {
                return Err(Diagnostic::from_error(line, name_column, &Error::DuplicateOfferName(name)));
            }
            PartyRecord::new(name, kind, &expr, reasoner).map_err(|e| Diagnostic::from_error(line, expr_column, &e))
        });
        match parsed {
            Ok(p) => parties.push(p),
            Err(d) => diagnostics.push(d),
        }
    }
    finish(parties, diagnostics)
}

/// Parses a decimal such as `3`, `0.25` or `-1.5` exactly.
fn parse_decimal(text: &str) -> Option<BigRational> {
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() || digits.ends_with('.') || !all_digits(int) || !all_digits(frac) {
        return None;
    }
    let numer: BigInt = format!("{int}{frac}").parse().ok()?;
    let denom = (0..frac.len()).fold(BigInt::one(), |acc, _| acc * 10);
    let q = BigRational::new(numer, denom);
    Some(if negative { -q } else { q })
}

/// Parses a weight document against the components of `ontology`.
pub fn parse_weights(doc: &SourceDocument, ontology: &Ontology) -> ParseResult<WeightTable> {
    check_kind(doc, DocumentKind::Weights)?;
    let mut table = WeightTable::new();
    let mut seen = BTreeSet::new();
    let mut diagnostics = Vec::new();
    for (line, text) in doc.statements() {
        let parsed = lex(text, line).and_then(|tokens| {
            let mut cur = Cursor::new(&tokens, line, text.chars().count());
            let role_column = cur.column();
            let role = cur.name("a component role")?;
            let weight_column = cur.column();
            let raw = cur.number("a decimal weight")?;
            cur.finish()?;
            if ontology.component(&role).is_none() {
                return Err(Diagnostic::from_error(line, role_column, &Error::UnknownComponent(role)));
            }
            if !seen.insert(role.clone()) {
                return Err(Diagnostic::error(line, role_column, "duplicate-weight", format!("weight of `{role}` given twice")));
            }
            let weight = parse_decimal(&raw)
                .ok_or_else(|| Diagnostic::error(line, weight_column, "syntax", format!("malformed decimal `{raw}`")))?;
            table.set(role, weight).map_err(|e| Diagnostic::from_error(line, weight_column, &e))
        });
        if let Err(d) = parsed {
            diagnostics.push(d);
        }
    }
    finish(table, diagnostics)
}
