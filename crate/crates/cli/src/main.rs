//! `elmatch`: rank offers against a demand, and query the reasoner.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand, ValueEnum};
use elmatch::syntax::{
    parse_concept, parse_ontology, parse_parties, parse_weights, render_ranking, DocumentKind, OutputFormat,
    ParseResult, SourceDocument,
};
use elmatch::{lcs, semantic_difference, ConceptExpr, Matchmaker, Ontology, PartyKind, Reasoner, SimpleDescription, WeightTable};

#[derive(Parser)]
#[command(name = "elmatch", version, about = "Semantic matchmaking over EL++ ontologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the offers of a party document against one of its demands.
    Rank {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        parties: PathBuf,
        /// Name of the demand to rank against.
        #[arg(long)]
        demand: String,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Include the pairwise comparison trace.
        #[arg(long)]
        explain: bool,
    },
    /// Print whether C is subsumed by D.
    Subsumes {
        #[arg(long)]
        ontology: PathBuf,
        c: String,
        d: String,
    },
    /// Print the least common subsumer of C and D.
    Lcs {
        #[arg(long)]
        ontology: PathBuf,
        c: String,
        d: String,
    },
    /// Print the semantic difference of C and D, where C is subsumed by D.
    Diff {
        #[arg(long)]
        ontology: PathBuf,
        c: String,
        d: String,
    },
    /// Print the transitively reduced hierarchy of concept names.
    Classify {
        #[arg(long)]
        ontology: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

/// Failure already reported on stderr as diagnostics.
#[derive(Debug)]
struct Reported;

impl fmt::Display for Reported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("aborted on diagnostics")
    }
}

impl std::error::Error for Reported {}

/// Failure caused by the invocation rather than the inputs' content.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn read(path: &Path, kind: DocumentKind) -> Result<SourceDocument> {
    SourceDocument::read(path, kind).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())).into())
}

fn report<T>(path: &Path, parsed: ParseResult<T>) -> Result<T> {
    match parsed {
        Ok(p) => {
            for w in &p.warnings {
                eprintln!("{}", w.render(path));
            }
            Ok(p.value)
        }
        Err(diagnostics) => {
            for d in &diagnostics {
                eprintln!("{}", d.render(path));
            }
            Err(Reported.into())
        }
    }
}

fn load_ontology(path: &Path) -> Result<Ontology> {
    let doc = read(path, DocumentKind::Ontology)?;
    report(path, parse_ontology(&doc))
}

fn concept_arg(label: &str, text: &str) -> Result<ConceptExpr> {
    parse_concept(text).map_err(|d| {
        eprintln!("{}", d.render(Path::new(label)));
        Reported.into()
    })
}

fn simple(e: &ConceptExpr) -> Result<SimpleDescription> {
    Ok(SimpleDescription::new(e)?)
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Rank { ontology, parties, demand, weights, format, explain } => {
            let ont = load_ontology(&ontology)?;
            let reasoner = Reasoner::new(&ont);
            let party_doc = read(&parties, DocumentKind::Parties)?;
            let records = report(&parties, parse_parties(&party_doc, &reasoner))?;
            let weights = match weights {
                Some(path) => report(&path, parse_weights(&read(&path, DocumentKind::Weights)?, &ont))?,
                None => WeightTable::new(),
            };
            let target = records
                .iter()
                .find(|p| p.kind == PartyKind::Demand && p.name == demand)
                .ok_or_else(|| anyhow!("no demand named `{demand}` in {}", parties.display()))?;
            let offers: Vec<_> = records.iter().filter(|p| p.kind == PartyKind::Offer).cloned().collect();
            let result = Matchmaker::new(&reasoner).rank(target, &offers, &weights)?;
            let format = match format {
                Format::Tsv => OutputFormat::Tsv,
                Format::Json => OutputFormat::Json,
            };
            Ok(render_ranking(&result, format, explain))
        }
        Command::Subsumes { ontology, c, d } => {
            let reasoner = Reasoner::new(&load_ontology(&ontology)?);
            let (c, d) = (concept_arg("C", &c)?, concept_arg("D", &d)?);
            Ok(format!("{}\n", reasoner.subsumes(&c, &d)?))
        }
        Command::Lcs { ontology, c, d } => {
            let reasoner = Reasoner::new(&load_ontology(&ontology)?);
            let (c, d) = (simple(&concept_arg("C", &c)?)?, simple(&concept_arg("D", &d)?)?);
            Ok(format!("{}\n", lcs(&c, &d, &reasoner)?))
        }
        Command::Diff { ontology, c, d } => {
            let reasoner = Reasoner::new(&load_ontology(&ontology)?);
            let (c, d) = (simple(&concept_arg("C", &c)?)?, simple(&concept_arg("D", &d)?)?);
            Ok(format!("{}\n", semantic_difference(&c, &d, &reasoner)?))
        }
        Command::Classify { ontology } => {
            let reasoner = Reasoner::new(&load_ontology(&ontology)?);
            Ok(reasoner.taxonomy().lines().into_iter().map(|l| l + "\n").collect())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) if e.is::<Reported>() => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            match e.downcast_ref::<elmatch::Error>() {
                Some(inner) => eprintln!("error[{}]: {inner}", inner.code()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(1)
        }
    }
}
