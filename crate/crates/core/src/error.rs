use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Concept,
    Role,
    Individual,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolKind::Concept => "concept",
            SymbolKind::Role => "role",
            SymbolKind::Individual => "individual",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown {kind} `{name}`")]
    UnknownSymbol { kind: SymbolKind, name: String },

    #[error("role chain must contain at least one role")]
    EmptyRoleChain,

    #[error("nominals are not supported here: `{0}`")]
    NominalUnsupported(String),

    #[error("Bottom is not supported here: `{0}`")]
    BottomUnsupported(String),

    #[error("precondition violated: `{sub}` is not subsumed by `{sup}`")]
    PreconditionViolated { sub: String, sup: String },

    #[error("difference of `{minuend}` and `{subtrahend}` does not reconstruct the minuend")]
    ReconstructionFailed { minuend: String, subtrahend: String },

    #[error("conjunct `{0}` is not an existential over a declared component role")]
    NonComponentConjunct(String),

    #[error("component `{0}` is declared or used more than once")]
    DuplicateComponent(String),

    #[error("filler `{filler}` of component `{role}` is incompatible with its top concept `{top}`")]
    ComponentRangeViolated { role: String, filler: String, top: String },

    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    #[error("duplicate offer name `{0}`")]
    DuplicateOfferName(String),

    #[error("weight of component `{role}` must be positive, got {weight}")]
    NonPositiveWeight { role: String, weight: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable kebab-case identifier used in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownSymbol { .. } => "unknown-symbol",
            Error::EmptyRoleChain => "empty-role-chain",
            Error::NominalUnsupported(_) => "nominal-unsupported",
            Error::BottomUnsupported(_) => "bottom-unsupported",
            Error::PreconditionViolated { .. } => "precondition-violated",
            Error::ReconstructionFailed { .. } => "reconstruction-failed",
            Error::NonComponentConjunct(_) => "non-component-conjunct",
            Error::DuplicateComponent(_) => "duplicate-component",
            Error::ComponentRangeViolated { .. } => "component-range-violated",
            Error::UnknownComponent(_) => "unknown-component",
            Error::DuplicateOfferName(_) => "duplicate-offer-name",
            Error::NonPositiveWeight { .. } => "non-positive-weight",
        }
    }
}
