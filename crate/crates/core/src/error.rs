use crate::formula::{Connective, ParseError};
use crate::kripke::ModelViolation;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{connective} takes {expected} argument(s), got {found}")]
    Arity {
        connective: Connective,
        expected: usize,
        found: usize,
    },
    #[error("connective {connective} is not part of the {semantics} semantics")]
    UnsupportedConnective {
        connective: Connective,
        semantics: &'static str,
    },
    #[error("constant {constant} is not meaningful in the {semantics} semantics")]
    UnsupportedConstant {
        constant: &'static str,
        semantics: &'static str,
    },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("truth sets belong to different {0}")]
    ContextMismatch(&'static str),
    #[error("family exceeded the cap of {cap} members before saturating")]
    CapExceeded { cap: usize },
    #[error("invalid Kripke model: {0}")]
    Model(ModelViolation),
    #[error("Kripke models are limited to {max} worlds, got {found}")]
    TooManyWorlds { max: usize, found: usize },
    #[error("invalid truth set representation {0:?}")]
    InvalidRepr(String),
    #[error("anchor {label:?}: truth set of {formula} is not in the family")]
    AnchorMissing { label: String, formula: String },
    #[error("reference labelling is inconsistent: {0}")]
    InconsistentLabels(String),
    #[error("certificate has no table for {0}")]
    MissingTable(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<ModelViolation> for Error {
    fn from(v: ModelViolation) -> Error {
        Error::Model(v)
    }
}
