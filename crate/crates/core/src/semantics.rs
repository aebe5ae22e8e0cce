//! The interface the closure engine uses to talk to a semantics.

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formula::{Connective, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemanticsKind {
    Boolean,
    ThreeValued,
    Kripke,
    Temporal,
}

impl SemanticsKind {
    pub fn name(self) -> &'static str {
        match self {
            SemanticsKind::Boolean => "boolean",
            SemanticsKind::ThreeValued => "three-valued",
            SemanticsKind::Kripke => "kripke",
            SemanticsKind::Temporal => "temporal",
        }
    }

    pub fn from_name(s: &str) -> Option<SemanticsKind> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "boolean" | "bool" | "classical" => Some(SemanticsKind::Boolean),
            "three-valued" | "3val" | "3-valued" => Some(SemanticsKind::ThreeValued),
            "kripke" | "intuitionistic" => Some(SemanticsKind::Kripke),
            "temporal" | "ltl" => Some(SemanticsKind::Temporal),
            _ => None,
        }
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fixed structure together with the action of connectives on its truth
/// sets.
///
/// `repr` must be injective: two truth sets have the same representation
/// exactly when they are equal, and `parse_repr` inverts it.
pub trait Semantics {
    type TruthSet: Clone + Eq + Hash + fmt::Debug;

    fn kind(&self) -> SemanticsKind;

    fn supports(&self, c: Connective) -> bool;

    fn truth_set(&self, f: &Formula) -> Result<Self::TruthSet, Error>;

    fn apply(&self, c: Connective, args: &[&Self::TruthSet]) -> Result<Self::TruthSet, Error>;

    fn repr(&self, ts: &Self::TruthSet) -> String;

    fn parse_repr(&self, repr: &str) -> Result<Self::TruthSet, Error>;

    /// JSON description of the fixed structure, enough to rebuild `self`.
    fn context(&self) -> serde_json::Value;

    fn check_connective(&self, c: Connective) -> Result<(), Error> {
        if self.supports(c) {
            Ok(())
        } else {
            Err(Error::UnsupportedConnective {
                connective: c,
                semantics: self.kind().name(),
            })
        }
    }
}
