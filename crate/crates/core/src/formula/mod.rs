//! Formula syntax shared by every semantics.
//!
//! A [`Formula`] is a plain tree over variables, the three logic constants and
//! the connectives of [`Connective`]. Which connectives a formula may use is
//! decided by the semantics that evaluates it, not by the tree itself.

mod enumerate;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use enumerate::{census, enumerate, Enumerator};
pub use parse::{parse, ParseError, ParseErrorKind};

/// Every connective understood by at least one semantics.
///
/// The derived order is the fixed tag order used for enumeration,
/// saturation and table emission.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Connective {
    #[serde(rename = "neg")]
    Neg,
    #[serde(rename = "and")]
    And,
    #[serde(rename = "or")]
    Or,
    #[serde(rename = "imp")]
    Imp,
    #[serde(rename = "impK")]
    ImpK,
    #[serde(rename = "impL")]
    ImpL,
    F,
    X,
    U,
    W,
}

impl Connective {
    pub const ALL: [Connective; 10] = [
        Connective::Neg,
        Connective::And,
        Connective::Or,
        Connective::Imp,
        Connective::ImpK,
        Connective::ImpL,
        Connective::F,
        Connective::X,
        Connective::U,
        Connective::W,
    ];

    pub fn arity(self) -> usize {
        match self {
            Connective::Neg | Connective::F | Connective::X => 1,
            _ => 2,
        }
    }

    /// Position in the tag order.
    pub fn tag(self) -> usize {
        self as usize
    }

    /// The concrete-syntax token.
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Neg => "~",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
            Connective::ImpK => "->k",
            Connective::ImpL => "->l",
            Connective::F => "F",
            Connective::X => "X",
            Connective::U => "U",
            Connective::W => "W",
        }
    }

    /// Short identifier used on the command line and in certificates.
    pub fn name(self) -> &'static str {
        match self {
            Connective::Neg => "neg",
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Imp => "imp",
            Connective::ImpK => "impK",
            Connective::ImpL => "impL",
            Connective::F => "F",
            Connective::X => "X",
            Connective::U => "U",
            Connective::W => "W",
        }
    }

    /// Inverse of [`Connective::name`]; also accepts the concrete symbols.
    /// Matching ignores case except for the temporal letters.
    pub fn from_name(name: &str) -> Option<Connective> {
        let lower = name.to_ascii_lowercase();
        let c = match lower.as_str() {
            "neg" | "not" | "~" => Connective::Neg,
            "and" | "&" => Connective::And,
            "or" | "|" => Connective::Or,
            "imp" | "->" => Connective::Imp,
            "impk" | "->k" => Connective::ImpK,
            "impl" | "->l" => Connective::ImpL,
            "f" => Connective::F,
            "x" => Connective::X,
            "u" => Connective::U,
            "w" => Connective::W,
            _ => return None,
        };
        Some(c)
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Logic constants. `Half` is only meaningful in the three-valued semantics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Constant {
    False,
    Half,
    True,
}

impl Constant {
    pub const ALL: [Constant; 3] = [Constant::False, Constant::Half, Constant::True];

    pub fn keyword(self) -> &'static str {
        match self {
            Constant::False => "false",
            Constant::Half => "unk",
            Constant::True => "true",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    Const(Constant),
    App(Connective, Vec<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    /// Builds an application, checking the argument count.
    pub fn app(connective: Connective, args: Vec<Formula>) -> Result<Formula, Error> {
        if args.len() != connective.arity() {
            return Err(Error::Arity {
                connective,
                expected: connective.arity(),
                found: args.len(),
            });
        }
        Ok(Formula::App(connective, args))
    }

    pub fn unary(connective: Connective, arg: Formula) -> Formula {
        assert_eq!(connective.arity(), 1, "{connective} is not unary");
        Formula::App(connective, vec![arg])
    }

    pub fn binary(connective: Connective, left: Formula, right: Formula) -> Formula {
        assert_eq!(connective.arity(), 2, "{connective} is not binary");
        Formula::App(connective, vec![left, right])
    }

    pub fn neg(arg: Formula) -> Formula {
        Formula::unary(Connective::Neg, arg)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::App(_, args) => 1 + args.iter().map(Formula::size).sum::<usize>(),
        }
    }

    /// Number of application nodes tagged `c`.
    pub fn count_connective(&self, c: Connective) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 0,
            Formula::App(head, args) => {
                usize::from(*head == c) + args.iter().map(|a| a.count_connective(c)).sum::<usize>()
            }
        }
    }

    /// Connectives occurring anywhere in the formula.
    pub fn connectives(&self) -> BTreeSet<Connective> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::App(c, _) = f {
                out.insert(*c);
            }
        });
        out
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Var(v) = f {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        });
        out
    }

    fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        if let Formula::App(_, args) = self {
            for a in args {
                a.walk(visit);
            }
        }
    }

    /// Replaces `true` and `false` by `v -> v` and `~(v -> v)`.
    pub fn desugar_constants(&self, var: &str) -> Formula {
        let top = || Formula::binary(Connective::Imp, Formula::var(var), Formula::var(var));
        match self {
            Formula::Const(Constant::True) => top(),
            Formula::Const(Constant::False) => Formula::neg(top()),
            Formula::Var(_) | Formula::Const(_) => self.clone(),
            Formula::App(c, args) => {
                Formula::App(*c, args.iter().map(|a| a.desugar_constants(var)).collect())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Formula, ParseError> {
        parse(s)
    }
}

/// Variables, connectives and constants a formula family is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    variables: Vec<String>,
    connectives: BTreeSet<Connective>,
    constants: BTreeSet<Constant>,
}

impl Signature {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        connectives: impl IntoIterator<Item = Connective>,
    ) -> Result<Signature, Error> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if !parse::is_identifier(v) {
                return Err(Error::InvalidVariable(v.clone()));
            }
            if variables[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Signature {
            variables,
            connectives: connectives.into_iter().collect(),
            constants: BTreeSet::new(),
        })
    }

    /// Adds constant leaves to the enumeration.
    pub fn with_constants(mut self, constants: impl IntoIterator<Item = Constant>) -> Signature {
        self.constants.extend(constants);
        self
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn connectives(&self) -> &BTreeSet<Connective> {
        &self.connectives
    }

    pub fn constants(&self) -> &BTreeSet<Constant> {
        &self.constants
    }

    pub fn allows_constants(&self) -> bool {
        !self.constants.is_empty()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// `true` as `v -> v` over the first variable when implication is
    /// available, otherwise the primitive constant.
    pub fn top(&self) -> Formula {
        match self.variables.first() {
            Some(v) if self.connectives.contains(&Connective::Imp) => {
                Formula::Const(Constant::True).desugar_constants(v)
            }
            _ => Formula::Const(Constant::True),
        }
    }

    /// `false` as `~(v -> v)` when both implication and negation are
    /// available, otherwise the primitive constant.
    pub fn bottom(&self) -> Formula {
        match self.variables.first() {
            Some(v)
                if self.connectives.contains(&Connective::Imp)
                    && self.connectives.contains(&Connective::Neg) =>
            {
                Formula::Const(Constant::False).desugar_constants(v)
            }
            _ => Formula::Const(Constant::False),
        }
    }
}
