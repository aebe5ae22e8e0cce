//! Three-valued semantics with Kleene and Łukasiewicz implications.
//!
//! Truth values are stored in halves (`0`, `1`, `2` for 0, ½, 1) so every
//! connective stays in integer arithmetic. A fuzzy truth set assigns a
//! degree to each of the `3^n` assignments, numbered as a base-3 counter with
//! the first variable most significant.

use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::boolean::Assignment;
use crate::error::Error;
use crate::formula::{Connective, Constant, Formula, Signature};
use crate::semantics::{Semantics, SemanticsKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trit(u8);

impl Trit {
    pub const FALSE: Trit = Trit(0);
    pub const HALF: Trit = Trit(1);
    pub const TRUE: Trit = Trit(2);
    pub const ALL: [Trit; 3] = [Trit::FALSE, Trit::HALF, Trit::TRUE];

    /// Value in halves: 0, 1 or 2.
    pub fn halves(self) -> u8 {
        self.0
    }

    pub fn from_halves(h: u8) -> Option<Trit> {
        (h <= 2).then_some(Trit(h))
    }

    pub fn from_bool(b: bool) -> Trit {
        if b {
            Trit::TRUE
        } else {
            Trit::FALSE
        }
    }

    pub fn from_constant(c: Constant) -> Trit {
        match c {
            Constant::False => Trit::FALSE,
            Constant::Half => Trit::HALF,
            Constant::True => Trit::TRUE,
        }
    }

    /// `.` for 0, `/` for ½, `#` for 1.
    pub fn glyph(self) -> char {
        ['.', '/', '#'][self.0 as usize]
    }

    pub fn from_glyph(c: char) -> Option<Trit> {
        match c {
            '.' => Some(Trit::FALSE),
            '/' => Some(Trit::HALF),
            '#' => Some(Trit::TRUE),
            _ => None,
        }
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["0", "1/2", "1"][self.0 as usize])
    }
}

pub type TritAssignment = Assignment<Trit>;

fn check_connective(c: Connective) -> Result<(), Error> {
    match c {
        Connective::Neg
        | Connective::And
        | Connective::Or
        | Connective::ImpK
        | Connective::ImpL => Ok(()),
        other => Err(Error::UnsupportedConnective {
            connective: other,
            semantics: "three-valued",
        }),
    }
}

/// Truth table of a three-valued connective.
pub fn trit_apply(c: Connective, args: &[Trit]) -> Result<Trit, Error> {
    check_connective(c)?;
    if args.len() != c.arity() {
        return Err(Error::Arity {
            connective: c,
            expected: c.arity(),
            found: args.len(),
        });
    }
    let a = args[0].0;
    let v = match c {
        Connective::Neg => 2 - a,
        Connective::And => a.min(args[1].0),
        Connective::Or => a.max(args[1].0),
        Connective::ImpK => (2 - a).max(args[1].0),
        _ => (2 - a + args[1].0).min(2),
    };
    Ok(Trit(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuzzyTruthSet {
    variables: Arc<[String]>,
    degrees: Vec<Trit>,
}

impl FuzzyTruthSet {
    pub fn from_degrees(variables: Arc<[String]>, degrees: Vec<Trit>) -> Result<Self, Error> {
        let expected = 3usize.pow(variables.len() as u32);
        if degrees.len() != expected {
            return Err(Error::Malformed(format!(
                "expected {expected} assignments, got {}",
                degrees.len()
            )));
        }
        Ok(FuzzyTruthSet { variables, degrees })
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.variables
    }

    pub fn degrees(&self) -> &[Trit] {
        &self.degrees
    }

    pub fn degree(&self, index: usize) -> Trit {
        self.degrees[index]
    }

    /// Degree at an explicit assignment, values in signature order.
    pub fn degree_at(&self, values: &[Trit]) -> Trit {
        let index = values.iter().fold(0usize, |acc, t| acc * 3 + t.0 as usize);
        self.degrees[index]
    }

    pub fn assignment(&self, index: usize) -> TritAssignment {
        let n = self.variables.len();
        let values = (0..n)
            .map(|i| Trit((index / 3usize.pow((n - 1 - i) as u32) % 3) as u8))
            .collect();
        Assignment {
            variables: self.variables.clone(),
            values,
        }
    }

    /// Glyph string in counter order.
    pub fn to_glyphs(&self) -> String {
        self.degrees.iter().map(|t| t.glyph()).collect()
    }
}

/// Pointwise action on fuzzy truth sets.
pub fn fuzzy_apply(c: Connective, args: &[&FuzzyTruthSet]) -> Result<FuzzyTruthSet, Error> {
    check_connective(c)?;
    if args.len() != c.arity() {
        return Err(Error::Arity {
            connective: c,
            expected: c.arity(),
            found: args.len(),
        });
    }
    if args.windows(2).any(|w| w[0].variables != w[1].variables) {
        return Err(Error::ContextMismatch("signatures"));
    }
    let n = args[0].degrees.len();
    let mut degrees = Vec::with_capacity(n);
    let mut point = Vec::with_capacity(args.len());
    for i in 0..n {
        point.clear();
        point.extend(args.iter().map(|a| a.degrees[i]));
        degrees.push(trit_apply(c, &point)?);
    }
    Ok(FuzzyTruthSet {
        variables: args[0].variables.clone(),
        degrees,
    })
}

pub fn fuzzy_truth_set(f: &Formula, sig: &Signature) -> Result<FuzzyTruthSet, Error> {
    ThreeValuedSemantics::new(sig.variables().iter().cloned())?.truth_set(f)
}

/// `None` when the fuzzy truth sets coincide, otherwise the least
/// distinguishing assignment.
pub fn fuzzy_equivalent(
    f: &Formula,
    g: &Formula,
    sig: &Signature,
) -> Result<Option<TritAssignment>, Error> {
    let a = fuzzy_truth_set(f, sig)?;
    let b = fuzzy_truth_set(g, sig)?;
    Ok((0..a.degrees.len())
        .find(|&i| a.degrees[i] != b.degrees[i])
        .map(|i| a.assignment(i)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeValuedSemantics {
    variables: Arc<[String]>,
}

impl ThreeValuedSemantics {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Self, Error> {
        let sig = Signature::new(variables, [])?;
        Ok(ThreeValuedSemantics {
            variables: sig.variables().to_vec().into(),
        })
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.variables
    }

    fn size(&self) -> usize {
        3usize.pow(self.variables.len() as u32)
    }

    pub fn constant(&self, t: Trit) -> FuzzyTruthSet {
        FuzzyTruthSet {
            variables: self.variables.clone(),
            degrees: vec![t; self.size()],
        }
    }

    pub fn atom(&self, var: &str) -> Result<FuzzyTruthSet, Error> {
        let n = self.variables.len();
        let i = self
            .variables
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let stride = 3usize.pow((n - 1 - i) as u32);
        Ok(FuzzyTruthSet {
            variables: self.variables.clone(),
            degrees: (0..self.size())
                .map(|a| Trit((a / stride % 3) as u8))
                .collect(),
        })
    }
}

impl Semantics for ThreeValuedSemantics {
    type TruthSet = FuzzyTruthSet;

    fn kind(&self) -> SemanticsKind {
        SemanticsKind::ThreeValued
    }

    fn supports(&self, c: Connective) -> bool {
        check_connective(c).is_ok()
    }

    fn truth_set(&self, f: &Formula) -> Result<FuzzyTruthSet, Error> {
        match f {
            Formula::Var(v) => self.atom(v),
            Formula::Const(c) => Ok(self.constant(Trit::from_constant(*c))),
            Formula::App(c, args) => {
                check_connective(*c)?;
                let sets = args
                    .iter()
                    .map(|a| self.truth_set(a))
                    .collect::<Result<Vec<_>, _>>()?;
                fuzzy_apply(*c, &sets.iter().collect::<Vec<_>>())
            }
        }
    }

    fn apply(&self, c: Connective, args: &[&FuzzyTruthSet]) -> Result<FuzzyTruthSet, Error> {
        fuzzy_apply(c, args)
    }

    fn repr(&self, ts: &FuzzyTruthSet) -> String {
        ts.to_glyphs()
    }

    fn parse_repr(&self, repr: &str) -> Result<FuzzyTruthSet, Error> {
        let degrees = repr
            .chars()
            .map(|c| Trit::from_glyph(c).ok_or_else(|| Error::InvalidRepr(repr.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        FuzzyTruthSet::from_degrees(self.variables.clone(), degrees)
            .map_err(|_| Error::InvalidRepr(repr.to_string()))
    }

    fn context(&self) -> serde_json::Value {
        json!({ "variables": &*self.variables })
    }
}
