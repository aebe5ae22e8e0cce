//! Classical two-valued semantics.
//!
//! A truth set is the set of valuations satisfying a formula, stored as a
//! bitset over all `2^n` valuations. Valuations are numbered as a binary
//! counter with the first signature variable as the most significant bit.

use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::error::Error;
use crate::formula::{Connective, Constant, Formula, Signature};
use crate::semantics::{Semantics, SemanticsKind};

/// A total assignment of values to an ordered list of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment<V> {
    pub variables: Arc<[String]>,
    pub values: Vec<V>,
}

impl<V: Copy> Assignment<V> {
    pub fn get(&self, var: &str) -> Option<V> {
        self.variables
            .iter()
            .position(|v| v == var)
            .map(|i| self.values[i])
    }
}

impl<V: fmt::Display> fmt::Display for Assignment<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (var, val)) in self.variables.iter().zip(&self.values).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{var}={val}")?;
        }
        Ok(())
    }
}

/// Boolean value printed as `0`/`1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bit(pub bool);

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

pub type BoolAssignment = Assignment<Bit>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolTruthSet {
    variables: Arc<[String]>,
    members: Vec<bool>,
}

impl BoolTruthSet {
    pub fn from_members(variables: Arc<[String]>, members: Vec<bool>) -> Result<Self, Error> {
        if members.len() != 1usize << variables.len() {
            return Err(Error::Malformed(format!(
                "expected {} valuations, got {}",
                1usize << variables.len(),
                members.len()
            )));
        }
        Ok(BoolTruthSet { variables, members })
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.variables
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The valuation with the given counter index.
    pub fn assignment(&self, index: usize) -> BoolAssignment {
        assignment_at(&self.variables, index)
    }

    /// `0`/`1` per valuation in counter order.
    pub fn to_bits(&self) -> String {
        self.members
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

fn assignment_at(variables: &Arc<[String]>, index: usize) -> BoolAssignment {
    let n = variables.len();
    Assignment {
        variables: variables.clone(),
        values: (0..n).map(|i| Bit(index >> (n - 1 - i) & 1 == 1)).collect(),
    }
}

fn check_connective(c: Connective) -> Result<(), Error> {
    match c {
        Connective::Neg | Connective::And | Connective::Or | Connective::Imp => Ok(()),
        other => Err(Error::UnsupportedConnective {
            connective: other,
            semantics: "boolean",
        }),
    }
}

/// Pointwise action of a classical connective on truth sets.
pub fn bool_apply(c: Connective, args: &[&BoolTruthSet]) -> Result<BoolTruthSet, Error> {
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
    let a = &args[0].members;
    let members = match c {
        Connective::Neg => a.iter().map(|&x| !x).collect(),
        _ => {
            let b = &args[1].members;
            a.iter()
                .zip(b)
                .map(|(&x, &y)| match c {
                    Connective::And => x && y,
                    Connective::Or => x || y,
                    _ => !x || y,
                })
                .collect()
        }
    };
    Ok(BoolTruthSet {
        variables: args[0].variables.clone(),
        members,
    })
}

/// Truth set of `f` over the variables of `sig`.
pub fn bool_truth_set(f: &Formula, sig: &Signature) -> Result<BoolTruthSet, Error> {
    BooleanSemantics::new(sig.variables().iter().cloned())?.truth_set(f)
}

/// `None` when equivalent, otherwise the least distinguishing valuation.
pub fn bool_equivalent(
    f: &Formula,
    g: &Formula,
    sig: &Signature,
) -> Result<Option<BoolAssignment>, Error> {
    let a = bool_truth_set(f, sig)?;
    let b = bool_truth_set(g, sig)?;
    Ok((0..a.members.len())
        .find(|&i| a.members[i] != b.members[i])
        .map(|i| a.assignment(i)))
}

/// Classical semantics over a fixed list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanSemantics {
    variables: Arc<[String]>,
}

impl BooleanSemantics {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Self, Error> {
        let sig = Signature::new(variables, [])?;
        Ok(BooleanSemantics {
            variables: sig.variables().to_vec().into(),
        })
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.variables
    }

    fn constant(&self, value: bool) -> BoolTruthSet {
        BoolTruthSet {
            variables: self.variables.clone(),
            members: vec![value; 1 << self.variables.len()],
        }
    }

    /// Truth set of a single variable.
    pub fn atom(&self, var: &str) -> Result<BoolTruthSet, Error> {
        let n = self.variables.len();
        let i = self
            .variables
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(BoolTruthSet {
            variables: self.variables.clone(),
            members: (0..1usize << n)
                .map(|a| a >> (n - 1 - i) & 1 == 1)
                .collect(),
        })
    }
}

impl Semantics for BooleanSemantics {
    type TruthSet = BoolTruthSet;

    fn kind(&self) -> SemanticsKind {
        SemanticsKind::Boolean
    }

    fn supports(&self, c: Connective) -> bool {
        check_connective(c).is_ok()
    }

    fn truth_set(&self, f: &Formula) -> Result<BoolTruthSet, Error> {
        match f {
            Formula::Var(v) => self.atom(v),
            Formula::Const(Constant::True) => Ok(self.constant(true)),
            Formula::Const(Constant::False) => Ok(self.constant(false)),
            Formula::Const(Constant::Half) => Err(Error::UnsupportedConstant {
                constant: "unk",
                semantics: "boolean",
            }),
            Formula::App(c, args) => {
                check_connective(*c)?;
                let sets = args
                    .iter()
                    .map(|a| self.truth_set(a))
                    .collect::<Result<Vec<_>, _>>()?;
                bool_apply(*c, &sets.iter().collect::<Vec<_>>())
            }
        }
    }

    fn apply(&self, c: Connective, args: &[&BoolTruthSet]) -> Result<BoolTruthSet, Error> {
        bool_apply(c, args)
    }

    fn repr(&self, ts: &BoolTruthSet) -> String {
        ts.to_bits()
    }

    fn parse_repr(&self, repr: &str) -> Result<BoolTruthSet, Error> {
        let members = repr
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidRepr(repr.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BoolTruthSet::from_members(self.variables.clone(), members)
            .map_err(|_| Error::InvalidRepr(repr.to_string()))
    }

    fn context(&self) -> serde_json::Value {
        json!({ "variables": &*self.variables })
    }
}
