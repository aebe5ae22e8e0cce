//! Building a semantics from command-line inputs or a certificate context.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use truthset::kripke::ModelSpec;
use truthset::render::AnyTruthSet;
use truthset::{
    BooleanSemantics, Formula, KripkeModel, KripkeSemantics, Semantics, SemanticsKind,
    TemporalSemantics, TemporalValuation, ThreeValuedSemantics,
};

pub enum AnySemantics {
    Boolean(BooleanSemantics),
    ThreeValued(ThreeValuedSemantics),
    Kripke(KripkeSemantics),
    Temporal(TemporalSemantics),
}

/// Runs `$body` with `$s` bound to the concrete semantics.
macro_rules! with_semantics {
    ($sem:expr, $s:ident => $body:expr) => {
        match $sem {
            $crate::select::AnySemantics::Boolean($s) => $body,
            $crate::select::AnySemantics::ThreeValued($s) => $body,
            $crate::select::AnySemantics::Kripke($s) => $body,
            $crate::select::AnySemantics::Temporal($s) => $body,
        }
    };
}
pub(crate) use with_semantics;

pub struct Inputs<'a> {
    pub kind: SemanticsKind,
    pub vars: &'a [String],
    pub model: Option<&'a Path>,
    pub valuation: Option<&'a Path>,
}

impl AnySemantics {
    pub fn build(inputs: &Inputs<'_>) -> Result<AnySemantics> {
        Ok(match inputs.kind {
            SemanticsKind::Boolean => {
                AnySemantics::Boolean(BooleanSemantics::new(inputs.vars.iter().cloned())?)
            }
            SemanticsKind::ThreeValued => {
                AnySemantics::ThreeValued(ThreeValuedSemantics::new(inputs.vars.iter().cloned())?)
            }
            SemanticsKind::Kripke => {
                let Some(path) = inputs.model else {
                    bail!("the kripke semantics needs --model");
                };
                let text = read(path)?;
                let model = KripkeModel::from_json(&text)
                    .with_context(|| format!("loading model {}", path.display()))?;
                AnySemantics::Kripke(KripkeSemantics::new(Arc::new(model)))
            }
            SemanticsKind::Temporal => {
                let Some(path) = inputs.valuation else {
                    bail!("the temporal semantics needs --valuation");
                };
                let text = read(path)?;
                let v = TemporalValuation::from_json(&text)
                    .with_context(|| format!("loading valuation {}", path.display()))?;
                AnySemantics::Temporal(TemporalSemantics::new(v))
            }
        })
    }

    /// Rebuilds the structure recorded in a certificate.
    pub fn from_context(kind: SemanticsKind, context: &serde_json::Value) -> Result<AnySemantics> {
        let vars = || -> Result<Vec<String>> {
            serde_json::from_value(context["variables"].clone())
                .context("certificate context lacks a variable list")
        };
        Ok(match kind {
            SemanticsKind::Boolean => AnySemantics::Boolean(BooleanSemantics::new(vars()?)?),
            SemanticsKind::ThreeValued => {
                AnySemantics::ThreeValued(ThreeValuedSemantics::new(vars()?)?)
            }
            SemanticsKind::Kripke => {
                let spec: ModelSpec = serde_json::from_value(context.clone())?;
                AnySemantics::Kripke(KripkeSemantics::new(Arc::new(
                    KripkeModel::from_spec_closed(&spec)?,
                )))
            }
            SemanticsKind::Temporal => AnySemantics::Temporal(TemporalSemantics::new(
                TemporalValuation::from_value(context)?,
            )),
        })
    }

    pub fn truth_set(&self, f: &Formula) -> Result<AnyTruthSet> {
        Ok(match self {
            AnySemantics::Boolean(s) => AnyTruthSet::Boolean(s.truth_set(f)?),
            AnySemantics::ThreeValued(s) => AnyTruthSet::ThreeValued(s.truth_set(f)?),
            AnySemantics::Kripke(s) => AnyTruthSet::Kripke(s.truth_set(f)?),
            AnySemantics::Temporal(s) => AnyTruthSet::Temporal(s.truth_set(f)?),
        })
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}
