//! Text renderings of truth sets and LaTeX emission of closure tables.
//!
//! All output is byte-stable: no hashing order, locale or float formatting
//! leaks into it.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::boolean::BoolTruthSet;
use crate::closure::{ClosureCertificate, ReferenceTable};
use crate::error::Error;
use crate::formula::Connective;
use crate::kripke::{KripkeModel, WorldSet};
use crate::temporal::PeriSet;
use crate::three_valued::{FuzzyTruthSet, Trit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTruthSet {
    Boolean(BoolTruthSet),
    ThreeValued(FuzzyTruthSet),
    Kripke(WorldSet),
    Temporal(PeriSet),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Latex,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub format: Format,
    /// Cells shown for temporal sets; raised to cover one full period.
    pub strip_len: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            format: Format::Ascii,
            strip_len: 24,
        }
    }
}

impl RenderSpec {
    pub fn ascii() -> RenderSpec {
        RenderSpec::default()
    }

    pub fn json() -> RenderSpec {
        RenderSpec {
            format: Format::Json,
            ..RenderSpec::default()
        }
    }
}

fn glyph(b: bool) -> char {
    if b {
        '#'
    } else {
        '.'
    }
}

/// Lays out `cells` (counter order over `n` variables of radix `radix`) as
/// a grid: the first `n / 2` variables index rows, the rest columns.
fn grid(cells: &[char], n: usize, radix: usize) -> String {
    let col_vars = n - n / 2;
    let cols = radix.pow(col_vars as u32);
    let mut out = String::new();
    for row in cells.chunks(cols) {
        out.extend(row.iter());
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum JsonTruthSet {
    Boolean {
        variables: Vec<String>,
        members: String,
    },
    ThreeValued {
        variables: Vec<String>,
        degrees: String,
    },
    Kripke {
        worlds: Vec<String>,
        members: Vec<String>,
    },
    Temporal {
        prefix: String,
        #[serde(rename = "loop")]
        lp: String,
    },
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn render_truth_set(ts: &AnyTruthSet, spec: &RenderSpec) -> Result<String, Error> {
    match spec.format {
        Format::Ascii => Ok(render_ascii(ts, spec)),
        Format::Json => {
            let json = match ts {
                AnyTruthSet::Boolean(s) => JsonTruthSet::Boolean {
                    variables: s.variables().to_vec(),
                    members: s.to_bits(),
                },
                AnyTruthSet::ThreeValued(s) => JsonTruthSet::ThreeValued {
                    variables: s.variables().to_vec(),
                    degrees: s.to_glyphs(),
                },
                AnyTruthSet::Kripke(s) => JsonTruthSet::Kripke {
                    worlds: s.model().worlds().to_vec(),
                    members: s.world_names(),
                },
                AnyTruthSet::Temporal(s) => JsonTruthSet::Temporal {
                    prefix: bits(s.prefix()),
                    lp: bits(s.loop_part()),
                },
            };
            Ok(serde_json::to_string(&json)?)
        }
        Format::Latex => Err(Error::Malformed(
            "LaTeX output is available for closure tables only".into(),
        )),
    }
}

fn render_ascii(ts: &AnyTruthSet, spec: &RenderSpec) -> String {
    match ts {
        AnyTruthSet::Boolean(s) => {
            let cells: Vec<char> = s.members().iter().map(|&b| glyph(b)).collect();
            grid(&cells, s.variables().len(), 2)
        }
        AnyTruthSet::ThreeValued(s) => {
            let cells: Vec<char> = s.degrees().iter().map(|t| t.glyph()).collect();
            grid(&cells, s.variables().len(), 3)
        }
        AnyTruthSet::Kripke(s) => {
            let mut out = format!("{{{}}}\n", s.world_names().join(", "));
            out.push_str(&s.model().hasse_text());
            out
        }
        AnyTruthSet::Temporal(s) => {
            let len = spec.strip_len.max(s.prefix_len() + s.period());
            let strip: String = (0..len).map(|n| glyph(s.contains(n))).collect();
            format!("{}\n{strip}\n", s.to_notation())
        }
    }
}

/// Reloads the JSON rendering. Kripke sets need the model they belong to.
pub fn parse_truth_set_json(
    text: &str,
    model: Option<&Arc<KripkeModel>>,
) -> Result<AnyTruthSet, Error> {
    let json: JsonTruthSet = serde_json::from_str(text)?;
    Ok(match json {
        JsonTruthSet::Boolean { variables, members } => {
            let bits = members
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::InvalidRepr(members.clone())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            AnyTruthSet::Boolean(BoolTruthSet::from_members(variables.into(), bits)?)
        }
        JsonTruthSet::ThreeValued { variables, degrees } => {
            let ds = degrees
                .chars()
                .map(|c| Trit::from_glyph(c).ok_or_else(|| Error::InvalidRepr(degrees.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            AnyTruthSet::ThreeValued(FuzzyTruthSet::from_degrees(variables.into(), ds)?)
        }
        JsonTruthSet::Kripke { worlds, members } => {
            let model = model
                .ok_or_else(|| Error::Malformed("a Kripke truth set needs its model".into()))?;
            if model.worlds() != worlds.as_slice() {
                return Err(Error::ContextMismatch("models"));
            }
            let mut mask = 0u64;
            for w in &members {
                let i = model
                    .world_index(w)
                    .ok_or_else(|| Error::Malformed(format!("unknown world {w:?}")))?;
                mask |= 1 << i;
            }
            AnyTruthSet::Kripke(WorldSet::new(model.clone(), mask)?)
        }
        JsonTruthSet::Temporal { prefix, lp } => {
            AnyTruthSet::Temporal(PeriSet::from_bits(&prefix, &lp)?)
        }
    })
}

fn latex_symbol(c: Connective) -> &'static str {
    match c {
        Connective::Neg => "$\\neg$",
        Connective::And => "$\\wedge$",
        Connective::Or => "$\\vee$",
        Connective::Imp => "$\\to$",
        Connective::ImpK => "$\\to_{\\text{K}}$",
        Connective::ImpL => "$\\to_{\\text{\\L}}$",
        Connective::F => "$\\mathsf{F}$",
        Connective::X => "$\\mathsf{X}$",
        Connective::U => "$\\mathsf{U}$",
        Connective::W => "$\\mathsf{W}$",
    }
}

/// Booktabs tabular of one application table, rows and columns in member
/// order. Unary tables get a single column headed by the connective.
pub fn emit_table_latex(cert: &ClosureCertificate, conn: Connective) -> Result<String, Error> {
    let rows = cert
        .table(conn)
        .ok_or_else(|| Error::MissingTable(conn.name().into()))?;
    let names = cert.names();
    let mut out = String::new();
    let cols = if conn.arity() == 1 { 1 } else { names.len() };
    let _ = writeln!(out, "\\begin{{tabular}}{{c|{}}}", "c".repeat(cols));
    out.push_str("\\toprule\n");
    if conn.arity() == 1 {
        let _ = writeln!(out, " &{}\\\\", latex_symbol(conn));
    } else {
        let _ = writeln!(out, " &{}\\\\", names.join("&"));
    }
    out.push_str("\\midrule\n");
    for (name, row) in names.iter().zip(rows) {
        let _ = writeln!(out, "{name}&{}\\\\", row.join("&"));
    }
    out.push_str("\\bottomrule\n\\end{tabular}\n");
    Ok(out)
}

const KLEENE_LABELS: [&str; 18] = [
    "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "N", "O", "P", "Q", "R",
];

const KLEENE_ROWS: [&str; 18] = [
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&P&G&R",
    "A&I&C&D&E&F&H&H&I&J&K&L&M&N&O&P&H&O",
    "A&B&K&D&E&F&G&H&I&J&K&J&N&N&O&J&Q&R",
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&P&Q&R",
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&L&Q&R",
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&P&Q&R",
    "A&I&C&D&E&F&O&O&I&N&K&M&M&N&O&M&O&O",
    "A&B&C&D&E&F&R&O&I&N&K&M&M&N&O&M&R&R",
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&P&G&R",
    "A&B&C&D&E&F&R&O&I&N&K&M&M&N&O&M&R&R",
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&L&Q&R",
    "A&B&K&D&E&F&R&O&I&N&K&N&N&N&O&N&R&R",
    "A&B&K&D&E&F&G&H&I&J&K&J&N&N&O&J&G&R",
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&L&G&R",
    "A&B&C&D&E&F&G&H&I&J&K&L&M&N&O&L&G&R",
    "A&B&D&D&F&F&B&I&I&A&D&A&A&A&I&A&B&B",
    "D&F&C&D&E&F&E&E&F&K&K&C&C&K&E&C&E&E",
    "A&I&C&D&E&F&H&H&I&J&K&L&M&N&O&L&H&O",
];

/// The published 18-member Kleene-implication table over `p, q`, with
/// `P = [[p]]` and `Q = [[q]]`.
pub fn kleene_reference_table() -> ReferenceTable {
    ReferenceTable::from_rows(Connective::ImpK, &KLEENE_LABELS, &KLEENE_ROWS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::BooleanSemantics;
    use crate::closure::prove_undefinable;
    use crate::formula::parse;
    use crate::semantics::Semantics;
    use crate::temporal::peri_f;
    use crate::three_valued::ThreeValuedSemantics;

    #[test]
    fn boolean_grid() {
        let sem = BooleanSemantics::new(["p", "q"]).unwrap();
        let ts = sem.truth_set(&parse("p & q").unwrap()).unwrap();
        let out = render_truth_set(&AnyTruthSet::Boolean(ts), &RenderSpec::ascii()).unwrap();
        assert_eq!(out, "..\n.#\n");
    }

    #[test]
    fn kleene_grid() {
        let sem = ThreeValuedSemantics::new(["p", "q"]).unwrap();
        let ts = sem.truth_set(&parse("p ->k q").unwrap()).unwrap();
        let out = render_truth_set(&AnyTruthSet::ThreeValued(ts), &RenderSpec::ascii()).unwrap();
        assert_eq!(out, "###\n//#\n./#\n");
    }

    #[test]
    fn temporal_strip() {
        let fp = peri_f(&PeriSet::finite([3]));
        let out = render_truth_set(&AnyTruthSet::Temporal(fp), &RenderSpec::ascii()).unwrap();
        assert_eq!(out, format!("1111;0\n####{}\n", ".".repeat(20)));
        let long = PeriSet::from_bits(&"0".repeat(30), "1").unwrap();
        let out = render_truth_set(
            &AnyTruthSet::Temporal(long),
            &RenderSpec {
                format: Format::Ascii,
                strip_len: 4,
            },
        )
        .unwrap();
        assert_eq!(out.lines().nth(1).unwrap().len(), 31);
    }

    #[test]
    fn single_cell_unary_table() {
        let sem = BooleanSemantics::new(["p"]).unwrap();
        let t = parse("p -> p").unwrap();
        let cert =
            prove_undefinable(&sem, &t, std::slice::from_ref(&t), &[Connective::Or], 10).unwrap();
        assert!(emit_table_latex(&cert, Connective::Neg).is_err());
        let f = parse("p | ~p").unwrap();
        let cert =
            prove_undefinable(&sem, &f, std::slice::from_ref(&f), &[Connective::Neg], 10).unwrap();
        // [[p | ~p]] and its complement
        assert_eq!(cert.len(), 2);
        let out = emit_table_latex(&cert, Connective::Neg).unwrap();
        assert!(out.starts_with("\\begin{tabular}{c|c}\n"));
        assert!(out.contains("A&B\\\\\nB&A\\\\\n"));
    }

    #[test]
    fn reference_table_shape() {
        let t = kleene_reference_table();
        assert_eq!(t.cells.len(), 18);
        assert!(t.cells.iter().all(|r| r.len() == 18));
        // row A, column Q
        assert_eq!(t.cells[0][16], "G");
    }
}
