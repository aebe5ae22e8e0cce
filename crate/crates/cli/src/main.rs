//! `undef`: saturate truth-set families, search for definitions and Kripke
//! witnesses, and audit certificates.

mod select;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use truthset::closure::{certificate, AuditFailure};
use truthset::formula::Constant;
use truthset::kripke::{search_kripke_witness_with, WitnessSearch};
use truthset::render::{
    emit_table_latex, kleene_reference_table, render_truth_set, Format, RenderSpec,
};
use truthset::temporal::check_graded_bound;
use truthset::{
    anchor_naming, parse, saturate, search_definition, verify_certificate, ClosureCertificate,
    Connective, Error, Formula, Semantics, SemanticsKind, Signature, Verdict, DEFAULT_CAP,
};

use select::{with_semantics, AnySemantics, Inputs};

/// Writes to stdout, exiting quietly once the reader has gone away.
fn emit(args: std::fmt::Arguments) {
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(USAGE.into());
    }
}

macro_rules! print {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! println {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

const INCONCLUSIVE: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "undef",
    version,
    about = "Undefinability proofs by truth-set saturation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Saturate the seeds and report whether the target's truth set is reached.
    Prove(ProveArgs),
    /// Saturate the seeds and list the family.
    Closure(ClosureArgs),
    /// Find the first formula over the connectives equivalent to the target.
    SearchDef(SearchArgs),
    /// Print the truth set of one formula.
    Eval(EvalArgs),
    /// Search small Kripke models for one where the target is not definable.
    FindModel(FindModelArgs),
    /// Re-check every cell and the verdict of a certificate.
    CheckCert(CheckArgs),
    /// Check the bounded-X graded family property for p, ~, |, X.
    GradedCheck(GradedArgs),
    /// Emit the LaTeX table of one connective from a certificate.
    Table(TableArgs),
}

#[derive(Args)]
struct Structure {
    /// boolean, three-valued, kripke or temporal.
    #[arg(long, env = "UNDEF_SEMANTICS", default_value = "boolean", value_parser = parse_kind)]
    semantics: SemanticsKind,
    /// Variables, comma separated. Defaults to those of the formulas given.
    #[arg(long, env = "UNDEF_VARS", value_delimiter = ',')]
    vars: Vec<String>,
    /// Kripke model JSON.
    #[arg(long, env = "UNDEF_MODEL")]
    model: Option<PathBuf>,
    /// Temporal valuation JSON.
    #[arg(long, env = "UNDEF_VALUATION")]
    valuation: Option<PathBuf>,
}

#[derive(Args)]
struct Family {
    #[command(flatten)]
    structure: Structure,
    /// Seed formulas, comma separated. Defaults to the variables.
    #[arg(long, env = "UNDEF_SEEDS", value_delimiter = ',')]
    seeds: Vec<String>,
    #[arg(long, env = "UNDEF_CONNECTIVES", value_delimiter = ',', required = true, value_parser = parse_connective)]
    connectives: Vec<Connective>,
    /// Add the constants the semantics understands to the seeds.
    #[arg(long, env = "UNDEF_SEED_CONSTANTS")]
    seed_constants: bool,
    #[arg(long, env = "UNDEF_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Label a member, as `LABEL=formula`. Repeatable. Without any, each
    /// variable seed is labelled by its upper-cased name.
    #[arg(long = "anchor")]
    anchors: Vec<String>,
    /// Reference table to relabel against: `auto`, `none` or `kleene`.
    #[arg(long, env = "UNDEF_REFERENCE", default_value = "auto")]
    reference: String,
    /// Write the certificate JSON here.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Write LaTeX tables for every connective here (`-` for stdout).
    #[arg(long)]
    latex: Option<PathBuf>,
}

#[derive(Args)]
struct ProveArgs {
    #[command(flatten)]
    family: Family,
    #[arg(long, env = "UNDEF_TARGET")]
    target: String,
}

#[derive(Args)]
struct ClosureArgs {
    #[command(flatten)]
    family: Family,
    /// Also report this formula's verdict.
    #[arg(long, env = "UNDEF_TARGET")]
    target: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    structure: Structure,
    #[arg(long, env = "UNDEF_TARGET")]
    target: String,
    #[arg(long, env = "UNDEF_CONNECTIVES", value_delimiter = ',', required = true, value_parser = parse_connective)]
    connectives: Vec<Connective>,
    #[arg(long, env = "UNDEF_MAX_SIZE", default_value_t = 9)]
    max_size: usize,
    /// Allow constant leaves.
    #[arg(long, env = "UNDEF_SEED_CONSTANTS")]
    seed_constants: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    structure: Structure,
    #[arg(long)]
    formula: String,
    #[arg(long)]
    json: bool,
    /// Preview length for temporal sets.
    #[arg(long, default_value_t = 24)]
    strip: usize,
}

#[derive(Args)]
struct FindModelArgs {
    #[arg(long, env = "UNDEF_VARS", value_delimiter = ',')]
    vars: Vec<String>,
    #[arg(long, env = "UNDEF_TARGET")]
    target: String,
    #[arg(long, env = "UNDEF_CONNECTIVES", value_delimiter = ',', required = true, value_parser = parse_connective)]
    connectives: Vec<Connective>,
    #[arg(long, env = "UNDEF_MAX_WORLDS", default_value_t = 5)]
    max_worlds: usize,
    /// Also try valuations where an atom is empty, total or equal to another.
    #[arg(long)]
    degenerate: bool,
    #[arg(long, env = "UNDEF_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Write the witness model JSON here.
    #[arg(long)]
    model_out: Option<PathBuf>,
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct GradedArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 8)]
    max_nodes: usize,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    cert: PathBuf,
    #[arg(long, value_parser = parse_connective)]
    connective: Connective,
    /// Output file; stdout when absent.
    #[arg(long)]
    latex: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<SemanticsKind, String> {
    SemanticsKind::from_name(s).ok_or_else(|| format!("unknown semantics {s:?}"))
}

fn parse_connective(s: &str) -> Result<Connective, String> {
    Connective::from_name(s).ok_or_else(|| format!("unknown connective {s:?}"))
}

fn formula(s: &str) -> Result<Formula> {
    parse(s).with_context(|| format!("parsing {s:?}"))
}

/// Explicit variables, or those of `formulas` in order of first occurrence.
fn variables(explicit: &[String], formulas: &[&Formula]) -> Vec<String> {
    if !explicit.is_empty() {
        return explicit.to_vec();
    }
    let mut out: Vec<String> = Vec::new();
    for f in formulas {
        for v in f.variables() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn build(structure: &Structure, formulas: &[&Formula]) -> Result<AnySemantics> {
    let vars = variables(&structure.vars, formulas);
    AnySemantics::build(&Inputs {
        kind: structure.semantics,
        vars: &vars,
        model: structure.model.as_deref(),
        valuation: structure.valuation.as_deref(),
    })
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn accepted_constants<S: Semantics>(sem: &S) -> Vec<Formula> {
    Constant::ALL
        .into_iter()
        .map(Formula::Const)
        .filter(|c| sem.truth_set(c).is_ok())
        .collect()
}

/// Saturates, labels and writes the requested artifacts.
fn run_family(family: &Family, target: Option<&str>) -> Result<ClosureCertificate> {
    let mut seeds = family
        .seeds
        .iter()
        .map(|s| formula(s))
        .collect::<Result<Vec<_>>>()?;
    let target = target.map(formula).transpose()?;
    let mut mentioned: Vec<&Formula> = seeds.iter().collect();
    mentioned.extend(target.as_ref());
    let sem = build(&family.structure, &mentioned)?;
    if seeds.is_empty() {
        seeds = variables(&family.structure.vars, &mentioned)
            .into_iter()
            .map(Formula::Var)
            .collect();
    }
    if seeds.is_empty() {
        bail!("no seeds: pass --seeds or --vars");
    }
    let anchors = family
        .anchors
        .iter()
        .map(|a| {
            let (label, f) = a
                .split_once('=')
                .ok_or_else(|| anyhow!("anchor {a:?} is not LABEL=formula"))?;
            Ok((label.trim().to_string(), formula(f)?))
        })
        .collect::<Result<Vec<_>>>()?;
    with_semantics!(&sem, s => {
        if family.seed_constants {
            seeds.extend(accepted_constants(s));
        }
        let sat = saturate(s, &seeds, &family.connectives, family.cap)?;
        let target = target.clone().unwrap_or_else(|| seeds[0].clone());
        let target_set = s.truth_set(&target)?;
        let cert = certificate(s, &seeds, &sat, &target, &target_set);
        let cert = label(&cert, s, anchors, &family.reference, &seeds)?;
        if let Some(path) = &family.cert {
            write_out(path, &cert.to_json())?;
        }
        if let Some(path) = &family.latex {
            let mut tex = String::new();
            for c in &cert.connectives {
                tex.push_str(&emit_table_latex(&cert, *c)?);
            }
            write_out(path, &tex)?;
        }
        Ok(cert)
    })
}

fn label<S: Semantics>(
    cert: &ClosureCertificate,
    sem: &S,
    anchors: Vec<(String, Formula)>,
    reference: &str,
    seeds: &[Formula],
) -> Result<ClosureCertificate> {
    let explicit = !anchors.is_empty();
    let anchors = if explicit {
        anchors
    } else {
        seeds
            .iter()
            .filter_map(|f| match f {
                Formula::Var(v) => Some((v.to_ascii_uppercase(), f.clone())),
                _ => None,
            })
            .collect()
    };
    let reference = match reference {
        "none" => None,
        "kleene" => Some((kleene_reference_table(), true)),
        "auto" => {
            let t = kleene_reference_table();
            let fits = cert.len() == t.labels.len() && cert.table(t.connective).is_some();
            fits.then_some((t, false))
        }
        other => bail!("unknown reference table {other:?}"),
    };
    if let Some((table, required)) = &reference {
        match anchor_naming(cert, sem, &anchors, Some(table)) {
            Ok(named) => return Ok(named.sorted_by_name()),
            Err(e) if *required || explicit => return Err(e.into()),
            Err(_) => {}
        }
    }
    match anchor_naming(cert, sem, &anchors, None) {
        Ok(named) => Ok(named.sorted_by_name()),
        Err(e) if explicit => Err(e.into()),
        Err(_) => Ok(cert.clone()),
    }
}

fn print_family(cert: &ClosureCertificate) {
    println!("semantics: {}", cert.semantics);
    println!("members: {}", cert.len());
    for m in &cert.members {
        println!("  {} {}", m.name, m.repr);
    }
}

fn verdict_line(cert: &ClosureCertificate) -> String {
    match &cert.target.verdict {
        Verdict::Excluded => format!(
            "verdict: excluded ({} is not in the family)",
            cert.target.formula
        ),
        Verdict::Member(name) => format!("verdict: member {name} (inconclusive)"),
    }
}

fn verdict_code(cert: &ClosureCertificate) -> u8 {
    match cert.target.verdict {
        Verdict::Excluded => 0,
        Verdict::Member(_) => INCONCLUSIVE,
    }
}

fn prove(args: &ProveArgs) -> Result<u8> {
    let cert = run_family(&args.family, Some(&args.target))?;
    println!("semantics: {}", cert.semantics);
    println!("members: {}", cert.len());
    println!("{}", verdict_line(&cert));
    Ok(verdict_code(&cert))
}

fn closure(args: &ClosureArgs) -> Result<u8> {
    let cert = run_family(&args.family, args.target.as_deref())?;
    print_family(&cert);
    if args.target.is_some() {
        println!("{}", verdict_line(&cert));
        return Ok(verdict_code(&cert));
    }
    Ok(0)
}

fn search_def(args: &SearchArgs) -> Result<u8> {
    let target = formula(&args.target)?;
    let sem = build(&args.structure, &[&target])?;
    let vars = variables(&args.structure.vars, &[&target]);
    let mut sig = Signature::new(vars, args.connectives.iter().copied())?;
    let found = with_semantics!(&sem, s => {
        if args.seed_constants {
            let consts = accepted_constants(s).into_iter().filter_map(|f| match f {
                Formula::Const(c) => Some(c),
                _ => None,
            });
            sig = sig.with_constants(consts);
        }
        search_definition(s, &target, &sig, args.max_size)?
    });
    match found {
        Some(f) => {
            println!("{f}");
            Ok(0)
        }
        None => {
            println!("no definition within {} nodes", args.max_size);
            Ok(INCONCLUSIVE)
        }
    }
}

fn eval(args: &EvalArgs) -> Result<u8> {
    let f = formula(&args.formula)?;
    let sem = build(&args.structure, &[&f])?;
    let ts = sem.truth_set(&f)?;
    let spec = RenderSpec {
        format: if args.json {
            Format::Json
        } else {
            Format::Ascii
        },
        strip_len: args.strip,
    };
    let out = render_truth_set(&ts, &spec)?;
    if args.json {
        println!("{out}");
    } else {
        print!("{out}");
    }
    Ok(0)
}

fn find_model(args: &FindModelArgs) -> Result<u8> {
    let target = formula(&args.target)?;
    let vars = variables(&args.vars, &[&target]);
    let sig = Signature::new(vars, args.connectives.iter().copied())?;
    let opts = WitnessSearch {
        max_worlds: args.max_worlds,
        nondegenerate: !args.degenerate,
        cap: args.cap,
    };
    match search_kripke_witness_with(&target, &sig, &opts)? {
        Some(w) => {
            println!("worlds: {}", w.model.worlds().join(", "));
            print!("{}", w.model.hasse_text());
            for v in sig.variables() {
                let set = truthset::kripke::kripke_truth_set(&Formula::var(v.clone()), &w.model)?;
                println!("{v}: {{{}}}", set.world_names().join(", "));
            }
            print_family(&w.certificate);
            println!("{}", verdict_line(&w.certificate));
            if let Some(path) = &args.model_out {
                write_out(path, &w.model.to_json())?;
            }
            if let Some(path) = &args.cert {
                write_out(path, &w.certificate.to_json())?;
            }
            Ok(0)
        }
        None => {
            println!("no witness with at most {} worlds", args.max_worlds);
            Ok(INCONCLUSIVE)
        }
    }
}

fn check_cert(args: &CheckArgs) -> Result<u8> {
    let cert = ClosureCertificate::from_json(&select::read(&args.cert)?)?;
    let sem = AnySemantics::from_context(cert.semantics, &cert.context)?;
    let outcome: Result<(), AuditFailure> =
        with_semantics!(&sem, s => verify_certificate(&cert, s));
    match outcome {
        Ok(()) => {
            println!(
                "certificate valid: {} members, {}",
                cert.len(),
                verdict_line(&cert)
            );
            Ok(0)
        }
        Err(e) => {
            println!("certificate invalid: {e}");
            Ok(INCONCLUSIVE)
        }
    }
}

fn graded_check(args: &GradedArgs) -> Result<u8> {
    let report = check_graded_bound(args.k, args.max_nodes);
    println!(
        "k={} T={}: {} formulas with at most {} nodes checked, {} violations",
        report.k,
        report.horizon,
        report.checked,
        report.max_nodes,
        report.violations.len()
    );
    for f in &report.violations {
        println!("  {f}");
    }
    Ok(if report.passed() { 0 } else { INCONCLUSIVE })
}

fn table(args: &TableArgs) -> Result<u8> {
    let cert = ClosureCertificate::from_json(&select::read(&args.cert)?)?;
    let tex = emit_table_latex(&cert, args.connective)?;
    match &args.latex {
        Some(path) => write_out(path, &tex)?,
        None => print!("{tex}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Prove(a) => prove(a),
        Command::Closure(a) => closure(a),
        Command::SearchDef(a) => search_def(a),
        Command::Eval(a) => eval(a),
        Command::FindModel(a) => find_model(a),
        Command::CheckCert(a) => check_cert(a),
        Command::GradedCheck(a) => graded_check(a),
        Command::Table(a) => table(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let cap = e
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::CapExceeded { .. }));
            ExitCode::from(if cap { CAP } else { USAGE })
        }
    }
}
