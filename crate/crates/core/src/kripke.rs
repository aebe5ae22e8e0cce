//! Intuitionistic semantics over a fixed finite Kripke model.
//!
//! Worlds are numbered in declaration order and sets of worlds are `u64`
//! bitmasks, so a model has at most [`MAX_WORLDS`] worlds. Every truth set
//! produced here is upward closed.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::closure::{prove_undefinable, ClosureCertificate, Verdict, DEFAULT_CAP};
use crate::error::Error;
use crate::formula::{Connective, Constant, Formula, Signature};
use crate::semantics::{Semantics, SemanticsKind};

pub const MAX_WORLDS: usize = 64;

/// Unvalidated model description, the shape of the JSON model file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelViolation {
    #[error("world {0:?} is declared twice")]
    DuplicateWorld(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("reflexivity fails at {world}")]
    Reflexivity { world: String },
    #[error("transitivity fails: {a} <= {b} and {b} <= {c} but not {a} <= {c}")]
    Transitivity { a: String, b: String, c: String },
    #[error("antisymmetry fails: {a} <= {b} and {b} <= {a}")]
    Antisymmetry { a: String, b: String },
    #[error("persistence fails for {variable}: {from} <= {to}, {from} in valuation, {to} not")]
    Persistence {
        variable: String,
        from: String,
        to: String,
    },
}

impl ModelSpec {
    /// Adds the reflexive-transitive closure of `leq`. Unknown world names
    /// are left in place for validation to report.
    pub fn closed(&self) -> ModelSpec {
        let n = self.worlds.len();
        let index = |w: &str| self.worlds.iter().position(|x| x == w);
        let mut rel = vec![vec![false; n]; n];
        let mut unknown = Vec::new();
        for (a, b) in &self.leq {
            match (index(a), index(b)) {
                (Some(i), Some(j)) => rel[i][j] = true,
                _ => unknown.push((a.clone(), b.clone())),
            }
        }
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut leq = unknown;
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    leq.push((self.worlds[i].clone(), self.worlds[j].clone()));
                }
            }
        }
        ModelSpec {
            worlds: self.worlds.clone(),
            leq,
            valuation: self.valuation.clone(),
        }
    }
}

/// Checks the partial-order axioms and persistence of the valuation,
/// reporting the first violation found.
pub fn validate_model(spec: &ModelSpec) -> Result<(), ModelViolation> {
    relation_matrix(spec).map(|_| ())
}

fn relation_matrix(spec: &ModelSpec) -> Result<Vec<Vec<bool>>, ModelViolation> {
    let n = spec.worlds.len();
    for (i, w) in spec.worlds.iter().enumerate() {
        if spec.worlds[..i].contains(w) {
            return Err(ModelViolation::DuplicateWorld(w.clone()));
        }
    }
    let index = |w: &str| {
        spec.worlds
            .iter()
            .position(|x| x == w)
            .ok_or_else(|| ModelViolation::UnknownWorld(w.to_string()))
    };
    let mut rel = vec![vec![false; n]; n];
    for (a, b) in &spec.leq {
        rel[index(a)?][index(b)?] = true;
    }
    let name = |i: usize| spec.worlds[i].clone();
    for i in 0..n {
        if !rel[i][i] {
            return Err(ModelViolation::Reflexivity { world: name(i) });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] && rel[j][i] {
                return Err(ModelViolation::Antisymmetry {
                    a: name(i),
                    b: name(j),
                });
            }
            if !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if rel[j][k] && !rel[i][k] {
                    return Err(ModelViolation::Transitivity {
                        a: name(i),
                        b: name(j),
                        c: name(k),
                    });
                }
            }
        }
    }
    for (var, set) in &spec.valuation {
        let members = set
            .iter()
            .map(|w| index(w))
            .collect::<Result<Vec<_>, _>>()?;
        for &i in &members {
            for j in 0..n {
                if rel[i][j] && !members.contains(&j) {
                    return Err(ModelViolation::Persistence {
                        variable: var.clone(),
                        from: name(i),
                        to: name(j),
                    });
                }
            }
        }
    }
    Ok(rel)
}

/// A validated finite poset with a persistent valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    up: Vec<u64>,
    valuation: BTreeMap<String, u64>,
}

impl KripkeModel {
    /// Validates `spec` as given; `leq` must already be a partial order.
    pub fn new(spec: &ModelSpec) -> Result<KripkeModel, Error> {
        if spec.worlds.len() > MAX_WORLDS {
            return Err(Error::TooManyWorlds {
                max: MAX_WORLDS,
                found: spec.worlds.len(),
            });
        }
        let rel = relation_matrix(spec)?;
        let up = rel
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let valuation = spec
            .valuation
            .iter()
            .map(|(var, set)| {
                let mask = set
                    .iter()
                    .map(|w| spec.worlds.iter().position(|x| x == w).unwrap())
                    .fold(0u64, |m, i| m | 1 << i);
                (var.clone(), mask)
            })
            .collect();
        Ok(KripkeModel {
            worlds: spec.worlds.clone(),
            up,
            valuation,
        })
    }

    /// Closes `leq` reflexively and transitively, then validates.
    pub fn from_spec_closed(spec: &ModelSpec) -> Result<KripkeModel, Error> {
        KripkeModel::new(&spec.closed())
    }

    /// Loads the JSON model file format.
    pub fn from_json(text: &str) -> Result<KripkeModel, Error> {
        let spec: ModelSpec = serde_json::from_str(text)?;
        KripkeModel::from_spec_closed(&spec)
    }

    /// Description listing only the cover relation.
    pub fn to_spec(&self) -> ModelSpec {
        ModelSpec {
            worlds: self.worlds.clone(),
            leq: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.worlds[a].clone(), self.worlds[b].clone()))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(v, &m)| (v.clone(), self.names(m)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("model serializes")
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn all(&self) -> u64 {
        if self.worlds.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.worlds.len()) - 1
        }
    }

    /// `{u | w <= u}` as a bitmask.
    pub fn up(&self, w: usize) -> u64 {
        self.up[w]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn valuation(&self, var: &str) -> Option<u64> {
        self.valuation.get(var).copied()
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn is_upward_closed(&self, set: u64) -> bool {
        (0..self.worlds.len()).all(|w| set >> w & 1 == 0 || self.up[w] & !set == 0)
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.worlds.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cover relation one pair per line, e.g. `r < a`.
    pub fn hasse_text(&self) -> String {
        self.covers()
            .into_iter()
            .map(|(a, b)| format!("{} < {}\n", self.worlds[a], self.worlds[b]))
            .collect()
    }

    fn names(&self, mask: u64) -> Vec<String> {
        (0..self.worlds.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.worlds[i].clone())
            .collect()
    }
}

/// Upward-closed set of worlds of one model.
#[derive(Clone)]
pub struct WorldSet {
    model: Arc<KripkeModel>,
    members: u64,
}

impl WorldSet {
    pub fn new(model: Arc<KripkeModel>, members: u64) -> Result<WorldSet, Error> {
        if members & !model.all() != 0 || !model.is_upward_closed(members) {
            return Err(Error::Malformed(format!(
                "world set {members:#b} is not an upward-closed subset"
            )));
        }
        Ok(WorldSet { model, members })
    }

    pub fn model(&self) -> &Arc<KripkeModel> {
        &self.model
    }

    pub fn members(&self) -> u64 {
        self.members
    }

    pub fn contains(&self, world: usize) -> bool {
        self.members >> world & 1 == 1
    }

    pub fn world_names(&self) -> Vec<String> {
        self.model.names(self.members)
    }

    pub fn is_upward_closed(&self) -> bool {
        self.model.is_upward_closed(self.members)
    }

    /// One `0`/`1` per world in declaration order.
    pub fn to_bits(&self) -> String {
        (0..self.model.len())
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }
}

impl PartialEq for WorldSet {
    fn eq(&self, other: &WorldSet) -> bool {
        self.members == other.members
            && (Arc::ptr_eq(&self.model, &other.model) || self.model == other.model)
    }
}

impl Eq for WorldSet {}

impl Hash for WorldSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.world_names().join(","))
    }
}

fn check_connective(c: Connective) -> Result<(), Error> {
    match c {
        Connective::Neg | Connective::And | Connective::Or | Connective::Imp => Ok(()),
        other => Err(Error::UnsupportedConnective {
            connective: other,
            semantics: "kripke",
        }),
    }
}

/// Heyting operations on upward-closed sets.
pub fn heyting_apply(c: Connective, args: &[&WorldSet]) -> Result<WorldSet, Error> {
    check_connective(c)?;
    if args.len() != c.arity() {
        return Err(Error::Arity {
            connective: c,
            expected: c.arity(),
            found: args.len(),
        });
    }
    let model = &args[0].model;
    if args[1..]
        .iter()
        .any(|a| !Arc::ptr_eq(&a.model, model) && a.model != *model)
    {
        return Err(Error::ContextMismatch("models"));
    }
    let a = args[0].members;
    let n = model.len();
    let members = match c {
        Connective::And => a & args[1].members,
        Connective::Or => a | args[1].members,
        Connective::Neg => (0..n)
            .filter(|&w| model.up[w] & a == 0)
            .fold(0, |m, w| m | 1 << w),
        _ => {
            let b = args[1].members;
            (0..n)
                .filter(|&w| model.up[w] & a & !b == 0)
                .fold(0, |m, w| m | 1 << w)
        }
    };
    let out = WorldSet {
        model: model.clone(),
        members,
    };
    debug_assert!(out.is_upward_closed());
    Ok(out)
}

pub fn kripke_truth_set(f: &Formula, m: &Arc<KripkeModel>) -> Result<WorldSet, Error> {
    KripkeSemantics::new(m.clone()).truth_set(f)
}

#[derive(Clone, Debug)]
pub struct KripkeSemantics {
    model: Arc<KripkeModel>,
}

impl KripkeSemantics {
    pub fn new(model: Arc<KripkeModel>) -> KripkeSemantics {
        KripkeSemantics { model }
    }

    pub fn model(&self) -> &Arc<KripkeModel> {
        &self.model
    }

    pub fn world_set(&self, members: u64) -> Result<WorldSet, Error> {
        WorldSet::new(self.model.clone(), members)
    }
}

impl Semantics for KripkeSemantics {
    type TruthSet = WorldSet;

    fn kind(&self) -> SemanticsKind {
        SemanticsKind::Kripke
    }

    fn supports(&self, c: Connective) -> bool {
        check_connective(c).is_ok()
    }

    fn truth_set(&self, f: &Formula) -> Result<WorldSet, Error> {
        let set = |members| WorldSet {
            model: self.model.clone(),
            members,
        };
        match f {
            Formula::Var(v) => self
                .model
                .valuation(v)
                .map(set)
                .ok_or_else(|| Error::UnknownVariable(v.clone())),
            Formula::Const(Constant::True) => Ok(set(self.model.all())),
            Formula::Const(Constant::False) => Ok(set(0)),
            Formula::Const(Constant::Half) => Err(Error::UnsupportedConstant {
                constant: "unk",
                semantics: "kripke",
            }),
            Formula::App(c, args) => {
                check_connective(*c)?;
                let sets = args
                    .iter()
                    .map(|a| self.truth_set(a))
                    .collect::<Result<Vec<_>, _>>()?;
                heyting_apply(*c, &sets.iter().collect::<Vec<_>>())
            }
        }
    }

    fn apply(&self, c: Connective, args: &[&WorldSet]) -> Result<WorldSet, Error> {
        heyting_apply(c, args)
    }

    fn repr(&self, ts: &WorldSet) -> String {
        ts.to_bits()
    }

    fn parse_repr(&self, repr: &str) -> Result<WorldSet, Error> {
        if repr.len() != self.model.len() {
            return Err(Error::InvalidRepr(repr.to_string()));
        }
        let mut members = 0u64;
        for (i, c) in repr.chars().enumerate() {
            match c {
                '0' => {}
                '1' => members |= 1 << i,
                _ => return Err(Error::InvalidRepr(repr.to_string())),
            }
        }
        WorldSet::new(self.model.clone(), members).map_err(|_| Error::InvalidRepr(repr.to_string()))
    }

    fn context(&self) -> serde_json::Value {
        serde_json::to_value(self.model.to_spec()).expect("model serializes")
    }
}

/// Bounds and filters for [`search_kripke_witness_with`].
#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub max_worlds: usize,
    /// Skip valuations where some atom is empty, total, or equal to
    /// another atom.
    pub nondegenerate: bool,
    pub cap: usize,
}

impl WitnessSearch {
    pub fn new(max_worlds: usize) -> WitnessSearch {
        WitnessSearch {
            max_worlds,
            nondegenerate: true,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KripkeWitness {
    pub model: Arc<KripkeModel>,
    pub certificate: ClosureCertificate,
}

/// First model (in search order) on which the closure of the atoms under
/// `sig`'s connectives misses the target's truth set. `None` means the
/// bound was exhausted, which says nothing about definability.
pub fn search_kripke_witness(
    target: &Formula,
    sig: &Signature,
    max_worlds: usize,
) -> Result<Option<KripkeWitness>, Error> {
    search_kripke_witness_with(target, sig, &WitnessSearch::new(max_worlds))
}

pub fn search_kripke_witness_with(
    target: &Formula,
    sig: &Signature,
    opts: &WitnessSearch,
) -> Result<Option<KripkeWitness>, Error> {
    for c in target.connectives().iter().chain(sig.connectives()) {
        check_connective(*c)?;
    }
    for v in target.variables() {
        if sig.variable_index(&v).is_none() {
            return Err(Error::UnknownVariable(v));
        }
    }
    let seeds: Vec<Formula> = sig.variables().iter().cloned().map(Formula::Var).collect();
    let conns: Vec<Connective> = sig.connectives().iter().copied().collect();
    for n in 1..=opts.max_worlds.min(MAX_WORLDS) {
        for order in natural_posets(n) {
            let upsets = upsets(&order);
            let mut choice = vec![0usize; sig.variables().len()];
            loop {
                let masks: Vec<u64> = choice.iter().map(|&i| upsets[i]).collect();
                if !opts.nondegenerate || nondegenerate(&masks, n) {
                    let model = Arc::new(build_model(n, &order, sig.variables(), &masks));
                    let sem = KripkeSemantics::new(model.clone());
                    let cert = prove_undefinable(&sem, target, &seeds, &conns, opts.cap)?;
                    if cert.target.verdict == Verdict::Excluded {
                        return Ok(Some(KripkeWitness {
                            model,
                            certificate: cert,
                        }));
                    }
                }
                if !advance(&mut choice, upsets.len()) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

fn nondegenerate(masks: &[u64], n: usize) -> bool {
    let all = (1u64 << n) - 1;
    masks
        .iter()
        .enumerate()
        .all(|(i, &m)| m != 0 && m != all && !masks[..i].contains(&m))
}

/// Odometer over valuations, first variable slowest.
fn advance(choice: &mut [usize], base: usize) -> bool {
    for digit in choice.iter_mut().rev() {
        *digit += 1;
        if *digit < base {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Strict orders on `0..n` where `i < j` implies `i` precedes `j`, in
/// lexicographic order of the adjacency matrix. Returned as up-set masks.
fn natural_posets(n: usize) -> Vec<Vec<u64>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let mut strict = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> (pairs.len() - 1 - k) & 1 == 1 {
                strict[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n)
                .filter(|&j| strict[i] >> j & 1 == 1)
                .all(|j| strict[j] & !strict[i] == 0)
        });
        if transitive {
            out.push((0..n).map(|i| strict[i] | 1 << i).collect());
        }
    }
    out
}

fn upsets(up: &[u64]) -> Vec<u64> {
    let n = up.len();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|w| s >> w & 1 == 0 || up[w] & !s == 0))
        .collect()
}

fn build_model(n: usize, up: &[u64], vars: &[String], masks: &[u64]) -> KripkeModel {
    KripkeModel {
        worlds: (0..n).map(|i| format!("w{i}")).collect(),
        up: up.to_vec(),
        valuation: vars.iter().cloned().zip(masks.iter().copied()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn fork(p: &[&str], q: &[&str]) -> Arc<KripkeModel> {
        let mut valuation = BTreeMap::new();
        valuation.insert("p".to_string(), p.iter().map(|s| s.to_string()).collect());
        if !q.is_empty() {
            valuation.insert("q".to_string(), q.iter().map(|s| s.to_string()).collect());
        }
        let spec = ModelSpec {
            worlds: vec!["r".into(), "a".into(), "b".into()],
            leq: vec![("r".into(), "a".into()), ("r".into(), "b".into())],
            valuation,
        };
        Arc::new(KripkeModel::from_spec_closed(&spec).unwrap())
    }

    fn names(f: &str, m: &Arc<KripkeModel>) -> Vec<String> {
        kripke_truth_set(&parse(f).unwrap(), m)
            .unwrap()
            .world_names()
    }

    #[test]
    fn fork_root_truth_sets() {
        let m = fork(&["a"], &["b"]);
        assert_eq!(names("~p", &m), ["b"]);
        assert_eq!(names("p -> p", &m), ["r", "a", "b"]);
        assert_eq!(names("p -> q", &m), ["b"]);
    }

    #[test]
    fn heyting_edge_cases() {
        let m = fork(&["a"], &["b"]);
        let sem = KripkeSemantics::new(m.clone());
        let empty = sem.world_set(0).unwrap();
        let all = sem.world_set(m.all()).unwrap();
        assert_eq!(heyting_apply(Connective::Neg, &[&empty]).unwrap(), all);
        for s in [0b000, 0b010, 0b100, 0b110, 0b111] {
            let s = sem.world_set(s).unwrap();
            assert_eq!(heyting_apply(Connective::Imp, &[&s, &s]).unwrap(), all);
        }
        let a = sem.world_set(0b010).unwrap();
        let b = sem.world_set(0b100).unwrap();
        assert_eq!(heyting_apply(Connective::Imp, &[&a, &b]).unwrap(), b);
    }

    #[test]
    fn validation_reports() {
        let good = fork(&["a"], &[]).to_spec().closed();
        assert_eq!(validate_model(&good), Ok(()));

        let mut no_refl = good.clone();
        no_refl.leq.retain(|(x, y)| !(x == "r" && y == "r"));
        assert_eq!(
            validate_model(&no_refl),
            Err(ModelViolation::Reflexivity { world: "r".into() })
        );

        let mut bad_val = good.clone();
        bad_val.valuation.insert("p".into(), vec!["r".into()]);
        assert_eq!(
            validate_model(&bad_val),
            Err(ModelViolation::Persistence {
                variable: "p".into(),
                from: "r".into(),
                to: "a".into()
            })
        );

        let mut cyclic = good.clone();
        cyclic.leq.push(("a".into(), "r".into()));
        assert!(matches!(
            validate_model(&cyclic),
            Err(ModelViolation::Antisymmetry { .. })
        ));

        let mut gap = ModelSpec {
            worlds: vec!["x".into(), "y".into(), "z".into()],
            leq: vec![],
            valuation: BTreeMap::new(),
        };
        for w in ["x", "y", "z"] {
            gap.leq.push((w.into(), w.into()));
        }
        gap.leq.push(("x".into(), "y".into()));
        gap.leq.push(("y".into(), "z".into()));
        assert!(matches!(
            validate_model(&gap),
            Err(ModelViolation::Transitivity { .. })
        ));
    }

    #[test]
    fn json_load_closes_relation() {
        let m = KripkeModel::from_json(
            r#"{"worlds":["r","a","b"],"leq":[["r","a"],["r","b"]],"valuation":{"p":["a"]}}"#,
        )
        .unwrap();
        assert!(m.leq(0, 0) && m.leq(0, 1) && m.leq(0, 2) && !m.leq(1, 2));
        assert_eq!(m.hasse_text(), "r < a\nr < b\n");
        let again = KripkeModel::from_json(&m.to_json()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn natural_poset_counts() {
        // labelled posets with a fixed linear extension: 1, 2, 7, 40
        let counts: Vec<usize> = (1..=4).map(|n| natural_posets(n).len()).collect();
        assert_eq!(counts, [1, 2, 7, 40]);
    }

    #[test]
    fn mismatched_models() {
        let m1 = fork(&["a"], &[]);
        let m2 = fork(&["b"], &[]);
        let a = WorldSet::new(m1, 0b010).unwrap();
        let b = WorldSet::new(m2, 0b010).unwrap();
        assert!(matches!(
            heyting_apply(Connective::And, &[&a, &b]),
            Err(Error::ContextMismatch(_))
        ));
    }
}
