//! Linear temporal logic over the moments `0, 1, 2, ...` with a fixed
//! valuation.
//!
//! Truth sets are ultimately periodic subsets of ℕ ([`PeriSet`]): a finite
//! prefix followed by a loop repeated forever. All operators, including
//! `U` and `W`, are computed exactly on this representation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formula::{enumerate, Connective, Constant, Formula, Signature};
use crate::semantics::{Semantics, SemanticsKind};

/// Ultimately periodic subset of ℕ in canonical form: the loop has minimal
/// period and the prefix cannot be shortened.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriSet {
    prefix: Vec<bool>,
    lp: Vec<bool>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl PeriSet {
    /// Canonicalizes; `lp` must be nonempty.
    pub fn new(prefix: Vec<bool>, lp: Vec<bool>) -> Result<PeriSet, Error> {
        if lp.is_empty() {
            return Err(Error::Malformed("loop must have length at least 1".into()));
        }
        Ok(PeriSet::canonical(prefix, lp))
    }

    fn canonical(mut prefix: Vec<bool>, mut lp: Vec<bool>) -> PeriSet {
        let p = lp.len();
        if let Some(d) =
            (1..=p).find(|&d| p.is_multiple_of(d) && (0..p).all(|i| lp[i] == lp[(i + d) % p]))
        {
            lp.truncate(d);
        }
        while let Some(&last) = prefix.last() {
            if last != *lp.last().unwrap() {
                break;
            }
            prefix.pop();
            lp.rotate_right(1);
        }
        PeriSet { prefix, lp }
    }

    /// Parses `0`/`1` strings, index 0 = moment 0.
    pub fn from_bits(prefix: &str, lp: &str) -> Result<PeriSet, Error> {
        let bits = |s: &str| {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::InvalidRepr(s.to_string())),
                })
                .collect::<Result<Vec<_>, _>>()
        };
        PeriSet::new(bits(prefix)?, bits(lp)?)
    }

    pub fn empty() -> PeriSet {
        PeriSet {
            prefix: vec![],
            lp: vec![false],
        }
    }

    pub fn naturals() -> PeriSet {
        PeriSet {
            prefix: vec![],
            lp: vec![true],
        }
    }

    /// Finite set of the given moments.
    pub fn finite(moments: impl IntoIterator<Item = usize>) -> PeriSet {
        let mut prefix = Vec::new();
        for m in moments {
            if prefix.len() <= m {
                prefix.resize(m + 1, false);
            }
            prefix[m] = true;
        }
        PeriSet::canonical(prefix, vec![false])
    }

    /// `{n | n ≡ residue (mod modulus)}`.
    pub fn residues(modulus: usize, residue: usize) -> PeriSet {
        assert!(modulus > 0);
        let lp = (0..modulus).map(|i| i == residue % modulus).collect();
        PeriSet::canonical(vec![], lp)
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn loop_part(&self) -> &[bool] {
        &self.lp
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn period(&self) -> usize {
        self.lp.len()
    }

    pub fn contains(&self, n: usize) -> bool {
        match self.prefix.get(n) {
            Some(&b) => b,
            None => self.lp[(n - self.prefix.len()) % self.lp.len()],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lp.iter().all(|&b| !b)
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.iter().all(|&b| !b)
    }

    /// Largest member of a finite nonempty set.
    pub fn max(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        self.prefix.iter().rposition(|&b| b)
    }

    /// Membership over `0 .. prefix_len + period`, enough to determine the set
    /// once aligned to that shape.
    fn window(&self, len: usize, period: usize) -> Vec<bool> {
        (0..len + period).map(|n| self.contains(n)).collect()
    }

    fn bits(v: &[bool]) -> String {
        v.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// `prefix;loop` bit-string notation.
    pub fn to_notation(&self) -> String {
        format!(
            "{};{}",
            PeriSet::bits(&self.prefix),
            PeriSet::bits(&self.lp)
        )
    }

    pub fn from_notation(s: &str) -> Result<PeriSet, Error> {
        let (prefix, lp) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidRepr(s.to_string()))?;
        PeriSet::from_bits(prefix, lp)
    }
}

impl fmt::Debug for PeriSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriSet({})", self.to_notation())
    }
}

impl fmt::Display for PeriSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_notation())
    }
}

fn shape(args: &[&PeriSet]) -> (usize, usize) {
    let len = args.iter().map(|s| s.prefix.len()).max().unwrap_or(0);
    let period = args.iter().map(|s| s.lp.len()).fold(1, lcm);
    (len, period)
}

fn from_window(len: usize, mut window: Vec<bool>) -> PeriSet {
    let lp = window.split_off(len);
    PeriSet::canonical(window, lp)
}

/// Pointwise Boolean connectives over ℕ.
pub fn peri_bool(c: Connective, args: &[&PeriSet]) -> Result<PeriSet, Error> {
    let op: fn(bool, bool) -> bool = match c {
        Connective::Neg => |a, _| !a,
        Connective::And => |a, b| a && b,
        Connective::Or => |a, b| a || b,
        Connective::Imp => |a, b| !a || b,
        other => {
            return Err(Error::UnsupportedConnective {
                connective: other,
                semantics: "temporal",
            })
        }
    };
    check_arity(c, args.len())?;
    let (len, period) = shape(args);
    let a = args[0].window(len, period);
    let b = args.get(1).map(|s| s.window(len, period));
    let out = (0..len + period)
        .map(|i| op(a[i], b.as_ref().is_some_and(|b| b[i])))
        .collect();
    Ok(from_window(len, out))
}

fn check_arity(c: Connective, found: usize) -> Result<(), Error> {
    if found != c.arity() {
        return Err(Error::Arity {
            connective: c,
            expected: c.arity(),
            found,
        });
    }
    Ok(())
}

/// Sometime in the future, the present included.
pub fn peri_f(s: &PeriSet) -> PeriSet {
    if !s.is_finite() {
        PeriSet::naturals()
    } else {
        match s.max() {
            Some(m) => PeriSet::canonical(vec![true; m + 1], vec![false]),
            None => PeriSet::empty(),
        }
    }
}

/// Next moment: `n` is in the result iff `n + 1` is in `s`.
pub fn peri_x(s: &PeriSet) -> PeriSet {
    if s.prefix.is_empty() {
        let mut lp = s.lp.clone();
        lp.rotate_left(1);
        PeriSet::canonical(vec![], lp)
    } else {
        PeriSet::canonical(s.prefix[1..].to_vec(), s.lp.clone())
    }
}

/// Solves `r(n) = b(n) || (a(n) && r(n+1))` on the lasso. The least
/// solution is until, the greatest is weak until.
fn until_lasso(a: &PeriSet, b: &PeriSet, greatest: bool) -> PeriSet {
    let (len, period) = shape(&[a, b]);
    let a = a.window(len, period);
    let b = b.window(len, period);
    let mut lp = vec![greatest; period];
    // Each backward pass carries information one full loop further, and the
    // value at the loop head is fixed after the first pass, so two passes
    // reach the fixpoint.
    for _ in 0..2 {
        for i in (0..period).rev() {
            let next = lp[(i + 1) % period];
            lp[i] = b[len + i] || (a[len + i] && next);
        }
    }
    let mut prefix = vec![false; len];
    let mut next = lp.first().copied().unwrap_or(false);
    for n in (0..len).rev() {
        prefix[n] = b[n] || (a[n] && next);
        next = prefix[n];
    }
    PeriSet::canonical(prefix, lp)
}

pub fn peri_u(a: &PeriSet, b: &PeriSet) -> PeriSet {
    until_lasso(a, b, false)
}

pub fn peri_w(a: &PeriSet, b: &PeriSet) -> PeriSet {
    until_lasso(a, b, true)
}

/// Valuation mapping variables to ultimately periodic sets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TemporalValuation {
    sets: BTreeMap<String, PeriSet>,
}

#[derive(Serialize, Deserialize)]
struct BitsEntry {
    #[serde(default)]
    prefix: String,
    #[serde(rename = "loop")]
    lp: String,
}

impl TemporalValuation {
    pub fn new() -> TemporalValuation {
        TemporalValuation::default()
    }

    pub fn with(mut self, var: impl Into<String>, set: PeriSet) -> TemporalValuation {
        self.sets.insert(var.into(), set);
        self
    }

    pub fn get(&self, var: &str) -> Option<&PeriSet> {
        self.sets.get(var)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }

    /// Reads `{"p":{"prefix":"","loop":"01"}, ...}`.
    pub fn from_json(text: &str) -> Result<TemporalValuation, Error> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        TemporalValuation::from_value(&value)
    }

    pub fn from_value(value: &serde_json::Value) -> Result<TemporalValuation, Error> {
        let raw: BTreeMap<String, BitsEntry> = serde_json::from_value(value.clone())?;
        let mut sets = BTreeMap::new();
        for (var, entry) in raw {
            if !sig_ok(&var) {
                return Err(Error::InvalidVariable(var));
            }
            sets.insert(var, PeriSet::from_bits(&entry.prefix, &entry.lp)?);
        }
        Ok(TemporalValuation { sets })
    }

    pub fn to_value(&self) -> serde_json::Value {
        let raw: BTreeMap<&String, BitsEntry> = self
            .sets
            .iter()
            .map(|(k, s)| {
                (
                    k,
                    BitsEntry {
                        prefix: PeriSet::bits(&s.prefix),
                        lp: PeriSet::bits(&s.lp),
                    },
                )
            })
            .collect();
        serde_json::to_value(raw).expect("valuation serializes")
    }
}

fn sig_ok(var: &str) -> bool {
    Signature::new([var], []).is_ok()
}

#[derive(Clone, Debug)]
pub struct TemporalSemantics {
    valuation: Arc<TemporalValuation>,
}

impl TemporalSemantics {
    pub fn new(valuation: TemporalValuation) -> TemporalSemantics {
        TemporalSemantics {
            valuation: Arc::new(valuation),
        }
    }

    pub fn valuation(&self) -> &TemporalValuation {
        &self.valuation
    }
}

pub fn temporal_truth_set(f: &Formula, v: &TemporalValuation) -> Result<PeriSet, Error> {
    TemporalSemantics::new(v.clone()).truth_set(f)
}

impl Semantics for TemporalSemantics {
    type TruthSet = PeriSet;

    fn kind(&self) -> SemanticsKind {
        SemanticsKind::Temporal
    }

    fn supports(&self, c: Connective) -> bool {
        !matches!(c, Connective::ImpK | Connective::ImpL)
    }

    fn truth_set(&self, f: &Formula) -> Result<PeriSet, Error> {
        match f {
            Formula::Var(v) => self
                .valuation
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnknownVariable(v.clone())),
            Formula::Const(Constant::True) => Ok(PeriSet::naturals()),
            Formula::Const(Constant::False) => Ok(PeriSet::empty()),
            Formula::Const(Constant::Half) => Err(Error::UnsupportedConstant {
                constant: "unk",
                semantics: "temporal",
            }),
            Formula::App(c, args) => {
                self.check_connective(*c)?;
                let sets = args
                    .iter()
                    .map(|a| self.truth_set(a))
                    .collect::<Result<Vec<_>, _>>()?;
                self.apply(*c, &sets.iter().collect::<Vec<_>>())
            }
        }
    }

    fn apply(&self, c: Connective, args: &[&PeriSet]) -> Result<PeriSet, Error> {
        check_arity(c, args.len())?;
        match c {
            Connective::F => Ok(peri_f(args[0])),
            Connective::X => Ok(peri_x(args[0])),
            Connective::U => Ok(peri_u(args[0], args[1])),
            Connective::W => Ok(peri_w(args[0], args[1])),
            _ => peri_bool(c, args),
        }
    }

    fn repr(&self, ts: &PeriSet) -> String {
        ts.to_notation()
    }

    fn parse_repr(&self, repr: &str) -> Result<PeriSet, Error> {
        let s = PeriSet::from_notation(repr)?;
        if s.to_notation() != repr {
            return Err(Error::InvalidRepr(repr.to_string()));
        }
        Ok(s)
    }

    fn context(&self) -> serde_json::Value {
        self.valuation.to_value()
    }
}

/// Window of the graded families: `alpha_t` is the powerset of
/// `{t, ..., T}`, `beta_t` the complements of its members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedFamilyParams {
    t: usize,
    horizon: usize,
}

impl GradedFamilyParams {
    pub fn new(t: usize, horizon: usize) -> Result<GradedFamilyParams, Error> {
        if t == 0 || t > horizon {
            return Err(Error::Malformed(format!(
                "graded family needs 1 <= t <= T, got t={t}, T={horizon}"
            )));
        }
        Ok(GradedFamilyParams { t, horizon })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedMembership {
    Alpha,
    Beta,
    Neither,
}

fn within_window(s: &PeriSet, g: GradedFamilyParams) -> bool {
    s.is_finite() && (0..s.prefix.len()).all(|n| !s.prefix[n] || (g.t..=g.horizon).contains(&n))
}

pub fn in_graded_family(s: &PeriSet, g: GradedFamilyParams) -> GradedMembership {
    if within_window(s, g) {
        GradedMembership::Alpha
    } else if within_window(&peri_bool(Connective::Neg, &[s]).expect("negation"), g) {
        GradedMembership::Beta
    } else {
        GradedMembership::Neither
    }
}

/// Outcome of [`check_graded_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    pub k: usize,
    pub horizon: usize,
    pub max_nodes: usize,
    pub checked: usize,
    pub violations: Vec<Formula>,
}

impl GradedReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn single_point_valuation(horizon: usize) -> TemporalValuation {
    TemporalValuation::new().with("p", PeriSet::finite([horizon]))
}

fn x_signature() -> Signature {
    Signature::new(["p"], [Connective::Neg, Connective::Or, Connective::X]).expect("signature")
}

/// With `T = k + 1` and `p` true only at `T`, checks that every formula over
/// `p, ~, |, X` with at most `k` occurrences of `X` (and at most `max_nodes`
/// nodes) has a truth set in `alpha_{T-c}` or `beta_{T-c}`, `c` being its
/// number of `X`s.
pub fn check_graded_bound(k: usize, max_nodes: usize) -> GradedReport {
    let horizon = k + 1;
    let sem = TemporalSemantics::new(single_point_valuation(horizon));
    let mut report = GradedReport {
        k,
        horizon,
        max_nodes,
        checked: 0,
        violations: Vec::new(),
    };
    for f in enumerate(&x_signature(), max_nodes) {
        let c = f.count_connective(Connective::X);
        if c > k {
            continue;
        }
        let set = sem.truth_set(&f).expect("formula over p, ~, |, X");
        let g = GradedFamilyParams::new(horizon - c, horizon).expect("1 <= T - c <= T");
        report.checked += 1;
        if in_graded_family(&set, g) == GradedMembership::Neither {
            report.violations.push(f);
        }
    }
    report
}

/// Least moment at which `candidate` and `F p` differ, with `T` set to one
/// more than the number of `X`s in the candidate and `p` true only at `T`.
pub fn refute_f_definition(candidate: &Formula) -> Result<usize, Error> {
    for c in candidate.connectives() {
        if !matches!(c, Connective::Neg | Connective::Or | Connective::X) {
            return Err(Error::UnsupportedConnective {
                connective: c,
                semantics: "temporal (p, ~, |, X)",
            });
        }
    }
    let horizon = candidate.count_connective(Connective::X) + 1;
    let v = single_point_valuation(horizon);
    let cand = temporal_truth_set(candidate, &v)?;
    let fp = peri_f(v.get("p").expect("p"));
    let (len, period) = shape(&[&cand, &fp]);
    let n = (0..len + period)
        .find(|&n| cand.contains(n) != fp.contains(n))
        .expect("no X-only formula has the truth set of F p");
    Ok(n)
}
