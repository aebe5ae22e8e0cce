//! Saturation of truth-set families under connectives.
//!
//! [`saturate`] computes the least family containing the seeds' truth sets
//! and closed under the chosen connectives, together with the full
//! application tables. If a target truth set is missing from the saturated
//! family, no formula built from the seeds with those connectives can have
//! it, so the target is undefinable on that structure. A
//! [`ClosureCertificate`] records the family, tables and verdict, and
//! [`verify_certificate`] re-checks every cell from scratch.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::formula::{enumerate, parse, Connective, Formula, Signature};
use crate::semantics::{Semantics, SemanticsKind};

pub const DEFAULT_CAP: usize = 4096;

/// Spreadsheet-style label: `A`..`Z`, `AA`, `AB`, ...
pub fn default_label(mut index: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (index % 26) as u8);
        if index < 26 {
            break;
        }
        index = index / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Truth sets in discovery order with an index for lookups.
#[derive(Clone, Debug)]
pub struct Family<T> {
    members: Vec<T>,
    index: HashMap<T, usize>,
    names: Vec<String>,
}

impl<T: Clone + Eq + std::hash::Hash> Family<T> {
    fn new() -> Self {
        Family {
            members: Vec::new(),
            index: HashMap::new(),
            names: Vec::new(),
        }
    }

    /// Inserts if absent; returns the ordinal either way.
    fn insert(&mut self, ts: T) -> (usize, bool) {
        if let Some(&i) = self.index.get(&ts) {
            return (i, false);
        }
        let i = self.members.len();
        self.index.insert(ts.clone(), i);
        self.members.push(ts);
        self.names.push(default_label(i));
        (i, true)
    }

    pub fn members(&self) -> &[T] {
        &self.members
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, ts: &T) -> Option<usize> {
        self.index.get(ts).copied()
    }

    pub fn contains(&self, ts: &T) -> bool {
        self.index.contains_key(ts)
    }
}

/// Application table of one connective, as family ordinals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Table {
    Unary(Vec<usize>),
    Binary(Vec<Vec<usize>>),
}

impl Table {
    pub fn get(&self, row: usize, col: usize) -> usize {
        match self {
            Table::Unary(v) => v[row],
            Table::Binary(m) => m[row][col],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Saturation<T> {
    pub family: Family<T>,
    pub tables: BTreeMap<Connective, Table>,
    /// Number of members processed by the worklist.
    pub iterations: usize,
}

fn sorted_connectives<S: Semantics>(
    sem: &S,
    conns: &[Connective],
) -> Result<Vec<Connective>, Error> {
    let mut conns = conns.to_vec();
    conns.sort();
    conns.dedup();
    for &c in &conns {
        sem.check_connective(c)?;
    }
    Ok(conns)
}

/// Least family containing the seeds' truth sets and closed under `conns`.
///
/// Members are processed in ordinal order. For member `i`, unary connectives
/// are applied first, then each binary connective to the pairs `(i, j)` and
/// `(j, i)` for every `j <= i`, connectives in tag order. Fails with
/// [`Error::CapExceeded`] rather than returning a partial family.
pub fn saturate<S: Semantics>(
    sem: &S,
    seeds: &[Formula],
    conns: &[Connective],
    cap: usize,
) -> Result<Saturation<S::TruthSet>, Error> {
    let conns = sorted_connectives(sem, conns)?;
    let mut family = Family::new();
    for seed in seeds {
        family.insert(sem.truth_set(seed)?);
        if family.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
    }
    let mut i = 0;
    while i < family.len() {
        for &c in conns.iter().filter(|c| c.arity() == 1) {
            let r = sem.apply(c, &[&family.members[i]])?;
            family.insert(r);
        }
        for &c in conns.iter().filter(|c| c.arity() == 2) {
            for j in 0..=i {
                let r = sem.apply(c, &[&family.members[i], &family.members[j]])?;
                family.insert(r);
                if j != i {
                    let r = sem.apply(c, &[&family.members[j], &family.members[i]])?;
                    family.insert(r);
                }
            }
        }
        if family.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        i += 1;
    }
    let tables = build_tables(sem, &family, &conns)?;
    Ok(Saturation {
        family,
        tables,
        iterations: i,
    })
}

fn build_tables<S: Semantics>(
    sem: &S,
    family: &Family<S::TruthSet>,
    conns: &[Connective],
) -> Result<BTreeMap<Connective, Table>, Error> {
    let n = family.len();
    let lookup = |ts: S::TruthSet| {
        family
            .position(&ts)
            .expect("saturated family is closed under its connectives")
    };
    let mut tables = BTreeMap::new();
    for &c in conns {
        let table = if c.arity() == 1 {
            Table::Unary(
                (0..n)
                    .map(|i| sem.apply(c, &[&family.members[i]]).map(lookup))
                    .collect::<Result<_, _>>()?,
            )
        } else {
            Table::Binary(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                sem.apply(c, &[&family.members[i], &family.members[j]])
                                    .map(lookup)
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<_, _>>()?,
            )
        };
        tables.insert(c, table);
    }
    Ok(tables)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The target's truth set is outside the family: undefinable.
    Excluded,
    /// The target's truth set is the named member: the method is
    /// inconclusive on this structure.
    Member(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberEntry {
    pub name: String,
    pub repr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetEntry {
    pub formula: String,
    pub verdict: Verdict,
}

/// Serializable record of a saturation, re-checkable by
/// [`verify_certificate`]. Tables are indexed by member names; unary tables
/// have one column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub semantics: SemanticsKind,
    pub context: serde_json::Value,
    pub seeds: Vec<String>,
    pub connectives: Vec<Connective>,
    pub members: Vec<MemberEntry>,
    pub tables: BTreeMap<String, Vec<Vec<String>>>,
    pub target: TargetEntry,
    pub iterations: usize,
}

impl ClosureCertificate {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn table(&self, c: Connective) -> Option<&Vec<Vec<String>>> {
        self.tables.get(c.name())
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|m| m.name.as_str()).collect()
    }

    /// Cell of a binary table by row and column names.
    pub fn cell(&self, c: Connective, row: &str, col: &str) -> Option<&str> {
        let r = self.members.iter().position(|m| m.name == row)?;
        let k = self.members.iter().position(|m| m.name == col)?;
        self.table(c)?.get(r)?.get(k).map(String::as_str)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<ClosureCertificate, Error> {
        Ok(serde_json::from_str(text)?)
    }

    /// Same certificate with members (and table rows and columns) ordered by
    /// label: shorter labels first, then alphabetically.
    pub fn sorted_by_name(&self) -> ClosureCertificate {
        let mut order: Vec<usize> = (0..self.members.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.members[a].name, &self.members[b].name);
            (x.len(), x).cmp(&(y.len(), y))
        });
        let mut out = self.clone();
        out.members = order.iter().map(|&i| self.members[i].clone()).collect();
        for (name, rows) in &self.tables {
            let unary = Connective::from_name(name).is_some_and(|c| c.arity() == 1);
            let reordered = order
                .iter()
                .map(|&i| {
                    if unary {
                        rows[i].clone()
                    } else {
                        order.iter().map(|&j| rows[i][j].clone()).collect()
                    }
                })
                .collect();
            out.tables.insert(name.clone(), reordered);
        }
        out
    }
}

/// Saturates and records whether the target's truth set was reached.
pub fn prove_undefinable<S: Semantics>(
    sem: &S,
    target: &Formula,
    seeds: &[Formula],
    conns: &[Connective],
    cap: usize,
) -> Result<ClosureCertificate, Error> {
    let target_set = sem.truth_set(target)?;
    let sat = saturate(sem, seeds, conns, cap)?;
    Ok(certificate(sem, seeds, &sat, target, &target_set))
}

/// Certificate for a finished saturation.
pub fn certificate<S: Semantics>(
    sem: &S,
    seeds: &[Formula],
    sat: &Saturation<S::TruthSet>,
    target: &Formula,
    target_set: &S::TruthSet,
) -> ClosureCertificate {
    let fam = &sat.family;
    let members = fam
        .members
        .iter()
        .zip(&fam.names)
        .map(|(ts, name)| MemberEntry {
            name: name.clone(),
            repr: sem.repr(ts),
        })
        .collect();
    let tables = sat
        .tables
        .iter()
        .map(|(c, table)| {
            let rows = (0..fam.len())
                .map(|i| match table {
                    Table::Unary(v) => vec![fam.names[v[i]].clone()],
                    Table::Binary(m) => m[i].iter().map(|&k| fam.names[k].clone()).collect(),
                })
                .collect();
            (c.name().to_string(), rows)
        })
        .collect();
    let verdict = match fam.position(target_set) {
        Some(k) => Verdict::Member(fam.names[k].clone()),
        None => Verdict::Excluded,
    };
    ClosureCertificate {
        semantics: sem.kind(),
        context: sem.context(),
        seeds: seeds.iter().map(Formula::to_string).collect(),
        connectives: sat.tables.keys().copied().collect(),
        members,
        tables,
        target: TargetEntry {
            formula: target.to_string(),
            verdict,
        },
        iterations: sat.iterations,
    }
}

/// Why a certificate failed the audit.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AuditFailure {
    #[error("certificate is for {found} semantics, checker is {expected}")]
    WrongSemantics {
        expected: SemanticsKind,
        found: SemanticsKind,
    },
    #[error("certificate context differs from the checker's structure")]
    WrongContext,
    #[error("member {name}: {reason}")]
    BadMember { name: String, reason: String },
    #[error("seed {seed} is not in the family")]
    SeedMissing { seed: String },
    #[error("table for {connective}: {reason}")]
    BadTable { connective: String, reason: String },
    #[error("table {connective} row {row} column {col}: recorded {recorded}, computed {computed}")]
    Cell {
        connective: String,
        row: String,
        col: String,
        recorded: String,
        computed: String,
    },
    #[error("target verdict recorded {recorded:?}, computed {computed:?}")]
    Verdict {
        recorded: Verdict,
        computed: Verdict,
    },
}

/// Recomputes every table cell and the target verdict with `sem`.
pub fn verify_certificate<S: Semantics>(
    cert: &ClosureCertificate,
    sem: &S,
) -> Result<(), AuditFailure> {
    if cert.semantics != sem.kind() {
        return Err(AuditFailure::WrongSemantics {
            expected: sem.kind(),
            found: cert.semantics,
        });
    }
    if cert.context != sem.context() {
        return Err(AuditFailure::WrongContext);
    }
    let mut sets = Vec::with_capacity(cert.members.len());
    let mut by_set: HashMap<S::TruthSet, usize> = HashMap::new();
    let mut by_name: HashMap<&str, usize> = HashMap::new();
    for (i, m) in cert.members.iter().enumerate() {
        let bad = |reason: String| AuditFailure::BadMember {
            name: m.name.clone(),
            reason,
        };
        let ts = sem.parse_repr(&m.repr).map_err(|e| bad(e.to_string()))?;
        if by_set.insert(ts.clone(), i).is_some() {
            return Err(bad("duplicate truth set".into()));
        }
        if by_name.insert(&m.name, i).is_some() {
            return Err(bad("duplicate name".into()));
        }
        sets.push(ts);
    }
    for seed in &cert.seeds {
        let missing = || AuditFailure::SeedMissing { seed: seed.clone() };
        let f = parse(seed).map_err(|_| missing())?;
        let ts = sem.truth_set(&f).map_err(|_| missing())?;
        if !by_set.contains_key(&ts) {
            return Err(missing());
        }
    }
    let n = sets.len();
    for c in &cert.connectives {
        let bad = |reason: &str| AuditFailure::BadTable {
            connective: c.name().into(),
            reason: reason.into(),
        };
        let rows = cert.table(*c).ok_or_else(|| bad("missing"))?;
        let cols = if c.arity() == 1 { 1 } else { n };
        if rows.len() != n || rows.iter().any(|r| r.len() != cols) {
            return Err(bad("wrong dimensions"));
        }
        for i in 0..n {
            for j in 0..cols {
                let args: Vec<&S::TruthSet> = if c.arity() == 1 {
                    vec![&sets[i]]
                } else {
                    vec![&sets[i], &sets[j]]
                };
                let computed = sem.apply(*c, &args).map_err(|e| bad(&e.to_string()))?;
                let computed_name = by_set.get(&computed).map_or_else(
                    || format!("<outside: {}>", sem.repr(&computed)),
                    |&k| cert.members[k].name.clone(),
                );
                if rows[i][j] != computed_name {
                    return Err(AuditFailure::Cell {
                        connective: c.name().into(),
                        row: cert.members[i].name.clone(),
                        col: if c.arity() == 1 {
                            String::new()
                        } else {
                            cert.members[j].name.clone()
                        },
                        recorded: rows[i][j].clone(),
                        computed: computed_name,
                    });
                }
            }
        }
    }
    let computed = parse(&cert.target.formula)
        .ok()
        .and_then(|f| sem.truth_set(&f).ok())
        .map(|ts| match by_set.get(&ts) {
            Some(&k) => Verdict::Member(cert.members[k].name.clone()),
            None => Verdict::Excluded,
        });
    match computed {
        Some(v) if v == cert.target.verdict => Ok(()),
        other => Err(AuditFailure::Verdict {
            recorded: cert.target.verdict.clone(),
            computed: other.unwrap_or(Verdict::Excluded),
        }),
    }
}

/// First formula in enumeration order whose truth set equals the target's.
pub fn search_definition<S: Semantics>(
    sem: &S,
    target: &Formula,
    sig: &Signature,
    max_nodes: usize,
) -> Result<Option<Formula>, Error> {
    for &c in sig.connectives() {
        sem.check_connective(c)?;
    }
    let wanted = sem.truth_set(target)?;
    for f in enumerate(sig, max_nodes) {
        if sem.truth_set(&f)? == wanted {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Reference labelling of one binary table, e.g. a published closure table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTable {
    pub connective: Connective,
    pub labels: Vec<String>,
    /// `cells[r][c]` is the label of `row r <op> column c`.
    pub cells: Vec<Vec<String>>,
}

impl ReferenceTable {
    /// Parses rows of the form `A&B&C...` (one row per label, each cell a
    /// label), with the header `labels` supplied separately.
    pub fn from_rows(connective: Connective, labels: &[&str], rows: &[&str]) -> ReferenceTable {
        ReferenceTable {
            connective,
            labels: labels.iter().map(|s| s.to_string()).collect(),
            cells: rows
                .iter()
                .map(|r| r.split('&').map(|c| c.trim().to_string()).collect())
                .collect(),
        }
    }
}

/// Relabels a certificate so each anchor formula's member carries its label.
///
/// With a reference table, the remaining members are labelled by
/// propagation: whenever a row and a column are both labelled, the member in
/// that cell takes the reference's label. Conflicts are reported. Without a
/// reference, unanchored members keep default labels, skipping any label an
/// anchor took.
pub fn anchor_naming<S: Semantics>(
    cert: &ClosureCertificate,
    sem: &S,
    anchors: &[(String, Formula)],
    reference: Option<&ReferenceTable>,
) -> Result<ClosureCertificate, Error> {
    let n = cert.members.len();
    let reprs: HashMap<&str, usize> = cert
        .members
        .iter()
        .enumerate()
        .map(|(i, m)| (m.repr.as_str(), i))
        .collect();
    let ordinal_of_name: HashMap<&str, usize> = cert
        .members
        .iter()
        .enumerate()
        .map(|(i, m)| (m.name.as_str(), i))
        .collect();
    let mut label: Vec<Option<String>> = vec![None; n];
    let mut owner: HashMap<String, usize> = HashMap::new();
    let mut assign =
        |label: &mut Vec<Option<String>>, ord: usize, l: &str| -> Result<bool, Error> {
            match (&label[ord], owner.get(l)) {
                (Some(existing), _) if existing == l => Ok(false),
                (Some(existing), _) => Err(Error::InconsistentLabels(format!(
                    "member {} is labelled {existing} and {l}",
                    cert.members[ord].name
                ))),
                (None, Some(&other)) if other != ord => Err(Error::InconsistentLabels(format!(
                    "label {l} names both {} and {}",
                    cert.members[other].name, cert.members[ord].name
                ))),
                _ => {
                    label[ord] = Some(l.to_string());
                    owner.insert(l.to_string(), ord);
                    Ok(true)
                }
            }
        };
    for (l, f) in anchors {
        let ts = sem.truth_set(f)?;
        let ord =
            reprs
                .get(sem.repr(&ts).as_str())
                .copied()
                .ok_or_else(|| Error::AnchorMissing {
                    label: l.clone(),
                    formula: f.to_string(),
                })?;
        assign(&mut label, ord, l)?;
    }
    if let Some(reference) = reference {
        let rows = cert
            .table(reference.connective)
            .ok_or_else(|| Error::MissingTable(reference.connective.name().into()))?;
        let ref_index: HashMap<&str, usize> = reference
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..n {
                    let (Some(li), Some(lj)) = (label[i].clone(), label[j].clone()) else {
                        continue;
                    };
                    let (Some(&ri), Some(&rj)) =
                        (ref_index.get(li.as_str()), ref_index.get(lj.as_str()))
                    else {
                        continue;
                    };
                    let k = ordinal_of_name[rows[i][j].as_str()];
                    changed |= assign(&mut label, k, &reference.cells[ri][rj])?;
                }
            }
        }
    }
    let mut next = 0;
    let mut taken: std::collections::HashSet<String> = label.iter().flatten().cloned().collect();
    let names: Vec<String> = label
        .into_iter()
        .map(|l| {
            l.unwrap_or_else(|| loop {
                let candidate = default_label(next);
                next += 1;
                if taken.insert(candidate.clone()) {
                    break candidate;
                }
            })
        })
        .collect();
    let rename = |old: &str| names[ordinal_of_name[old]].clone();
    let mut out = cert.clone();
    for (m, name) in out.members.iter_mut().zip(&names) {
        m.name = name.clone();
    }
    for rows in out.tables.values_mut() {
        for row in rows.iter_mut() {
            for cell in row.iter_mut() {
                *cell = rename(cell);
            }
        }
    }
    if let Verdict::Member(name) = &out.target.verdict {
        out.target.verdict = Verdict::Member(rename(name));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::BooleanSemantics;
    use crate::three_valued::ThreeValuedSemantics;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn pq() -> Vec<Formula> {
        vec![f("p"), f("q")]
    }

    #[test]
    fn labels() {
        assert_eq!(default_label(0), "A");
        assert_eq!(default_label(25), "Z");
        assert_eq!(default_label(26), "AA");
        assert_eq!(default_label(27), "AB");
        assert_eq!(default_label(26 + 26 * 26), "AAA");
    }

    #[test]
    fn boolean_implication_family() {
        let sem = BooleanSemantics::new(["p", "q"]).unwrap();
        let sat = saturate(&sem, &pq(), &[Connective::Imp], DEFAULT_CAP).unwrap();
        assert_eq!(sat.family.len(), 6);
        for s in ["p", "q", "p | q", "p -> q", "q -> p", "p -> p"] {
            assert!(sat.family.contains(&sem.truth_set(&f(s)).unwrap()), "{s}");
        }
        let cert = prove_undefinable(&sem, &f("p & q"), &pq(), &[Connective::Imp], 100).unwrap();
        assert_eq!(cert.target.verdict, Verdict::Excluded);
        assert_eq!(verify_certificate(&cert, &sem), Ok(()));
    }

    #[test]
    fn inconclusive_verdict() {
        let sem = BooleanSemantics::new(["p", "q"]).unwrap();
        let cert = prove_undefinable(&sem, &f("p | q"), &pq(), &[Connective::Imp], 100).unwrap();
        assert!(matches!(cert.target.verdict, Verdict::Member(_)));
    }

    #[test]
    fn cap_is_reported() {
        let sem = ThreeValuedSemantics::new(["p", "q"]).unwrap();
        let err = saturate(&sem, &pq(), &[Connective::ImpK], 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 10 }));
    }

    #[test]
    fn unsupported_connective_rejected() {
        let sem = BooleanSemantics::new(["p", "q"]).unwrap();
        assert!(saturate(&sem, &pq(), &[Connective::X], 10).is_err());
    }

    #[test]
    fn mutated_cell_fails_audit() {
        let sem = BooleanSemantics::new(["p", "q"]).unwrap();
        let cert = prove_undefinable(&sem, &f("p & q"), &pq(), &[Connective::Imp], 100).unwrap();
        let mut bad = cert.clone();
        let cell = &mut bad.tables.get_mut("imp").unwrap()[1][2];
        *cell = if cell == "A" { "B".into() } else { "A".into() };
        assert!(matches!(
            verify_certificate(&bad, &sem),
            Err(AuditFailure::Cell { .. })
        ));
        let mut bad = cert.clone();
        bad.target.verdict = Verdict::Member("A".into());
        assert!(verify_certificate(&bad, &sem).is_err());
    }

    #[test]
    fn singleton_anchor() {
        let sem = BooleanSemantics::new(["p"]).unwrap();
        let cert = prove_undefinable(&sem, &f("p"), &[f("p")], &[Connective::Or], 10).unwrap();
        assert_eq!(cert.len(), 1);
        let named = anchor_naming(&cert, &sem, &[("P".into(), f("p"))], None).unwrap();
        assert_eq!(named.names(), ["P"]);
        assert_eq!(named.target.verdict, Verdict::Member("P".into()));
        assert!(anchor_naming(&cert, &sem, &[("Q".into(), f("~p"))], None).is_err());
    }

    #[test]
    fn definition_search() {
        let sem = BooleanSemantics::new(["p", "q"]).unwrap();
        let sig = Signature::new(["p", "q"], [Connective::Imp]).unwrap();
        let found = search_definition(&sem, &f("p | q"), &sig, 5).unwrap();
        assert_eq!(found, Some(f("(p -> q) -> q")));
        assert_eq!(search_definition(&sem, &f("p & q"), &sig, 5).unwrap(), None);
    }
}
