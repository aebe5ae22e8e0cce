use std::sync::Arc;

use super::{Constant, Formula, Signature};

/// Every formula over `sig` with at most `max_nodes` nodes, each once.
///
/// Order: by node count, then lexicographically on the prefix serialization
/// where variables (signature order) come before constants, and constants
/// before connectives (tag order).
pub fn enumerate(sig: &Signature, max_nodes: usize) -> Enumerator {
    Enumerator {
        sig: sig.clone(),
        max_nodes,
        levels: Vec::new(),
        cursor: 0,
    }
}

/// Lazily built stream of formulas, one size class at a time.
pub struct Enumerator {
    sig: Signature,
    max_nodes: usize,
    levels: Vec<Arc<Vec<Formula>>>,
    cursor: usize,
}

impl Enumerator {
    fn build_level(&self, size: usize) -> Vec<Formula> {
        let mut out = Vec::new();
        if size == 1 {
            out.extend(self.sig.variables().iter().cloned().map(Formula::Var));
            out.extend(self.sig.constants().iter().copied().map(Formula::Const));
        }
        for &c in self.sig.connectives() {
            match c.arity() {
                1 if size >= 2 => {
                    for arg in self.levels[size - 2].iter() {
                        out.push(Formula::unary(c, arg.clone()));
                    }
                }
                2 if size >= 3 => {
                    for left_size in 1..=size - 2 {
                        let right_size = size - 1 - left_size;
                        for l in self.levels[left_size - 1].iter() {
                            for r in self.levels[right_size - 1].iter() {
                                out.push(Formula::binary(c, l.clone(), r.clone()));
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        out.sort_by_cached_key(|f| prefix_key(&self.sig, f));
        out
    }
}

impl Iterator for Enumerator {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        loop {
            if let Some(level) = self.levels.last() {
                if let Some(f) = level.get(self.cursor) {
                    self.cursor += 1;
                    return Some(f.clone());
                }
            }
            let next_size = self.levels.len() + 1;
            if next_size > self.max_nodes {
                return None;
            }
            let level = self.build_level(next_size);
            self.levels.push(Arc::new(level));
            self.cursor = 0;
        }
    }
}

/// Prefix serialization used as the sort key within one size class.
pub(crate) fn prefix_key(sig: &Signature, f: &Formula) -> Vec<u16> {
    let nvars = sig.variables().len() as u16;
    let mut out = Vec::with_capacity(f.size());
    fn go(sig: &Signature, nvars: u16, f: &Formula, out: &mut Vec<u16>) {
        match f {
            Formula::Var(v) => {
                let i = sig.variable_index(v).map_or(u16::MAX, |i| i as u16);
                out.push(i);
            }
            Formula::Const(c) => {
                let i = Constant::ALL.iter().position(|k| k == c).unwrap_or(0) as u16;
                out.push(nvars + i);
            }
            Formula::App(c, args) => {
                out.push(nvars + Constant::ALL.len() as u16 + c.tag() as u16);
                for a in args {
                    go(sig, nvars, a, out);
                }
            }
        }
    }
    go(sig, nvars, f, &mut out);
    out
}

/// Number of formulas of exactly `size` nodes, by direct recurrence.
pub fn census(sig: &Signature, size: usize) -> u128 {
    let leaves = (sig.variables().len() + sig.constants().len()) as u128;
    let unary = sig.connectives().iter().filter(|c| c.arity() == 1).count() as u128;
    let binary = sig.connectives().iter().filter(|c| c.arity() == 2).count() as u128;
    let mut counts = vec![0u128; size + 1];
    for n in 1..=size {
        let mut total = if n == 1 { leaves } else { 0 };
        if n >= 2 {
            total += unary * counts[n - 1];
        }
        if n >= 3 {
            total += binary
                * (1..=n - 2)
                    .map(|i| counts[i] * counts[n - 1 - i])
                    .sum::<u128>();
        }
        counts[n] = total;
    }
    counts[size]
}
