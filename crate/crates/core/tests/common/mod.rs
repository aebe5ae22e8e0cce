//! Reference evaluators written straight from the satisfaction clauses.
//! They share no code with the library besides the formula type.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use truthset::formula::Constant;
use truthset::kripke::ModelSpec;
use truthset::{Connective, Formula, KripkeModel};

pub fn f(s: &str) -> Formula {
    truthset::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Classical value under `env`.
pub fn eval_bool(phi: &Formula, env: &BTreeMap<&str, bool>) -> bool {
    match phi {
        Formula::Var(v) => env[v.as_str()],
        Formula::Const(Constant::True) => true,
        Formula::Const(Constant::False) => false,
        Formula::Const(Constant::Half) => panic!("no half in classical logic"),
        Formula::App(c, a) => {
            let x = eval_bool(&a[0], env);
            match c {
                Connective::Neg => !x,
                Connective::And => x && eval_bool(&a[1], env),
                Connective::Or => x || eval_bool(&a[1], env),
                Connective::Imp => !x || eval_bool(&a[1], env),
                other => panic!("{other} is not classical"),
            }
        }
    }
}

/// Three-valued degree as a float in {0, 0.5, 1}.
pub fn eval_fuzzy(phi: &Formula, env: &BTreeMap<&str, f64>) -> f64 {
    match phi {
        Formula::Var(v) => env[v.as_str()],
        Formula::Const(Constant::True) => 1.0,
        Formula::Const(Constant::Half) => 0.5,
        Formula::Const(Constant::False) => 0.0,
        Formula::App(c, a) => {
            let x = eval_fuzzy(&a[0], env);
            if *c == Connective::Neg {
                return 1.0 - x;
            }
            let y = eval_fuzzy(&a[1], env);
            match c {
                Connective::And => x.min(y),
                Connective::Or => x.max(y),
                Connective::ImpK => (1.0 - x).max(y),
                Connective::ImpL => (1.0 - x + y).min(1.0),
                other => panic!("{other} is not three-valued"),
            }
        }
    }
}

/// Degrees of every assignment over `vars`, in base-3 counter order with
/// the first variable most significant.
pub fn fuzzy_table(phi: &Formula, vars: &[&str]) -> Vec<f64> {
    let n = vars.len();
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            let mut digits = vec![0usize; n];
            for d in digits.iter_mut().rev() {
                *d = code % 3;
                code /= 3;
            }
            let env = vars
                .iter()
                .zip(&digits)
                .map(|(v, &d)| (*v, d as f64 / 2.0))
                .collect();
            eval_fuzzy(phi, &env)
        })
        .collect()
}

pub fn bool_table(phi: &Formula, vars: &[&str]) -> Vec<bool> {
    let n = vars.len();
    (0..1usize << n)
        .map(|code| {
            let env = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (*v, code >> (n - 1 - i) & 1 == 1))
                .collect();
            eval_bool(phi, &env)
        })
        .collect()
}

/// A finite poset given by its full order relation.
pub struct Poset {
    pub worlds: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub valuation: BTreeMap<String, Vec<bool>>,
}

impl Poset {
    pub fn from_model(m: &KripkeModel) -> Poset {
        let n = m.len();
        Poset {
            worlds: m.worlds().to_vec(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| m.leq(a, b)).collect())
                .collect(),
            valuation: m
                .to_spec()
                .valuation
                .iter()
                .map(|(v, ws)| {
                    let bits = m.worlds().iter().map(|w| ws.contains(w)).collect();
                    (v.clone(), bits)
                })
                .collect(),
        }
    }

    /// `w` forces `phi`.
    pub fn forces(&self, w: usize, phi: &Formula) -> bool {
        let above = || (0..self.worlds.len()).filter(move |&u| self.leq[w][u]);
        match phi {
            Formula::Var(v) => self.valuation[v][w],
            Formula::Const(Constant::True) => true,
            Formula::Const(Constant::False) => false,
            Formula::Const(Constant::Half) => panic!("no half in Kripke models"),
            Formula::App(Connective::Neg, a) => above().all(|u| !self.forces(u, &a[0])),
            Formula::App(Connective::And, a) => self.forces(w, &a[0]) && self.forces(w, &a[1]),
            Formula::App(Connective::Or, a) => self.forces(w, &a[0]) || self.forces(w, &a[1]),
            Formula::App(Connective::Imp, a) => {
                above().all(|u| !self.forces(u, &a[0]) || self.forces(u, &a[1]))
            }
            Formula::App(other, _) => panic!("{other} is not intuitionistic"),
        }
    }

    pub fn truth_set(&self, phi: &Formula) -> Vec<String> {
        (0..self.worlds.len())
            .filter(|&w| self.forces(w, phi))
            .map(|w| self.worlds[w].clone())
            .collect()
    }
}

pub fn model(
    worlds: &[&str],
    leq: &[(&str, &str)],
    valuation: &[(&str, &[&str])],
) -> Arc<KripkeModel> {
    let spec = ModelSpec {
        worlds: worlds.iter().map(|s| s.to_string()).collect(),
        leq: leq
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        valuation: valuation
            .iter()
            .map(|(v, ws)| (v.to_string(), ws.iter().map(|s| s.to_string()).collect()))
            .collect(),
    };
    Arc::new(KripkeModel::from_spec_closed(&spec).expect("valid model"))
}

/// Root below two incomparable children `a`, `b`.
pub fn fork(p: &[&str], q: Option<&[&str]>) -> Arc<KripkeModel> {
    let mut val: Vec<(&str, &[&str])> = vec![("p", p)];
    if let Some(q) = q {
        val.push(("q", q));
    }
    model(&["r", "a", "b"], &[("r", "a"), ("r", "b")], &val)
}

/// `r` below `a`, `b`, both below `t`.
pub fn diamond() -> Arc<KripkeModel> {
    model(
        &["r", "a", "b", "t"],
        &[("r", "a"), ("r", "b"), ("a", "t"), ("b", "t")],
        &[("p", &["a", "t"]), ("q", &["b", "t"])],
    )
}

/// Raw lasso word, not necessarily canonical.
#[derive(Clone, Debug)]
pub struct Lasso {
    pub prefix: Vec<bool>,
    pub lp: Vec<bool>,
}

impl Lasso {
    pub fn at(&self, n: usize) -> bool {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.lp[(n - self.prefix.len()) % self.lp.len()]
        }
    }

    pub fn bits(v: &[bool]) -> String {
        v.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Pointwise value of `c` applied to lassos at moment `n`, by direct
/// quantification over future moments. Witnesses, if any, occur before
/// `max(n, L) + P` where `L` and `P` bound the joint prefix and period.
pub fn brute_temporal(c: Connective, args: &[&Lasso], n: usize) -> bool {
    let l = args.iter().map(|a| a.prefix.len()).max().unwrap();
    let p = args.iter().map(|a| a.lp.len()).fold(1, lcm);
    let end = n.max(l) + p;
    let a = args[0];
    match c {
        Connective::Neg => !a.at(n),
        Connective::And => a.at(n) && args[1].at(n),
        Connective::Or => a.at(n) || args[1].at(n),
        Connective::Imp => !a.at(n) || args[1].at(n),
        Connective::X => a.at(n + 1),
        Connective::F => (n..end).any(|m| a.at(m)),
        Connective::U => (n..end).any(|m| args[1].at(m) && (n..m).all(|k| a.at(k))),
        Connective::W => brute_temporal(Connective::U, args, n) || (n..end).all(|k| a.at(k)),
        other => panic!("{other} is not temporal"),
    }
}

/// Truth of `phi` at moments `0..h`, materialising every subformula as a
/// lasso word with the joint prefix and period of its arguments.
pub fn horizon_eval(phi: &Formula, env: &BTreeMap<&str, Lasso>, h: usize) -> Vec<bool> {
    fn word(phi: &Formula, env: &BTreeMap<&str, Lasso>) -> Lasso {
        match phi {
            Formula::Var(v) => env[v.as_str()].clone(),
            Formula::Const(c) => Lasso {
                prefix: vec![],
                lp: vec![*c == Constant::True],
            },
            Formula::App(c, args) => {
                let ws: Vec<Lasso> = args.iter().map(|a| word(a, env)).collect();
                let refs: Vec<&Lasso> = ws.iter().collect();
                let l = refs.iter().map(|w| w.prefix.len()).max().unwrap();
                let per = refs.iter().map(|w| w.lp.len()).fold(1, lcm);
                Lasso {
                    prefix: (0..l).map(|n| brute_temporal(*c, &refs, n)).collect(),
                    lp: (l..l + per).map(|n| brute_temporal(*c, &refs, n)).collect(),
                }
            }
        }
    }
    let w = word(phi, env);
    (0..h).map(|n| w.at(n)).collect()
}

pub fn lasso_strategy() -> impl Strategy<Value = Lasso> {
    (
        proptest::collection::vec(any::<bool>(), 0..=8),
        proptest::collection::vec(any::<bool>(), 1..=8),
    )
        .prop_map(|(prefix, lp)| Lasso { prefix, lp })
}

/// Random formulas with at most `max_nodes` nodes over `vars`, built from
/// `conns` and, optionally, `consts`.
pub fn formula_strategy(
    vars: &'static [&'static str],
    consts: &'static [Constant],
    conns: &'static [Connective],
    max_nodes: usize,
) -> BoxedStrategy<Formula> {
    fn go(
        vars: &'static [&'static str],
        consts: &'static [Constant],
        conns: &'static [Connective],
        budget: usize,
    ) -> BoxedStrategy<Formula> {
        let mut leaves: Vec<BoxedStrategy<Formula>> = vec![proptest::sample::select(vars)
            .prop_map(Formula::var)
            .boxed()];
        if !consts.is_empty() {
            leaves.push(
                proptest::sample::select(consts)
                    .prop_map(Formula::Const)
                    .boxed(),
            );
        }
        let leaf = proptest::strategy::Union::new(leaves).boxed();
        if budget < 2 {
            return leaf;
        }
        let unary: Vec<Connective> = conns.iter().copied().filter(|c| c.arity() == 1).collect();
        let binary: Vec<Connective> = conns.iter().copied().filter(|c| c.arity() == 2).collect();
        let mut options = vec![leaf];
        if !unary.is_empty() {
            let sub = go(vars, consts, conns, budget - 1);
            options.push(
                (proptest::sample::select(unary), sub)
                    .prop_map(|(c, a)| Formula::unary(c, a))
                    .boxed(),
            );
        }
        if !binary.is_empty() && budget >= 3 {
            let rest = budget - 1;
            options.push(
                (1..rest)
                    .prop_flat_map(move |left| {
                        (
                            proptest::sample::select(binary.clone()),
                            go(vars, consts, conns, left),
                            go(vars, consts, conns, rest - left),
                        )
                    })
                    .prop_map(|(c, a, b)| Formula::binary(c, a, b))
                    .boxed(),
            );
        }
        proptest::strategy::Union::new(options).boxed()
    }
    go(vars, consts, conns, max_nodes)
}
