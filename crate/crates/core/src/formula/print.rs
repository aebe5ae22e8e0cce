use super::{Connective, Formula};

const IMP: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const UNTIL: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Var(_) | Formula::Const(_) => ATOM,
        Formula::App(c, _) => match c {
            Connective::Neg | Connective::F | Connective::X => UNARY,
            Connective::U | Connective::W => UNTIL,
            Connective::And => AND,
            Connective::Or => OR,
            Connective::Imp | Connective::ImpK | Connective::ImpL => IMP,
        },
    }
}

/// Minimal-parenthesis rendering that reparses to the same tree.
pub(crate) fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, IMP, &mut out);
    out
}

fn write(f: &Formula, min: u8, out: &mut String) {
    let own = level(f);
    let wrap = own < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::Const(c) => out.push_str(c.keyword()),
        Formula::App(c, args) => match args.as_slice() {
            [arg] => {
                out.push_str(c.symbol());
                if *c != Connective::Neg {
                    out.push(' ');
                }
                write(arg, UNARY, out);
            }
            [left, right] => {
                // Left-associative levels push the right operand one level up,
                // right-associative levels push the left one.
                let (lmin, rmin) = match own {
                    OR | AND => (own, own + 1),
                    _ => (own + 1, own),
                };
                write(left, lmin, out);
                out.push(' ');
                out.push_str(c.symbol());
                out.push(' ');
                write(right, rmin, out);
            }
            _ => unreachable!("connective {c} with {} arguments", args.len()),
        },
    }
    if wrap {
        out.push(')');
    }
}
