use std::fmt;

use super::{Connective, Constant, Formula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken(char),
    Unexpected {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
}

/// A syntax error at a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnknownToken(c) => {
                write!(f, "unknown token {c:?} at byte {}", self.offset)
            }
            ParseErrorKind::Unexpected { found, expected } => write!(
                f,
                "expected {expected} but found {found:?} at byte {}",
                self.offset
            ),
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(
                    f,
                    "expected {expected} at end of input (byte {})",
                    self.offset
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(Constant),
    Unary(Connective),
    Until(Connective),
    And,
    Or,
    Imp(Connective),
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Const(c) => c.keyword().to_string(),
            Tok::Unary(c) | Tok::Until(c) | Tok::Imp(c) => c.symbol().to_string(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn is_ident_continue(b: u8) -> bool {
    b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_'
}

/// `[a-z][a-z0-9_]*` minus the constant keywords.
pub(crate) fn is_identifier(s: &str) -> bool {
    let bytes = s.as_bytes();
    !bytes.is_empty()
        && bytes[0].is_ascii_lowercase()
        && bytes.iter().all(|&b| is_ident_continue(b))
        && keyword(s).is_none()
}

fn keyword(s: &str) -> Option<Constant> {
    match s {
        "true" => Some(Constant::True),
        "false" => Some(Constant::False),
        "unk" => Some(Constant::Half),
        _ => None,
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Unary(Connective::Neg),
            b'F' => Tok::Unary(Connective::F),
            b'X' => Tok::Unary(Connective::X),
            b'U' => Tok::Until(Connective::U),
            b'W' => Tok::Until(Connective::W),
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                // `->k` / `->l` only when the suffix letter is not the start
                // of an identifier.
                let suffix = bytes.get(i).map(u8::to_ascii_lowercase);
                let ends = bytes.get(i + 1).is_none_or(|&n| !is_ident_continue(n));
                let c = match suffix {
                    Some(b'k') if ends => Connective::ImpK,
                    Some(b'l') if ends => Connective::ImpL,
                    _ => Connective::Imp,
                };
                if c != Connective::Imp {
                    i += 1;
                }
                out.push((start, Tok::Imp(c)));
                continue;
            }
            b'a'..=b'z' => {
                while i < bytes.len() && is_ident_continue(bytes[i]) {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match keyword(word) {
                    Some(c) => Tok::Const(c),
                    None => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                let c = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::UnknownToken(c),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.pos) {
            Some((offset, tok)) => ParseError {
                offset: *offset,
                kind: ParseErrorKind::Unexpected {
                    found: tok.text(),
                    expected,
                },
            },
            None => ParseError {
                offset: self.offset(),
                kind: ParseErrorKind::UnexpectedEnd { expected },
            },
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if let Some(Tok::Imp(c)) = self.peek() {
            let c = *c;
            self.pos += 1;
            let right = self.implication()?;
            return Ok(Formula::binary(c, left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let right = self.conjunction()?;
            acc = Formula::binary(Connective::Or, acc, right);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.until()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let right = self.until()?;
            acc = Formula::binary(Connective::And, acc, right);
        }
        Ok(acc)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let left = self.unary()?;
        if let Some(Tok::Until(c)) = self.peek() {
            let c = *c;
            self.pos += 1;
            let right = self.until()?;
            return Ok(Formula::binary(c, left, right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if let Some(Tok::Unary(c)) = self.peek() {
            let c = *c;
            self.pos += 1;
            let arg = self.unary()?;
            return Ok(Formula::unary(c, arg));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Var(name))
            }
            Some(Tok::Const(c)) => {
                self.pos += 1;
                Ok(Formula::Const(c))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("a variable, constant or '('")),
        }
    }
}

/// Parses the concrete syntax.
///
/// Precedence from tightest: `~ F X`, then `U W` (right associative), `&`,
/// `|`, and finally `-> ->k ->l` (right associative).
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let formula = parser.implication()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error("end of input"));
    }
    Ok(formula)
}
