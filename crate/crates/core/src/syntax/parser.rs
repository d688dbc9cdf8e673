//! Recursive-descent parser for the ASCII surface syntax.
//!
//! ```text
//! formula := imp
//! imp     := par ("->" imp)?
//! par     := or ("+" or)*
//! or      := and ("\/" and)*
//! and     := mul ("/\" mul)*
//! mul     := un ("*" un)*
//! un      := ("~" | "!" | "?")* atom
//! atom    := "1" | "0" | "T" | "F" | ident | "(" formula ")"
//! equation      := formula "=" formula
//! quasiequation := equation ("&" equation)* "=>" equation
//! ```

use thiserror::Error;

use super::formula::{Constant, Equation, Formula, Quasiequation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("SYNTAX-ERROR at byte {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Arrow,
    Meet,
    Join,
    Star,
    Plus,
    Tilde,
    Bang,
    Quest,
    LParen,
    RParen,
    Eq,
    Amp,
    Implies,
    Const(Constant),
    Ident(String),
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Arrow => "`->`".into(),
        Tok::Meet => "`/\\`".into(),
        Tok::Join => "`\\/`".into(),
        Tok::Star => "`*`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Quest => "`?`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Implies => "`=>`".into(),
        Tok::Const(c) => format!("`{}`", c.symbol()),
        Tok::Ident(s) => format!("identifier `{s}`"),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = if i + 1 < bytes.len() { &bytes[i..i + 2] } else { &bytes[i..i + 1] };
        let (tok, len) = match two {
            b"->" => (Tok::Arrow, 2),
            b"/\\" => (Tok::Meet, 2),
            b"\\/" => (Tok::Join, 2),
            b"=>" => (Tok::Implies, 2),
            _ => match c {
                b'*' => (Tok::Star, 1),
                b'+' => (Tok::Plus, 1),
                b'~' => (Tok::Tilde, 1),
                b'!' => (Tok::Bang, 1),
                b'?' => (Tok::Quest, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b'=' => (Tok::Eq, 1),
                b'&' => (Tok::Amp, 1),
                b'0' | b'1' => {
                    if i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                        return Err(SyntaxError {
                            offset: i,
                            message: "constants 0 and 1 cannot start a word".into(),
                        });
                    }
                    let k = if c == b'1' { Constant::One } else { Constant::Zero };
                    (Tok::Const(k), 1)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = i;
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    let word = &src[start..j];
                    let tok = match word {
                        "T" => Tok::Const(Constant::Top),
                        "F" => Tok::Const(Constant::Bot),
                        _ => Tok::Ident(word.to_string()),
                    };
                    (tok, j - start)
                }
                _ => {
                    return Err(SyntaxError {
                        offset: i,
                        message: format!("unexpected character {:?}", src[i..].chars().next().unwrap()),
                    })
                }
            },
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, SyntaxError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        let found = match self.peek() {
            Some(t) => describe(t),
            None => "end of input".into(),
        };
        Err(SyntaxError {
            offset: self.offset(),
            message: format!("expected {expected}, found {found}"),
        })
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.pos < self.toks.len() {
            self.error("end of input")
        } else {
            Ok(())
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.par()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn left_assoc(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<Formula, SyntaxError>,
        build: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula, SyntaxError> {
        let mut acc = next(self)?;
        while self.eat(&op) {
            let rhs = next(self)?;
            acc = build(acc, rhs);
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<Formula, SyntaxError> {
        self.left_assoc(Tok::Plus, Self::or, Formula::par)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        self.left_assoc(Tok::Join, Self::and, Formula::join)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        self.left_assoc(Tok::Meet, Self::mul, Formula::meet)
    }

    fn mul(&mut self) -> Result<Formula, SyntaxError> {
        self.left_assoc(Tok::Star, Self::unary, Formula::mult)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        if self.eat(&Tok::Tilde) {
            Ok(Formula::neg(self.unary()?))
        } else if self.eat(&Tok::Bang) {
            Ok(Formula::bang(self.unary()?))
        } else if self.eat(&Tok::Quest) {
            Ok(Formula::quest(self.unary()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Const(c)) => {
                self.pos += 1;
                Ok(Formula::Const(c))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Formula::Var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("`)`");
                }
                Ok(f)
            }
            _ => self.error("a formula"),
        }
    }

    fn equation(&mut self) -> Result<Equation, SyntaxError> {
        let lhs = self.formula()?;
        if !self.eat(&Tok::Eq) {
            return self.error("`=`");
        }
        let rhs = self.formula()?;
        Ok(Equation::new(lhs, rhs))
    }

    fn quasiequation(&mut self) -> Result<Quasiequation, SyntaxError> {
        let mut eqs = vec![self.equation()?];
        while self.eat(&Tok::Amp) {
            eqs.push(self.equation()?);
        }
        if self.eat(&Tok::Implies) {
            let conclusion = self.equation()?;
            Ok(Quasiequation {
                premises: eqs,
                conclusion,
            })
        } else if eqs.len() == 1 {
            Ok(Quasiequation {
                premises: Vec::new(),
                conclusion: eqs.pop().unwrap(),
            })
        } else {
            self.error("`=>`")
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_equation(src: &str) -> Result<Equation, SyntaxError> {
    let mut p = Parser::new(src)?;
    let e = p.equation()?;
    p.finish()?;
    Ok(e)
}

/// Parses `e1 & ... & ek => e`; a bare equation is accepted as a
/// quasiequation with no premises.
pub fn parse_quasiequation(src: &str) -> Result<Quasiequation, SyntaxError> {
    let mut p = Parser::new(src)?;
    let q = p.quasiequation()?;
    p.finish()?;
    Ok(q)
}
