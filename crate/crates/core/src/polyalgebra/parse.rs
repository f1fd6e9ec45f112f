//! Text parser for polynomials in `x` and `y`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! A `/` is only accepted between two integer literals, so `(2/3)*x^2*y`
//! is valid while `x/2` is not.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::bivar::BivarPoly;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("literal at position {pos} does not fit the coefficient type")]
    Overflow { pos: usize },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SYNTAX_ERROR",
            ParseError::UnknownVariable { .. } => "UNKNOWN_VARIABLE",
            ParseError::ZeroDenominator { .. } => "ZERO_DENOMINATOR",
            ParseError::Overflow { .. } => "LITERAL_OVERFLOW",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|(_, c)| *c).collect();
            let value = digits.parse::<BigInt>().map_err(|_| ParseError::Syntax {
                pos,
                msg: "bad integer literal".into(),
            })?;
            out.push((pos, Tok::Int(value)));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            let name: String = chars[start..k].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Ident(name)));
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((pos, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn syntax<X>(&self, msg: &str) -> Result<X, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr<T: Scalar>(&mut self) -> Result<BivarPoly<T>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<T: Scalar>(&mut self) -> Result<BivarPoly<T>, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary<T: Scalar>(&mut self) -> Result<BivarPoly<T>, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<T: Scalar>(&mut self) -> Result<BivarPoly<T>, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected a nonnegative integer exponent".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom<T: Scalar>(&mut self) -> Result<BivarPoly<T>, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(numer)) => {
                let mut denom = BigInt::from(1);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(ParseError::ZeroDenominator { pos: dpos });
                            }
                            denom = d;
                        }
                        _ => {
                            return Err(ParseError::Syntax {
                                pos: dpos,
                                msg: "expected an integer denominator".into(),
                            })
                        }
                    }
                }
                let c = T::from_ratio(&numer, &denom).ok_or(ParseError::Overflow { pos })?;
                Ok(BivarPoly::constant(c))
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(BivarPoly::x()),
                "y" => Ok(BivarPoly::y()),
                _ => Err(ParseError::UnknownVariable { pos, name }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: self
                            .toks
                            .get(self.idx - 1)
                            .map(|(p, _)| *p)
                            .unwrap_or(self.end),
                        msg: "expected ')'".into(),
                    }),
                }
            }
            Some(_) => Err(ParseError::Syntax {
                pos,
                msg: "expected a number, variable or '('".into(),
            }),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` into a normalized polynomial.
pub fn parse_poly<T: Scalar>(text: &str) -> Result<BivarPoly<T>, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.idx < parser.toks.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(poly)
}
