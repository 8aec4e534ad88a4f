use std::fmt;

use num_bigint::BigInt;
use num_traits::{Num, One};

use super::{syntax, ParseError, SourceSpan};
use crate::expr::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum TokenKind {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Number(r) => write!(f, "number {r}"),
            TokenKind::Ident(s) => write!(f, "'{s}'"),
            TokenKind::Plus => f.write_str("'+'"),
            TokenKind::Minus => f.write_str("'-'"),
            TokenKind::Star => f.write_str("'*'"),
            TokenKind::Slash => f.write_str("'/'"),
            TokenKind::Caret => f.write_str("'^'"),
            TokenKind::LParen => f.write_str("'('"),
            TokenKind::RParen => f.write_str("')'"),
            TokenKind::LBracket => f.write_str("'['"),
            TokenKind::RBracket => f.write_str("']'"),
            TokenKind::Comma => f.write_str("','"),
            TokenKind::Equals => f.write_str("'='"),
            TokenKind::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

pub(super) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b'[' => Some(TokenKind::LBracket),
            b']' => Some(TokenKind::RBracket),
            b',' => Some(TokenKind::Comma),
            b'=' => Some(TokenKind::Equals),
            _ => None,
        };
        if let Some(kind) = single {
            i += 1;
            out.push(Token { kind, span: SourceSpan::new(start, i) });
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_end = i;
            let mut frac = "";
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let fs = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                frac = &text[fs..i];
            }
            let whole = &text[start..int_end];
            if whole.is_empty() && frac.is_empty() {
                return Err(syntax("malformed number", SourceSpan::new(start, i)));
            }
            let value = decimal(whole, frac);
            out.push(Token { kind: TokenKind::Number(value), span: SourceSpan::new(start, i) });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                kind: TokenKind::Ident(text[start..i].to_string()),
                span: SourceSpan::new(start, i),
            });
            continue;
        }
        let ch = text[start..].chars().next().unwrap_or('?');
        return Err(syntax(
            format!("unexpected character '{ch}'"),
            SourceSpan::new(start, start + ch.len_utf8()),
        ));
    }
    out.push(Token { kind: TokenKind::End, span: SourceSpan::new(text.len(), text.len()) });
    Ok(out)
}

/// Exact value of `whole.frac`.
fn decimal(whole: &str, frac: &str) -> Rational {
    let digits = format!("{whole}{frac}");
    let digits = if digits.is_empty() { "0".to_string() } else { digits };
    let numer = BigInt::from_str_radix(&digits, 10).expect("ascii digits");
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    if denom.is_one() {
        Rational::from_integer(numer)
    } else {
        Rational::new(numer, denom)
    }
}

pub(super) struct Lexer {
    tokens: Vec<Token>,
    pos: usize,
}

impl Lexer {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Lexer { tokens: tokenize(text)?, pos: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }
}
