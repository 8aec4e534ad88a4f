//! Text grammar for expressions, equations and domains, plus JSON output.
//!
//! ```text
//! equation := expr "=" expr
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?
//! exponent := "-"? intlit ("^" exponent)?
//! atom     := numlit | "x" | "e" | "pi" | "(" expr ")" | fncall
//! fncall   := ("sqrt" | "exp" | "ln" | "sin" | "cos") "(" expr ")"
//!           | "root" "(" intlit "," expr ")" | "W" "(" intlit "," expr ")"
//! ```
//!
//! Multiplication must be explicit. `^` binds tighter than unary minus, so
//! `-x^2` is `-(x^2)`. Decimal literals become exact rationals, and a
//! quotient of two literals (`1/2`) or a negated literal (`-3`) is folded
//! into a single rational literal.

mod json;
mod lexer;
mod render;

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::expr::{Branch, Domain, Endpoint, Equation, Expr, RealInterval, Rational};
use lexer::{Lexer, Token, TokenKind};

pub use json::{render_json, JsonValue, ToJson};
pub use render::{render_expr, render_expr_in, render_rational};

/// Byte range into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {span}: {message}")]
    Syntax { message: String, span: SourceSpan },
    #[error("more than one '=' (second at {span})")]
    MultipleEquals { span: SourceSpan },
    #[error("empty {side} side of equation at {span}")]
    EmptySide { side: &'static str, span: SourceSpan },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::MultipleEquals { span }
            | ParseError::EmptySide { span, .. } => *span,
        }
    }

    /// Caret diagnostic under the offending source text.
    pub fn pretty(&self, source: &str) -> String {
        let span = self.span();
        let start = span.start.min(source.len());
        let width = span.end.saturating_sub(span.start).max(1);
        format!("{source}\n{}{}\n{self}", " ".repeat(start), "^".repeat(width))
    }
}

fn syntax(message: impl Into<String>, span: SourceSpan) -> ParseError {
    ParseError::Syntax { message: message.into(), span }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses `lhs = rhs`. Without a domain, the equation lives on the
/// intersection of the natural domains of both sides.
pub fn parse_equation(text: &str, domain_text: Option<&str>) -> Result<Equation, ParseError> {
    let tokens = lexer::tokenize(text)?;
    let equals: Vec<&Token> = tokens.iter().filter(|t| t.kind == TokenKind::Equals).collect();
    if equals.is_empty() {
        let end = text.len();
        return Err(syntax("expected '=' in equation", SourceSpan::new(end, end)));
    }
    if equals.len() > 1 {
        return Err(ParseError::MultipleEquals { span: equals[1].span });
    }
    let split = equals[0].span;
    let (left, right) = (&text[..split.start], &text[split.end..]);
    if left.trim().is_empty() {
        return Err(ParseError::EmptySide { side: "left", span: SourceSpan::new(0, split.start) });
    }
    if right.trim().is_empty() {
        return Err(ParseError::EmptySide {
            side: "right",
            span: SourceSpan::new(split.end, text.len()),
        });
    }
    let lhs = parse_expression(left)?;
    let rhs = parse_expression(right).map_err(|e| shift(e, split.end))?;
    let declared = match domain_text {
        Some(d) => parse_domain(d)?,
        None => Domain::real_line(),
    };
    Ok(Equation::new(lhs, rhs, declared))
}

fn shift(e: ParseError, offset: usize) -> ParseError {
    let mv = |s: SourceSpan| SourceSpan::new(s.start + offset, s.end + offset);
    match e {
        ParseError::Syntax { message, span } => ParseError::Syntax { message, span: mv(span) },
        ParseError::MultipleEquals { span } => ParseError::MultipleEquals { span: mv(span) },
        ParseError::EmptySide { side, span } => ParseError::EmptySide { side, span: mv(span) },
    }
}

/// Parses `[a,b]`, `(a,b)`, `[a,inf)`, `(-inf,b]` and unions joined by `U`.
pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    let mut p = Parser::new(text)?;
    let mut pieces = vec![p.interval()?];
    while p.peek_ident("U") {
        p.bump();
        pieces.push(p.interval()?);
    }
    p.expect_end()?;
    Ok(Domain::normalize(pieces))
}

struct Parser {
    lexer: Lexer,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { lexer: Lexer::new(text)? })
    }

    fn peek(&self) -> &Token {
        self.lexer.peek()
    }

    fn bump(&mut self) -> Token {
        self.lexer.next()
    }

    fn peek_ident(&self, name: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == name)
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        let t = self.bump();
        if t.kind == kind {
            Ok(t)
        } else {
            Err(syntax(format!("expected {what}, found {}", t.kind), t.span))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        let t = self.peek();
        match t.kind {
            TokenKind::End => Ok(()),
            TokenKind::Number(_) | TokenKind::Ident(_) | TokenKind::LParen => Err(syntax(
                format!(
                    "expected operator or end of input, found {} (multiplication must be explicit)",
                    t.kind
                ),
                t.span,
            )),
            _ => Err(syntax(format!("expected operator or end of input, found {}", t.kind), t.span)),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                TokenKind::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    lhs = lhs * self.unary()?;
                }
                TokenKind::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = match (lhs, rhs) {
                        (Expr::Lit(a), Expr::Lit(b)) if !b.is_zero() => Expr::Lit(a / b),
                        (a, b) => a / b,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            return Ok(match self.unary()? {
                Expr::Lit(r) => Expr::Lit(-r),
                other => -other,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let n = self.exponent()?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peek().kind == TokenKind::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (value, span) = self.intlit("integer exponent (use exp() or root() otherwise)")?;
        let mut n = if negative { -value } else { value };
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let inner = self.exponent()?;
            if inner < 0 {
                return Err(syntax("exponent tower must evaluate to an integer", span));
            }
            n = u32::try_from(inner)
                .ok()
                .and_then(|e| n.checked_pow(e))
                .ok_or_else(|| syntax("exponent too large", span))?;
        }
        Ok(n)
    }

    fn intlit(&mut self, what: &str) -> Result<(i64, SourceSpan), ParseError> {
        let t = self.bump();
        match &t.kind {
            TokenKind::Number(r) if r.is_integer() => r
                .to_integer()
                .to_i64()
                .map(|v| (v, t.span))
                .ok_or_else(|| syntax("integer literal too large", t.span)),
            other => Err(syntax(format!("expected {what}, found {other}"), t.span)),
        }
    }

    fn signed_intlit(&mut self, what: &str) -> Result<(i64, SourceSpan), ParseError> {
        if self.peek().kind == TokenKind::Minus {
            let start = self.bump().span.start;
            let (v, span) = self.intlit(what)?;
            return Ok((-v, SourceSpan::new(start, span.end)));
        }
        self.intlit(what)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match t.kind {
            TokenKind::Number(r) => Ok(Expr::Lit(r)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(e)
            }
            TokenKind::Ident(name) => self.named(&name, t.span),
            other => Err(syntax(format!("expected expression, found {other}"), t.span)),
        }
    }

    fn named(&mut self, name: &str, span: SourceSpan) -> Result<Expr, ParseError> {
        match name {
            "x" => return Ok(Expr::Var),
            "e" => return Ok(Expr::E),
            "pi" => return Ok(Expr::Pi),
            _ => {}
        }
        let unary: Option<fn(Expr) -> Expr> = match name {
            "sqrt" => Some(Expr::sqrt),
            "exp" => Some(Expr::exp),
            "ln" => Some(Expr::ln),
            "sin" => Some(Expr::sin),
            "cos" => Some(Expr::cos),
            _ => None,
        };
        if let Some(build) = unary {
            self.expect(TokenKind::LParen, &format!("'(' after {name}"))?;
            let arg = self.expr()?;
            self.expect(TokenKind::RParen, "')'")?;
            return Ok(build(arg));
        }
        match name {
            "root" => {
                self.expect(TokenKind::LParen, "'(' after root")?;
                let (n, nspan) = self.intlit("root index")?;
                if n < 2 {
                    return Err(syntax("root index must be at least 2", nspan));
                }
                let n = u32::try_from(n).map_err(|_| syntax("root index too large", nspan))?;
                self.expect(TokenKind::Comma, "',' after root index")?;
                let arg = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::Root(n, Box::new(arg)))
            }
            "W" => {
                self.expect(TokenKind::LParen, "'(' after W")?;
                let (k, kspan) = self.signed_intlit("Lambert W branch (0 or -1)")?;
                let branch = Branch::from_index(k)
                    .ok_or_else(|| syntax("Lambert W branch must be 0 or -1", kspan))?;
                self.expect(TokenKind::Comma, "',' after branch")?;
                let arg = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::lambert_w(branch, arg))
            }
            _ => Err(syntax(
                format!(
                    "unknown name '{name}' (expected x, e, pi, sqrt, root, exp, ln, sin, cos or W)"
                ),
                span,
            )),
        }
    }

    fn interval(&mut self) -> Result<RealInterval, ParseError> {
        let open = self.bump();
        let lower_closed = match open.kind {
            TokenKind::LBracket => true,
            TokenKind::LParen => false,
            other => return Err(syntax(format!("expected '[' or '(', found {other}"), open.span)),
        };
        let (lo, lo_span) = self.endpoint()?;
        self.expect(TokenKind::Comma, "','")?;
        let (hi, hi_span) = self.endpoint()?;
        let close = self.bump();
        let upper_closed = match close.kind {
            TokenKind::RBracket => true,
            TokenKind::RParen => false,
            other => return Err(syntax(format!("expected ']' or ')', found {other}"), close.span)),
        };
        let lower = match lo {
            Bound::NegInf if lower_closed => {
                return Err(syntax("infinite endpoints must be open", lo_span))
            }
            Bound::NegInf => Endpoint::Infinite,
            Bound::PosInf => return Err(syntax("lower endpoint cannot be +inf", lo_span)),
            Bound::Finite(v) if lower_closed => Endpoint::Closed(v),
            Bound::Finite(v) => Endpoint::Open(v),
        };
        let upper = match hi {
            Bound::PosInf if upper_closed => {
                return Err(syntax("infinite endpoints must be open", hi_span))
            }
            Bound::PosInf => Endpoint::Infinite,
            Bound::NegInf => return Err(syntax("upper endpoint cannot be -inf", hi_span)),
            Bound::Finite(v) if upper_closed => Endpoint::Closed(v),
            Bound::Finite(v) => Endpoint::Open(v),
        };
        Ok(RealInterval::new(lower, upper))
    }

    fn endpoint(&mut self) -> Result<(Bound, SourceSpan), ParseError> {
        let start = self.peek().span.start;
        let negative = if self.peek().kind == TokenKind::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let span = SourceSpan::new(start, t.span.end);
        match t.kind {
            TokenKind::Ident(ref s) if s == "inf" => {
                Ok((if negative { Bound::NegInf } else { Bound::PosInf }, span))
            }
            TokenKind::Number(mut r) => {
                if self.peek().kind == TokenKind::Slash {
                    self.bump();
                    let d = self.bump();
                    match d.kind {
                        TokenKind::Number(q) if !q.is_zero() => r /= q,
                        other => {
                            return Err(syntax(format!("expected nonzero denominator, found {other}"), d.span))
                        }
                    }
                }
                Ok((Bound::Finite(if negative { -r } else { r }), span))
            }
            other => Err(syntax(format!("expected rational endpoint or inf, found {other}"), t.span)),
        }
    }
}

enum Bound {
    NegInf,
    PosInf,
    Finite(Rational),
}
