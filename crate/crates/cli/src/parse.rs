//! Parsers for the command-line surface: a tiny infix grammar for
//! polynomial literals, and the `kind[:param]` basis shorthand.
//!
//! Literal grammar, whitespace-insensitive:
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*'? factor)*
//! factor   := atom ['^' integer]
//! atom     := rational | 'x' | '(' expr ')'
//! rational := integer ['/' integer]
//! ```
//!
//! so `4x^2+4x+1`, `(1+x)^3`, `1/8 + x`, and `(x-1)(x+2)` all read the
//! way they do on paper.

use anyhow::{anyhow, bail, Result};
use hypersieve_core::bases::BasisDescriptor;
use hypersieve_core::poly::{Poly, RationalPoly};
use hypersieve_core::scalar::{parse_rational, Rational};

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    X,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Number(parse_rational(&digits).map_err(|e| anyhow!(e))?));
            }
            'x' | 'X' => {
                chars.next();
                tokens.push(Token::X);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            other => bail!("unexpected character {other:?} in polynomial literal"),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RationalPoly> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        while let Some(op) = self.peek().cloned() {
            match op {
                Token::Plus => {
                    self.next();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Token::Minus => {
                    self.next();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                // juxtaposition: 4x^2, (x-1)(x+2)
                Some(Token::Number(_)) | Some(Token::X) | Some(Token::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            // the lexer only emits nonnegative integer number tokens
            match self.next() {
                Some(Token::Number(n)) if n.is_integer() => {
                    let exp: u32 = n
                        .numer()
                        .try_into()
                        .map_err(|_| anyhow!("exponent too large"))?;
                    return Ok(base.pow(exp));
                }
                other => bail!("expected a nonnegative integer exponent, found {other:?}"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalPoly> {
        match self.next() {
            Some(Token::Number(n)) => {
                // rational literal p/q
                if self.peek() == Some(&Token::Slash) {
                    self.next();
                    match self.next() {
                        Some(Token::Number(d)) => {
                            if d.is_zero() {
                                bail!("zero denominator in rational literal");
                            }
                            Ok(Poly::constant(n / d))
                        }
                        other => bail!("expected denominator after '/', found {other:?}"),
                    }
                } else {
                    Ok(Poly::constant(n))
                }
            }
            Some(Token::X) => Ok(Poly::x()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => bail!("expected ')', found {other:?}"),
                }
            }
            other => bail!("expected a number, 'x', or '(', found {other:?}"),
        }
    }
}

/// Parses a polynomial literal like `(1+x)^3` or `4x^2+4x+1`.
pub fn parse_poly(input: &str) -> Result<RationalPoly> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        bail!("empty polynomial literal");
    }
    let mut parser = Parser { tokens, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        bail!("trailing input after polynomial literal");
    }
    Ok(poly)
}

/// Parses a basis argument: either the `kind[:param]` shorthand
/// (`std`, `hermite:-1/2`, `q2`, `trunc:3`, `laguerre`, `legendre`) or an
/// inline JSON descriptor starting with `{`.
pub fn parse_basis(input: &str) -> Result<BasisDescriptor> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed)
            .map_err(|e| anyhow!("bad basis descriptor JSON: {e}"));
    }
    let (kind, param) = match trimmed.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (trimmed, None),
    };
    let no_param = |d: BasisDescriptor| {
        if param.is_some() {
            bail!("basis kind {kind:?} takes no parameter");
        }
        Ok(d)
    };
    match kind {
        "std" | "standard" => no_param(BasisDescriptor::Standard),
        "q1" => no_param(BasisDescriptor::Q1),
        "q2" => no_param(BasisDescriptor::Q2),
        "q3" => no_param(BasisDescriptor::Q3),
        "laguerre" => no_param(BasisDescriptor::Laguerre),
        "legendre" => no_param(BasisDescriptor::Legendre),
        "hermite" | "generalized_hermite" => {
            let p = param.ok_or_else(|| anyhow!("hermite needs a parameter, e.g. hermite:1"))?;
            let alpha = parse_rational(p).map_err(|e| anyhow!(e))?;
            Ok(BasisDescriptor::GeneralizedHermite { alpha })
        }
        "trunc" | "truncated_sum" => {
            let p = param.ok_or_else(|| anyhow!("trunc needs an index, e.g. trunc:2"))?;
            let j: usize = p.parse().map_err(|e| anyhow!("bad index {p:?}: {e}"))?;
            Ok(BasisDescriptor::TruncatedSum { j })
        }
        other => bail!("unknown basis kind {other:?}"),
    }
}

/// Parses a comma-separated rational schedule like `10,100,1000`.
pub fn parse_schedule(input: &str) -> Result<Vec<Rational>> {
    input
        .split(',')
        .map(|s| parse_rational(s).map_err(|e| anyhow!(e)))
        .collect()
}
