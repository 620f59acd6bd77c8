//! Expression parser and canonical printer for Ore elements.
//!
//! Grammar:
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ('^' nat)*
//! primary := rational | vector | name | '(' expr ')'
//! rational:= int ['/' int]
//! vector  := '[' ['-'] rational (',' ['-'] rational)* ']'
//! name    := 'x' | 'y' | algebra basis name
//! ```
//!
//! Products associate left to right and are evaluated with the twisted
//! product; parentheses are semantically significant because the coefficient
//! algebra may fail to be associative, so the user's grouping is preserved
//! exactly. Powers are left-normed repeated products.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgElem, AlgebraSpec};
use crate::error::{Error, Result};
use crate::ore::{OreContext, OreElem};
use crate::poly::CoeffPoly;
use crate::rat::Rat;

/// Parses `src` into a normalized element of `ctx`. Printing the result and
/// parsing it back is the identity.
pub fn parse_element(src: &str, ctx: &Arc<OreContext>) -> Result<OreElem> {
    let ast = Parser::new(src)?.parse_expr_eof()?;
    eval_ore(&ast, ctx)
}

/// Parses a polynomial in `y` over `spec` (no `x` allowed). Used for the
/// defining data of substitution endomorphisms and twisted derivations.
pub fn parse_coeff_poly(src: &str, spec: &AlgebraSpec) -> Result<CoeffPoly> {
    let ast = Parser::new(src)?.parse_expr_eof()?;
    eval_poly(&ast, spec)
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        let mut toks = Vec::new();
        let mut line = 1;
        let mut col = 1;
        let mut chars = src.chars().peekable();
        while let Some(&c) = chars.peek() {
            let pos = Pos { line, col };
            let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
                let c = chars.next().unwrap();
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                c
            };
            if c.is_whitespace() {
                advance(&mut chars);
                continue;
            }
            if c.is_ascii_digit() {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(advance(&mut chars));
                }
                toks.push((Tok::Int(s), pos));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    s.push(advance(&mut chars));
                }
                toks.push((Tok::Name(s), pos));
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                _ => return Err(syntax(pos, format!("unexpected character {c:?}"))),
            };
            advance(&mut chars);
            toks.push((tok, pos));
        }
        toks.push((Tok::Eof, Pos { line, col }));
        Ok(Parser { toks, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Pos> {
        let (t, pos) = self.bump();
        if t == tok {
            Ok(pos)
        } else {
            Err(syntax(pos, format!("expected {what}")))
        }
    }

    fn parse_expr_eof(&mut self) -> Result<Ast> {
        let ast = self.parse_expr()?;
        match self.peek() {
            Tok::Eof => Ok(ast),
            _ => Err(syntax(self.pos(), "expected end of expression")),
        }
    }

    fn parse_expr(&mut self) -> Result<Ast> {
        let mut acc = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            Ast::Neg(Box::new(self.parse_term()?))
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Ast::Add(Box::new(acc), Box::new(self.parse_term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Ast::Sub(Box::new(acc), Box::new(self.parse_term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Tok::Star) {
            self.bump();
            acc = Ast::Mul(Box::new(acc), Box::new(self.parse_factor()?));
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Ast> {
        let mut acc = self.parse_primary()?;
        while matches!(self.peek(), Tok::Caret) {
            self.bump();
            let pos = self.pos();
            let (t, _) = self.bump();
            let Tok::Int(digits) = t else {
                return Err(syntax(pos, "expected a natural number exponent"));
            };
            let n: usize = digits
                .parse()
                .map_err(|_| syntax(pos, "exponent too large"))?;
            acc = Ast::Pow(Box::new(acc), n);
        }
        Ok(acc)
    }

    fn parse_primary(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(digits) => Ok(Ast::Rational(self.finish_rational(digits, pos)?)),
            Tok::Name(name) => Ok(Ast::Name(name, pos)),
            Tok::LParen => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Tok::LBracket => {
                let mut coords = vec![self.parse_signed_rational()?];
                while matches!(self.peek(), Tok::Comma) {
                    self.bump();
                    coords.push(self.parse_signed_rational()?);
                }
                self.expect(Tok::RBracket, "closing bracket")?;
                Ok(Ast::Vector(coords, pos))
            }
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }

    fn parse_signed_rational(&mut self) -> Result<Rat> {
        let negative = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let (t, _) = self.bump();
        let Tok::Int(digits) = t else {
            return Err(syntax(pos, "expected a rational number"));
        };
        let r = self.finish_rational(digits, pos)?;
        Ok(if negative { -r } else { r })
    }

    /// Consumes an optional `/ int` suffix after an integer literal.
    fn finish_rational(&mut self, digits: String, pos: Pos) -> Result<Rat> {
        let s = if matches!(self.peek(), Tok::Slash) {
            self.bump();
            let dpos = self.pos();
            let (t, _) = self.bump();
            let Tok::Int(den) = t else {
                return Err(syntax(dpos, "expected an integer denominator"));
            };
            if den.chars().all(|c| c == '0') {
                return Err(syntax(dpos, "zero denominator"));
            }
            format!("{digits}/{den}")
        } else {
            digits
        };
        s.parse().map_err(|_| syntax(pos, "cannot parse rational"))
    }
}

#[derive(Debug)]
enum Ast {
    Rational(Rat),
    Vector(Vec<Rat>, Pos),
    Name(String, Pos),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, usize),
}

fn eval_ore(ast: &Ast, ctx: &Arc<OreContext>) -> Result<OreElem> {
    let spec = ctx.algebra();
    Ok(match ast {
        Ast::Rational(r) => OreElem::scalar(ctx, r.clone()),
        Ast::Vector(coords, pos) => {
            let elem = vector_elem(coords, spec, *pos)?;
            OreElem::constant(ctx, elem)
        }
        Ast::Name(name, pos) => match name.as_str() {
            "x" => OreElem::x(ctx),
            "y" => OreElem::y(ctx),
            other => match spec.name_index(other) {
                Some(i) => OreElem::constant(ctx, spec.basis_elem(i)),
                None => return Err(syntax(*pos, format!("unknown basis name {other:?}"))),
            },
        },
        Ast::Neg(a) => -&eval_ore(a, ctx)?,
        Ast::Add(a, b) => &eval_ore(a, ctx)? + &eval_ore(b, ctx)?,
        Ast::Sub(a, b) => &eval_ore(a, ctx)? - &eval_ore(b, ctx)?,
        Ast::Mul(a, b) => eval_ore(a, ctx)?.mul(&eval_ore(b, ctx)?),
        Ast::Pow(a, n) => eval_ore(a, ctx)?.pow_left(*n),
    })
}

fn eval_poly(ast: &Ast, spec: &AlgebraSpec) -> Result<CoeffPoly> {
    Ok(match ast {
        Ast::Rational(r) => CoeffPoly::constant(spec.scalar(r.clone())),
        Ast::Vector(coords, pos) => CoeffPoly::constant(vector_elem(coords, spec, *pos)?),
        Ast::Name(name, pos) => match name.as_str() {
            "y" => CoeffPoly::y(spec),
            "x" => return Err(syntax(*pos, "x is not allowed in a coefficient polynomial")),
            other => match spec.name_index(other) {
                Some(i) => CoeffPoly::constant(spec.basis_elem(i)),
                None => return Err(syntax(*pos, format!("unknown basis name {other:?}"))),
            },
        },
        Ast::Neg(a) => eval_poly(a, spec)?.neg(),
        Ast::Add(a, b) => eval_poly(a, spec)?.add(&eval_poly(b, spec)?),
        Ast::Sub(a, b) => eval_poly(a, spec)?.sub(&eval_poly(b, spec)?),
        Ast::Mul(a, b) => eval_poly(a, spec)?.mul(&eval_poly(b, spec)?, spec),
        Ast::Pow(a, n) => eval_poly(a, spec)?.pow(*n, spec),
    })
}

fn vector_elem(coords: &[Rat], spec: &AlgebraSpec, pos: Pos) -> Result<AlgElem> {
    if coords.len() != spec.dim() {
        return Err(syntax(
            pos,
            format!("expected {} coordinates, got {}", spec.dim(), coords.len()),
        ));
    }
    Ok(spec
        .elem_from_coords(coords.to_vec())
        .expect("length checked"))
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

enum CoefKind<'a> {
    Scalar(&'a Rat),
    Basis(usize),
    Vector,
}

fn coef_kind<'a>(spec: &AlgebraSpec, c: &'a AlgElem) -> CoefKind<'a> {
    if let Some(r) = spec.as_scalar(c) {
        return CoefKind::Scalar(r);
    }
    let mut nonzero = c.coords().iter().enumerate().filter(|(_, v)| !v.is_zero());
    if let Some((i, v)) = nonzero.next() {
        if v.is_one() && nonzero.next().is_none() {
            return CoefKind::Basis(i);
        }
    }
    CoefKind::Vector
}

fn power_str(base: &str, n: usize) -> Option<String> {
    match n {
        0 => None,
        1 => Some(base.to_string()),
        _ => Some(format!("{base}^{n}")),
    }
}

/// Canonical text form: a sum of terms `coef * y^j * x^k` ordered by
/// decreasing `k`, then decreasing `j`. Scalar coefficients print as plain
/// rationals, single basis elements by name, and everything else as a
/// bracketed coordinate vector.
pub fn canonical_text(e: &OreElem) -> String {
    let spec = e.ctx().algebra();
    let mut pieces: Vec<String> = Vec::new();
    for (k, p) in e.coeffs().iter().enumerate().rev() {
        for (j, c) in p.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut powers: Vec<String> = Vec::new();
            if let Some(s) = power_str("y", j) {
                powers.push(s);
            }
            if let Some(s) = power_str("x", k) {
                powers.push(s);
            }
            let piece = match coef_kind(spec, c) {
                CoefKind::Scalar(r) => {
                    if powers.is_empty() {
                        r.to_string()
                    } else if r.is_one() {
                        powers.join(" * ")
                    } else if (-r).is_one() {
                        format!("-{}", powers.join(" * "))
                    } else {
                        format!("{r} * {}", powers.join(" * "))
                    }
                }
                CoefKind::Basis(i) => {
                    let name = &spec.basis_names()[i];
                    if powers.is_empty() {
                        name.clone()
                    } else {
                        format!("{name} * {}", powers.join(" * "))
                    }
                }
                CoefKind::Vector => {
                    let v = c.to_string();
                    if powers.is_empty() {
                        v
                    } else {
                        format!("{v} * {}", powers.join(" * "))
                    }
                }
            };
            pieces.push(piece);
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = pieces[0].clone();
    for piece in &pieces[1..] {
        if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

impl fmt::Display for OreElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", canonical_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{self, SplitMix64};

    #[test]
    fn differential_normalization() {
        let ctx = OreContext::diff_rat();
        // x*y normalizes to y x + 1
        let e = parse_element("x*y", &ctx).unwrap();
        assert_eq!(canonical_text(&e), "y * x + 1");
    }

    #[test]
    fn octonion_basis_product() {
        let ctx = OreContext::diff_oct();
        let e = parse_element("e1*e1", &ctx).unwrap();
        assert_eq!(canonical_text(&e), "-1");
    }

    #[test]
    fn zero_parses_to_zero() {
        let ctx = OreContext::diff_rat();
        let e = parse_element("0", &ctx).unwrap();
        assert!(e.is_zero());
        assert_eq!(canonical_text(&e), "0");
    }

    #[test]
    fn grouping_is_preserved() {
        let ctx = OreContext::diff_oct();
        // (e1*e2)*e4 differs from e1*(e2*e4) in a non-associative algebra.
        let l = parse_element("(e1*e2)*e4", &ctx).unwrap();
        let r = parse_element("e1*(e2*e4)", &ctx).unwrap();
        assert_ne!(l, r);
        // Left-to-right default matches explicit left grouping.
        let d = parse_element("e1*e2*e4", &ctx).unwrap();
        assert_eq!(d, l);
    }

    #[test]
    fn rationals_powers_and_vectors() {
        let ctx = OreContext::diff_oct();
        let e = parse_element("2/3 * y^2 * x - [0, 1, 0, 0, 0, 0, 0, 0] * x^2", &ctx).unwrap();
        assert_eq!(
            canonical_text(&e),
            "[0, -1, 0, 0, 0, 0, 0, 0] * x^2 + 2/3 * y^2 * x"
        );
    }

    #[test]
    fn errors_carry_positions() {
        let ctx = OreContext::diff_rat();
        match parse_element("x + e7", &ctx) {
            Err(Error::Syntax {
                line: 1,
                col: 5,
                msg,
            }) => {
                assert!(msg.contains("e7"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_element("x +", &ctx).is_err());
        assert!(parse_element("(x", &ctx).is_err());
        assert!(parse_element("x^y", &ctx).is_err());
        assert!(parse_element("1/0", &ctx).is_err());
        assert!(parse_element("[1, 2]", &ctx).is_err());
    }

    #[test]
    fn coeff_poly_mode_rejects_x() {
        let spec = AlgebraSpec::rationals();
        assert!(parse_coeff_poly("y^2 + 1", &spec).is_ok());
        assert!(parse_coeff_poly("x", &spec).is_err());
    }

    #[test]
    fn print_parse_round_trip_on_random_elements() {
        for ctx in [OreContext::diff_rat(), OreContext::diff_oct()] {
            let mut rng = SplitMix64::new(4242);
            for _ in 0..40 {
                let deg = rng.below(4) as usize;
                let coeffs = (0..=deg)
                    .map(|_| sample::coeff_poly(ctx.algebra(), &mut rng, 3))
                    .collect();
                let e = OreElem::from_coeffs(&ctx, coeffs);
                let text = canonical_text(&e);
                let back = parse_element(&text, &ctx).unwrap();
                assert_eq!(back, e, "round trip failed for {text}");
                assert_eq!(canonical_text(&back), text);
            }
        }
    }

    #[test]
    fn unary_minus() {
        let ctx = OreContext::diff_rat();
        let e = parse_element("-x + 1", &ctx).unwrap();
        assert_eq!(canonical_text(&e), "-x + 1");
        let f = parse_element("-3/2", &ctx).unwrap();
        assert_eq!(canonical_text(&f), "-3/2");
    }
}
