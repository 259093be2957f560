//! Text grammar for polynomials and polynomial maps.
//!
//! ```text
//! map    := '(' expr (',' expr)* ')'
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'x' index | 't' | '(' expr ')'
//! ```
//!
//! Division and negative powers are only accepted for units, i.e. nonzero
//! constants times a power of `t`. Printing is canonical: terms in descending
//! graded-lex order (then descending power of `t`), explicit `*` and `^`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::field::{Ring, Scalar, ScalarField};
use super::laurent::{LaurentRing, LaurentScalar};
use super::poly::MultiPoly;

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownVariable(String),
    /// A rational literal whose denominator vanishes in the field.
    FieldLiteral(String),
    DivisionByZero,
    NonUnitDivision,
    NonUnitPower,
    ExponentTooLarge,
    /// The parameter `t` appeared where only constant coefficients are allowed.
    UnexpectedParameter,
    TrailingInput,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::FieldLiteral(s) => write!(f, "literal `{s}` is not defined in this field"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::NonUnitDivision => write!(f, "division by a non-unit"),
            ParseErrorKind::NonUnitPower => write!(f, "negative power of a non-unit"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
            ParseErrorKind::UnexpectedParameter => write!(f, "parameter `t` not allowed here"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input"),
        }
    }
}

/// A parsed map: either over the base field, or a family in `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedComponents {
    Plain(Vec<MultiPoly<ScalarField>>),
    Family(Vec<MultiPoly<LaurentRing>>),
}

/// Parse a tuple `(e1, ..., en)`; the arity fixes the variables `x1..xn`.
/// Components mentioning `t` turn the whole tuple into a family.
pub fn parse_components(src: &str, field: &ScalarField) -> Result<ParsedComponents, ParseError> {
    let nvars = count_components(src)?;
    let mut p = Parser::new(src, field, nvars);
    p.skip_ws();
    p.expect(b'(', "`(`")?;
    let mut comps = Vec::with_capacity(nvars);
    loop {
        comps.push(p.expr()?.poly);
        p.skip_ws();
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b')') => {
                p.pos += 1;
                break;
            }
            Some(c) => return Err(p.err(ParseErrorKind::UnexpectedChar(c as char))),
            None => return Err(p.err(ParseErrorKind::UnexpectedEnd)),
        }
    }
    p.finish()?;
    if p.saw_t {
        Ok(ParsedComponents::Family(comps))
    } else {
        let comps = comps.iter().map(drop_parameter).collect::<Option<Vec<_>>>();
        Ok(ParsedComponents::Plain(comps.expect("no t present")))
    }
}

/// Parse a single polynomial in `x1..x{nvars}` over the base field.
pub fn parse_polynomial(src: &str, field: &ScalarField, nvars: usize) -> Result<MultiPoly<ScalarField>, ParseError> {
    let mut p = Parser::new(src, field, nvars);
    let start = p.pos;
    let v = p.expr()?;
    p.finish()?;
    drop_parameter(&v.poly).ok_or(ParseError {
        pos: start,
        kind: ParseErrorKind::UnexpectedParameter,
    })
}

/// Parse a single polynomial that may mention `t`.
pub fn parse_laurent_polynomial(
    src: &str,
    field: &ScalarField,
    nvars: usize,
) -> Result<MultiPoly<LaurentRing>, ParseError> {
    let mut p = Parser::new(src, field, nvars);
    let v = p.expr()?;
    p.finish()?;
    Ok(v.poly)
}

fn drop_parameter(p: &MultiPoly<LaurentRing>) -> Option<MultiPoly<ScalarField>> {
    let field = p.ring().base;
    p.try_map_coefficients(&field, |c| match c.as_monomial() {
        Some((s, 0)) => Ok(s),
        _ => Err(crate::error::Error::InvalidArgument("depends on t".into())),
    })
    .ok()
}

fn count_components(src: &str) -> Result<usize, ParseError> {
    let mut depth = 0i32;
    let mut count = 0usize;
    let mut opened = false;
    for (i, b) in src.bytes().enumerate() {
        match b {
            b'(' => {
                depth += 1;
                if depth == 1 && !opened {
                    opened = true;
                    count = 1;
                }
            }
            b')' => depth -= 1,
            b',' if depth == 1 => count += 1,
            b',' if depth == 0 => {
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnexpectedChar(','),
                })
            }
            _ => {}
        }
    }
    if !opened {
        let pos = src.len() - src.trim_start().len();
        return Err(ParseError {
            pos,
            kind: ParseErrorKind::Expected("`(`"),
        });
    }
    Ok(count)
}

struct Value {
    poly: MultiPoly<LaurentRing>,
    /// Set when the value is a bare integer literal.
    literal: Option<BigInt>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: LaurentRing,
    nvars: usize,
    saw_t: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: &ScalarField, nvars: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            ring: LaurentRing::new(*field),
            nvars,
            saw_t: false,
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { pos: self.pos, kind }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8, what: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else if self.peek().is_none() {
            Err(self.err(ParseErrorKind::UnexpectedEnd))
        } else {
            Err(self.err(ParseErrorKind::Expected(what)))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            Err(self.err(ParseErrorKind::TrailingInput))
        } else {
            Ok(())
        }
    }

    fn plain(&self, poly: MultiPoly<LaurentRing>) -> Value {
        Value { poly, literal: None }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.plain(&acc.poly + &rhs.poly);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.plain(&acc.poly - &rhs.poly);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.plain(&acc.poly * &rhs.poly);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let inv = self.unit_inverse(&rhs).map_err(|kind| {
                        let kind = match (kind, &acc.literal, &rhs.literal) {
                            (ParseErrorKind::DivisionByZero, Some(n), Some(d)) if !d.is_zero() => {
                                ParseErrorKind::FieldLiteral(format!("{n}/{d}"))
                            }
                            (ParseErrorKind::DivisionByZero, None, Some(d)) if !d.is_zero() => {
                                ParseErrorKind::FieldLiteral(format!("1/{d}"))
                            }
                            (k, _, _) => k,
                        };
                        ParseError { pos: at, kind }
                    })?;
                    acc = self.plain(&acc.poly * &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unit_inverse(&self, v: &Value) -> Result<MultiPoly<LaurentRing>, ParseErrorKind> {
        if v.poly.is_zero() {
            return Err(ParseErrorKind::DivisionByZero);
        }
        if !v.poly.is_constant() {
            return Err(ParseErrorKind::NonUnitDivision);
        }
        let c = v.poly.constant_term();
        let inv = self.ring.unit_inverse(&c).ok_or(ParseErrorKind::NonUnitDivision)?;
        Ok(MultiPoly::constant(&self.ring, self.nvars, inv))
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(Value {
                    poly: v.poly.neg(),
                    literal: v.literal.map(|n| -n),
                })
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        self.skip_ws();
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let digits_at = self.pos;
        let n = self.integer()?.ok_or(ParseError {
            pos: digits_at,
            kind: ParseErrorKind::Expected("exponent"),
        })?;
        let e: u32 = u32::try_from(&n)
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or(ParseError {
                pos: digits_at,
                kind: ParseErrorKind::ExponentTooLarge,
            })?;
        let b = if negative {
            match self.unit_inverse(&base) {
                Ok(inv) => inv,
                Err(ParseErrorKind::NonUnitDivision) => {
                    return Err(ParseError {
                        pos: at,
                        kind: ParseErrorKind::NonUnitPower,
                    })
                }
                Err(kind) => return Err(ParseError { pos: at, kind }),
            }
        } else {
            base.poly
        };
        Ok(self.plain(b.pow(e)))
    }

    fn integer(&mut self) -> Result<Option<BigInt>, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(Some(s.parse().expect("decimal digits")))
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')', "`)`")?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?.expect("at least one digit");
                let c = self.ring.base.from_bigint(&n);
                let poly = MultiPoly::constant(&self.ring, self.nvars, self.ring.embed(&c));
                Ok(Value { poly, literal: Some(n) })
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "t" {
                    self.saw_t = true;
                    let poly = MultiPoly::constant(&self.ring, self.nvars, self.ring.t());
                    return Ok(self.plain(poly));
                }
                let index = name
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|i| (1..=self.nvars).contains(i))
                    .ok_or(ParseError {
                        pos: start,
                        kind: ParseErrorKind::UnknownVariable(name.to_string()),
                    })?;
                Ok(self.plain(MultiPoly::var(&self.ring, self.nvars, index - 1)))
            }
            Some(c) => Err(self.err(ParseErrorKind::UnexpectedChar(c as char))),
        }
    }
}

fn abs_scalar(field: &ScalarField, c: &Scalar) -> Scalar {
    if c.is_negative() {
        field.neg(c)
    } else {
        c.clone()
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.ring().base_field();
        let mut first = true;
        for (m, c) in self.terms().rev() {
            for (k, s) in self.ring().expand(c) {
                let negative = s.is_negative();
                if first {
                    if negative {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if negative { " - " } else { " + " })?;
                }
                first = false;
                let mut parts: Vec<String> = Vec::new();
                let a = abs_scalar(&field, &s);
                let has_rest = k != 0 || m.total_degree() > 0;
                if !field.is_one(&a) || !has_rest {
                    parts.push(a.to_string());
                }
                match k {
                    0 => {}
                    1 => parts.push("t".into()),
                    _ => parts.push(format!("t^{k}")),
                }
                for (i, e) in m.exponents().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => parts.push(format!("x{}", i + 1)),
                        _ => parts.push(format!("x{}^{e}", i + 1)),
                    }
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let a = match c {
                Scalar::Rational(q) if negative => Scalar::Rational(-q.clone()),
                other => other.clone(),
            };
            let one =
                matches!(&a, Scalar::Rational(q) if num_traits::One::is_one(q)) || matches!(a, Scalar::Residue(1));
            match k {
                0 => write!(f, "{a}")?,
                _ if one => write!(f, "t^{k}")?,
                _ => write!(f, "{a}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    fn q() -> ScalarField {
        ScalarField::Rationals
    }

    fn plain(src: &str, field: &ScalarField) -> Vec<MultiPoly<ScalarField>> {
        match parse_components(src, field).unwrap() {
            ParsedComponents::Plain(v) => v,
            ParsedComponents::Family(_) => panic!("unexpected family"),
        }
    }

    #[test]
    fn parses_and_prints_henon() {
        let v = plain("(-x2, x1 + x2^2)", &q());
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].to_string(), "-x2");
        assert_eq!(v[1].to_string(), "x2^2 + x1");
    }

    #[test]
    fn family_detection() {
        match parse_components("(x1 + t*x2^2, x2)", &q()).unwrap() {
            ParsedComponents::Family(v) => assert_eq!(v[0].to_string(), "t*x2^2 + x1"),
            ParsedComponents::Plain(_) => panic!("expected family"),
        }
    }

    #[test]
    fn field_literal_errors() {
        let f2 = ScalarField::prime(2).unwrap();
        let e = parse_components("(x1 + 1/2, x2)", &f2).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::FieldLiteral(_)), "{e:?}");
        let f3 = ScalarField::prime(3).unwrap();
        let v = plain("(x1 + 1/2, x2)", &f3);
        assert_eq!(v[0].to_string(), "x1 + 2");
    }

    #[test]
    fn error_positions() {
        let e = parse_components("(x1 + x3, x2)", &q()).unwrap_err();
        assert_eq!(
            e,
            ParseError {
                pos: 6,
                kind: ParseErrorKind::UnknownVariable("x3".into())
            }
        );
        let e = parse_components("(x1 + , x2)", &q()).unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse_components("(x1/x2, x2)", &q()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonUnitDivision);
        let e = parse_components("(x1, x2) x", &q()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::TrailingInput);
        let e = parse_components("(x1^-1, x2)", &q()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonUnitPower);
    }

    #[test]
    fn units_and_negative_powers() {
        match parse_components("(x1/t, t*x2 + x1^2 + t^-1)", &q()).unwrap() {
            ParsedComponents::Family(v) => {
                assert_eq!(v[0].to_string(), "t^-1*x1");
                assert_eq!(v[1].to_string(), "x1^2 + t*x2 + t^-1");
            }
            ParsedComponents::Plain(_) => panic!("expected family"),
        }
        let v = plain("(1/2*x2, 2^-1*x1 - 3/4)", &q());
        assert_eq!(v[0].to_string(), "1/2*x2");
        assert_eq!(v[1].to_string(), "1/2*x1 - 3/4");
    }

    #[test]
    fn canonical_order() {
        let v = plain("(1 + x2 + x1 + x1*x2 + x2^3 - 1/2*x1^2*x2, x2)", &q());
        assert_eq!(v[0].to_string(), "-1/2*x1^2*x2 + x2^3 + x1*x2 + x1 + x2 + 1");
        assert_eq!(v[0].coefficient(&[2, 1]), rat(-1, 2));
    }

    #[test]
    fn single_polynomial() {
        let p = parse_polynomial("x1^2 + 1", &q(), 1).unwrap();
        assert_eq!(p.to_string(), "x1^2 + 1");
        assert!(parse_polynomial("x1 + t", &q(), 1).is_err());
    }
}
