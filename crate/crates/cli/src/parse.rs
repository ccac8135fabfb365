//! Recursive-descent parser for free-algebra expressions.
//!
//! ```text
//! expr      := term { ("+"|"-") term } ;
//! term      := factor { "*" factor } ;
//! factor    := atom [ "^" UINT ] ;
//! atom      := scalar | generator | "(" expr ")" ["i"] | "star" "(" expr ")" ;
//! generator := "t" UINT | "b" UINT ;
//! scalar    := [SIGN] (UINT ["/" UINT])? ["i"] ;
//! ```
//!
//! `θ` followed by digits is accepted for `t`, and `θ` with a combining
//! macron or overline for `b`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use fta_core::{Element, Letter, LetterKind, Rational, Scalar};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    Lexical(char),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("generator index out of range")]
    IndexOutOfRange,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent larger than {MAX_EXPONENT}")]
    ExponentTooLarge,
}

/// A parse failure at a 1-based byte offset.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(Scalar),
    Gen(Letter),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Star(Box<Expr>),
}

impl Expr {
    /// The canonical algebra element this expression denotes.
    pub fn lower(&self) -> Element {
        match self {
            Expr::Scalar(c) => Element::scalar(c.clone()),
            Expr::Gen(l) => Element::from(fta_core::Word::from_letters([*l])),
            Expr::Sum(a, b) => &a.lower() + &b.lower(),
            Expr::Diff(a, b) => &a.lower() - &b.lower(),
            Expr::Product(a, b) => &a.lower() * &b.lower(),
            Expr::Pow(a, e) => a.lower().pow(*e),
            Expr::Star(a) => a.lower().star(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(..) | Expr::Diff(..) => 1,
            Expr::Product(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Scalar(_) | Expr::Gen(_) | Expr::Star(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Scalar(c) => write!(f, "{c}"),
            Expr::Gen(l) => write!(f, "{l}"),
            Expr::Sum(a, b) | Expr::Diff(a, b) => {
                a.write_at(f, 1)?;
                write!(
                    f,
                    "{}",
                    if matches!(self, Expr::Sum(..)) {
                        " + "
                    } else {
                        " - "
                    }
                )?;
                b.write_at(f, 2)
            }
            Expr::Product(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 4)?;
                write!(f, "^{e}")
            }
            Expr::Star(a) => {
                write!(f, "star(")?;
                a.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Plus,
    Minus,
    Times,
    Slash,
    Caret,
    LParen,
    RParen,
    I,
    Gen(LetterKind, u32),
    StarKw,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Times => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::I => write!(f, "`i`"),
            Tok::Gen(LetterKind::Theta, j) => write!(f, "`t{j}`"),
            Tok::Gen(LetterKind::Bar, j) => write!(f, "`b{j}`"),
            Tok::StarKw => write!(f, "`star`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn subscript_digit(c: char) -> Option<char> {
    ('₀'..='₉')
        .contains(&c)
        .then(|| char::from(b'0' + (c as u32 - '₀' as u32) as u8))
}

/// Tokens paired with their 0-based byte offsets.
fn lex(text: &str, n: u32) -> Result<Vec<(Tok, usize)>, ParseError> {
    let err = |kind, offset: usize| ParseError {
        kind,
        offset: offset + 1,
    };
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();

    let digits = |chars: &mut std::iter::Peekable<std::str::CharIndices<'_>>| {
        let mut s = String::new();
        while let Some(&(_, c)) = chars.peek() {
            if c.is_ascii_digit() {
                s.push(c);
            } else if let Some(d) = subscript_digit(c) {
                s.push(d);
            } else {
                break;
            }
            chars.next();
        }
        s
    };

    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Times),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            out.push((tok, pos));
            continue;
        }
        if c.is_ascii_digit() {
            let s = digits(&mut chars);
            out.push((Tok::Num(s.parse().expect("digit run")), pos));
            continue;
        }
        let kind = if c == 'θ' {
            chars.next();
            match chars.peek() {
                Some(&(_, '\u{0304}')) | Some(&(_, '\u{0305}')) => {
                    chars.next();
                    LetterKind::Bar
                }
                _ => LetterKind::Theta,
            }
        } else if c.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !c.is_ascii_alphabetic() {
                    break;
                }
                ident.push(c);
                chars.next();
            }
            match ident.as_str() {
                "star" => {
                    out.push((Tok::StarKw, pos));
                    continue;
                }
                "i" => {
                    out.push((Tok::I, pos));
                    continue;
                }
                "t" => LetterKind::Theta,
                "b" => LetterKind::Bar,
                _ => return Err(err(ParseErrorKind::UnknownIdentifier(ident), pos)),
            }
        } else {
            return Err(err(ParseErrorKind::Lexical(c), pos));
        };
        while chars.peek().is_some_and(|&(_, c)| c.is_whitespace()) {
            chars.next();
        }
        let s = digits(&mut chars);
        if s.is_empty() {
            let found = chars
                .peek()
                .map_or("end of input".to_string(), |&(_, c)| format!("`{c}`"));
            let at = chars.peek().map_or(text.len(), |&(p, _)| p);
            return Err(err(
                ParseErrorKind::Unexpected {
                    expected: "generator index",
                    found,
                },
                at,
            ));
        }
        let index = s.parse::<u32>().ok().filter(|&j| j >= 1 && j <= n);
        match index {
            Some(j) => out.push((Tok::Gen(kind, j), pos)),
            None => return Err(err(ParseErrorKind::IndexOutOfRange, pos)),
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1 + 1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Unexpected {
                expected,
                found: self.peek().to_string(),
            },
            offset: self.offset(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Diff(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Times {
            self.bump();
            lhs = Expr::Product(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Num(e) => {
                let e = u32::try_from(&e)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or(ParseError {
                        kind: ParseErrorKind::ExponentTooLarge,
                        offset: at,
                    })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Gen(kind, index) => {
                self.bump();
                Ok(Expr::Gen(Letter { kind, index }))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                if *self.peek() == Tok::I {
                    self.bump();
                    return Ok(Expr::Product(
                        Box::new(inner),
                        Box::new(Expr::Scalar(Scalar::i())),
                    ));
                }
                Ok(inner)
            }
            Tok::StarKw => {
                self.bump();
                self.expect(Tok::LParen, "`(` after `star`")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Star(Box::new(inner)))
            }
            Tok::Plus | Tok::Minus | Tok::Num(_) | Tok::I => self.scalar(),
            _ => Err(self.unexpected("expression")),
        }
    }

    fn scalar(&mut self) -> Result<Expr, ParseError> {
        let negative = match self.peek() {
            Tok::Plus => {
                self.bump();
                false
            }
            Tok::Minus => {
                self.bump();
                true
            }
            _ => false,
        };
        let magnitude = match self.peek().clone() {
            Tok::Num(num) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let at = self.offset();
                    match self.bump() {
                        Tok::Num(den) if den.is_zero() => {
                            return Err(ParseError {
                                kind: ParseErrorKind::ZeroDenominator,
                                offset: at,
                            })
                        }
                        Tok::Num(den) => Some(Rational::new(num, den)),
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected("denominator"));
                        }
                    }
                } else {
                    Some(Rational::from_integer(num))
                }
            }
            _ => None,
        };
        let imaginary = *self.peek() == Tok::I;
        if imaginary {
            self.bump();
        }
        if magnitude.is_none() && !imaginary {
            return Err(self.unexpected("number or `i`"));
        }
        let mut value = magnitude.unwrap_or_else(Rational::one);
        if negative {
            value = -value;
        }
        Ok(Expr::Scalar(if imaginary {
            Scalar::imaginary(value)
        } else {
            Scalar::real(value)
        }))
    }
}

/// Parses `text`, rejecting generator indices outside `1..=n`.
pub fn parse(text: &str, n: u32) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text, n)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(e)
}

/// Parses without an upper bound on generator indices.
pub fn parse_unbounded(text: &str) -> Result<Expr, ParseError> {
    parse(text, u32::MAX)
}

/// Parses and lowers in one step.
pub fn parse_element(text: &str, n: u32) -> Result<Element, ParseError> {
    parse(text, n).map(|e| e.lower())
}

/// True when the scalar prints as a single literal (so the tree
/// round-trips through [`Expr`]'s `Display` unchanged).
pub fn is_literal_scalar(c: &Scalar) -> bool {
    c.re.is_zero() || c.im.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fta_core::Word;

    fn w(s: &str) -> Element {
        Element::from(s.parse::<Word>().unwrap())
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn grammar_examples() {
        let e = parse_element("t1*b2 + (1/2)i*t2^3", 2).unwrap();
        let expected = &w("t1 b2") + &w("t2 t2 t2").scale(&Scalar::imaginary(q(1, 2)));
        assert_eq!(e, expected);
        assert_eq!(parse_element("star(t1*t2)", 2).unwrap(), w("b2 b1"));
        assert_eq!(
            parse_element("1/2i*t1", 2).unwrap(),
            w("t1").scale(&Scalar::imaginary(q(1, 2)))
        );
        assert_eq!(
            parse_element("-i", 1).unwrap(),
            Element::scalar(Scalar::from_ints(0, -1))
        );
        assert_eq!(
            parse_element("t1 - -3", 1).unwrap(),
            &w("t1") - &Element::scalar(Scalar::from_ints(-3, 0))
        );
        assert_eq!(
            parse_element("(t1 + t2)^2", 2).unwrap(),
            parse_element("t1*t1 + t1*t2 + t2*t1 + t2*t2", 2).unwrap()
        );
        assert_eq!(parse_element("t1^0", 2).unwrap(), Element::one());
        assert_eq!(parse_element("2 * 3 - 6", 2).unwrap(), Element::zero());
    }

    #[test]
    fn precedence() {
        // ^ binds tighter than *, * tighter than +, products left-associative
        assert_eq!(
            parse("t1*t2^2 + t1", 2).unwrap(),
            Expr::Sum(
                Box::new(Expr::Product(
                    Box::new(Expr::Gen(Letter::theta(1))),
                    Box::new(Expr::Pow(Box::new(Expr::Gen(Letter::theta(2))), 2))
                )),
                Box::new(Expr::Gen(Letter::theta(1)))
            )
        );
        assert_eq!(parse_element("t1 - t2 - t1", 2).unwrap(), -&w("t2"));
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse_element("θ1*θ\u{0304}2", 2).unwrap(), w("t1 b2"));
        assert_eq!(
            parse_element("θ₂ θ\u{0305}₁", 2),
            Err(ParseError {
                kind: ParseErrorKind::Unexpected {
                    expected: "operator or end of input",
                    found: "`b1`".into()
                },
                offset: 7,
            })
        );
        assert_eq!(parse_element("θ₂*θ\u{0305}₁", 2).unwrap(), w("t2 b1"));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse("t3", 2).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::IndexOutOfRange);
        assert_eq!(e.offset, 1);
        assert_eq!(e.to_string(), "generator index out of range at byte 1");
        assert_eq!(
            parse("t1 + b0", 2).unwrap_err().kind,
            ParseErrorKind::IndexOutOfRange
        );
        let e = parse("t1 + 1/0", 2).unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::ZeroDenominator, 8));
        let e = parse("t1 # t2", 2).unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Lexical('#'), 4));
        assert!(matches!(
            parse("foo", 2).unwrap_err().kind,
            ParseErrorKind::UnknownIdentifier(_)
        ));
        assert!(matches!(
            parse("t1 +", 2).unwrap_err().kind,
            ParseErrorKind::Unexpected { .. }
        ));
        assert!(matches!(
            parse("(t1", 2).unwrap_err().kind,
            ParseErrorKind::Unexpected { .. }
        ));
        assert!(matches!(
            parse("-", 2).unwrap_err().kind,
            ParseErrorKind::Unexpected { .. }
        ));
        assert!(matches!(
            parse("t", 2).unwrap_err().kind,
            ParseErrorKind::Unexpected { .. }
        ));
        assert_eq!(
            parse("t1^99", 2).unwrap_err().kind,
            ParseErrorKind::ExponentTooLarge
        );
        assert!(matches!(
            parse("t1 t2", 2).unwrap_err().kind,
            ParseErrorKind::Unexpected { .. }
        ));
    }

    #[test]
    fn display_round_trips_simple_trees() {
        for text in [
            "t1*b2 + 1/2i*t2^3",
            "star(t1 - t2)*b1",
            "(t1 + t2)^2 - -3",
            "t1*(t2*b1)",
            "t1 - (t2 - b1)",
        ] {
            let e = parse(text, 2).unwrap();
            assert_eq!(parse(&e.to_string(), 2).unwrap(), e, "{text}");
        }
    }
}
