//! Input grammars: group words, series literals and Lie elements.
//!
//! Series: scalars `p/q`, generators `t0 t1 u0 u1`, `+ - *`, `exp( )`,
//! `log( )`, brackets `[a,b]` and parentheses. Operands written in different
//! coordinates are combined in Magnus coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use dmrb::liealg::LieElement;
use dmrb::{Coords, GroupWord, RingElement, RingSpec, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: expected {}, found {}", self.pos + 1, self.expected, self.found)
    }
}

#[derive(Debug)]
pub enum InputError {
    Syntax(SyntaxError),
    Eval(dmrb::Error),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Syntax(e) => e.fmt(f),
            InputError::Eval(e) => e.fmt(f),
        }
    }
}

impl From<SyntaxError> for InputError {
    fn from(e: SyntaxError) -> Self {
        InputError::Syntax(e)
    }
}

impl From<dmrb::Error> for InputError {
    fn from(e: dmrb::Error) -> Self {
        InputError::Eval(e)
    }
}

type PResult<T> = Result<T, InputError>;

fn err<T>(pos: usize, expected: &str, found: &str) -> PResult<T> {
    Err(SyntaxError { pos, expected: expected.into(), found: found.into() }.into())
}

/// `X0 X1^-1 X0^2`; `1` alone is the identity.
pub fn parse_group_word(text: &str) -> PResult<GroupWord> {
    let mut syl = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let pos = offset + text[offset..].find(tok).unwrap_or(0);
        offset = pos + tok.len();
        if tok == "1" {
            continue;
        }
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => match e.parse::<i64>() {
                Ok(e) => (b, e),
                Err(_) => return err(pos + b.len() + 1, "an integer exponent", e),
            },
            None => (tok, 1),
        };
        let g = match base {
            "X0" => 0,
            "X1" => 1,
            _ => return err(pos, "X0 or X1", base),
        };
        syl.push((g, exp));
    }
    Ok(GroupWord::from_syllables(&syl))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn show(&self) -> String {
        match self {
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> PResult<Vec<(usize, Tok)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(text[s..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((s, Tok::Ident(text[s..i].to_string())));
        } else if "+-*/()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or(c);
            return err(i, "a number, generator, operator or bracket", &format!("`{ch}`"));
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Val {
    Scalar(BigRational),
    Ser(Series),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    ring: RingSpec,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), &format!("`{c}`"), &self.peek().show())
        }
    }

    fn scalar(&self, q: &BigRational) -> PResult<RingElement> {
        Ok(self.ring.from_rational(q)?)
    }

    fn series(&self, v: Val, coords: Coords) -> PResult<Series> {
        match v {
            Val::Ser(s) => Ok(s),
            Val::Scalar(q) => Ok(Series::one(self.ring, self.n, coords).scale(&self.scalar(&q)?)),
        }
    }

    fn unify(&self, a: Series, b: Series) -> PResult<(Series, Series)> {
        if a.coords() == b.coords() {
            Ok((a, b))
        } else {
            Ok((a.to_t()?, b.to_t()?))
        }
    }

    fn combine(&self, a: Val, b: Val, op: char) -> PResult<Val> {
        let (a, b) = match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => {
                return Ok(Val::Scalar(match op {
                    '+' => x + y,
                    '-' => x - y,
                    _ => x * y,
                }))
            }
            (Val::Scalar(x), Val::Ser(s)) if op == '*' => return Ok(Val::Ser(s.scale(&self.scalar(&x)?))),
            (Val::Ser(s), Val::Scalar(x)) if op == '*' => return Ok(Val::Ser(s.scale(&self.scalar(&x)?))),
            (Val::Ser(s), other) => {
                let c = s.coords();
                (s, self.series(other, c)?)
            }
            (other, Val::Ser(s)) => {
                let c = s.coords();
                (self.series(other, c)?, s)
            }
        };
        let (a, b) = self.unify(a, b)?;
        Ok(Val::Ser(match op {
            '+' => &a + &b,
            '-' => &a - &b,
            _ => &a * &b,
        }))
    }

    fn expr(&mut self) -> PResult<Val> {
        let mut acc = if *self.peek() == Tok::Sym('-') {
            self.bump();
            let t = self.term()?;
            self.combine(Val::Scalar(BigRational::from_integer((-1).into())), t, '*')?
        } else {
            if *self.peek() == Tok::Sym('+') {
                self.bump();
            }
            self.term()?
        };
        while let Tok::Sym(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let t = self.term()?;
            acc = self.combine(acc, t, c)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Val> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            let f = self.factor()?;
            acc = self.combine(acc, f, '*')?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Val> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(p) => {
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Num(q) if q != BigInt::from(0) => Ok(Val::Scalar(BigRational::new(p, q))),
                        t => err(dpos, "a nonzero denominator", &t.show()),
                    }
                } else {
                    Ok(Val::Scalar(BigRational::from_integer(p)))
                }
            }
            Tok::Sym('-') => {
                let f = self.factor()?;
                self.combine(Val::Scalar(BigRational::from_integer((-1).into())), f, '*')
            }
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Sym('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                let a = self.series(a, Coords::ExpU)?;
                let b = self.series(b, a.coords())?;
                let (a, b) = self.unify(a, b)?;
                Ok(Val::Ser(a.bracket(&b)))
            }
            Tok::Ident(name) => match name.as_str() {
                "t0" | "t1" | "u0" | "u1" => {
                    let coords = if name.starts_with('t') { Coords::MagnusT } else { Coords::ExpU };
                    let i = if name.ends_with('0') { 0 } else { 1 };
                    Ok(Val::Ser(Series::generator(self.ring, self.n, coords, i)))
                }
                "exp" | "log" => {
                    self.expect('(')?;
                    let v = self.expr()?;
                    self.expect(')')?;
                    let s = self.series(v, Coords::MagnusT)?;
                    Ok(Val::Ser(if name == "exp" { s.exp()? } else { s.log()? }))
                }
                _ => err(pos, "t0, t1, u0, u1, exp or log", &format!("`{name}`")),
            },
            t => err(pos, "a number, generator, `(` or `[`", &t.show()),
        }
    }
}

fn parse_val(text: &str, ring: RingSpec, n: usize) -> PResult<Val> {
    let mut p = Parser { toks: lex(text)?, at: 0, ring, n };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return err(p.pos(), "an operator or end of input", &p.peek().show());
    }
    Ok(v)
}

/// A series literal at truncation `n`; pure scalars become constants in
/// Magnus coordinates.
pub fn parse_series(text: &str, ring: RingSpec, n: usize) -> PResult<Series> {
    match parse_val(text, ring, n)? {
        Val::Ser(s) => Ok(s),
        Val::Scalar(q) => Ok(Series::one(ring, n, Coords::MagnusT).scale(&ring.from_rational(&q)?)),
    }
}

/// A scalar literal such as `-2/3`, possibly written as an expression.
pub fn parse_scalar(text: &str, ring: RingSpec) -> PResult<RingElement> {
    match parse_val(text, ring, 0)? {
        Val::Scalar(q) => Ok(ring.from_rational(&q)?),
        Val::Ser(_) => err(0, "a scalar", "a series"),
    }
}

/// `nu ; x` with `x` a primitive series, or `x` alone for `nu = 0`.
pub fn parse_lie(text: &str, ring: RingSpec, n: usize) -> PResult<LieElement> {
    let (nu, x, shift) = match text.split_once(';') {
        Some((a, b)) => (parse_scalar(a, ring)?, b, a.len() + 1),
        None => (ring.zero(), text, 0),
    };
    let x = parse_series(x, ring, n).map_err(|e| match e {
        InputError::Syntax(mut s) => {
            s.pos += shift;
            InputError::Syntax(s)
        }
        other => other,
    })?;
    Ok(LieElement::new(nu, x)?)
}

/// A group word when the text looks like one, a series literal otherwise.
pub fn parse_group_or_series(text: &str, ring: RingSpec, n: usize) -> PResult<Series> {
    let t = text.trim();
    if t.is_empty() || t == "1" || t.starts_with('X') {
        Ok(parse_group_word(t)?.eval_magnus(ring, n))
    } else {
        parse_series(t, ring, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: RingSpec = RingSpec::Rational;

    #[test]
    fn group_words() {
        let g = parse_group_word("X0 X1^-1").unwrap();
        assert_eq!(g.syllables(), &[(0, 1), (1, -1)]);
        assert_eq!(parse_group_word(&g.to_string()).unwrap(), g);
        let e = parse_group_word("X0 Y1").unwrap_err();
        assert!(matches!(e, InputError::Syntax(SyntaxError { pos: 3, .. })), "{e}");
        let e = parse_group_word("X0^a").unwrap_err();
        assert!(matches!(e, InputError::Syntax(SyntaxError { pos: 3, .. })), "{e}");
    }

    #[test]
    fn series_literals() {
        let s = parse_series("1/2 * t1 + t0*t1", Q, 4).unwrap();
        assert_eq!(s.to_string(), "1/2*t1 + t0*t1");
        assert_eq!(parse_series(&s.to_string(), Q, 4).unwrap(), s);
        let g = parse_series("exp([u0,u1])", Q, 4).unwrap();
        assert!(g.is_grouplike());
        assert_eq!(parse_series("u0*u1 - u1*u0", Q, 4).unwrap(), parse_series("[u0,u1]", Q, 4).unwrap());
        // mixed coordinates meet in t
        let m = parse_series("log(1 + t0) - u0", Q, 4).unwrap();
        assert!(m.is_zero());
        assert_eq!(parse_series("-(t0)", Q, 3).unwrap(), parse_series("-1*t0", Q, 3).unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_series("t0 + * t1", Q, 3).unwrap_err();
        match e {
            InputError::Syntax(s) => {
                assert_eq!(s.pos, 5);
                assert!(s.expected.contains("number"));
            }
            other => panic!("{other}"),
        }
        assert!(matches!(parse_series("exp(t0", Q, 3), Err(InputError::Syntax(SyntaxError { pos: 6, .. }))));
        assert!(matches!(parse_series("t2", Q, 3), Err(InputError::Syntax(_))));
        assert!(matches!(parse_series("1/0", Q, 3), Err(InputError::Syntax(_))));
        assert!(matches!(parse_series("t0 t1", Q, 3), Err(InputError::Syntax(SyntaxError { pos: 3, .. }))));
    }

    #[test]
    fn scalars_and_lie() {
        assert_eq!(parse_scalar("-2/3", Q).unwrap().to_string(), "-2/3");
        assert!(parse_scalar("t0", Q).is_err());
        let a = parse_lie("12; [u0,u1]", Q, 4).unwrap();
        assert_eq!(a.nu().to_string(), "12");
        assert!(a.is_quad().unwrap());
        assert!(matches!(parse_lie("u0*u1", Q, 3), Err(InputError::Eval(_))));
        let p = RingSpec::parse("padic:3:2").unwrap();
        assert_eq!(parse_scalar("1/2", p).unwrap().to_string(), "5");
    }
}
