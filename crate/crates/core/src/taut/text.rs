//! Textual form of surface classes.
//!
//! Grammar (1-based indices):
//!
//! ```text
//! class   := term (('+' | '-') term)*
//! term    := [coeff '*'] factor ('*' factor)* | coeff
//! coeff   := integer | integer '/' integer
//! factor  := 'D(' idx ',' idx ')' | 'c_' idx | 'a' basis '_' idx | '1'
//! ```
//!
//! Examples: `3/2*D(1,2)*c_3 - a1_2*c_1`, `1`, `-D(1,3)`.

use super::{Label, Monomial, SurfaceClass, TautError};
use crate::{q1, qi, Rat};
use num::{BigInt, One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

pub(super) fn format_class(c: &SurfaceClass, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, coeff) in c.terms() {
        let neg = coeff.is_negative();
        let abs = if neg { -coeff.clone() } else { coeff.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() {
            factors.push(format_rat(&abs));
        }
        for &(i, j) in m.pairs() {
            factors.push(format!("D({},{})", i + 1, j + 1));
        }
        for (i, &l) in m.labels().iter().enumerate() {
            match l {
                Label::One => {}
                Label::Point => factors.push(format!("c_{}", i + 1)),
                Label::Div(b) => factors.push(format!("a{}_{}", b + 1, i + 1)),
            }
        }
        if factors.is_empty() {
            factors.push("1".to_string());
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a class from the textual grammar. `arity` fixes the ambient power
/// of the surface; every index must lie in `1..=arity`.
pub fn parse_class(s: &str, arity: usize) -> Result<SurfaceClass, TautError> {
    let mut p = Parser { chars: s.chars().collect(), pos: 0, arity };
    let c = p.class()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(TautError::Parse(format!("trailing input at offset {}", p.pos)));
    }
    Ok(c)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    arity: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<(), TautError> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            other => Err(TautError::Parse(format!("expected '{}', found {:?}", c, other))),
        }
    }

    fn class(&mut self) -> Result<SurfaceClass, TautError> {
        let mut out = SurfaceClass::zero(self.arity);
        let mut sign = q1();
        if self.peek() == Some('-') {
            self.bump();
            sign = qi(-1);
        } else if self.peek() == Some('+') {
            self.bump();
        }
        loop {
            let t = self.term()?;
            out = out.add(&t.scale(&sign));
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign = q1();
                }
                Some('-') => {
                    self.bump();
                    sign = qi(-1);
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<SurfaceClass, TautError> {
        let mut coeff = q1();
        let mut mono = Monomial::one(self.arity);
        let mut pending: Vec<(usize, Label)> = Vec::new();
        let mut pending_pairs: Vec<(usize, usize)> = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    if n == BigInt::one() && !self.starts_slash() {
                        // bare '1' factor
                    } else {
                        let mut r = Rat::from_integer(n);
                        if self.peek() == Some('/') {
                            self.bump();
                            let d = self.integer()?;
                            if d.is_zero() {
                                return Err(TautError::Parse("zero denominator".into()));
                            }
                            r = r / Rat::from_integer(d);
                        }
                        coeff *= r;
                    }
                }
                Some('D') => {
                    self.bump();
                    self.expect('(')?;
                    let i = self.index()?;
                    self.expect(',')?;
                    let j = self.index()?;
                    self.expect(')')?;
                    if i == j {
                        return Err(TautError::Parse("diagonal needs distinct indices".into()));
                    }
                    pending_pairs.push((i, j));
                }
                Some('c') => {
                    self.bump();
                    self.expect('_')?;
                    let i = self.index()?;
                    pending.push((i, Label::Point));
                }
                Some('a') => {
                    self.bump();
                    let b = self.usize_lit()?;
                    if b == 0 {
                        return Err(TautError::Parse("divisor basis index is 1-based".into()));
                    }
                    self.expect('_')?;
                    let i = self.index()?;
                    pending.push((i, Label::Div(b - 1)));
                }
                _ => return Err(TautError::Parse(format!("unexpected input at offset {}", self.pos))),
            }
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        // Build the monomial literally; factors in one term must be disjoint
        // (the grammar denotes canonical monomials, not products to reduce).
        for (i, j) in pending_pairs {
            if mono.labels[i] != Label::One
                || mono.labels[j] != Label::One
                || mono.partner(i).is_some()
                || mono.partner(j).is_some()
            {
                return Err(TautError::Parse("factors in a term must use disjoint indices".into()));
            }
            mono = mono.with_pair(i, j);
        }
        for (i, l) in pending {
            if mono.labels[i] != Label::One || mono.partner(i).is_some() {
                return Err(TautError::Parse("factors in a term must use disjoint indices".into()));
            }
            mono.labels[i] = l;
        }
        Ok(SurfaceClass::monomial(mono).scale(&coeff))
    }

    fn starts_slash(&mut self) -> bool {
        self.peek() == Some('/')
    }

    fn integer(&mut self) -> Result<BigInt, TautError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(TautError::Parse(format!("expected integer at offset {}", start)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        BigInt::from_str(&s).map_err(|e| TautError::Parse(e.to_string()))
    }

    fn usize_lit(&mut self) -> Result<usize, TautError> {
        let n = self.integer()?;
        n.to_string().parse::<usize>().map_err(|e| TautError::Parse(e.to_string()))
    }

    fn index(&mut self) -> Result<usize, TautError> {
        let n = self.usize_lit()?;
        if n == 0 || n > self.arity {
            return Err(TautError::Parse(format!("index {} out of range 1..={}", n, self.arity)));
        }
        Ok(n - 1)
    }
}
