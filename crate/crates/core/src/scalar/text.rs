//! Canonical printing and parsing.
//!
//! Printed form: signed terms by descending power of `q`, each
//! `coeff*q^e*r2*r3`, then `/[m]^p` factors. Half powers print as `q^{k/2}`.
//! The parser accepts a superset: implicit products, parentheses, `s`,
//! `[m]!`, `^{k/2}` on monomials and division by invertible monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Mono, Scalar};
use crate::error::{Error, Result};

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_qpow(spow: i32) -> Option<String> {
    if spow == 0 {
        None
    } else if spow % 2 == 0 {
        let k = spow / 2;
        Some(if k == 1 { "q".to_string() } else { format!("q^{k}") })
    } else {
        Some(format!("q^{{{spow}/2}}"))
    }
}

fn print_num(s: &Scalar) -> (String, usize) {
    let mut terms: Vec<(&Mono, &BigRational)> = s.num.iter().collect();
    terms.sort_by(|a, b| b.0.spow.cmp(&a.0.spow).then(a.0.a2.cmp(&b.0.a2)).then(a.0.a3.cmp(&b.0.a3)));
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if let Some(p) = fmt_qpow(m.spow) {
            factors.push(p);
        }
        if m.a2 {
            factors.push("r2".into());
        }
        if m.a3 {
            factors.push("r3".into());
        }
        if factors.is_empty() {
            out.push_str(&fmt_rational(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    (out, terms.len())
}

pub(super) fn print(s: &Scalar) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let (num, n) = print_num(s);
    if s.den.is_empty() {
        return num;
    }
    let factors: Vec<String> = s.den.iter().map(|(m, p)| if *p == 1 { format!("[{m}]") } else { format!("[{m}]^{p}") }).collect();
    let den = if factors.len() == 1 { factors[0].clone() } else { format!("({})", factors.join("*")) };
    if n == 1 && !num.contains('/') {
        format!("{num}/{den}")
    } else {
        format!("({num})/{den}")
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Q,
    S,
    R2,
    R3,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Bang,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    while i < bytes.len() {
        let c = src[i..].chars().next().unwrap();
        let start = i;
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().map_err(|_| err(start, "bad integer"))?;
            let mut v = BigRational::from_integer(n);
            // `a/b` written without spaces is one rational literal
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let ds = i + 1;
                let mut j = ds;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let d: BigInt = src[ds..j].parse().map_err(|_| err(ds, "bad integer"))?;
                if d.is_zero() {
                    return Err(err(ds, "zero denominator"));
                }
                v /= BigRational::from_integer(d);
                i = j;
            }
            out.push((start, Tok::Num(v)));
            continue;
        }
        let tok = match c {
            'q' => Tok::Q,
            's' => Tok::S,
            'r' => {
                let next = bytes.get(i + 1).copied();
                i += 1;
                match next {
                    Some(b'2') => Tok::R2,
                    Some(b'3') => Tok::R3,
                    _ => return Err(err(start, "expected r2 or r3")),
                }
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '!' => Tok::Bang,
            _ => return Err(err(start, &format!("unexpected character {c:?}"))),
        };
        i += c.len_utf8();
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

/// Exponent: integer numerator over 1 or 2.
struct Exp {
    num: i64,
    half: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(&format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = if self.eat(&Tok::Minus) {
            -self.term()?
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc + self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Q | Tok::S | Tok::R2 | Tok::R3 | Tok::LParen | Tok::LBrack))
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                let neg = self.eat(&Tok::Minus);
                let f = self.factor()?;
                acc = if neg { -(acc * f) } else { acc * f };
            } else if self.peek() == Some(&Tok::Slash) {
                let at = self.here();
                self.pos += 1;
                let d = self.factor()?;
                acc = divide(&acc, &d).map_err(|e| match e {
                    Error::UnsupportedDivision(m) => Error::Parse { pos: at, msg: format!("cannot divide by {m}") },
                    other => other,
                })?;
            } else if self.starts_atom() {
                acc = acc * self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.here();
        let e = self.exponent()?;
        power(&base, &e).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().cloned() {
            Some(Tok::Num(v)) if v.is_integer() => {
                self.pos += 1;
                let n: i64 =
                    v.numer().try_into().map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                Ok(if neg { -n } else { n })
            }
            _ => self.fail("expected integer"),
        }
    }

    fn exponent(&mut self) -> Result<Exp> {
        if self.eat(&Tok::LBrace) {
            let neg = self.eat(&Tok::Minus);
            let (num, half) = match self.peek().cloned() {
                Some(Tok::Num(v)) => {
                    self.pos += 1;
                    let two = BigRational::from_integer(BigInt::from(2));
                    if v.is_integer() {
                        let mut n: i64 = v
                            .numer()
                            .try_into()
                            .map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                        let mut half = false;
                        if self.eat(&Tok::Slash) {
                            let d = self.integer()?;
                            match d {
                                1 => {}
                                2 => half = true,
                                _ => return self.fail("only half-integer exponents are supported"),
                            }
                        }
                        if half && n % 2 == 0 {
                            n /= 2;
                            half = false;
                        }
                        (n, half)
                    } else if (&v * &two).is_integer() {
                        let n: i64 = (&v * &two)
                            .numer()
                            .try_into()
                            .map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                        (n, true)
                    } else {
                        return self.fail("only half-integer exponents are supported");
                    }
                }
                _ => return self.fail("expected exponent"),
            };
            self.expect(Tok::RBrace, "'}'")?;
            Ok(Exp { num: if neg { -num } else { num }, half })
        } else {
            Ok(Exp { num: self.integer()?, half: false })
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        let Some(t) = self.peek().cloned() else {
            return self.fail("unexpected end of input");
        };
        self.pos += 1;
        match t {
            Tok::Num(v) => Ok(Scalar::from_rational(v)),
            Tok::Q => Ok(Scalar::q()),
            Tok::S => Ok(Scalar::s_pow(1)),
            Tok::R2 => Ok(Scalar::r2()),
            Tok::R3 => Ok(Scalar::r3()),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            Tok::LBrack => {
                let m = self.integer()?;
                self.expect(Tok::RBrack, "']'")?;
                if self.eat(&Tok::Bang) {
                    if m < 0 {
                        return self.fail("negative factorial");
                    }
                    return Ok(Scalar::qfactorial(m as u32));
                }
                Ok(Scalar::qnum(m))
            }
            _ => {
                self.pos -= 1;
                self.fail("expected a value")
            }
        }
    }
}

fn divide(a: &Scalar, d: &Scalar) -> Result<Scalar> {
    if d.is_zero() {
        return Err(Error::UnsupportedDivision("0".into()));
    }
    // a pure q-number product divides through the denominator
    if let Some(m) = d.as_monomial() {
        if m.qhalf == 0 && m.h2 % 2 == 0 && m.h3 % 2 == 0 && m.coeff.is_one() {
            let mut num = BTreeMap::new();
            let mut den = Vec::new();
            for (k, h) in [(2u32, m.h2 / 2), (3u32, m.h3 / 2)] {
                if h > 0 {
                    den.push((k, h as u32));
                } else if h < 0 {
                    num.insert(k, (-h) as u32);
                }
            }
            let mut out = a.clone();
            for (k, p) in num {
                out = out * Scalar::qnum(k as i64).powi(p as i32)?;
            }
            if den.is_empty() {
                return Ok(out);
            }
            return out.div_qnums(&den);
        }
    }
    if d.den.is_empty() && d.num.len() > 1 && !d.num.keys().any(|m| m.a2 || m.a3) {
        let qs: Vec<u32> = (2..=6).collect();
        for m in qs {
            if d == &Scalar::qnum(m as i64) {
                return a.div_qnums(&[(m, 1)]);
            }
        }
    }
    a.checked_div(d)
}

fn power(base: &Scalar, e: &Exp) -> Result<Scalar> {
    if !e.half {
        return base.powi(e.num as i32);
    }
    let root = base.sqrt()?;
    root.powi(e.num as i32)
}

pub(super) fn parse(src: &str) -> Result<Scalar> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(v)
}
