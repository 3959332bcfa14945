//! Exact coefficients: Laurent polynomials in `s = q^{1/2}` with the formal
//! radicals `r2 = √[2]` and `r3 = √[3]`, over products of q-numbers.

mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Monomial key `s^spow · r2^a2 · r3^a3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub spow: i32,
    pub a2: bool,
    pub a3: bool,
}

impl Mono {
    pub const ONE: Mono = Mono { spow: 0, a2: false, a3: false };

    pub fn s(spow: i32) -> Mono {
        Mono { spow, a2: false, a3: false }
    }

    fn radical(self) -> (bool, bool) {
        (self.a2, self.a3)
    }
}

/// A stored term of a numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub mono: Mono,
}

pub(crate) type Poly = BTreeMap<Mono, BigRational>;

/// Exact scalar `num / ∏ [m]^p`.
#[derive(Clone, Debug, Default)]
pub struct Scalar {
    num: Poly,
    den: BTreeMap<u32, u32>,
}

/// `q^{qhalf/2} · [2]^{h2/2} · [3]^{h3/2}` times a rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigRational,
    pub qhalf: i32,
    pub h2: i32,
    pub h3: i32,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn add_into(dst: &mut Poly, m: Mono, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match dst.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                dst.remove(&m);
            }
        }
        None => {
            dst.insert(m, c);
        }
    }
}

/// `s`-polynomial of `[m]`.
pub(crate) fn qnum_poly(m: u32) -> Poly {
    let mut p = Poly::new();
    let m = m as i32;
    for j in 0..m {
        p.insert(Mono::s(2 * (m - 1 - 2 * j)), BigRational::one());
    }
    p
}

fn mono_mul(a: Mono, b: Mono, c: &BigRational, out: &mut Poly) {
    let spow = a.spow + b.spow;
    let a2 = a.a2 ^ b.a2;
    let a3 = a.a3 ^ b.a3;
    let fold2 = a.a2 && b.a2;
    let fold3 = a.a3 && b.a3;
    let base = Mono { spow, a2, a3 };
    let mut pieces: Vec<(i32, BigRational)> = vec![(0, c.clone())];
    if fold2 {
        pieces = pieces.into_iter().flat_map(|(d, v)| [(d + 2, v.clone()), (d - 2, v)]).collect();
    }
    if fold3 {
        pieces = pieces.into_iter().flat_map(|(d, v)| [(d + 4, v.clone()), (d, v.clone()), (d - 4, v)]).collect();
    }
    for (d, v) in pieces {
        add_into(out, Mono { spow: base.spow + d, ..base }, v);
    }
}

pub(crate) fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            mono_mul(*ma, *mb, &(ca * cb), &mut out);
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = a.clone();
    for (m, c) in b {
        let c = if sign < 0 { -c.clone() } else { c.clone() };
        add_into(&mut out, *m, c);
    }
    out
}

fn poly_scale(a: &Poly, c: &BigRational) -> Poly {
    if c.is_zero() {
        return Poly::new();
    }
    a.iter().map(|(m, v)| (*m, v * c)).collect()
}

/// Exact division of a Laurent polynomial in `s` (keys are exponents).
fn laurent_div(p: &BTreeMap<i32, BigRational>, d: &BTreeMap<i32, BigRational>) -> Option<BTreeMap<i32, BigRational>> {
    if p.is_empty() {
        return Some(BTreeMap::new());
    }
    let (&dh, dhc) = d.iter().next_back()?;
    let &dl = d.keys().next()?;
    let &pl = p.keys().next()?;
    let floor = pl - dl;
    let mut rem = p.clone();
    let mut quo = BTreeMap::new();
    while let Some((&ph, phc)) = rem.iter().next_back() {
        let e = ph - dh;
        if e < floor {
            return None;
        }
        let c = phc / dhc;
        for (k, v) in d {
            let key = k + e;
            let nv = rem.get(&key).cloned().unwrap_or_else(BigRational::zero) - &c * v;
            if nv.is_zero() {
                rem.remove(&key);
            } else {
                rem.insert(key, nv);
            }
        }
        quo.insert(e, c);
    }
    Some(quo)
}

fn split_radicals(p: &Poly) -> BTreeMap<(bool, bool), BTreeMap<i32, BigRational>> {
    let mut parts: BTreeMap<(bool, bool), BTreeMap<i32, BigRational>> = BTreeMap::new();
    for (m, c) in p {
        parts.entry(m.radical()).or_default().insert(m.spow, c.clone());
    }
    parts
}

/// Divides each radical component of `p` by the pure `s`-polynomial `d`.
pub(crate) fn poly_div_exact(p: &Poly, d: &Poly) -> Option<Poly> {
    let d: BTreeMap<i32, BigRational> = d
        .iter()
        .map(|(m, c)| {
            debug_assert!(!m.a2 && !m.a3);
            (m.spow, c.clone())
        })
        .collect();
    let mut out = Poly::new();
    for ((a2, a3), part) in split_radicals(p) {
        let q = laurent_div(&part, &d)?;
        for (spow, c) in q {
            out.insert(Mono { spow, a2, a3 }, c);
        }
    }
    Some(out)
}

impl Scalar {
    fn from_parts(num: Poly, den: BTreeMap<u32, u32>) -> Scalar {
        let mut s = Scalar { num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        self.num.retain(|_, c| !c.is_zero());
        self.den.retain(|m, p| *m >= 2 && *p > 0);
        if self.num.is_empty() {
            self.den.clear();
            return;
        }
        let factors: Vec<u32> = self.den.keys().copied().collect();
        for m in factors {
            let d = qnum_poly(m);
            while self.den.get(&m).copied().unwrap_or(0) > 0 {
                match poly_div_exact(&self.num, &d) {
                    Some(q) => {
                        self.num = q;
                        let p = self.den.get_mut(&m).unwrap();
                        *p -= 1;
                        if *p == 0 {
                            self.den.remove(&m);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_mono(Mono::ONE, BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(rat(n))
    }

    pub fn from_rational(c: BigRational) -> Scalar {
        Scalar::from_mono(Mono::ONE, c)
    }

    pub fn from_mono(m: Mono, c: BigRational) -> Scalar {
        let mut num = Poly::new();
        add_into(&mut num, m, c);
        Scalar { num, den: BTreeMap::new() }
    }

    pub(crate) fn from_poly(num: Poly) -> Scalar {
        Scalar::from_parts(num, BTreeMap::new())
    }

    /// `s^k = q^{k/2}`.
    pub fn s_pow(k: i32) -> Scalar {
        Scalar::from_mono(Mono::s(k), BigRational::one())
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Scalar {
        Scalar::s_pow(2 * k)
    }

    pub fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Scalar {
        Scalar::q_pow(1) - Scalar::q_pow(-1)
    }

    pub fn r2() -> Scalar {
        Scalar::from_mono(Mono { spow: 0, a2: true, a3: false }, BigRational::one())
    }

    pub fn r3() -> Scalar {
        Scalar::from_mono(Mono { spow: 0, a2: false, a3: true }, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one()
    }

    /// Stored numerator terms in key order.
    pub fn terms(&self) -> Vec<Term> {
        self.num.iter().map(|(m, c)| Term { coeff: c.clone(), mono: *m }).collect()
    }

    /// Denominator factors `(m, power)`.
    pub fn denominator(&self) -> Vec<(u32, u32)> {
        self.den.iter().map(|(m, p)| (*m, *p)).collect()
    }

    fn den_poly(den: &BTreeMap<u32, u32>) -> Poly {
        let mut p = Scalar::one().num;
        for (m, k) in den {
            let f = qnum_poly(*m);
            for _ in 0..*k {
                p = poly_mul(&p, &f);
            }
        }
        p
    }

    /// Numerator rescaled onto the denominator `den`, which must contain ours.
    fn num_over(&self, den: &BTreeMap<u32, u32>) -> Poly {
        let mut extra = BTreeMap::new();
        for (m, p) in den {
            let have = self.den.get(m).copied().unwrap_or(0);
            if *p > have {
                extra.insert(*m, p - have);
            }
        }
        if extra.is_empty() {
            self.num.clone()
        } else {
            poly_mul(&self.num, &Scalar::den_poly(&extra))
        }
    }

    fn common_den(&self, other: &Scalar) -> BTreeMap<u32, u32> {
        let mut den = self.den.clone();
        for (m, p) in &other.den {
            let e = den.entry(*m).or_insert(0);
            *e = (*e).max(*p);
        }
        den
    }

    fn combine(&self, other: &Scalar, sign: i64) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign < 0 { -other.clone() } else { other.clone() };
        }
        let den = self.common_den(other);
        let num = poly_add(&self.num_over(&den), &other.num_over(&den), sign);
        Scalar::from_parts(num, den)
    }

    /// `[k]` as a Laurent polynomial in `q`.
    pub fn qnum(k: i64) -> Scalar {
        if k == 0 {
            return Scalar::zero();
        }
        let p = Scalar::from_poly(qnum_poly(k.unsigned_abs() as u32));
        if k < 0 {
            -p
        } else {
            p
        }
    }

    /// `[k]! = [k][k-1]...[1]`.
    pub fn qfactorial(k: u32) -> Scalar {
        (2..=k).fold(Scalar::one(), |acc, m| acc * Scalar::qnum(m as i64))
    }

    /// Divides by `∏ [m]^p`.
    pub fn div_qnums(&self, factors: &[(u32, u32)]) -> Result<Scalar> {
        if factors.is_empty() {
            return Err(Error::UnsupportedDivision("empty q-number product".into()));
        }
        let mut den = self.den.clone();
        for &(m, p) in factors {
            if m == 0 {
                return Err(Error::UnsupportedDivision("[0] = 0".into()));
            }
            if m == 1 || p == 0 {
                continue;
            }
            *den.entry(m).or_insert(0) += p;
        }
        Ok(Scalar::from_parts(self.num.clone(), den))
    }

    /// Division by a Scalar whose numerator is a single term.
    pub fn checked_div(&self, d: &Scalar) -> Result<Scalar> {
        Ok(self * &d.inverse()?)
    }

    /// Inverse of a single-term numerator over q-numbers, or of any
    /// recognizable `q`-power, `[2]`, `[3]` monomial.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.num.len() != 1 {
            return match self.as_monomial() {
                Some(m) => Ok(Scalar::from_rational(m.coeff.recip()) * sqrt_monomial(-m.qhalf, -m.h2, -m.h3)?),
                None => Err(Error::UnsupportedDivision(self.to_string())),
            };
        }
        let (m, c) = self.num.iter().next().unwrap();
        let mut num = Poly::new();
        num.insert(Mono { spow: -m.spow, a2: m.a2, a3: m.a3 }, c.recip());
        let mut den = BTreeMap::new();
        if m.a2 {
            den.insert(2, 1);
        }
        if m.a3 {
            den.insert(3, 1);
        }
        let back = Scalar::den_poly(&self.den);
        Ok(Scalar::from_parts(poly_mul(&num, &back), den))
    }

    /// Exact division by an arbitrary Laurent polynomial without radicals or
    /// denominator; fails unless the quotient stays in the ring.
    pub fn div_exact_laurent(&self, d: &Scalar) -> Result<Scalar> {
        if !d.den.is_empty() || d.num.keys().any(|m| m.a2 || m.a3) || d.is_zero() {
            return Err(Error::UnsupportedDivision(d.to_string()));
        }
        match poly_div_exact(&self.num, &d.num) {
            Some(num) => Ok(Scalar::from_parts(num, self.den.clone())),
            None => Err(Error::UnsupportedDivision(format!("({self}) / ({d})"))),
        }
    }

    /// Integer power; negative exponents need an invertible scalar.
    pub fn powi(&self, k: i32) -> Result<Scalar> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Recognizes `c · q^{a/2} · [2]^{b/2} · [3]^{c/2}`.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.is_zero() {
            return None;
        }
        let parts = split_radicals(&self.num);
        if parts.len() != 1 {
            return None;
        }
        let (&(a2, a3), part) = parts.iter().next().unwrap();
        let mut p: Poly = part.iter().map(|(k, c)| (Mono::s(*k), c.clone())).collect();
        let mut h2 = i32::from(a2);
        let mut h3 = i32::from(a3);
        for (m, h) in [(2u32, &mut h2), (3u32, &mut h3)] {
            let d = qnum_poly(m);
            while p.len() > 1 {
                match poly_div_exact(&p, &d) {
                    Some(q) => {
                        p = q;
                        *h += 2;
                    }
                    None => break,
                }
            }
        }
        if p.len() != 1 {
            return None;
        }
        for (m, k) in &self.den {
            match m {
                2 => h2 -= 2 * *k as i32,
                3 => h3 -= 2 * *k as i32,
                _ => return None,
            }
        }
        let (m, c) = p.into_iter().next().unwrap();
        Some(Monomial { coeff: c, qhalf: m.spow, h2, h3 })
    }

    /// Exact square root of a monomial scalar with a square rational part.
    pub fn sqrt(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        let m = self.as_monomial().ok_or_else(|| Error::NotMonomial(self.to_string()))?;
        let c = rational_sqrt(&m.coeff).ok_or_else(|| Error::NotMonomial(self.to_string()))?;
        if m.qhalf % 2 != 0 || m.h2 % 2 != 0 || m.h3 % 2 != 0 {
            return Err(Error::NotMonomial(self.to_string()));
        }
        Ok(Scalar::from_rational(c) * sqrt_monomial(m.qhalf / 2, m.h2 / 2, m.h3 / 2)?)
    }

    /// `1/√x`, exact for monomial squares.
    pub fn inv_sqrt(&self) -> Result<Scalar> {
        let m = self.as_monomial().ok_or_else(|| Error::NotMonomial(self.to_string()))?;
        let c = rational_sqrt(&m.coeff.recip()).ok_or_else(|| Error::NotMonomial(self.to_string()))?;
        if m.qhalf % 2 != 0 || m.h2 % 2 != 0 || m.h3 % 2 != 0 {
            return Err(Error::NotMonomial(self.to_string()));
        }
        Ok(Scalar::from_rational(c) * sqrt_monomial(-m.qhalf / 2, -m.h2 / 2, -m.h3 / 2)?)
    }

    /// Numeric value at `q`.
    pub fn eval_float(&self, q: f64) -> Result<f64> {
        check_q(q)?;
        let s = q.sqrt();
        let qn = |m: u32| (q.powi(m as i32) - q.powi(-(m as i32))) / (q - 1.0 / q);
        let r2 = qn(2).sqrt();
        let r3 = qn(3).sqrt();
        let mut total = 0.0;
        for (m, c) in &self.num {
            let mut v = rat_to_f64(c) * q.powi(m.spow.div_euclid(2));
            if m.spow.rem_euclid(2) == 1 {
                v *= s;
            }
            if m.a2 {
                v *= r2;
            }
            if m.a3 {
                v *= r3;
            }
            total += v;
        }
        for (m, p) in &self.den {
            total /= qn(*m).powi(*p as i32);
        }
        Ok(total)
    }

    /// Canonical text.
    pub fn to_canonical(&self) -> String {
        text::print(self)
    }

    pub fn parse(src: &str) -> Result<Scalar> {
        text::parse(src)
    }
}

/// Validates an evaluation point.
pub fn check_q(q: f64) -> Result<()> {
    if !(q.is_finite() && q > 0.0) || q == 1.0 {
        return Err(Error::InvalidEvaluationPoint(q));
    }
    Ok(())
}

pub(crate) fn rat_to_f64(c: &BigRational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let scale = BigInt::from(10).pow(40);
            let v = (c * BigRational::from_integer(scale)).to_integer();
            v.to_f64().unwrap_or(f64::NAN) * 1e-40
        }
    }
}

fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Square root of `q^{spow2} · [2]^{n2} · [3]^{n3}`, rationalized: the result is
/// `s^{spow2} · √[2]^{n2}` and likewise for `[3]`, with negative powers allowed.
pub fn sqrt_monomial(spow2: i32, n2: i32, n3: i32) -> Result<Scalar> {
    let mut out = Scalar::s_pow(spow2);
    for (m, n, root) in [(2u32, n2, Scalar::r2()), (3u32, n3, Scalar::r3())] {
        let half = n.div_euclid(2);
        if n.rem_euclid(2) == 1 {
            out = out * root;
        }
        if half > 0 {
            out = out * Scalar::qnum(m as i64).powi(half)?;
        } else if half < 0 {
            out = out.div_qnums(&[(m, (-half) as u32)])?;
        }
    }
    Ok(out)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let den = self.common_den(other);
        self.num_over(&den) == other.num_over(&den)
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print(self))
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        text::parse(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, 1)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, -1)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let num = if rhs.num.len() == 1 && rhs.den.is_empty() {
            let (m, c) = rhs.num.iter().next().unwrap();
            if *m == Mono::ONE {
                poly_scale(&self.num, c)
            } else {
                poly_mul(&self.num, &rhs.num)
            }
        } else {
            poly_mul(&self.num, &rhs.num)
        };
        let mut den = self.den.clone();
        for (m, p) in &rhs.den {
            *den.entry(*m).or_insert(0) += p;
        }
        Scalar::from_parts(num, den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.iter().map(|(m, c)| (*m, -c.clone())).collect(), den: self.den.clone() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Scalar {
        Scalar::parse(s).unwrap()
    }

    #[test]
    fn qnum_values() {
        assert!(Scalar::qnum(0).is_zero());
        assert_eq!(Scalar::qnum(2), p("q + q^-1"));
        assert_eq!(Scalar::qnum(3), p("q^2 + 1 + q^-2"));
        assert_eq!(Scalar::qnum(-3), -Scalar::qnum(3));
    }

    #[test]
    fn radical_squares_fold() {
        assert_eq!(Scalar::r2() * Scalar::r2(), Scalar::qnum(2));
        assert_eq!(Scalar::r3() * Scalar::r3(), Scalar::qnum(3));
        assert!((Scalar::qnum(2) - Scalar::qnum(2)).is_zero());
        assert_eq!(Scalar::q_minus_qinv() * Scalar::qnum(2), p("q^2 - q^-2"));
    }

    #[test]
    fn cancels_exact_qnum_factors() {
        let x = (Scalar::qnum(3) * Scalar::q()).div_qnums(&[(3, 1)]).unwrap();
        assert_eq!(x.to_canonical(), "q");
        let y = Scalar::one().div_qnums(&[(2, 2)]).unwrap();
        assert_eq!(y.denominator(), vec![(2, 2)]);
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = Scalar::r2().div_qnums(&[(2, 1)]).unwrap();
        let b = Scalar::r2().inverse().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Scalar::r2());
    }

    #[test]
    fn general_division_rejected() {
        assert!(matches!(Scalar::one().checked_div(&(Scalar::q() + Scalar::one())), Err(Error::UnsupportedDivision(_))));
        assert_eq!(Scalar::one().checked_div(&Scalar::qnum(2)).unwrap(), Scalar::one().div_qnums(&[(2, 1)]).unwrap());
        assert!(Scalar::one().checked_div(&Scalar::q()).is_ok());
    }

    #[test]
    fn exact_laurent_division() {
        let a = Scalar::q_minus_qinv();
        let d = p("q - 1");
        assert_eq!(a.div_exact_laurent(&d).unwrap(), p("1 + q^-1"));
        assert!(Scalar::one().div_exact_laurent(&d).is_err());
    }

    #[test]
    fn sqrt_monomial_examples() {
        assert_eq!(sqrt_monomial(1, 0, 0).unwrap(), Scalar::s_pow(1));
        let a = sqrt_monomial(-1, -1, 0).unwrap();
        assert_eq!(a.to_canonical(), "(q^{-1/2}*r2)/[2]");
        let b = sqrt_monomial(0, -1, 1).unwrap();
        assert_eq!(b, (Scalar::r2() * Scalar::r3()).div_qnums(&[(2, 1)]).unwrap());
    }

    #[test]
    fn sqrt_of_recognized_monomials() {
        let x = (Scalar::q() * Scalar::qnum(2)).sqrt().unwrap();
        assert_eq!(x, Scalar::s_pow(1) * Scalar::r2());
        let y = (Scalar::from_int(4) * Scalar::qnum(3) * Scalar::qnum(3)).sqrt().unwrap();
        assert_eq!(y, Scalar::from_int(2) * Scalar::qnum(3));
        assert!(Scalar::from_int(2).sqrt().is_err());
        assert!(p("q + 1").sqrt().is_err());
    }

    #[test]
    fn eval_examples() {
        assert!((Scalar::qnum(2).eval_float(2.0).unwrap() - 2.5).abs() < 1e-15);
        assert!((p("q^3 - q^-1").eval_float(2.0).unwrap() - 7.5).abs() < 1e-15);
        assert!((Scalar::r2().eval_float(4.0).unwrap() - 4.25f64.sqrt()).abs() < 1e-15);
        assert!(Scalar::one().eval_float(1.0).is_err());
        assert!(Scalar::one().eval_float(-0.5).is_err());
    }
}
