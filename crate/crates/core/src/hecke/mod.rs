//! Hecke algebra action on letter states and the braid word of the R operator.

pub mod identities;
pub mod iwahori;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Exact, Field};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::report::{compare_on_kets, Report};
use crate::scalar::Scalar;
use crate::tensor::{Ket, Space, State};

/// `g_index` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub index: usize,
    pub inverse: bool,
}

/// Product of generators; the rightmost factor acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    gens: Vec<Gen>,
}

impl BraidWord {
    pub fn identity() -> BraidWord {
        BraidWord::default()
    }

    pub fn from_indices(idx: &[usize]) -> BraidWord {
        BraidWord { gens: idx.iter().map(|&index| Gen { index, inverse: false }).collect() }
    }

    pub fn from_gens(gens: Vec<Gen>) -> BraidWord {
        BraidWord { gens }
    }

    /// Parses `"g2 g1 g3^-1"`, `"2 1 3"` or a digit string like `"2132"`.
    pub fn parse(src: &str) -> Result<BraidWord> {
        let src = src.trim();
        if src.is_empty() || src == "1" {
            return Ok(BraidWord::identity());
        }
        let mut gens = Vec::new();
        let pieces: Vec<&str> = if src.contains(char::is_whitespace) || src.contains('g') {
            src.split(|c: char| c.is_whitespace() || c == 'g').filter(|p| !p.is_empty()).collect()
        } else {
            src.split("").filter(|p| !p.is_empty()).collect()
        };
        for p in pieces {
            let (num, inverse) = match p.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (p, false),
            };
            let index: usize = num.parse().map_err(|_| Error::Invalid(format!("bad generator {p:?}")))?;
            if index == 0 {
                return Err(Error::Invalid("generator indices start at 1".into()));
            }
            gens.push(Gen { index, inverse });
        }
        Ok(BraidWord { gens })
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.gens.iter().map(|g| g.index).max().unwrap_or(0)
    }

    /// `self · other`.
    pub fn then(&self, other: &BraidWord) -> BraidWord {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        BraidWord { gens }
    }

    pub fn shifted(&self, by: usize) -> BraidWord {
        BraidWord { gens: self.gens.iter().map(|g| Gen { index: g.index + by, ..*g }).collect() }
    }

    /// Indices, rejecting inverse letters.
    pub fn positive_indices(&self) -> Option<Vec<usize>> {
        self.gens.iter().map(|g| (!g.inverse).then_some(g.index)).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.gens.iter().map(|g| if g.inverse { format!("g{}^-1", g.index) } else { format!("g{}", g.index) }).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Word of the R operator on `2f` sites.
pub fn r_word(f: usize) -> Result<BraidWord> {
    if f < 1 {
        return Err(Error::Invalid("r_word needs f >= 1".into()));
    }
    let mut w = vec![1];
    for k in 2..=f {
        let mut next: Vec<usize> = (k..=2 * k - 2).collect();
        next.extend_from_slice(&w);
        next.extend((k..=2 * k - 1).rev());
        w = next;
    }
    Ok(BraidWord::from_indices(&w))
}

/// Letter-rule action with lifted constants.
#[derive(Clone, Debug)]
pub struct Hecke<C> {
    q: C,
    h: C,
}

impl<C: Coeff> Hecke<C> {
    pub fn new<F: Field<C = C>>(field: &F) -> Hecke<C> {
        Hecke { q: field.lift(&Scalar::q()), h: field.lift(&Scalar::q_minus_qinv()) }
    }

    fn check(i: usize, v: &State<C>) -> Result<()> {
        let sites = v.space().sites;
        if i < 1 || i >= sites {
            return Err(Error::IndexOutOfRange { index: i, sites });
        }
        Ok(())
    }

    fn g_ket(&self, i: usize, k: &Ket, c: &C, out: &mut State<C>) {
        let (a, b) = (k[i - 1], k[i]);
        if a == b {
            out.push(k.clone(), c.mul(&self.q));
            return;
        }
        let mut sw = k.clone();
        sw.swap(i - 1, i);
        if a > b {
            out.push(k.clone(), c.mul(&self.h));
        }
        out.push(sw, c.clone());
    }

    pub fn apply_g(&self, i: usize, v: &State<C>) -> Result<State<C>> {
        Self::check(i, v)?;
        v.map_kets(|k, c, out| {
            self.g_ket(i, k, c, out);
            Ok(())
        })
    }

    /// `g^{-1} = g - (q - q^{-1})`.
    pub fn apply_g_inv(&self, i: usize, v: &State<C>) -> Result<State<C>> {
        Self::check(i, v)?;
        let minus_h = self.h.neg();
        v.map_kets(|k, c, out| {
            self.g_ket(i, k, c, out);
            out.push(k.clone(), c.mul(&minus_h));
            Ok(())
        })
    }

    pub fn apply_word(&self, w: &BraidWord, v: &State<C>) -> Result<State<C>> {
        let mut cur = v.clone();
        for g in w.gens.iter().rev() {
            cur = if g.inverse { self.apply_g_inv(g.index, &cur)? } else { self.apply_g(g.index, &cur)? };
        }
        Ok(cur)
    }
}

fn exact() -> Hecke<Scalar> {
    Hecke::new(&Exact)
}

pub fn apply_g(i: usize, v: &State<Scalar>) -> Result<State<Scalar>> {
    exact().apply_g(i, v)
}

pub fn apply_g_inv(i: usize, v: &State<Scalar>) -> Result<State<Scalar>> {
    exact().apply_g_inv(i, v)
}

pub fn apply_word(w: &BraidWord, v: &State<Scalar>) -> Result<State<Scalar>> {
    exact().apply_word(w, v)
}

/// Linear combination of braid words with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Operator {
    terms: Vec<(Scalar, BraidWord)>,
}

impl Operator {
    pub fn zero() -> Operator {
        Operator::default()
    }

    pub fn identity() -> Operator {
        Operator::word(BraidWord::identity())
    }

    pub fn word(w: BraidWord) -> Operator {
        Operator { terms: vec![(Scalar::one(), w)] }
    }

    pub fn gen(i: usize) -> Operator {
        Operator::word(BraidWord::from_indices(&[i]))
    }

    pub fn from_terms(terms: Vec<(Scalar, BraidWord)>) -> Operator {
        Operator { terms: terms.into_iter().filter(|(c, _)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Scalar, BraidWord)] {
        &self.terms
    }

    pub fn scaled(&self, c: &Scalar) -> Operator {
        Operator::from_terms(self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect())
    }

    pub fn plus(&self, other: &Operator) -> Operator {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Operator { terms }
    }

    /// `self · other`: `other` acts first.
    pub fn times(&self, other: &Operator) -> Operator {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                terms.push((a * b, u.then(v)));
            }
        }
        Operator::from_terms(terms)
    }

    pub fn shifted(&self, by: usize) -> Operator {
        Operator { terms: self.terms.iter().map(|(c, w)| (c.clone(), w.shifted(by))).collect() }
    }

    pub fn max_index(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.max_index()).max().unwrap_or(0)
    }

    pub fn compile<F: Field>(&self, field: &F) -> Compiled<F::C> {
        Compiled { terms: self.terms.iter().map(|(c, w)| (field.lift(c), w.clone())).collect() }
    }

    pub fn apply(&self, v: &State<Scalar>) -> Result<State<Scalar>> {
        self.compile(&Exact).apply(&exact(), v)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, w)| format!("({c}) {w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Operator with coefficients lifted into a concrete ring.
#[derive(Clone, Debug)]
pub struct Compiled<C> {
    terms: Vec<(C, BraidWord)>,
}

impl<C: Coeff> Compiled<C> {
    pub fn apply(&self, hecke: &Hecke<C>, v: &State<C>) -> Result<State<C>> {
        let mut out = State::zero(v.space());
        for (c, w) in &self.terms {
            let img = hecke.apply_word(w, v)?;
            out.add_scaled(c, &img)?;
        }
        Ok(out)
    }
}

/// Applies a product of compiled operators, rightmost first.
pub fn apply_chain<C: Coeff>(hecke: &Hecke<C>, chain: &[&Compiled<C>], v: &State<C>) -> Result<State<C>> {
    let mut cur = v.clone();
    for op in chain.iter().rev() {
        cur = op.apply(hecke, &cur)?;
    }
    Ok(cur)
}

/// Exhaustive check of the braid, far-commutation and quadratic relations.
pub fn verify_hecke(n: u8, sites: usize, exec: Exec) -> Result<Vec<Report>> {
    let space = Space::a(n, sites);
    let kets = space.kets();
    let hk = exact();
    let label = space.to_string();
    let mut braid = Report::new("braid g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}", &label, "exact");
    let mut far = Report::new("far commutation g_i g_j = g_j g_i, |i-j| >= 2", &label, "exact");
    let mut quad = Report::new("quadratic g_i^2 = (q - q^-1) g_i + 1", &label, "exact");
    let gens = sites.saturating_sub(1);
    let h = Scalar::q_minus_qinv();
    for i in 1..gens {
        let l = BraidWord::from_indices(&[i, i + 1, i]);
        let r = BraidWord::from_indices(&[i + 1, i, i + 1]);
        compare_on_kets(&mut braid, exec, &kets, None, |k| {
            let v = State::basis(space, k)?;
            Ok((hk.apply_word(&l, &v)?, hk.apply_word(&r, &v)?))
        })?;
    }
    for i in 1..=gens {
        for j in i + 2..=gens {
            let l = BraidWord::from_indices(&[i, j]);
            let r = BraidWord::from_indices(&[j, i]);
            compare_on_kets(&mut far, exec, &kets, None, |k| {
                let v = State::basis(space, k)?;
                Ok((hk.apply_word(&l, &v)?, hk.apply_word(&r, &v)?))
            })?;
        }
    }
    for i in 1..=gens {
        let sq = BraidWord::from_indices(&[i, i]);
        compare_on_kets(&mut quad, exec, &kets, None, |k| {
            let v = State::basis(space, k)?;
            let mut rhs = hk.apply_g(i, &v)?.scaled(&h);
            rhs.add_scaled(&Scalar::one(), &v)?;
            Ok((hk.apply_word(&sq, &v)?, rhs))
        })?;
    }
    if gens < 2 {
        braid.note("fewer than 3 sites: braid relation vacuous");
    }
    Ok(vec![braid, far, quad])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(k: &[i8]) -> State<Scalar> {
        State::basis(Space::a(3, k.len()), k).unwrap()
    }

    fn p(s: &str) -> Scalar {
        Scalar::parse(s).unwrap()
    }

    #[test]
    fn local_rules() {
        assert_eq!(apply_g(1, &ket(&[1, 1])).unwrap(), ket(&[1, 1]).scaled(&Scalar::q()));
        assert_eq!(apply_g(1, &ket(&[1, 2])).unwrap(), ket(&[2, 1]));
        let mut want = ket(&[2, 1]).scaled(&p("q - q^-1"));
        want.add_scaled(&Scalar::one(), &ket(&[1, 2])).unwrap();
        assert_eq!(apply_g(1, &ket(&[2, 1])).unwrap(), want);
        assert!(matches!(apply_g(2, &ket(&[1, 2])), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn inverse_rules() {
        assert_eq!(apply_g_inv(1, &ket(&[1, 1])).unwrap(), ket(&[1, 1]).scaled(&p("q^-1")));
        assert_eq!(apply_g_inv(1, &ket(&[2, 1])).unwrap(), ket(&[1, 2]));
        let w = BraidWord::parse("g1^-1 g1").unwrap();
        assert_eq!(apply_word(&w, &ket(&[2, 1])).unwrap(), ket(&[2, 1]));
    }

    #[test]
    fn r_words() {
        assert_eq!(r_word(1).unwrap().to_string(), "g1");
        assert_eq!(r_word(2).unwrap(), BraidWord::parse("2132").unwrap());
        assert_eq!(r_word(3).unwrap(), BraidWord::parse("g3 g4 g2 g1 g3 g2 g5 g4 g3").unwrap());
        assert!(r_word(0).is_err());
    }

    #[test]
    fn r3_equals_printed_ordering() {
        let a = r_word(3).unwrap();
        let b = BraidWord::parse("342312543").unwrap();
        for k in Space::a(3, 6).kets() {
            let v = State::basis(Space::a(3, 6), &k).unwrap();
            assert_eq!(apply_word(&a, &v).unwrap(), apply_word(&b, &v).unwrap());
        }
    }

    #[test]
    fn word_examples() {
        let r = r_word(2).unwrap();
        assert_eq!(apply_word(&r, &ket(&[1, 1, 1, 1])).unwrap(), ket(&[1, 1, 1, 1]).scaled(&Scalar::q_pow(4)));
        assert_eq!(apply_word(&BraidWord::identity(), &ket(&[2, 1])).unwrap(), ket(&[2, 1]));
        let mut want = ket(&[2, 1]).scaled(&Scalar::q_minus_qinv());
        want.add_scaled(&Scalar::one(), &ket(&[1, 2])).unwrap();
        assert_eq!(apply_word(&BraidWord::parse("11").unwrap(), &ket(&[1, 2])).unwrap(), want);
    }

    #[test]
    fn small_relations_pass() {
        for r in verify_hecke(2, 3, Exec::Sequential).unwrap() {
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn word_display_and_parse() {
        let w = BraidWord::parse("g2 g1^-1").unwrap();
        assert_eq!(w.to_string(), "g2 g1^-1");
        assert!(BraidWord::parse("g0").is_err());
    }
}
