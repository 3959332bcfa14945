//! Letter kets and finitely supported states over them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Letters in natural slot order.
pub type Ket = SmallVec<[i8; 8]>;

/// Letter set of the vector representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    /// `1..=n`
    A(u8),
    /// `-n..=n`
    Signed(u8),
    /// `-n..=n` without zero
    SignedNoZero(u8),
}

impl Alphabet {
    pub fn letters(self) -> Vec<i8> {
        match self {
            Alphabet::A(n) => (1..=n as i8).collect(),
            Alphabet::Signed(n) => (-(n as i8)..=n as i8).collect(),
            Alphabet::SignedNoZero(n) => (-(n as i8)..=n as i8).filter(|&k| k != 0).collect(),
        }
    }

    pub fn contains(self, a: i8) -> bool {
        match self {
            Alphabet::A(n) => a >= 1 && a <= n as i8,
            Alphabet::Signed(n) => a.unsigned_abs() <= n,
            Alphabet::SignedNoZero(n) => a != 0 && a.unsigned_abs() <= n,
        }
    }

    pub fn size(self) -> usize {
        self.letters().len()
    }
}

/// A tensor power of the vector representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub alphabet: Alphabet,
    pub sites: usize,
}

impl Space {
    pub fn new(alphabet: Alphabet, sites: usize) -> Space {
        Space { alphabet, sites }
    }

    pub fn a(n: u8, sites: usize) -> Space {
        Space::new(Alphabet::A(n), sites)
    }

    pub fn check(&self, ket: &[i8]) -> Result<()> {
        if ket.len() != self.sites {
            return Err(Error::SpaceMismatch(format!("ket {ket:?} has {} sites, expected {}", ket.len(), self.sites)));
        }
        if let Some(a) = ket.iter().find(|&&a| !self.alphabet.contains(a)) {
            return Err(Error::SpaceMismatch(format!("letter {a} not in {:?}", self.alphabet)));
        }
        Ok(())
    }

    /// Every ket, in lexicographic order.
    pub fn kets(&self) -> Vec<Ket> {
        let letters = self.alphabet.letters();
        let mut out: Vec<Ket> = vec![Ket::new()];
        for _ in 0..self.sites {
            out = out
                .into_iter()
                .flat_map(|k| {
                    letters.iter().map(move |&a| {
                        let mut k = k.clone();
                        k.push(a);
                        k
                    })
                })
                .collect();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.alphabet.size().pow(self.sites as u32)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.alphabet {
            Alphabet::A(n) => format!("A n={n}"),
            Alphabet::Signed(n) => format!("signed n={n}"),
            Alphabet::SignedNoZero(n) => format!("signed-nonzero n={n}"),
        };
        write!(f, "{a}, {} sites", self.sites)
    }
}

pub fn ket_string(k: &[i8]) -> String {
    let parts: Vec<String> = k.iter().map(|a| a.to_string()).collect();
    format!("|{}>", parts.join(","))
}

/// Finite linear combination of kets.
#[derive(Clone, Debug, PartialEq)]
pub struct State<C> {
    space: Space,
    entries: BTreeMap<Ket, C>,
}

impl<C: Coeff> State<C> {
    pub fn zero(space: Space) -> State<C> {
        State { space, entries: BTreeMap::new() }
    }

    pub fn basis(space: Space, ket: &[i8]) -> Result<State<C>> {
        space.check(ket)?;
        let mut s = State::zero(space);
        s.entries.insert(Ket::from_slice(ket), C::one());
        Ok(s)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, ket: &[i8]) -> Option<&C> {
        self.entries.get(ket)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ket, &C)> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> BTreeMap<Ket, C> {
        self.entries
    }

    fn same_space(&self, other: &State<C>) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(format!("{} vs {}", self.space, other.space)));
        }
        Ok(())
    }

    /// Adds `c·|ket⟩` without validating the ket.
    pub(crate) fn push(&mut self, ket: Ket, c: C) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&ket) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.entries.remove(&ket);
                }
            }
            None => {
                self.entries.insert(ket, c);
            }
        }
    }

    pub fn add_term(&mut self, ket: &[i8], c: C) -> Result<()> {
        self.space.check(ket)?;
        self.push(Ket::from_slice(ket), c);
        Ok(())
    }

    /// `self += c · src`.
    pub fn add_scaled(&mut self, c: &C, src: &State<C>) -> Result<()> {
        self.same_space(src)?;
        if c.is_zero() {
            return Ok(());
        }
        for (k, v) in &src.entries {
            self.push(k.clone(), c.mul(v));
        }
        Ok(())
    }

    pub fn scaled(&self, c: &C) -> State<C> {
        if c.is_zero() {
            return State::zero(self.space);
        }
        let entries = self.entries.iter().map(|(k, v)| (k.clone(), c.mul(v))).filter(|(_, v)| !v.is_zero()).collect();
        State { space: self.space, entries }
    }

    pub fn sub(&self, other: &State<C>) -> Result<State<C>> {
        let mut out = self.clone();
        out.add_scaled(&C::one().neg(), other)?;
        Ok(out)
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.entries.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Bilinear pairing: distinct kets orthonormal, no conjugation.
    pub fn inner(&self, other: &State<C>) -> Result<C> {
        self.same_space(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = C::zero();
        for (k, v) in &small.entries {
            if let Some(w) = large.entries.get(k) {
                acc = acc.add(&v.mul(w));
            }
        }
        Ok(acc)
    }

    /// Applies a per-ket linear map.
    pub fn map_kets<F>(&self, mut f: F) -> Result<State<C>>
    where
        F: FnMut(&Ket, &C, &mut State<C>) -> Result<()>,
    {
        let mut out = State::zero(self.space);
        for (k, v) in &self.entries {
            f(k, v, &mut out)?;
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.entries.iter().map(|(k, c)| format!("({}){}", c.render(), ket_string(k))).collect();
        parts.join(" + ")
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    ket: Vec<i8>,
    coeff: String,
}

impl State<Scalar> {
    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<EntryJson> =
            self.entries.iter().map(|(k, c)| EntryJson { ket: k.to_vec(), coeff: c.to_canonical() }).collect();
        serde_json::to_value(list).expect("serializable")
    }

    pub fn from_json(space: Space, v: &serde_json::Value) -> Result<State<Scalar>> {
        let list: Vec<EntryJson> = serde_json::from_value(v.clone())?;
        let mut s = State::zero(space);
        for e in list {
            s.add_term(&e.ket, Scalar::parse(&e.coeff)?)?;
        }
        Ok(s)
    }

    pub fn eval(&self, q: f64) -> Result<State<f64>> {
        let mut out = State::zero(self.space);
        for (k, c) in &self.entries {
            out.push(k.clone(), c.eval_float(q)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket<C: Coeff>(k: &[i8]) -> State<C> {
        State::basis(Space::a(3, k.len()), k).unwrap()
    }

    #[test]
    fn add_scaled_examples() {
        let mut z: State<Scalar> = State::zero(Space::a(3, 2));
        z.add_scaled(&Scalar::one(), &ket(&[1, 2])).unwrap();
        assert_eq!(z, ket(&[1, 2]));
        z.add_scaled(&Scalar::from_int(-1), &ket(&[1, 2])).unwrap();
        assert!(z.is_zero());
        let mut x: State<Scalar> = ket(&[1, 2]);
        x.add_scaled(&Scalar::q(), &ket(&[2, 1])).unwrap();
        assert_eq!(x.get(&[2, 1]), Some(&Scalar::q()));
        assert_eq!(x.len(), 2);
    }

    #[test]
    fn pairing_is_orthonormal() {
        let a: State<Scalar> = ket(&[1, 2]);
        assert!(a.inner(&ket(&[1, 2])).unwrap().is_one());
        assert!(a.inner(&ket(&[2, 1])).unwrap().is_zero());
    }

    #[test]
    fn unit_vector_from_sym_coefficients() {
        let sp = Space::a(2, 4);
        let mut x: State<Scalar> = State::zero(sp);
        x.add_term(&[1, 1, 1, 2], Scalar::parse("(q^-1/[2])^{1/2}").unwrap()).unwrap();
        x.add_term(&[1, 1, 2, 1], Scalar::parse("(q/[2])^{1/2}").unwrap()).unwrap();
        assert!(x.inner(&x).unwrap().is_one());
    }

    #[test]
    fn mismatched_spaces_rejected() {
        let a: State<Scalar> = ket(&[1, 2]);
        let b: State<Scalar> = ket(&[1, 2, 3]);
        assert!(matches!(a.inner(&b), Err(Error::SpaceMismatch(_))));
        assert!(State::<Scalar>::basis(Space::a(2, 2), &[1, 3]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut x: State<Scalar> = ket(&[1, 2]);
        x.add_scaled(&Scalar::parse("q^{1/2}*r2/[3]").unwrap(), &ket(&[2, 1])).unwrap();
        let v = x.to_json();
        assert_eq!(State::from_json(x.space(), &v).unwrap(), x);
    }

    #[test]
    fn alphabets() {
        assert_eq!(Alphabet::Signed(1).letters(), vec![-1, 0, 1]);
        assert_eq!(Alphabet::SignedNoZero(2).letters(), vec![-2, -1, 1, 2]);
        assert_eq!(Space::a(3, 4).kets().len(), 81);
    }
}
