//! The Hecke algebra in its standard basis `T_w`, `w` a permutation.
//!
//! Used as an independent oracle for operator identities: two braid-word
//! combinations are equal in the algebra iff their `T_w` expansions agree.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::{BraidWord, Gen, Operator};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One-line notation of a permutation of `1..=m`.
pub type Perm = SmallVec<[u8; 8]>;

fn identity_perm(m: usize) -> Perm {
    (1..=m as u8).collect()
}

fn position(w: &Perm, v: u8) -> usize {
    w.iter().position(|&x| x == v).expect("value present")
}

/// `s_i w`: swaps the values `i` and `i+1`.
fn left_swap(w: &Perm, i: usize) -> Perm {
    let (a, b) = (i as u8, i as u8 + 1);
    w.iter()
        .map(|&x| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        })
        .collect()
}

pub fn length(w: &Perm) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// Reduced word `s_{i1} s_{i2} ...` by peeling left descents, smallest first.
pub fn reduced_word(w: &Perm) -> BraidWord {
    let mut cur = w.clone();
    let mut out = Vec::new();
    'outer: loop {
        for i in 1..cur.len() {
            if position(&cur, i as u8 + 1) < position(&cur, i as u8) {
                out.push(i);
                cur = left_swap(&cur, i);
                continue 'outer;
            }
        }
        break;
    }
    BraidWord::from_indices(&out)
}

pub fn perm_string(w: &Perm) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Element `Σ c_w T_w` of the Hecke algebra on `strands` strands.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    strands: usize,
    terms: BTreeMap<Perm, Scalar>,
}

impl HeckeElement {
    pub fn zero(strands: usize) -> HeckeElement {
        HeckeElement { strands, terms: BTreeMap::new() }
    }

    pub fn one(strands: usize) -> HeckeElement {
        let mut e = HeckeElement::zero(strands);
        e.terms.insert(identity_perm(strands), Scalar::one());
        e
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, w: Perm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `T_{s_i}^{±1} · self`.
    pub fn left_mul(&self, g: Gen) -> Result<HeckeElement> {
        if g.index < 1 || g.index >= self.strands {
            return Err(Error::IndexOutOfRange { index: g.index, sites: self.strands });
        }
        let h = Scalar::q_minus_qinv();
        let i = g.index;
        let mut out = HeckeElement::zero(self.strands);
        for (w, c) in &self.terms {
            let sw = left_swap(w, i);
            out.push(sw, c.clone());
            let descent = position(w, i as u8 + 1) < position(w, i as u8);
            if descent {
                out.push(w.clone(), c * &h);
            }
            if g.inverse {
                out.push(w.clone(), -(c * &h));
            }
        }
        Ok(out)
    }

    pub fn from_word(w: &BraidWord, strands: usize) -> Result<HeckeElement> {
        let mut e = HeckeElement::one(strands);
        for g in w.gens().iter().rev() {
            e = e.left_mul(*g)?;
        }
        Ok(e)
    }

    pub fn from_operator(op: &Operator, strands: usize) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero(strands);
        for (c, w) in op.terms() {
            let e = HeckeElement::from_word(w, strands)?;
            for (p, v) in e.terms {
                out.push(p, c * &v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (p, v) in &other.terms {
            out.push(p.clone(), -v);
        }
        out
    }

    /// Back to braid words, one reduced word per basis element.
    pub fn to_operator(&self) -> Operator {
        Operator::from_terms(self.terms.iter().map(|(p, c)| (c.clone(), reduced_word(p))).collect())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c}) T{}", perm_string(p))).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation_in_standard_basis() {
        let sq = HeckeElement::from_word(&BraidWord::parse("11").unwrap(), 2).unwrap();
        let rhs = HeckeElement::from_operator(&Operator::gen(1).scaled(&Scalar::q_minus_qinv()).plus(&Operator::identity()), 2)
            .unwrap();
        assert_eq!(sq, rhs);
    }

    #[test]
    fn braid_relation_in_standard_basis() {
        let a = HeckeElement::from_word(&BraidWord::parse("121").unwrap(), 3).unwrap();
        let b = HeckeElement::from_word(&BraidWord::parse("212").unwrap(), 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.terms().len(), 1);
    }

    #[test]
    fn inverse_generator() {
        let w = BraidWord::parse("g2^-1 g2").unwrap();
        assert_eq!(HeckeElement::from_word(&w, 3).unwrap(), HeckeElement::one(3));
    }

    #[test]
    fn reduced_words_have_length() {
        let p: Perm = [3u8, 1, 4, 2].into_iter().collect();
        let w = reduced_word(&p);
        assert_eq!(w.len(), length(&p));
        let e = HeckeElement::from_word(&w, 4).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert!(e.terms().contains_key(&p));
    }
}
