//! Coupled basis vectors for the irreps `[1]`, `[2]`, `[11]` and `[21]`,
//! built as coupling operators applied to normal-ordered letter kets.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coeff::{Exact, Field};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hecke::{BraidWord, Operator};
use crate::scalar::Scalar;
use crate::tensor::{Ket, Space, State};

/// Young shapes handled here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Shape {
    One,
    Two,
    OneOne,
    TwoOne,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::One, Shape::Two, Shape::OneOne, Shape::TwoOne];

    /// Number of boxes, which is also the number of sites per factor.
    pub fn size(self) -> usize {
        match self {
            Shape::One => 1,
            Shape::Two | Shape::OneOne => 2,
            Shape::TwoOne => 3,
        }
    }

    /// Smallest alphabet with a tableau of this shape.
    pub fn min_letters(self) -> u8 {
        match self {
            Shape::One | Shape::Two => 1,
            Shape::OneOne | Shape::TwoOne => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Shape> {
        match s.trim().trim_start_matches('[').trim_end_matches(']') {
            "1" => Ok(Shape::One),
            "2" => Ok(Shape::Two),
            "11" | "1,1" | "1^2" => Ok(Shape::OneOne),
            "21" | "2,1" => Ok(Shape::TwoOne),
            other => Err(Error::Invalid(format!("unknown shape {other:?}"))),
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Shape::One => "1",
            Shape::Two => "2",
            Shape::OneOne => "11",
            Shape::TwoOne => "21",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.code())
    }
}

/// Weyl tableau: rows weakly increasing, columns strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tableau {
    pub shape: Shape,
    pub rows: Vec<Vec<i8>>,
}

impl Tableau {
    pub fn new(shape: Shape, rows: Vec<Vec<i8>>) -> Result<Tableau> {
        let t = Tableau { shape, rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let lens: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        let want: &[usize] = match self.shape {
            Shape::One => &[1],
            Shape::Two => &[2],
            Shape::OneOne => &[1, 1],
            Shape::TwoOne => &[2, 1],
        };
        let bad = |why: &str| Err(Error::InvalidTableau(format!("{self}: {why}")));
        if lens != want {
            return bad("row lengths do not match the shape");
        }
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad("row not weakly increasing");
            }
        }
        for r in 1..self.rows.len() {
            for (c, &x) in self.rows[r].iter().enumerate() {
                if self.rows[r - 1][c] >= x {
                    return bad("column not strictly increasing");
                }
            }
        }
        Ok(())
    }

    /// Parses `"12"`, `"1/2"` or `"12/3"`; letters `i j k l` stand for 1..4.
    pub fn parse(shape: Shape, s: &str) -> Result<Tableau> {
        let letter = |c: char| -> Result<i8> {
            match c {
                'i' => Ok(1),
                'j' => Ok(2),
                'k' => Ok(3),
                'l' => Ok(4),
                d if d.is_ascii_digit() => Ok(d as i8 - b'0' as i8),
                _ => Err(Error::InvalidTableau(format!("bad letter {c:?} in {s:?}"))),
            }
        };
        let rows: Result<Vec<Vec<i8>>> = s.split('/').map(|r| r.trim().chars().map(letter).collect()).collect();
        Tableau::new(shape, rows?)
    }

    /// Letters in ascending order.
    pub fn content(&self) -> Vec<i8> {
        let mut c: Vec<i8> = self.rows.iter().flatten().copied().collect();
        c.sort_unstable();
        c
    }

    /// Filling class of a `[21]` tableau, selecting `B^p`.
    pub fn b_class(&self) -> Option<u8> {
        if self.shape != Shape::TwoOne {
            return None;
        }
        let (a, b, c) = (self.rows[0][0], self.rows[0][1], self.rows[1][0]);
        Some(if a == b {
            1
        } else if b == c {
            0
        } else if c < b {
            2
        } else {
            3
        })
    }

    /// Coupling operator mapping `|content⟩` on the first sites to this vector.
    pub fn coupling_op(&self) -> Operator {
        match self.shape {
            Shape::One => Operator::identity(),
            Shape::Two => sym2_op(1).expect("offset 1"),
            Shape::OneOne => asym2_op(1).expect("offset 1"),
            Shape::TwoOne => b_op(self.b_class().expect("[21]"), 1).expect("valid class"),
        }
    }

    /// Label with letters `i j k l` instead of digits.
    pub fn letter_label(&self) -> String {
        let names = ['?', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'r'];
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|&a| names.get(a as usize).copied().unwrap_or('?')).collect()).collect();
        rows.join("/")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().map(|a| a.to_string()).collect()).collect();
        f.write_str(&rows.join("/"))
    }
}

/// All tableaux of `shape` over `1..=n`, sorted.
pub fn tableaux(shape: Shape, n: u8) -> Vec<Tableau> {
    let n = n as i8;
    let mut out = Vec::new();
    for a in 1..=n {
        match shape {
            Shape::One => out.push(Tableau { shape, rows: vec![vec![a]] }),
            Shape::Two => (a..=n).for_each(|b| out.push(Tableau { shape, rows: vec![vec![a, b]] })),
            Shape::OneOne => (a + 1..=n).for_each(|b| out.push(Tableau { shape, rows: vec![vec![a], vec![b]] })),
            Shape::TwoOne => {
                for b in a..=n {
                    for c in a + 1..=n {
                        out.push(Tableau { shape, rows: vec![vec![a, b], vec![c]] });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn site_shift(offset: usize) -> Result<usize> {
    if offset < 1 {
        return Err(Error::Invalid("coupling offsets start at site 1".into()));
    }
    Ok(offset - 1)
}

fn inv_r2() -> Scalar {
    Scalar::r2().div_qnums(&[(2, 1)]).expect("nonempty")
}

fn w(idx: &[usize]) -> BraidWord {
    BraidWord::from_indices(idx)
}

/// `(1/√[2])(q^{-1/2} + q^{1/2} g)` on sites `offset, offset+1`.
pub fn sym2_op(offset: usize) -> Result<Operator> {
    let sh = site_shift(offset)?;
    let c = inv_r2();
    Ok(Operator::from_terms(vec![(&c * &Scalar::s_pow(-1), w(&[])), (&c * &Scalar::s_pow(1), w(&[1]))]).shifted(sh))
}

/// `(1/√[2])(q^{1/2} - q^{-1/2} g)`: the `-q^{-1}` eigenspace.
pub fn asym2_op(offset: usize) -> Result<Operator> {
    let sh = site_shift(offset)?;
    let c = inv_r2();
    Ok(Operator::from_terms(vec![(&c * &Scalar::s_pow(1), w(&[])), (-(&c * &Scalar::s_pow(-1)), w(&[1]))]).shifted(sh))
}

/// Three-site coupling operators `B^0 .. B^3` on sites `offset..offset+2`.
pub fn b_op(p: u8, offset: usize) -> Result<Operator> {
    let sh = site_shift(offset)?;
    let q = Scalar::q;
    let qi = |k: i32| Scalar::q_pow(-k);
    let two = Scalar::qnum(2);
    let over2 = |x: Scalar| x.div_qnums(&[(2, 1)]).expect("nonempty");
    // √(q/[3]!) = q^{1/2} r2 r3 / ([2][3])
    let pre01 = (Scalar::s_pow(1) * Scalar::r2() * Scalar::r3()).div_qnums(&[(2, 1), (3, 1)])?;
    let terms: Vec<(Scalar, BraidWord)> = match p {
        0 => vec![(Scalar::one(), w(&[])), (q(), w(&[1])), (-(qi(1) * &two), w(&[2, 1]))]
            .into_iter()
            .map(|(c, x)| (&pre01 * &c, x))
            .collect(),
        1 => vec![(two.clone(), w(&[])), (-qi(2), w(&[2])), (-qi(1), w(&[1, 2]))]
            .into_iter()
            .map(|(c, x)| (&pre01 * &c, x))
            .collect(),
        2 => vec![
            (over2(Scalar::one()), w(&[2])),
            (over2(q()), w(&[1, 2])),
            (over2(-qi(1)), w(&[2, 1])),
            (over2(Scalar::from_int(-1)), w(&[2, 1, 2])),
        ],
        3 => {
            let pre = Scalar::r3().div_qnums(&[(3, 1)])?;
            vec![
                (Scalar::one(), w(&[])),
                (q(), w(&[1])),
                (over2(-qi(2)), w(&[2])),
                (over2(-qi(1)), w(&[1, 2])),
                (over2(-qi(1)), w(&[2, 1])),
                (over2(Scalar::from_int(-1)), w(&[1, 2, 1])),
            ]
            .into_iter()
            .map(|(c, x)| (&pre * &c, x))
            .collect()
        }
        _ => return Err(Error::Invalid(format!("B operator index {p} not in 0..=3"))),
    };
    Ok(Operator::from_terms(terms).shifted(sh))
}

/// Minimal positive word taking `|sorted⟩` to `|target⟩`; the
/// lexicographically smallest reduced word.
pub fn positive_lift(target: &[i8], sorted: &[i8]) -> Result<BraidWord> {
    let mut t = target.to_vec();
    let mut a = target.to_vec();
    let mut b = sorted.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || sorted.windows(2).any(|x| x[0] > x[1]) {
        return Err(Error::Invalid(format!("{target:?} is not a rearrangement of sorted {sorted:?}")));
    }
    let mut word = Vec::new();
    'outer: loop {
        for i in 1..t.len() {
            if t[i - 1] > t[i] {
                t.swap(i - 1, i);
                word.push(i);
                continue 'outer;
            }
        }
        break;
    }
    Ok(BraidWord::from_indices(&word))
}

/// Normalized `op |ket⟩`.
fn normalized(op: &Operator, space: Space, ket: &[i8]) -> Result<State<Scalar>> {
    let x = op.apply(&State::basis(space, ket)?)?;
    let n2 = x.inner(&x)?;
    if n2.is_zero() {
        return Err(Error::NonOrthonormal(format!("null vector from {ket:?}")));
    }
    let inv = Exact.inv_sqrt(&n2).map_err(|_| Error::NonOrthonormal(format!("norm^2 {n2} has no exact root")))?;
    Ok(x.scaled(&inv))
}

/// Single-factor irrep vector on `shape.size()` sites.
pub fn single_ket(t: &Tableau, n: u8) -> Result<State<Scalar>> {
    let space = Space::a(n, t.shape.size());
    normalized(&t.coupling_op(), space, &t.content())
}

/// Orthonormal basis of the irrep inside the `shape.size()`-site space.
pub fn single_basis(shape: Shape, n: u8) -> Result<Vec<(Tableau, State<Scalar>)>> {
    tableaux(shape, n).into_iter().map(|t| single_ket(&t, n).map(|s| (t, s))).collect()
}

/// Coupled vector of an ordered pair of tableaux.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledKet {
    pub left: Tableau,
    pub right: Tableau,
    pub expansion: State<Scalar>,
}

impl CoupledKet {
    pub fn label(&self) -> String {
        format!("{},{}", self.left, self.right)
    }

    pub fn letter_label(&self) -> String {
        format!("{},{}", self.left.letter_label(), self.right.letter_label())
    }

    pub fn content(&self) -> Vec<i8> {
        let mut c = self.left.content();
        c.extend(self.right.content());
        c.sort_unstable();
        c
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "shape": self.left.shape.to_string(),
            "left": self.left.to_string(),
            "right": self.right.to_string(),
            "expansion": self.expansion.to_json(),
        })
    }
}

/// Builds `|left, right⟩` from the coupling operators and a positive lift.
pub fn coupled_ket(left: &Tableau, right: &Tableau, n: u8) -> Result<CoupledKet> {
    if left.shape != right.shape {
        return Err(Error::InvalidTableau("pair of different shapes".into()));
    }
    left.validate()?;
    right.validate()?;
    let f = left.shape.size();
    let space = Space::a(n, 2 * f);
    let mut target = left.content();
    target.extend(right.content());
    space.check(&target)?;
    let mut sorted = target.clone();
    sorted.sort_unstable();
    let lift = positive_lift(&target, &sorted)?;
    let op = left.coupling_op().times(&right.coupling_op().shifted(f)).times(&Operator::word(lift));
    let expansion = normalized(&op, space, &sorted)?;
    Ok(CoupledKet { left: left.clone(), right: right.clone(), expansion })
}

/// Exact Gram matrix check; returns the first offending pair.
pub fn check_orthonormal(kets: &[CoupledKet]) -> Result<()> {
    for (a, x) in kets.iter().enumerate() {
        for y in &kets[a..] {
            let g = x.expansion.inner(&y.expansion)?;
            let want = if x.label() == y.label() { Scalar::one() } else { Scalar::zero() };
            if g != want {
                return Err(Error::NonOrthonormal(format!("<{}|{}> = {g}", x.label(), y.label())));
            }
        }
    }
    Ok(())
}

/// Ordered pairs over `1..=n` grouped by combined content.
pub fn content_classes(shape: Shape, n: u8) -> BTreeMap<Vec<i8>, Vec<(Tableau, Tableau)>> {
    let ts = tableaux(shape, n);
    let mut out: BTreeMap<Vec<i8>, Vec<(Tableau, Tableau)>> = BTreeMap::new();
    for l in &ts {
        for r in &ts {
            let mut c = l.content();
            c.extend(r.content());
            c.sort_unstable();
            out.entry(c).or_default().push((l.clone(), r.clone()));
        }
    }
    out
}

/// Coupled basis of one content class, orthonormality checked.
pub fn coupled_pair_basis(shape: Shape, content: &[i8], n: u8) -> Result<Vec<CoupledKet>> {
    let mut c = content.to_vec();
    c.sort_unstable();
    let classes = content_classes(shape, n);
    let pairs = classes
        .get(&c)
        .ok_or_else(|| Error::InvalidTableau(format!("content {content:?} admits no pair of {shape} tableaux over n={n}")))?;
    let kets: Vec<CoupledKet> = pairs.iter().map(|(l, r)| coupled_ket(l, r, n)).collect::<Result<_>>()?;
    check_orthonormal(&kets)?;
    Ok(kets)
}

/// Every content class, built in parallel.
pub fn all_pair_bases(shape: Shape, n: u8, exec: Exec) -> Result<Vec<(Vec<i8>, Vec<CoupledKet>)>> {
    let classes: Vec<Vec<i8>> = content_classes(shape, n).into_keys().collect();
    exec.map(&classes, |c| coupled_pair_basis(shape, c, n).map(|b| (c.clone(), b))).into_iter().collect()
}

/// Kets of a content class, as the support set of the invariant block.
pub fn class_kets(content: &[i8]) -> Vec<Ket> {
    let mut out: Vec<Ket> = Vec::new();
    let mut cur: Vec<i8> = content.to_vec();
    cur.sort_unstable();
    loop {
        out.push(Ket::from_slice(&cur));
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{apply_g, apply_word, r_word};

    fn ket(n: u8, k: &[i8]) -> State<Scalar> {
        State::basis(Space::a(n, k.len()), k).unwrap()
    }

    fn p(s: &str) -> Scalar {
        Scalar::parse(s).unwrap()
    }

    #[test]
    fn sym2_examples() {
        let a = sym2_op(1).unwrap();
        let x = a.apply(&ket(2, &[1, 1])).unwrap();
        assert_eq!(x, ket(2, &[1, 1]).scaled(&p("q^{1/2}*r2")));
        let y = a.apply(&ket(2, &[1, 2])).unwrap();
        assert_eq!(y.get(&[1, 2]).unwrap(), &p("(q^-1/[2])^{1/2}"));
        assert_eq!(y.get(&[2, 1]).unwrap(), &p("(q/[2])^{1/2}"));
        assert_eq!(apply_g(1, &y).unwrap(), y.scaled(&Scalar::q()));
    }

    #[test]
    fn asym2_is_the_negative_eigenvector() {
        let a = asym2_op(1).unwrap();
        assert!(a.apply(&ket(2, &[1, 1])).unwrap().is_zero());
        let y = a.apply(&ket(2, &[1, 2])).unwrap();
        assert_eq!(y.get(&[1, 2]).unwrap(), &p("(q/[2])^{1/2}"));
        assert_eq!(y.get(&[2, 1]).unwrap(), &-p("(q^-1/[2])^{1/2}"));
        assert_eq!(apply_g(1, &y).unwrap(), y.scaled(&-Scalar::q_pow(-1)));
    }

    #[test]
    fn b_operator_norms_and_orthogonality() {
        let b0 = b_op(0, 1).unwrap().apply(&ket(3, &[1, 2, 2])).unwrap();
        assert!(b0.inner(&b0).unwrap().is_one());
        assert_eq!(b0.get(&[2, 2, 1]).unwrap(), &-(p("(q/[3]!)^{1/2}") * p("q^-1") * Scalar::qnum(2)));
        let b1 = b_op(1, 1).unwrap().apply(&ket(3, &[1, 1, 2])).unwrap();
        assert!(b1.inner(&b1).unwrap().is_one());
        let b2 = b_op(2, 1).unwrap().apply(&ket(3, &[1, 2, 3])).unwrap();
        let b3 = b_op(3, 1).unwrap().apply(&ket(3, &[1, 2, 3])).unwrap();
        assert!(b2.inner(&b2).unwrap().is_one());
        assert!(b3.inner(&b3).unwrap().is_one());
        assert!(b2.inner(&b3).unwrap().is_zero());
        assert!(b_op(4, 1).is_err());
    }

    #[test]
    fn lifts() {
        assert_eq!(positive_lift(&[1, 2, 1, 2], &[1, 1, 2, 2]).unwrap().to_string(), "g2");
        assert!(positive_lift(&[1, 2, 3, 4], &[1, 2, 3, 4]).unwrap().is_empty());
        let w = positive_lift(&[3, 4, 1, 2], &[1, 2, 3, 4]).unwrap();
        assert_eq!(w.to_string(), "g2 g1 g3 g2");
        let other = BraidWord::parse("2312").unwrap();
        let v = ket(4, &[1, 2, 3, 4]);
        assert_eq!(apply_word(&w, &v).unwrap(), apply_word(&other, &v).unwrap());
        assert!(positive_lift(&[1, 2], &[1, 3]).is_err());
    }

    #[test]
    fn two_by_two_bases() {
        let b = coupled_pair_basis(Shape::Two, &[1, 1, 1, 1], 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].expansion, ket(2, &[1, 1, 1, 1]));
        let b = coupled_pair_basis(Shape::Two, &[1, 1, 2, 2], 2).unwrap();
        let labels: Vec<String> = b.iter().map(CoupledKet::label).collect();
        assert_eq!(labels, vec!["11,22", "12,12", "22,11"]);
    }

    #[test]
    fn kl_ij_is_r_of_ij_kl() {
        let a = coupled_ket(&Tableau::parse(Shape::Two, "ij").unwrap(), &Tableau::parse(Shape::Two, "kl").unwrap(), 4).unwrap();
        let b = coupled_ket(&Tableau::parse(Shape::Two, "kl").unwrap(), &Tableau::parse(Shape::Two, "ij").unwrap(), 4).unwrap();
        assert_eq!(apply_word(&r_word(2).unwrap(), &a.expansion).unwrap(), b.expansion);
        let direct = sym2_op(1).unwrap().times(&sym2_op(3).unwrap()).apply(&ket(4, &[1, 2, 3, 4])).unwrap();
        assert_eq!(a.expansion, direct);
    }

    #[test]
    fn b_classes() {
        let cls = |s: &str| Tableau::parse(Shape::TwoOne, s).unwrap().b_class().unwrap();
        assert_eq!(cls("ij/j"), 0);
        assert_eq!(cls("ii/j"), 1);
        assert_eq!(cls("ik/j"), 2);
        assert_eq!(cls("ij/k"), 3);
        assert!(Tableau::parse(Shape::TwoOne, "ij/i").is_err());
    }

    #[test]
    fn class_kets_are_permutations() {
        assert_eq!(class_kets(&[1, 1, 2]).len(), 3);
        assert_eq!(class_kets(&[1, 2, 3, 4]).len(), 24);
    }
}
