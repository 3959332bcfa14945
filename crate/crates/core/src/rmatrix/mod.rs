//! R matrices in the coupled basis.

pub mod checks;
pub mod golden;

use std::fmt::Write as _;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::coupling::{all_pair_bases, CoupledKet, Shape, Tableau};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hecke::{apply_word, r_word};
use crate::scalar::Scalar;

/// One invariant block: all coupled kets of a letter content.
#[derive(Clone, Debug)]
pub struct Block {
    pub content: Vec<i8>,
    pub labels: Vec<(Tableau, Tableau)>,
    /// `entries[row][col] = <row| R |col>`
    pub entries: Vec<Vec<Scalar>>,
}

impl Block {
    pub fn label(&self, i: usize) -> String {
        format!("{},{}", self.labels[i].0, self.labels[i].1)
    }

    pub fn index_of(&self, left: &Tableau, right: &Tableau) -> Option<usize> {
        self.labels.iter().position(|(l, r)| l == left && r == right)
    }
}

#[derive(Clone, Debug)]
pub struct LabeledMatrix {
    pub shape: Shape,
    pub n: u8,
    pub blocks: Vec<Block>,
}

#[derive(Serialize)]
struct BlockJson {
    content: Vec<i8>,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize)]
struct MatrixJson {
    shape: String,
    n: u8,
    blocks: Vec<BlockJson>,
}

/// Checks that `n` letters can host the shape.
pub fn check_alphabet(shape: Shape, n: u8) -> Result<()> {
    let min = match shape {
        Shape::One | Shape::Two => 1,
        Shape::OneOne => 2,
        // [21] tableaux exist at n = 2, but the tables need three letters
        Shape::TwoOne => 3,
    };
    if n < min {
        return Err(Error::Invalid(format!("{shape} needs an alphabet of at least {min} letters, got n={n}")));
    }
    if n > 9 {
        return Err(Error::Invalid(format!("alphabets beyond 9 letters are not supported, got n={n}")));
    }
    Ok(())
}

/// `R|c>` for each coupled ket, expanded back in its own block.
fn block_of(shape: Shape, content: Vec<i8>, basis: Vec<CoupledKet>) -> Result<Block> {
    let r = r_word(shape.size())?;
    let mut entries = vec![vec![Scalar::zero(); basis.len()]; basis.len()];
    for (c, col) in basis.iter().enumerate() {
        let image = apply_word(&r, &col.expansion)?;
        let mut residual = image.clone();
        for (b, row) in basis.iter().enumerate() {
            let m = row.expansion.inner(&image)?;
            residual.add_scaled(&-&m, &row.expansion)?;
            entries[b][c] = m;
        }
        if !residual.is_zero() {
            return Err(Error::BasisIncomplete(format!("{} ({})", col.label(), residual.render())));
        }
    }
    let labels = basis.into_iter().map(|k| (k.left, k.right)).collect();
    Ok(Block { content, labels, entries })
}

/// Exact R matrix of `shape x shape` over `n` letters.
pub fn compute_rmatrix(shape: Shape, n: u8, exec: Exec) -> Result<LabeledMatrix> {
    check_alphabet(shape, n)?;
    let bases = all_pair_bases(shape, n, exec)?;
    let blocks: Result<Vec<Block>> =
        exec.map(&bases, |(content, basis)| block_of(shape, content.clone(), basis.clone())).into_iter().collect();
    Ok(LabeledMatrix { shape, n, blocks: blocks? })
}

impl LabeledMatrix {
    /// Entry `<row|R|col>`; zero across blocks.
    pub fn entry(&self, row: (&Tableau, &Tableau), col: (&Tableau, &Tableau)) -> Option<Scalar> {
        for b in &self.blocks {
            if let Some(c) = b.index_of(col.0, col.1) {
                return Some(match b.index_of(row.0, row.1) {
                    Some(r) => b.entries[r][c].clone(),
                    None => Scalar::zero(),
                });
            }
        }
        None
    }

    /// Block containing a column label.
    pub fn block_of(&self, col: (&Tableau, &Tableau)) -> Option<(&Block, usize)> {
        self.blocks.iter().find_map(|b| b.index_of(col.0, col.1).map(|c| (b, c)))
    }

    /// All labels in global order.
    pub fn labels(&self) -> Vec<(Tableau, Tableau)> {
        let mut all: Vec<(Tableau, Tableau)> = self.blocks.iter().flat_map(|b| b.labels.iter().cloned()).collect();
        all.sort();
        all
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.labels.len()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let names: Vec<String> = (0..b.labels.len()).map(|i| b.label(i)).collect();
                let mut entries = Vec::new();
                for (r, row) in b.entries.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            entries.push((r, c, v.to_canonical()));
                        }
                    }
                }
                BlockJson { content: b.content.clone(), rows: names.clone(), cols: names, entries }
            })
            .collect();
        serde_json::to_value(MatrixJson { shape: self.shape.to_string(), n: self.n, blocks }).expect("serializable")
    }

    /// `row,col,value` lines for nonzero entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,value\n");
        for b in &self.blocks {
            for (c, _) in b.labels.iter().enumerate() {
                for (r, _) in b.labels.iter().enumerate() {
                    let v = &b.entries[r][c];
                    if !v.is_zero() {
                        let _ = writeln!(out, "\"{}\",\"{}\",\"{}\"", b.label(r), b.label(c), v);
                    }
                }
            }
        }
        out
    }

    /// One `R|col> = ...` line per column.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            for c in 0..b.labels.len() {
                let mut terms = Vec::new();
                for r in 0..b.labels.len() {
                    let v = &b.entries[r][c];
                    if !v.is_zero() {
                        terms.push(format!("({})\\vert {}\\rangle", latex_scalar(v), b.label(r)));
                    }
                }
                let _ = writeln!(out, "R\\vert {}\\rangle = {} \\\\", b.label(c), terms.join(" + "));
            }
        }
        out
    }

    /// Dense numeric matrix over all labels at `q`.
    pub fn eval_dense(&self, q: f64) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
        let labels = self.labels();
        let names: Vec<String> = labels.iter().map(|(l, r)| format!("{l},{r}")).collect();
        let idx = |l: &Tableau, r: &Tableau| labels.iter().position(|x| &x.0 == l && &x.1 == r).expect("label");
        let mut m = vec![vec![0.0; labels.len()]; labels.len()];
        for b in &self.blocks {
            for (c, cl) in b.labels.iter().enumerate() {
                for (r, rl) in b.labels.iter().enumerate() {
                    m[idx(&rl.0, &rl.1)][idx(&cl.0, &cl.1)] = b.entries[r][c].eval_float(q)?;
                }
            }
        }
        Ok((names, m))
    }

    /// Dense lifted matrix for contraction checks.
    pub fn dense<C: Coeff>(&self, lift: impl Fn(&Scalar) -> C) -> (Vec<(Tableau, Tableau)>, Vec<Vec<C>>) {
        let labels = self.labels();
        let idx = |l: &Tableau, r: &Tableau| labels.iter().position(|x| &x.0 == l && &x.1 == r).expect("label");
        let mut m = vec![vec![C::zero(); labels.len()]; labels.len()];
        for b in &self.blocks {
            for (c, cl) in b.labels.iter().enumerate() {
                for (r, rl) in b.labels.iter().enumerate() {
                    m[idx(&rl.0, &rl.1)][idx(&cl.0, &cl.1)] = lift(&b.entries[r][c]);
                }
            }
        }
        (labels, m)
    }
}

fn latex_scalar(s: &Scalar) -> String {
    s.to_canonical().replace("r2", "\\sqrt{[2]}").replace("r3", "\\sqrt{[3]}").replace('*', " ")
}

/// CSV of a dense numeric matrix with labels.
pub fn dense_csv(names: &[String], m: &[Vec<f64>]) -> String {
    let mut out = String::from("label");
    for n in names {
        let _ = write!(out, ",\"{n}\"");
    }
    out.push('\n');
    for (i, row) in m.iter().enumerate() {
        let _ = write!(out, "\"{}\"", names[i]);
        for v in row {
            let _ = write!(out, ",{v:.15e}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(shape: Shape, s: &str) -> Tableau {
        Tableau::parse(shape, s).unwrap()
    }

    #[test]
    fn vector_rep_rules() {
        let m = compute_rmatrix(Shape::One, 2, Exec::Sequential).unwrap();
        let (i, j) = (t(Shape::One, "i"), t(Shape::One, "j"));
        assert_eq!(m.entry((&i, &i), (&i, &i)).unwrap(), Scalar::q());
        assert!(m.entry((&j, &i), (&i, &j)).unwrap().is_one());
        assert_eq!(m.entry((&j, &i), (&j, &i)).unwrap(), Scalar::q_minus_qinv());
        assert_eq!(m.dim(), 4);
    }

    #[test]
    fn symmetric_square_entries() {
        let m = compute_rmatrix(Shape::Two, 2, Exec::Sequential).unwrap();
        let ii = t(Shape::Two, "ii");
        let ij = t(Shape::Two, "ij");
        let jj = t(Shape::Two, "jj");
        assert_eq!(m.entry((&ii, &ii), (&ii, &ii)).unwrap(), Scalar::q_pow(4));
        assert_eq!(m.entry((&jj, &ii), (&ij, &ij)).unwrap(), Scalar::parse("q^3 - q^-1").unwrap());
        assert_eq!(m.entry((&ij, &ij), (&ij, &ij)).unwrap(), Scalar::q_pow(2));
        assert_eq!(m.dim(), 9);
    }

    #[test]
    fn small_alphabet_rejected() {
        assert!(compute_rmatrix(Shape::TwoOne, 2, Exec::Sequential).is_err());
    }
}
