//! Structural checks: Yang-Baxter, intertwiners, n-independence and the
//! float cross-check of exact entries.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::coeff::{Coeff, Exact, Field, Numeric};
use crate::coupling::{asym2_op, b_op, coupled_pair_basis, sym2_op, Shape, Tableau};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hecke::{apply_chain, r_word, Compiled, Hecke, Operator};
use crate::report::{compare_on_kets, Failure, Report};
use crate::scalar::Scalar;
use crate::tensor::{Space, State};

use super::{compute_rmatrix, LabeledMatrix};

/// Sparse columns of a `d^2 x d^2` matrix.
struct Sparse<C> {
    cols: Vec<Vec<(usize, C)>>,
}

impl<C: Coeff> Sparse<C> {
    fn from_dense(m: Vec<Vec<C>>) -> Sparse<C> {
        let n = m.len();
        let mut cols = vec![Vec::new(); n];
        for (r, row) in m.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    cols[c].push((r, v));
                }
            }
        }
        Sparse { cols }
    }

    /// Acts on factors `(pos, pos+1)` of a vector in `V^{⊗3}`.
    fn apply3(&self, d: usize, pos: usize, v: &[C]) -> Vec<C> {
        let mut out = vec![C::zero(); v.len()];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (a, b, c) = (k / (d * d), (k / d) % d, k % d);
            let (pair, rest) = if pos == 0 { (a * d + b, c) } else { (b * d + c, a) };
            for (row, m) in &self.cols[pair] {
                let (ra, rb) = (row / d, row % d);
                let idx = if pos == 0 { (ra * d + rb) * d + rest } else { (rest * d + ra) * d + rb };
                out[idx] = out[idx].add(&m.mul(x));
            }
        }
        out
    }
}

fn ybe_on<C: Coeff>(matrix: &LabeledMatrix, lift: impl Fn(&Scalar) -> C, tol: Option<f64>, mode: String, exec: Exec) -> Report {
    let (_, dense) = matrix.dense(lift);
    let d = (dense.len() as f64).sqrt().round() as usize;
    let mut report = ybe_dense(dense, tol, exec);
    report.relation = "Yang-Baxter (R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R)".into();
    report.space = format!("{}^3, n={}, dim={}", matrix.shape, matrix.n, d * d * d);
    report.mode = mode;
    report
}

/// Braid relation for a dense `d^2 x d^2` matrix acting on `V^{⊗3}`.
pub(crate) fn ybe_dense<C: Coeff>(dense: Vec<Vec<C>>, tol: Option<f64>, exec: Exec) -> Report {
    let d = (dense.len() as f64).sqrt().round() as usize;
    let r = Sparse::from_dense(dense);
    let dim = d * d * d;
    let mut report = Report::new("braid relation on three factors", format!("dim={dim}"), "");
    report.tol = tol;
    let cases: Vec<usize> = (0..dim).collect();
    let results = exec.map(&cases, |&k| {
        let mut e = vec![C::zero(); dim];
        e[k] = C::one();
        let lhs = r.apply3(d, 0, &r.apply3(d, 1, &r.apply3(d, 0, &e)));
        let rhs = r.apply3(d, 1, &r.apply3(d, 0, &r.apply3(d, 1, &e)));
        let res = lhs.iter().zip(&rhs).map(|(a, b)| a.sub(b).magnitude()).fold(0.0, f64::max);
        (k, res)
    });
    for (k, res) in results {
        let bad = match tol {
            Some(t) => !(res <= t),
            None => res != 0.0,
        };
        let fail =
            bad.then(|| Failure { ket: format!("basis vector {k}"), lhs: format!("residual {res:e}"), rhs: String::new() });
        report.record_case(res, fail);
    }
    report
}

/// YBE on `V ⊗ V ⊗ V`, exact or at a numeric `q`.
pub fn ybe_check(matrix: &LabeledMatrix, q: Option<f64>, tol: f64, exec: Exec) -> Result<Report> {
    match q {
        None => Ok(ybe_on(matrix, |s| s.clone(), None, "exact".into(), exec)),
        Some(q) => {
            let f = Numeric::new(q)?;
            Ok(ybe_on(matrix, |s| f.lift(s), Some(tol), f.label(), exec))
        }
    }
}

/// Computes the matrix and runs the YBE check.
pub fn ybe_for(shape: Shape, n: u8, q: Option<f64>, tol: f64, exec: Exec) -> Result<Report> {
    let m = compute_rmatrix(shape, n, exec)?;
    ybe_check(&m, q, tol, exec)
}

/// `lhs(ops) = rhs(ops)` where each side is a product applied right to left.
fn chain_relation<F: Field>(
    report: &mut Report,
    field: &F,
    space: Space,
    lhs: &[&Operator],
    rhs: &[&Operator],
    tol: Option<f64>,
    exec: Exec,
) -> Result<()> {
    let hk = Hecke::new(field);
    let l: Vec<Compiled<F::C>> = lhs.iter().map(|o| o.compile(field)).collect();
    let r: Vec<Compiled<F::C>> = rhs.iter().map(|o| o.compile(field)).collect();
    let lr: Vec<&Compiled<F::C>> = l.iter().collect();
    let rr: Vec<&Compiled<F::C>> = r.iter().collect();
    compare_on_kets(report, exec, &space.kets(), tol, |k| {
        let v = State::basis(space, k)?;
        Ok((apply_chain(&hk, &lr, &v)?, apply_chain(&hk, &rr, &v)?))
    })
}

/// Four-site exchange relations for a two-box coupling operator.
pub fn intertwiner_two<F: Field>(shape: Shape, field: &F, n: u8, tol: Option<f64>, exec: Exec) -> Result<Vec<Report>> {
    let op = match shape {
        Shape::Two => sym2_op as fn(usize) -> Result<Operator>,
        Shape::OneOne => asym2_op,
        _ => return Err(Error::Invalid(format!("{shape} has no two-site coupling operator"))),
    };
    let name = if shape == Shape::Two { "A" } else { "Asym" };
    let space = Space::a(n, 4);
    let r = Operator::word(r_word(2)?);
    let (a12, a34) = (op(1)?, op(3)?);
    let both = a12.times(&a34);
    let label = space.to_string();
    let mut out = Vec::new();
    let cases: [(String, Vec<&Operator>, Vec<&Operator>); 3] = [
        (format!("R {name}12 = {name}34 R"), vec![&r, &a12], vec![&a34, &r]),
        (format!("R {name}34 = {name}12 R"), vec![&r, &a34], vec![&a12, &r]),
        (format!("R {name}12 {name}34 = {name}12 {name}34 R"), vec![&r, &both], vec![&both, &r]),
    ];
    for (rel, l, rr) in cases {
        let mut rep = Report::new(rel, &label, field.label());
        chain_relation(&mut rep, field, space, &l, &rr, tol, exec)?;
        out.push(rep);
    }
    Ok(out)
}

/// Six-site exchange relations of the `B^p` operators.
pub fn intertwiner_b<F: Field>(field: &F, n: u8, tol: Option<f64>, exec: Exec) -> Result<Vec<Report>> {
    let space = Space::a(n, 6);
    let label = space.to_string();
    let r = Operator::word(r_word(3)?);
    let b12: Vec<Operator> = (0..4).map(|p| b_op(p, 1)).collect::<Result<_>>()?;
    let b45: Vec<Operator> = (0..4).map(|p| b_op(p, 4)).collect::<Result<_>>()?;
    let mut pair = Report::new("R B12^p B45^r = B45^p B12^r R, 0 <= p,r <= 3", &label, field.label());
    for p in 0..4 {
        for s in 0..4 {
            chain_relation(&mut pair, field, space, &[&r, &b12[p], &b45[s]], &[&b45[p], &b12[s], &r], tol, exec)?;
        }
    }
    let mut single = Report::new("R B12^p = B45^p R and R B45^p = B12^p R", &label, field.label());
    for p in 0..4 {
        chain_relation(&mut single, field, space, &[&r, &b12[p]], &[&b45[p], &r], tol, exec)?;
        chain_relation(&mut single, field, space, &[&r, &b45[p]], &[&b12[p], &r], tol, exec)?;
    }
    Ok(vec![pair, single])
}

/// Exact two-box relations and float `B^p` relations at each `q`.
pub fn intertwiner_check(shape: Shape, n: u8, qs: &[f64], tol: f64, exec: Exec) -> Result<Vec<Report>> {
    match shape {
        Shape::Two | Shape::OneOne => intertwiner_two(shape, &Exact, n, None, exec),
        Shape::TwoOne => {
            let mut out = Vec::new();
            for &q in qs {
                out.extend(intertwiner_b(&Numeric::new(q)?, n, Some(tol), exec)?);
            }
            Ok(out)
        }
        Shape::One => Err(Error::Invalid("[1] has no coupling operator".into())),
    }
}

/// Labels with letters replaced by their rank among the letters present.
fn pattern(row: &(Tableau, Tableau), col: &(Tableau, Tableau)) -> String {
    let mut letters: Vec<i8> = [&col.0, &col.1, &row.0, &row.1].iter().flat_map(|t| t.content()).collect();
    letters.sort_unstable();
    letters.dedup();
    let rank: HashMap<i8, i8> = letters.iter().enumerate().map(|(i, &a)| (a, i as i8 + 1)).collect();
    let relabel = |t: &Tableau| {
        let rows = t.rows.iter().map(|r| r.iter().map(|a| rank[a]).collect()).collect();
        Tableau { shape: t.shape, rows }.letter_label()
    };
    format!("{},{} <- {},{}", relabel(&row.0), relabel(&row.1), relabel(&col.0), relabel(&col.1))
}

/// Same letter-order pattern gives the same entry for every instantiation.
pub fn n_independence_check(shape: Shape, n1: u8, n2: u8, exec: Exec) -> Result<Report> {
    if n1 >= n2 {
        return Err(Error::Invalid(format!("need n1 < n2, got {n1}, {n2}")));
    }
    let mut report = Report::new("n-independence of entry pattern classes", format!("{shape}, n={n1} and n={n2}"), "exact");
    let mut seen: BTreeMap<String, (Scalar, String)> = BTreeMap::new();
    let mut columns: BTreeSet<String> = BTreeSet::new();
    for n in [n1, n2] {
        let m = compute_rmatrix(shape, n, exec)?;
        for b in &m.blocks {
            for (c, cl) in b.labels.iter().enumerate() {
                for (r, rl) in b.labels.iter().enumerate() {
                    let key = pattern(rl, cl);
                    columns.insert(key.split(" <- ").nth(1).unwrap_or_default().to_string());
                    let v = &b.entries[r][c];
                    let at = format!("n={n}: <{}|R|{}>", b.label(r), b.label(c));
                    match seen.get(&key) {
                        Some((w, first)) if w != v => {
                            report.fail(Failure { ket: key.clone(), lhs: format!("{first} = {w}"), rhs: format!("{at} = {v}") })
                        }
                        Some(_) => report.record_case(0.0, None),
                        None => {
                            seen.insert(key, (v.clone(), at));
                            report.record_case(0.0, None);
                        }
                    }
                }
            }
        }
    }
    report.note(format!("{} column patterns, {} entry pattern classes", columns.len(), seen.len()));
    Ok(report)
}

/// Float pipeline entries against evaluated exact entries.
pub fn float_oracle(matrix: &LabeledMatrix, q: f64, tol: f64) -> Result<Report> {
    let field = Numeric::new(q)?;
    let hk = Hecke::new(&field);
    let r = Operator::word(r_word(matrix.shape.size())?).compile(&field);
    let mut report = Report::new(
        "float pipeline agrees with evaluated exact entries",
        format!("{}, n={}", matrix.shape, matrix.n),
        field.label(),
    );
    report.tol = Some(tol);
    for b in &matrix.blocks {
        let basis = coupled_pair_basis(matrix.shape, &b.content, matrix.n)?;
        let fl: Vec<State<f64>> = basis.iter().map(|k| k.expansion.eval(q)).collect::<Result<_>>()?;
        for (c, col) in fl.iter().enumerate() {
            let img = r.apply(&hk, col)?;
            for (rr, row) in fl.iter().enumerate() {
                let x = row.inner(&img)?;
                let want = b.entries[rr][c].eval_float(q)?;
                let res = (x - want).abs();
                let fail = (!(res <= tol)).then(|| Failure {
                    ket: format!("<{}|R|{}>", b.label(rr), b.label(c)),
                    lhs: x.to_string(),
                    rhs: want.to_string(),
                });
                report.record_case(res, fail);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ybe_vector_rep_exact() {
        let r = ybe_for(Shape::One, 2, None, 0.0, Exec::Sequential).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.cases, 8);
    }

    #[test]
    fn ybe_symmetric_float() {
        let r = ybe_for(Shape::Two, 2, Some(0.7), 1e-10, Exec::Sequential).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.cases, 27);
    }

    #[test]
    fn two_site_intertwiners_exact() {
        for shape in [Shape::Two, Shape::OneOne] {
            for r in intertwiner_two(shape, &Exact, 2, None, Exec::Sequential).unwrap() {
                assert!(r.passed(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn vector_rep_n_independent() {
        let r = n_independence_check(Shape::One, 2, 4, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert!(r.notes[0].starts_with("3 column patterns"), "{}", r.notes[0]);
    }

    #[test]
    fn float_pipeline_agrees() {
        let m = compute_rmatrix(Shape::Two, 3, Exec::Sequential).unwrap();
        let r = float_oracle(&m, 1.3, 1e-10).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}
