//! Birman-Wenzl representation on the vector representation of the B, C and
//! D series: contraction operator, g1 matrices, relation checks and norms.

use std::fmt;

use serde::Serialize;

use crate::coeff::{Coeff, Exact, Field, Numeric};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hecke::Hecke;
use crate::report::{Failure, Report};
use crate::rmatrix::checks::ybe_dense;
use crate::scalar::Scalar;
use crate::tensor::{Alphabet, Space, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Series {
    B,
    C,
    D,
}

impl Series {
    pub fn parse(s: &str) -> Result<Series> {
        match s.trim() {
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::Invalid(format!("unknown series {other:?}, expected B, C or D"))),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        })
    }
}

/// Weight `w_k` multiplying `|k,-k>` in the contraction operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weights {
    /// `q^k`, as printed.
    Literal,
    /// B: `q^{2k - sgn k}`, D: `q^{2k - 2 sgn k}`, C: `-q^{2k}`.
    Alternative,
}

#[derive(Clone, Debug)]
pub struct SeriesParams {
    pub series: Series,
    pub n: u8,
    pub r: Scalar,
    /// Ascending letters.
    pub index: Vec<i8>,
    pub weights: Weights,
}

/// `(-1)^k` by parity of the integer.
fn parity(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn sgn(k: i8) -> i32 {
    (k > 0) as i32 - (k < 0) as i32
}

fn q(k: i32) -> Scalar {
    Scalar::q_pow(k)
}

impl SeriesParams {
    pub fn new(series: Series, n: u8) -> Result<SeriesParams> {
        if !(1..=4).contains(&n) {
            return Err(Error::Invalid(format!("rank must be in 1..=4, got {n}")));
        }
        let n32 = n as i32;
        let r = match series {
            Series::B => q(2 * n32),
            Series::D => q(2 * n32 - 1),
            Series::C => q(-2 * n32 - 1),
        };
        let index = (-(n as i8)..=n as i8).filter(|&k| series == Series::B || k != 0).collect();
        Ok(SeriesParams { series, n, r, index, weights: Weights::Literal })
    }

    pub fn with_weights(mut self, weights: Weights) -> SeriesParams {
        self.weights = weights;
        self
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.n)
    }

    pub fn alphabet(&self) -> Alphabet {
        match self.series {
            Series::B => Alphabet::Signed(self.n),
            _ => Alphabet::SignedNoZero(self.n),
        }
    }

    pub fn weight(&self, k: i8) -> Scalar {
        let k32 = k as i32;
        match (self.weights, self.series) {
            (Weights::Literal, _) => q(k32),
            (Weights::Alternative, Series::B) => q(2 * k32 - sgn(k)),
            (Weights::Alternative, Series::D) => q(2 * k32 - 2 * sgn(k)),
            (Weights::Alternative, Series::C) => -q(2 * k32),
        }
    }

    /// `x` with `e^2 = x e` for the constructed `e`.
    pub fn x(&self) -> Scalar {
        self.index.iter().map(|&k| self.weight(k)).sum()
    }

    /// `1 + (r - r^{-1})/(q - q^{-1})`.
    pub fn x_standard(&self) -> Result<Scalar> {
        let num = &self.r - &self.r.inverse()?;
        Ok(Scalar::one() + num.div_exact_laurent(&Scalar::q_minus_qinv())?)
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn dim(&self) -> usize {
        self.size() * self.size()
    }

    fn at(&self, a: i8) -> usize {
        self.index.iter().position(|&x| x == a).expect("letter in index set")
    }

    /// Row-major position of `|a,b>`.
    pub fn pos(&self, a: i8, b: i8) -> usize {
        self.at(a) * self.size() + self.at(b)
    }

    pub fn pair(&self, i: usize) -> (i8, i8) {
        (self.index[i / self.size()], self.index[i % self.size()])
    }

    pub fn ket(&self, i: usize) -> String {
        let (a, b) = self.pair(i);
        format!("|{a},{b}>")
    }

    fn positive(&self) -> impl Iterator<Item = i8> + '_ {
        self.index.iter().copied().filter(|&k| k > 0)
    }
}

/// Dense matrix, `m[row][col]`.
pub type Mat<C> = Vec<Vec<C>>;

pub fn zeros<C: Coeff>(d: usize) -> Mat<C> {
    vec![vec![C::zero(); d]; d]
}

pub fn identity<C: Coeff>(d: usize) -> Mat<C> {
    let mut m = zeros(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C::one();
    }
    m
}

pub fn mat_mul<C: Coeff>(a: &Mat<C>, b: &Mat<C>) -> Mat<C> {
    let d = a.len();
    let mut out: Mat<C> = zeros(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
                }
            }
        }
    }
    out
}

fn combine<C: Coeff>(terms: &[(C, &Mat<C>)]) -> Mat<C> {
    let d = terms[0].1.len();
    let mut out: Mat<C> = zeros(d);
    for (c, m) in terms {
        for i in 0..d {
            for j in 0..d {
                if !m[i][j].is_zero() {
                    out[i][j] = out[i][j].add(&c.mul(&m[i][j]));
                }
            }
        }
    }
    out
}

fn lift_mat<F: Field>(field: &F, m: &Mat<Scalar>) -> Mat<F::C> {
    m.iter().map(|row| row.iter().map(|x| field.lift(x)).collect()).collect()
}

/// `e1|mu,-nu> = (-1)^mu delta_{mu nu} sum_k (-1)^k w_k |k,-k>`.
pub fn build_e1(p: &SeriesParams) -> Mat<Scalar> {
    let mut e = zeros(p.dim());
    for &mu in &p.index {
        let col = p.pos(mu, -mu);
        for &k in &p.index {
            e[p.pos(k, -k)][col] = p.weight(k) * Scalar::from_int(parity(mu as i32) * parity(k as i32));
        }
    }
    e
}

/// `sum_k (-1)^k w_k |k,-k>` as a column.
fn contraction_vector(p: &SeriesParams) -> Vec<Scalar> {
    let mut w = vec![Scalar::zero(); p.dim()];
    for &k in &p.index {
        w[p.pos(k, -k)] = p.weight(k) * Scalar::from_int(parity(k as i32));
    }
    w
}

/// Rows of g1 on kets whose letters are not opposite.
fn generic_part(p: &SeriesParams, g: &mut Mat<Scalar>) {
    let h = Scalar::q_minus_qinv();
    for c in 0..p.dim() {
        let (a, b) = p.pair(c);
        if a == b && a != 0 {
            g[c][c] = Scalar::q();
        } else if b != -a {
            g[p.pos(b, a)][c] = Scalar::one();
            if a < b {
                g[c][c] = h.clone();
            }
        }
    }
}

/// g1 transcribed literally, with the `|0,0>` column for the B series.
pub fn build_g1_literal(p: &SeriesParams) -> Result<Mat<Scalar>> {
    let h = Scalar::q_minus_qinv();
    let rinv = p.r.inverse()?;
    let mut g = zeros(p.dim());
    generic_part(p, &mut g);
    for mu in p.positive() {
        let m = mu as i32;
        g[p.pos(-mu, mu)][p.pos(mu, -mu)] = rinv.clone();
        let c = p.pos(-mu, mu);
        g[p.pos(mu, -mu)][c] = q(m - 1) - q(m + 1) + p.r.clone();
        g[c][c] = &h - &q(1 - m) + q(-m - 1);
        for &k in p.index.iter().filter(|&&k| k != mu && k != -mu) {
            g[p.pos(k, -k)][c] = -(&h * &q(k as i32)) * Scalar::from_int(parity(m + k as i32));
        }
    }
    if p.series == Series::B {
        let (a, b, c0) = zero_column_coefficients(p)?;
        let z = p.pos(0, 0);
        for (mu, (am, bm)) in p.positive().zip(a.into_iter().zip(b)) {
            let s = Scalar::from_int(parity(mu as i32));
            g[p.pos(-mu, mu)][z] = &s * &am;
            g[p.pos(mu, -mu)][z] = &s * &bm;
        }
        g[z][z] = c0;
    }
    Ok(g)
}

/// `a_mu`, `b_mu` for `mu = 1..n`, and `c_0`.
pub fn zero_column_coefficients(p: &SeriesParams) -> Result<(Vec<Scalar>, Vec<Scalar>, Scalar)> {
    if p.series != Series::B {
        return Err(Error::Invalid(format!("series {} has no |0,0> ket", p.series)));
    }
    let n = p.n as i32;
    let r = &p.r;
    let rinv = r.inverse()?;
    let q_minus_one = Scalar::q() - Scalar::one();
    let f = Scalar::q_minus_qinv().div_exact_laurent(&q_minus_one)?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for m in 1..=n {
        a.push(
            &q(-m) * &rinv - q(-m + 1) + q(-m - 1) + q(1 - 2 * m) - q(-2 * m - 1) - &q(m) * &rinv
                + &f * &(q(-m) - q(-n - m) - q(-2 * m + 1) + q(-2 * m)),
        );
        b.push(&rinv * &q(m) - q(-1) + Scalar::q() - r * &q(-m) + &f * &(q(m) - q(-n + m) - Scalar::q() + Scalar::one()));
    }
    let c0 = &rinv + &(Scalar::q() - q(-n + 1) - q(-1) + q(-n - 1)).div_exact_laurent(&q_minus_one)?;
    Ok((a, b, c0))
}

/// g1 with the opposite-pair columns re-derived from `g^2 = h(g - r^{-1}e) + 1`
/// and `g e = r^{-1} e`, keeping the rows fixed by the Hecke rules.
pub fn build_g1_corrected(p: &SeriesParams) -> Result<Mat<Scalar>> {
    let h = Scalar::q_minus_qinv();
    let rinv = p.r.inverse()?;
    let w = contraction_vector(p);
    let mut g = zeros(p.dim());
    generic_part(p, &mut g);
    let mut cols: Vec<(i8, Vec<Scalar>)> = Vec::new();
    for mu in p.positive() {
        g[p.pos(-mu, mu)][p.pos(mu, -mu)] = rinv.clone();
        let s = Scalar::from_int(parity(mu as i32));
        let mut c: Vec<Scalar> = w.iter().map(|x| -(&(&h * &s) * x)).collect();
        c[p.pos(mu, -mu)] = &c[p.pos(mu, -mu)] + &p.r;
        c[p.pos(-mu, mu)] = &c[p.pos(-mu, mu)] + &h;
        for (row, v) in c.iter().enumerate() {
            g[row][p.pos(-mu, mu)] = v.clone();
        }
        cols.push((mu, c));
    }
    if p.series == Series::B {
        let mut v: Vec<Scalar> = w.iter().map(|x| x * &rinv).collect();
        for (mu, c) in &cols {
            let s = Scalar::from_int(parity(*mu as i32));
            let i = p.pos(-*mu, *mu);
            v[i] = &v[i] - &(&(&s * &p.weight(*mu)) * &rinv);
            let k = &s * &p.weight(-*mu);
            for (x, y) in v.iter_mut().zip(c) {
                *x = &*x - &(&k * y);
            }
        }
        let inv0 = p.weight(0).inverse()?;
        let z = p.pos(0, 0);
        for (row, x) in v.into_iter().enumerate() {
            g[row][z] = &x * &inv0;
        }
    }
    Ok(g)
}

/// Column `c` of `m` as a ket sum.
fn column_string<C: Coeff>(p: &SeriesParams, m: &Mat<C>, c: usize) -> String {
    let parts: Vec<String> =
        (0..m.len()).filter(|&r| !m[r][c].is_zero()).map(|r| format!("({}){}", m[r][c].render(), p.ket(r))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn column_residual<C: Coeff>(l: &Mat<C>, r: &Mat<C>, c: usize) -> f64 {
    (0..l.len()).map(|i| l[i][c].sub(&r[i][c]).magnitude()).fold(0.0, f64::max)
}

fn compare<C: Coeff>(p: &SeriesParams, name: &str, mode: &str, l: &Mat<C>, r: &Mat<C>, tol: Option<f64>) -> Report {
    let mut report = Report::new(name, format!("{} vector rep, 2 sites, dim={}", p.label(), p.dim()), mode);
    report.tol = tol;
    for c in 0..l.len() {
        let res = column_residual(l, r, c);
        let bad = match tol {
            Some(t) => !(res <= t),
            None => res != 0.0,
        };
        let fail = bad.then(|| Failure { ket: p.ket(c), lhs: column_string(p, l, c), rhs: column_string(p, r, c) });
        report.record_case(res, fail);
    }
    report
}

/// Relation names in report order.
pub const RELATIONS: [&str; 6] = [
    "cubic (g - r^-1)(g - q)(g + q^-1) = 0",
    "e from g, multiplied by g: h e g = h g - g^2 + 1",
    "e g = r^-1 e",
    "g e = r^-1 e",
    "e^2 = x e",
    "g^2 = h (g - r^-1 e) + 1",
];

/// Both sides of each relation in `RELATIONS` order.
fn relation_sides<C: Coeff>(g: &Mat<C>, e: &Mat<C>, x: &C, r: &C, qq: &C, h: &C) -> Result<Vec<(Mat<C>, Mat<C>)>> {
    let d = g.len();
    let id: Mat<C> = identity(d);
    let rinv = inverse_coeff(r)?;
    let qinv = inverse_coeff(qq)?;
    let g2 = mat_mul(g, g);
    let eg = mat_mul(e, g);
    let ge = mat_mul(g, e);
    let cubic = mat_mul(
        &mat_mul(&combine(&[(C::one(), g), (rinv.neg(), &id)]), &combine(&[(C::one(), g), (qq.neg(), &id)])),
        &combine(&[(C::one(), g), (qinv, &id)]),
    );
    let re = combine(&[(rinv.clone(), e)]);
    Ok(vec![
        (cubic, zeros(d)),
        (combine(&[(h.clone(), &eg)]), combine(&[(h.clone(), g), (C::one().neg(), &g2), (C::one(), &id)])),
        (eg.clone(), re.clone()),
        (ge, re),
        (mat_mul(e, e), combine(&[(x.clone(), e)])),
        (g2, combine(&[(h.clone(), g), (h.mul(&rinv).neg(), e), (C::one(), &id)])),
    ])
}

fn inverse_coeff<C: Coeff>(c: &C) -> Result<C> {
    c.inv().ok_or_else(|| Error::UnsupportedDivision(format!("{} is not invertible", c.render())))
}

/// Checks every relation of `RELATIONS` plus the braid relation.
pub fn verify_relations<F: Field>(
    p: &SeriesParams,
    g: &Mat<Scalar>,
    which: &str,
    field: &F,
    tol: Option<f64>,
    exec: Exec,
) -> Result<Vec<Report>> {
    verify_with(p, g, &build_e1(p), &p.r, &p.x(), which, field, tol, exec)
}

/// Relations for an explicit contraction `e`, `r` and `x`.
#[allow(clippy::too_many_arguments)]
fn verify_with<F: Field>(
    p: &SeriesParams,
    g: &Mat<Scalar>,
    e: &Mat<Scalar>,
    r: &Scalar,
    x: &Scalar,
    which: &str,
    field: &F,
    tol: Option<f64>,
    exec: Exec,
) -> Result<Vec<Report>> {
    let e = lift_mat(field, e);
    let gl = lift_mat(field, g);
    let sides =
        relation_sides(&gl, &e, &field.lift(x), &field.lift(r), &field.lift(&Scalar::q()), &field.lift(&Scalar::q_minus_qinv()))?;
    let mode = field.label();
    let mut out: Vec<Report> = RELATIONS
        .iter()
        .zip(&sides)
        .map(|(name, (l, r))| compare(p, &format!("{} {which}: {name}", p.label()), &mode, l, r, tol))
        .collect();
    let mut braid = ybe_dense(gl, tol, exec);
    braid.relation = format!("{} {which}: braid g1 g2 g1 = g2 g1 g2", p.label());
    braid.space = format!("{} vector rep, 3 sites, dim={}", p.label(), p.size().pow(3));
    braid.mode = mode;
    out.push(braid);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Float { q: f64, tol: f64 },
}

/// All relations for a g1 matrix in the requested mode.
pub fn verify_bmw(p: &SeriesParams, g: &Mat<Scalar>, which: &str, mode: Mode, exec: Exec) -> Result<Vec<Report>> {
    match mode {
        Mode::Exact => verify_relations(p, g, which, &Exact, None, exec),
        Mode::Float { q, tol } => verify_relations(p, g, which, &Numeric::new(q)?, Some(tol), exec),
    }
}

/// Off opposite pairs, g1 acts by the Hecke rules with the letter order reversed.
pub fn hecke_cross_check(p: &SeriesParams, g: &Mat<Scalar>) -> Result<Report> {
    let space = Space::new(p.alphabet(), 2);
    let hk = Hecke::new(&Exact);
    let mut report = Report::new(
        format!("{} g1 on non-opposite kets equals the Hecke action with reversed letter order", p.label()),
        space.to_string(),
        "exact",
    );
    for c in 0..p.dim() {
        let (a, b) = p.pair(c);
        if b == a || b == -a {
            continue;
        }
        let v: State<Scalar> = State::basis(space, &[-a, -b])?;
        let img = hk.apply_g(1, &v)?.map_kets(|k, x, out| {
            out.push(k.iter().map(|l| -l).collect(), x.clone());
            Ok(())
        })?;
        let mut diff = 0.0;
        for r in 0..p.dim() {
            let (x, y) = p.pair(r);
            let want = img.get(&[x, y]).cloned().unwrap_or_else(Scalar::zero);
            if want != g[r][c] {
                diff = f64::INFINITY;
            }
        }
        let fail = (diff != 0.0).then(|| Failure { ket: p.ket(c), lhs: column_string(p, g, c), rhs: img.render() });
        report.record_case(diff, fail);
    }
    Ok(report)
}

/// `2 rho_k` for the letter `k`, letters ascending as in the index set.
fn rho2(series: Series, k: i8) -> i32 {
    let k32 = k as i32;
    match series {
        Series::B => -2 * k32 + sgn(k),
        Series::D => -2 * k32 + 2 * sgn(k),
        Series::C => -2 * k32,
    }
}

/// Sign of the invariant bilinear form: symmetric for B, D and symplectic for C.
fn eps(series: Series, k: i8) -> i64 {
    if series == Series::C && k > 0 {
        -1
    } else {
        1
    }
}

/// Singlet eigenvalue `r^{-1}` of the tensor-basis g1: B `q^{2n}`, D `q^{2n-1}`, C `-q^{2n+1}`.
pub fn reference_r(series: Series, n: u8) -> Scalar {
    let n = n as i32;
    match series {
        Series::B => q(2 * n),
        Series::D => q(2 * n - 1),
        Series::C => -q(2 * n + 1),
    }
}

/// g1, e1 of the vector representation in a tensor-product basis.
#[derive(Clone, Debug)]
pub struct Reference {
    pub r: Scalar,
    pub x: Scalar,
    pub g: Mat<Scalar>,
    pub e: Mat<Scalar>,
}

/// Swapped standard orthogonal/symplectic R matrix. Off opposite pairs it is
/// [`generic_part`]; `|a,-a>` maps to `c_a |-a,a> + [a < 0] h |a,-a>
/// - h sum_{i > a} eps_i eps_a q^{rho_i - rho_a} |-i,i>` with `c_0 = 1`, else `q^{-1}`.
pub fn build_reference(p: &SeriesParams) -> Reference {
    let h = Scalar::q_minus_qinv();
    let mut g = zeros(p.dim());
    generic_part(p, &mut g);
    for &a in &p.index {
        let col = p.pos(a, -a);
        let c = if a == 0 { Scalar::one() } else { q(-1) };
        g[p.pos(-a, a)][col] = &g[p.pos(-a, a)][col] + &c;
        if a < 0 {
            g[col][col] = &g[col][col] + &h;
        }
        for &i in p.index.iter().filter(|&&i| i > a) {
            let coeff = &h * &Scalar::s_pow(rho2(p.series, i) - rho2(p.series, a));
            let row = p.pos(-i, i);
            g[row][col] = &g[row][col] - &(&coeff * &Scalar::from_int(eps(p.series, i) * eps(p.series, a)));
        }
    }
    let kappa = if p.series == Series::C { -1 } else { 1 };
    let mut e = zeros(p.dim());
    for &i in &p.index {
        for &a in &p.index {
            let sign = Scalar::from_int(kappa * eps(p.series, i) * eps(p.series, a));
            e[p.pos(i, -i)][p.pos(a, -a)] = &sign * &Scalar::s_pow(-rho2(p.series, i) - rho2(p.series, a));
        }
    }
    let x = p.index.iter().map(|&k| Scalar::from_int(kappa) * Scalar::s_pow(-2 * rho2(p.series, k))).sum();
    Reference { r: reference_r(p.series, p.n), x, g, e }
}

/// All relations for the tensor-basis g1.
pub fn verify_reference(p: &SeriesParams, mode: Mode, exec: Exec) -> Result<Vec<Report>> {
    let rf = build_reference(p);
    match mode {
        Mode::Exact => verify_with(p, &rf.g, &rf.e, &rf.r, &rf.x, "tensor basis", &Exact, None, exec),
        Mode::Float { q, tol } => verify_with(p, &rf.g, &rf.e, &rf.r, &rf.x, "tensor basis", &Numeric::new(q)?, Some(tol), exec),
    }
}

/// Orders the kets `|k,-k>` and restricts `g` to them.
fn opposite_block(p: &SeriesParams, g: &Mat<Scalar>) -> Mat<Scalar> {
    let kets: Vec<usize> = p.index.iter().map(|&k| p.pos(k, -k)).collect();
    kets.iter().map(|&r| kets.iter().map(|&c| g[r][c].clone()).collect()).collect()
}

fn trace(m: &Mat<Scalar>) -> Scalar {
    (0..m.len()).map(|i| m[i][i].clone()).sum()
}

/// Checks that `g` equals the tensor-basis g1 off the opposite-pair block and is
/// similar to it on the block. Both satisfy the same cubic, so equal traces of
/// the block and of its square fix the eigenvalue multiplicities.
pub fn compare_with_reference(p: &SeriesParams, g: &Mat<Scalar>, which: &str) -> Report {
    let rf = build_reference(p);
    let mut report = Report::new(
        format!("{} {which}: equals the tensor-basis g1 off opposite pairs, similar on them", p.label()),
        format!("{} vector rep, 2 sites, dim={}", p.label(), p.dim()),
        "exact",
    );
    for c in (0..p.dim()).filter(|&c| p.pair(c).1 != -p.pair(c).0) {
        let same = (0..p.dim()).all(|r| g[r][c] == rf.g[r][c]);
        let fail = (!same).then(|| Failure { ket: p.ket(c), lhs: column_string(p, g, c), rhs: column_string(p, &rf.g, c) });
        report.record_case(if same { 0.0 } else { f64::INFINITY }, fail);
    }
    let (a, b) = (opposite_block(p, g), opposite_block(p, &rf.g));
    for (name, x, y) in [
        ("trace of the opposite block", trace(&a), trace(&b)),
        ("trace of the squared opposite block", trace(&mat_mul(&a, &a)), trace(&mat_mul(&b, &b))),
    ] {
        let fail = (x != y).then(|| Failure { ket: name.into(), lhs: x.to_canonical(), rhs: y.to_canonical() });
        report.record_case(if x == y { 0.0 } else { f64::INFINITY }, fail);
    }
    report
}

/// Squared norms of the opposite-pair kets.
#[derive(Clone, Debug, Serialize)]
pub struct NormTable {
    pub series: String,
    /// `(mu, N_mu^2)` for `mu > 0`.
    pub n_mu_sq: Vec<(i8, String)>,
    /// `N_mu` when the square root is a monomial.
    pub n_mu: Vec<(i8, String)>,
    /// `N_0^2` as numerator and denominator (B only).
    pub n0_sq_num: Option<String>,
    pub n0_sq_den: Option<String>,
    /// `N_0^2` when the division is exact.
    pub n0_sq: Option<String>,
}

pub fn norm_squares(p: &SeriesParams) -> Vec<(i8, Scalar)> {
    let h = Scalar::q_minus_qinv();
    p.positive().map(|mu| (mu, &(&p.r * &p.r) - &(&(&p.r * &q(mu as i32)) * &h))).collect()
}

/// `(numerator, denominator)` of `N_0^2`.
pub fn n0_square(p: &SeriesParams) -> Result<(Scalar, Scalar)> {
    let (a, b, c0) = zero_column_coefficients(p)?;
    let r = &p.r;
    let rinv = r.inverse()?;
    let mut num = Scalar::zero();
    for (m, (am, bm)) in (1..=p.n as i32).zip(a.iter().zip(&b)) {
        num = num + &(&(am * am) * r) * &(r - &q(m + 1) + q(m - 1)) + bm * bm;
    }
    let den = Scalar::one() + &Scalar::q_minus_qinv() * &(&c0 - &rinv) + &c0 * &c0;
    Ok((num, den))
}

pub fn norm_constants(p: &SeriesParams) -> Result<NormTable> {
    let sq = norm_squares(p);
    let n_mu = sq.iter().filter_map(|(mu, s)| s.sqrt().ok().map(|x| (*mu, x.to_canonical()))).collect();
    let (num, den, exact) = if p.series == Series::B {
        let (num, den) = n0_square(p)?;
        let exact = num.div_exact_laurent(&den).ok().map(|x| x.to_canonical());
        (Some(num.to_canonical()), Some(den.to_canonical()), exact)
    } else {
        (None, None, None)
    };
    Ok(NormTable {
        series: p.label(),
        n_mu_sq: sq.into_iter().map(|(m, s)| (m, s.to_canonical())).collect(),
        n_mu,
        n0_sq_num: num,
        n0_sq_den: den,
        n0_sq: exact,
    })
}

/// A column violating a relation, with the corrected column's residual.
#[derive(Clone, Debug, Serialize)]
pub struct RowCorrection {
    pub relation: String,
    pub ket: String,
    pub literal_residual: f64,
    pub corrected_residual: f64,
    pub corrected_column: String,
}

/// Per relation, every violated column of the literal g1 at `q`, paired with
/// the corrected g1 built on the alternative weights (for which `x` agrees
/// with `1 + (r - r^{-1})/(q - q^{-1})`).
pub fn row_corrections(p: &SeriesParams, q: f64, tol: f64) -> Result<Vec<RowCorrection>> {
    let f = Numeric::new(q)?;
    let alt = p.clone().with_weights(Weights::Alternative);
    let cor = build_g1_corrected(&alt)?;
    let sides = |p: &SeriesParams, g: &Mat<Scalar>| -> Result<Vec<(Mat<f64>, Mat<f64>)>> {
        relation_sides(
            &lift_mat(&f, g),
            &lift_mat(&f, &build_e1(p)),
            &f.lift(&p.x()),
            &f.lift(&p.r),
            &f.lift(&Scalar::q()),
            &f.lift(&Scalar::q_minus_qinv()),
        )
    };
    let (ls, cs) = (sides(p, &build_g1_literal(p)?)?, sides(&alt, &cor)?);
    let mut out = Vec::new();
    for (name, ((ll, lr), (cl, cr))) in RELATIONS.iter().zip(ls.iter().zip(&cs)) {
        for c in 0..p.dim() {
            let lres = column_residual(ll, lr, c);
            if lres > tol {
                out.push(RowCorrection {
                    relation: name.to_string(),
                    ket: p.ket(c),
                    literal_residual: lres,
                    corrected_residual: column_residual(cl, cr, c),
                    corrected_column: column_string(p, &cor, c),
                });
            }
        }
    }
    Ok(out)
}

/// Literal versus standard `x`, and relation residuals under both weight choices.
#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub series: String,
    pub x_literal: String,
    pub x_standard: String,
    pub x_equal: bool,
    /// Both values at `q = 2`.
    pub x_literal_at_2: f64,
    pub x_standard_at_2: f64,
    pub alternative_weights: String,
    pub x_alternative: String,
    pub x_alternative_equal: bool,
    /// `(relation, max residual at q)` for literal g1 and e.
    pub literal: Vec<(String, f64)>,
    /// Same for the corrected g1 with alternative weights.
    pub alternative: Vec<(String, f64)>,
    /// Singlet eigenvalue inverse of the tensor-basis g1, and whether it equals `r`.
    pub reference_r: String,
    pub r_equal: bool,
    pub reference_x: String,
    /// Relation residuals of the tensor-basis g1.
    pub reference: Vec<(String, f64)>,
    pub q: f64,
}

fn residuals(reports: &[Report]) -> Vec<(String, f64)> {
    reports.iter().map(|r| (r.relation.split(": ").nth(1).unwrap_or(&r.relation).to_string(), r.max_residual)).collect()
}

pub fn discrepancy(series: Series, n: u8, q: f64, exec: Exec) -> Result<Discrepancy> {
    let p = SeriesParams::new(series, n)?;
    let alt = p.clone().with_weights(Weights::Alternative);
    let xs = p.x_standard()?;
    let mode = Mode::Float { q, tol: 1e-10 };
    let literal = verify_bmw(&p, &build_g1_literal(&p)?, "literal", mode, exec)?;
    let alternative = verify_bmw(&alt, &build_g1_corrected(&alt)?, "corrected, alternative weights", mode, exec)?;
    let rf = build_reference(&p);
    let reference = verify_reference(&p, mode, exec)?;
    let desc = match series {
        Series::B => "w_k = q^{2k - sgn k}",
        Series::D => "w_k = q^{2k - 2 sgn k}",
        Series::C => "w_k = -q^{2k}",
    };
    Ok(Discrepancy {
        series: p.label(),
        x_literal: p.x().to_canonical(),
        x_standard: xs.to_canonical(),
        x_equal: p.x() == xs,
        x_literal_at_2: p.x().eval_float(2.0)?,
        x_standard_at_2: xs.eval_float(2.0)?,
        alternative_weights: desc.into(),
        x_alternative: alt.x().to_canonical(),
        x_alternative_equal: alt.x() == xs,
        literal: residuals(&literal),
        alternative: residuals(&alternative),
        reference_r: rf.r.to_canonical(),
        r_equal: rf.r == p.r,
        reference_x: rf.x.to_canonical(),
        reference: residuals(&reference),
        q,
    })
}

/// Full bmw run: exact relations, rows, norms and discrepancies.
#[derive(Clone, Debug, Serialize)]
pub struct BmwSuite {
    pub exact: Vec<Report>,
    pub corrected: Vec<Report>,
    pub hecke: Vec<Report>,
    /// Tensor-basis g1 relations and the similarity comparisons.
    pub reference: Vec<Report>,
    pub rows: Vec<(String, Vec<RowCorrection>)>,
    pub norms: Vec<NormTable>,
    pub discrepancies: Vec<Discrepancy>,
}

pub const ROW_Q: f64 = 0.8;

/// A literal two-site failure is explained when the same relation holds for
/// the corrected g1 and every violated column has a consistent correction.
fn explain_literal(p: &SeriesParams, literal: &mut [Report], corrected: &[Report], rows: &[RowCorrection]) {
    let rows_ok = rows.iter().all(|r| r.corrected_residual < 1e-10);
    for (l, c) in literal.iter_mut().zip(corrected) {
        if !l.passed() && c.passed() && rows_ok && !l.relation.contains("braid") {
            l.explanation = Some(format!(
                "literal weights give x = {}; with weights making x = 1 + (r - r^-1)/(q - q^-1) the relation holds",
                p.x()
            ));
        }
    }
}

/// A braid failure is explained when the tensor-basis g1 passes every relation
/// and the g1 under test satisfies the cubic, agrees with it off opposite pairs
/// and is similar to it on them.
fn explain_braid(reports: &mut [Report], reference: &[Report], similar: &Report) {
    let cubic = reports.iter().find(|r| r.relation.contains("cubic")).is_some_and(Report::passed);
    if !(cubic && similar.passed() && reference.iter().all(Report::passed)) {
        return;
    }
    for r in reports.iter_mut().filter(|r| r.relation.contains("braid") && !r.passed()) {
        r.explanation = Some(
            "the opposite-pair block is written in a basis that is not a tensor product; \
             the tensor-basis g1, equal off that block and similar on it, satisfies the braid relation"
                .into(),
        );
    }
}

pub fn bmw_suite(exec: Exec) -> Result<BmwSuite> {
    let mut suite = BmwSuite {
        exact: Vec::new(),
        corrected: Vec::new(),
        hecke: Vec::new(),
        reference: Vec::new(),
        rows: Vec::new(),
        norms: Vec::new(),
        discrepancies: Vec::new(),
    };
    for n in [1, 2] {
        let p = SeriesParams::new(Series::B, n)?;
        let lit = build_g1_literal(&p)?;
        let mut exact = verify_bmw(&p, &lit, "literal", Mode::Exact, exec)?;
        let alt = p.clone().with_weights(Weights::Alternative);
        let cor = build_g1_corrected(&alt)?;
        let mut corrected = verify_bmw(&alt, &cor, "corrected", Mode::Exact, exec)?;
        let rows = row_corrections(&p, ROW_Q, 1e-10)?;
        let reference = verify_reference(&p, Mode::Exact, exec)?;
        let (sim_lit, sim_cor) = (compare_with_reference(&p, &lit, "literal"), compare_with_reference(&p, &cor, "corrected"));
        explain_literal(&p, &mut exact, &corrected, &rows);
        explain_braid(&mut exact, &reference, &sim_lit);
        explain_braid(&mut corrected, &reference, &sim_cor);
        suite.exact.extend(exact);
        suite.corrected.extend(corrected);
        suite.reference.extend(reference);
        suite.reference.push(sim_lit);
        suite.reference.push(sim_cor);
        suite.hecke.push(hecke_cross_check(&p, &lit)?);
        suite.rows.push((p.label(), rows));
        suite.norms.push(norm_constants(&p)?);
    }
    for (s, n) in [(Series::B, 1), (Series::B, 2), (Series::C, 1), (Series::C, 2), (Series::D, 2), (Series::D, 3)] {
        suite.discrepancies.push(discrepancy(s, n, ROW_Q, exec)?);
    }
    Ok(suite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u8) -> SeriesParams {
        SeriesParams::new(Series::B, n).unwrap()
    }

    #[test]
    fn contraction_on_b1() {
        let p = b(1);
        let e = build_e1(&p);
        let c = p.pos(1, -1);
        assert_eq!(e[p.pos(-1, 1)][c], Scalar::q_pow(-1));
        assert_eq!(e[p.pos(0, 0)][c], Scalar::from_int(-1));
        assert_eq!(e[p.pos(1, -1)][c], Scalar::q());
        assert!((0..p.dim()).all(|r| e[r][p.pos(1, 1)].is_zero()));
        assert_eq!(p.x(), Scalar::parse("q + 1 + q^-1").unwrap());
        let ee = mat_mul(&e, &e);
        let xe: Mat<Scalar> = e.iter().map(|row| row.iter().map(|v| v * &p.x()).collect()).collect();
        assert_eq!(ee, xe);
    }

    #[test]
    fn literal_rows() {
        let p = b(2);
        let g = build_g1_literal(&p).unwrap();
        assert_eq!(g[p.pos(2, 2)][p.pos(2, 2)], Scalar::q());
        assert_eq!(g[p.pos(-1, 1)][p.pos(1, -1)], Scalar::q_pow(-4));
        assert!(g[p.pos(1, 2)][p.pos(2, 1)].is_one());
        assert_eq!(g[p.pos(1, 2)][p.pos(1, 2)], Scalar::q_minus_qinv());
    }

    #[test]
    fn norms_at_b1() {
        let p = b(1);
        let sq = norm_squares(&p);
        assert_eq!(sq[0].1, Scalar::q_pow(2));
        assert_eq!(sq[0].1.eval_float(2.0).unwrap(), 4.0);
        for n in 1..=3 {
            assert!(norm_squares(&b(n)).iter().all(|(_, s)| s.denominator().is_empty()));
        }
    }

    #[test]
    fn standard_x() {
        assert_eq!(b(1).x_standard().unwrap(), b(1).x());
        let d2 = SeriesParams::new(Series::D, 2).unwrap();
        assert_eq!(d2.x().eval_float(2.0).unwrap(), 6.75);
        assert_eq!(d2.x_standard().unwrap().eval_float(2.0).unwrap(), 6.25);
        assert_eq!(d2.clone().with_weights(Weights::Alternative).x(), d2.x_standard().unwrap());
    }

    #[test]
    fn series_parse_rejects_unknown() {
        assert!(Series::parse("E").is_err());
        assert!(SeriesParams::new(Series::B, 0).is_err());
    }
}
