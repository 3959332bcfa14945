//! Quadratic identities for the R operator on four and six sites.
//!
//! The identities are checked exactly as printed. Independently, the true
//! difference `R^2 - rhs` is computed in the `T_w` basis, which yields a
//! corrected right-hand side that is then checked in the letter representation.

use serde::Serialize;

use super::iwahori::{perm_string, HeckeElement};
use super::{r_word, BraidWord, Hecke, Operator};
use crate::coeff::{Exact, Field, Numeric};
use crate::error::Result;
use crate::exec::Exec;
use crate::report::{compare_on_kets, Report};
use crate::scalar::Scalar;
use crate::tensor::{Space, State};

/// `lhs = rhs` as operators on `sites` sites.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub sites: usize,
    pub lhs: Operator,
    pub rhs: Operator,
}

/// Word from a compact string: digits are generators, `R` the R word.
fn compact(r: &BraidWord, s: &str) -> BraidWord {
    let mut w = BraidWord::identity();
    for ch in s.chars() {
        w = match ch {
            'R' => w.then(r),
            d => w.then(&BraidWord::from_indices(&[d.to_digit(10).expect("digit") as usize])),
        };
    }
    w
}

fn h_pow(k: i32) -> Scalar {
    Scalar::q_minus_qinv().powi(k).expect("positive power")
}

fn sum(r: &BraidWord, items: &[(i32, &str)]) -> Operator {
    Operator::from_terms(items.iter().map(|(k, s)| (h_pow(*k), compact(r, s))).collect())
}

/// The four-site identity as printed.
pub fn quadratic22_printed() -> Identity {
    let r = r_word(2).expect("f = 2");
    let rhs = sum(&r, &[(1, "13R"), (2, "R"), (1, "31213"), (1, "212"), (1, "232"), (1, "2"), (0, "")]);
    Identity { name: "quadratic R^2 on four sites (printed)".into(), sites: 4, lhs: Operator::word(r.then(&r)), rhs }
}

/// Squared-coefficient words of the six-site identity as printed.
pub const Q41_SQUARE_WORDS: [&str; 14] = [
    "2345412132",
    "2345432434",
    "23454323",
    "312134543231",
    "345413234351",
    "3435121434",
    "3412312431",
    "3421523",
    "34235243",
    "342543",
    "34231243",
    "3243",
    "5341234521",
    "432434",
];

/// Linear-coefficient words of the six-site identity as printed.
pub const Q41_LINEAR_WORDS: [&str; 9] = ["2345432", "341232431", "34543", "3412143", "343", "3", "323", "541234521", "34234"];

/// The six-site identity as printed.
pub fn quadratic41_printed() -> Identity {
    let r = r_word(3).expect("f = 3");
    let mut items: Vec<(i32, &str)> = vec![(2, "R12543"), (3, "R"), (2, "R1215453"), (3, "2R2"), (3, "5R451"), (3, "R14")];
    items.extend(Q41_SQUARE_WORDS.iter().map(|w| (2, *w)));
    items.extend(Q41_LINEAR_WORDS.iter().map(|w| (1, *w)));
    items.push((0, ""));
    Identity {
        name: "quadratic R^2 on six sites (printed)".into(),
        sites: 6,
        lhs: Operator::word(r.then(&r)),
        rhs: sum(&r, &items),
    }
}

/// A term of `lhs - printed rhs` in the standard basis.
#[derive(Clone, Debug, Serialize)]
pub struct CorrectionTerm {
    pub perm: String,
    pub word: String,
    pub coeff: String,
}

#[derive(Clone, Debug)]
pub struct Correction {
    pub corrected: Identity,
    pub terms: Vec<CorrectionTerm>,
    /// Number of standard-basis terms of the left side.
    pub lhs_terms: usize,
}

/// Computes `lhs - rhs` in the `T_w` basis and appends it to `rhs`.
pub fn correct(id: &Identity) -> Result<Correction> {
    let l = HeckeElement::from_operator(&id.lhs, id.sites)?;
    let r = HeckeElement::from_operator(&id.rhs, id.sites)?;
    let diff = l.sub(&r);
    let terms = diff
        .terms()
        .iter()
        .map(|(p, c)| CorrectionTerm {
            perm: perm_string(p),
            word: super::iwahori::reduced_word(p).to_string(),
            coeff: c.to_canonical(),
        })
        .collect();
    let corrected = Identity {
        name: id.name.replace("(printed)", "(corrected)"),
        sites: id.sites,
        lhs: id.lhs.clone(),
        rhs: id.rhs.plus(&diff.to_operator()),
    };
    Ok(Correction { corrected, terms, lhs_terms: l.terms().len() })
}

/// Checks an identity on every ket of `n` letters.
pub fn verify_identity<F: Field>(id: &Identity, field: &F, n: u8, exec: Exec, tol: Option<f64>) -> Result<Report> {
    let space = Space::a(n, id.sites);
    let hk = Hecke::new(field);
    let lhs = id.lhs.compile(field);
    let rhs = id.rhs.compile(field);
    let mut report = Report::new(&id.name, space.to_string(), field.label());
    compare_on_kets(&mut report, exec, &space.kets(), tol, |k| {
        let v = State::basis(space, k)?;
        Ok((lhs.apply(&hk, &v)?, rhs.apply(&hk, &v)?))
    })?;
    Ok(report)
}

/// Printed and corrected verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticReport {
    pub printed: Vec<Report>,
    pub corrected: Vec<Report>,
    pub correction: Vec<CorrectionTerm>,
    pub lhs_terms: usize,
}

impl QuadraticReport {
    pub fn printed_passed(&self) -> bool {
        self.printed.iter().all(Report::passed)
    }

    pub fn corrected_passed(&self) -> bool {
        self.corrected.iter().all(Report::passed)
    }

    /// Marks printed failures as explained when the correction holds.
    fn explain(&mut self) {
        if self.corrected_passed() {
            let note = format!(
                "printed identity differs from the true R^2 by {} standard-basis terms; corrected form passes",
                self.correction.len()
            );
            for r in self.printed.iter_mut().filter(|r| !r.passed()) {
                r.explanation = Some(note.clone());
            }
        }
    }

    /// All reports, printed first.
    pub fn reports(&self) -> Vec<Report> {
        self.printed.iter().chain(&self.corrected).cloned().collect()
    }
}

/// Exact check on all kets of four sites.
pub fn verify_quadratic22(n: u8, exec: Exec) -> Result<QuadraticReport> {
    let id = quadratic22_printed();
    let c = correct(&id)?;
    let mut out = QuadraticReport {
        printed: vec![verify_identity(&id, &Exact, n, exec, None)?],
        corrected: vec![verify_identity(&c.corrected, &Exact, n, exec, None)?],
        correction: c.terms,
        lhs_terms: c.lhs_terms,
    };
    out.explain();
    Ok(out)
}

/// Float check on all kets of six sites at each `q`.
pub fn verify_quadratic41_float(n: u8, qs: &[f64], tol: f64, exec: Exec) -> Result<QuadraticReport> {
    let id = quadratic41_printed();
    let c = correct(&id)?;
    let mut out = QuadraticReport { printed: Vec::new(), corrected: Vec::new(), correction: c.terms, lhs_terms: c.lhs_terms };
    for &q in qs {
        let f = Numeric::new(q)?;
        out.printed.push(verify_identity(&id, &f, n, exec, Some(tol))?);
        out.corrected.push(verify_identity(&c.corrected, &f, n, exec, Some(tol))?);
    }
    out.explain();
    Ok(out)
}

/// Exact variant of the six-site check.
pub fn verify_quadratic41_exact(n: u8, exec: Exec) -> Result<QuadraticReport> {
    let id = quadratic41_printed();
    let c = correct(&id)?;
    let mut out = QuadraticReport {
        printed: vec![verify_identity(&id, &Exact, n, exec, None)?],
        corrected: vec![verify_identity(&c.corrected, &Exact, n, exec, None)?],
        correction: c.terms,
        lhs_terms: c.lhs_terms,
    };
    out.explain();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_four_site_identity_fails_on_constant_ket() {
        let id = quadratic22_printed();
        let v = State::basis(Space::a(1, 4), &[1, 1, 1, 1]).unwrap();
        let lhs = id.lhs.apply(&v).unwrap();
        let rhs = id.rhs.apply(&v).unwrap();
        assert_eq!(lhs.get(&[1, 1, 1, 1]), Some(&Scalar::q_pow(8)));
        assert_eq!(rhs.get(&[1, 1, 1, 1]).unwrap(), &Scalar::parse("q^7 + 2*q^6 - q^5 - q^4").unwrap());
    }

    #[test]
    fn four_site_correction_is_one_coefficient() {
        let c = correct(&quadratic22_printed()).unwrap();
        // only the g1 g3 R coefficient is off
        let r = verify_identity(&c.corrected, &Exact, 2, Exec::Sequential, None).unwrap();
        assert!(r.passed());
        let hk = HeckeElement::from_operator(&c.corrected.rhs, 4).unwrap();
        let fixed = sum(&r_word(2).unwrap(), &[(2, "13R"), (2, "R"), (1, "31213"), (1, "212"), (1, "232"), (1, "2"), (0, "")]);
        assert_eq!(hk, HeckeElement::from_operator(&fixed, 4).unwrap());
    }
}
