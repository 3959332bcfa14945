//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use braid_rmatrix::bmw::build_g1_literal;
use braid_rmatrix::bmw::{bmw_suite, discrepancy, row_corrections, verify_bmw, Mode, Series, SeriesParams, ROW_Q};
use braid_rmatrix::coupling::Shape;
use braid_rmatrix::exec::Exec;
use braid_rmatrix::hecke::identities::{verify_quadratic22, verify_quadratic41_float};
use braid_rmatrix::hecke::{apply_word, verify_hecke, BraidWord};
use braid_rmatrix::report::Report;
use braid_rmatrix::rmatrix::checks::{intertwiner_check, n_independence_check, ybe_for};
use braid_rmatrix::rmatrix::golden::{golden_suite, Golden, GoldenReport};
use braid_rmatrix::scalar::{Mono, Scalar};
use braid_rmatrix::tensor::{Space, State};
use braid_rmatrix::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const QS: [f64; 2] = [0.7, 1.3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}

fn failing(reports: &[Report]) -> String {
    let bad: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| format!("{} [{}]", r.relation, r.space)).collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join(", "))
    }
}

fn golden(shape: Shape) -> Result<GoldenReport> {
    golden_suite(&Golden::load()?, shape, Exec::default())
}

fn golden_line(g: &GoldenReport) -> String {
    let ev =
        if g.evidence.is_empty() { "no mismatches".to_string() } else { format!("evidence passed: {}", g.evidence_passed()) };
    format!("{}: {}/{} relations exact ({:.1}%), {ev}", g.shape, g.exact, g.total, 100.0 * g.fraction())
}

fn c1() -> Result<Outcome> {
    let g = golden(Shape::One)?;
    Ok(Outcome { pass: g.exact == g.total, detail: golden_line(&g) })
}

fn c2() -> Result<Outcome> {
    let g = golden(Shape::Two)?;
    Ok(Outcome { pass: g.exact >= 20 && g.evidence_passed(), detail: golden_line(&g) + "; need 20 exact" })
}

fn c3() -> Result<Outcome> {
    let g = golden(Shape::OneOne)?;
    Ok(Outcome { pass: g.exact >= 10 && g.evidence_passed(), detail: golden_line(&g) + "; need 10 exact" })
}

fn c4() -> Result<Outcome> {
    let g = golden(Shape::TwoOne)?;
    Ok(Outcome { pass: g.fraction() >= 0.85 && g.evidence_passed(), detail: golden_line(&g) + "; need 85%" })
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    let terms = rng.gen_range(1..=4);
    let mut s = Scalar::zero();
    for _ in 0..terms {
        let c = BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4)));
        let mono = Mono { spow: rng.gen_range(-6..=6), a2: rng.gen_bool(0.25), a3: rng.gen_bool(0.25) };
        s = s + Scalar::from_mono(mono, c);
    }
    match rng.gen_range(0..4) {
        0 => s.div_qnums(&[(2, 1)]).expect("q-number denominator"),
        1 => s.div_qnums(&[(3, 1)]).expect("q-number denominator"),
        _ => s,
    }
}

fn random_state(rng: &mut StdRng, space: Space) -> Result<State<Scalar>> {
    let kets = space.kets();
    let mut v = State::zero(space);
    for _ in 0..rng.gen_range(1..=6) {
        let k = &kets[rng.gen_range(0..kets.len())];
        v.add_term(k, random_scalar(rng))?;
    }
    Ok(v)
}

fn c5() -> Result<Outcome> {
    let mut reports = Vec::new();
    for n in 1..=3 {
        for sites in 2..=6 {
            reports.extend(verify_hecke(n, sites, Exec::default())?);
        }
    }
    let mut rng = StdRng::seed_from_u64(17);
    let mut random_fail = 0;
    for _ in 0..200 {
        let sites = rng.gen_range(3..=6);
        let i = rng.gen_range(1..sites - 1);
        let v = random_state(&mut rng, Space::a(3, sites))?;
        let l = apply_word(&BraidWord::from_indices(&[i, i + 1, i]), &v)?;
        let r = apply_word(&BraidWord::from_indices(&[i + 1, i, i + 1]), &v)?;
        if l != r {
            random_fail += 1;
        }
    }
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    Ok(Outcome {
        pass: all_pass(&reports) && random_fail == 0,
        detail: format!(
            "{} reports over n <= 3, sites 2..6, {cases} ket cases; random-state braid checks 200, failures {random_fail}{}",
            reports.len(),
            failing(&reports)
        ),
    })
}

fn c6() -> Result<Outcome> {
    let q = verify_quadratic22(3, Exec::default())?;
    let cases = q.printed.first().map_or(0, |r| r.cases);
    Ok(Outcome {
        pass: q.printed_passed(),
        detail: format!(
            "printed identity on {cases} kets: {}; corrected right-hand side ({} correction terms): {}",
            verdict(q.printed_passed()),
            q.correction.len(),
            verdict(q.corrected_passed())
        ),
    })
}

fn c7() -> Result<Outcome> {
    let q = verify_quadratic41_float(3, &QS, 1e-9, Exec::default())?;
    let worst = q.printed.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let cases = q.printed.first().map_or(0, |r| r.cases);
    Ok(Outcome {
        pass: q.printed_passed(),
        detail: format!(
            "printed identity on {cases} kets at q = 0.7, 1.3: {} (max residual {worst:.3e}, tol 1e-9); corrected right-hand side ({} correction terms): {}",
            verdict(q.printed_passed()),
            q.correction.len(),
            verdict(q.corrected_passed())
        ),
    })
}

fn c8() -> Result<Outcome> {
    let mut reports = Vec::new();
    for shape in [Shape::Two, Shape::OneOne, Shape::TwoOne] {
        reports.extend(intertwiner_check(shape, 3, &QS, 1e-9, Exec::default())?);
    }
    let worst = reports.iter().filter(|r| r.tol.is_some()).map(|r| r.max_residual).fold(0.0, f64::max);
    Ok(Outcome {
        pass: all_pass(&reports),
        detail: format!("{} reports, two-box exact, B^p max residual {worst:.3e}{}", reports.len(), failing(&reports)),
    })
}

fn c9() -> Result<Outcome> {
    let mut reports = Vec::new();
    for n in 1..=3 {
        reports.push(ybe_for(Shape::One, n, None, 1e-10, Exec::default())?);
    }
    for shape in [Shape::Two, Shape::OneOne] {
        for n in [2, 3] {
            for q in QS {
                reports.push(ybe_for(shape, n, Some(q), 1e-10, Exec::default())?);
            }
        }
    }
    let worst = reports.iter().filter(|r| r.tol.is_some()).map(|r| r.max_residual).fold(0.0, f64::max);
    Ok(Outcome {
        pass: all_pass(&reports),
        detail: format!("{} reports, float max residual {worst:.3e}{}", reports.len(), failing(&reports)),
    })
}

fn c10() -> Result<Outcome> {
    let reports = vec![
        n_independence_check(Shape::Two, 4, 5, Exec::default())?,
        n_independence_check(Shape::OneOne, 4, 5, Exec::default())?,
    ];
    let notes: Vec<String> = reports.iter().flat_map(|r| r.notes.clone()).collect();
    Ok(Outcome { pass: all_pass(&reports), detail: format!("{}{}", notes.join("; "), failing(&reports)) })
}

fn c11() -> Result<Outcome> {
    let mut two_site = Vec::new();
    let mut rows_total = 0;
    let mut rows_ok = true;
    let mut cubic = Vec::new();
    for n in [1, 2] {
        let p = SeriesParams::new(Series::B, n)?;
        let reports = verify_bmw(&p, &build_g1_literal(&p)?, "literal", Mode::Exact, Exec::default())?;
        for r in reports {
            if r.relation.ends_with(": e g = r^-1 e") || r.relation.ends_with(": e^2 = x e") {
                two_site.push(r);
            } else if r.relation.contains("cubic") {
                cubic.push(r);
            }
        }
        let rows = row_corrections(&p, ROW_Q, 1e-10)?;
        rows_total += rows.len();
        rows_ok &= rows.iter().all(|r| r.corrected_residual < 1e-10);
    }
    let mut generated = 0;
    for (s, n) in [(Series::C, 1), (Series::C, 2), (Series::D, 2), (Series::D, 3)] {
        let d = discrepancy(s, n, ROW_Q, Exec::default())?;
        generated += usize::from(!d.literal.is_empty() && !d.alternative.is_empty());
    }
    let suite = bmw_suite(Exec::default())?;
    Ok(Outcome {
        pass: all_pass(&two_site) && cubic.len() == 2 && rows_ok && generated == 4 && suite.discrepancies.len() >= 4,
        detail: format!(
            "B1/B2 literal e g = r^-1 e and e^2 = x e: {}{}; cubic reports {} ({}); violated rows {rows_total}, all corrected below 1e-10: {rows_ok}; C/D discrepancy reports {generated}",
            verdict(all_pass(&two_site)),
            failing(&two_site),
            cubic.len(),
            cubic.iter().map(|r| format!("{} {}", r.relation, verdict(r.passed()))).collect::<Vec<_>>().join(", "),
        ),
    })
}

/// Random arithmetic tree as exact value, float value and float magnitude bound.
fn random_expr(rng: &mut StdRng, depth: u32, q: f64) -> (Scalar, f64, f64) {
    if depth == 0 || rng.gen_bool(0.3) {
        let num = rng.gen_range(-6i64..=6);
        let den = rng.gen_range(1i64..=4);
        let spow = rng.gen_range(-6i32..=6);
        let (a2, a3) = (rng.gen_bool(0.25), rng.gen_bool(0.25));
        let qn = |m: i32| (q.powi(m) - q.powi(-m)) / (q - 1.0 / q);
        let mut f = num as f64 / den as f64 * q.powf(spow as f64 / 2.0);
        if a2 {
            f *= qn(2).sqrt();
        }
        if a3 {
            f *= qn(3).sqrt();
        }
        let s = Scalar::from_mono(Mono { spow, a2, a3 }, BigRational::new(BigInt::from(num), BigInt::from(den)));
        return (s, f, f.abs());
    }
    let (a, fa, ma) = random_expr(rng, depth - 1, q);
    match rng.gen_range(0..4) {
        0 => {
            let (b, fb, mb) = random_expr(rng, depth - 1, q);
            (a + b, fa + fb, ma + mb)
        }
        1 => {
            let (b, fb, mb) = random_expr(rng, depth - 1, q);
            (a - b, fa - fb, ma + mb)
        }
        2 => {
            let (b, fb, mb) = random_expr(rng, depth - 1, q);
            (a * b, fa * fb, ma * mb)
        }
        _ => {
            let m = rng.gen_range(2u32..=3);
            let d = (q.powi(m as i32) - q.powi(-(m as i32))) / (q - 1.0 / q);
            (a.div_qnums(&[(m, 1)]).expect("q-number denominator"), fa / d, ma / d)
        }
    }
}

fn c12() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(12);
    let mut round_fail = 0;
    for _ in 0..1000 {
        let s = random_scalar(&mut rng);
        let text = s.to_canonical();
        match Scalar::parse(&text) {
            Ok(back) if back == s && back.to_canonical() == text => {}
            _ => round_fail += 1,
        }
    }
    let mut float_fail = 0;
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let q = [0.7, 1.3, 2.0, 0.45][i % 4];
        let (s, f, mag) = random_expr(&mut rng, 4, q);
        let rel = (s.eval_float(q)? - f).abs() / mag.max(1.0);
        worst = worst.max(rel);
        if rel > 1e-12 {
            float_fail += 1;
        }
    }
    Ok(Outcome {
        pass: round_fail == 0 && float_fail == 0,
        detail: format!(
            "round-trip failures {round_fail}/1000; exact/float disagreements {float_fail}/1000 (worst scaled error {worst:.3e}, tol 1e-12)"
        ),
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "golden [1]x[1], n = 3", Some(Duration::from_secs(1)), c1),
        (2, "golden [2]x[2], n = 4", Some(Duration::from_secs(30)), c2),
        (3, "golden [11]x[11], n = 4", Some(Duration::from_secs(30)), c3),
        (4, "golden [21]x[21], n = 3", Some(Duration::from_secs(300)), c4),
        (5, "Hecke relations", None, c5),
        (6, "quadratic identity, four sites", None, c6),
        (7, "quadratic identity, six sites", None, c7),
        (8, "intertwiners", None, c8),
        (9, "Yang-Baxter equation", None, c9),
        (10, "n-independence", None, c10),
        (11, "BMW", None, c11),
        (12, "scalar round-trip", None, c12),
    ];
    let start = Instant::now();
    let mut passed = 0;
    for (id, name, limit, run) in criteria {
        let t = Instant::now();
        let out = run();
        let dt = t.elapsed();
        let (ok, detail) = match out {
            Ok(o) => {
                let in_time = limit.is_none_or(|l| dt < l);
                let timing = match limit {
                    Some(l) if !in_time => format!("; runtime over {}s", l.as_secs()),
                    _ => String::new(),
                };
                (o.pass && in_time, o.detail + &timing)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        passed += usize::from(ok);
        println!("{} criterion {id:>2} {name} ({:.2}s): {detail}", if ok { "PASS" } else { "FAIL" }, dt.as_secs_f64());
    }
    println!("acceptance: {passed}/12 criteria pass in {:.1}s", start.elapsed().as_secs_f64());
    if passed == 12 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
