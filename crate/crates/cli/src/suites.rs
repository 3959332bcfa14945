//! Verification suites behind `rmatrix verify`.

use braid_rmatrix::bmw::bmw_suite;
use braid_rmatrix::coupling::Shape;
use braid_rmatrix::exec::Exec;
use braid_rmatrix::hecke::identities::{verify_quadratic22, verify_quadratic41_float};
use braid_rmatrix::hecke::verify_hecke;
use braid_rmatrix::report::Report;
use braid_rmatrix::rmatrix::checks::{intertwiner_check, n_independence_check, ybe_for};
use braid_rmatrix::rmatrix::golden::{golden_suite, Golden, Verdict};
use braid_rmatrix::{Error, Result};
use serde_json::{json, Value};

use crate::config::RunConfig;

pub const SUITES: [&str; 8] = ["hecke", "quad22", "quad41", "ybe", "intertwiner", "golden", "n-indep", "bmw"];

/// Reports of one suite plus its detail lines and JSON payload.
pub struct SuiteRun {
    pub name: String,
    pub reports: Vec<Report>,
    pub lines: Vec<String>,
    pub extra: Value,
}

impl SuiteRun {
    fn new(name: &str) -> SuiteRun {
        SuiteRun { name: name.into(), reports: Vec::new(), lines: Vec::new(), extra: Value::Null }
    }
}

pub fn selected(suite: &str) -> Result<Vec<&'static str>> {
    if suite == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| **s == suite)
        .map(|s| vec![*s])
        .ok_or_else(|| Error::Invalid(format!("unknown suite {suite:?}, expected one of {} or all", SUITES.join(", "))))
}

fn shapes(cfg: &RunConfig, default: &[Shape]) -> Vec<Shape> {
    match cfg.shape {
        Some(s) => vec![s],
        None => default.to_vec(),
    }
}

pub fn run(name: &str, cfg: &RunConfig, exec: Exec) -> Result<SuiteRun> {
    let mut out = SuiteRun::new(name);
    match name {
        "hecke" => {
            let n = cfg.n.unwrap_or(3);
            for sites in 2..=6 {
                out.reports.extend(verify_hecke(n, sites, exec)?);
            }
        }
        "quad22" => {
            let q = verify_quadratic22(cfg.n.unwrap_or(3), exec)?;
            out.extra = json!({ "correction": q.correction, "lhs_terms": q.lhs_terms });
            out.reports = q.reports();
        }
        "quad41" => {
            let q = verify_quadratic41_float(cfg.n.unwrap_or(3), &cfg.qs, cfg.tol, exec)?;
            out.extra = json!({ "correction": q.correction, "lhs_terms": q.lhs_terms });
            out.reports = q.reports();
        }
        "ybe" => {
            for shape in shapes(cfg, &[Shape::One, Shape::Two, Shape::OneOne]) {
                let ns = match cfg.n {
                    Some(n) => vec![n],
                    None if shape == Shape::TwoOne => vec![3],
                    None => vec![2, 3],
                };
                for n in ns {
                    if shape == Shape::One {
                        out.reports.push(ybe_for(shape, n, None, cfg.tol, exec)?);
                    }
                    for &q in &cfg.qs {
                        out.reports.push(ybe_for(shape, n, Some(q), cfg.tol, exec)?);
                    }
                }
            }
        }
        "intertwiner" => {
            for shape in shapes(cfg, &[Shape::Two, Shape::OneOne, Shape::TwoOne]) {
                out.reports.extend(intertwiner_check(shape, cfg.n.unwrap_or(3), &cfg.qs, cfg.tol, exec)?);
            }
        }
        "golden" => {
            let golden = Golden::load()?;
            let mut all = Vec::new();
            for shape in shapes(cfg, &Shape::ALL) {
                let g = golden_suite(&golden, shape, exec)?;
                for rel in &g.relations {
                    let verdict = if rel.exact { "exact" } else { "MISMATCH" };
                    out.lines.push(format!("{} #{} R|{}> {verdict}", g.shape, rel.index, rel.col));
                    for e in rel.entries.iter().filter(|e| e.verdict != Verdict::Match) {
                        out.lines.push(format!(
                            "    row {} {:?}: printed {} computed {}{}",
                            e.row,
                            e.verdict,
                            e.printed.as_deref().unwrap_or("0"),
                            e.computed.as_deref().unwrap_or("-"),
                            e.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
                        ));
                    }
                    if let Some(x) = rel.substituted_ybe {
                        out.lines.push(format!("    printed column substituted: YBE residual {x:.3e} at q = 0.7"));
                    }
                }
                out.lines.push(format!("{}: {}/{} relations exact", g.shape, g.exact, g.total));
                out.reports.push(g.summary());
                out.reports.extend(g.evidence.iter().cloned());
                all.push(g);
            }
            out.extra = serde_json::to_value(&all)?;
        }
        "n-indep" => {
            for shape in shapes(cfg, &[Shape::Two, Shape::OneOne]) {
                let n1 = cfg.n.unwrap_or(4);
                out.reports.push(n_independence_check(shape, n1, n1 + 1, exec)?);
            }
        }
        "bmw" => {
            let s = bmw_suite(exec)?;
            for (series, rows) in &s.rows {
                for r in rows {
                    out.lines.push(format!(
                        "    {series} {} {}: literal residual {:.3e}, corrected residual {:.3e}",
                        r.relation, r.ket, r.literal_residual, r.corrected_residual
                    ));
                }
            }
            for d in &s.discrepancies {
                out.lines.push(format!(
                    "    {}: x literal {} vs standard {} (equal: {}); alternative weights {} give x = {}",
                    d.series, d.x_literal, d.x_standard, d.x_equal, d.alternative_weights, d.x_alternative
                ));
                let worst = d.reference.iter().map(|(_, x)| *x).fold(0.0, f64::max);
                out.lines.push(format!(
                    "    {}: tensor-basis g1 has r = {} (equal to r: {}), x = {}, largest residual {worst:.3e} at q = {}",
                    d.series, d.reference_r, d.r_equal, d.reference_x, d.q
                ));
            }
            out.reports.extend(s.exact.iter().cloned());
            out.reports.extend(s.corrected.iter().cloned());
            out.reports.extend(s.hecke.iter().cloned());
            out.reports.extend(s.reference.iter().cloned());
            out.extra = json!({ "rows": s.rows, "norms": s.norms, "discrepancies": s.discrepancies });
        }
        other => return Err(Error::Invalid(format!("unknown suite {other:?}"))),
    }
    Ok(out)
}
