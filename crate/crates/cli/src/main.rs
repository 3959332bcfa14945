//! `rmatrix`: compute R matrices, run verification suites, evaluate at numeric q.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod cli;
mod config;
mod suites;

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use braid_rmatrix::bmw::{build_g1_corrected, build_g1_literal, Mat, SeriesParams, Weights};
use braid_rmatrix::coupling::Shape;
use braid_rmatrix::exec::Exec;
use braid_rmatrix::rmatrix::golden::default_n;
use braid_rmatrix::rmatrix::{compute_rmatrix, dense_csv};
use braid_rmatrix::{Error, Scalar};
use clap::Parser;
use serde_json::json;

use crate::cli::Cli;
use crate::config::{CommandKind, Format, RunConfig};

/// Bad flags, config or arguments.
#[derive(Debug)]
pub struct UsageError(pub String);

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Failure {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Invalid(_)
            | Error::InvalidEvaluationPoint(_)
            | Error::Parse { .. }
            | Error::InvalidTableau(_)
            | Error::UnsupportedDivision(_)
            | Error::NotMonomial(_)
            | Error::Golden(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Verification(e.to_string())
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), Failure> {
    match &cfg.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn shape_and_n(cfg: &RunConfig) -> Result<(Shape, u8), Failure> {
    let shape = cfg.shape.ok_or_else(|| Failure::Usage("--shape is required".into()))?;
    Ok((shape, cfg.n.unwrap_or_else(|| default_n(shape))))
}

fn bmw_text(p: &SeriesParams, g: &Mat<Scalar>, format: Format) -> Result<String, Failure> {
    let d = p.dim();
    let nonzero = || (0..d).flat_map(move |c| (0..d).map(move |r| (r, c))).filter(|&(r, c)| !g[r][c].is_zero());
    Ok(match format {
        Format::Json => {
            let entries: Vec<_> = nonzero().map(|(r, c)| (p.ket(r), p.ket(c), g[r][c].to_canonical())).collect();
            pretty(&json!({
                "series": p.label(),
                "weights": p.weights,
                "r": p.r.to_canonical(),
                "x": p.x().to_canonical(),
                "kets": (0..d).map(|i| p.ket(i)).collect::<Vec<_>>(),
                "entries": entries,
            }))?
        }
        Format::Csv => {
            let mut out = String::from("row,col,value\n");
            for (r, c) in nonzero() {
                let _ = writeln!(out, "\"{}\",\"{}\",\"{}\"", p.ket(r), p.ket(c), g[r][c]);
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            for c in 0..d {
                let terms: Vec<String> = (0..d)
                    .filter(|&r| !g[r][c].is_zero())
                    .map(|r| {
                        format!(
                            "({}){}",
                            g[r][c].to_canonical().replace('*', " "),
                            p.ket(r).replace('|', "\\vert ").replace('>', "\\rangle")
                        )
                    })
                    .collect();
                let col = p.ket(c).replace('|', "\\vert ").replace('>', "\\rangle");
                let _ = writeln!(out, "g_1{col} = {} \\\\", terms.join(" + "));
            }
            out
        }
    })
}

fn cmd_compute(cfg: &RunConfig, exec: Exec) -> Result<(), Failure> {
    if let Some(series) = cfg.series {
        let rank = cfg.rank.ok_or_else(|| Failure::Usage("--rank is required with --series".into()))?;
        let p = SeriesParams::new(series, rank)?.with_weights(cfg.weights);
        let g = match cfg.weights {
            Weights::Literal => build_g1_literal(&p)?,
            Weights::Alternative => build_g1_corrected(&p)?,
        };
        return emit(cfg, &bmw_text(&p, &g, cfg.format)?);
    }
    let (shape, n) = shape_and_n(cfg)?;
    let m = compute_rmatrix(shape, n, exec)?;
    let text = match cfg.format {
        Format::Json => pretty(&m.to_json())?,
        Format::Csv => m.to_csv(),
        Format::Latex => m.to_latex(),
    };
    emit(cfg, &text)
}

fn cmd_verify(cfg: &RunConfig, exec: Exec) -> Result<(), Failure> {
    let suite = cfg.suite.as_deref().unwrap_or("all");
    let names = suites::selected(suite)?;
    let mut total = 0;
    let mut explained = 0;
    let mut failed = 0;
    let mut payload = Vec::new();
    for name in names {
        let run = suites::run(name, cfg, exec)?;
        println!("== {name}");
        for r in &run.reports {
            println!("{}", r.summary());
            if let Some(e) = &r.explanation {
                println!("    explanation: {e}");
            }
            for f in r.failures.iter().take(3).filter(|_| !r.passed()) {
                println!("    at {}: {} vs {}", f.ket, f.lhs, f.rhs);
            }
            total += 1;
            if !r.passed() {
                if r.acceptable() {
                    explained += 1;
                } else {
                    failed += 1;
                }
            }
        }
        for l in &run.lines {
            println!("{l}");
        }
        payload.push(json!({ "suite": run.name, "reports": run.reports, "details": run.extra }));
    }
    println!("verify {suite}: {total} reports, {failed} unexplained failures, {explained} explained failures");
    if let Some(p) = &cfg.out {
        let text = pretty(&json!({ "suite": suite, "q": cfg.qs, "tol": cfg.tol, "runs": payload }))?;
        fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} unexplained failures")));
    }
    Ok(())
}

fn cmd_eval(cfg: &RunConfig, exec: Exec) -> Result<(), Failure> {
    let (shape, n) = shape_and_n(cfg)?;
    let m = compute_rmatrix(shape, n, exec)?;
    let mut text = String::new();
    for &q in &cfg.qs {
        let (names, dense) = m.eval_dense(q)?;
        if cfg.qs.len() > 1 {
            let _ = writeln!(text, "# q = {q}");
        }
        text.push_str(&dense_csv(&names, &dense));
    }
    emit(cfg, &text)
}

fn cmd_scalar(cfg: &RunConfig) -> Result<(), Failure> {
    let expr = cfg.expr.as_deref().ok_or_else(|| Failure::Usage("a scalar expression is required".into()))?;
    let s = Scalar::parse(expr)?;
    let mut text = format!("{}\n", s.to_canonical());
    for &q in &cfg.qs {
        let _ = writeln!(text, "q = {q}: {:.15e}", s.eval_float(q)?);
    }
    emit(cfg, &text)
}

fn run(cfg: &RunConfig) -> Result<(), Failure> {
    let exec = Exec::default();
    match cfg.command {
        CommandKind::Compute => cmd_compute(cfg, exec),
        CommandKind::Verify => cmd_verify(cfg, exec),
        CommandKind::Eval => cmd_eval(cfg, exec),
        CommandKind::Scalar => cmd_scalar(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(cli.config.as_deref(), cli.command).map_err(Failure::from).and_then(|cfg| run(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
