//! Run configuration: a key=value file overridden by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use braid_rmatrix::bmw::{Series, Weights};
use braid_rmatrix::coupling::Shape;
use braid_rmatrix::scalar::check_q;

use crate::cli::{Command, Opts};
use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

impl Format {
    fn parse(s: &str) -> Result<Format, UsageError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" | "tex" => Ok(Format::Latex),
            other => Err(UsageError(format!("unknown format {other:?}, expected json, csv or latex"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Compute,
    Verify,
    Eval,
    Scalar,
}

impl CommandKind {
    fn parse(s: &str) -> Result<CommandKind, UsageError> {
        match s {
            "compute" => Ok(CommandKind::Compute),
            "verify" => Ok(CommandKind::Verify),
            "eval" => Ok(CommandKind::Eval),
            "scalar" => Ok(CommandKind::Scalar),
            other => Err(UsageError(format!("unknown command {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub shape: Option<Shape>,
    pub series: Option<Series>,
    pub rank: Option<u8>,
    pub weights: Weights,
    pub n: Option<u8>,
    pub qs: Vec<f64>,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub suite: Option<String>,
    pub expr: Option<String>,
}

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_QS: [f64; 2] = [0.7, 1.3];

/// Raw string values, file first, then flags on top.
#[derive(Default)]
struct Raw {
    command: Option<String>,
    shape: Option<String>,
    series: Option<String>,
    rank: Option<String>,
    weights: Option<String>,
    n: Option<String>,
    qs: Vec<String>,
    tol: Option<String>,
    format: Option<String>,
    out: Option<String>,
    suite: Option<String>,
    expr: Option<String>,
}

fn read_file(path: &Path) -> Result<Raw, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("config {}: {e}", path.display())))?;
    let mut raw = Raw::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| UsageError(format!("config {}:{}: expected key=value", path.display(), i + 1)))?;
        let v = v.trim().to_string();
        match k.trim() {
            "command" => raw.command = Some(v),
            "shape" => raw.shape = Some(v),
            "series" => raw.series = Some(v),
            "rank" => raw.rank = Some(v),
            "weights" => raw.weights = Some(v),
            "n" => raw.n = Some(v),
            "q" => raw.qs.extend(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty())),
            "tol" => raw.tol = Some(v),
            "format" => raw.format = Some(v),
            "out" => raw.out = Some(v),
            "suite" => raw.suite = Some(v),
            "expr" => raw.expr = Some(v),
            other => return Err(UsageError(format!("config {}:{}: unknown key {other:?}", path.display(), i + 1))),
        }
    }
    Ok(raw)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, UsageError> {
    v.parse().map_err(|_| UsageError(format!("invalid {key} {v:?}")))
}

impl RunConfig {
    pub fn resolve(config: Option<&Path>, command: Option<Command>) -> Result<RunConfig, UsageError> {
        let mut raw = match config {
            Some(p) => read_file(p)?,
            None => Raw::default(),
        };
        let (kind, opts) = match command {
            Some(Command::Compute(o)) => (Some("compute"), o),
            Some(Command::Verify(o)) => (Some("verify"), o),
            Some(Command::Eval(o)) => (Some("eval"), o),
            Some(Command::Scalar(o)) => (Some("scalar"), o),
            None => (None, Opts::default()),
        };
        if let Some(k) = kind {
            raw.command = Some(k.into());
        }
        overlay(&mut raw, opts);
        let command = CommandKind::parse(
            raw.command.as_deref().ok_or_else(|| UsageError("no command given (flag or config key `command`)".into()))?,
        )?;
        let shape = raw.shape.as_deref().map(Shape::parse).transpose().map_err(|e| UsageError(e.to_string()))?;
        let series = raw.series.as_deref().map(Series::parse).transpose().map_err(|e| UsageError(e.to_string()))?;
        let rank = raw.rank.as_deref().map(|v| num("rank", v)).transpose()?;
        let weights = match raw.weights.as_deref().unwrap_or("literal") {
            "literal" => Weights::Literal,
            "alternative" => Weights::Alternative,
            other => return Err(UsageError(format!("unknown weights {other:?}, expected literal or alternative"))),
        };
        let n = raw.n.as_deref().map(|v| num("n", v)).transpose()?;
        let mut qs = raw.qs.iter().map(|v| num::<f64>("q", v)).collect::<Result<Vec<_>, _>>()?;
        for &q in &qs {
            check_q(q).map_err(|e| UsageError(e.to_string()))?;
        }
        if qs.is_empty() && command != CommandKind::Scalar {
            qs = DEFAULT_QS.to_vec();
        }
        let tol = match raw.tol.as_deref() {
            Some(v) => num("tol", v)?,
            None => DEFAULT_TOL,
        };
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(UsageError(format!("tol must be positive, got {tol}")));
        }
        let format = Format::parse(raw.format.as_deref().unwrap_or("json"))?;
        Ok(RunConfig {
            command,
            shape,
            series,
            rank,
            weights,
            n,
            qs,
            tol,
            format,
            out: raw.out.map(PathBuf::from),
            suite: raw.suite,
            expr: raw.expr,
        })
    }
}

fn overlay(raw: &mut Raw, o: Opts) {
    fn set(slot: &mut Option<String>, v: Option<String>) {
        if v.is_some() {
            *slot = v;
        }
    }
    set(&mut raw.shape, o.shape);
    set(&mut raw.series, o.series);
    set(&mut raw.rank, o.rank.map(|v| v.to_string()));
    set(&mut raw.weights, o.weights);
    set(&mut raw.n, o.n.map(|v| v.to_string()));
    if !o.q.is_empty() {
        raw.qs = o.q;
    }
    set(&mut raw.tol, o.tol);
    set(&mut raw.format, o.format);
    set(&mut raw.out, o.out.map(|p| p.display().to_string()));
    set(&mut raw.suite, o.suite);
    set(&mut raw.expr, o.expr);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn flags_override_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# run\ncommand=eval\nshape=2\nn=2\nq=0.5, 2.0\ntol=1e-6").unwrap();
        let cfg = RunConfig::resolve(Some(f.path()), None).unwrap();
        assert_eq!(cfg.command, CommandKind::Eval);
        assert_eq!(cfg.qs, vec![0.5, 2.0]);
        let opts = Opts { n: Some(3), q: vec!["1.5".into()], ..Opts::default() };
        let cfg = RunConfig::resolve(Some(f.path()), Some(Command::Verify(opts))).unwrap();
        assert_eq!(cfg.command, CommandKind::Verify);
        assert_eq!((cfg.n, cfg.qs.clone(), cfg.tol), (Some(3), vec![1.5], 1e-6));
        assert_eq!(cfg.shape, Some(Shape::Two));
    }

    #[test]
    fn rejects_bad_values() {
        let opts = |q: &str| Some(Command::Eval(Opts { q: vec![q.into()], ..Opts::default() }));
        assert!(RunConfig::resolve(None, opts("1.0")).is_err());
        assert!(RunConfig::resolve(None, opts("-2")).is_err());
        assert!(RunConfig::resolve(None, opts("x")).is_err());
        assert!(RunConfig::resolve(None, None).is_err());
        let tol = Some(Command::Verify(Opts { tol: Some("0".into()), ..Opts::default() }));
        assert!(RunConfig::resolve(None, tol).is_err());
    }
}
