//! Commands behind the `cobforge` binary. Each returns a [`Report`]; the
//! binary prints it, optionally writes it as JSON, and exits nonzero when a
//! check fails.

pub mod commands;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cobforge::SimplePolytope;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] cobforge::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            outputs: Value::Object(Default::default()),
            checks: Vec::new(),
        }
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        if let Value::Object(map) = &mut self.outputs {
            map.insert(key.to_string(), value.into());
        }
        self
    }

    pub fn check(&mut self, name: &str, pass: bool) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let Value::Object(map) = &self.outputs {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k:<width$}  {shown}");
            }
        }
        for c in &self.checks {
            let tag = if c.pass { "ok" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] {}", c.name);
        }
        out
    }
}

/// Loads a polytope from a file, or builds one from `simplex:N` or
/// `product:D1,D2,…`.
pub fn load_polytope(source: &str) -> CliResult<SimplePolytope> {
    if let Some(n) = source.strip_prefix("simplex:") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad simplex dimension in {source:?}")))?;
        if n == 0 {
            return Err(CliError::Usage(
                "simplex dimension must be at least 1".into(),
            ));
        }
        return Ok(SimplePolytope::simplex(n));
    }
    if let Some(dims) = source.strip_prefix("product:") {
        let dims = parse_list(dims)?;
        return Ok(SimplePolytope::simplex_product(&dims)?);
    }
    read_json(Path::new(source))
}

pub fn parse_list(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| {
                CliError::Usage(format!("expected a comma-separated list, got {text:?}"))
            })
        })
        .collect()
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Upper dimension for sweeps, from `COBFORGE_MAX_N` (default 16).
pub fn max_n() -> CliResult<u32> {
    match std::env::var("COBFORGE_MAX_N") {
        Err(_) => Ok(16),
        Ok(v) => v.trim().parse().ok().filter(|&n| n >= 2).ok_or_else(|| {
            CliError::Usage(format!("COBFORGE_MAX_N must be an integer >= 2, got {v:?}"))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_parse() {
        assert_eq!(
            load_polytope("simplex:3").unwrap(),
            SimplePolytope::simplex(3)
        );
        let p = load_polytope("product:1,1,2").unwrap();
        assert_eq!((p.dim(), p.facet_count(), p.vertex_count()), (4, 7, 12));
        assert!(matches!(
            load_polytope("simplex:x"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            load_polytope("simplex:0"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            load_polytope("product:1,0"),
            Err(CliError::Domain(_))
        ));
        assert!(matches!(
            load_polytope("/nonexistent/p.json"),
            Err(CliError::Io { .. })
        ));
    }

    #[test]
    fn report_pass_state() {
        let mut r = Report::new("t", Value::Null);
        assert!(r.passed());
        r.check("a", true).output("x", "7");
        assert!(r.passed());
        r.check("b", false);
        assert!(!r.passed());
        let text = r.render_text();
        assert!(text.contains("x  7"));
        assert!(text.contains("[FAIL] b"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][1]["pass"], false);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Domain(cobforge::Error::OddDimension(3)).exit_code(),
            1
        );
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("0, 2,5").unwrap(), vec![0, 2, 5]);
        assert!(parse_list("0,,1").is_err());
    }
}
