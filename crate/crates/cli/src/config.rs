//! Flat key = value run configuration with flag overrides.
//!
//! A config is a text file of `key = value` lines (`#` starts a comment);
//! repeated `--set key=value` flags are applied on top, last write wins.
//! All scalars use the exact textual syntax `p/q + r/s*sqrt(D)`; list
//! values are comma-separated so scalars may contain internal spaces.

use std::collections::BTreeMap;
use std::path::Path;

use prehom_core::{parse_scalar, Error, QMatrix, QScalar, Result};

/// Which family a run operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Cubic4,
    Sym4,
    AdjSl3,
    Trivector,
    Baseline,
}

impl Case {
    pub fn parse(tag: &str) -> Result<Case> {
        match tag.to_ascii_uppercase().as_str() {
            "CUBIC4" => Ok(Case::Cubic4),
            "SYM4" => Ok(Case::Sym4),
            "ADJ_SL3" => Ok(Case::AdjSl3),
            "TRIVECTOR" => Ok(Case::Trivector),
            "BASELINE" => Ok(Case::Baseline),
            other => Err(Error::Parse(format!(
                "unknown case '{other}' (expected CUBIC4, SYM4, ADJ_SL3, TRIVECTOR, or BASELINE)"
            ))),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Case::Cubic4 => "CUBIC4",
            Case::Sym4 => "SYM4",
            Case::AdjSl3 => "ADJ_SL3",
            Case::Trivector => "TRIVECTOR",
            Case::Baseline => "BASELINE",
        }
    }

    /// Dimension of the representation space (not defined for BASELINE,
    /// whose dimension comes from the supplied form).
    pub fn dim(self) -> Option<usize> {
        match self {
            Case::Cubic4 => Some(4),
            Case::Sym4 => Some(5),
            Case::AdjSl3 => Some(8),
            Case::Trivector => Some(20),
            Case::Baseline => None,
        }
    }
}

/// Arithmetic mode of the inputs. Certification demands `Exact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// The merged key-value store driving one reproducible run.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    entries: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new() -> Self {
        RunConfig::default()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = RunConfig::new();
        cfg.load_str(&text)?;
        Ok(cfg)
    }

    pub fn load_str(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Parse(format!(
                    "config line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            self.set(k.trim(), v.trim());
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    /// Applies one `key=value` override from the command line.
    pub fn apply_override(&mut self, kv: &str) -> Result<()> {
        let Some((k, v)) = kv.split_once('=') else {
            return Err(Error::Parse(format!(
                "override `{kv}` is not of the form key=value"
            )));
        };
        self.set(k.trim(), v.trim());
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Parse(format!("missing required config key `{key}`")))
    }

    pub fn case(&self) -> Result<Case> {
        Case::parse(self.require("case")?)
    }

    pub fn mode(&self) -> Result<Mode> {
        match self.get("mode").unwrap_or("exact") {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!(
                "mode must be `exact` or `float`, got `{other}`"
            ))),
        }
    }

    /// Optional quadratic field parameter `d`; constrains scalar parsing.
    pub fn field_d(&self) -> Result<Option<u64>> {
        match self.get("d") {
            None => Ok(None),
            Some(text) => {
                let d: u64 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("d must be a positive integer, got `{text}`")))?;
                // Round-trips through the scalar layer to validate square-freeness.
                QScalar::sqrt_d(d)?;
                Ok(Some(d))
            }
        }
    }

    pub fn opt_u64(&self, key: &str) -> Result<Option<u64>> {
        self.get(key)
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("`{key}` must be a non-negative integer, got `{t}`")))
            })
            .transpose()
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        Ok(self.opt_u64(key)?.unwrap_or(default))
    }

    pub fn require_u64(&self, key: &str) -> Result<u64> {
        self.opt_u64(key)?
            .ok_or_else(|| Error::Parse(format!("missing required config key `{key}`")))
    }

    pub fn require_i64(&self, key: &str) -> Result<i64> {
        self.require(key)?
            .parse()
            .map_err(|_| Error::Parse(format!("`{key}` must be an integer")))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(t) => parse_float_token(t),
        }
    }

    /// Comma-separated exact scalars under the configured field.
    pub fn scalars(&self, key: &str) -> Result<Vec<QScalar>> {
        let d = self.field_d()?;
        self.require(key)?
            .split(',')
            .map(|tok| parse_scalar(tok, d))
            .collect()
    }

    /// A square matrix given row-major under `key`; the side is inferred.
    pub fn square_matrix(&self, key: &str) -> Result<QMatrix> {
        let data = self.scalars(key)?;
        let n = (data.len() as f64).sqrt().round() as usize;
        if n * n != data.len() {
            return Err(Error::Parse(format!(
                "`{key}` has {} entries, not a square count",
                data.len()
            )));
        }
        Ok(QMatrix::new(n, n, data))
    }

    /// A square matrix of prescribed side `n`.
    pub fn matrix_n(&self, key: &str, n: usize) -> Result<QMatrix> {
        let data = self.scalars(key)?;
        if data.len() != n * n {
            return Err(Error::Parse(format!(
                "`{key}` needs {} entries for a {n} x {n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(QMatrix::new(n, n, data))
    }

    /// Comma-separated floats; `pi` and `-pi` are accepted as tokens.
    pub fn floats(&self, key: &str) -> Result<Vec<f64>> {
        self.require(key)?
            .split(',')
            .map(parse_float_token)
            .collect()
    }

    pub fn targets(&self) -> Result<Vec<f64>> {
        let t = self.floats("targets")?;
        if t.is_empty() {
            return Err(Error::Parse("`targets` must list at least one value".into()));
        }
        Ok(t)
    }

    pub fn ints(&self, key: &str) -> Result<Vec<i64>> {
        self.require(key)?
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("`{key}` entry `{tok}` is not an integer")))
            })
            .collect()
    }
}

pub fn parse_float_token(tok: &str) -> Result<f64> {
    let t = tok.trim();
    match t {
        "pi" => Ok(std::f64::consts::PI),
        "-pi" => Ok(-std::f64::consts::PI),
        _ => t
            .parse()
            .map_err(|_| Error::Parse(format!("`{t}` is not a number"))),
    }
}
