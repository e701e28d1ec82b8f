//! The flat `key = value` configuration format.
//!
//! One assignment per line. `#` starts a comment anywhere outside a value.
//! Keys are case-insensitive identifiers. A value is a single token or a
//! bracketed, comma-separated list of tokens; a token is a run of
//! `[A-Za-z0-9_.+-]`. Identifier values are case-insensitive. Repeated and
//! unknown keys are errors.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Result, SyncError};
use crate::estimation::EstimatorMode;
use crate::experiments::{ExperimentConfig, OffsetSpec};
use crate::protocol::{DickeBackend, GhzBackend, Protocol, ScheduleMode};

pub const KNOWN_KEYS: [&str; 18] = [
    "protocol",
    "n",
    "omega",
    "offsets",
    "spread",
    "k",
    "trials",
    "schedule",
    "estimator",
    "seed",
    "statevector_limit",
    "nominal_time",
    "ghz_backend",
    "dicke_backend",
    "sweep_n",
    "sweep_q",
    "sweep_protocols",
    "write_log",
];

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Scalar(String),
    List(Vec<String>),
}

#[derive(Debug, Clone)]
struct Entry {
    line: usize,
    value: Value,
}

/// A parsed but not yet interpreted config file.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, Entry>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> SyncError {
    SyncError::ConfigParse { line, reason: reason.into() }
}

fn value_err(key: &str, reason: impl Into<String>) -> SyncError {
    SyncError::ConfigValue { key: key.to_string(), reason: reason.into() }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_.+-".contains(c))
}

fn is_key(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_value(text: &str, line: usize) -> Result<Value> {
    if let Some(rest) = text.strip_prefix('[') {
        let inner = rest.strip_suffix(']').ok_or_else(|| parse_err(line, "list is missing its closing `]`"))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Value::List(Vec::new()));
        }
        let items = inner
            .split(',')
            .map(|item| {
                let item = item.trim();
                if is_token(item) {
                    Ok(item.to_string())
                } else {
                    Err(parse_err(line, format!("bad list item `{item}`")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Value::List(items));
    }
    if is_token(text) {
        Ok(Value::Scalar(text.to_string()))
    } else if text.is_empty() {
        Err(parse_err(line, "missing value after `=`"))
    } else {
        Err(parse_err(line, format!("bad value `{text}`")))
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            if !is_key(key) {
                return Err(parse_err(line, format!("bad key `{key}`")));
            }
            let key = key.to_ascii_lowercase();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(parse_err(line, format!("unknown key `{key}`")));
            }
            let value = parse_value(value.trim(), line)?;
            if let Some(prev) = entries.get(&key) {
                let prev: &Entry = prev;
                return Err(parse_err(line, format!("key `{key}` already set on line {}", prev.line)));
            }
            entries.insert(key, Entry { line, value });
        }
        Ok(ConfigFile { entries })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| value_err("config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn scalar(&self, key: &str) -> Result<Option<&str>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(Entry { value: Value::Scalar(s), .. }) => Ok(Some(s)),
            Some(Entry { value: Value::List(_), .. }) => Err(value_err(key, "expected a single value, got a list")),
        }
    }

    fn list(&self, key: &str) -> Result<Option<&[String]>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(Entry { value: Value::List(items), .. }) => Ok(Some(items)),
            Some(Entry { value: Value::Scalar(_), .. }) => Err(value_err(key, "expected a `[...]` list")),
        }
    }

    fn typed<T>(&self, key: &str, what: &str, conv: impl Fn(&str) -> Option<T>) -> Result<Option<T>> {
        self.scalar(key)?
            .map(|s| conv(s).ok_or_else(|| value_err(key, format!("expected {what}, got `{s}`"))))
            .transpose()
    }

    fn typed_list<T>(&self, key: &str, what: &str, conv: impl Fn(&str) -> Option<T>) -> Result<Option<Vec<T>>> {
        self.list(key)?
            .map(|items| {
                items
                    .iter()
                    .map(|s| conv(s).ok_or_else(|| value_err(key, format!("expected {what}, got `{s}`"))))
                    .collect()
            })
            .transpose()
    }

    fn usize(&self, key: &str) -> Result<Option<usize>> {
        self.typed(key, "a non-negative integer", |s| s.parse().ok())
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        self.typed(key, "a finite number", |s| s.parse::<f64>().ok().filter(|x| x.is_finite()))
    }

    fn ident<T>(&self, key: &str, choices: &[(&str, T)]) -> Result<Option<T>>
    where
        T: Copy,
    {
        let names: Vec<&str> = choices.iter().map(|(n, _)| *n).collect();
        self.typed(key, &format!("one of {}", names.join(", ")), |s| {
            let s = s.to_ascii_lowercase();
            choices.iter().find(|(n, _)| *n == s).map(|(_, v)| *v)
        })
    }

    fn required<T>(key: &str, v: Option<T>) -> Result<T> {
        v.ok_or_else(|| value_err(key, "required key is missing"))
    }

    pub fn protocol(&self) -> Result<Option<Protocol>> {
        self.typed("protocol", "one of ghz, pairs, dicke", Protocol::from_name)
    }

    pub fn seed(&self) -> Result<Option<u64>> {
        self.typed("seed", "an unsigned 64-bit integer", |s| s.parse().ok())
    }

    pub fn write_log(&self) -> Result<bool> {
        Ok(self
            .ident("write_log", &[("true", true), ("false", false)])?
            .unwrap_or(false))
    }

    /// Applies every optional key on top of `base`.
    fn apply_options(&self, mut c: ExperimentConfig, seed_override: Option<u64>) -> Result<ExperimentConfig> {
        if let Some(x) = self.float("omega")? {
            c.omega = x;
        }
        if let Some(x) = self.usize("trials")? {
            c.trials = x;
        }
        match (self.typed_list("offsets", "a finite number", |s| s.parse::<f64>().ok().filter(|x| x.is_finite()))?, self.float("spread")?) {
            (Some(_), Some(_)) => return Err(value_err("offsets", "give either `offsets` or `spread`, not both")),
            (Some(t), None) => c.offsets = OffsetSpec::Explicit(t),
            (None, Some(s)) => c.offsets = OffsetSpec::Random { spread: Some(s) },
            (None, None) => {}
        }
        if let Some(x) = self.ident(
            "schedule",
            &[("round_robin", ScheduleMode::RoundRobin), ("uniform_random", ScheduleMode::UniformRandom)],
        )? {
            c.schedule = x;
        }
        if let Some(x) = self.ident(
            "estimator",
            &[("linearized", EstimatorMode::Linearized), ("two_quadrature", EstimatorMode::TwoQuadrature)],
        )? {
            c.estimator = x;
        }
        if let Some(x) = self.usize("statevector_limit")? {
            c.statevector_limit = x;
        }
        if let Some(x) = self.float("nominal_time")? {
            c.nominal_time = x;
        }
        if let Some(x) = self.ident(
            "ghz_backend",
            &[("closed_form", GhzBackend::ClosedForm), ("statevector", GhzBackend::Statevector)],
        )? {
            c.ghz_backend = x;
        }
        if let Some(x) = self.ident(
            "dicke_backend",
            &[("auto", DickeBackend::Auto), ("statevector", DickeBackend::Statevector), ("marginal", DickeBackend::Marginal)],
        )? {
            c.dicke_backend = x;
        }
        c.seed = match seed_override {
            Some(s) => s,
            None => Self::required("seed", self.seed()?)?,
        };
        Ok(c)
    }

    /// Interprets the file as a single experiment and validates it.
    pub fn experiment(&self, seed_override: Option<u64>) -> Result<ExperimentConfig> {
        for key in ["sweep_n", "sweep_q", "sweep_protocols"] {
            if self.contains(key) {
                return Err(value_err(key, "only meaningful for the sweep command"));
            }
        }
        let protocol = Self::required("protocol", self.protocol()?)?;
        let n = Self::required("n", self.usize("n")?)?;
        let k = Self::required("k", self.usize("k")?)?;
        let config = self.apply_options(ExperimentConfig::new(protocol, n, k), seed_override)?;
        config.validate()?;
        Ok(config)
    }

    /// Interprets the file as an efficiency sweep. `n`, `k` and `protocol` are
    /// set per sweep point and may not appear.
    pub fn sweep(&self, seed_override: Option<u64>) -> Result<SweepConfig> {
        for key in ["n", "k", "protocol", "offsets", "write_log"] {
            if self.contains(key) {
                return Err(value_err(key, "not allowed in a sweep config; the sweep sets it per point"));
            }
        }
        let n_list = Self::required("sweep_n", self.typed_list("sweep_n", "an integer", |s| s.parse::<usize>().ok())?)?;
        let q = Self::required("sweep_q", self.usize("sweep_q")?)?;
        let protocols = self
            .typed_list("sweep_protocols", "one of ghz, pairs, dicke", Protocol::from_name)?
            .unwrap_or_else(|| Protocol::ALL.to_vec());
        if n_list.is_empty() {
            return Err(value_err("sweep_n", "list of N values is empty"));
        }
        let base = self.apply_options(ExperimentConfig::new(Protocol::Ghz, n_list[0], 1), seed_override)?;
        Ok(SweepConfig { base, n_list, q, protocols })
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepConfig {
    pub base: ExperimentConfig,
    pub n_list: Vec<usize>,
    pub q: usize,
    pub protocols: Vec<Protocol>,
}

/// Reads and validates a single-experiment config.
pub fn parse_config(path: &Path) -> Result<ExperimentConfig> {
    ConfigFile::read(path)?.experiment(None)
}

pub fn parse_config_str(text: &str) -> Result<ExperimentConfig> {
    ConfigFile::parse(text)?.experiment(None)
}

pub fn parse_sweep_config_str(text: &str) -> Result<SweepConfig> {
    ConfigFile::parse(text)?.sweep(None)
}
