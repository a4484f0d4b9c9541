//! Run configuration: flat `key = value` text with `#` comments.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{KinState, Params, MASS_CORRESPONDENCE};
use crate::integrator::{IntegratorConfig, Method};
use crate::minkowski::{dot, norm_abs, FourVector, Signature};

/// Bound on `|s·u| / (‖s‖‖u‖)` when `pirani_enforce` is set.
pub const PIRANI_ENFORCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Format {
    #[serde(rename = "csv")]
    Csv,
    #[serde(rename = "json")]
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("expected csv or json, got {other:?}")),
        }
    }
}

/// A validated simulation setup.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub x: FourVector,
    pub u: FourVector,
    pub udot: FourVector,
    pub s: FourVector,
    pub m: f64,
    pub m0: f64,
    #[serde(rename = "A")]
    pub a_const: f64,
    pub signature: [i8; 4],
    pub orientation: i8,
    pub method: &'static str,
    pub h0: f64,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub tau_end: f64,
    pub max_steps: usize,
    pub output: Option<String>,
    pub format: Format,
    pub pirani_project: bool,
    pub pirani_enforce: bool,
}

const KEYS: [&str; 19] = [
    "x",
    "u",
    "udot",
    "s",
    "m",
    "m0",
    "A",
    "signature",
    "orientation",
    "method",
    "h0",
    "tol_abs",
    "tol_rel",
    "tau_end",
    "max_steps",
    "output",
    "format",
    "pirani_project",
    "pirani_enforce",
];

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn real(key: &str, v: &str) -> Result<f64, ConfigError> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| invalid(key, format!("not a real number: {v:?}")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(key, format!("must be finite, got {v:?}")))
    }
}

fn vector(key: &str, v: &str) -> Result<FourVector, ConfigError> {
    let parts: Vec<&str> = v.split(',').collect();
    if parts.len() != 4 {
        return Err(invalid(
            key,
            format!("expected 4 comma-separated reals, got {}", parts.len()),
        ));
    }
    let mut out = FourVector::ZERO;
    for (k, p) in parts.iter().enumerate() {
        out[k] = real(key, p)?;
    }
    Ok(out)
}

fn sign(key: &str, v: &str) -> Result<i8, ConfigError> {
    match v.trim() {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(invalid(key, format!("expected a sign (+1 or -1), got {other:?}"))),
    }
}

fn boolean(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(invalid(key, format!("expected true or false, got {other:?}"))),
    }
}

fn method_tag(m: Method) -> &'static str {
    match m {
        Method::Rk4Fixed => "rk4-fixed",
        Method::Rk45Adaptive => "rk45-adaptive",
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let defaults = IntegratorConfig::default();
        let mut seen = BTreeSet::new();
        let mut x = FourVector::ZERO;
        let mut udot = FourVector::ZERO;
        let (mut u, mut s, mut m, mut m0) = (None, None, None, None);
        let mut a_const = 0.0;
        let mut signature = [1, -1, -1, -1];
        let mut orientation = 1;
        let mut method = defaults.method;
        let (mut h0, mut tol_abs, mut tol_rel) = (defaults.h0, defaults.tol_abs, defaults.tol_rel);
        let (mut tau_end, mut max_steps) = (defaults.tau_end, defaults.max_steps);
        let mut output = None;
        let mut format = Format::Csv;
        let (mut pirani_project, mut pirani_enforce) = (false, false);

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line,
                    text: raw.to_string(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            }
            if !seen.insert(key.to_string()) {
                return Err(ConfigError::DuplicateKey {
                    line,
                    key: key.to_string(),
                });
            }
            match key {
                "x" => x = vector(key, value)?,
                "u" => u = Some(vector(key, value)?),
                "udot" => udot = vector(key, value)?,
                "s" => s = Some(vector(key, value)?),
                "m" => m = Some(real(key, value)?),
                "m0" => m0 = Some(real(key, value)?),
                "A" => a_const = real(key, value)?,
                "signature" => {
                    let parts: Vec<&str> = value.split(',').collect();
                    if parts.len() != 4 {
                        return Err(invalid(
                            key,
                            format!("expected 4 comma-separated signs, got {}", parts.len()),
                        ));
                    }
                    for (k, p) in parts.iter().enumerate() {
                        signature[k] = sign(key, p)?;
                    }
                }
                "orientation" => orientation = sign(key, value)?,
                "method" => method = value.parse().map_err(|e: String| invalid(key, e))?,
                "h0" => h0 = real(key, value)?,
                "tol_abs" => tol_abs = real(key, value)?,
                "tol_rel" => tol_rel = real(key, value)?,
                "tau_end" => tau_end = real(key, value)?,
                "max_steps" => {
                    max_steps = value
                        .parse()
                        .map_err(|_| invalid(key, format!("not a non-negative integer: {value:?}")))?
                }
                "output" => output = Some(value.to_string()),
                "format" => format = value.parse().map_err(|e: String| invalid(key, e))?,
                "pirani_project" => pirani_project = boolean(key, value)?,
                "pirani_enforce" => pirani_enforce = boolean(key, value)?,
                _ => unreachable!("key list and match arms agree"),
            }
        }

        let u = u.ok_or(ConfigError::MissingKey("u"))?;
        let s = s.ok_or(ConfigError::MissingKey("s"))?;
        let m = m.ok_or(ConfigError::MissingKey("m"))?;
        let cfg = RunConfig {
            x,
            u,
            udot,
            s,
            m,
            m0: m0.unwrap_or(MASS_CORRESPONDENCE * m),
            a_const,
            signature,
            orientation,
            method: method_tag(method),
            h0,
            tol_abs,
            tol_rel,
            tau_end,
            max_steps,
            output,
            format,
            pirani_project,
            pirani_enforce,
        };
        cfg.params()?;
        cfg.integrator()?;
        if norm_abs(&cfg.u, &cfg.signature()?) == 0.0 {
            return Err(invalid("u", "velocity has zero norm"));
        }
        Ok(cfg)
    }

    pub fn signature(&self) -> Result<Signature, ConfigError> {
        Signature::new(self.signature, self.orientation).map_err(|e| invalid("signature", e.to_string()))
    }

    pub fn params(&self) -> Result<Params, ConfigError> {
        Params::new(self.m, self.m0, self.s, self.a_const, self.signature()?).map_err(|e| match e {
            crate::Error::InvalidParameter { field, reason } => invalid(field, reason),
            other => invalid("params", other.to_string()),
        })
    }

    pub fn integrator(&self) -> Result<IntegratorConfig, ConfigError> {
        let cfg = IntegratorConfig {
            method: self.method.parse().map_err(|e: String| invalid("method", e))?,
            h0: self.h0,
            tol_abs: self.tol_abs,
            tol_rel: self.tol_rel,
            tau_end: self.tau_end,
            max_steps: self.max_steps,
        };
        cfg.validate().map_err(|e| match e {
            crate::Error::InvalidParameter { field, reason } => invalid(field, reason),
            other => invalid("integrator", other.to_string()),
        })?;
        Ok(cfg)
    }

    pub fn initial_state(&self) -> KinState {
        KinState::new(self.x, self.u, self.udot)
    }

    /// Applies the optional Pirani projection and then the optional check.
    /// Returns one log line per projection performed.
    pub fn prepare(&mut self) -> Result<Vec<String>, ConfigError> {
        let g = self.signature()?;
        let mut log = Vec::new();
        if self.pirani_project {
            let before = self.pirani_defect()?;
            self.s = self.s - self.u * (dot(&self.s, &self.u, &g) / dot(&self.u, &self.u, &g));
            log.push(format!(
                "pirani_project: s -> {:?} (relative s.u {before:e} -> {:e})",
                self.s.0,
                self.pirani_defect()?
            ));
            let ss = dot(&self.s, &self.s, &g);
            if ss != 0.0 {
                let sa = dot(&self.udot, &self.s, &g);
                self.udot = self.udot - self.s * (sa / ss);
                log.push(format!(
                    "pirani_project: udot -> {:?} (removed s.udot = {sa:e})",
                    self.udot.0
                ));
            }
            self.params()?;
        }
        if self.pirani_enforce {
            let d = self.pirani_defect()?;
            if !(d <= PIRANI_ENFORCE_TOLERANCE) {
                return Err(invalid(
                    "s",
                    format!("relative s.u = {d:e} exceeds {PIRANI_ENFORCE_TOLERANCE:e} (pirani_enforce)"),
                ));
            }
        }
        Ok(log)
    }

    fn pirani_defect(&self) -> Result<f64, ConfigError> {
        let g = self.signature()?;
        Ok(dot(&self.s, &self.u, &g).abs() / (norm_abs(&self.s, &g) * norm_abs(&self.u, &g)))
    }
}
