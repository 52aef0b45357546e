//! Scenario configuration: a flat, diffable `key = value` format.
//!
//! `#` starts a comment (full line or trailing); keys are the exact
//! lowercase model parameter names plus initial conditions, integrator
//! settings, the `disease_free` flag and a free-form `label`. Every model
//! parameter is required; the rest have defaults.

use std::collections::BTreeMap;
use std::fmt;

use sivp_core::ModelParams;

/// The twenty model parameter keys, in canonical order.
pub const PARAM_KEYS: [&str; 20] = [
    "r", "k", "beta", "sigma", "phi", "theta", "p1", "p2", "p3", "q1", "q2", "q3", "m1", "m2",
    "m3", "d1", "d2", "d3", "d4", "c",
];

const OTHER_NUMERIC_KEYS: [&str; 8] = [
    "s0",
    "i0",
    "v0",
    "p0",
    "t_end",
    "rtol",
    "atol",
    "output_stride",
];

/// CLI-level error with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Configuration problem (exit code 2).
    Config(String),
    /// Numerical failure (exit code 3).
    Numerical(String),
    /// Input/output failure (exit code 4).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Maps a core error onto the CLI error taxonomy.
pub fn from_core(err: sivp_core::Error) -> CliError {
    match err {
        sivp_core::Error::InvalidParams(msg) => CliError::Config(msg),
        other => CliError::Numerical(other.to_string()),
    }
}

/// One parsed scenario: model parameters, initial conditions, integration
/// settings, and the system selector.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub params: ModelParams,
    pub s0: f64,
    pub i0: f64,
    pub v0: f64,
    pub p0: f64,
    pub t_end: f64,
    pub rtol: f64,
    pub atol: f64,
    pub output_stride: usize,
    /// When set, analyses and simulations address the 3-D system.
    pub disease_free: bool,
    pub label: String,
}

pub fn get_param(params: &ModelParams, key: &str) -> Option<f64> {
    Some(match key {
        "r" => params.r,
        "k" => params.k,
        "beta" => params.beta,
        "sigma" => params.sigma,
        "phi" => params.phi,
        "theta" => params.theta,
        "p1" => params.p1,
        "p2" => params.p2,
        "p3" => params.p3,
        "q1" => params.q1,
        "q2" => params.q2,
        "q3" => params.q3,
        "m1" => params.m1,
        "m2" => params.m2,
        "m3" => params.m3,
        "d1" => params.d1,
        "d2" => params.d2,
        "d3" => params.d3,
        "d4" => params.d4,
        "c" => params.c,
        _ => return None,
    })
}

pub fn set_param(params: &mut ModelParams, key: &str, value: f64) -> bool {
    let slot = match key {
        "r" => &mut params.r,
        "k" => &mut params.k,
        "beta" => &mut params.beta,
        "sigma" => &mut params.sigma,
        "phi" => &mut params.phi,
        "theta" => &mut params.theta,
        "p1" => &mut params.p1,
        "p2" => &mut params.p2,
        "p3" => &mut params.p3,
        "q1" => &mut params.q1,
        "q2" => &mut params.q2,
        "q3" => &mut params.q3,
        "m1" => &mut params.m1,
        "m2" => &mut params.m2,
        "m3" => &mut params.m3,
        "d1" => &mut params.d1,
        "d2" => &mut params.d2,
        "d3" => &mut params.d3,
        "d4" => &mut params.d4,
        "c" => &mut params.c,
        _ => return false,
    };
    *slot = value;
    true
}

fn parse_number(key: &str, raw: &str, line_no: usize) -> Result<f64, CliError> {
    let value: f64 = raw.parse().map_err(|_| {
        CliError::Config(format!(
            "line {line_no}: malformed number for key {key}: {raw:?}"
        ))
    })?;
    if !value.is_finite() {
        return Err(CliError::Config(format!(
            "line {line_no}: value for key {key} must be finite, got {raw:?}"
        )));
    }
    if value < 0.0 {
        return Err(CliError::Config(format!(
            "line {line_no}: value for key {key} must be nonnegative, got {value}"
        )));
    }
    Ok(value)
}

/// Parses the line-oriented `key = value` scenario format.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let mut numbers: BTreeMap<String, f64> = BTreeMap::new();
    let mut disease_free: Option<bool> = None;
    let mut label: Option<String> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "line {line_no}: expected `key = value`, got {line:?}"
            ))
        })?;
        let key = key.trim();
        let value = value.trim();

        match key {
            "disease_free" => {
                if disease_free.is_some() {
                    return Err(CliError::Config(format!(
                        "line {line_no}: duplicate key disease_free"
                    )));
                }
                disease_free = Some(match value {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(CliError::Config(format!(
                            "line {line_no}: disease_free must be true or false, got {other:?}"
                        )))
                    }
                });
            }
            "label" => {
                if label.is_some() {
                    return Err(CliError::Config(format!(
                        "line {line_no}: duplicate key label"
                    )));
                }
                label = Some(value.to_string());
            }
            k if PARAM_KEYS.contains(&k) || OTHER_NUMERIC_KEYS.contains(&k) => {
                if numbers.contains_key(k) {
                    return Err(CliError::Config(format!(
                        "line {line_no}: duplicate key {k}"
                    )));
                }
                numbers.insert(k.to_string(), parse_number(k, value, line_no)?);
            }
            unknown => {
                return Err(CliError::Config(format!(
                    "line {line_no}: unknown key {unknown:?}"
                )));
            }
        }
    }

    let missing: Vec<&str> = PARAM_KEYS
        .iter()
        .filter(|k| !numbers.contains_key(**k))
        .copied()
        .collect();
    if !missing.is_empty() {
        return Err(CliError::Config(format!(
            "missing required model keys: {}",
            missing.join(", ")
        )));
    }

    let mut params = ModelParams {
        r: 0.0,
        k: 0.0,
        beta: 0.0,
        sigma: 0.0,
        phi: 0.0,
        theta: 0.0,
        p1: 0.0,
        p2: 0.0,
        p3: 0.0,
        q1: 0.0,
        q2: 0.0,
        q3: 0.0,
        m1: 0.0,
        m2: 0.0,
        m3: 0.0,
        d1: 0.0,
        d2: 0.0,
        d3: 0.0,
        d4: 0.0,
        c: 0.0,
    };
    for key in PARAM_KEYS {
        set_param(&mut params, key, numbers[key]);
    }
    params
        .validate(false)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let disease_free = disease_free.unwrap_or(false);
    let i0_specified = numbers.contains_key("i0");
    let i0 = if disease_free {
        let given = numbers.get("i0").copied().unwrap_or(0.0);
        if i0_specified && given != 0.0 {
            return Err(CliError::Config(format!(
                "i0 = {given} must be 0 in a disease-free scenario"
            )));
        }
        0.0
    } else {
        numbers.get("i0").copied().unwrap_or(0.5)
    };

    let rtol = numbers.get("rtol").copied().unwrap_or(1e-8);
    let atol = numbers.get("atol").copied().unwrap_or(1e-10);
    if rtol <= 0.0 || atol <= 0.0 {
        return Err(CliError::Config(format!(
            "rtol = {rtol} and atol = {atol} must be positive"
        )));
    }
    let stride_raw = numbers.get("output_stride").copied().unwrap_or(10.0);
    if stride_raw.fract() != 0.0 || !(1.0..=1e9).contains(&stride_raw) {
        return Err(CliError::Config(format!(
            "output_stride = {stride_raw} must be a positive integer"
        )));
    }

    Ok(ScenarioConfig {
        params,
        s0: numbers.get("s0").copied().unwrap_or(0.5),
        i0,
        v0: numbers.get("v0").copied().unwrap_or(0.5),
        p0: numbers.get("p0").copied().unwrap_or(0.5),
        t_end: numbers.get("t_end").copied().unwrap_or(500.0),
        rtol,
        atol,
        output_stride: stride_raw as usize,
        disease_free,
        label: label.unwrap_or_else(|| "scenario".to_string()),
    })
}

impl ScenarioConfig {
    /// Serializes back to the config format; `parse_config` reproduces the
    /// value exactly.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("label = {}\n", self.label));
        for key in PARAM_KEYS {
            out.push_str(&format!(
                "{key} = {}\n",
                get_param(&self.params, key).unwrap()
            ));
        }
        out.push_str(&format!("s0 = {}\n", self.s0));
        out.push_str(&format!("i0 = {}\n", self.i0));
        out.push_str(&format!("v0 = {}\n", self.v0));
        out.push_str(&format!("p0 = {}\n", self.p0));
        out.push_str(&format!("t_end = {}\n", self.t_end));
        out.push_str(&format!("rtol = {}\n", self.rtol));
        out.push_str(&format!("atol = {}\n", self.atol));
        out.push_str(&format!("output_stride = {}\n", self.output_stride));
        out.push_str(&format!("disease_free = {}\n", self.disease_free));
        out
    }
}
