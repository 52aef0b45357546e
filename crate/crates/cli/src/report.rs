//! JSON report structures. Field order is fixed by declaration, and all
//! values are derived from the inputs, so serialization is deterministic
//! for a given tool version (the optional timestamp is off by default).

use serde::{Deserialize, Serialize};
use sivp_core::equilibria::Equilibrium;
use sivp_core::model::ModelParams;
use sivp_core::stability::{R0Result, Sense, StabilityReport};

use crate::config::{get_param, ScenarioConfig, PARAM_KEYS};

pub const TOOL_NAME: &str = "sivp";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamEntry {
    pub key: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct R0Report {
    pub value: f64,
    pub s1: f64,
    pub v1: f64,
    pub endemic: bool,
}

impl R0Report {
    pub fn from_core(r: &R0Result) -> Self {
        R0Report {
            value: r.value,
            s1: r.s1,
            v1: r.v1,
            endemic: r.endemic,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointReport {
    pub s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<f64>,
    pub v: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorReport {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub sense: String,
    pub margin: f64,
    pub status: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenvalueReport {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityJson {
    pub verdict: String,
    /// Ascending-degree monic characteristic polynomial of the Jacobian.
    pub char_coeffs: Vec<f64>,
    pub factors: Vec<FactorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_coeffs: Option<Vec<f64>>,
    pub conditions: Vec<ConditionReport>,
    pub eigenvalues: Vec<EigenvalueReport>,
}

impl StabilityJson {
    pub fn from_core(report: &StabilityReport) -> Self {
        StabilityJson {
            verdict: report.verdict.to_string(),
            char_coeffs: report.char_coeffs.clone(),
            factors: report
                .factors
                .iter()
                .map(|f| FactorReport {
                    name: f.name.to_string(),
                    value: f.value,
                })
                .collect(),
            block_coeffs: report.block_coeffs.clone(),
            conditions: report
                .conditions
                .iter()
                .map(|c| ConditionReport {
                    name: c.name.clone(),
                    value: c.value,
                    threshold: c.threshold,
                    sense: match c.sense {
                        Sense::Greater => "greater".to_string(),
                        Sense::Less => "less".to_string(),
                    },
                    margin: c.margin,
                    status: format!("{:?}", c.status).to_lowercase(),
                })
                .collect(),
            eigenvalues: report
                .eigenvalues
                .iter()
                .map(|z| EigenvalueReport { re: z.re, im: z.im })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub label: String,
    pub exists: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub notes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityJson>,
}

impl EquilibriumReport {
    pub fn from_core(eq: &Equilibrium, stability: Option<StabilityJson>) -> Self {
        use sivp_core::equilibria::EqPoint;
        let point = eq.point.as_ref().map(|p| match p {
            EqPoint::Full(x) => PointReport {
                s: x.s,
                i: Some(x.i),
                v: x.v,
                p: x.p,
            },
            EqPoint::Reduced(x) => PointReport {
                s: x.s,
                i: None,
                v: x.v,
                p: x.p,
            },
        });
        EquilibriumReport {
            label: eq.label.to_string(),
            exists: eq.exists.to_string(),
            point,
            residual: eq.residual,
            notes: eq.notes.clone(),
            stability,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub mu: f64,
    pub eta: f64,
    pub bound: f64,
    /// Largest component sum over the existing equilibria.
    pub max_equilibrium_chi: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub label: String,
    pub tool: ToolInfo,
    /// Unix seconds; populated only on request so repeated runs stay
    /// byte-identical.
    pub timestamp: Option<String>,
    pub disease_free: bool,
    pub params: Vec<ParamEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r0: Option<R0Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r0_note: Option<String>,
    pub equilibria: Vec<EquilibriumReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundedness: Option<BoundednessReport>,
}

pub fn params_echo(params: &ModelParams) -> Vec<ParamEntry> {
    PARAM_KEYS
        .iter()
        .map(|key| ParamEntry {
            key: key.to_string(),
            value: get_param(params, key).unwrap(),
        })
        .collect()
}

pub fn tool_info() -> ToolInfo {
    ToolInfo {
        name: TOOL_NAME.to_string(),
        version: TOOL_VERSION.to_string(),
    }
}

/// Scenario header shared by the report writers.
pub fn report_skeleton(cfg: &ScenarioConfig, timestamp: Option<String>) -> AnalysisReport {
    AnalysisReport {
        label: cfg.label.clone(),
        tool: tool_info(),
        timestamp,
        disease_free: cfg.disease_free,
        params: params_echo(&cfg.params),
        r0: None,
        r0_note: None,
        equilibria: Vec::new(),
        boundedness: None,
    }
}
