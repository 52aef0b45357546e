//! Model definition: parameters, states, right-hand sides, Jacobians,
//! the Dulac expression and the boundedness functional.
//!
//! Full system (densities `S`, `I`, `V`, `P`):
//!
//! ```text
//! dS/dt = r S (1 - (S+I)/k) - beta S I - phi S + theta V - p1 P S - m1 S - d1 S
//! dI/dt = beta S I + sigma V I - p2 P I - m2 I - d2 I - c I
//! dV/dt = phi S - theta V - sigma V I - p3 P V - m3 V - d3 V
//! dP/dt = q1 p1 P S + q2 p2 P I + q3 p3 P V - d4 P
//! ```
//!
//! The disease-free restriction drops `I` (and with it `beta`, `sigma`,
//! `p2`, `q2`, `m2`, `d2`, `c`), leaving a 3-D prey-predator system with
//! vaccination.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Components more negative than this are rejected; components in
/// `(NEG_FLOOR, 0)` are treated as round-off and clamped to zero before
/// evaluating the right-hand side.
pub const NEG_FLOOR: f64 = -1e-12;

/// The twenty nonnegative rates and coefficients of the model.
///
/// All rates are plain `f64` values; units are documented but not enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Prey growth rate (1/time). Must be positive.
    pub r: f64,
    /// Carrying capacity (density). Must be positive.
    pub k: f64,
    /// Infection coefficient of healthy prey (1/(density*time)).
    pub beta: f64,
    /// Infection coefficient of vaccinated prey (1/(density*time)).
    pub sigma: f64,
    /// Vaccination rate (1/time).
    pub phi: f64,
    /// Vaccination wear-off rate (1/time).
    pub theta: f64,
    /// Predation coefficient for healthy prey (1/(density*time)).
    pub p1: f64,
    /// Predation coefficient for infected prey (1/(density*time)).
    pub p2: f64,
    /// Predation coefficient for vaccinated prey (1/(density*time)).
    pub p3: f64,
    /// Conversion coefficient, healthy prey to predator (dimensionless, < 1).
    pub q1: f64,
    /// Conversion coefficient, infected prey to predator (dimensionless, < 1).
    pub q2: f64,
    /// Conversion coefficient, vaccinated prey to predator (dimensionless, < 1).
    pub q3: f64,
    /// Migration rate of healthy prey (1/time).
    pub m1: f64,
    /// Migration rate of infected prey (1/time).
    pub m2: f64,
    /// Migration rate of vaccinated prey (1/time).
    pub m3: f64,
    /// Natural death rate of healthy prey (1/time).
    pub d1: f64,
    /// Natural death rate of infected prey (1/time).
    pub d2: f64,
    /// Natural death rate of vaccinated prey (1/time).
    pub d3: f64,
    /// Natural death rate of the predator (1/time).
    pub d4: f64,
    /// Disease-induced death rate of infected prey (1/time).
    pub c: f64,
}

impl ModelParams {
    /// Validates the parameter set.
    ///
    /// Rejects non-finite or negative entries, `r <= 0`, `k <= 0`, and
    /// (unless `allow_conversion_ge_one`) any conversion coefficient
    /// `q_i >= 1`, which the boundedness argument relies on. When the
    /// override is set, offending `q_i` are reported as warnings instead,
    /// since the dynamics remain well defined.
    ///
    /// Returns advisory warnings; currently the `q_i >= 1` override notes
    /// and a lint for `p2 <= p1` (infected prey are expected to be easier
    /// to catch than healthy prey, but several published parameter sets
    /// use `p1 = p2`).
    pub fn validate(&self, allow_conversion_ge_one: bool) -> Result<Vec<String>> {
        let fields = self.named_fields();
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} = {value} is not finite"
                )));
            }
            if value < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {value} is negative"
                )));
            }
        }
        if self.r <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "r = {} must be positive",
                self.r
            )));
        }
        if self.k <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "k = {} must be positive",
                self.k
            )));
        }

        let mut warnings = Vec::new();
        for (name, q) in [("q1", self.q1), ("q2", self.q2), ("q3", self.q3)] {
            if q >= 1.0 {
                if allow_conversion_ge_one {
                    warnings.push(format!(
                        "{name} = {q} >= 1: boundedness bound is not guaranteed"
                    ));
                } else {
                    return Err(Error::InvalidParams(format!(
                        "{name} = {q} must be < 1 (set the override to allow)"
                    )));
                }
            }
        }
        if self.p2 <= self.p1 {
            warnings.push(format!(
                "p2 = {} <= p1 = {}: infected prey are usually assumed easier to catch",
                self.p2, self.p1
            ));
        }
        Ok(warnings)
    }

    fn named_fields(&self) -> [(&'static str, f64); 20] {
        [
            ("r", self.r),
            ("k", self.k),
            ("beta", self.beta),
            ("sigma", self.sigma),
            ("phi", self.phi),
            ("theta", self.theta),
            ("p1", self.p1),
            ("p2", self.p2),
            ("p3", self.p3),
            ("q1", self.q1),
            ("q2", self.q2),
            ("q3", self.q3),
            ("m1", self.m1),
            ("m2", self.m2),
            ("m3", self.m3),
            ("d1", self.d1),
            ("d2", self.d2),
            ("d3", self.d3),
            ("d4", self.d4),
            ("c", self.c),
        ]
    }
}

/// Densities of the full system: susceptible, infected and vaccinated prey
/// plus the predator. The positive octant is invariant under the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullState {
    pub s: f64,
    pub i: f64,
    pub v: f64,
    pub p: f64,
}

impl FullState {
    pub fn new(s: f64, i: f64, v: f64, p: f64) -> Self {
        Self { s, i, v, p }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.s, self.i, self.v, self.p]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Largest absolute component.
    pub fn max_norm(&self) -> f64 {
        self.as_array().iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Densities of the disease-free restriction (`I = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub s: f64,
    pub v: f64,
    pub p: f64,
}

impl ReducedState {
    pub fn new(s: f64, v: f64, p: f64) -> Self {
        Self { s, v, p }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.s, self.v, self.p]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Embeds the reduced state into the full system with `I = 0`.
    pub fn embed(&self) -> FullState {
        FullState::new(self.s, 0.0, self.v, self.p)
    }
}

/// Inputs to the boundedness check: a decay rate `mu` below the admissible
/// supremum, the resulting bound `eta / mu` on `chi = S + I + V + P`, and
/// the largest `chi` observed over a trajectory tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundednessCheck {
    /// Decay rate, chosen strictly below `min(m2+d2+c, m3+d3, d4)`.
    pub mu: f64,
    /// `k (r + mu)^2 / (4 r)`.
    pub eta: f64,
    /// The asymptotic bound `eta / mu`.
    pub bound: f64,
    /// Maximum of `chi` over the inspected trajectory tail.
    pub max_chi_observed: f64,
    /// Whether `max_chi_observed <= bound + 1e-6`.
    pub satisfied: bool,
}

/// Decay rate, ceiling and asymptotic bound of the boundedness argument:
/// `mu = 0.5 * min(m2+d2+c, m3+d3, d4)`, `eta = k (r+mu)^2 / (4 r)`, bound
/// `eta / mu`. Errors when the minimum rate is not positive, in which case
/// the argument does not apply.
pub fn boundedness_constants(params: &ModelParams) -> Result<(f64, f64, f64)> {
    let q = params;
    let min_rate = (q.m2 + q.d2 + q.c).min(q.m3 + q.d3).min(q.d4);
    if min_rate <= 0.0 {
        return Err(Error::BoundednessInapplicable(format!(
            "min(m2+d2+c, m3+d3, d4) = {min_rate} must be positive"
        )));
    }
    let mu = 0.5 * min_rate;
    let eta = q.k * (q.r + mu) * (q.r + mu) / (4.0 * q.r);
    Ok((mu, eta, eta / mu))
}

fn checked(component: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFiniteState { component, value });
    }
    if value < NEG_FLOOR {
        return Err(Error::NegativeState { component, value });
    }
    Ok(value.max(0.0))
}

/// Right-hand side of the full system.
///
/// Components in `(NEG_FLOOR, 0)` are clamped to zero before evaluation so
/// that round-off from the integrator cannot push the state outside the
/// invariant octant; anything more negative is an error.
pub fn rhs_full(params: &ModelParams, state: &FullState) -> Result<[f64; 4]> {
    let s = checked("S", state.s)?;
    let i = checked("I", state.i)?;
    let v = checked("V", state.v)?;
    let p = checked("P", state.p)?;
    Ok(rhs_full_raw(params, s, i, v, p))
}

/// Term-by-term evaluation without domain checks. Used for residuals of
/// candidate equilibria that may carry negative coordinates (for example
/// the always-rejected predator-infected boundary point).
pub(crate) fn rhs_full_raw(q: &ModelParams, s: f64, i: f64, v: f64, p: f64) -> [f64; 4] {
    let ds = q.r * s * (1.0 - (s + i) / q.k) - q.beta * s * i - q.phi * s + q.theta * v
        - q.p1 * p * s
        - q.m1 * s
        - q.d1 * s;
    let di = q.beta * s * i + q.sigma * v * i - q.p2 * p * i - q.m2 * i - q.d2 * i - q.c * i;
    let dv = q.phi * s - q.theta * v - q.sigma * v * i - q.p3 * p * v - q.m3 * v - q.d3 * v;
    let dp = q.q1 * q.p1 * p * s + q.q2 * q.p2 * p * i + q.q3 * q.p3 * p * v - q.d4 * p;
    [ds, di, dv, dp]
}

/// Right-hand side of the disease-free system.
pub fn rhs_reduced(params: &ModelParams, state: &ReducedState) -> Result<[f64; 3]> {
    let s = checked("S", state.s)?;
    let v = checked("V", state.v)?;
    let p = checked("P", state.p)?;
    Ok(rhs_reduced_raw(params, s, v, p))
}

pub(crate) fn rhs_reduced_raw(q: &ModelParams, s: f64, v: f64, p: f64) -> [f64; 3] {
    let ds =
        q.r * s * (1.0 - s / q.k) - q.phi * s + q.theta * v - q.p1 * p * s - q.m1 * s - q.d1 * s;
    let dv = q.phi * s - q.theta * v - q.p3 * p * v - q.m3 * v - q.d3 * v;
    let dp = q.q1 * q.p1 * p * s + q.q3 * q.p3 * p * v - q.d4 * p;
    [ds, dv, dp]
}

/// Jacobian of the full system at `state`, entry for entry:
///
/// ```text
/// [ A11            -rS/k - beta S   theta            -p1 S ]
/// [ beta I          A22             sigma I          -p2 I ]
/// [ phi            -sigma V         A33              -p3 V ]
/// [ q1 p1 P         q2 p2 P         q3 p3 P           A44  ]
/// ```
///
/// with `A11 = r - 2rS/k - rI/k - beta I - phi - p1 P - m1 - d1`,
/// `A22 = beta S + sigma V - p2 P - m2 - d2 - c`,
/// `A33 = -sigma I - theta - p3 P - m3 - d3` and
/// `A44 = q1 p1 S + q2 p2 I + q3 p3 V - d4`.
pub fn jacobian_full(params: &ModelParams, state: &FullState) -> Result<DMatrix<f64>> {
    let q = params;
    let s = checked("S", state.s)?;
    let i = checked("I", state.i)?;
    let v = checked("V", state.v)?;
    let p = checked("P", state.p)?;

    let a11 =
        q.r - 2.0 * q.r * s / q.k - q.r * i / q.k - q.beta * i - q.phi - q.p1 * p - q.m1 - q.d1;
    let a22 = q.beta * s + q.sigma * v - q.p2 * p - q.m2 - q.d2 - q.c;
    let a33 = -q.sigma * i - q.theta - q.p3 * p - q.m3 - q.d3;
    let a44 = q.q1 * q.p1 * s + q.q2 * q.p2 * i + q.q3 * q.p3 * v - q.d4;

    #[rustfmt::skip]
    let j = DMatrix::from_row_slice(4, 4, &[
        a11,               -q.r * s / q.k - q.beta * s, q.theta,          -q.p1 * s,
        q.beta * i,         a22,                        q.sigma * i,      -q.p2 * i,
        q.phi,             -q.sigma * v,                a33,              -q.p3 * v,
        q.q1 * q.p1 * p,    q.q2 * q.p2 * p,            q.q3 * q.p3 * p,   a44,
    ]);
    Ok(j)
}

/// Variational matrix of the disease-free system at `state`.
pub fn jacobian_reduced(params: &ModelParams, state: &ReducedState) -> Result<DMatrix<f64>> {
    let q = params;
    let s = checked("S", state.s)?;
    let v = checked("V", state.v)?;
    let p = checked("P", state.p)?;

    #[rustfmt::skip]
    let j = DMatrix::from_row_slice(3, 3, &[
        q.r - 2.0 * q.r * s / q.k - q.phi - q.p1 * p - q.m1 - q.d1,
            q.theta,
            -q.p1 * s,
        q.phi,
            -q.theta - q.p3 * p - q.m3 - q.d3,
            -q.p3 * v,
        q.q1 * q.p1 * p,
            q.q3 * q.p3 * p,
            q.q1 * q.p1 * s + q.q3 * q.p3 * v - q.d4,
    ]);
    Ok(j)
}

/// Dulac expression `-r/(k v) - theta/s^2 - phi/v^2` on the S-V plane.
///
/// Strictly negative for `s, v > 0` whenever any of `r`, `theta`, `phi` is
/// positive, which rules out periodic orbits in that plane.
pub fn dulac_expression(params: &ModelParams, s: f64, v: f64) -> Result<f64> {
    if !(s.is_finite() && v.is_finite()) || s <= 0.0 || v <= 0.0 {
        return Err(Error::Domain(format!(
            "Dulac expression requires s > 0 and v > 0, got s = {s}, v = {v}"
        )));
    }
    Ok(-params.r / (params.k * v) - params.theta / (s * s) - params.phi / (v * v))
}

/// Total density `chi = S + I + V + P`.
pub fn chi(state: &FullState) -> f64 {
    state.s + state.i + state.v + state.p
}
