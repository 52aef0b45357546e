//! Equilibria of the full system (`E0`..`E5`) and of the disease-free
//! restriction (`E^(0)`..`E^(2)`), with existence verdicts and residuals.
//!
//! Closed forms exist for the trivial, disease-free and predator-infected
//! boundary points. The remaining families are governed by cubics that are
//! never transcribed from their expanded printed forms: each cubic is
//! evaluated from the defining equilibrium conditions and its coefficients
//! recovered by exact-degree interpolation (see [`crate::poly`]). The
//! predator-free endemic family additionally cross-checks its roots with a
//! bracketed scan of the uncleared scalar function (dual-path oracle).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{self, FullState, ModelParams, ReducedState};
use crate::poly::{self, Poly, EPSILON_POS};

/// Labels of the equilibrium families. `Reduced*` labels belong to the
/// disease-free 3-D system and display as `E^(0)`..`E^(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EqLabel {
    E0,
    E1,
    E2,
    E3,
    E4,
    E5,
    ReducedE0,
    ReducedE1,
    ReducedE2,
}

impl EqLabel {
    pub fn is_reduced(&self) -> bool {
        matches!(
            self,
            EqLabel::ReducedE0 | EqLabel::ReducedE1 | EqLabel::ReducedE2
        )
    }
}

impl fmt::Display for EqLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EqLabel::E0 => "E0",
            EqLabel::E1 => "E1",
            EqLabel::E2 => "E2",
            EqLabel::E3 => "E3",
            EqLabel::E4 => "E4",
            EqLabel::E5 => "E5",
            EqLabel::ReducedE0 => "E^(0)",
            EqLabel::ReducedE1 => "E^(1)",
            EqLabel::ReducedE2 => "E^(2)",
        };
        f.write_str(s)
    }
}

impl FromStr for EqLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E0" => Ok(EqLabel::E0),
            "E1" => Ok(EqLabel::E1),
            "E2" => Ok(EqLabel::E2),
            "E3" => Ok(EqLabel::E3),
            "E4" => Ok(EqLabel::E4),
            "E5" => Ok(EqLabel::E5),
            "E^(0)" => Ok(EqLabel::ReducedE0),
            "E^(1)" => Ok(EqLabel::ReducedE1),
            "E^(2)" => Ok(EqLabel::ReducedE2),
            other => Err(Error::Domain(format!(
                "unknown equilibrium label {other:?}"
            ))),
        }
    }
}

/// Existence verdict for a candidate point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    /// All existence inequalities hold strictly (margin above 1e-9).
    Exists,
    /// Some existence inequality fails.
    FailsCondition,
    /// The governing polynomial has no positive real root.
    NoPositiveRoot,
    /// An existence inequality sits inside the `+-1e-9` boundary band.
    Degenerate,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Existence::Exists => "exists",
            Existence::FailsCondition => "fails-condition",
            Existence::NoPositiveRoot => "no-positive-root",
            Existence::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// Coordinates of an equilibrium candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EqPoint {
    Full(FullState),
    Reduced(ReducedState),
}

impl EqPoint {
    pub fn max_component(&self) -> f64 {
        match self {
            EqPoint::Full(x) => x
                .as_array()
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max),
            EqPoint::Reduced(x) => x
                .as_array()
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// A labeled fixed-point candidate with its existence verdict, the notes
/// explaining which condition failed (if any), and the right-hand-side
/// residual at the point.
#[derive(Debug, Clone)]
pub struct Equilibrium {
    pub label: EqLabel,
    /// `None` for placeholder entries reporting a rootless family.
    pub point: Option<EqPoint>,
    pub exists: Existence,
    pub notes: String,
    /// Max-norm of the right-hand side at `point`.
    pub residual: Option<f64>,
}

impl Equilibrium {
    fn with_residual(
        params: &ModelParams,
        label: EqLabel,
        point: EqPoint,
        exists: Existence,
        notes: String,
    ) -> Self {
        let residual = match point {
            EqPoint::Full(x) => model::rhs_full_raw(params, x.s, x.i, x.v, x.p)
                .iter()
                .fold(0.0_f64, |m, d| m.max(d.abs())),
            EqPoint::Reduced(x) => model::rhs_reduced_raw(params, x.s, x.v, x.p)
                .iter()
                .fold(0.0_f64, |m, d| m.max(d.abs())),
        };
        Equilibrium {
            label,
            point: Some(point),
            exists,
            notes,
            residual: Some(residual),
        }
    }

    fn placeholder(label: EqLabel, exists: Existence, notes: String) -> Self {
        Equilibrium {
            label,
            point: None,
            exists,
            notes,
            residual: None,
        }
    }
}

/// Classifies a value that an existence condition requires to be positive.
fn positivity(value: f64) -> Existence {
    if value > EPSILON_POS {
        Existence::Exists
    } else if value >= -EPSILON_POS {
        Existence::Degenerate
    } else {
        Existence::FailsCondition
    }
}

/// Merges per-condition verdicts: any failure dominates, then degeneracy.
fn merge(verdicts: impl IntoIterator<Item = Existence>) -> Existence {
    let mut out = Existence::Exists;
    for v in verdicts {
        match v {
            Existence::FailsCondition | Existence::NoPositiveRoot => return v,
            Existence::Degenerate => out = Existence::Degenerate,
            Existence::Exists => {}
        }
    }
    out
}

/// Interpolation nodes for cubic recovery, scaled to the carrying capacity
/// and symmetric about zero so the pole of the endemic scalar function at
/// the origin is avoided.
fn cubic_nodes(k: f64) -> [f64; 4] {
    let s = 0.5 * k.max(1.0);
    [-3.0 * s, -s, s, 3.0 * s]
}

/// Trivial equilibrium of the full system; always exists, residual is
/// exactly zero.
pub fn eq_trivial() -> Equilibrium {
    Equilibrium {
        label: EqLabel::E0,
        point: Some(EqPoint::Full(FullState::new(0.0, 0.0, 0.0, 0.0))),
        exists: Existence::Exists,
        notes: "trivial equilibrium always exists".into(),
        residual: Some(0.0),
    }
}

/// Trivial equilibrium of the disease-free system.
pub fn eq_trivial_reduced() -> Equilibrium {
    Equilibrium {
        label: EqLabel::ReducedE0,
        point: Some(EqPoint::Reduced(ReducedState::new(0.0, 0.0, 0.0))),
        exists: Existence::Exists,
        notes: "trivial equilibrium always exists".into(),
        residual: Some(0.0),
    }
}

/// Closed-form coordinates of the disease- and predator-free point:
/// `S1 = (k/r) * bracket`, `V1 = phi * S1 / (theta + m3 + d3)` with
/// `bracket = r - phi - m1 - d1 + theta*phi/(theta + m3 + d3)`.
///
/// Returns `(s1, v1, bracket)`; the point exists iff `bracket > 0`.
pub fn disease_free_coords(params: &ModelParams) -> Result<(f64, f64, f64)> {
    let q = params;
    let denom = q.theta + q.m3 + q.d3;
    if denom <= 0.0 {
        return Err(Error::SingularDenominator(format!(
            "theta + m3 + d3 = {denom} must be positive for the disease-free equilibrium"
        )));
    }
    let bracket = q.r - q.phi - q.m1 - q.d1 + q.theta * q.phi / denom;
    let s1 = q.k / q.r * bracket;
    let v1 = q.phi * s1 / denom;
    Ok((s1, v1, bracket))
}

fn disease_free_verdict(bracket: f64) -> (Existence, String) {
    let exists = positivity(bracket);
    let notes = match exists {
        Existence::Exists => format!(
            "existence bracket r - phi - m1 - d1 + theta*phi/(theta+m3+d3) = {bracket:.6} > 0"
        ),
        Existence::Degenerate => {
            format!("existence bracket = {bracket:.3e} lies inside the boundary band")
        }
        _ => format!("existence bracket = {bracket:.6} is not positive"),
    };
    (exists, notes)
}

/// Disease-free equilibrium `E1 = (S1, 0, V1, 0)` of the full system.
pub fn eq_disease_free(params: &ModelParams) -> Result<Equilibrium> {
    let (s1, v1, bracket) = disease_free_coords(params)?;
    let (exists, notes) = disease_free_verdict(bracket);
    Ok(Equilibrium::with_residual(
        params,
        EqLabel::E1,
        EqPoint::Full(FullState::new(s1, 0.0, v1, 0.0)),
        exists,
        notes,
    ))
}

/// Predator-free equilibrium `E^(1) = (S1, V1, 0)` of the reduced system.
pub fn eq_disease_free_reduced(params: &ModelParams) -> Result<Equilibrium> {
    let (s1, v1, bracket) = disease_free_coords(params)?;
    let (exists, notes) = disease_free_verdict(bracket);
    Ok(Equilibrium::with_residual(
        params,
        EqLabel::ReducedE1,
        EqPoint::Reduced(ReducedState::new(s1, v1, 0.0)),
        exists,
        notes,
    ))
}

/// Left-hand side of the predator equation governing `P2` at the interior
/// disease-free point; a cubic in `P2`.
fn e2_cubic_lhs(q: &ModelParams, p2: f64) -> f64 {
    let t = q.theta + q.d3 + q.m3 + q.p3 * p2;
    let first = -q.r * q.d4 * t * t / q.k;
    let inner = q.r * q.theta + (q.r - q.phi) * (q.d3 + q.m3)
        - (q.theta + q.d3 + q.m3) * (q.d1 + q.m1 + q.p1 * p2)
        - p2 * (-q.r + q.phi + q.d1 + q.m1 + q.p1 * p2) * q.p3;
    let weight = q.p1 * t * q.q1 + q.phi * q.p3 * q.q3;
    first + inner * weight
}

struct E2Candidate {
    p2: f64,
    s2: f64,
    v2: f64,
    exists: Existence,
    notes: String,
}

/// Shared computation for `E2` (full) and `E^(2)` (reduced): recovers the
/// `P2` cubic, back-substitutes `V2` then `S2`, and applies the existence
/// checks `S2 > 0`, `V2 > 0`, `d4 - p3 q3 V2 > 0`.
fn e2_candidates(params: &ModelParams) -> Result<(Vec<E2Candidate>, Poly)> {
    let q = params;
    if q.p1 * q.q1 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "p1*q1 = {} must be positive for the interior disease-free equilibrium",
            q.p1 * q.q1
        )));
    }
    let cubic = poly::recover_cubic(|x| e2_cubic_lhs(q, x), cubic_nodes(q.k))?;
    if cubic.degree() == 0 {
        return Err(Error::Domain(
            "P2 equation degenerated to a constant".into(),
        ));
    }
    let roots = cubic.roots()?;
    let mut out = Vec::new();
    for p2 in roots.positive_real_roots() {
        let denom =
            q.p1 * q.q1 * (q.theta + q.d3 + q.m3) + q.phi * q.p3 * q.q3 + q.p1 * q.p3 * q.q1 * p2;
        if denom.abs() <= 1e-12 {
            out.push(E2Candidate {
                p2,
                s2: f64::NAN,
                v2: f64::NAN,
                exists: Existence::FailsCondition,
                notes: format!("V2 denominator = {denom:.3e} is singular at P2 = {p2:.6}"),
            });
            continue;
        }
        let v2 = q.phi * q.d4 / denom;
        let margin = q.d4 - q.p3 * q.q3 * v2;
        let s2 = margin / (q.p1 * q.q1);
        let exists = merge([positivity(s2), positivity(v2), positivity(margin)]);
        let notes = match exists {
            Existence::Exists => format!("positive root P2 = {p2:.6}; d4 - p3 q3 V2 = {margin:.6} > 0"),
            Existence::Degenerate => format!("boundary case at P2 = {p2:.6}: d4 - p3 q3 V2 = {margin:.3e}"),
            _ => format!("root P2 = {p2:.6} rejected: d4 - p3 q3 V2 = {margin:.6}, S2 = {s2:.6}, V2 = {v2:.6}"),
        };
        out.push(E2Candidate {
            p2,
            s2,
            v2,
            exists,
            notes,
        });
    }
    Ok((out, cubic))
}

fn rootless_notes(cubic: &Poly) -> String {
    match cubic.roots() {
        Ok(roots) => {
            let mut rendered: Vec<String> = roots
                .real_roots()
                .iter()
                .map(|r| format!("{r:.6}"))
                .collect();
            if rendered.is_empty() {
                rendered.push("none real".into());
            }
            format!("no positive root; real roots: {}", rendered.join(", "))
        }
        Err(_) => "no positive root".into(),
    }
}

/// Interior equilibrium `E2 = (S2, 0, V2, P2)` of the full system. One
/// entry per admissible cubic root, ordered ascending in `P2`; a single
/// `no-positive-root` placeholder when the cubic has none.
pub fn eq_e2(params: &ModelParams) -> Result<Vec<Equilibrium>> {
    let (candidates, cubic) = e2_candidates(params)?;
    if candidates.is_empty() {
        return Ok(vec![Equilibrium::placeholder(
            EqLabel::E2,
            Existence::NoPositiveRoot,
            rootless_notes(&cubic),
        )]);
    }
    Ok(candidates
        .into_iter()
        .map(|c| {
            if c.s2.is_nan() {
                Equilibrium::placeholder(EqLabel::E2, c.exists, c.notes)
            } else {
                Equilibrium::with_residual(
                    params,
                    EqLabel::E2,
                    EqPoint::Full(FullState::new(c.s2, 0.0, c.v2, c.p2)),
                    c.exists,
                    c.notes,
                )
            }
        })
        .collect())
}

/// Interior equilibrium `E^(2) = (S2, V2, P2)` of the reduced system.
pub fn eq_e2_reduced(params: &ModelParams) -> Result<Vec<Equilibrium>> {
    let (candidates, cubic) = e2_candidates(params)?;
    if candidates.is_empty() {
        return Ok(vec![Equilibrium::placeholder(
            EqLabel::ReducedE2,
            Existence::NoPositiveRoot,
            rootless_notes(&cubic),
        )]);
    }
    Ok(candidates
        .into_iter()
        .map(|c| {
            if c.s2.is_nan() {
                Equilibrium::placeholder(EqLabel::ReducedE2, c.exists, c.notes)
            } else {
                Equilibrium::with_residual(
                    params,
                    EqLabel::ReducedE2,
                    EqPoint::Reduced(ReducedState::new(c.s2, c.v2, c.p2)),
                    c.exists,
                    c.notes,
                )
            }
        })
        .collect())
}

/// Predator-infected boundary point `E3 = (0, I3, 0, P3)` with
/// `I3 = d4/(q2 p2)` and `P3 = -(c + d2 + m2)/p2`.
///
/// `P3` is nonpositive for admissible parameters, so this point never
/// exists; the computed coordinates are reported for the record.
pub fn eq_e3(params: &ModelParams) -> Result<Equilibrium> {
    let q = params;
    if q.p2 <= 0.0 || q.q2 * q.p2 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "q2*p2 = {} and p2 = {} must be positive for the predator-infected point",
            q.q2 * q.p2,
            q.p2
        )));
    }
    let i3 = q.d4 / (q.q2 * q.p2);
    let p3 = -(q.c + q.d2 + q.m2) / q.p2;
    let exists = if p3.abs() <= EPSILON_POS {
        Existence::Degenerate
    } else {
        Existence::FailsCondition
    };
    Ok(Equilibrium::with_residual(
        params,
        EqLabel::E3,
        EqPoint::Full(FullState::new(0.0, i3, 0.0, p3)),
        exists,
        format!("P3 = {p3:.6} is not positive: populations cannot be negative"),
    ))
}

/// `theta + d3 + m3 + sigma*I` and the shared denominator
/// `sigma*phi + beta*(theta + d3 + m3 + sigma*I)` of the `E4` closed forms.
fn e4_denoms(q: &ModelParams, i: f64) -> (f64, f64) {
    let t = q.theta + q.d3 + q.m3 + q.sigma * i;
    (t, q.sigma * q.phi + q.beta * t)
}

/// Scalar equilibrium condition for `I4`, derived from `dS/dt = 0` with
/// `V/S` eliminated through `dV/dt = 0` at `P = 0`:
///
/// ```text
/// g(I) = theta*phi - t * (phi + d1 + m1 + beta*I - (r/k)(k - I - S4(I)))
/// t    = theta + d3 + m3 + sigma*I
/// S4(I)= (c + d2 + m2) * t / (sigma*phi + beta*t)
/// ```
fn e4_scalar(q: &ModelParams, i: f64) -> f64 {
    let (t, d) = e4_denoms(q, i);
    let s4 = (q.c + q.d2 + q.m2) * t / d;
    q.theta * q.phi - t * (q.phi + q.d1 + q.m1 + q.beta * i - q.r / q.k * (q.k - i - s4))
}

/// `g` with the rational denominator cleared: a cubic in `I`.
fn e4_cleared(q: &ModelParams, i: f64) -> f64 {
    let (t, d) = e4_denoms(q, i);
    q.theta * q.phi * d
        - t * ((q.phi + q.d1 + q.m1 + q.beta * i) * d
            - q.r / q.k * (q.k * d - i * d - (q.c + q.d2 + q.m2) * t))
}

/// Predator-free endemic equilibria `E4 = (S4, I4, V4, 0)`.
///
/// Roots of the cleared cubic are cross-checked against a bracketed scan
/// of the uncleared scalar function on `[0, 10k]`; boundedness confines
/// feasible densities well inside that interval. Returns an empty list
/// when no positive root exists.
pub fn eq_e4(params: &ModelParams) -> Result<Vec<Equilibrium>> {
    let q = params;
    if q.beta == 0.0 && q.sigma * q.phi == 0.0 {
        // No infection pressure at P = 0: dI/dt = -(c+d2+m2+m2...)I < 0,
        // and the closed forms are 0/0. No endemic predator-free point.
        return Ok(Vec::new());
    }
    let cubic = poly::recover_cubic(|x| e4_cleared(q, x), cubic_nodes(q.k))?;
    let scan = poly::bracket_roots(|x| e4_scalar(q, x), 0.0, 10.0 * q.k, 256)?;
    let scan_pos: Vec<f64> = scan.into_iter().filter(|r| *r > EPSILON_POS).collect();

    let mut roots: Vec<(f64, String)> = Vec::new();
    if cubic.degree() >= 1 {
        for root in cubic.roots()?.positive_real_roots() {
            let matched = scan_pos
                .iter()
                .find(|r| (*r - root).abs() <= 1e-6 * (1.0 + root.abs()));
            match matched {
                Some(&refined) => roots.push((refined, String::new())),
                None => roots.push((
                    root,
                    "; bracket scan did not isolate this root (possible tangency)".into(),
                )),
            }
        }
    }
    for &r in &scan_pos {
        if !roots
            .iter()
            .any(|(known, _)| (known - r).abs() <= 1e-6 * (1.0 + r.abs()))
        {
            roots.push((r, "; found by bracket scan only".into()));
        }
    }
    roots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut out = Vec::new();
    for (i4, extra) in roots {
        let (t, d) = e4_denoms(q, i4);
        if d.abs() <= 1e-12 {
            // Spurious root at the cleared-denominator pole; unreachable
            // for positive parameters but guarded.
            continue;
        }
        let s4 = (q.c + q.d2 + q.m2) * t / d;
        let v4 = q.phi * (q.c + q.d2 + q.m2) / d;
        let exists = merge([
            positivity(i4),
            positivity(s4),
            if v4 < -EPSILON_POS {
                Existence::FailsCondition
            } else {
                Existence::Exists
            },
        ]);
        let notes = match exists {
            Existence::Exists => format!("positive root I4 = {i4:.6}{extra}"),
            Existence::Degenerate => format!("boundary root I4 = {i4:.3e}{extra}"),
            _ => format!("root I4 = {i4:.6} rejected: S4 = {s4:.6}, V4 = {v4:.6}{extra}"),
        };
        out.push(Equilibrium::with_residual(
            params,
            EqLabel::E4,
            EqPoint::Full(FullState::new(s4, i4, v4, 0.0)),
            exists,
            notes,
        ));
    }
    Ok(out)
}

/// Numerator `P(S)` and denominator `Q(S)` of `V5 = P/Q`, extracted from
/// the `dS/dt = 0` condition (multiplied by `k p2 q2`), which is linear in
/// `V` once `I` and `P` are eliminated through `dP/dt = 0` and `dI/dt = 0`.
fn e5_pq(q: &ModelParams, s: f64) -> (f64, f64) {
    let eval = |v: f64| {
        let i = (q.d4 - q.p1 * q.q1 * s - q.p3 * q.q3 * v) / (q.p2 * q.q2);
        let p = (q.beta * s + q.sigma * v - q.c - q.d2 - q.m2) / q.p2;
        let ds = q.r * s * (1.0 - (s + i) / q.k) - q.beta * s * i - q.phi * s + q.theta * v
            - q.p1 * p * s
            - q.m1 * s
            - q.d1 * s;
        q.k * q.p2 * q.q2 * ds
    };
    let at_zero = eval(0.0);
    let slope = eval(1.0) - at_zero;
    (-at_zero, slope)
}

/// Scalar equilibrium condition for `S5`: the `dV/dt = 0` residual with
/// `V = P/Q`, `I` and `P` substituted, multiplied by `p2 q2 Q^2` and
/// divided by the structural factor `S`. A cubic in `S`.
fn e5_scalar(q: &ModelParams, s: f64) -> f64 {
    let (pp, qq) = e5_pq(q, s);
    let a = (q.theta + q.m3 + q.d3) * q.p2 * q.q2
        + q.sigma * (q.d4 - q.p1 * q.q1 * s)
        + q.p3 * q.q2 * (q.beta * s - q.c - q.d2 - q.m2);
    (q.phi * s * q.p2 * q.q2 * qq * qq - pp * qq * a - q.sigma * q.p3 * (q.q2 - q.q3) * pp * pp) / s
}

/// Interior (coexistence) equilibria `E5 = (S5, I5, V5, P5)`.
///
/// For each positive root of the recovered cubic the back-substitution is
/// `V5 = P/Q`, `I5 = (d4 - p1 q1 S5 - p3 q3 V5)/(p2 q2)`,
/// `P5 = (beta S5 + sigma V5 - c - d2 - m2)/p2`; existence requires the
/// `I5` and `P5` numerators and `V5` to be positive. `V5 > 0` means the
/// signs of `P` and `Q` agree; candidates where exactly one of `P > 0`,
/// `Q < 0` holds have `V5 < 0` and are rejected with the sign pattern
/// recorded. Returns an empty list when no positive root exists.
pub fn eq_e5(params: &ModelParams) -> Result<Vec<Equilibrium>> {
    let q = params;
    if q.p2 * q.q2 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "p2*q2 = {} must be positive for the interior equilibrium",
            q.p2 * q.q2
        )));
    }
    let cubic = poly::recover_cubic(|x| e5_scalar(q, x), cubic_nodes(q.k))?;
    if cubic.degree() == 0 {
        return Ok(Vec::new());
    }
    let roots = cubic.roots()?;

    let mut out = Vec::new();
    for s5 in roots.positive_real_roots() {
        let (pp, qq) = e5_pq(q, s5);
        let q_scale = (q.k * q.theta * q.p2 * q.q2).abs()
            + ((q.r + q.k * q.beta) * q.p3 * q.q3 * s5).abs()
            + (q.k * q.sigma * q.p1 * q.q2 * s5).abs();
        if qq.abs() <= 1e-12 * q_scale.max(1.0) {
            out.push(Equilibrium::placeholder(
                EqLabel::E5,
                Existence::FailsCondition,
                format!("singular denominator Q = {qq:.3e} at S5 = {s5:.6}; candidate rejected"),
            ));
            continue;
        }
        let v5 = pp / qq;
        let i5_num = q.d4 - q.p1 * q.q1 * s5 - q.p3 * q.q3 * v5;
        let i5 = i5_num / (q.p2 * q.q2);
        let p5_num = q.beta * s5 + q.sigma * v5 - q.c - q.d2 - q.m2;
        let p5 = p5_num / q.p2;
        let exists = merge([positivity(v5), positivity(i5_num), positivity(p5_num)]);
        let sign_note = format!(
            "P = {pp:.6} ({}), Q = {qq:.6} ({})",
            if pp > 0.0 { "positive" } else { "nonpositive" },
            if qq < 0.0 { "negative" } else { "nonnegative" },
        );
        let notes = match exists {
            Existence::Exists => format!("positive root S5 = {s5:.6}; {sign_note}"),
            Existence::Degenerate => format!("boundary root S5 = {s5:.6}; {sign_note}"),
            _ => format!(
                "root S5 = {s5:.6} rejected: V5 = {v5:.6}, I5 = {i5:.6}, P5 = {p5:.6}; {sign_note}"
            ),
        };
        out.push(Equilibrium::with_residual(
            params,
            EqLabel::E5,
            EqPoint::Full(FullState::new(s5, i5, v5, p5)),
            exists,
            notes,
        ));
    }
    Ok(out)
}

/// Ascending-degree monic cubic governing `P2` (shared by `E2`/`E^(2)`).
pub fn e2_cubic(params: &ModelParams) -> Result<Poly> {
    let (_, cubic) = e2_candidates(params)?;
    Ok(cubic.monic())
}

/// Ascending-degree monic cubic governing `S5`.
pub fn e5_cubic(params: &ModelParams) -> Result<Poly> {
    if params.p2 * params.q2 <= 0.0 {
        return Err(Error::InvalidParams("p2*q2 must be positive".into()));
    }
    Ok(poly::recover_cubic(|x| e5_scalar(params, x), cubic_nodes(params.k))?.monic())
}

/// Uncleared scalar function for `I4` (exposed for the dual-path oracle).
pub fn e4_scalar_fn(params: &ModelParams, i: f64) -> f64 {
    e4_scalar(params, i)
}

/// Cleared cubic function for `I4` (exposed for the dual-path oracle).
pub fn e4_cleared_fn(params: &ModelParams, i: f64) -> f64 {
    e4_cleared(params, i)
}

/// Scalar cubic function for `S5` (exposed for the dual-path oracle).
pub fn e5_scalar_fn(params: &ModelParams, s: f64) -> f64 {
    e5_scalar(params, s)
}

/// All equilibria of the full system, residual-verified.
pub fn eq_all_full(params: &ModelParams) -> Result<Vec<Equilibrium>> {
    let mut out = vec![eq_trivial(), eq_disease_free(params)?];
    out.extend(eq_e2(params)?);
    out.push(eq_e3(params)?);
    out.extend(eq_e4(params)?);
    out.extend(eq_e5(params)?);
    verify_residuals(&out)?;
    Ok(out)
}

/// All equilibria of the disease-free system, residual-verified.
pub fn eq_all_reduced(params: &ModelParams) -> Result<Vec<Equilibrium>> {
    let mut out = vec![eq_trivial_reduced(), eq_disease_free_reduced(params)?];
    out.extend(eq_e2_reduced(params)?);
    verify_residuals(&out)?;
    Ok(out)
}

/// Union of the full-system equilibria and, when `include_reduced` is set,
/// the disease-free system's equilibria.
pub fn eq_all(params: &ModelParams, include_reduced: bool) -> Result<Vec<Equilibrium>> {
    let mut out = eq_all_full(params)?;
    if include_reduced {
        out.extend(eq_all_reduced(params)?);
    }
    Ok(out)
}

fn verify_residuals(equilibria: &[Equilibrium]) -> Result<()> {
    for eq in equilibria {
        if eq.exists != Existence::Exists {
            continue;
        }
        let (point, residual) = match (&eq.point, eq.residual) {
            (Some(p), Some(r)) => (p, r),
            _ => continue,
        };
        let bound = 1e-6 * (1.0 + point.max_component());
        if residual > bound {
            return Err(Error::ResidualCheckFailed {
                label: eq.label.to_string(),
                residual,
                bound,
            });
        }
    }
    Ok(())
}
