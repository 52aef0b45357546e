//! Adaptive explicit Runge-Kutta integration of the full and reduced
//! systems: Dormand-Prince 5(4) embedded pair with PI step-size control,
//! nonnegativity handling at the invariant boundary, convergence-to-
//! equilibrium detection, and the boundedness check on `chi = S+I+V+P`.
//!
//! Proposed steps are rejected when the weighted error norm exceeds one or
//! when any component undershoots `-1e-10`; accepted states have remaining
//! round-off negatives clamped to zero so the stored trajectory never
//! leaves the invariant octant. Stage evaluations use the raw right-hand
//! side, since trial points may legitimately dip slightly negative while
//! the accepted state does not.

use crate::error::{Error, Result};
use crate::model::{self, BoundednessCheck, FullState, ModelParams, ReducedState, NEG_FLOOR};

/// Reject any proposed state with a component below this.
const NEG_REJECT: f64 = -1e-10;
/// Consecutive accepted steps with small right-hand side required to
/// declare convergence.
const CONVERGENCE_STREAK: usize = 3;
/// Hard cap on accepted plus rejected steps.
const MAX_STEPS: usize = 5_000_000;

/// Tolerances and limits for one integration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// Relative tolerance of the error controller.
    pub rtol: f64,
    /// Absolute tolerance of the error controller.
    pub atol: f64,
    /// Integration horizon; `t_end = 0` returns the initial state only.
    pub t_end: f64,
    /// Initial step size; estimated from the data when `None`.
    pub initial_step: Option<f64>,
    /// Upper bound on the step size; unbounded when `None`.
    pub max_step: Option<f64>,
    /// Store every `output_stride`-th accepted step (plus first and last).
    pub output_stride: usize,
    /// Right-hand-side max-norm below which the trajectory is declared
    /// converged to an equilibrium.
    pub convergence_tol: f64,
}

impl IntegratorConfig {
    pub fn new(t_end: f64) -> Self {
        IntegratorConfig {
            rtol: 1e-8,
            atol: 1e-10,
            t_end,
            initial_step: None,
            max_step: None,
            output_stride: 1,
            convergence_tol: 1e-8,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rtol > 0.0 && self.rtol.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "rtol = {} must be positive",
                self.rtol
            )));
        }
        if !(self.atol > 0.0 && self.atol.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "atol = {} must be positive",
                self.atol
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "t_end = {} must be nonnegative",
                self.t_end
            )));
        }
        if self.output_stride == 0 {
            return Err(Error::InvalidParams(
                "output_stride must be at least 1".into(),
            ));
        }
        if self.convergence_tol <= 0.0 || self.convergence_tol.is_nan() {
            return Err(Error::InvalidParams(
                "convergence_tol must be positive".into(),
            ));
        }
        for (name, value) in [
            ("initial_step", self.initial_step),
            ("max_step", self.max_step),
        ] {
            if let Some(v) = value {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::InvalidParams(format!(
                        "{name} = {v} must be positive"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Accepted and rejected step counts of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Time-stamped solution of the full system.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Strictly increasing sample times.
    pub times: Vec<f64>,
    /// Stored states; componentwise nonnegative.
    pub states: Vec<FullState>,
    /// Final state when convergence was detected before `t_end`.
    pub converged_to: Option<FullState>,
    /// Boundedness check over the trajectory tail; `None` when the check
    /// is inapplicable for these parameters.
    pub boundedness: Option<BoundednessCheck>,
    pub stats: StepStats,
}

/// Time-stamped solution of the disease-free system.
#[derive(Debug, Clone)]
pub struct ReducedTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<ReducedState>,
    pub converged_to: Option<ReducedState>,
    pub boundedness: Option<BoundednessCheck>,
    pub stats: StepStats,
}

// Dormand-Prince 5(4) tableau (autonomous form; the stage abscissae are
// not needed).
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Difference between the 5th-order propagation weights and the embedded
/// 4th-order weights; dotted with the stages it yields the error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One Dormand-Prince 5(4) step for an autonomous system: returns the
/// 5th-order solution at `t + h` and the componentwise error estimate.
pub fn dopri5_step<const N: usize, F>(f: F, y: &[f64; N], h: f64) -> ([f64; N], [f64; N])
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let k1 = f(y);
    let (y_new, err, _) = dopri5_stages(&f, y, &k1, h);
    (y_new, err)
}

/// Stage computation with a supplied first stage (enables FSAL reuse).
/// Returns `(y_new, error_estimate, last_stage)`.
fn dopri5_stages<const N: usize, F>(
    f: &F,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
) -> ([f64; N], [f64; N], [f64; N])
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let mut k = [[0.0; N]; 7];
    k[0] = *k1;
    for stage in 1..7 {
        let mut trial = *y;
        for (prev, k_prev) in k.iter().enumerate().take(stage) {
            let a = A[stage][prev];
            if a != 0.0 {
                for n in 0..N {
                    trial[n] += h * a * k_prev[n];
                }
            }
        }
        k[stage] = f(&trial);
    }
    // Stage 7 is evaluated at the 5th-order solution itself.
    let mut y_new = *y;
    for (stage, k_stage) in k.iter().enumerate().take(6) {
        let a = A[6][stage];
        if a != 0.0 {
            for n in 0..N {
                y_new[n] += h * a * k_stage[n];
            }
        }
    }
    let mut err = [0.0; N];
    for (stage, k_stage) in k.iter().enumerate() {
        if E[stage] != 0.0 {
            for n in 0..N {
                err[n] += h * E[stage] * k_stage[n];
            }
        }
    }
    (y_new, err, k[6])
}

fn weighted_error_norm<const N: usize>(
    err: &[f64; N],
    y: &[f64; N],
    y_new: &[f64; N],
    rtol: f64,
    atol: f64,
) -> f64 {
    let mut sum = 0.0;
    for n in 0..N {
        let sc = atol + rtol * y[n].abs().max(y_new[n].abs());
        let r = err[n] / sc;
        sum += r * r;
    }
    (sum / N as f64).sqrt()
}

fn max_norm<const N: usize>(x: &[f64; N]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Initial step heuristic based on the scaled state and derivative sizes.
fn initial_step_guess<const N: usize, F>(
    f: &F,
    y: &[f64; N],
    f0: &[f64; N],
    cfg: &IntegratorConfig,
) -> f64
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let rms = |x: &[f64; N]| -> f64 {
        let mut sum = 0.0;
        for n in 0..N {
            let sc = cfg.atol + cfg.rtol * y[n].abs();
            sum += (x[n] / sc) * (x[n] / sc);
        }
        (sum / N as f64).sqrt()
    };
    let d0 = rms(y);
    let d1 = rms(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let mut trial = *y;
    for n in 0..N {
        trial[n] += h0 * f0[n];
    }
    let f1 = f(&trial);
    let mut diff = [0.0; N];
    for n in 0..N {
        diff[n] = f1[n] - f0[n];
    }
    let d2 = rms(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

struct RawTrajectory<const N: usize> {
    times: Vec<f64>,
    states: Vec<[f64; N]>,
    converged_to: Option<[f64; N]>,
    stats: StepStats,
}

fn partial_failure<const N: usize>(
    t: f64,
    reason: String,
    times: Vec<f64>,
    states: Vec<[f64; N]>,
) -> Error {
    Error::IntegrationFailure {
        t,
        reason,
        times,
        states: states.iter().map(|s| s.to_vec()).collect(),
    }
}

fn check_initial<const N: usize>(y0: &mut [f64; N]) -> Result<()> {
    const NAMES: [&str; 4] = ["S", "I", "V", "P"];
    for (n, y) in y0.iter_mut().enumerate() {
        let component = NAMES.get(n).copied().unwrap_or("component");
        if !y.is_finite() {
            return Err(Error::NonFiniteState {
                component,
                value: *y,
            });
        }
        if *y < NEG_FLOOR {
            return Err(Error::NegativeState {
                component,
                value: *y,
            });
        }
        if *y < 0.0 {
            *y = 0.0;
        }
    }
    Ok(())
}

fn integrate_core<const N: usize, F>(
    f: F,
    mut y: [f64; N],
    cfg: &IntegratorConfig,
) -> Result<RawTrajectory<N>>
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    cfg.validate()?;
    check_initial(&mut y)?;

    let mut times = vec![0.0];
    let mut states = vec![y];
    let mut stats = StepStats::default();

    if cfg.t_end == 0.0 {
        return Ok(RawTrajectory {
            times,
            states,
            converged_to: None,
            stats,
        });
    }

    let mut k1 = f(&y);
    if !k1.iter().all(|v| v.is_finite()) {
        return Err(partial_failure(
            0.0,
            "right-hand side not finite at t = 0".into(),
            times,
            states,
        ));
    }

    let max_step = cfg.max_step.unwrap_or(f64::INFINITY).min(cfg.t_end);
    let mut h = cfg
        .initial_step
        .unwrap_or_else(|| initial_step_guess(&f, &y, &k1, cfg))
        .min(max_step);

    // PI controller constants (order-4 error estimate).
    const SAFE: f64 = 0.9;
    const BETA: f64 = 0.04;
    const EXPO: f64 = 0.2 - BETA * 0.75;
    let mut facold: f64 = 1e-4;

    let mut t = 0.0;
    let mut streak = 0usize;
    let mut converged_to = None;

    while t < cfg.t_end {
        if stats.accepted + stats.rejected >= MAX_STEPS {
            return Err(partial_failure(
                t,
                format!("exceeded {MAX_STEPS} steps"),
                times,
                states,
            ));
        }
        if h < 1e-14 * (1.0 + t.abs()) {
            return Err(partial_failure(
                t,
                format!("step size underflow (h = {h:.3e}); the problem may be stiff here"),
                times,
                states,
            ));
        }
        let last = h >= cfg.t_end - t;
        if last {
            h = cfg.t_end - t;
        }

        let (y_new, err_vec, k_last) = dopri5_stages(&f, &y, &k1, h);
        if !y_new.iter().all(|v| v.is_finite()) {
            h *= 0.5;
            stats.rejected += 1;
            continue;
        }
        let err = weighted_error_norm(&err_vec, &y, &y_new, cfg.rtol, cfg.atol);

        if err > 1.0 || err.is_nan() {
            // Error too large (or NaN): shrink with the deadbeat part of
            // the controller.
            let fac11 = err.powf(EXPO);
            let shrink = if fac11.is_finite() {
                (fac11 / SAFE).min(5.0)
            } else {
                5.0
            };
            h /= shrink.max(1.0 + 1e-12);
            stats.rejected += 1;
            continue;
        }
        if y_new.iter().any(|v| *v < NEG_REJECT) {
            h *= 0.5;
            stats.rejected += 1;
            continue;
        }

        let mut accepted = y_new;
        let mut clamped = false;
        for v in accepted.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
                clamped = true;
            }
        }
        t += h;
        y = accepted;
        k1 = if clamped { f(&y) } else { k_last };
        stats.accepted += 1;

        if stats.accepted % cfg.output_stride == 0 {
            times.push(t);
            states.push(y);
        }

        if max_norm(&k1) < cfg.convergence_tol {
            streak += 1;
        } else {
            streak = 0;
        }
        let done = t >= cfg.t_end;
        if streak >= CONVERGENCE_STREAK || done {
            if *times.last().unwrap() < t {
                times.push(t);
                states.push(y);
            }
            // Near an attractor the controller can leap to the horizon in
            // fewer accepted steps than the streak rule needs; a small
            // right-hand side at the endpoint still counts as converged.
            if streak >= CONVERGENCE_STREAK || max_norm(&k1) < cfg.convergence_tol {
                converged_to = Some(y);
            }
            break;
        }

        // PI step-size update.
        let fac11 = err.powf(EXPO);
        let fac = (fac11 / facold.powf(BETA) / SAFE).clamp(0.1, 5.0);
        h = (h / fac).min(max_step);
        facold = err.max(1e-4);
    }

    Ok(RawTrajectory {
        times,
        states,
        converged_to,
        stats,
    })
}

/// Integrates the full system from `initial` to `cfg.t_end` (or until the
/// right-hand side stays below `cfg.convergence_tol` for three accepted
/// steps). The returned trajectory carries the boundedness check when it
/// applies to these parameters.
pub fn integrate(
    params: &ModelParams,
    initial: &FullState,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    let q = *params;
    let raw = integrate_core(
        move |y: &[f64; 4]| model::rhs_full_raw(&q, y[0], y[1], y[2], y[3]),
        initial.as_array(),
        cfg,
    )?;
    let mut traj = Trajectory {
        times: raw.times,
        states: raw.states.into_iter().map(FullState::from_array).collect(),
        converged_to: raw.converged_to.map(FullState::from_array),
        boundedness: None,
        stats: raw.stats,
    };
    traj.boundedness = check_boundedness(&traj, params).ok();
    Ok(traj)
}

/// Integrates the disease-free system.
pub fn integrate_reduced(
    params: &ModelParams,
    initial: &ReducedState,
    cfg: &IntegratorConfig,
) -> Result<ReducedTrajectory> {
    let q = *params;
    let raw = integrate_core(
        move |y: &[f64; 3]| model::rhs_reduced_raw(&q, y[0], y[1], y[2]),
        initial.as_array(),
        cfg,
    )?;
    let mut traj = ReducedTrajectory {
        times: raw.times,
        states: raw
            .states
            .into_iter()
            .map(ReducedState::from_array)
            .collect(),
        converged_to: raw.converged_to.map(ReducedState::from_array),
        boundedness: None,
        stats: raw.stats,
    };
    traj.boundedness = check_boundedness_tail(
        &traj
            .states
            .iter()
            .map(|x| x.s + x.v + x.p)
            .collect::<Vec<_>>(),
        params,
    )
    .ok();
    Ok(traj)
}

/// Boundedness check over the final half of a trajectory: with
/// `mu = 0.5 * min(m2+d2+c, m3+d3, d4)` and `eta = k (r+mu)^2 / (4 r)`,
/// every solution eventually satisfies `chi <= eta/mu`.
pub fn check_boundedness(traj: &Trajectory, params: &ModelParams) -> Result<BoundednessCheck> {
    let chis: Vec<f64> = traj.states.iter().map(model::chi).collect();
    check_boundedness_tail(&chis, params)
}

fn check_boundedness_tail(chis: &[f64], params: &ModelParams) -> Result<BoundednessCheck> {
    if chis.is_empty() {
        return Err(Error::BoundednessInapplicable("empty trajectory".into()));
    }
    let (mu, eta, bound) = model::boundedness_constants(params)?;
    let tail = &chis[chis.len() / 2..];
    let max_chi_observed = tail.iter().fold(f64::NEG_INFINITY, |m, c| m.max(*c));
    Ok(BoundednessCheck {
        mu,
        eta,
        bound,
        max_chi_observed,
        satisfied: max_chi_observed <= bound + 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_params::{case_i, case_ii, eq31};

    #[test]
    fn converges_to_predator_free_endemic_point() {
        let cfg = IntegratorConfig::new(500.0);
        let traj = integrate(&case_i(), &FullState::new(0.5, 0.5, 0.5, 0.5), &cfg).unwrap();
        let target = [0.345473, 0.359982, 0.302164, 0.0];
        let end = traj.converged_to.expect("should converge").as_array();
        for (g, w) in end.iter().zip(target) {
            assert!((g - w).abs() < 1e-3, "{end:?}");
        }
    }

    #[test]
    fn converges_with_migration() {
        let cfg = IntegratorConfig::new(500.0);
        let traj = integrate(&case_ii(), &FullState::new(0.5, 0.5, 0.5, 0.5), &cfg).unwrap();
        let target = [0.443469, 0.0947259, 0.339185, 0.0];
        let end = traj.converged_to.expect("should converge").as_array();
        for (g, w) in end.iter().zip(target) {
            assert!((g - w).abs() < 1e-3, "{end:?}");
        }
    }

    #[test]
    fn reduced_system_converges_to_interior_point() {
        let cfg = IntegratorConfig::new(500.0);
        let traj = integrate_reduced(&eq31(), &ReducedState::new(1.0, 1.0, 1.0), &cfg).unwrap();
        let target = [1.44427, 1.22239, 0.942539];
        let end = traj.converged_to.expect("should converge").as_array();
        for (g, w) in end.iter().zip(target) {
            assert!((g - w).abs() < 1e-3, "{end:?}");
        }
    }

    #[test]
    fn origin_stays_fixed() {
        let cfg = IntegratorConfig::new(100.0);
        let traj = integrate(&case_i(), &FullState::new(0.0, 0.0, 0.0, 0.0), &cfg).unwrap();
        for state in &traj.states {
            assert_eq!(state.as_array(), [0.0; 4]);
        }
        assert_eq!(traj.converged_to.unwrap().as_array(), [0.0; 4]);
    }

    #[test]
    fn predator_free_face_is_invariant() {
        let cfg = IntegratorConfig::new(50.0);
        let traj = integrate_reduced(&eq31(), &ReducedState::new(1.0, 0.5, 0.0), &cfg).unwrap();
        for state in &traj.states {
            assert_eq!(state.p, 0.0);
        }
    }

    #[test]
    fn zero_horizon_returns_initial_row_only() {
        let cfg = IntegratorConfig::new(0.0);
        let traj = integrate(&case_i(), &FullState::new(0.5, 0.5, 0.5, 0.5), &cfg).unwrap();
        assert_eq!(traj.times, vec![0.0]);
        assert_eq!(traj.states.len(), 1);
        assert!(traj.converged_to.is_none());
    }

    #[test]
    fn times_strictly_increase_and_states_stay_nonnegative() {
        let cfg = IntegratorConfig {
            output_stride: 5,
            ..IntegratorConfig::new(200.0)
        };
        let traj = integrate(&case_i(), &FullState::new(2.0, 0.1, 0.3, 1.5), &cfg).unwrap();
        for pair in traj.times.windows(2) {
            assert!(pair[1] > pair[0]);
        }
        for state in &traj.states {
            for c in state.as_array() {
                assert!(c >= 0.0);
            }
        }
        assert!(traj.stats.accepted > 0);
    }

    #[test]
    fn tolerance_refinement_changes_endpoint_little() {
        let coarse = IntegratorConfig {
            convergence_tol: 1e-13,
            ..IntegratorConfig::new(40.0)
        };
        let fine = IntegratorConfig {
            rtol: 0.5e-8,
            atol: 0.5e-10,
            convergence_tol: 1e-13,
            ..IntegratorConfig::new(40.0)
        };
        let q = eq31();
        let start = ReducedState::new(1.0, 1.0, 1.0);
        let a = integrate_reduced(&q, &start, &coarse).unwrap();
        let b = integrate_reduced(&q, &start, &fine).unwrap();
        let ea = a.states.last().unwrap().as_array();
        let eb = b.states.last().unwrap().as_array();
        for (x, y) in ea.iter().zip(eb) {
            assert!((x - y).abs() < 1e-6, "{ea:?} vs {eb:?}");
        }
    }

    #[test]
    fn boundedness_check_formula_and_verdict() {
        let q = case_i();
        let cfg = IntegratorConfig::new(500.0);
        let traj = integrate(&q, &FullState::new(0.5, 0.5, 0.5, 0.5), &cfg).unwrap();
        let check = traj.boundedness.expect("applicable for these rates");
        // Independent evaluation of the proof expressions.
        let min_rate = (q.m2 + q.d2 + q.c).min(q.m3 + q.d3).min(q.d4);
        let mu = 0.5 * min_rate;
        let eta = q.k * (q.r + mu) * (q.r + mu) / (4.0 * q.r);
        assert!((check.mu - mu).abs() < 1e-15);
        assert!((check.eta - eta).abs() < 1e-12);
        assert!((check.bound - eta / mu).abs() < 1e-12);
        assert!(check.satisfied);
        // chi at the attractor is around 1.008, far below the bound.
        assert!(check.max_chi_observed < check.bound);
    }

    #[test]
    fn boundedness_inapplicable_for_empty_trajectory() {
        let traj = Trajectory {
            times: vec![],
            states: vec![],
            converged_to: None,
            boundedness: None,
            stats: StepStats::default(),
        };
        assert!(matches!(
            check_boundedness(&traj, &case_i()),
            Err(Error::BoundednessInapplicable(_))
        ));
    }

    #[test]
    fn boundedness_inapplicable_with_zero_rates() {
        let mut q = case_i();
        q.m3 = 0.0;
        q.d3 = 0.0;
        let cfg = IntegratorConfig::new(1.0);
        let traj = integrate(&q, &FullState::new(0.5, 0.5, 0.5, 0.5), &cfg).unwrap();
        assert!(traj.boundedness.is_none());
    }

    #[test]
    fn rejects_bad_config_and_bad_initial_state() {
        let q = case_i();
        let state = FullState::new(0.5, 0.5, 0.5, 0.5);
        let mut cfg = IntegratorConfig::new(10.0);
        cfg.rtol = 0.0;
        assert!(integrate(&q, &state, &cfg).is_err());
        let mut cfg = IntegratorConfig::new(10.0);
        cfg.output_stride = 0;
        assert!(integrate(&q, &state, &cfg).is_err());
        let cfg = IntegratorConfig::new(10.0);
        assert!(integrate(&q, &FullState::new(-1.0, 0.0, 0.0, 0.0), &cfg).is_err());
        assert!(integrate(&q, &FullState::new(f64::NAN, 0.0, 0.0, 0.0), &cfg).is_err());
    }

    #[test]
    fn fixed_step_driver_converges_at_fifth_order() {
        // x' = -x over [0, 1]; global error should scale like h^5.
        let f = |y: &[f64; 1]| [-y[0]];
        let solve = |h: f64| -> f64 {
            let steps = (1.0 / h).round() as usize;
            let mut y = [1.0];
            for _ in 0..steps {
                y = dopri5_step(f, &y, h).0;
            }
            (y[0] - (-1.0_f64).exp()).abs()
        };
        let e1 = solve(0.1);
        let e2 = solve(0.05);
        let order = (e1 / e2).log2();
        assert!(
            order >= 4.5,
            "observed order {order} (errors {e1:.3e}, {e2:.3e})"
        );
    }
}
