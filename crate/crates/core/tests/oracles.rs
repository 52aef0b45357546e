//! Randomized and cross-path oracle checks: finite-difference Jacobians,
//! Routh-Hurwitz verdicts against directly computed spectra, the identity
//! linking the disease-free factor eigenvalue to the reproduction number,
//! invariance of the positive octant, and dual-path root agreement.

mod common;

use common::{case_i, case_ii, eq31};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sivp_core::equilibria::{self, EqLabel, EqPoint, Equilibrium, Existence};
use sivp_core::integrate::{integrate, integrate_reduced, IntegratorConfig};
use sivp_core::model::{
    chi, dulac_expression, jacobian_full, jacobian_reduced, rhs_full, rhs_reduced, FullState,
    ReducedState,
};
use sivp_core::poly::{bracket_roots, Poly};
use sivp_core::stability::{classify, hurwitz_quartic, r0, Verdict};
use sivp_core::ModelParams;

const FD_STEP: f64 = 1e-6;

fn fd_column_full(q: &ModelParams, x: &FullState, j: usize) -> [f64; 4] {
    let mut plus = x.as_array();
    let mut minus = x.as_array();
    plus[j] += FD_STEP;
    minus[j] -= FD_STEP;
    let fp = rhs_full(q, &FullState::from_array(plus)).unwrap();
    let fm = rhs_full(q, &FullState::from_array(minus)).unwrap();
    let mut col = [0.0; 4];
    for i in 0..4 {
        col[i] = (fp[i] - fm[i]) / (2.0 * FD_STEP);
    }
    col
}

fn fd_column_reduced(q: &ModelParams, x: &ReducedState, j: usize) -> [f64; 3] {
    let mut plus = x.as_array();
    let mut minus = x.as_array();
    plus[j] += FD_STEP;
    minus[j] -= FD_STEP;
    let fp = rhs_reduced(q, &ReducedState::from_array(plus)).unwrap();
    let fm = rhs_reduced(q, &ReducedState::from_array(minus)).unwrap();
    let mut col = [0.0; 3];
    for i in 0..3 {
        col[i] = (fp[i] - fm[i]) / (2.0 * FD_STEP);
    }
    col
}

#[test]
fn jacobians_match_central_differences_at_100_random_states() {
    let mut rng = StdRng::seed_from_u64(0x5e_1f_00_01);
    let q = case_i();
    for _ in 0..100 {
        let x = FullState::new(
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
        );
        let jac = jacobian_full(&q, &x).unwrap();
        for j in 0..4 {
            let col = fd_column_full(&q, &x, j);
            for i in 0..4 {
                let diff = (jac[(i, j)] - col[i]).abs();
                assert!(
                    diff <= 1e-5 * (1.0 + jac[(i, j)].abs()),
                    "entry ({i},{j}) analytic {} vs fd {}",
                    jac[(i, j)],
                    col[i]
                );
            }
        }

        let xr = ReducedState::new(
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
        );
        let jac = jacobian_reduced(&q, &xr).unwrap();
        for j in 0..3 {
            let col = fd_column_reduced(&q, &xr, j);
            for i in 0..3 {
                let diff = (jac[(i, j)] - col[i]).abs();
                assert!(diff <= 1e-5 * (1.0 + jac[(i, j)].abs()));
            }
        }
    }
}

#[test]
fn hurwitz_quartic_agrees_with_spectrum_on_1000_random_polynomials() {
    let mut rng = StdRng::seed_from_u64(0x5e_1f_00_02);
    let mut checked = 0;
    while checked < 1000 {
        let coeffs = [
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ];
        // Ascending: x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
        let poly = Poly::new(vec![coeffs[0], coeffs[1], coeffs[2], coeffs[3], 1.0]).unwrap();
        let roots = poly.roots().unwrap();
        let max_re = roots
            .all()
            .iter()
            .fold(f64::NEG_INFINITY, |m, z| m.max(z.re));
        if max_re.abs() < 1e-6 {
            continue; // too close to the marginal band to adjudicate
        }
        let report = hurwitz_quartic(coeffs[3], coeffs[2], coeffs[1], coeffs[0]);
        if report.conditions.iter().any(|c| c.margin.abs() < 1e-9) {
            continue;
        }
        let expected = if max_re < 0.0 {
            Verdict::Stable
        } else {
            Verdict::Unstable
        };
        assert_eq!(
            report.verdict, expected,
            "coeffs {coeffs:?}, max_re {max_re}"
        );
        checked += 1;
    }
}

fn random_params(rng: &mut StdRng) -> ModelParams {
    ModelParams {
        r: rng.gen_range(0.5..2.0),
        k: rng.gen_range(1.0..5.0),
        beta: rng.gen_range(0.0..2.0),
        sigma: rng.gen_range(0.0..1.0),
        phi: rng.gen_range(0.0..2.0),
        theta: rng.gen_range(0.0..2.0),
        p1: rng.gen_range(0.01..0.5),
        p2: rng.gen_range(0.01..0.5),
        p3: rng.gen_range(0.01..0.5),
        q1: rng.gen_range(0.1..0.95),
        q2: rng.gen_range(0.1..0.95),
        q3: rng.gen_range(0.1..0.95),
        m1: rng.gen_range(0.0..0.5),
        m2: rng.gen_range(0.0..0.5),
        m3: rng.gen_range(0.0..0.5),
        d1: rng.gen_range(0.05..0.5),
        d2: rng.gen_range(0.05..0.5),
        d3: rng.gen_range(0.05..0.5),
        d4: rng.gen_range(0.05..0.5),
        c: rng.gen_range(0.0..0.5),
    }
}

#[test]
fn disease_free_factor_eigenvalue_equals_r0_identity_on_100_parameter_sets() {
    let mut rng = StdRng::seed_from_u64(0x5e_1f_00_03);
    let mut verified = 0;
    let mut attempts = 0;
    while verified < 100 {
        attempts += 1;
        assert!(attempts < 20_000, "could not find enough parameter sets");
        let q = random_params(&mut rng);
        let e1 = match equilibria::eq_disease_free(&q) {
            Ok(eq) if eq.exists == Existence::Exists => eq,
            _ => continue,
        };
        let report = match classify(&q, &e1) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let lambda1 = report
            .factors
            .iter()
            .find(|f| f.name == "lambda1")
            .unwrap()
            .value;
        let r = r0(&q).unwrap();
        let reconstructed = (q.c + q.d2 + q.m2) * (r.value - 1.0);
        assert!(
            (lambda1 - reconstructed).abs() < 1e-10,
            "lambda1 {lambda1} vs (c+d2+m2)(R0-1) {reconstructed}"
        );
        verified += 1;
    }
}

#[test]
fn disease_free_point_embeds_reduced_point_on_random_parameter_sets() {
    let mut rng = StdRng::seed_from_u64(0x5e_1f_00_04);
    for _ in 0..200 {
        let q = random_params(&mut rng);
        let (full, reduced) = match (
            equilibria::eq_disease_free(&q),
            equilibria::eq_disease_free_reduced(&q),
        ) {
            (Ok(f), Ok(r)) => (f, r),
            _ => continue,
        };
        let fp = match full.point {
            Some(EqPoint::Full(x)) => x,
            _ => unreachable!(),
        };
        let rp = match reduced.point {
            Some(EqPoint::Reduced(x)) => x,
            _ => unreachable!(),
        };
        assert_eq!(fp, rp.embed());
        assert_eq!(full.exists, reduced.exists);
    }
}

#[test]
fn dulac_expression_is_negative_on_a_dense_positive_grid() {
    let q = case_i();
    for a in 1..=100 {
        for b in 1..=100 {
            let s = 3.0 * a as f64 / 100.0;
            let v = 3.0 * b as f64 / 100.0;
            let value = dulac_expression(&q, s, v).unwrap();
            assert!(value < 0.0, "Dulac({s}, {v}) = {value}");
        }
    }
}

#[test]
fn octant_invariance_and_boundedness_over_100_random_trajectories() {
    let mut rng = StdRng::seed_from_u64(0x5e_1f_00_05);
    let q = case_i();
    let cfg = IntegratorConfig {
        output_stride: 5,
        ..IntegratorConfig::new(50.0)
    };
    for _ in 0..100 {
        let initial = FullState::new(
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..2.0),
        );
        let traj = integrate(&q, &initial, &cfg).unwrap();
        for state in &traj.states {
            for comp in state.as_array() {
                assert!(comp >= 0.0, "negative component from {initial:?}");
            }
        }
        let check = traj.boundedness.expect("applicable for these rates");
        assert!(
            check.satisfied,
            "chi tail {} exceeds bound {} from {initial:?}",
            check.max_chi_observed, check.bound
        );
        assert!(chi(traj.states.last().unwrap()) <= check.bound + 1e-6);
    }
}

fn perturbed_full(x: &FullState, rng: &mut StdRng, scale: f64) -> FullState {
    let amp = scale * (1.0 + x.max_norm());
    FullState::new(
        x.s + amp * rng.gen_range(0.0..1.0),
        x.i + amp * rng.gen_range(0.0..1.0),
        x.v + amp * rng.gen_range(0.0..1.0),
        x.p + amp * rng.gen_range(0.0..1.0),
    )
}

fn distance_full(a: &FullState, b: &FullState) -> f64 {
    a.as_array()
        .iter()
        .zip(b.as_array())
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn stable_equilibria_reattract_and_unstable_ones_repel() {
    let mut rng = StdRng::seed_from_u64(0x5e_1f_00_06);
    let q = case_i();
    let all = equilibria::eq_all_full(&q).unwrap();
    for eq in all.iter().filter(|e| e.exists == Existence::Exists) {
        let point = match eq.point {
            Some(EqPoint::Full(x)) => x,
            _ => continue,
        };
        let report = classify(&q, eq).unwrap();
        match report.verdict {
            Verdict::Stable => {
                let cfg = IntegratorConfig {
                    convergence_tol: 1e-12,
                    ..IntegratorConfig::new(1000.0)
                };
                for _ in 0..10 {
                    let start = perturbed_full(&point, &mut rng, 1e-2);
                    let traj = integrate(&q, &start, &cfg).unwrap();
                    let end = traj.states.last().unwrap();
                    assert!(
                        distance_full(end, &point) < 1e-4,
                        "{:?} did not return to {point:?} from {start:?}",
                        eq.label
                    );
                }
            }
            Verdict::Unstable => {
                let cfg = IntegratorConfig {
                    output_stride: 10,
                    ..IntegratorConfig::new(200.0)
                };
                let mut escaped = false;
                for _ in 0..10 {
                    let start = perturbed_full(&point, &mut rng, 1e-2);
                    let traj = integrate(&q, &start, &cfg).unwrap();
                    if traj.states.iter().any(|s| distance_full(s, &point) > 1e-2) {
                        escaped = true;
                        break;
                    }
                }
                assert!(escaped, "{:?} never repelled a perturbation", eq.label);
            }
            Verdict::Marginal => {}
        }
    }
}

#[test]
fn reduced_interior_point_reattracts_perturbations() {
    let mut rng = StdRng::seed_from_u64(0x5e_1f_00_07);
    let q = eq31();
    let interior = equilibria::eq_all_reduced(&q)
        .unwrap()
        .into_iter()
        .find(|e| e.label == EqLabel::ReducedE2)
        .unwrap();
    assert_eq!(classify(&q, &interior).unwrap().verdict, Verdict::Stable);
    let point = match interior.point {
        Some(EqPoint::Reduced(x)) => x,
        _ => unreachable!(),
    };
    let cfg = IntegratorConfig {
        convergence_tol: 1e-12,
        ..IntegratorConfig::new(1000.0)
    };
    for _ in 0..10 {
        let amp = 1e-2 * (1.0 + point.as_array().iter().fold(0.0_f64, |m, x| m.max(*x)));
        let start = ReducedState::new(
            point.s + amp * rng.gen_range(0.0..1.0),
            point.v + amp * rng.gen_range(0.0..1.0),
            point.p + amp * rng.gen_range(0.0..1.0),
        );
        let traj = integrate_reduced(&q, &start, &cfg).unwrap();
        let end = traj.states.last().unwrap();
        let dist = end
            .as_array()
            .iter()
            .zip(point.as_array())
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
        assert!(dist < 1e-4, "ended at {end:?}");
    }
}

/// The simple trace form of the predator-free block's leading coefficient,
/// written out independently, must agree with the principal-minor path.
#[test]
fn predator_free_block_trace_coefficient_cross_check() {
    for q in [case_i(), case_ii()] {
        let e4 = equilibria::eq_e4(&q).unwrap().remove(0);
        let x = match e4.point {
            Some(EqPoint::Full(x)) => x,
            _ => unreachable!(),
        };
        let report = classify(&q, &e4).unwrap();
        let block = report.block_coeffs.as_ref().unwrap();
        let k11 =
            q.r - 2.0 * q.r * x.s / q.k - q.r * x.i / q.k - q.beta * x.i - q.phi - q.m1 - q.d1;
        let k22 = q.beta * x.s + q.sigma * x.v - q.m2 - q.d2 - q.c;
        let k33 = -q.sigma * x.i - q.theta - q.m3 - q.d3;
        let c1 = -(k11 + k22 + k33);
        assert!((block[2] - c1).abs() < 1e-8, "{} vs {c1}", block[2]);
    }
}

/// The coexistence cubic found by interpolation and the bracketed scan of
/// the same scalar function must agree on every real root.
#[test]
fn coexistence_cubic_and_bracket_scan_agree() {
    for q in [case_i(), case_ii()] {
        let cubic = equilibria::e5_cubic(&q).unwrap();
        let mut from_cubic = cubic.roots().unwrap().real_roots();
        from_cubic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let from_scan =
            bracket_roots(|s| equilibria::e5_scalar_fn(&q, s), -17.0, -0.5, 512).unwrap();
        assert_eq!(from_cubic.len(), 3);
        assert_eq!(from_scan.len(), 3, "{from_scan:?}");
        for (a, b) in from_cubic.iter().zip(&from_scan) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }
}

/// Classification must never produce a Hurwitz/spectrum disagreement on
/// any equilibrium of the quoted systems, including a perturbed set where
/// the coexistence point exists and the quartic test is exercised.
#[test]
fn classification_is_internally_consistent_across_systems() {
    let mut coexistence_seen = false;
    let mut perturbed = case_i();
    perturbed.d4 = 0.15;
    perturbed.p2 = 0.5;
    for q in [case_i(), case_ii(), eq31(), perturbed] {
        for eq in equilibria::eq_all(&q, true).unwrap() {
            if eq.exists != Existence::Exists {
                continue;
            }
            let report = classify(&q, &eq).unwrap();
            if eq.label == EqLabel::E5 {
                coexistence_seen = true;
                assert!(!report.conditions.is_empty());
            }
        }
    }
    assert!(
        coexistence_seen,
        "perturbed set should exercise the quartic path"
    );
}

/// Re-verification at the report level: every equilibrium returned as
/// existing keeps its residual under the bound, for all three systems.
#[test]
fn existing_equilibria_have_small_residuals() {
    for q in [case_i(), case_ii(), eq31()] {
        for eq in equilibria::eq_all(&q, true).unwrap() {
            if eq.exists != Existence::Exists {
                continue;
            }
            let Equilibrium {
                residual, point, ..
            } = eq;
            let bound = 1e-6 * (1.0 + point.unwrap().max_component());
            assert!(residual.unwrap() < bound);
        }
    }
}
