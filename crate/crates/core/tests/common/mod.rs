//! Shared fixtures for integration tests.

use sivp_core::ModelParams;

/// Base parameter set: equal predation coefficients, no migration.
pub fn eq31() -> ModelParams {
    ModelParams {
        r: 1.1,
        k: 2.9,
        beta: 1.2,
        sigma: 0.2,
        phi: 1.2,
        theta: 1.2,
        p1: 0.125,
        p2: 0.125,
        p3: 0.125,
        q1: 0.75,
        q2: 0.8,
        q3: 0.75,
        m1: 0.0,
        m2: 0.0,
        m3: 0.0,
        d1: 0.25,
        d2: 0.125,
        d3: 0.1,
        d4: 0.25,
        c: 0.35,
    }
}

/// Base set with `p1 = p3 = 0.1`, no migration.
pub fn case_i() -> ModelParams {
    ModelParams {
        p1: 0.1,
        p3: 0.1,
        ..eq31()
    }
}

/// Same as [`case_i`] with migration in all three prey classes.
#[allow(dead_code)]
pub fn case_ii() -> ModelParams {
    ModelParams {
        m1: 0.25,
        m2: 0.125,
        m3: 0.25,
        ..case_i()
    }
}
