//! Stability classification: characteristic polynomials from Jacobians,
//! Routh-Hurwitz condition ledgers, eigenvalue spectra, and the basic
//! reproduction number.
//!
//! Characteristic coefficients are always computed from principal-minor
//! sums of the numeric Jacobian. The long expanded coefficient formulas
//! that circulate for this model show notation drift and are never
//! transcribed; where a simple analytic factor exists (a row or column of
//! the Jacobian that is zero off the diagonal), the factor is extracted
//! from its closed form and the Routh-Hurwitz test runs on the remaining
//! block. Every classification cross-checks the Hurwitz verdict against
//! the eigenvalue signs of the full spectrum; a strict disagreement is an
//! internal error, not a model property.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::equilibria::{disease_free_coords, EqLabel, EqPoint, Equilibrium, Existence};
use crate::error::{Error, Result};
use crate::model::{jacobian_full, jacobian_reduced, FullState, ModelParams, ReducedState};
use crate::poly::Poly;

/// Half-width of the marginality band: inequality margins and eigenvalue
/// real parts within this distance of zero are classified marginal.
pub const MARGIN_BAND: f64 = 1e-9;

/// Stability verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Unstable,
    Marginal,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Unstable => "unstable",
            Verdict::Marginal => "marginal",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Direction of a ledger inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// Condition requires `value > threshold`.
    Greater,
    /// Condition requires `value < threshold`.
    Less,
}

/// Outcome of a single inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionStatus {
    Holds,
    Fails,
    Marginal,
}

/// One named inequality of a Routh-Hurwitz ledger, with the evaluated
/// left-hand value, the comparison threshold, and the signed margin.
#[derive(Debug, Clone)]
pub struct Condition {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub sense: Sense,
    pub margin: f64,
    pub status: ConditionStatus,
}

impl Condition {
    fn new(name: impl Into<String>, value: f64, threshold: f64, sense: Sense) -> Self {
        let margin = match sense {
            Sense::Greater => value - threshold,
            Sense::Less => threshold - value,
        };
        let status = if margin > MARGIN_BAND {
            ConditionStatus::Holds
        } else if margin < -MARGIN_BAND {
            ConditionStatus::Fails
        } else {
            ConditionStatus::Marginal
        };
        Condition {
            name: name.into(),
            value,
            threshold,
            sense,
            margin,
            status,
        }
    }

    fn greater(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, Sense::Greater)
    }

    fn less_than_zero(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, value, 0.0, Sense::Less)
    }
}

fn verdict_from_conditions(conditions: &[Condition]) -> Verdict {
    let mut verdict = Verdict::Stable;
    for c in conditions {
        match c.status {
            ConditionStatus::Fails => return Verdict::Unstable,
            ConditionStatus::Marginal => verdict = Verdict::Marginal,
            ConditionStatus::Holds => {}
        }
    }
    verdict
}

/// Ledger plus verdict for one Routh-Hurwitz test.
#[derive(Debug, Clone)]
pub struct HurwitzReport {
    pub conditions: Vec<Condition>,
    pub verdict: Verdict,
}

fn hurwitz_cubic_named(prefix: &str, b1: f64, b2: f64, b3: f64) -> HurwitzReport {
    let conditions = vec![
        Condition::greater(format!("{prefix}1 > 0"), b1, 0.0),
        Condition::greater(format!("{prefix}2 > 0"), b2, 0.0),
        Condition::greater(format!("{prefix}3 > 0"), b3, 0.0),
        Condition::greater(format!("{prefix}1*{prefix}2 > {prefix}3"), b1 * b2, b3),
    ];
    let verdict = verdict_from_conditions(&conditions);
    HurwitzReport {
        conditions,
        verdict,
    }
}

/// Routh-Hurwitz test for `x^3 + b1 x^2 + b2 x + b3`: stable iff all
/// coefficients are positive and `b1*b2 > b3`.
pub fn hurwitz_cubic(b1: f64, b2: f64, b3: f64) -> HurwitzReport {
    hurwitz_cubic_named("B", b1, b2, b3)
}

/// Routh-Hurwitz test for `x^4 + d1 x^3 + d2 x^2 + d3 x + d4`: stable iff
/// all coefficients are positive, `d1*d2 > d3`, and
/// `d1*(d2*d3 - d1*d4) - d3^2 > 0`.
pub fn hurwitz_quartic(d1: f64, d2: f64, d3: f64, d4: f64) -> HurwitzReport {
    let conditions = vec![
        Condition::greater("D1 > 0", d1, 0.0),
        Condition::greater("D2 > 0", d2, 0.0),
        Condition::greater("D3 > 0", d3, 0.0),
        Condition::greater("D4 > 0", d4, 0.0),
        Condition::greater("D1*D2 > D3", d1 * d2, d3),
        Condition::greater(
            "D1*(D2*D3 - D1*D4) - D3^2 > 0",
            d1 * (d2 * d3 - d1 * d4) - d3 * d3,
            0.0,
        ),
    ];
    let verdict = verdict_from_conditions(&conditions);
    HurwitzReport {
        conditions,
        verdict,
    }
}

/// Monic characteristic polynomial of a square matrix, ascending degree,
/// computed from principal-minor sums: the coefficient of `x^(n-k)` is
/// `(-1)^k` times the sum of all `k x k` principal minors.
pub fn char_poly(matrix: &DMatrix<f64>) -> Result<Poly> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(Error::NonSquareMatrix {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    if matrix.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    for mask in 1_u32..(1 << n) {
        let k = mask.count_ones() as usize;
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = matrix.select_rows(idx.iter()).select_columns(idx.iter());
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        coeffs[n - k] += sign * sub.determinant();
    }
    Poly::from_ascending_untrimmed(coeffs)
}

/// Basic reproduction number evaluated at the disease-free equilibrium:
/// `R0 = (beta*S1 + sigma*V1) / (c + m2 + d2)`. Disease is endemic when
/// `R0 > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R0Result {
    pub value: f64,
    pub s1: f64,
    pub v1: f64,
    pub endemic: bool,
}

pub fn r0(params: &ModelParams) -> Result<R0Result> {
    let (s1, v1, bracket) = disease_free_coords(params)?;
    if bracket <= 0.0 {
        return Err(Error::UndefinedR0(format!(
            "disease-free equilibrium does not exist (bracket = {bracket:.6})"
        )));
    }
    let denom = params.c + params.m2 + params.d2;
    if denom <= 0.0 {
        return Err(Error::UndefinedR0(format!(
            "c + m2 + d2 = {denom} must be positive"
        )));
    }
    let value = (params.beta * s1 + params.sigma * v1) / denom;
    Ok(R0Result {
        value,
        s1,
        v1,
        endemic: value > 1.0,
    })
}

/// An analytically split eigenvalue.
#[derive(Debug, Clone)]
pub struct Factor {
    pub name: &'static str,
    pub value: f64,
}

/// Full stability record for one equilibrium: characteristic coefficients,
/// analytic factors, the residual-block coefficients the Hurwitz test ran
/// on, the condition ledger, the eigenvalue spectrum and the verdict.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub label: EqLabel,
    /// Ascending monic characteristic polynomial of the Jacobian.
    pub char_coeffs: Vec<f64>,
    /// Eigenvalues split off analytically (empty where none applies).
    pub factors: Vec<Factor>,
    /// Ascending monic characteristic polynomial of the block remaining
    /// after the factors are removed; `None` when nothing was factored.
    pub block_coeffs: Option<Vec<f64>>,
    pub conditions: Vec<Condition>,
    /// Full spectrum, sorted by real part then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    pub verdict: Verdict,
}

fn spectrum(matrix: &DMatrix<f64>) -> Vec<Complex64> {
    let mut eigs: Vec<Complex64> = matrix
        .clone()
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect();
    eigs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    eigs
}

fn spectral_verdict(eigenvalues: &[Complex64]) -> Verdict {
    let max_re = eigenvalues
        .iter()
        .fold(f64::NEG_INFINITY, |m, z| m.max(z.re));
    if max_re > MARGIN_BAND {
        Verdict::Unstable
    } else if max_re < -MARGIN_BAND {
        Verdict::Stable
    } else {
        Verdict::Marginal
    }
}

fn submatrix(matrix: &DMatrix<f64>, keep: &[usize]) -> DMatrix<f64> {
    matrix.select_rows(keep.iter()).select_columns(keep.iter())
}

/// Classifies an existing equilibrium.
///
/// Extracts the analytic factor eigenvalues where the Jacobian decouples
/// (the trivial, disease-free, interior disease-free and predator-free
/// points), runs the matching Routh-Hurwitz test on the remaining block,
/// computes the full spectrum, and requires the two verdicts to agree.
pub fn classify(params: &ModelParams, eq: &Equilibrium) -> Result<StabilityReport> {
    if eq.exists != Existence::Exists {
        return Err(Error::NonexistentEquilibrium {
            label: eq.label.to_string(),
        });
    }
    let point = eq
        .point
        .as_ref()
        .ok_or_else(|| Error::NonexistentEquilibrium {
            label: eq.label.to_string(),
        })?;

    match (eq.label, point) {
        (EqLabel::ReducedE0 | EqLabel::ReducedE1 | EqLabel::ReducedE2, EqPoint::Reduced(x)) => {
            classify_reduced(params, eq.label, x)
        }
        (_, EqPoint::Full(x)) => classify_full(params, eq.label, x),
        (label, _) => Err(Error::Domain(format!(
            "equilibrium {label} carries a point of the wrong dimension"
        ))),
    }
}

fn classify_full(params: &ModelParams, label: EqLabel, x: &FullState) -> Result<StabilityReport> {
    let q = params;
    let jac = jacobian_full(q, x)?;
    let full = char_poly(&jac)?;
    let eigenvalues = spectrum(&jac);

    let mut factors = Vec::new();
    let mut conditions = Vec::new();
    let mut block_coeffs = None;

    match label {
        EqLabel::E0 => {
            factors.push(Factor {
                name: "-(c+d2+m2)",
                value: -(q.c + q.d2 + q.m2),
            });
            factors.push(Factor {
                name: "-d4",
                value: -q.d4,
            });
            let block = submatrix(&jac, &[0, 2]);
            let coeffs = char_poly(&block)?.coeffs().to_vec();
            let a1 = -q.r + q.theta + q.phi + q.d1 + q.d3 + q.m1 + q.m3;
            let a2 = (-q.r + q.phi + q.d1 + q.m1) * (q.theta + q.d3 + q.m3) - q.theta * q.phi;
            conditions.push(Condition::greater("A1 > 0", a1, 0.0));
            conditions.push(Condition::greater("A2 > 0", a2, 0.0));
            for f in &factors {
                conditions.push(Condition::less_than_zero(
                    format!("{} < 0", f.name),
                    f.value,
                ));
            }
            block_coeffs = Some(coeffs);
        }
        EqLabel::E1 => {
            let lambda1 = q.beta * x.s + q.sigma * x.v - (q.c + q.d2 + q.m2);
            let lambda2 = q.p1 * q.q1 * x.s + q.p3 * q.q3 * x.v - q.d4;
            factors.push(Factor {
                name: "lambda1",
                value: lambda1,
            });
            factors.push(Factor {
                name: "lambda2",
                value: lambda2,
            });
            let block = submatrix(&jac, &[0, 2]);
            block_coeffs = Some(char_poly(&block)?.coeffs().to_vec());
            let shifted = 2.0 * q.r * x.s / q.k - q.r + q.phi + q.d1 + q.m1;
            let a1 = shifted + q.theta + q.d3 + q.m3;
            let a2 = shifted * (q.theta + q.d3 + q.m3) - q.theta * q.phi;
            conditions.push(Condition::greater("A1 > 0", a1, 0.0));
            conditions.push(Condition::greater("A2 > 0", a2, 0.0));
            conditions.push(Condition::less_than_zero("lambda1 < 0", lambda1));
            conditions.push(Condition::less_than_zero("lambda2 < 0", lambda2));
        }
        EqLabel::E2 => {
            let a22 = q.beta * x.s + q.sigma * x.v - q.p2 * x.p - (q.c + q.d2 + q.m2);
            factors.push(Factor {
                name: "a22",
                value: a22,
            });
            let block = submatrix(&jac, &[0, 2, 3]);
            let coeffs = char_poly(&block)?.coeffs().to_vec();
            let hurwitz = hurwitz_cubic_named("B", coeffs[2], coeffs[1], coeffs[0]);
            conditions.extend(hurwitz.conditions);
            conditions.push(Condition::less_than_zero("a22 < 0", a22));
            block_coeffs = Some(coeffs);
        }
        EqLabel::E4 => {
            let b44 = q.q1 * q.p1 * x.s + q.q2 * q.p2 * x.i + q.q3 * q.p3 * x.v - q.d4;
            factors.push(Factor {
                name: "b44",
                value: b44,
            });
            let block = submatrix(&jac, &[0, 1, 2]);
            let coeffs = char_poly(&block)?.coeffs().to_vec();
            let hurwitz = hurwitz_cubic_named("C", coeffs[2], coeffs[1], coeffs[0]);
            conditions.extend(hurwitz.conditions);
            conditions.push(Condition::less_than_zero("b44 < 0", b44));
            block_coeffs = Some(coeffs);
        }
        // Interior point (and any exotic boundary case): full quartic.
        _ => {
            let c = full.coeffs();
            let hurwitz = hurwitz_quartic(c[3], c[2], c[1], c[0]);
            conditions.extend(hurwitz.conditions);
        }
    }

    finish_report(label, full, factors, block_coeffs, conditions, eigenvalues)
}

fn classify_reduced(
    params: &ModelParams,
    label: EqLabel,
    x: &ReducedState,
) -> Result<StabilityReport> {
    let q = params;
    let jac = jacobian_reduced(q, x)?;
    let full = char_poly(&jac)?;
    let eigenvalues = spectrum(&jac);

    let mut factors = Vec::new();
    let mut conditions = Vec::new();
    let mut block_coeffs = None;

    match label {
        EqLabel::ReducedE0 => {
            factors.push(Factor {
                name: "-d4",
                value: -q.d4,
            });
            block_coeffs = Some(char_poly(&submatrix(&jac, &[0, 1]))?.coeffs().to_vec());
            let a1 = -q.r + q.theta + q.phi + q.d1 + q.d3 + q.m1 + q.m3;
            let a2 = (-q.r + q.phi + q.d1 + q.m1) * (q.theta + q.d3 + q.m3) - q.theta * q.phi;
            conditions.push(Condition::greater("A1 > 0", a1, 0.0));
            conditions.push(Condition::greater("A2 > 0", a2, 0.0));
            conditions.push(Condition::less_than_zero("-d4 < 0", -q.d4));
        }
        EqLabel::ReducedE1 => {
            let lambda1 = q.p1 * q.q1 * x.s + q.p3 * q.q3 * x.v - q.d4;
            factors.push(Factor {
                name: "lambda1",
                value: lambda1,
            });
            block_coeffs = Some(char_poly(&submatrix(&jac, &[0, 1]))?.coeffs().to_vec());
            let shifted = 2.0 * q.r * x.s / q.k - q.r + q.phi + q.d1 + q.m1;
            let a1 = shifted + q.theta + q.d3 + q.m3;
            let a2 = shifted * (q.theta + q.d3 + q.m3) - q.theta * q.phi;
            conditions.push(Condition::greater("A1 > 0", a1, 0.0));
            conditions.push(Condition::greater("A2 > 0", a2, 0.0));
            conditions.push(Condition::less_than_zero("lambda1 < 0", lambda1));
        }
        _ => {
            let c = full.coeffs();
            let hurwitz = hurwitz_cubic_named("B", c[2], c[1], c[0]);
            conditions.extend(hurwitz.conditions);
        }
    }

    finish_report(label, full, factors, block_coeffs, conditions, eigenvalues)
}

fn finish_report(
    label: EqLabel,
    full: Poly,
    factors: Vec<Factor>,
    block_coeffs: Option<Vec<f64>>,
    conditions: Vec<Condition>,
    eigenvalues: Vec<Complex64>,
) -> Result<StabilityReport> {
    // Residual check: each eigenvalue must nearly annihilate the
    // characteristic polynomial computed through the independent
    // principal-minor path.
    let scale = full.coeffs().iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let degree = full.degree() as i32;
    for z in &eigenvalues {
        let bound = 1e-7 * scale * z.norm().powi(degree).max(1.0);
        let residual = full.eval_complex(*z).norm();
        if residual > bound {
            return Err(Error::RootResidual { residual, bound });
        }
    }

    let hurwitz = verdict_from_conditions(&conditions);
    let spectral = spectral_verdict(&eigenvalues);
    let verdict = match (hurwitz, spectral) {
        (Verdict::Marginal, _) | (_, Verdict::Marginal) => Verdict::Marginal,
        (h, s) if h == s => h,
        (h, s) => {
            return Err(Error::VerdictMismatch {
                label: label.to_string(),
                hurwitz: h.as_str(),
                spectral: s.as_str(),
            })
        }
    };

    Ok(StabilityReport {
        label,
        char_coeffs: full.coeffs().to_vec(),
        factors,
        block_coeffs,
        conditions,
        eigenvalues,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::{eq_all_reduced, eq_disease_free, eq_e2, eq_e4, eq_trivial};
    use crate::test_params::{case_i, case_ii, eq31};

    fn find_condition<'a>(report: &'a StabilityReport, name: &str) -> &'a Condition {
        report
            .conditions
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("missing condition {name}: {:?}", report.conditions))
    }

    #[test]
    fn char_poly_matches_quoted_cubic_at_reduced_interior_point() {
        let q = eq31();
        let interior = eq_all_reduced(&q)
            .unwrap()
            .into_iter()
            .find(|e| e.label == EqLabel::ReducedE2)
            .unwrap();
        let report = classify(&q, &interior).unwrap();
        let c = &report.char_coeffs;
        assert!((c[2] - 2.98129).abs() < 1e-4, "{c:?}");
        assert!((c[1] - 0.806172).abs() < 1e-4, "{c:?}");
        assert!((c[0] - 0.079073).abs() < 1e-4, "{c:?}");
        assert_eq!(report.verdict, Verdict::Stable);
        let product = find_condition(&report, "B1*B2 > B3");
        assert!((product.value - 2.40343).abs() < 1e-3);

        // The spectrum nearly annihilates the principal-minor polynomial.
        let poly = Poly::new(report.char_coeffs.clone()).unwrap();
        for z in &report.eigenvalues {
            assert!(poly.eval_complex(*z).norm() < 1e-8);
        }
    }

    #[test]
    fn char_poly_rejects_non_square() {
        let m = DMatrix::<f64>::zeros(2, 3);
        assert!(matches!(char_poly(&m), Err(Error::NonSquareMatrix { .. })));
    }

    #[test]
    fn hurwitz_cubic_examples() {
        let stable = hurwitz_cubic(2.98129, 0.806172, 0.079073);
        assert_eq!(stable.verdict, Verdict::Stable);
        let product = &stable.conditions[3];
        assert!((product.value - 2.40343).abs() < 1e-3);

        let stable = hurwitz_cubic(2.5526, 0.419829, 0.406969);
        assert_eq!(stable.verdict, Verdict::Stable);
        assert!((stable.conditions[3].value - 1.07166).abs() < 1e-3);

        let unstable = hurwitz_cubic(1.0, 1.0, 2.0);
        assert_eq!(unstable.verdict, Verdict::Unstable);
    }

    #[test]
    fn hurwitz_quartic_examples() {
        // (x+1)^4
        assert_eq!(hurwitz_quartic(4.0, 6.0, 4.0, 1.0).verdict, Verdict::Stable);
        // (x-1)(x+1)(x+2)(x+3) = x^4 + 5x^3 + 5x^2 - 5x - 6
        assert_eq!(
            hurwitz_quartic(5.0, 5.0, -5.0, -6.0).verdict,
            Verdict::Unstable
        );
    }

    #[test]
    fn classify_trivial_point_reports_failing_quadratic_constant() {
        let q = case_i();
        let report = classify(&q, &eq_trivial()).unwrap();
        assert_eq!(report.verdict, Verdict::Unstable);
        let a2 = find_condition(&report, "A2 > 0");
        assert!((a2.value - (-0.985)).abs() < 1e-9, "A2 = {}", a2.value);
        assert_eq!(a2.status, ConditionStatus::Fails);
        let a1 = find_condition(&report, "A1 > 0");
        assert!((a1.value - 1.65).abs() < 1e-9);
    }

    #[test]
    fn classify_disease_free_point_with_migration_is_unstable() {
        let q = case_ii();
        let e1 = eq_disease_free(&q).unwrap();
        let report = classify(&q, &e1).unwrap();
        assert_eq!(report.verdict, Verdict::Unstable);
        let lambda1 = report.factors.iter().find(|f| f.name == "lambda1").unwrap();
        assert!((lambda1.value - 0.575253).abs() < 1e-3, "{}", lambda1.value);
    }

    #[test]
    fn classify_predator_free_point_is_stable() {
        let q = case_i();
        let e4 = eq_e4(&q).unwrap().remove(0);
        let report = classify(&q, &e4).unwrap();
        assert_eq!(report.verdict, Verdict::Stable);
        let b44 = report.factors.iter().find(|f| f.name == "b44").unwrap();
        assert!((b44.value - (-0.165429)).abs() < 1e-3, "{}", b44.value);
        let block = report.block_coeffs.as_ref().unwrap();
        assert!((block[2] - 2.5526).abs() < 1e-3, "{block:?}");
        assert!((block[1] - 0.419829).abs() < 1e-3);
        assert!((block[0] - 0.406969).abs() < 1e-3);
    }

    #[test]
    fn classify_interior_disease_free_point_is_unstable_without_migration() {
        let q = case_i();
        let e2 = eq_e2(&q).unwrap().remove(0);
        let report = classify(&q, &e2).unwrap();
        assert_eq!(report.verdict, Verdict::Unstable);
        let a22 = report.factors.iter().find(|f| f.name == "a22").unwrap();
        assert!((a22.value - 1.89472).abs() < 1e-3, "{}", a22.value);
    }

    #[test]
    fn classify_rejects_nonexistent_equilibrium() {
        let q = case_i();
        let e3 = crate::equilibria::eq_e3(&q).unwrap();
        assert!(matches!(
            classify(&q, &e3),
            Err(Error::NonexistentEquilibrium { .. })
        ));
    }

    #[test]
    fn r0_matches_quoted_values() {
        let r = r0(&case_i()).unwrap();
        assert!((r.value - 5.822817).abs() < 1e-4, "{}", r.value);
        assert!(r.endemic);

        let r = r0(&case_ii()).unwrap();
        assert!((r.value - 1.95876).abs() < 1e-4, "{}", r.value);
        assert!(r.endemic);
    }

    #[test]
    fn r0_zero_without_transmission() {
        let mut q = case_i();
        q.beta = 0.0;
        q.sigma = 0.0;
        let r = r0(&q).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(!r.endemic);
    }

    #[test]
    fn r0_undefined_when_disease_free_point_missing() {
        let mut q = case_i();
        q.d1 = 5.0; // drives the existence bracket negative
        assert!(matches!(r0(&q), Err(Error::UndefinedR0(_))));
    }

    #[test]
    fn factor_identity_links_lambda1_to_r0() {
        let q = case_i();
        let e1 = eq_disease_free(&q).unwrap();
        let report = classify(&q, &e1).unwrap();
        let lambda1 = report.factors.iter().find(|f| f.name == "lambda1").unwrap();
        let r = r0(&q).unwrap();
        let reconstructed = (q.c + q.d2 + q.m2) * (r.value - 1.0);
        assert!((lambda1.value - reconstructed).abs() < 1e-10);
    }
}
