//! Real-coefficient polynomial utilities: root extraction via the
//! companion matrix, cubic coefficient recovery by interpolation, and
//! bracketed scalar root scanning.
//!
//! Several equilibrium conditions of the model are cubics whose printed
//! expanded forms are long and error-prone to transcribe. Instead of
//! trusting any expansion, callers evaluate the defining expression as a
//! black-box function and use [`recover_cubic`] to obtain coefficients,
//! with a verification node guarding against degree mismatches.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for trimming trailing coefficients.
const TRIM_TOL: f64 = 1e-12;
/// `|imag| < IMAG_TOL * (1 + |real|)` classifies a root as real.
const IMAG_TOL: f64 = 1e-9;
/// Threshold above which a real root counts as positive; roots within
/// `[-EPSILON_POS, EPSILON_POS]` are degenerate.
pub const EPSILON_POS: f64 = 1e-9;
/// Residual acceptance factor for computed roots.
const ROOT_RESIDUAL_TOL: f64 = 1e-8;

/// Dense real polynomial, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// entries whose magnitude is below `1e-12` relative to the largest
    /// coefficient.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Result<Self> {
        let mut coeffs = coeffs.into();
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficients);
        }
        if coeffs.is_empty() {
            return Err(Error::Domain(
                "polynomial needs at least one coefficient".into(),
            ));
        }
        let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return Ok(Self { coeffs: vec![0.0] });
        }
        while coeffs.len() > 1 && coeffs.last().unwrap().abs() <= TRIM_TOL * scale {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// Builds a polynomial keeping the coefficients exactly as given.
    /// Characteristic polynomials are monic by construction, and trimming
    /// against a large lower-order coefficient could change their degree.
    pub(crate) fn from_ascending_untrimmed(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficients);
        }
        if coeffs.is_empty() {
            return Err(Error::Domain(
                "polynomial needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    fn derivative_at(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + Complex64::new(*c * k as f64, 0.0);
        }
        acc
    }

    /// Same roots, leading coefficient one.
    pub fn monic(&self) -> Poly {
        let lead = *self.coeffs.last().unwrap();
        Poly {
            coeffs: self.coeffs.iter().map(|c| c / lead).collect(),
        }
    }

    /// All complex roots with multiplicity.
    ///
    /// Degree 1 and 2 use closed forms; higher degrees use companion-matrix
    /// eigenvalues followed by a Newton polish. Every root is residual
    /// checked against `1e-8 * max|coeff| * max(1, |root|^degree)`.
    pub fn roots(&self) -> Result<RootSet> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::NoRoots);
        }
        let monic = self.monic();
        let a = &monic.coeffs;

        let mut roots: Vec<Complex64> = match n {
            1 => vec![Complex64::new(-a[0], 0.0)],
            2 => quadratic_roots(a[0], a[1]),
            _ => {
                let mut companion = DMatrix::<f64>::zeros(n, n);
                for row in 1..n {
                    companion[(row, row - 1)] = 1.0;
                }
                for row in 0..n {
                    companion[(row, n - 1)] = -a[row];
                }
                companion.complex_eigenvalues().iter().copied().collect()
            }
        };

        for root in &mut roots {
            *root = self.polish(*root);
        }
        roots.sort_by(|x, y| {
            x.re.partial_cmp(&y.re)
                .unwrap()
                .then(x.im.partial_cmp(&y.im).unwrap())
        });

        let scale = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        for root in &roots {
            let bound = ROOT_RESIDUAL_TOL * scale * root.norm().powi(n as i32).max(1.0);
            let residual = self.eval_complex(*root).norm();
            if residual > bound {
                return Err(Error::RootResidual { residual, bound });
            }
        }
        Ok(RootSet { roots })
    }

    /// A few Newton steps; keeps the iterate with the smallest residual.
    fn polish(&self, start: Complex64) -> Complex64 {
        let mut best = start;
        let mut best_res = self.eval_complex(best).norm();
        let mut z = start;
        for _ in 0..8 {
            let f = self.eval_complex(z);
            let df = self.derivative_at(z);
            if df.norm() == 0.0 {
                break;
            }
            z -= f / df;
            let res = self.eval_complex(z).norm();
            if res < best_res {
                best = z;
                best_res = res;
            } else {
                break;
            }
        }
        best
    }
}

fn quadratic_roots(c0: f64, c1: f64) -> Vec<Complex64> {
    // x^2 + c1 x + c0, stable form avoiding cancellation.
    let disc = c1 * c1 - 4.0 * c0;
    if disc >= 0.0 {
        let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
        let r1 = if q != 0.0 { c0 / q } else { 0.0 };
        let r2 = if c1 == 0.0 && c0 == 0.0 { 0.0 } else { q };
        vec![Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -0.5 * c1;
        let im = 0.5 * (-disc).sqrt();
        vec![Complex64::new(re, -im), Complex64::new(re, im)]
    }
}

/// Complex spectrum of a polynomial with classification helpers.
#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<Complex64>,
}

impl RootSet {
    pub fn all(&self) -> &[Complex64] {
        &self.roots
    }

    /// Roots with `|imag| < 1e-9 * (1 + |real|)`, as reals, ascending.
    pub fn real_roots(&self) -> Vec<f64> {
        self.roots
            .iter()
            .filter(|z| z.im.abs() < IMAG_TOL * (1.0 + z.re.abs()))
            .map(|z| z.re)
            .collect()
    }

    /// Real roots strictly above [`EPSILON_POS`].
    pub fn positive_real_roots(&self) -> Vec<f64> {
        self.real_roots()
            .into_iter()
            .filter(|r| *r > EPSILON_POS)
            .collect()
    }

    /// Real roots inside the degenerate band `[-EPSILON_POS, EPSILON_POS]`.
    pub fn degenerate_real_roots(&self) -> Vec<f64> {
        self.real_roots()
            .into_iter()
            .filter(|r| r.abs() <= EPSILON_POS)
            .collect()
    }
}

/// Recovers the coefficients of a polynomial of degree at most 3 from four
/// samples, then verifies the interpolant at a fifth node.
///
/// A verification residual above `1e-6 * scale` means the sampled function
/// is not a cubic — for this crate's callers that signals a
/// formula-transcription bug — and is reported as a degree mismatch.
pub fn recover_cubic<F: Fn(f64) -> f64>(f: F, nodes: [f64; 4]) -> Result<Poly> {
    let lo = nodes.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = nodes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spread = hi - lo;
    if !spread.is_finite() || spread <= 0.0 {
        return Err(Error::IllConditionedNodes);
    }
    for a in 0..4 {
        for b in (a + 1)..4 {
            if (nodes[a] - nodes[b]).abs() < 1e-9 * spread {
                return Err(Error::IllConditionedNodes);
            }
        }
    }

    let mut vander = DMatrix::<f64>::zeros(4, 4);
    let mut rhs = DMatrix::<f64>::zeros(4, 1);
    for (row, &x) in nodes.iter().enumerate() {
        let mut pw = 1.0;
        for col in 0..4 {
            vander[(row, col)] = pw;
            pw *= x;
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::Domain(format!(
                "function value at node {x} is not finite"
            )));
        }
        rhs[(row, 0)] = fx;
    }
    let lu = vander.lu();
    let solution = lu.solve(&rhs).ok_or(Error::IllConditionedNodes)?;
    let coeffs: Vec<f64> = (0..4).map(|k| solution[(k, 0)]).collect();
    let poly = Poly::new(coeffs)?;

    // Verification node away from the interpolation nodes.
    let mut check = lo + 0.618_033_988_749_895 * spread;
    if nodes.iter().any(|&x| (x - check).abs() < 1e-3 * spread) {
        check = lo + 0.381_966_011_250_105 * spread;
    }
    let observed = f(check);
    let predicted = poly.eval(check);
    let scale = nodes
        .iter()
        .map(|&x| f(x).abs())
        .chain([observed.abs(), 1.0])
        .fold(0.0_f64, f64::max);
    let residual = (observed - predicted).abs();
    let tolerance = 1e-6 * scale;
    if !residual.is_finite() || residual > tolerance {
        return Err(Error::DegreeMismatch {
            residual,
            tolerance,
        });
    }
    Ok(poly)
}

/// Scans `[lo, hi]` in `n_subdivisions` equal panels for sign changes of
/// `f` and refines each bracket by bisection until the interval is below
/// `1e-12 * (1 + |root|)`.
///
/// Panels with a non-finite endpoint are skipped (pole guard), and a
/// refined point is accepted only if `|f|` there does not exceed the
/// panel's endpoint magnitudes, which discards sign changes across poles.
/// Finding nothing is not an error: the result is simply empty.
pub fn bracket_roots<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n_subdivisions: usize,
) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let n = n_subdivisions.max(1);
    let width = (hi - lo) / n as f64;
    let mut roots: Vec<f64> = Vec::new();

    let push = |root: f64, roots: &mut Vec<f64>| {
        if !roots
            .iter()
            .any(|r| (r - root).abs() <= 1e-10 * (1.0 + root.abs()))
        {
            roots.push(root);
        }
    };

    let mut x_left = lo;
    let mut f_left = f(x_left);
    for panel in 0..n {
        let x_right = if panel + 1 == n {
            hi
        } else {
            lo + (panel + 1) as f64 * width
        };
        let f_right = f(x_right);
        if f_left.is_finite() && f_left == 0.0 {
            push(x_left, &mut roots);
        }
        if f_left.is_finite() && f_right.is_finite() && f_left * f_right < 0.0 {
            let guard = f_left.abs().max(f_right.abs());
            if let Some(root) = bisect(&f, x_left, x_right, f_left, guard) {
                push(root, &mut roots);
            }
        }
        x_left = x_right;
        f_left = f_right;
    }
    if f_left.is_finite() && f_left == 0.0 {
        push(hi, &mut roots);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

fn bisect<F: Fn(f64) -> f64>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    guard: f64,
) -> Option<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 * (1.0 + mid.abs()) {
            break;
        }
        let f_mid = f(mid);
        if !f_mid.is_finite() {
            return None;
        }
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let f_root = f(root);
    // A genuine zero shrinks |f|; a pole crossing blows it up.
    if f_root.is_finite() && f_root.abs() <= guard {
        Some(root)
    } else {
        None
    }
}
