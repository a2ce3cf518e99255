//! Generalized Laguerre polynomials and the Kummer series ₁F₁.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest |z| accepted by [`kummer_series`].
pub const KUMMER_MAX_ABS_Z: f64 = 50.0;

const KUMMER_MAX_TERMS: usize = 100_000;

/// Degree and (possibly non-integer) upper index of L_n^{(α)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreParams {
    degree: u32,
    alpha: f64,
}

impl LaguerreParams {
    pub fn new(degree: u32, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::Domain(format!("Laguerre alpha must be > -1 (got {alpha})")));
        }
        Ok(LaguerreParams { degree, alpha })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eval(&self, z: f64) -> f64 {
        laguerre_unchecked(self.degree, self.alpha, z)
    }

    /// Coefficient of z^n, (−1)^n/n!.
    pub fn leading_coefficient(&self) -> f64 {
        let mut c = 1.0;
        for k in 1..=self.degree {
            c /= -f64::from(k);
        }
        c
    }
}

/// L_n^{(α)}(z) by the upward degree recurrence
/// (k+1) L_{k+1} = (2k+1+α−z) L_k − (k+α) L_{k−1}.
pub fn laguerre(params: LaguerreParams, z: f64) -> f64 {
    params.eval(z)
}

fn laguerre_unchecked(n: u32, alpha: f64, z: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - z;
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 + alpha - z) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Generalized binomial coefficient C(n+α, n) = Γ(n+α+1)/(Γ(n+1)Γ(α+1)).
pub fn binomial_shifted(n: u32, alpha: f64) -> f64 {
    let nf = f64::from(n);
    (ln_gamma(nf + alpha + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(alpha + 1.0)).exp()
}

fn is_non_positive_integer(c: Complex64) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0
}

/// Plain power series ₁F₁(a; c; z) = Σ (a)_k/(c)_k z^k/k!.
///
/// Summation stops once three consecutive terms are below `tol·|partial sum|`.
/// The series is only accepted for |z| ≤ 50; beyond that the caller gets a
/// range error. Cancellation limits the relative accuracy to roughly
/// `ε·e^{|z|}/|result|` when the terms oscillate.
pub fn kummer_series(a: Complex64, c: Complex64, z: Complex64, tol: f64) -> Result<Complex64> {
    if is_non_positive_integer(c) {
        return Err(Error::Pole(c.re));
    }
    if !(z.norm() <= KUMMER_MAX_ABS_Z) {
        return Err(Error::Range(z.norm()));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_run = 0;
    for k in 0..KUMMER_MAX_TERMS {
        let kf = k as f64;
        term = term * (a + kf) / (c + kf) * z / (kf + 1.0);
        sum += term;
        if term.norm() <= tol * sum.norm() {
            small_run += 1;
            if small_run == 3 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Numerical(format!("Kummer series did not converge in {KUMMER_MAX_TERMS} terms (z = {z})")))
}

/// Real-argument convenience wrapper around [`kummer_series`].
pub fn kummer_real(a: f64, c: f64, z: f64, tol: f64) -> Result<f64> {
    Ok(kummer_series(Complex64::new(a, 0.0), Complex64::new(c, 0.0), Complex64::new(z, 0.0), tol)?.re)
}
