//! Normalized radial eigenfunctions and the positive-energy radial solution.
//!
//! Bound states have the closed form
//!
//! ```text
//! R_nl(x) = N_nl · x^q · e^{−βx} · L_n^{(2q+N−2)}(2βx)
//! ```
//!
//! normalized so that ∫₀^∞ R² x^{N−1} dx = 1 (r₀ = 1). Evaluation runs in log
//! space so that large γ² (wide Laguerre index, huge N_nl) stays finite.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DimensionlessModel, QuantumState};
use crate::quadrature;
use crate::special::{kummer_series, ln_gamma, LaguerreParams};
use crate::spectrum::{bound_energy, exponent_q, BoundLevel};

/// Power-series coefficients of the polynomial factor h.
///
/// The coefficients follow C_{i+1} = Γ_i C_i with
/// Γ_i = (i + q + (N−1)/2 − γ²/β) / ((i+1)(i+2q+N−1)). They multiply powers of
/// `z = 2βx` (not of x), so `Σ C_i z^i` is L_n^{(2q+N−2)}(z) up to one scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficients {
    /// C₀ = 1, …, C_n.
    pub coefficients: Vec<f64>,
    /// C_{n+1}; zero at the quantized β.
    pub terminal: f64,
    /// n + q + (N−1)/2 − γ²/β, the factor that vanishes at the quantized β.
    pub termination_numerator: f64,
}

impl SeriesCoefficients {
    /// Σ C_i z^i
    pub fn eval(&self, z: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * z + c)
    }
}

pub fn series_coefficients(model: &DimensionlessModel, state: &QuantumState, beta: f64) -> Result<SeriesCoefficients> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("beta must be > 0 (got {beta})")));
    }
    let q = exponent_q(model, state);
    let shift = q + state.half_dim_shift() - model.coulomb_half() / beta;
    let c = 2.0 * q + f64::from(state.dim) - 1.0;
    let mut coefficients = Vec::with_capacity(state.n as usize + 1);
    let mut current = 1.0;
    coefficients.push(current);
    for i in 0..=state.n {
        let fi = f64::from(i);
        current *= (fi + shift) / ((fi + 1.0) * (fi + c));
        if i < state.n {
            coefficients.push(current);
        }
    }
    Ok(SeriesCoefficients { coefficients, terminal: current, termination_numerator: f64::from(state.n) + shift })
}

/// ln N_nl from the Laguerre norm:
/// N = (2β)^{q+N/2} [Γ(m+n+1)/Γ(n+1) · (2n+m+1)]^{−1/2}, m = 2q+N−2.
pub fn ln_normalization(model: &DimensionlessModel, state: &QuantumState) -> Result<f64> {
    let level = bound_energy(model, state)?;
    Ok(ln_norm_from_level(&level))
}

fn ln_norm_from_level(level: &BoundLevel) -> f64 {
    let s = level.state;
    let n = f64::from(s.n);
    let dim = f64::from(s.dim);
    let m = 2.0 * level.q_exponent + dim - 2.0;
    let ln_j = ln_gamma(m + n + 1.0) - ln_gamma(n + 1.0) + (2.0 * n + m + 1.0).ln();
    (level.q_exponent + dim / 2.0) * (2.0 * level.beta).ln() - 0.5 * ln_j
}

/// N_nl for r₀ = 1.
pub fn normalization(model: &DimensionlessModel, state: &QuantumState) -> Result<f64> {
    Ok(ln_normalization(model, state)?.exp())
}

/// N_nl for a physical r₀, in length^{−N/2}.
pub fn normalization_physical(model: &DimensionlessModel, state: &QuantumState, r0: f64) -> Result<f64> {
    Ok((ln_normalization(model, state)? - f64::from(state.dim) / 2.0 * r0.ln()).exp())
}

/// ln N_nl written through γ²/β instead of q:
/// N = (2β)^{N/2} (2β)^{γ²/β − n − (N−1)/2} [n! / ((2γ²/β) Γ(2γ²/β − n))]^{1/2}.
pub fn ln_normalization_alt(model: &DimensionlessModel, state: &QuantumState) -> Result<f64> {
    let level = bound_energy(model, state)?;
    let n = f64::from(state.n);
    let dim = f64::from(state.dim);
    let ratio = model.coulomb_half() / level.beta;
    let ln_2b = (2.0 * level.beta).ln();
    Ok(dim / 2.0 * ln_2b
        + (ratio - n - (dim - 1.0) / 2.0) * ln_2b
        + 0.5 * (ln_gamma(n + 1.0) - (2.0 * ratio).ln() - ln_gamma(2.0 * ratio - n)))
}

/// A normalized bound-state radial function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialFunction {
    pub level: BoundLevel,
    pub norm_constant: f64,
    ln_norm: f64,
    pub laguerre: LaguerreParams,
    pub samples: Option<Vec<(f64, f64)>>,
}

impl RadialFunction {
    pub fn new(model: &DimensionlessModel, state: &QuantumState) -> Result<Self> {
        let level = bound_energy(model, state)?;
        let alpha = 2.0 * level.q_exponent + f64::from(state.dim) - 2.0;
        let laguerre = LaguerreParams::new(state.n, alpha)?;
        let ln_norm = ln_norm_from_level(&level);
        Ok(RadialFunction { level, norm_constant: ln_norm.exp(), ln_norm, laguerre, samples: None })
    }

    pub fn ln_norm(&self) -> f64 {
        self.ln_norm
    }

    pub fn q(&self) -> f64 {
        self.level.q_exponent
    }

    pub fn beta(&self) -> f64 {
        self.level.beta
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("x must be > 0 (got {x})")));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        let poly = self.laguerre.eval(2.0 * self.level.beta * x);
        if poly == 0.0 {
            return 0.0;
        }
        let ln_abs = self.ln_norm + self.level.q_exponent * x.ln() - self.level.beta * x + poly.abs().ln();
        poly.signum() * ln_abs.exp()
    }

    /// Samples on `points` uniformly spaced radii in `[x_min, x_max]`.
    pub fn sample(&self, x_min: f64, x_max: f64, points: usize) -> Result<Vec<(f64, f64)>> {
        if !(x_min > 0.0 && x_max > x_min) || points < 2 {
            return Err(Error::Domain(format!(
                "need 0 < x_min < x_max and points >= 2 (got {x_min}, {x_max}, {points})"
            )));
        }
        let step = (x_max - x_min) / (points - 1) as f64;
        Ok((0..points)
            .map(|i| {
                let x = if i + 1 == points { x_max } else { x_min + step * i as f64 };
                (x, self.eval_unchecked(x))
            })
            .collect())
    }

    pub fn with_samples(mut self, x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        self.samples = Some(self.sample(x_min, x_max, points)?);
        Ok(self)
    }

    /// Radius beyond which R² x^{N−1} has dropped e^{−45} below its envelope peak.
    pub fn cutoff(&self) -> f64 {
        let beta = self.level.beta;
        let power =
            2.0 * self.level.q_exponent + f64::from(self.level.state.dim) - 1.0 + 2.0 * f64::from(self.level.state.n);
        let log_env = |x: f64| power * x.ln() - 2.0 * beta * x;
        let peak = (power / (2.0 * beta)).max(1e-3);
        let target = log_env(peak) - 45.0;
        let mut x = peak;
        let step = 0.5 / beta;
        while log_env(x) > target {
            x += step;
        }
        x
    }

    /// ∫₀^∞ R² x^{N−1} dx by adaptive quadrature.
    pub fn norm_integral(&self) -> Result<f64> {
        overlap(self, self)
    }

    /// Number of sign changes of R on a log grid of `points` radii up to the cutoff.
    pub fn node_count(&self, points: usize) -> usize {
        let hi = self.cutoff();
        let lo = hi * 1e-7;
        let (a, b) = (lo.ln(), hi.ln());
        let mut last_sign = 0.0;
        let mut changes = 0;
        for i in 0..points {
            let x = (a + (b - a) * i as f64 / (points - 1) as f64).exp();
            let v = self.eval_unchecked(x);
            if v != 0.0 {
                let s = v.signum();
                if last_sign != 0.0 && s != last_sign {
                    changes += 1;
                }
                last_sign = s;
            }
        }
        changes
    }
}

/// ∫₀^∞ R₁ R₂ x^{N−1} dx for two bound functions of the same dimension.
pub fn overlap(first: &RadialFunction, second: &RadialFunction) -> Result<f64> {
    let dim = first.level.state.dim;
    if dim != second.level.state.dim {
        return Err(Error::Domain("overlap needs functions of equal dimension".into()));
    }
    let upper = first.cutoff().max(second.cutoff());
    let weight = f64::from(dim - 1);
    // split at the envelope peaks so the adaptive rule sees each lobe
    let mut breaks = vec![0.0, upper];
    for f in [first, second] {
        let p = (f.q() + weight / 2.0 + f64::from(f.level.state.n)) / f.beta();
        if p > 0.0 && p < upper {
            breaks.push(p);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let integrand = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        first.eval_unchecked(x) * second.eval_unchecked(x) * x.powf(weight)
    };
    breaks.windows(2).map(|w| quadrature::integrate(integrand, w[0], w[1], 1e-14, 1e-12)).sum()
}

/// Convenience wrapper: R_nl(x) for a single radius.
pub fn radial_bound(model: &DimensionlessModel, state: &QuantumState, x: f64) -> Result<f64> {
    RadialFunction::new(model, state)?.eval(x)
}

/// Max-norm residual of the radial equation
/// R'' + (N−1)/x R' + [E − v(x) − l(l+N−2)/x²] R = 0
/// on `[x_lo, x_hi]`, with both derivatives from 3-point central differences
/// of spacing `h` applied to the analytic R.
pub fn ode_residual(rf: &RadialFunction, model: &DimensionlessModel, h: f64, x_lo: f64, x_hi: f64) -> Result<f64> {
    if !(h > 0.0 && x_lo - h > 0.0 && x_hi > x_lo) {
        return Err(Error::Domain(format!("bad residual window [{x_lo}, {x_hi}] with h={h}")));
    }
    let s = rf.level.state;
    let dim = f64::from(s.dim);
    let l = f64::from(s.l);
    let angular = l * (l + dim - 2.0);
    let energy = rf.level.energy_dimensionless;
    let steps = ((x_hi - x_lo) / h).round() as usize;
    let mut worst = 0.0f64;
    for i in 0..=steps {
        let x = x_lo + h * i as f64;
        let (left, mid, right) = (rf.eval_unchecked(x - h), rf.eval_unchecked(x), rf.eval_unchecked(x + h));
        let d2 = (left - 2.0 * mid + right) / (h * h);
        let d1 = (right - left) / (2.0 * h);
        let potential = -model.a1() / x + model.a2() / (x * x);
        let res = d2 + (dim - 1.0) / x * d1 + (energy - potential - angular / (x * x)) * mid;
        worst = worst.max(res.abs());
    }
    Ok(worst)
}

/// Positive-energy radial solution with unit amplitude:
/// x^q e^{iκx} ₁F₁(q + (N−1)/2 − i(a₁/2)/κ; 2q+N−1; −2iκx), x = r/r₀, κ in 1/r₀.
///
/// κr₀ = sqrt(E/ε) with ε = ħ²/(2μr₀²).
pub fn radial_continuum(model: &DimensionlessModel, l: u32, kappa: f64, x: f64) -> Result<Complex64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be > 0 (got {kappa})")));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be > 0 (got {x})")));
    }
    let state = model.state(0, l);
    let q = exponent_q(model, &state);
    let a = Complex64::new(q + state.half_dim_shift(), -model.coulomb_half() / kappa);
    let c = Complex64::new(2.0 * q + f64::from(state.dim) - 1.0, 0.0);
    let z = Complex64::new(0.0, -2.0 * kappa * x);
    let f = kummer_series(a, c, z, 1e-16)?;
    Ok(x.powf(q) * Complex64::new(0.0, kappa * x).exp() * f)
}
