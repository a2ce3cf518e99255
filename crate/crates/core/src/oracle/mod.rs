//! Finite-difference eigensolver for the radial problem.
//!
//! With u = x^{(N−1)/2} R the radial equation becomes −u'' + W(x) u = E u, where
//!
//! ```text
//! W(x) = v(x) + (Λ² − ¼)/x²,   Λ = l + (N−2)/2.
//! ```
//!
//! The 3-point stencil on a uniform grid with Dirichlet ends gives a symmetric
//! tridiagonal matrix. Eigenvalues come from Sturm bisection, eigenvectors from
//! inverse iteration, and two grid levels are combined by Richardson
//! extrapolation.

pub mod tridiag;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DimensionlessModel, PotentialSpec};
use crate::spectrum::bound_energy;
use tridiag::SymTridiagonal;

/// Absolute bisection width in units of ε.
pub const BISECTION_TOL: f64 = 1e-12;

const MIN_POINTS: usize = 64;
const MAX_AUTO_POINTS: usize = 400_000;

/// Uniform radial grid, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        if !(x_min > 0.0 && x_min < 1.0 && x_max > 1.0 && x_max.is_finite()) {
            return Err(Error::Domain(format!("grid must satisfy 0 < x_min < 1 < x_max (got [{x_min}, {x_max}])")));
        }
        if points < MIN_POINTS {
            return Err(Error::Domain(format!("grid needs at least {MIN_POINTS} points (got {points})")));
        }
        Ok(Grid { x_min, x_max, points })
    }

    /// Grid sized for the bound states up to `n_max` at angular momentum `l`,
    /// using the analytic decay constant to place the outer wall and the
    /// envelope width to pick the spacing.
    pub fn for_states(model: &DimensionlessModel, l: u32, n_max: u32) -> Result<Self> {
        let top = bound_energy(model, &model.state(n_max, l))?;
        let ground = bound_energy(model, &model.state(0, l))?;
        let shift = top.state.half_dim_shift();
        let power = top.q_exponent + shift + f64::from(n_max);
        let beta = top.beta;
        let envelope = |x: f64| power * x.ln() - beta * x;
        let peak = (power / beta).max(1e-2);
        let target = envelope(peak) - 36.0;
        let mut x_max = peak.max(1.5);
        while envelope(x_max) > target {
            x_max += 0.25 / beta;
        }
        let g_power = ground.q_exponent + shift;
        let g_peak = g_power / ground.beta;
        let width = (g_power.max(1.0)).sqrt() / ground.beta;
        let h = (width.min(g_peak.max(0.05)) / 150.0).clamp(2e-4, 0.05);
        // a wall at x_min shifts E by roughly x_min^{2s−1} for u ~ x^s
        let origin_power = 2.0 * (ground.q_exponent + shift) - 1.0;
        let x_min = if origin_power > 0.0 {
            DEFAULT_X_MIN.min(10f64.powf(-12.0 / origin_power)).max(1e-12)
        } else {
            DEFAULT_X_MIN
        };
        let points = (((x_max - x_min) / h).ceil() as usize + 1).clamp(MIN_POINTS * 4, MAX_AUTO_POINTS);
        Grid::new(x_min, x_max, points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points - 1) as f64
    }

    /// Same interval with the spacing halved.
    pub fn refined(&self) -> Grid {
        Grid { points: 2 * self.points - 1, ..*self }
    }

    /// Interior abscissae (Dirichlet ends excluded).
    pub fn interior(&self) -> Vec<f64> {
        let h = self.spacing();
        (1..self.points - 1).map(|i| self.x_min + h * i as f64).collect()
    }
}

/// Default inner wall.
pub const DEFAULT_X_MIN: f64 = 1e-3;
/// Inner wall used when the combined inverse-square coefficient is attractive.
pub const ATTRACTIVE_X_MIN: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
enum Interaction {
    Coulomb { a1: f64, a2: f64 },
    Mie { gamma_sq: f64, m: u32, k: u32 },
}

/// The 1D effective potential W(x) = v(x) + (Λ² − ¼)/x².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectivePotential {
    interaction: Interaction,
    centrifugal: f64,
}

impl EffectivePotential {
    pub fn eval(&self, x: f64) -> f64 {
        let inv = 1.0 / x;
        let base = match self.interaction {
            Interaction::Coulomb { a1, a2 } => -a1 * inv + a2 * inv * inv,
            Interaction::Mie { gamma_sq, m, k } => {
                let span = f64::from(m - k);
                gamma_sq * (f64::from(k) / span * inv.powi(m as i32) - f64::from(m) / span * inv.powi(k as i32))
            }
        };
        base + self.centrifugal * inv * inv
    }

    /// Λ² − ¼
    pub fn centrifugal(&self) -> f64 {
        self.centrifugal
    }

    /// Total coefficient of x⁻² for the Coulomb family; `None` for general Mie
    /// (the x^{−m} wall dominates there).
    pub fn inverse_square_coefficient(&self) -> Option<f64> {
        match self.interaction {
            Interaction::Coulomb { a2, .. } => Some(a2 + self.centrifugal),
            Interaction::Mie { .. } => None,
        }
    }
}

fn centrifugal(l: u32, dim: u32) -> f64 {
    let lambda = f64::from(2 * l + dim - 2) / 2.0;
    lambda * lambda - 0.25
}

/// Effective 1D potential for angular momentum `l` in `dim` dimensions.
pub fn reduce_to_1d(model: &DimensionlessModel, l: u32, dim: u32) -> Result<EffectivePotential> {
    if dim < 2 {
        return Err(Error::Domain(format!("dimension N must be >= 2 (got {dim})")));
    }
    Ok(EffectivePotential {
        interaction: Interaction::Coulomb { a1: model.a1(), a2: model.a2() },
        centrifugal: centrifugal(l, dim),
    })
}

fn reduce_general(spec: &PotentialSpec, l: u32, dim: u32) -> Result<EffectivePotential> {
    if dim < 2 {
        return Err(Error::Domain(format!("dimension N must be >= 2 (got {dim})")));
    }
    let (m, k) = spec.exponents();
    Ok(EffectivePotential {
        interaction: Interaction::Mie { gamma_sq: spec.gamma_sq(), m, k },
        centrifugal: centrifugal(l, dim),
    })
}

/// Richardson combination of two grid levels for one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RichardsonEstimate {
    pub coarse: f64,
    pub fine: f64,
    /// (4 E_{h/2} − E_h)/3
    pub extrapolated: f64,
    /// |E_{h/2} − E_h|/3
    pub error_estimate: f64,
}

impl RichardsonEstimate {
    pub fn new(coarse: f64, fine: f64) -> Self {
        RichardsonEstimate {
            coarse,
            fine,
            extrapolated: (4.0 * fine - coarse) / 3.0,
            error_estimate: (fine - coarse).abs() / 3.0,
        }
    }
}

/// Output of a finite-difference solve, energies in units of ε.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Lowest bound eigenvalues, ascending (the finest grid when extrapolated).
    pub eigenvalues: Vec<f64>,
    pub grid: Grid,
    /// One entry per eigenvalue after [`richardson`]; empty for a single solve.
    pub richardson: Vec<RichardsonEstimate>,
    /// Fewer bound states than requested were found on the grid.
    pub partial: bool,
}

impl OracleResult {
    /// Extrapolated values when available, raw eigenvalues otherwise.
    pub fn best(&self) -> Vec<f64> {
        if self.richardson.is_empty() {
            self.eigenvalues.clone()
        } else {
            self.richardson.iter().map(|r| r.extrapolated).collect()
        }
    }
}

/// Discretized operator −d²/dx² + W on a grid.
#[derive(Debug, Clone)]
pub struct RadialOperator {
    matrix: SymTridiagonal,
    grid: Grid,
    dim: u32,
}

impl RadialOperator {
    pub fn new(potential: &EffectivePotential, grid: Grid, dim: u32) -> Result<Self> {
        let mut grid = grid;
        if let Some(c) = potential.inverse_square_coefficient() {
            if c < -0.25 {
                return Err(Error::Domain(format!(
                    "inverse-square coefficient {c} < -1/4: fall to the centre, no ground state"
                )));
            }
            if c < 0.0 && grid.x_min < ATTRACTIVE_X_MIN {
                grid = Grid::new(ATTRACTIVE_X_MIN, grid.x_max, grid.points)?;
            }
        }
        let h = grid.spacing();
        let inv_h2 = 1.0 / (h * h);
        let diag: Vec<f64> = grid.interior().iter().map(|&x| 2.0 * inv_h2 + potential.eval(x)).collect();
        let off = vec![-inv_h2; diag.len() - 1];
        Ok(RadialOperator { matrix: SymTridiagonal::new(diag, off)?, grid, dim })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn matrix(&self) -> &SymTridiagonal {
        &self.matrix
    }

    /// Number of negative eigenvalues.
    pub fn bound_count(&self) -> usize {
        self.matrix.count_below(0.0)
    }

    /// Up to `count` lowest negative eigenvalues; the flag reports truncation.
    pub fn bound_eigenvalues(&self, count: usize) -> Result<(Vec<f64>, bool)> {
        let available = self.bound_count();
        let consistency = self.matrix.len() - self.matrix.sign_agreements(0.0);
        if consistency != available {
            return Err(Error::Numerical(format!(
                "Sturm counts disagree at zero shift: pivots {available}, minors {consistency}"
            )));
        }
        let take = count.min(available);
        let lo = self.matrix.gershgorin().0 - 1.0;
        let values = (0..take).map(|k| self.matrix.bisect(k, lo, 0.0, BISECTION_TOL)).collect::<Result<Vec<_>>>()?;
        Ok((values, take < count))
    }

    /// Radial function samples R(x_i) = u_i / x_i^{(N−1)/2} at the interior points,
    /// normalized so that Σ R² x^{N−1} h = 1.
    pub fn radial_eigenvector(&self, eigenvalue: f64) -> Result<Vec<(f64, f64)>> {
        let mut u = self.matrix.inverse_iteration(eigenvalue, 3)?;
        let h = self.grid.spacing();
        let scale = 1.0 / h.sqrt();
        // orient so the innermost lobe is positive
        let first = u.iter().copied().find(|v| v.abs() > 1e-8).unwrap_or(1.0);
        let sign = first.signum() * scale;
        u.iter_mut().for_each(|v| *v *= sign);
        let shift = (f64::from(self.dim) - 1.0) / 2.0;
        Ok(self.grid.interior().into_iter().zip(u).map(|(x, v)| (x, v / x.powf(shift))).collect())
    }
}

/// Lowest `count` bound eigenvalues of the Coulomb-family model at angular
/// momentum `l` (dimension from the model).
pub fn solve_fd(model: &DimensionlessModel, l: u32, grid: Grid, count: usize) -> Result<OracleResult> {
    let potential = reduce_to_1d(model, l, model.dim())?;
    solve_with(&potential, grid, model.dim(), count)
}

fn solve_with(potential: &EffectivePotential, grid: Grid, dim: u32, count: usize) -> Result<OracleResult> {
    if count == 0 {
        return Err(Error::Domain("count must be >= 1".into()));
    }
    let op = RadialOperator::new(potential, grid, dim)?;
    let (eigenvalues, partial) = op.bound_eigenvalues(count)?;
    Ok(OracleResult { eigenvalues, grid: op.grid(), richardson: Vec::new(), partial })
}

fn extrapolate(coarse: OracleResult, fine: OracleResult) -> OracleResult {
    let richardson: Vec<RichardsonEstimate> =
        coarse.eigenvalues.iter().zip(&fine.eigenvalues).map(|(&c, &f)| RichardsonEstimate::new(c, f)).collect();
    let mut eigenvalues = fine.eigenvalues;
    eigenvalues.truncate(richardson.len());
    OracleResult { eigenvalues, grid: fine.grid, partial: coarse.partial || fine.partial, richardson }
}

/// Solves at h and h/2 and extrapolates E* = (4E_{h/2} − E_h)/3.
pub fn richardson(model: &DimensionlessModel, l: u32, base: Grid, count: usize) -> Result<OracleResult> {
    let coarse = solve_fd(model, l, base, count)?;
    let fine = solve_fd(model, l, base.refined(), count)?;
    Ok(extrapolate(coarse, fine))
}

/// Finite-difference spectrum of an arbitrary Mie potential (units of ε).
/// The Kratzer member is routed through the same operator as [`solve_fd`].
pub fn solve_general_mie(spec: &PotentialSpec, l: u32, dim: u32, grid: Grid, count: usize) -> Result<OracleResult> {
    let potential = if spec.is_kratzer() {
        reduce_to_1d(&DimensionlessModel::new(spec.gamma_sq(), dim)?, l, dim)?
    } else {
        reduce_general(spec, l, dim)?
    };
    solve_with(&potential, grid, dim, count)
}

/// [`solve_general_mie`] at h and h/2 with Richardson extrapolation.
pub fn richardson_general_mie(
    spec: &PotentialSpec,
    l: u32,
    dim: u32,
    base: Grid,
    count: usize,
) -> Result<OracleResult> {
    let coarse = solve_general_mie(spec, l, dim, base, count)?;
    let fine = solve_general_mie(spec, l, dim, base.refined(), count)?;
    Ok(extrapolate(coarse, fine))
}
