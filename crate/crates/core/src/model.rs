//! Physical parameters, the dimensionless reduction and the Mie potential family.
//!
//! All dimensionless energies are measured in `ε = ħ²/(2 μ r₀²)` and radii in
//! `x = r/r₀`. In these units the well depth is `D₀ = γ² ε`, and the Kratzer-type
//! member (m=2, k=1) becomes `v(x) = −a₁/x + a₂/x²` with `a₁ = 2γ²` and `a₂ = γ²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::UnitSystem;

/// Physical description of a Mie-type two-body interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    d0: f64,
    r0: f64,
    reduced_mass: f64,
    exp_m: u32,
    exp_k: u32,
    units: UnitSystem,
}

impl PotentialSpec {
    pub fn new(d0: f64, r0: f64, reduced_mass: f64, exp_m: u32, exp_k: u32, units: UnitSystem) -> Result<Self> {
        for (name, v) in [("D0", d0), ("r0", r0), ("reduced_mass", reduced_mass)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be > 0 (got {v})")));
            }
        }
        if exp_k < 1 || exp_m <= exp_k {
            return Err(Error::Domain(format!("exponents must satisfy m > k >= 1 (got m={exp_m}, k={exp_k})")));
        }
        Ok(PotentialSpec { d0, r0, reduced_mass, exp_m, exp_k, units })
    }

    /// The Kratzer-type member m=2, k=1 that has a closed-form spectrum.
    pub fn kratzer(d0: f64, r0: f64, reduced_mass: f64, units: UnitSystem) -> Result<Self> {
        Self::new(d0, r0, reduced_mass, 2, 1, units)
    }

    pub fn d0(&self) -> f64 {
        self.d0
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.exp_m, self.exp_k)
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    pub fn is_kratzer(&self) -> bool {
        self.exp_m == 2 && self.exp_k == 1
    }

    /// ε = ħ²/(2 μ r₀²), the energy unit of every dimensionless quantity.
    pub fn energy_scale(&self) -> f64 {
        self.units.hbar_sq() / (2.0 * self.reduced_mass * self.r0 * self.r0)
    }

    /// γ² = 2 μ r₀² D₀ / ħ², valid for any exponent pair.
    pub fn gamma_sq(&self) -> f64 {
        2.0 * self.reduced_mass * self.r0 * self.r0 * self.d0 / self.units.hbar_sq()
    }

    /// The general potential in units of ε at `x = r/r₀`.
    pub fn dimensionless_potential(&self, x: f64) -> f64 {
        mie_shape(self.exp_m, self.exp_k, x) * self.gamma_sq()
    }
}

/// `k/(m−k)·x^{−m} − m/(m−k)·x^{−k}`; equals −1 at x=1.
fn mie_shape(m: u32, k: u32, x: f64) -> f64 {
    let y = 1.0 / x;
    let span = f64::from(m - k);
    f64::from(k) / span * y.powi(m as i32) - f64::from(m) / span * y.powi(k as i32)
}

/// The reduced problem in units of ε and r₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessModel {
    gamma_sq: Option<f64>,
    dim: u32,
    a1: f64,
    a2: f64,
}

impl DimensionlessModel {
    /// Kratzer-type model with well-depth parameter γ².
    pub fn new(gamma_sq: f64, dim: u32) -> Result<Self> {
        if !(gamma_sq > 0.0 && gamma_sq.is_finite()) {
            return Err(Error::Domain(format!("gamma_sq must be > 0 (got {gamma_sq})")));
        }
        check_dim(dim)?;
        Ok(DimensionlessModel { gamma_sq: Some(gamma_sq), dim, a1: 2.0 * gamma_sq, a2: gamma_sq })
    }

    /// Coulomb plus inverse-square barrier with independent couplings,
    /// `v(x) = −a1/x + a2/x²`. Not tied to a well depth, so the 1/γ expansion
    /// is unavailable for it.
    pub fn with_couplings(a1: f64, a2: f64, dim: u32) -> Result<Self> {
        if !(a1 >= 0.0 && a1.is_finite()) {
            return Err(Error::Domain(format!("a1 must be >= 0 (got {a1})")));
        }
        if !(a2 >= 0.0 && a2.is_finite()) {
            return Err(Error::Domain(format!("a2 must be >= 0 (got {a2})")));
        }
        check_dim(dim)?;
        Ok(DimensionlessModel { gamma_sq: None, dim, a1, a2 })
    }

    pub fn gamma_sq(&self) -> Option<f64> {
        self.gamma_sq
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Coulomb coefficient of `v(x)`.
    pub fn a1(&self) -> f64 {
        self.a1
    }

    /// Inverse-square coefficient of `v(x)`.
    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// a1/2; plays the role of γ² wherever the Coulomb term enters (β, Γ_il).
    pub fn coulomb_half(&self) -> f64 {
        0.5 * self.a1
    }

    pub fn state(&self, n: u32, l: u32) -> QuantumState {
        QuantumState { n, l, dim: self.dim }
    }
}

fn check_dim(dim: u32) -> Result<()> {
    if dim < 2 {
        return Err(Error::Domain(format!("dimension N must be >= 2 (got {dim})")));
    }
    Ok(())
}

/// Radial quantum number, angular momentum and space dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
    pub dim: u32,
}

impl QuantumState {
    pub fn new(n: u32, l: u32, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(QuantumState { n, l, dim })
    }

    /// Λ = l + (N−2)/2. Computed from the integer 2l+N−2 so that states
    /// related by (N, l) → (N+2, l−1) give the same bits.
    pub fn lambda(&self) -> f64 {
        f64::from(2 * self.l + self.dim - 2) / 2.0
    }

    /// (N−1)/2
    pub fn half_dim_shift(&self) -> f64 {
        (f64::from(self.dim) - 1.0) / 2.0
    }
}

/// Reduces a Kratzer-type spec to its dimensionless model in dimension `dim`.
pub fn reduce(spec: &PotentialSpec, dim: u32) -> Result<DimensionlessModel> {
    if !spec.is_kratzer() {
        let (m, k) = spec.exponents();
        return Err(Error::UnsupportedExponents { m, k });
    }
    DimensionlessModel::new(spec.gamma_sq(), dim)
}

/// V(r) = D₀[k/(m−k)(r₀/r)^m − m/(m−k)(r₀/r)^k] in the spec's energy unit.
pub fn potential_general(spec: &PotentialSpec, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r must be > 0 (got {r})")));
    }
    let (m, k) = spec.exponents();
    Ok(spec.d0() * mie_shape(m, k, r / spec.r0()))
}

/// v(x) = −a₁/x + a₂/x² in units of ε.
pub fn potential_special(model: &DimensionlessModel, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be > 0 (got {x})")));
    }
    Ok(-model.a1() / x + model.a2() / (x * x))
}

/// Small-vibration frequency and moment of inertia about r₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicParams {
    /// sqrt(V''(r₀)/μ), in sqrt(energy/(mass·length²)).
    pub omega: f64,
    /// μ r₀²
    pub inertia: f64,
    /// ħ in the same system, so that `hbar * omega` is an energy.
    pub hbar: f64,
    d0: f64,
    r0: f64,
}

impl HarmonicParams {
    /// Parabola about the minimum: D₀(r−r₀)²/r₀² − D₀ (for m=2, k=1).
    pub fn quadratic_expansion(&self, r: f64) -> f64 {
        let d = (r - self.r0) / self.r0;
        self.d0 * d * d - self.d0
    }

    /// Iω/ħ, which equals γ for the Kratzer member.
    pub fn gamma(&self) -> f64 {
        self.inertia * self.omega / self.hbar
    }
}

/// ω and I for the spec. The curvature at r₀ is `m·k·D₀/r₀²`, which reduces to
/// `2D₀/r₀²` (ω = sqrt(2D₀/(μr₀²))) for the Kratzer member.
pub fn harmonic_params(spec: &PotentialSpec) -> HarmonicParams {
    let (m, k) = spec.exponents();
    let curvature = f64::from(m * k) * spec.d0() / (spec.r0() * spec.r0());
    HarmonicParams {
        omega: (curvature / spec.reduced_mass()).sqrt(),
        inertia: spec.reduced_mass() * spec.r0() * spec.r0(),
        hbar: spec.units().hbar(),
        d0: spec.d0(),
        r0: spec.r0(),
    }
}
