//! Closed-form bound-state energies and their large-γ expansions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{harmonic_params, DimensionlessModel, PotentialSpec, QuantumState};

/// One bound level in units of ε = ħ²/(2μr₀²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundLevel {
    pub state: QuantumState,
    /// Origin exponent q, R ~ x^q as x → 0.
    pub q_exponent: f64,
    /// Decay constant β, R ~ e^{−βx} as x → ∞.
    pub beta: f64,
    /// −β²
    pub energy_dimensionless: f64,
    /// n + ½ + sqrt(Λ² + a₂) = n + q + (N−1)/2
    pub denominator: f64,
}

impl BoundLevel {
    /// Energy in the physical unit whose ε is `energy_scale`.
    pub fn energy_physical(&self, energy_scale: f64) -> f64 {
        self.energy_dimensionless * energy_scale
    }
}

/// q = −(N−2)/2 + sqrt((l + (N−2)/2)² + a₂). Only the positive root is returned.
pub fn exponent_q(model: &DimensionlessModel, state: &QuantumState) -> f64 {
    let lambda = state.lambda();
    -f64::from(state.dim - 2) / 2.0 + (lambda * lambda + model.a2()).sqrt()
}

/// Exact bound-state level of the Coulomb + inverse-square model.
///
/// β = (a₁/2) / (n + ½ + sqrt(Λ² + a₂)) and E = −β². For the Kratzer model this is
/// E = −γ⁴ [n + ½ + sqrt(Λ² + γ²)]⁻².
pub fn bound_energy(model: &DimensionlessModel, state: &QuantumState) -> Result<BoundLevel> {
    if !(model.a1() > 0.0) {
        return Err(Error::NoBoundState(format!("Coulomb coupling a1 = {} admits no bound states", model.a1())));
    }
    let lambda = state.lambda();
    let root = (lambda * lambda + model.a2()).sqrt();
    let q_exponent = -f64::from(state.dim - 2) / 2.0 + root;
    let denominator = f64::from(state.n) + 0.5 + root;
    let beta = model.coulomb_half() / denominator;
    Ok(BoundLevel { state: *state, q_exponent, beta, energy_dimensionless: -(beta * beta), denominator })
}

/// Bound level for independent couplings `v(x) = −a1/x + a2/x²`.
pub fn bound_energy_generalized(a1: f64, a2: f64, state: &QuantumState) -> Result<BoundLevel> {
    if !(a1 > 0.0) {
        return Err(Error::NoBoundState(format!("a1 must be > 0 (got {a1})")));
    }
    let model = DimensionlessModel::with_couplings(a1, a2, state.dim)?;
    bound_energy(&model, state)
}

/// Formula value of the positive-energy branch, +γ⁴[n + ½ + sqrt(Λ² + γ²)]⁻².
///
/// Positive energies form a continuum; this is only the sign-flipped bound
/// formula evaluated as written and carries no claim of a discrete level.
pub fn positive_energy(model: &DimensionlessModel, state: &QuantumState) -> Result<f64> {
    Ok(-bound_energy(model, state)?.energy_dimensionless)
}

/// One term of the large-γ series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub name: &'static str,
    /// Power of 1/γ.
    pub order: usize,
    pub value: f64,
}

/// Large-γ series of E/D₀, truncated at `truncation_order`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerms {
    pub gamma: f64,
    pub truncation_order: usize,
    pub terms: Vec<ExpansionTerm>,
}

impl ExpansionTerms {
    /// Σ of all retained terms (in units of D₀).
    pub fn sum(&self) -> f64 {
        self.terms.iter().map(|t| t.value).sum()
    }

    /// Sum through a given order, `order <= truncation_order`.
    pub fn sum_through(&self, order: usize) -> f64 {
        self.terms.iter().filter(|t| t.order <= order).map(|t| t.value).sum()
    }

    /// Coefficients grouped by order: index i holds the γ^{−i} contribution.
    pub fn by_order(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.truncation_order + 1];
        for t in &self.terms {
            out[t.order] += t.value;
        }
        out
    }
}

const TERM_NAMES: [(&str, usize); 6] = [
    ("well_depth", 0),
    ("vibration", 1),
    ("rotation", 2),
    ("anharmonicity", 2),
    ("rotation_vibration", 3),
    ("cubic_anharmonicity", 3),
];

fn series_values(nu: f64, lambda: f64, gamma: f64) -> [f64; 6] {
    let lsq = lambda * lambda;
    [
        -1.0,
        2.0 * nu / gamma,
        lsq / (gamma * gamma),
        -3.0 * nu * nu / (gamma * gamma),
        -3.0 * nu * lsq / gamma.powi(3),
        4.0 * nu.powi(3) / gamma.powi(3),
    ]
}

/// Expansion of E/D₀ in powers of 1/γ:
///
/// −1 + 2ν/γ + (Λ² − 3ν²)/γ² + (4ν³ − 3νΛ²)/γ³ + O(γ⁻⁴), with ν = n + ½.
pub fn expand_energy(model: &DimensionlessModel, state: &QuantumState, order: usize) -> Result<ExpansionTerms> {
    if order > 3 {
        return Err(Error::UnsupportedOrder(order));
    }
    let gamma_sq = model
        .gamma_sq()
        .ok_or_else(|| Error::Config("the 1/γ expansion needs a Kratzer model (a1 = 2γ², a2 = γ²)".into()))?;
    let gamma = gamma_sq.sqrt();
    let nu = f64::from(state.n) + 0.5;
    let values = series_values(nu, state.lambda(), gamma);
    let terms = TERM_NAMES
        .iter()
        .zip(values)
        .filter(|((_, o), _)| *o <= order)
        .map(|(&(name, order), value)| ExpansionTerm { name, order, value })
        .collect();
    Ok(ExpansionTerms { gamma, truncation_order: order, terms })
}

/// The order-3 series written with ω, I and ħ, each term an energy in the
/// spec's unit system:
///
/// −½Iω² + ħω ν + ħ²Λ²/(2I) − 3ħ²ν²/(2I) − 3ħ³νΛ²/(2I²ω) + 2ħ³ν³/(I²ω)
pub fn spectroscopic_terms(spec: &PotentialSpec, state: &QuantumState) -> Result<Vec<ExpansionTerm>> {
    if !spec.is_kratzer() {
        let (m, k) = spec.exponents();
        return Err(Error::UnsupportedExponents { m, k });
    }
    let h = harmonic_params(spec);
    let (w, i, hb) = (h.omega, h.inertia, h.hbar);
    let nu = f64::from(state.n) + 0.5;
    let lsq = state.lambda() * state.lambda();
    let values = [
        -0.5 * i * w * w,
        hb * w * nu,
        hb * hb / (2.0 * i) * lsq,
        -3.0 * hb * hb / (2.0 * i) * nu * nu,
        -3.0 * hb.powi(3) / (2.0 * i * i * w) * nu * lsq,
        2.0 * hb.powi(3) / (i * i * w) * nu.powi(3),
    ];
    Ok(TERM_NAMES.iter().zip(values).map(|(&(name, order), value)| ExpansionTerm { name, order, value }).collect())
}

/// Sum of [`spectroscopic_terms`].
pub fn spectroscopic_energy(spec: &PotentialSpec, state: &QuantumState) -> Result<f64> {
    Ok(spectroscopic_terms(spec, state)?.iter().map(|t| t.value).sum())
}

/// Hydrogen levels for a principal quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombLevel {
    pub n_principal: u32,
    pub hartree: f64,
    pub rydberg: f64,
}

/// Evaluates every (n, l) with n + l + 1 = `n_principal` at a₁ = 2, a₂ = 0, N = 3
/// (V = −1/r with r₀ = 1 bohr, μ = 1, so ε = ½ hartree) and returns the shared value.
pub fn coulomb_check(n_principal: u32) -> Result<CoulombLevel> {
    if n_principal < 1 {
        return Err(Error::Domain("principal quantum number must be >= 1".into()));
    }
    let mut common: Option<f64> = None;
    for l in 0..n_principal {
        let state = QuantumState::new(n_principal - 1 - l, l, 3)?;
        let e = bound_energy_generalized(2.0, 0.0, &state)?.energy_dimensionless;
        match common {
            None => common = Some(e),
            Some(c) if ((c - e) / c).abs() > 1e-14 => {
                return Err(Error::Numerical(format!(
                    "Coulomb degeneracy broken at n_principal={n_principal}: {c} vs {e}"
                )))
            }
            Some(_) => {}
        }
    }
    let e = common.expect("n_principal >= 1 yields at least one state");
    Ok(CoulombLevel { n_principal, hartree: 0.5 * e, rydberg: e })
}

/// Level of V = −B/r + A/r² in three dimensions, written in the
/// (A, B, n′) parametrization:
///
/// E = −(2μ/ħ²) B² [2n′ + 1 + sqrt((2l+1)² + 8μA/ħ²)]⁻²
///
/// With D₀ = V₀/2 and r₀ = σ this matches the Kratzer level for A = σ²V₀/2
/// and B = σV₀.
pub fn coulomb_barrier_energy(reduced_mass: f64, hbar_sq: f64, a: f64, b: f64, n_radial: u32, l: u32) -> f64 {
    let two_l1 = f64::from(2 * l + 1);
    let d = f64::from(2 * n_radial + 1) + (two_l1 * two_l1 + 8.0 * reduced_mass * a / hbar_sq).sqrt();
    -(2.0 * reduced_mass / hbar_sq) * b * b / (d * d)
}
