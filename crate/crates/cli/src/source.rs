//! Resolves command-line inputs into one problem: a model, its dimension and
//! the unit in which energies are reported.

use mie_core::{harmonic_params, reduce, DimensionlessModel, HarmonicParams, PotentialSpec, UnitSystem};

use crate::molecule::MoleculeRecord;
use crate::CliError;

/// Label used when energies are reported in units of ε = ħ²/(2μr₀²).
pub const DIMENSIONLESS_UNIT: &str = "epsilon";

#[derive(Debug, Clone)]
pub struct Problem {
    pub molecule: Option<MoleculeRecord>,
    pub gamma_sq: f64,
    pub coulomb: bool,
    pub dim: u32,
    pub energy_unit: String,
    spec: PotentialSpec,
    /// ε expressed in `energy_unit`.
    energy_scale: f64,
    /// Factor from the spec's unit system to `energy_unit`.
    system_to_output: f64,
}

impl Problem {
    pub fn from_molecule(record: MoleculeRecord, dim: Option<u32>, dimensionless: bool) -> Result<Self, CliError> {
        let spec = record.spec()?;
        let gamma_sq = spec.gamma_sq();
        let (energy_unit, energy_scale, system_to_output) = if dimensionless {
            (DIMENSIONLESS_UNIT.to_string(), 1.0, 1.0 / spec.energy_scale())
        } else {
            let unit = record.d0_unit;
            let label = serde_json::to_value(unit).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            (label, record.d0 / gamma_sq, spec.units().energy_unit().convert(1.0, unit))
        };
        let problem = Problem {
            gamma_sq,
            coulomb: record.coulomb_limit,
            dim: dim.unwrap_or(record.dim),
            molecule: Some(record),
            energy_unit,
            spec,
            energy_scale,
            system_to_output,
        };
        problem.model()?;
        Ok(problem)
    }

    /// A bare γ² with ħ = 1, 2μ = 1 and r₀ = 1, so that ε = 1 and D₀ = γ².
    pub fn from_gamma_sq(gamma_sq: f64, dim: u32, coulomb: bool) -> Result<Self, CliError> {
        if !(gamma_sq > 0.0 && gamma_sq.is_finite()) {
            return Err(CliError::Usage(format!("--gamma-sq must be > 0 (got {gamma_sq})")));
        }
        let spec = PotentialSpec::kratzer(gamma_sq, 1.0, 0.5, UnitSystem::Atomic)?;
        let problem = Problem {
            molecule: None,
            gamma_sq,
            coulomb,
            dim,
            energy_unit: DIMENSIONLESS_UNIT.to_string(),
            spec,
            energy_scale: 1.0,
            system_to_output: 1.0,
        };
        problem.model()?;
        Ok(problem)
    }

    pub fn model(&self) -> Result<DimensionlessModel, CliError> {
        let model = if self.coulomb {
            DimensionlessModel::with_couplings(2.0 * self.gamma_sq, 0.0, self.dim)?
        } else {
            reduce(&self.spec, self.dim)?
        };
        Ok(model)
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    /// Converts an energy in units of ε into the output unit.
    pub fn energy(&self, dimensionless: f64) -> f64 {
        dimensionless * self.energy_scale
    }

    /// Converts an energy in the spec's unit system into the output unit.
    pub fn from_system(&self, value: f64) -> f64 {
        value * self.system_to_output
    }

    /// D₀ in the output unit.
    pub fn d0(&self) -> f64 {
        self.energy(self.gamma_sq)
    }

    /// Small-vibration parameters; not meaningful without the inverse-square wall.
    pub fn harmonic(&self) -> Option<HarmonicParams> {
        (!self.coulomb).then(|| harmonic_params(&self.spec))
    }

    pub fn name(&self) -> String {
        match &self.molecule {
            Some(m) => m.name.clone(),
            None => format!("gamma_sq={}", self.gamma_sq),
        }
    }
}
