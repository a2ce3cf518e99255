//! Unit systems and the physical constants used for conversions.
//!
//! Two closed unit systems are supported:
//!
//! | system    | energy  | length | mass          | ħ²/(mass·length²) |
//! |-----------|---------|--------|---------------|-------------------|
//! | atomic    | hartree | bohr   | electron mass | 1                 |
//! | molecular | eV      | Å      | amu           | (ħc)²/(m_u c²)    |
//!
//! Constants are CODATA 2018.

use serde::{Deserialize, Serialize};

/// ħc in eV·Å.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.269804;

/// Atomic mass unit rest energy in eV.
pub const AMU_EV: f64 = 9.3149410242e8;

/// Hartree energy in eV.
pub const HARTREE_EV: f64 = 27.211386245988;

/// Bohr radius in Å.
pub const BOHR_ANGSTROM: f64 = 0.529177210903;

/// Atomic mass unit in electron masses.
pub const AMU_ELECTRON_MASS: f64 = 1822.888486209;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// Hartree, bohr, electron mass; ħ = 1.
    Atomic,
    /// eV, Å, amu.
    Molecular,
}

impl UnitSystem {
    /// ħ² expressed in energy·mass·length² of this system.
    pub fn hbar_sq(self) -> f64 {
        match self {
            UnitSystem::Atomic => 1.0,
            UnitSystem::Molecular => HBAR_C_EV_ANGSTROM * HBAR_C_EV_ANGSTROM / AMU_EV,
        }
    }

    /// ħ in units where ħω is an energy for ω = sqrt(energy / (mass·length²)).
    pub fn hbar(self) -> f64 {
        self.hbar_sq().sqrt()
    }

    pub fn energy_unit(self) -> EnergyUnit {
        match self {
            UnitSystem::Atomic => EnergyUnit::Hartree,
            UnitSystem::Molecular => EnergyUnit::ElectronVolt,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnergyUnit {
    #[serde(rename = "eV")]
    ElectronVolt,
    #[serde(rename = "hartree")]
    Hartree,
}

impl EnergyUnit {
    pub fn in_ev(self) -> f64 {
        match self {
            EnergyUnit::ElectronVolt => 1.0,
            EnergyUnit::Hartree => HARTREE_EV,
        }
    }

    /// Converts `value` expressed in `self` into `target`.
    pub fn convert(self, value: f64, target: EnergyUnit) -> f64 {
        if self == target {
            value
        } else {
            value * self.in_ev() / target.in_ev()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LengthUnit {
    #[serde(rename = "angstrom")]
    Angstrom,
    #[serde(rename = "bohr")]
    Bohr,
}

impl LengthUnit {
    pub fn in_angstrom(self) -> f64 {
        match self {
            LengthUnit::Angstrom => 1.0,
            LengthUnit::Bohr => BOHR_ANGSTROM,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MassUnit {
    #[serde(rename = "amu")]
    Amu,
    #[serde(rename = "me")]
    ElectronMass,
}

impl MassUnit {
    pub fn in_amu(self) -> f64 {
        match self {
            MassUnit::Amu => 1.0,
            MassUnit::ElectronMass => 1.0 / AMU_ELECTRON_MASS,
        }
    }
}
