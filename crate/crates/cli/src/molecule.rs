//! Molecule parameter files.
//!
//! A file holds either a bare JSON array of records or
//! `{"schema": 1, "molecules": [...]}`. Every physical field carries its own
//! unit tag:
//!
//! ```json
//! {"name": "toy", "D0": 1.0, "D0_unit": "hartree", "r0": 1.0, "r0_unit": "bohr",
//!  "mass": 1.0, "mass_unit": "me"}
//! ```
//!
//! Optional fields: `dim_N` (default 3) and `coulomb_limit` (drop the
//! inverse-square term, leaving −2D₀r₀/r).

use std::collections::HashSet;
use std::path::Path;

use mie_core::{EnergyUnit, LengthUnit, MassUnit, PotentialSpec, UnitSystem};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeRecord {
    pub name: String,
    #[serde(rename = "D0")]
    pub d0: f64,
    #[serde(rename = "D0_unit")]
    pub d0_unit: EnergyUnit,
    pub r0: f64,
    pub r0_unit: LengthUnit,
    /// Reduced mass.
    pub mass: f64,
    pub mass_unit: MassUnit,
    #[serde(rename = "dim_N", default = "default_dim")]
    pub dim: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub coulomb_limit: bool,
}

fn default_dim() -> u32 {
    3
}

impl MoleculeRecord {
    /// Potential in a consistent unit system. All-atomic and all-molecular
    /// records are used as given; mixed records are converted to eV, Å, amu.
    pub fn spec(&self) -> Result<PotentialSpec, CliError> {
        let atomic = self.d0_unit == EnergyUnit::Hartree
            && self.r0_unit == LengthUnit::Bohr
            && self.mass_unit == MassUnit::ElectronMass;
        let molecular = self.d0_unit == EnergyUnit::ElectronVolt
            && self.r0_unit == LengthUnit::Angstrom
            && self.mass_unit == MassUnit::Amu;
        let spec = if atomic {
            PotentialSpec::kratzer(self.d0, self.r0, self.mass, UnitSystem::Atomic)
        } else if molecular {
            PotentialSpec::kratzer(self.d0, self.r0, self.mass, UnitSystem::Molecular)
        } else {
            PotentialSpec::kratzer(
                self.d0 * self.d0_unit.in_ev(),
                self.r0 * self.r0_unit.in_angstrom(),
                self.mass * self.mass_unit.in_amu(),
                UnitSystem::Molecular,
            )
        };
        spec.map_err(|e| CliError::Input(format!("record '{}': {e}", self.name)))
    }

    pub fn gamma_sq(&self) -> Result<f64, CliError> {
        Ok(self.spec()?.gamma_sq())
    }
}

/// Records plus any non-fatal warnings produced while reading.
#[derive(Debug, Default)]
pub struct Loaded {
    pub molecules: Vec<MoleculeRecord>,
    pub warnings: Vec<String>,
}

pub fn load_molecules(path: &Path) -> Result<Loaded, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_molecules(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_molecules(text: &str) -> Result<Loaded, CliError> {
    if text.trim().is_empty() {
        return Ok(Loaded { molecules: Vec::new(), warnings: vec!["molecule file is empty".into()] });
    }
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    let items = match root {
        Value::Array(items) => items,
        Value::Object(mut obj) => {
            match obj.get("schema") {
                Some(Value::Number(v)) if v.as_u64() == Some(SCHEMA_VERSION) => {}
                Some(v) => return Err(CliError::Input(format!("unsupported schema {v} (expected {SCHEMA_VERSION})"))),
                None => return Err(CliError::Input("missing \"schema\" field".into())),
            }
            match obj.remove("molecules") {
                Some(Value::Array(items)) => items,
                _ => return Err(CliError::Input("\"molecules\" must be an array".into())),
            }
        }
        _ => return Err(CliError::Input("expected an array of molecule records".into())),
    };
    let mut loaded = Loaded::default();
    if items.is_empty() {
        loaded.warnings.push("molecule file contains no records".into());
    }
    let mut seen = HashSet::new();
    for (index, item) in items.into_iter().enumerate() {
        let record = parse_record(index, item)?;
        if !seen.insert(record.name.clone()) {
            return Err(CliError::Input(format!("duplicate molecule name '{}'", record.name)));
        }
        loaded.molecules.push(record);
    }
    Ok(loaded)
}

fn parse_record(index: usize, item: Value) -> Result<MoleculeRecord, CliError> {
    let Value::Object(obj) = item else {
        return Err(CliError::Input(format!("record #{index}: expected an object")));
    };
    let name = match obj.get("name") {
        Some(Value::String(s)) if !s.is_empty() => s.clone(),
        Some(_) => return Err(CliError::Input(format!("record #{index}: name must be a non-empty string"))),
        None => return Err(CliError::Input(format!("record #{index}: missing field name"))),
    };
    let fail = |msg: String| CliError::Input(format!("record '{name}': {msg}"));
    let positive = |field: &str| -> Result<f64, CliError> {
        let v = obj
            .get(field)
            .ok_or_else(|| fail(format!("missing field {field}")))?
            .as_f64()
            .ok_or_else(|| fail(format!("{field} must be a number")))?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(fail(format!("{field} must be > 0 (got {v})")))
        }
    };
    let d0 = positive("D0")?;
    let r0 = positive("r0")?;
    let mass = positive("mass")?;
    let d0_unit: EnergyUnit = unit(&obj, "D0_unit", "eV, hartree").map_err(fail)?;
    let r0_unit: LengthUnit = unit(&obj, "r0_unit", "angstrom, bohr").map_err(fail)?;
    let mass_unit: MassUnit = unit(&obj, "mass_unit", "amu, me").map_err(fail)?;
    let dim = match obj.get("dim_N") {
        None => default_dim(),
        Some(v) => match v.as_u64() {
            Some(d) if (2..=u64::from(u32::MAX)).contains(&d) => d as u32,
            _ => return Err(fail(format!("dim_N must be an integer >= 2 (got {v})"))),
        },
    };
    let coulomb_limit = match obj.get("coulomb_limit") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(v) => return Err(fail(format!("coulomb_limit must be true or false (got {v})"))),
    };
    Ok(MoleculeRecord { name, d0, d0_unit, r0, r0_unit, mass, mass_unit, dim, coulomb_limit })
}

fn unit<T: serde::de::DeserializeOwned>(obj: &Map<String, Value>, field: &str, allowed: &str) -> Result<T, String> {
    let v = obj.get(field).ok_or_else(|| format!("missing field {field}"))?;
    serde_json::from_value(v.clone()).map_err(|_| format!("unknown {field} {v} (expected one of: {allowed})"))
}
