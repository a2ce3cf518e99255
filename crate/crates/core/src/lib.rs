//! Exact bound states of the N-dimensional radial Schrödinger equation with the
//! Kratzer-type member of the Mie potential family, `V(r) = −A/r + B/r²`,
//! together with an independent finite-difference eigensolver used to check
//! every closed-form result.
//!
//! Module map:
//!
//! - [`model`]: physical parameters, the dimensionless reduction, potentials.
//! - [`spectrum`]: closed-form energies and the large-γ expansion.
//! - [`wavefunction`]: normalized radial functions and the continuum solution.
//! - [`special`]: generalized Laguerre polynomials and the Kummer series.
//! - [`oracle`]: Sturm-bisection finite-difference solver with Richardson extrapolation.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration for norm checks.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod spectrum;
pub mod units;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{
    harmonic_params, potential_general, potential_special, reduce, DimensionlessModel, HarmonicParams, PotentialSpec,
    QuantumState,
};
pub use oracle::{richardson, solve_fd, solve_general_mie, Grid, OracleResult, RichardsonEstimate};
pub use special::{kummer_series, laguerre, LaguerreParams};
pub use spectrum::{
    bound_energy, bound_energy_generalized, coulomb_check, expand_energy, exponent_q, positive_energy,
    spectroscopic_energy, BoundLevel, ExpansionTerms,
};
pub use units::{EnergyUnit, LengthUnit, MassUnit, UnitSystem};
pub use wavefunction::{normalization, radial_bound, radial_continuum, series_coefficients, RadialFunction};
