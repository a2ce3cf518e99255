//! The four subcommands. Each builds a serializable report; rendering to CSV
//! or JSON is separate so tests can inspect the in-memory value.

use mie_core::spectrum::spectroscopic_terms;
use mie_core::wavefunction::overlap;
use mie_core::{bound_energy, expand_energy, richardson, Grid, RadialFunction};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::molecule::MoleculeRecord;
use crate::source::Problem;
use crate::table::{line, opt, sig};
use crate::{CliError, VERSION};

/// Largest n or l accepted on the command line.
pub const MAX_QUANTUM_NUMBER: u32 = 10_000;

/// Normalization and orthogonality threshold used by `verify`.
pub const NORM_TOLERANCE: f64 = 1e-8;

const NODE_SAMPLES: usize = 20_000;

fn check_bound(flag: &str, v: u32) -> Result<(), CliError> {
    if v > MAX_QUANTUM_NUMBER {
        return Err(CliError::Usage(format!("{flag} must be <= {MAX_QUANTUM_NUMBER} (got {v})")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub l: u32,
    #[serde(rename = "N")]
    pub dim: u32,
    #[serde(rename = "E_exact")]
    pub e_exact: f64,
    /// Order-3 large-γ series; absent in the Coulomb limit.
    #[serde(rename = "E_expand3")]
    pub e_expand3: Option<f64>,
    /// Exact energy in units of ε.
    #[serde(rename = "E_dimensionless")]
    pub e_dimensionless: f64,
    pub beta: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub gamma_sq: f64,
    /// Small-vibration angular frequency in the record's unit system.
    pub omega: Option<f64>,
    /// μr₀² in the record's unit system.
    pub inertia: Option<f64>,
    /// ħω in the output energy unit.
    pub hbar_omega: Option<f64>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub molecule: Option<MoleculeRecord>,
    pub energy_unit: String,
    pub rows: Vec<SpectrumRow>,
    pub metadata: Metadata,
}

pub const SPECTRUM_HEADER: [&str; 7] = ["n", "l", "N", "E_exact", "E_expand3", "beta", "q"];

impl SpectrumTable {
    pub fn to_csv(&self) -> String {
        let mut out = line(SPECTRUM_HEADER);
        for r in &self.rows {
            out.push_str(&line([
                r.n.to_string(),
                r.l.to_string(),
                r.dim.to_string(),
                sig(r.e_exact),
                opt(r.e_expand3),
                sig(r.beta),
                sig(r.q),
            ]));
        }
        out
    }
}

fn metadata(problem: &Problem) -> Metadata {
    let h = problem.harmonic();
    Metadata {
        gamma_sq: problem.gamma_sq,
        omega: h.map(|h| h.omega),
        inertia: h.map(|h| h.inertia),
        hbar_omega: h.map(|h| problem.from_system(h.hbar * h.omega)),
        version: VERSION.to_string(),
    }
}

pub fn spectrum(problem: &Problem, n_max: u32, l_max: u32) -> Result<SpectrumTable, CliError> {
    check_bound("--nmax", n_max)?;
    check_bound("--lmax", l_max)?;
    let model = problem.model()?;
    let pairs: Vec<(u32, u32)> = (0..=l_max).flat_map(|l| (0..=n_max).map(move |n| (l, n))).collect();
    let mut rows = pairs
        .par_iter()
        .map(|&(l, n)| -> Result<SpectrumRow, CliError> {
            let state = model.state(n, l);
            let level = bound_energy(&model, &state)?;
            let e_expand3 =
                if problem.coulomb { None } else { Some(problem.d0() * expand_energy(&model, &state, 3)?.sum()) };
            Ok(SpectrumRow {
                n,
                l,
                dim: problem.dim,
                e_exact: problem.energy(level.energy_dimensionless),
                e_expand3,
                e_dimensionless: level.energy_dimensionless,
                beta: level.beta,
                q: level.q_exponent,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by_key(|r| (r.l, r.n));
    Ok(SpectrumTable {
        molecule: problem.molecule.clone(),
        energy_unit: problem.energy_unit.clone(),
        rows,
        metadata: metadata(problem),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    #[serde(rename = "R")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionTable {
    pub molecule: Option<MoleculeRecord>,
    pub n: u32,
    pub l: u32,
    #[serde(rename = "N")]
    pub dim: u32,
    pub beta: f64,
    pub q: f64,
    pub norm_constant: f64,
    /// x = r/r₀; R normalized with ∫R² x^{N−1} dx = 1.
    pub samples: Vec<Sample>,
}

impl WavefunctionTable {
    pub fn to_csv(&self) -> String {
        let mut out = line(["x", "R"]);
        for s in &self.samples {
            out.push_str(&line([sig(s.x), sig(s.value)]));
        }
        out
    }
}

pub fn wavefunction(
    problem: &Problem,
    n: u32,
    l: u32,
    x_min: f64,
    x_max: Option<f64>,
    points: usize,
) -> Result<WavefunctionTable, CliError> {
    check_bound("--n", n)?;
    check_bound("--l", l)?;
    let model = problem.model()?;
    let rf = RadialFunction::new(&model, &model.state(n, l))?;
    let x_max = x_max.unwrap_or_else(|| rf.cutoff());
    if !(x_min > 0.0 && x_max > x_min && x_max.is_finite()) {
        return Err(CliError::Usage(format!("need 0 < x_min < x_max (got {x_min}, {x_max})")));
    }
    if points < 2 {
        return Err(CliError::Usage(format!("--points must be >= 2 (got {points})")));
    }
    let samples =
        rf.sample(x_min, x_max, points)?.into_iter().map(|(x, value)| Sample { x, value }).collect::<Vec<_>>();
    if let Some(bad) = samples.iter().find(|s| !s.value.is_finite()) {
        return Err(CliError::Numerical(format!("non-finite R at x = {}", bad.x)));
    }
    Ok(WavefunctionTable {
        molecule: problem.molecule.clone(),
        n,
        l,
        dim: problem.dim,
        beta: rf.beta(),
        q: rf.q(),
        norm_constant: rf.norm_constant,
        samples,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: u32,
    pub l: u32,
    #[serde(rename = "N")]
    pub dim: u32,
    #[serde(rename = "E_exact")]
    pub e_exact: f64,
    #[serde(rename = "E_oracle")]
    pub e_oracle: f64,
    pub rel_error: f64,
    /// Richardson error estimate, relative.
    pub rel_error_estimate: f64,
    pub norm: f64,
    /// |overlap| with level n−1 of the same l (0 for n = 0).
    pub overlap_prev: f64,
    pub nodes: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub molecule: Option<MoleculeRecord>,
    pub energy_unit: String,
    pub tolerance: f64,
    pub rows: Vec<VerifyRow>,
    pub all_pass: bool,
}

pub const VERIFY_HEADER: [&str; 12] = [
    "n",
    "l",
    "N",
    "E_exact",
    "E_oracle",
    "rel_error",
    "rel_error_estimate",
    "norm",
    "overlap_prev",
    "nodes",
    "expected_nodes",
    "status",
];

impl VerifyReport {
    pub fn to_csv(&self) -> String {
        let mut out = line(VERIFY_HEADER);
        for r in &self.rows {
            out.push_str(&line([
                r.n.to_string(),
                r.l.to_string(),
                r.dim.to_string(),
                sig(r.e_exact),
                sig(r.e_oracle),
                sig(r.rel_error),
                sig(r.rel_error_estimate),
                sig(r.norm),
                sig(r.overlap_prev),
                r.nodes.to_string(),
                r.n.to_string(),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ]));
        }
        out
    }

    pub fn summary(&self) -> String {
        let passed = self.rows.iter().filter(|r| r.pass).count();
        let verdict = if self.all_pass { "PASS" } else { "FAIL" };
        format!("verify: {passed}/{} levels within tolerance {:e}: {verdict}", self.rows.len(), self.tolerance)
    }
}

pub fn verify(problem: &Problem, n_max: u32, l_max: u32, tolerance: f64) -> Result<VerifyReport, CliError> {
    check_bound("--nmax", n_max)?;
    check_bound("--lmax", l_max)?;
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(CliError::Usage(format!("--tolerance must be > 0 (got {tolerance})")));
    }
    let model = problem.model()?;
    let count = n_max as usize + 1;
    let per_l = (0..=l_max)
        .into_par_iter()
        .map(|l| -> Result<Vec<VerifyRow>, CliError> {
            let grid = Grid::for_states(&model, l, n_max)?;
            let oracle = richardson(&model, l, grid, count)?;
            if oracle.partial || oracle.richardson.len() < count {
                return Err(CliError::Numerical(format!(
                    "oracle found {} of {count} bound states at l={l} on [{}, {}]",
                    oracle.richardson.len(),
                    grid.x_min(),
                    grid.x_max()
                )));
            }
            let functions =
                (0..=n_max).map(|n| RadialFunction::new(&model, &model.state(n, l))).collect::<Result<Vec<_>, _>>()?;
            let mut rows = Vec::with_capacity(count);
            for (n, (rf, est)) in functions.iter().zip(&oracle.richardson).enumerate() {
                let exact = rf.level.energy_dimensionless;
                let rel_error = ((est.extrapolated - exact) / exact).abs();
                let norm = rf.norm_integral()?;
                let overlap_prev = match n.checked_sub(1) {
                    Some(prev) => overlap(&functions[prev], rf)?.abs(),
                    None => 0.0,
                };
                let nodes = rf.node_count(NODE_SAMPLES);
                let pass = rel_error <= tolerance
                    && (norm - 1.0).abs() <= NORM_TOLERANCE
                    && overlap_prev <= NORM_TOLERANCE
                    && nodes == n;
                rows.push(VerifyRow {
                    n: n as u32,
                    l,
                    dim: problem.dim,
                    e_exact: problem.energy(exact),
                    e_oracle: problem.energy(est.extrapolated),
                    rel_error,
                    rel_error_estimate: (est.error_estimate / exact).abs(),
                    norm,
                    overlap_prev,
                    nodes,
                    pass,
                });
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows: Vec<VerifyRow> = per_l.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.l, r.n));
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport {
        molecule: problem.molecule.clone(),
        energy_unit: problem.energy_unit.clone(),
        tolerance,
        rows,
        all_pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionRow {
    pub term: String,
    /// Power of 1/γ.
    pub order: usize,
    /// D₀ × term of the 1/γ series.
    pub gamma_form: f64,
    /// The same term written with ω, I and ħ.
    pub spectroscopic_form: f64,
    pub partial_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub molecule: Option<MoleculeRecord>,
    pub energy_unit: String,
    pub n: u32,
    pub l: u32,
    #[serde(rename = "N")]
    pub dim: u32,
    pub gamma: f64,
    pub terms: Vec<ExpansionRow>,
    pub sum_gamma_form: f64,
    pub sum_spectroscopic_form: f64,
    pub exact: f64,
    /// exact − order-3 sum
    pub residual: f64,
}

impl ExpansionReport {
    pub fn to_csv(&self) -> String {
        let mut out = line(["term", "order", "gamma_form", "spectroscopic_form", "partial_sum"]);
        for t in &self.terms {
            out.push_str(&line([
                t.term.clone(),
                t.order.to_string(),
                sig(t.gamma_form),
                sig(t.spectroscopic_form),
                sig(t.partial_sum),
            ]));
        }
        out.push_str(&line([
            "sum".into(),
            String::new(),
            sig(self.sum_gamma_form),
            sig(self.sum_spectroscopic_form),
            sig(self.sum_gamma_form),
        ]));
        out.push_str(&line(["exact".into(), String::new(), sig(self.exact), String::new(), String::new()]));
        out.push_str(&line(["residual".into(), String::new(), sig(self.residual), String::new(), String::new()]));
        out
    }
}

pub fn expand(problem: &Problem, n: u32, l: u32) -> Result<ExpansionReport, CliError> {
    check_bound("--n", n)?;
    check_bound("--l", l)?;
    if problem.coulomb {
        return Err(CliError::Usage("the 1/γ expansion needs the inverse-square term (drop --coulomb)".into()));
    }
    let model = problem.model()?;
    let state = model.state(n, l);
    let series = expand_energy(&model, &state, 3)?;
    let spectro = spectroscopic_terms(problem.spec(), &state)?;
    let d0 = problem.d0();
    let mut partial = 0.0;
    let terms: Vec<ExpansionRow> = series
        .terms
        .iter()
        .zip(&spectro)
        .map(|(t, s)| {
            let gamma_form = d0 * t.value;
            partial += gamma_form;
            ExpansionRow {
                term: t.name.to_string(),
                order: t.order,
                gamma_form,
                spectroscopic_form: problem.from_system(s.value),
                partial_sum: partial,
            }
        })
        .collect();
    let exact = problem.energy(bound_energy(&model, &state)?.energy_dimensionless);
    let sum_spectroscopic_form = terms.iter().map(|t| t.spectroscopic_form).sum();
    Ok(ExpansionReport {
        molecule: problem.molecule.clone(),
        energy_unit: problem.energy_unit.clone(),
        n,
        l,
        dim: problem.dim,
        gamma: series.gamma,
        sum_gamma_form: partial,
        sum_spectroscopic_form,
        exact,
        residual: exact - partial,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Problem {
        let m = crate::parse_molecules(
            r#"[{"name":"toy","D0":1.0,"D0_unit":"hartree","r0":1.0,"r0_unit":"bohr","mass":1.0,"mass_unit":"me"}]"#,
        )
        .unwrap()
        .molecules
        .remove(0);
        Problem::from_molecule(m, None, false).unwrap()
    }

    #[test]
    fn toy_ground_row() {
        let t = spectrum(&toy(), 0, 0).unwrap();
        assert_eq!(t.rows.len(), 1);
        let r = &t.rows[0];
        assert_eq!(r.e_dimensionless, -1.0);
        assert_eq!(r.e_exact, -0.5);
        assert_eq!((r.beta, r.q), (1.0, 1.0));
        assert_eq!(
            t.to_csv(),
            "n,l,N,E_exact,E_expand3,beta,q\n0,0,3,-0.500000000000,".to_string()
                + &sig(r.e_expand3.unwrap())
                + ",1.00000000000,1.00000000000\n"
        );
    }

    #[test]
    fn rows_sorted_by_l_then_n() {
        let t = spectrum(&toy(), 2, 1).unwrap();
        let keys: Vec<(u32, u32)> = t.rows.iter().map(|r| (r.l, r.n)).collect();
        assert_eq!(keys, vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
        assert!(t.rows.iter().all(|r| r.e_exact < 0.0));
    }

    #[test]
    fn coulomb_rows_have_no_expansion() {
        let p = Problem::from_gamma_sq(1.0, 3, true).unwrap();
        let t = spectrum(&p, 0, 0).unwrap();
        assert_eq!(t.rows[0].e_exact, -1.0);
        assert_eq!(t.rows[0].e_expand3, None);
        assert!(t.to_csv().lines().nth(1).unwrap().contains(",,"));
        assert!(t.metadata.omega.is_none());
        assert!(matches!(expand(&p, 0, 0), Err(CliError::Usage(_))));
    }

    #[test]
    fn wavefunction_is_x_exp_minus_x_for_toy() {
        let w = wavefunction(&toy(), 0, 0, 0.1, Some(5.0), 11).unwrap();
        let c = w.norm_constant;
        for s in &w.samples {
            assert!((s.value - c * s.x * (-s.x).exp()).abs() < 1e-13);
        }
        assert_eq!(wavefunction(&toy(), 0, 0, 0.1, Some(5.0), 2).unwrap().to_csv().lines().count(), 3);
        assert!(matches!(wavefunction(&toy(), 0, 0, 1.0, Some(0.5), 5), Err(CliError::Usage(_))));
        assert!(matches!(wavefunction(&toy(), 0, 0, 0.1, Some(5.0), 1), Err(CliError::Usage(_))));
    }

    #[test]
    fn huge_gamma_sq_samples_finite() {
        let p = Problem::from_gamma_sq(1e4, 3, false).unwrap();
        for n in [0, 5] {
            let w = wavefunction(&p, n, 2, 1e-3, None, 400).unwrap();
            assert!(w.samples.iter().all(|s| s.value.is_finite()));
        }
    }

    #[test]
    fn verify_toy() {
        let report = verify(&toy(), 1, 1, 1e-5).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.all_pass, "{:?}", report.rows);
        let strict = verify(&toy(), 1, 1, 1e-15).unwrap();
        assert!(!strict.all_pass);
        assert!(matches!(verify(&toy(), 1, 1, 0.0), Err(CliError::Usage(_))));
    }

    #[test]
    fn expansion_forms_agree() {
        for g2 in [2.0, 50.0, 5e3] {
            let p = Problem::from_gamma_sq(g2, 3, false).unwrap();
            let e = expand(&p, 1, 2).unwrap();
            assert_eq!(e.terms[0].gamma_form, -g2);
            assert!(((e.sum_gamma_form - e.sum_spectroscopic_form) / e.sum_gamma_form).abs() < 1e-12);
            assert!(e.residual != 0.0);
        }
        let e = expand(&toy(), 0, 0).unwrap();
        assert_eq!(e.terms[0].gamma_form, -1.0);
        for t in &e.terms {
            assert!((t.gamma_form - t.spectroscopic_form).abs() < 1e-12 * t.gamma_form.abs());
        }
    }

    #[test]
    fn bounds_checked() {
        assert!(matches!(spectrum(&toy(), MAX_QUANTUM_NUMBER + 1, 0), Err(CliError::Usage(_))));
    }
}
