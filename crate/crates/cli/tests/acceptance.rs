//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints one PASS/FAIL line; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mie_cli::commands::SpectrumTable;
use mie_cli::{parse_molecules, spectrum, Problem};
use mie_core::special::{binomial_shifted, kummer_real};
use mie_core::spectrum::coulomb_check;
use mie_core::wavefunction::{ln_normalization_alt, ode_residual, overlap};
use mie_core::{
    bound_energy, bound_energy_generalized, expand_energy, laguerre, richardson, series_coefficients,
    spectroscopic_energy, DimensionlessModel, Grid, LaguerreParams, PotentialSpec, QuantumState, RadialFunction,
    UnitSystem,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn hydrogen_limit() -> Check {
    let start = Instant::now();
    let ground = coulomb_check(1).map_err(|e| e.to_string())?;
    ensure((ground.hartree + 0.5).abs() <= 1e-12, || format!("ground state {} hartree", ground.hartree))?;
    let mut worst = 0.0f64;
    for np in 1..=5u32 {
        let target = -1.0 / (2.0 * f64::from(np * np));
        for l in 0..np {
            let s = QuantumState::new(np - 1 - l, l, 3).map_err(|e| e.to_string())?;
            let e = 0.5 * bound_energy_generalized(2.0, 0.0, &s).map_err(|e| e.to_string())?.energy_dimensionless;
            worst = worst.max(rel(e, target));
        }
    }
    ensure(worst <= 1e-14, || format!("worst relative deviation {worst:e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("E0 = {} hartree, degeneracy worst {worst:.1e}, {elapsed:?}", ground.hartree))
}

const SWEEP_DIMS: [u32; 4] = [2, 3, 4, 5];
const SWEEP_GAMMA_SQ: [f64; 3] = [2.0, 5.0, 25.0];

fn oracle_agreement() -> Check {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for g2 in SWEEP_GAMMA_SQ {
        for dim in SWEEP_DIMS {
            let m = DimensionlessModel::new(g2, dim).map_err(|e| e.to_string())?;
            for l in 0..=2 {
                let grid = Grid::for_states(&m, l, 2).map_err(|e| e.to_string())?;
                let res = richardson(&m, l, grid, 3).map_err(|e| e.to_string())?;
                ensure(!res.partial, || format!("γ²={g2} N={dim} l={l}: missing bound states"))?;
                for (n, e) in res.best().iter().enumerate() {
                    let exact =
                        bound_energy(&m, &m.state(n as u32, l)).map_err(|e| e.to_string())?.energy_dimensionless;
                    let r = rel(*e, exact);
                    ensure(r <= 1e-6, || format!("γ²={g2} N={dim} l={l} n={n}: rel error {r:e}"))?;
                    worst = worst.max(r);
                    cases += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(cases == 108, || format!("{cases} cases"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} cases, worst rel error {worst:.2e}, {elapsed:.2?}"))
}

fn wavefunction_validity() -> Check {
    let (mut norm_worst, mut overlap_worst) = (0.0f64, 0.0f64);
    let (mut order_lo, mut order_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for g2 in SWEEP_GAMMA_SQ {
        for dim in SWEEP_DIMS {
            let m = DimensionlessModel::new(g2, dim).map_err(|e| e.to_string())?;
            for l in 0..=2 {
                let fns = (0..=2)
                    .map(|n| RadialFunction::new(&m, &m.state(n, l)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                for (n, f) in fns.iter().enumerate() {
                    let tag = format!("γ²={g2} N={dim} l={l} n={n}");
                    let norm = f.norm_integral().map_err(|e| e.to_string())?;
                    norm_worst = norm_worst.max((norm - 1.0).abs());
                    ensure((norm - 1.0).abs() <= 1e-8, || format!("{tag}: norm {norm}"))?;
                    for g in &fns[n + 1..] {
                        let o = overlap(f, g).map_err(|e| e.to_string())?.abs();
                        overlap_worst = overlap_worst.max(o);
                        ensure(o <= 1e-8, || format!("{tag}: overlap {o:e}"))?;
                    }
                    let nodes = f.node_count(20_000);
                    ensure(nodes == n, || format!("{tag}: {nodes} nodes"))?;
                    let hi = f.cutoff().min(30.0);
                    let r1 = ode_residual(f, &m, 1e-2, 0.2, hi).map_err(|e| e.to_string())?;
                    let r2 = ode_residual(f, &m, 5e-3, 0.2, hi).map_err(|e| e.to_string())?;
                    let order = (r1 / r2).log2();
                    ensure((1.8..=2.2).contains(&order), || format!("{tag}: residual order {order}"))?;
                    order_lo = order_lo.min(order);
                    order_hi = order_hi.max(order);
                }
            }
        }
    }
    Ok(format!("norm dev {norm_worst:.1e}, overlap {overlap_worst:.1e}, residual order {order_lo:.3}..{order_hi:.3}"))
}

fn dual_normalization() -> Check {
    let mut worst = 0.0f64;
    for g2 in [1.0, 2.0, 10.0] {
        for dim in 2..=5 {
            let m = DimensionlessModel::new(g2, dim).map_err(|e| e.to_string())?;
            for n in 0..=4 {
                for l in 0..=3 {
                    let s = m.state(n, l);
                    let a = RadialFunction::new(&m, &s).map_err(|e| e.to_string())?.norm_constant;
                    let b = ln_normalization_alt(&m, &s).map_err(|e| e.to_string())?.exp();
                    let r = rel(b, a);
                    ensure(r <= 1e-10, || format!("γ²={g2} N={dim} n={n} l={l}: {a} vs {b}"))?;
                    worst = worst.max(r);
                }
            }
        }
    }
    Ok(format!("240 states, worst rel {worst:.1e}"))
}

fn expansion_consistency() -> Check {
    let gammas = [10.0f64, 30.0, 100.0, 300.0];
    let (mut ratio_lo, mut ratio_hi) = (f64::INFINITY, 0.0f64);
    let mut spectro_worst = 0.0f64;
    let mut fast = 0;
    let mut limit_worst = 0.0f64;
    let (mut ratio_states, mut late) = (0, 0);
    for dim in 2..=5 {
        for n in 0..=2 {
            for l in 0..=2 {
                let s = QuantumState::new(n, l, dim).map_err(|e| e.to_string())?;
                let nu = f64::from(n) + 0.5;
                let lsq = s.lambda() * s.lambda();
                // coefficients of the neglected γ⁻⁴ and γ⁻⁵ terms of E/D₀
                let c4 = -(lsq - nu * nu) * (lsq - 5.0 * nu * nu);
                let c5 = 3.75 * nu * lsq * lsq - 10.0 * nu.powi(3) * lsq + 6.0 * nu.powi(5);
                let mut scaled = Vec::new();
                for g in gammas {
                    let m = DimensionlessModel::new(g * g, dim).map_err(|e| e.to_string())?;
                    let exact = bound_energy(&m, &s).map_err(|e| e.to_string())?.energy_dimensionless / (g * g);
                    let series = expand_energy(&m, &s, 3).map_err(|e| e.to_string())?.sum();
                    scaled.push((exact - series) * g.powi(4));

                    // molecular units, r₀ = 1 Å, μ = 1 amu, D₀ chosen for this γ
                    let hb2 = UnitSystem::Molecular.hbar_sq();
                    let d0 = g * g * hb2 / 2.0;
                    let spec =
                        PotentialSpec::kratzer(d0, 1.0, 1.0, UnitSystem::Molecular).map_err(|e| e.to_string())?;
                    let spectro = spectroscopic_energy(&spec, &s).map_err(|e| e.to_string())?;
                    let r = rel(spectro, d0 * series);
                    ensure(r <= 1e-12, || format!("N={dim} n={n} l={l} γ={g}: spectroscopic rel {r:e}"))?;
                    spectro_worst = spectro_worst.max(r);
                }
                let tag = format!("N={dim} n={n} l={l}");
                // bounded: the scaled residual never grows by more than 2 between γ steps
                for w in scaled.windows(2) {
                    ensure(w[1].abs() <= 2.0 * w[0].abs(), || format!("{tag}: scaled residual grows {scaled:?}"))?;
                }
                if c4 == 0.0 {
                    // the γ⁻⁴ term vanishes and the residual falls as γ⁻⁵
                    fast += 1;
                    continue;
                }
                // the γ⁻⁴ term dominates once γ ≫ |c5/c4|
                let onset = 4.0 * (c5 / c4).abs();
                if onset <= gammas[0] {
                    for w in scaled.windows(2) {
                        let ratio = w[1] / w[0];
                        ensure((0.5..=2.0).contains(&ratio), || format!("{tag}: ratios {scaled:?}"))?;
                        ratio_lo = ratio_lo.min(ratio);
                        ratio_hi = ratio_hi.max(ratio);
                    }
                    ratio_states += 1;
                } else {
                    late += 1;
                }
                let g = gammas[3];
                let limit_err = ((scaled[3] - c4 - c5 / g) / c4).abs();
                ensure(limit_err <= 0.1, || format!("{tag}: scaled residual {} vs {c4} + {c5}/γ", scaled[3]))?;
                limit_worst = limit_worst.max(limit_err);
            }
        }
    }
    Ok(format!(
        "{ratio_states} states with ratios {ratio_lo:.3}..{ratio_hi:.3}, {late} reach the γ⁻⁴ regime after γ=10, {fast} have no γ⁻⁴ term; limit within {limit_worst:.1e}; spectroscopic rel {spectro_worst:.1e}"
    ))
}

fn monomial(n: u32, alpha: f64, z: f64) -> (f64, f64) {
    let (mut sum, mut scale) = (0.0, 0.0);
    for k in 0..=n {
        let mut binom = 1.0;
        for j in 1..=(n - k) {
            binom *= (alpha + f64::from(k) + f64::from(j)) / f64::from(j);
        }
        let mut term = binom * z.powi(k as i32);
        for j in 1..=k {
            term /= f64::from(j);
        }
        if k % 2 == 1 {
            term = -term;
        }
        sum += term;
        scale += term.abs();
    }
    (sum, scale)
}

fn special_functions() -> Check {
    let mut lag_worst = 0.0f64;
    let mut kummer_worst = 0.0f64;
    for n in 0..=8 {
        for alpha in [0.0, 0.5, 1.0, 2.37, 4.0, 7.81] {
            let p = LaguerreParams::new(n, alpha).map_err(|e| e.to_string())?;
            let b = binomial_shifted(n, alpha);
            for i in 0..=100 {
                let z = 0.1 * f64::from(i);
                let (sum, scale) = monomial(n, alpha, z);
                let l = laguerre(p, z);
                let e = (l - sum).abs() / scale.max(1.0);
                ensure(e <= 1e-10, || format!("Laguerre n={n} α={alpha} z={z}: {l} vs {sum}"))?;
                lag_worst = lag_worst.max(e);
                let f = kummer_real(-f64::from(n), alpha + 1.0, z, 1e-17).map_err(|e| e.to_string())? * b;
                let e = (f - l).abs() / scale.max(1.0);
                ensure(e <= 1e-10, || format!("Kummer n={n} α={alpha} z={z}: {f} vs {l}"))?;
                kummer_worst = kummer_worst.max(e);
            }
        }
    }
    let mut term_worst = 0.0f64;
    for g2 in [0.5, 1.0, 2.0, 10.0, 100.0] {
        for dim in 2..=5 {
            let m = DimensionlessModel::new(g2, dim).map_err(|e| e.to_string())?;
            for n in 0..=8 {
                for l in 0..=3 {
                    let s = m.state(n, l);
                    let beta = bound_energy(&m, &s).map_err(|e| e.to_string())?.beta;
                    let c = series_coefficients(&m, &s, beta).map_err(|e| e.to_string())?;
                    ensure(c.terminal.abs() <= 1e-12, || {
                        format!("γ²={g2} N={dim} n={n} l={l}: C_n+1 = {:e}", c.terminal)
                    })?;
                    term_worst = term_worst.max(c.terminal.abs());
                }
            }
        }
    }
    Ok(format!("Laguerre {lag_worst:.1e}, Kummer {kummer_worst:.1e}, terminal coefficient {term_worst:.1e}"))
}

fn interdimensional() -> Check {
    let mut analytic = 0;
    for g2 in [0.3, 2.0, 5.0, 25.0, 1234.5] {
        for dim in 2..=8 {
            let lo = DimensionlessModel::new(g2, dim).map_err(|e| e.to_string())?;
            let hi = DimensionlessModel::new(g2, dim + 2).map_err(|e| e.to_string())?;
            for l in 1..=5 {
                for n in 0..=5 {
                    let a = bound_energy(&lo, &lo.state(n, l)).map_err(|e| e.to_string())?.energy_dimensionless;
                    let b = bound_energy(&hi, &hi.state(n, l - 1)).map_err(|e| e.to_string())?.energy_dimensionless;
                    ensure(a.to_bits() == b.to_bits(), || format!("γ²={g2} N={dim} l={l} n={n}: {a} vs {b}"))?;
                    analytic += 1;
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for g2 in SWEEP_GAMMA_SQ {
        for dim in [2, 3] {
            let lo = DimensionlessModel::new(g2, dim).map_err(|e| e.to_string())?;
            let hi = DimensionlessModel::new(g2, dim + 2).map_err(|e| e.to_string())?;
            for l in 1..=2 {
                let a = richardson(&lo, l, Grid::for_states(&lo, l, 2).map_err(|e| e.to_string())?, 3)
                    .map_err(|e| e.to_string())?;
                let b = richardson(&hi, l - 1, Grid::for_states(&hi, l - 1, 2).map_err(|e| e.to_string())?, 3)
                    .map_err(|e| e.to_string())?;
                for (x, y) in a.best().iter().zip(b.best()) {
                    let r = rel(*x, y);
                    ensure(r <= 1e-6, || format!("oracle γ²={g2} N={dim} l={l}: {x} vs {y}"))?;
                    worst = worst.max(r);
                }
            }
        }
    }
    Ok(format!("{analytic} analytic pairs bit-identical, oracle worst rel {worst:.1e}"))
}

const TOY: &str =
    r#"[{"name":"toy","D0":1.0,"D0_unit":"hartree","r0":1.0,"r0_unit":"bohr","mass":1.0,"mass_unit":"me"}]"#;

fn cli_black_box() -> Check {
    let dir = std::env::temp_dir().join(format!("mie-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = dir.join("toy.json");
    std::fs::write(&file, TOY).map_err(|e| e.to_string())?;
    let path = file.to_str().unwrap();
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_mie")).args(args).output().expect("binary runs");

    let pass = run(&["verify", "--molecule-file", path, "--nmax", "1", "--lmax", "1", "--tolerance", "1e-5"]);
    ensure(pass.status.code() == Some(0), || format!("verify at 1e-5 exited {:?}", pass.status.code()))?;
    let fail = run(&["verify", "--molecule-file", path, "--tolerance", "1e-15"]);
    ensure(fail.status.code() == Some(1), || format!("verify at 1e-15 exited {:?}", fail.status.code()))?;
    let usage = run(&["spectrum", "--molecule-file", path, "--dim", "1"]);
    ensure(usage.status.code() == Some(2), || format!("bad --dim exited {:?}", usage.status.code()))?;
    let numerical = run(&["wavefunction", "--gamma-sq", "1", "--n", "10000", "--points", "5"]);
    ensure(numerical.status.code() == Some(3), || {
        format!("overflowing wavefunction exited {:?}", numerical.status.code())
    })?;

    let json = run(&["spectrum", "--molecule-file", path, "--nmax", "3", "--lmax", "2", "--format", "json"]);
    ensure(json.status.code() == Some(0), || "json spectrum failed".into())?;
    let parsed: SpectrumTable = serde_json::from_slice(&json.stdout).map_err(|e| e.to_string())?;
    let record = parse_molecules(TOY).map_err(|e| e.to_string())?.molecules.remove(0);
    let problem = Problem::from_molecule(record, None, false).map_err(|e| e.to_string())?;
    let expected = spectrum(&problem, 3, 2).map_err(|e| e.to_string())?;
    ensure(parsed == expected, || "JSON round trip differs".into())?;
    let bits = |t: &SpectrumTable| -> Vec<u64> {
        t.rows
            .iter()
            .flat_map(|r| [r.e_exact, r.e_dimensionless, r.beta, r.q, r.e_expand3.unwrap_or(0.0)])
            .map(f64::to_bits)
            .collect()
    };
    ensure(bits(&parsed) == bits(&expected), || "JSON round trip not bit-exact".into())?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok("exit codes 0/1/2/3, JSON round trip bit-exact, toy verify PASS at 1e-5".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("hydrogen limit", hydrogen_limit),
        ("oracle agreement", oracle_agreement),
        ("wavefunction validity", wavefunction_validity),
        ("dual normalization", dual_normalization),
        ("expansion consistency", expansion_consistency),
        ("special-function kernel", special_functions),
        ("interdimensional degeneracy", interdimensional),
        ("CLI black box", cli_black_box),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[{}/8] {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failures += 1;
                println!("[{}/8] {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {}/8 passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
