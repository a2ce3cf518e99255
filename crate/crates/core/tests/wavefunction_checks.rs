use mie_core::wavefunction::{ln_normalization_alt, ode_residual, overlap};
use mie_core::{DimensionlessModel, RadialFunction};

#[test]
fn normalized_orthogonal_with_n_nodes() {
    for g2 in [1.0, 2.0, 20.0] {
        for dim in [2, 3, 5] {
            let m = DimensionlessModel::new(g2, dim).unwrap();
            for l in 0..3 {
                let fns: Vec<RadialFunction> =
                    (0..4).map(|n| RadialFunction::new(&m, &m.state(n, l)).unwrap()).collect();
                for (i, f) in fns.iter().enumerate() {
                    let norm = f.norm_integral().unwrap();
                    assert!((norm - 1.0).abs() < 1e-8, "g2={g2} N={dim} l={l} n={i}: {norm}");
                    assert_eq!(f.node_count(20_000), i);
                    for g in &fns[i + 1..] {
                        assert!(overlap(f, g).unwrap().abs() < 1e-8);
                    }
                }
            }
        }
    }
}

#[test]
fn normalization_forms_agree() {
    for g2 in [0.7, 2.0, 40.0] {
        for dim in [2, 3, 6] {
            let m = DimensionlessModel::new(g2, dim).unwrap();
            for (n, l) in [(0, 0), (2, 1), (5, 2)] {
                let s = m.state(n, l);
                let a = RadialFunction::new(&m, &s).unwrap().ln_norm();
                let b = ln_normalization_alt(&m, &s).unwrap();
                assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn ode_residual_is_second_order() {
    for g2 in [2.0, 9.0] {
        for dim in [2, 3, 4] {
            let m = DimensionlessModel::new(g2, dim).unwrap();
            for (n, l) in [(0, 0), (1, 1), (3, 2)] {
                let rf = RadialFunction::new(&m, &m.state(n, l)).unwrap();
                let hi = rf.cutoff().min(30.0);
                let r1 = ode_residual(&rf, &m, 1e-2, 0.2, hi).unwrap();
                let r2 = ode_residual(&rf, &m, 5e-3, 0.2, hi).unwrap();
                let order = (r1 / r2).log2();
                assert!((1.8..=2.2).contains(&order), "g2={g2} N={dim} n={n} l={l}: {order}");
            }
        }
    }
}
