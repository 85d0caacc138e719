use e3sov::classical_phase::OrbitParams;
use e3sov::numeric_lab::*;
use e3sov::Scalar;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_states(seed: u64, count: usize) -> Vec<FlowState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut pick = |lo: f64, hi: f64| c(rng.gen_range(lo..hi), rng.gen_range(-0.3..0.3));
            FlowState::new([pick(1.0, 1.8), pick(2.4, 3.2)], [pick(-0.4, 0.4), pick(-0.4, 0.4)])
        })
        .collect()
}

fn system() -> FlowSystem {
    FlowSystem::new(&OrbitParams::new(Scalar::ratio(1, 4), Scalar::ratio(3, 2)))
}

#[test]
fn h3_flow_conserves_all_invariants() {
    let sys = system();
    for s in random_states(7, 10) {
        let tr = integrate_flow(&sys, Hamiltonian::H3, &s, 1.0, 1e-3, None).unwrap();
        let d = tr.report.max_rel_drift;
        assert!(d[3] < 1e-10, "self drift {d:?}");
        assert!(d[0] <= 1e-8 && d[1] <= 1e-8 && d[2] <= 1e-8, "drift {d:?}");
        assert_eq!(tr.report.steps, 1000);
    }
}

/// Half the horizon of the h3 test: some h2 trajectories pass close to a
/// pole of the complex-time solution before t = 1.
#[test]
fn h2_flow_conserves_all_invariants_over_half_unit() {
    let sys = system();
    for s in random_states(8, 5) {
        let tr = integrate_flow(&sys, Hamiltonian::H2, &s, 0.5, 1e-3, None).unwrap();
        assert!(tr.report.worst() <= 1e-8, "{:?}", tr.report);
    }
}

#[test]
fn rk4_drift_is_fourth_order() {
    let sys = system();
    for s in random_states(9, 4) {
        let o = order_test(&sys, Hamiltonian::H3, &s, 1.0, &[0.01, 0.005, 0.0025]).unwrap();
        for r in &o.ratios {
            assert!((8.0..=32.0).contains(r), "{o:?}");
        }
    }
}

#[test]
fn exact_gradient_matches_finite_differences() {
    let sys = system();
    let h = 1e-5;
    for which in [Hamiltonian::H2, Hamiltonian::H3] {
        let field = sys.field(which);
        let hamiltonian = e3sov::exact_algebra::CompiledExpr::new(&match which {
            Hamiltonian::H2 => sys.map.h2(),
            Hamiltonian::H3 => sys.map.h3(),
        });
        for s in random_states(10, 5) {
            let x = s.as_array();
            let g = field.gradient(&x).unwrap();
            for k in 0..4 {
                let mut xp = x;
                let mut xm = x;
                xp[k] += h;
                xm[k] -= h;
                let fd = (hamiltonian.eval(&xp).unwrap() - hamiltonian.eval(&xm).unwrap()) / (2.0 * h);
                assert!((fd - g[k]).norm() <= 1e-6 * g[k].norm().max(1.0), "k={k}: {fd} vs {}", g[k]);
            }
        }
    }
}

#[test]
fn invariants_stay_on_the_spectral_curve_along_trajectory() {
    let sys = system();
    let s = random_states(11, 1)[0];
    let tr = integrate_flow(&sys, Hamiltonian::H3, &s, 1.0, 1e-3, Some(50)).unwrap();
    assert_eq!(tr.states.len(), 21);
    let h0 = tr.invariants[0];
    for h in &tr.invariants {
        for k in 0..4 {
            assert!((h[k] - h0[k]).norm() <= 1e-7 * h0[k].norm().max(1.0));
        }
    }
}

#[test]
fn commuting_flows() {
    let sys = system();
    for s in random_states(12, 3) {
        let r = flow_commutativity(&sys, Hamiltonian::H2, Hamiltonian::H3, &s, 0.1, 1e-4).unwrap();
        assert!(r <= 1e-6, "residual {r}");
        assert_eq!(flow_commutativity(&sys, Hamiltonian::H2, Hamiltonian::H3, &s, 0.0, 1e-4).unwrap(), 0.0);
        assert_eq!(flow_commutativity(&sys, Hamiltonian::H2, Hamiltonian::H2, &s, 0.1, 1e-3).unwrap(), 0.0);
    }
}

#[test]
fn singular_initial_state_is_rejected() {
    let sys = system();
    let s = FlowState::new([c(1.0, 0.0), c(1.0, 0.0)], [c(0.1, 0.0), c(0.2, 0.0)]);
    match integrate_flow(&sys, Hamiltonian::H3, &s, 1.0, 1e-2, None) {
        Err(FlowError::SingularityHit { partial, .. }) => assert_eq!(partial.steps, 0),
        other => panic!("expected SingularityHit, got {other:?}"),
    }
    let s = FlowState::new([c(0.0, 0.0), c(2.0, 0.0)], [c(0.1, 0.0), c(0.2, 0.0)]);
    assert!(matches!(
        integrate_flow(&sys, Hamiltonian::H2, &s, 1.0, 1e-2, None),
        Err(FlowError::SingularityHit { .. })
    ));
}

#[test]
fn trajectory_runs_are_bitwise_reproducible() {
    let sys = system();
    let s = random_states(13, 1)[0];
    let a = integrate_flow(&sys, Hamiltonian::H3, &s, 0.2, 1e-3, Some(10)).unwrap();
    let b = integrate_flow(&sys, Hamiltonian::H3, &s, 0.2, 1e-3, Some(10)).unwrap();
    let mut ca = Vec::new();
    let mut cb = Vec::new();
    a.write_csv(&mut ca).unwrap();
    b.write_csv(&mut cb).unwrap();
    assert_eq!(ca, cb);
    let text = String::from_utf8(ca).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header.split(',').count(), 17);
    assert!(header.starts_with("t,re_z1,im_z1"));
    assert_eq!(lines.count(), 21);
}

/// `E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k/(k·k!)`, for small `x`.
fn exp_integral_e1(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..60 {
        term *= -x / k as f64;
        sum += term / k as f64;
    }
    -0.577_215_664_901_532_9 - x.ln() - sum
}

/// `∫_ε^∞ z^{-3} e^{-z} dz = e^{-ε}(1/(2ε²) - 1/(2ε)) + E1(ε)/2`.
fn cubic_tail(eps: f64) -> f64 {
    (-eps).exp() * (0.5 / (eps * eps) - 0.5 / eps) + 0.5 * exp_integral_e1(eps)
}

#[test]
fn diagonal_j2_matches_separable_oracle() {
    for eps in [1e-2, 1e-3] {
        let spec = QuadratureSpec::new(2, 2, 2, Scalar::from_int(0)).with_epsilon(eps);
        let v = inner_product_value(&spec).unwrap();
        let oracle = cubic_tail(eps).powi(2);
        assert!((v.re - oracle).abs() <= 1e-6 * oracle, "{v} vs {oracle}");
        assert_eq!(v.im, 0.0);
    }
}

#[test]
fn diagonal_j0_matches_log_oracle_and_is_flagged() {
    let eps = 1e-3;
    let v = inner_product_value(&QuadratureSpec::new(0, 0, 0, Scalar::from_int(0)).with_epsilon(eps)).unwrap();
    let oracle = exp_integral_e1(eps).powi(2);
    assert!((v.re - oracle).abs() <= 1e-6 * oracle, "{v} vs {oracle}");
    let r = inner_product_probe(&QuadratureSpec::new(0, 0, 0, Scalar::from_int(0)), &geometric_ladder(1e-3, 0.1, 3))
        .unwrap();
    assert!(r.log_divergent);
    assert!(r.total_slope.abs() < 0.5);
}

#[test]
fn diagonal_exponent_is_minus_j() {
    for j in 1..=3u32 {
        let spec = QuadratureSpec::new(j, j as i64, j as i64, Scalar::from_int(0));
        let r = inner_product_probe(&spec, &geometric_ladder(1e-3, 0.1, 3)).unwrap();
        let target = -(j as f64);
        assert!((r.divergence_exponent - target).abs() <= 0.1 * j as f64, "{r:?}");
        assert!(!r.log_divergent);
        for v in r.values() {
            assert!(v.re > 0.0 && v.im.abs() <= 1e-10 * v.re);
        }
    }
}

#[test]
fn pairing_is_hermitian() {
    for a in [Scalar::from_int(0), Scalar::ratio(1, 2)] {
        for (m, n) in [(2, 1), (1, -1), (0, -2), (2, -2)] {
            let s = QuadratureSpec::new(2, m, n, a.clone()).with_epsilon(1e-2);
            let t = QuadratureSpec::new(2, n, m, a.clone()).with_epsilon(1e-2);
            let (x, y) = (inner_product_value(&s).unwrap(), inner_product_value(&t).unwrap());
            assert!((x - y.conj()).norm() <= 1e-10 * x.norm().max(1.0), "{x} vs {y}");
        }
    }
}

#[test]
fn generic_weight_diagonal_is_real_positive() {
    let s = QuadratureSpec::new(1, 0, 0, Scalar::ratio(1, 2)).with_epsilon(1e-2);
    let v = inner_product_value(&s).unwrap();
    assert!(v.re > 0.0 && v.im.abs() <= 1e-10 * v.re);
}

#[test]
fn invalid_specs_are_rejected() {
    let base = QuadratureSpec::new(1, 1, 1, Scalar::from_int(0));
    for bad in [
        base.with_epsilon(0.0),
        base.with_epsilon(100.0),
        QuadratureSpec { nodes: 8, ..base.clone() },
        QuadratureSpec { m: 2, ..base.clone() },
    ] {
        assert!(matches!(inner_product_value(&bad), Err(QuadratureError::InvalidSpec(_))));
    }
    assert!(matches!(inner_product_probe(&base, &[1e-3, 1e-2]), Err(QuadratureError::InvalidSpec(_))));
}
