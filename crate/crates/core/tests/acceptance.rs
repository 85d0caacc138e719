//! The acceptance suite: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use e3sov::classical_phase::{build_phase_map, orbit_and_hamiltonians, verify_e3_brackets, OrbitParams};
use e3sov::e3_representation::{build_generators, commutator_records};
use e3sov::numeric_lab::{
    flow_commutativity, inner_product_probe, inner_product_value, integrate_flow, order_test, FlowSystem, Hamiltonian,
    QuadratureSpec,
};
use e3sov::reports::random_initial_states;
use e3sov::verma_module::{
    factorial, generate_verma, laguerre_product_identity, printed_product_normalization, quantization_condition,
    shapovalov_check, submodule_is_invariant, verify_p_actions, verify_sl2_actions, whittaker_residual, ActionError,
    Quantization, QuantizationError,
};
use e3sov::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_classical_brackets() -> Outcome {
    let samples = OrbitParams::samples();
    ensure(samples.len() >= 6 && samples.iter().any(|o| o.is_degenerate()), || "sample set too small".into())?;
    let mut signs = Vec::new();
    for o in &samples {
        let rep = verify_e3_brackets(&build_phase_map(o)).map_err(|e| format!("({}, {}): {e}", o.c0, o.c1))?;
        ensure(rep.residuals.len() == 15, || format!("{} brackets", rep.residuals.len()))?;
        ensure(rep.all_zero(), || format!("nonzero bracket residual at ({}, {})", o.c0, o.c1))?;
        signs.push(rep.sign);
    }
    ensure(signs.iter().all(|s| *s == signs[0]), || format!("sign not global: {signs:?}"))?;
    Ok(format!("15 brackets exact on {} samples, sigma = {:+}", samples.len(), signs[0]))
}

fn c2_orbit_identities() -> Outcome {
    let samples = OrbitParams::samples();
    let mut kappas = Vec::new();
    for o in &samples {
        let ids = orbit_and_hamiltonians(&build_phase_map(o));
        let at = || format!("({}, {})", o.c0, o.c1);
        ensure(ids.sphere_residual.is_zero(), || format!("p^2 - c0 at {}", at()))?;
        ensure(ids.plane_residual.is_zero(), || format!("(p,L) - c1/2 at {}", at()))?;
        ensure(ids.h3_residual.is_zero(), || format!("h3 - L3 at {}", at()))?;
        let kappa = ids.normalization.clone().ok_or_else(|| format!("no uniform trace factor at {}", at()))?;
        ensure(ids.normalized_trace_holds(), || format!("normalized trace residual at {}", at()))?;
        kappas.push(kappa);
    }
    let two = Scalar::from_int(2);
    ensure(kappas.iter().all(|k| *k == two), || format!("trace factor not 2: {kappas:?}"))?;
    Ok(format!(
        "orbit, h3 and all 5 trace coefficients exact on {} samples; -Tr L^2 = 2 x (z^4/4 + ...) uniformly",
        samples.len()
    ))
}

fn c3_quantum_commutators() -> Outcome {
    let samples = OrbitParams::samples();
    for o in &samples {
        let g = build_generators(o);
        let recs = commutator_records(&g);
        ensure(recs.len() == 10, || format!("{} records", recs.len()))?;
        if let Some(bad) = recs.iter().find(|r| !r.holds()) {
            return Err(format!("{} fails at ({}, {}): {}", bad.relation, o.c0, o.c1, bad.residual.render()));
        }
        ensure(g.h3 == g.l3, || format!("h3 != L3 at ({}, {})", o.c0, o.c1))?;
    }
    Ok(format!("10 relations and h3 = L3 exact on {} samples", samples.len()))
}

fn c4_verma_construction() -> Outcome {
    let mut count = 0;
    for j in 0..=5u32 {
        for a in [Scalar::from_int(0), Scalar::from_int(1), Scalar::ratio(3, 2)] {
            let basis = generate_verma(j, &a, 2 * j + 2).map_err(|e| format!("J={j} a={a}: {e}"))?;
            ensure(basis.len() == 2 * j as usize + 3, || "short basis".into())?;
            ensure(submodule_is_invariant(j, &a), || format!("L+ f(J,-J-1) != 0 at J={j} a={a}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} modules generated to m = -J-2; submodule invariant"))
}

fn c5_action_tables() -> Outcome {
    let mut checked = 0;
    let mut skipped = Vec::new();
    for j in 0..=4u32 {
        let ms: Vec<i64> = (-(j as i64)..=j as i64).collect();
        for a in [Scalar::from_int(0), Scalar::from_int(1), Scalar::ratio(1, 2)] {
            verify_sl2_actions(j, &a, &ms).map_err(|e| e.to_string())?;
            match verify_p_actions(j, &a, &ms) {
                Ok(rs) => checked += rs.len(),
                Err(ActionError::GenericAtZero) => skipped.push(format!("J=0 a={a}")),
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    for j in 0..=6u32 {
        for m in -(j as i64)..j as i64 {
            ensure(shapovalov_check(j, m), || format!("shapovalov fails at J={j} m={m}"))?;
        }
    }
    Ok(format!(
        "sl2 exact; {checked} p-table entries exact; shapovalov J <= 6; generic tables undefined at {}",
        skipped.join(", ")
    ))
}

fn c6_special_functions() -> Outcome {
    let mut alphas: Vec<Scalar> = (0..=4).map(|j| Scalar::from_int(-2 * j - 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        alphas.push(Scalar::ratio(rng.gen_range(-50..50), rng.gen_range(1..13)));
    }
    for alpha in &alphas {
        for n in 0..=8u32 {
            laguerre_product_identity(n, alpha).map_err(|e| e.to_string())?;
            ensure(printed_product_normalization(n, alpha) == Some(factorial(n)), || {
                format!("printed sum is not n! x lhs at n={n}, alpha={alpha}")
            })?;
        }
    }
    let one = Scalar::from_int(1);
    let mut cases = 0;
    for m in [Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(-2), Scalar::ratio(5, 2), Scalar::ratio(-1, 3)] {
        for a in [Scalar::from_int(0), Scalar::from_int(2), Scalar::ratio(-3, 4), Scalar::complex(1, 2, 1, 1)] {
            let c = &(&m * &(&m + &one)) + &a;
            let c0 = &a * &a;
            let c1 = &a.scale_int(2) * &(&m + &one);
            ensure(whittaker_residual(&m, &c, &c0, &c1, &a).is_zero(), || format!("residual at m={m} a={a}"))?;
            for (name, (x, y, z)) in [
                ("C", (&c + &one, c0.clone(), c1.clone())),
                ("c0", (c.clone(), &c0 + &one, c1.clone())),
                ("c1", (c.clone(), c0.clone(), &c1 + &one)),
            ] {
                ensure(!whittaker_residual(&m, &x, &y, &z, &a).is_zero(), || {
                    format!("perturbing {name} leaves zero residual at m={m} a={a}")
                })?;
            }
            cases += 1;
        }
    }
    Ok(format!(
        "product formula (sum / n!) exact for n <= 8 on {} alphas, printed sum = n! x lhs; Whittaker iff-test on {cases} (m, a)",
        alphas.len()
    ))
}

fn c7_quantization() -> Outcome {
    let a_values = [
        Scalar::from_int(1),
        Scalar::ratio(1, 2),
        Scalar::ratio(3, 2),
        Scalar::from_int(2),
        Scalar::ratio(7, 3),
    ];
    let mut pairs = 0;
    for (k, a) in a_values.iter().enumerate() {
        for step in 0..4u32 {
            let j = step * 2 + k as u32 % 2;
            let o = OrbitParams::quantized(a.clone(), j);
            match quantization_condition(&o.c0, &o.c1) {
                Ok(Quantization::Level { j: got, a: root }) if got == j && root == *a => pairs += 1,
                other => return Err(format!("a={a} J={j}: {other:?}")),
            }
            let off = &o.c1 + a;
            match quantization_condition(&o.c0, &off) {
                Err(QuantizationError::NotQuantizable { .. }) => {}
                other => return Err(format!("half-integer case accepted: a={a} J={j}: {other:?}")),
            }
        }
    }
    ensure(pairs == 20, || format!("{pairs} pairs"))?;
    ensure(
        matches!(quantization_condition(&Scalar::from_int(2), &Scalar::from_int(4)), Err(QuantizationError::IrrationalRoot { .. })),
        || "irrational root accepted".into(),
    )?;
    Ok("20 (a, J) pairs recovered; shifted c1 and irrational sqrt(c0) rejected".into())
}

fn c8_dynamics() -> Outcome {
    let sys = FlowSystem::new(&OrbitParams::new(Scalar::ratio(1, 4), Scalar::ratio(3, 2)));
    let states = random_initial_states(1, 10);
    let mut drift_fail = Vec::new();
    let mut worst = [0.0f64; 2];
    for (i, s) in states.iter().enumerate() {
        for (k, h) in [Hamiltonian::H2, Hamiltonian::H3].into_iter().enumerate() {
            let d = integrate_flow(&sys, h, s, 1.0, 1e-3, None).map_err(|e| format!("state {i} {}: {e}", h.name()))?;
            let w = d.report.worst();
            worst[k] = worst[k].max(w);
            if w > 1e-8 {
                drift_fail.push(format!("{}#{i}={w:.1e}", h.name()));
            }
        }
    }
    let mut ratio_range = (f64::INFINITY, 0.0f64);
    let mut order_fail = Vec::new();
    let mut comm_worst = 0.0f64;
    for (i, s) in states.iter().enumerate() {
        let o = order_test(&sys, Hamiltonian::H3, s, 1.0, &[0.01, 0.005, 0.0025]).map_err(|e| e.to_string())?;
        for r in &o.ratios {
            ratio_range = (ratio_range.0.min(*r), ratio_range.1.max(*r));
            if !(8.0..=32.0).contains(r) {
                order_fail.push(format!("#{i}={r:.1}"));
            }
        }
        let c = flow_commutativity(&sys, Hamiltonian::H2, Hamiltonian::H3, s, 0.1, 1e-4).map_err(|e| e.to_string())?;
        comm_worst = comm_worst.max(c);
    }
    let detail = format!(
        "max drift h2 {:.1e}, h3 {:.1e}; order ratios in [{:.1}, {:.1}]; commutator {:.1e}",
        worst[0], worst[1], ratio_range.0, ratio_range.1, comm_worst
    );
    if drift_fail.is_empty() && order_fail.is_empty() && comm_worst <= 1e-6 {
        Ok(detail)
    } else {
        Err(format!(
            "{detail}; drift > 1e-8: [{}]; order outside [8,32]: [{}]",
            drift_fail.join(", "),
            order_fail.join(", ")
        ))
    }
}

fn c9_inner_product() -> Outcome {
    let ladder = [1e-3, 1e-4, 1e-5];
    let mut exps = Vec::new();
    for j in 1..=3u32 {
        let spec = QuadratureSpec::new(j, j as i64, j as i64, Scalar::from_int(0));
        let r = inner_product_probe(&spec, &ladder).map_err(|e| e.to_string())?;
        let target = -(j as f64);
        ensure((r.divergence_exponent - target).abs() <= 0.1 * j as f64, || {
            format!("J={j}: exponent {:.4}", r.divergence_exponent)
        })?;
        exps.push(format!("J={j}: {:.4}", r.divergence_exponent));
    }
    let mut sym = 0.0f64;
    for a in [Scalar::from_int(0), Scalar::ratio(1, 2)] {
        for (m, n) in [(2, 1), (1, -2), (0, 2), (2, -2)] {
            let s = QuadratureSpec::new(2, m, n, a.clone()).with_epsilon(1e-2);
            let t = QuadratureSpec { m: n, n: m, ..s.clone() };
            let x = inner_product_value(&s).map_err(|e| e.to_string())?;
            let y = inner_product_value(&t).map_err(|e| e.to_string())?;
            sym = sym.max((x - y.conj()).norm() / x.norm().max(1.0));
        }
    }
    ensure(sym <= 1e-10, || format!("conjugate symmetry residual {sym:e}"))?;
    Ok(format!("per-variable exponents {}; conjugate symmetry {sym:.1e}", exps.join(", ")))
}

fn c10_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_e3sov"))
            .args(["all", "--jobs", "1", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(!a.stdout.is_empty(), || "empty report".into())?;
    ensure(a.stdout == b.stdout, || "reports differ between runs".into())?;
    let lines = a.stdout.iter().filter(|c| **c == b'\n').count();
    Ok(format!("{lines} JSON lines, byte-identical across two runs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 10] = [
        ("classical e(3) brackets", Some(60), c1_classical_brackets),
        ("orbit and Hamiltonian identities", Some(30), c2_orbit_identities),
        ("quantum commutators", Some(120), c3_quantum_commutators),
        ("Verma construction", Some(180), c4_verma_construction),
        ("action tables", None, c5_action_tables),
        ("special-function identities", None, c6_special_functions),
        ("quantization condition", Some(1), c7_quantization),
        ("dynamics", None, c8_dynamics),
        ("inner-product probe", None, c9_inner_product),
        ("determinism", None, c10_determinism),
    ];
    let mut failed = 0;
    for (k, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let took = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, budget) {
            if took > Duration::from_secs(*limit) {
                outcome = Err(format!("{detail}; took {:.1}s > {limit}s", took.as_secs_f64()));
            }
        }
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} ({:.2}s): {detail}", k + 1, took.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
