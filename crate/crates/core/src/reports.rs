//! Machine-readable check records and the suites behind each subcommand.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classical_phase::{
    build_phase_map, orbit_and_hamiltonians, reconstruct, separation_roundtrip, spectral_curve_residual_expr,
    verify_e3_brackets, OrbitParams, SeparationPoint,
};
use crate::diff_ops::apply;
use crate::e3_representation::{
    build_generators, casimir_report, commutator_records, generators_well_formed, h2_difference_operator,
};
use crate::exact_algebra::{RationalExpr, Scalar, Var};
use crate::numeric_lab::{
    flow_commutativity, inner_product_probe, inner_product_value, integrate_flow, order_test, FlowState, FlowSystem,
    Hamiltonian, QuadratureSpec,
};
use crate::verma_module::{
    closed_form_f, generate_verma, generators_for, laguerre_product_identity, p_records, printed_product_normalization,
    quantization_condition, separation_expansion, shapovalov_check, sl2_records, submodule_image, whittaker_residual,
    ActionError, Quantization, SeparationExpansion, VermaLabel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ReportOnly => "report-only",
        }
    }
}

pub type Params = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub params: Params,
    pub status: Status,
    pub witness: String,
    pub duration_ms: u64,
}

impl CheckReport {
    pub fn new(check_name: &str, params: Params, status: Status, witness: impl Into<String>) -> Self {
        let mut witness = witness.into();
        if status == Status::Fail && witness.is_empty() {
            witness = "failed".into();
        }
        CheckReport { check_name: check_name.into(), params, status, witness, duration_ms: 0 }
    }

    /// Pass when `ok`, otherwise fail.
    pub fn check(check_name: &str, params: Params, ok: bool, witness: impl Into<String>) -> Self {
        Self::new(check_name, params, if ok { Status::Pass } else { Status::Fail }, witness)
    }

    pub fn report_only(check_name: &str, params: Params, witness: impl Into<String>) -> Self {
        Self::new(check_name, params, Status::ReportOnly, witness)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn with(base: &Params, key: &str, value: String) -> Params {
    let mut p = base.clone();
    p.insert(key.into(), value);
    p
}

fn one_line(s: &str) -> String {
    s.trim_end().replace('\n', "; ")
}

fn fmt_f(x: f64) -> String {
    format!("{x:.6e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; 1 runs everything on the calling thread.
    pub jobs: usize,
    /// Record wall-clock durations; otherwise `duration_ms` is 0.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { jobs: 1, timing: false }
    }
}

pub type Task = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>;

fn run_task(task: &Task, timing: bool) -> Vec<CheckReport> {
    let start = Instant::now();
    let mut out = task();
    if timing {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut out {
            r.duration_ms = ms;
        }
    }
    out
}

/// Runs independent tasks and returns their reports in canonical order.
pub fn run_tasks(tasks: Vec<Task>, opts: RunOptions) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = if opts.jobs <= 1 {
        tasks.iter().flat_map(|t| run_task(t, opts.timing)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool");
        pool.install(|| tasks.par_iter().flat_map_iter(|t| run_task(t, opts.timing)).collect())
    };
    sort_canonical(&mut out);
    out
}

pub fn sort_canonical(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| (&a.check_name, &a.params).cmp(&(&b.check_name, &b.params)));
}

/// True when some check failed; report-only records never count.
pub fn any_failed(reports: &[CheckReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

pub fn render_json_lines(reports: &[CheckReport]) -> String {
    reports.iter().map(|r| r.to_json() + "\n").collect()
}

pub fn render_table(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let p: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("{:<12} {:<28} {:<40} {}\n", r.status.as_str(), r.check_name, p.join(" "), r.witness));
    }
    out
}

fn orbit_params(o: &OrbitParams) -> Params {
    params([("c0", o.c0.to_string()), ("c1", o.c1.to_string())])
}

fn exprs_witness(rs: &[RationalExpr]) -> String {
    rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

// ---------------------------------------------------------------- classical

/// Poisson brackets, orbit and Hamiltonian identities, the trace expansion,
/// the spectral curve and a numerical round trip for one orbit.
pub fn classical_checks(orbit: &OrbitParams, seed: u64) -> Vec<CheckReport> {
    let base = orbit_params(orbit);
    let map = build_phase_map(orbit);
    let mut out = Vec::new();

    out.push(match verify_e3_brackets(&map) {
        Ok(rep) => {
            let bad: Vec<String> =
                rep.residuals.iter().filter(|r| !r.residual.is_zero()).map(|r| r.relation.clone()).collect();
            let ok = rep.all_zero() && rep.residuals.len() == 15;
            let witness =
                if ok { format!("sigma={:+}; 15 brackets zero", rep.sign) } else { format!("nonzero: {}", bad.join(", ")) };
            CheckReport::check("classical.poisson_brackets", base.clone(), ok, witness)
        }
        Err(e) => CheckReport::check("classical.poisson_brackets", base.clone(), false, e.to_string()),
    });

    let ids = orbit_and_hamiltonians(&map);
    let exact = |name: &str, r: &RationalExpr| CheckReport::check(name, base.clone(), r.is_zero(), r.to_string());
    out.push(exact("classical.orbit_sphere", &ids.sphere_residual));
    out.push(exact("classical.orbit_plane", &ids.plane_residual));
    out.push(exact("classical.h3_equals_l3", &ids.h3_residual));
    let kappa = ids.normalization.as_ref().map(|k| k.to_string()).unwrap_or_else(|| "none".into());
    out.push(CheckReport::check(
        "classical.trace_expansion",
        base.clone(),
        ids.normalized_trace_holds(),
        format!("kappa={kappa}; residuals [{}]", exprs_witness(&ids.normalized_residuals)),
    ));
    out.push(CheckReport::report_only(
        "classical.trace_expansion_literal",
        base.clone(),
        format!("residuals [{}]", exprs_witness(&ids.literal_residuals)),
    ));

    let (z, w) = (RationalExpr::var(Var::Z1), RationalExpr::var(Var::W1));
    let curve = spectral_curve_residual_expr(&z, &w, orbit, &ids.h[2], &ids.h[3]);
    out.push(exact("classical.spectral_curve", &curve));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut err = None;
    for _ in 0..20 {
        let mut c = |lo: f64, hi: f64| Complex64::new(rng.gen_range(lo..hi), rng.gen_range(-0.5..0.5));
        let sep = SeparationPoint { z: [c(0.5, 1.5), c(2.0, 3.0)], w: [c(-1.0, 1.0), c(-1.0, 1.0)] };
        match reconstruct(&map, &sep).and_then(|pt| separation_roundtrip(&map, &pt)) {
            Ok(rt) => worst = worst.max(rt.rel_error),
            Err(e) => err = Some(e.to_string()),
        }
    }
    let rt_params = with(&base, "points", "20".into());
    out.push(match err {
        Some(e) => CheckReport::check("classical.separation_roundtrip", rt_params, false, e),
        None => CheckReport::check("classical.separation_roundtrip", rt_params, worst <= 1e-9, fmt_f(worst)),
    });
    out
}

pub fn classical_tasks(orbits: &[OrbitParams], seed: u64) -> Vec<Task> {
    orbits
        .iter()
        .cloned()
        .map(|o| Box::new(move || classical_checks(&o, seed)) as Task)
        .collect()
}

// -------------------------------------------------------------- commutators

/// A small basis for the Casimir report when the orbit is quantizable.
fn casimir_basis(orbit: &OrbitParams) -> Option<(u32, Scalar)> {
    match quantization_condition(&orbit.c0, &orbit.c1) {
        Ok(Quantization::Level { j, a }) => Some((j, a)),
        Ok(Quantization::Degenerate) => Some((1, Scalar::from_int(0))),
        Err(_) => None,
    }
}

pub fn commutator_checks(orbit: &OrbitParams) -> Vec<CheckReport> {
    let base = orbit_params(orbit);
    let g = build_generators(orbit);
    let mut out: Vec<CheckReport> = commutator_records(&g)
        .into_iter()
        .map(|r| {
            let witness = if r.holds() { "0".to_string() } else { one_line(&r.residual.render()) };
            CheckReport::check("e3.relation", with(&base, "relation", r.relation.clone()), r.holds(), witness)
        })
        .collect();
    out.push(CheckReport::check("e3.generators_well_formed", base.clone(), generators_well_formed(&g), ""));
    out.push(CheckReport::report_only(
        "e3.h2_difference",
        base.clone(),
        one_line(&h2_difference_operator(&g).render()),
    ));
    out.push(match casimir_basis(orbit) {
        Some((j, a)) => {
            let basis = generate_verma(j, &a, 2 * j).unwrap_or_default();
            let rep = casimir_report(&g, &basis);
            let show = |x: &Option<Scalar>| x.as_ref().map(|s| s.to_string()).unwrap_or_else(|| "none".into());
            let first = rep.entries.first();
            let witness = format!(
                "J={j}; consistent={}; p^2={}; p.L={}",
                rep.consistent(),
                first.map(|e| show(&e.p_squared)).unwrap_or_default(),
                first.map(|e| show(&e.p_dot_l)).unwrap_or_default()
            );
            CheckReport::report_only("e3.casimirs", base, witness)
        }
        None => CheckReport::report_only("e3.casimirs", base, "orbit not quantizable; no basis"),
    });
    out
}

pub fn commutator_tasks(orbits: &[OrbitParams]) -> Vec<Task> {
    orbits.iter().cloned().map(|o| Box::new(move || commutator_checks(&o)) as Task).collect()
}

// -------------------------------------------------------------------- verma

/// Repeated lowering from `f_JJ` compared with the closed form at each level.
pub fn verma_checks(j: u32, a: &Scalar, depth: u32) -> Vec<CheckReport> {
    let base = params([("J", j.to_string()), ("a", a.to_string())]);
    let g = generators_for(j, a);
    let mut cur = closed_form_f(&VermaLabel::new(j, j as i64, a.clone()));
    let mut out = vec![CheckReport::check("verma.level", with(&base, "m", j.to_string()), true, cur.prefactor.to_string())];
    for level in 1..=depth {
        let m = j as i64 - level as i64;
        cur = apply(&g.lminus, &cur);
        let expect = closed_form_f(&VermaLabel::new(j, m, a.clone()));
        let witness = if cur == expect { cur.prefactor.to_string() } else { cur.sub(&expect).prefactor.to_string() };
        out.push(CheckReport::check("verma.level", with(&base, "m", m.to_string()), cur == expect, witness));
    }
    let image = submodule_image(j, a);
    out.push(CheckReport::check("verma.submodule_invariant", base, image.is_zero(), image.prefactor.to_string()));
    out
}

// ------------------------------------------------------------------ actions

pub fn action_checks(j: u32, a: &Scalar) -> Vec<CheckReport> {
    let base = params([("J", j.to_string()), ("a", a.to_string())]);
    let ji = j as i64;
    let record = |name: &str, r: &crate::verma_module::ActionRecord| {
        let p = with(&with(&base, "generator", r.generator.clone()), "m", r.m.to_string());
        CheckReport::check(name, p, r.holds(), r.residual.prefactor.to_string())
    };
    let sl2_ms: Vec<i64> = (-ji - 2..=ji).collect();
    let mut out: Vec<CheckReport> = sl2_records(j, a, &sl2_ms).iter().map(|r| record("action.sl2", r)).collect();
    let ms: Vec<i64> = (-ji..=ji).collect();
    match p_records(j, a, &ms) {
        Ok(rs) => out.extend(rs.iter().map(|r| record("action.p", r))),
        Err(ActionError::GenericAtZero) => out.push(CheckReport::report_only(
            "action.p",
            base.clone(),
            "generic tables divide by J; undefined at J = 0",
        )),
        Err(e) => out.push(CheckReport::check("action.p", base.clone(), false, e.to_string())),
    }
    for m in -ji..ji {
        out.push(CheckReport::check("action.shapovalov", with(&base, "m", m.to_string()), shapovalov_check(j, m), ""));
    }
    out
}

// --------------------------------------------------------------- identities

/// The product formula, Whittaker residuals and the separated expansion.
pub fn identity_tasks(seed: u64) -> Vec<Task> {
    let mut alphas: Vec<Scalar> = (0..=4).map(|j| Scalar::from_int(-2 * j - 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        alphas.push(Scalar::ratio(rng.gen_range(-40..40), rng.gen_range(1..12)));
    }
    let mut tasks: Vec<Task> = Vec::new();
    for alpha in alphas {
        tasks.push(Box::new(move || {
            let mut out = Vec::new();
            for n in 0..=8u32 {
                let p = params([("n", n.to_string()), ("alpha", alpha.to_string())]);
                out.push(match laguerre_product_identity(n, &alpha) {
                    Ok(()) => CheckReport::check("identity.product_formula", p.clone(), true, "0"),
                    Err(e) => CheckReport::check("identity.product_formula", p.clone(), false, e.to_string()),
                });
                let kappa = printed_product_normalization(n, &alpha);
                let expect = crate::verma_module::factorial(n);
                out.push(CheckReport::check(
                    "identity.product_formula_printed_factor",
                    p,
                    kappa.as_ref() == Some(&expect),
                    format!("factor={}", kappa.map(|k| k.to_string()).unwrap_or_else(|| "none".into())),
                ));
            }
            out
        }));
    }
    tasks.push(Box::new(whittaker_checks));
    tasks.push(Box::new(|| {
        let mut out = Vec::new();
        for j in 0..=3u32 {
            for m in -(j as i64)..=j as i64 {
                let p = params([("J", j.to_string()), ("m", m.to_string())]);
                let witness = match separation_expansion(j, m, &Scalar::from_int(0)) {
                    SeparationExpansion::Separated { terms, reconstructs } => {
                        let cs: Vec<String> = terms.iter().map(|t| t.coefficient.to_string()).collect();
                        format!("reconstructs={reconstructs}; coefficients [{}]", cs.join(", "))
                    }
                    SeparationExpansion::Obstructed { residual } => format!("obstructed: {residual}"),
                };
                out.push(CheckReport::report_only("identity.separation_expansion", p, witness));
            }
        }
        out
    }));
    tasks
}

/// `W = z^{-m} e^{-z/2+a/z}` solves the extended Whittaker equation exactly
/// at `C = m(m+1)+a`, `c0 = a²`, `c1 = 2a(m+1)`, and each single perturbation
/// leaves a nonzero residual.
pub fn whittaker_checks() -> Vec<CheckReport> {
    let mut out = Vec::new();
    let ms = [Scalar::from_int(0), Scalar::from_int(2), Scalar::from_int(-3), Scalar::ratio(3, 2)];
    let as_ = [Scalar::from_int(0), Scalar::from_int(1), Scalar::ratio(-1, 2)];
    let one = Scalar::from_int(1);
    for m in &ms {
        for a in &as_ {
            let c = &(m * &(m + &one)) + a;
            let c0 = a * a;
            let c1 = &a.scale_int(2) * &(m + &one);
            let base = params([("m", m.to_string()), ("a", a.to_string())]);
            let r = whittaker_residual(m, &c, &c0, &c1, a);
            out.push(CheckReport::check("identity.whittaker", base.clone(), r.is_zero(), r.to_string()));
            for (which, (cc, cc0, cc1)) in [
                ("C", (&c + &one, c0.clone(), c1.clone())),
                ("c0", (c.clone(), &c0 + &one, c1.clone())),
                ("c1", (c.clone(), c0.clone(), &c1 + &one)),
            ] {
                let r = whittaker_residual(m, &cc, &cc0, &cc1, a);
                out.push(CheckReport::check(
                    "identity.whittaker_perturbed",
                    with(&base, "perturbed", which.into()),
                    !r.is_zero(),
                    r.to_string(),
                ));
            }
        }
    }
    out
}

// ------------------------------------------------------------- quantization

pub fn quantize_check(c0: &Scalar, c1: &Scalar) -> CheckReport {
    let p = params([("c0", c0.to_string()), ("c1", c1.to_string())]);
    match quantization_condition(c0, c1) {
        Ok(Quantization::Level { j, a }) => CheckReport::check("quantize", p, true, format!("J={j}; a={a}")),
        Ok(Quantization::Degenerate) => CheckReport::check("quantize", p, true, "degenerate; every J"),
        Err(e) => CheckReport::report_only("quantize", p, e.to_string()),
    }
}

// ----------------------------------------------------------------- dynamics

#[derive(Clone, Debug, PartialEq)]
pub struct SimulateConfig {
    pub orbit: OrbitParams,
    pub t_end: f64,
    pub dt: f64,
    pub states: usize,
    pub seed: u64,
}

/// Random complex initial states away from the singular set.
pub fn random_initial_states(seed: u64, count: usize) -> Vec<FlowState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut pick = |lo: f64, hi: f64| Complex64::new(rng.gen_range(lo..hi), rng.gen_range(-0.3..0.3));
            FlowState::new([pick(1.0, 1.8), pick(2.4, 3.2)], [pick(-0.4, 0.4), pick(-0.4, 0.4)])
        })
        .collect()
}

pub const DRIFT_TOLERANCE: f64 = 1e-8;
pub const ORDER_DTS: [f64; 3] = [0.01, 0.005, 0.0025];
pub const COMMUTATOR_TAU: f64 = 0.1;
pub const COMMUTATOR_DT: f64 = 1e-4;
pub const COMMUTATOR_TOLERANCE: f64 = 1e-6;

fn flow_checks(sys: &FlowSystem, cfg: &SimulateConfig, index: usize, s: FlowState) -> Vec<CheckReport> {
    let base = with(&orbit_params(&cfg.orbit), "state", format!("{index:02}"));
    let mut out = Vec::new();
    for h in [Hamiltonian::H2, Hamiltonian::H3] {
        let p = with(&with(&with(&base, "flow", h.name().into()), "t_end", cfg.t_end.to_string()), "dt", cfg.dt.to_string());
        out.push(match integrate_flow(sys, h, &s, cfg.t_end, cfg.dt, None) {
            Ok(tr) => {
                let d: Vec<String> = tr.report.max_rel_drift.iter().map(|x| fmt_f(*x)).collect();
                CheckReport::check("flow.drift", p, tr.report.worst() <= DRIFT_TOLERANCE, format!("[{}]", d.join(", ")))
            }
            Err(e) => CheckReport::check("flow.drift", p, false, e.to_string()),
        });
    }
    out.push(match order_test(sys, Hamiltonian::H3, &s, 1.0, &ORDER_DTS) {
        Ok(o) => {
            let ok = o.ratios.iter().all(|r| (8.0..=32.0).contains(r));
            let rs: Vec<String> = o.ratios.iter().map(|x| format!("{x:.3}")).collect();
            CheckReport::check("flow.rk4_order", base.clone(), ok, format!("ratios [{}]", rs.join(", ")))
        }
        Err(e) => CheckReport::check("flow.rk4_order", base.clone(), false, e.to_string()),
    });
    let p = with(&base, "tau", COMMUTATOR_TAU.to_string());
    out.push(match flow_commutativity(sys, Hamiltonian::H2, Hamiltonian::H3, &s, COMMUTATOR_TAU, COMMUTATOR_DT) {
        Ok(r) => CheckReport::check("flow.commutativity", p, r <= COMMUTATOR_TOLERANCE, fmt_f(r)),
        Err(e) => CheckReport::check("flow.commutativity", p, false, e.to_string()),
    });
    out
}

pub fn simulate_tasks(cfg: &SimulateConfig) -> Vec<Task> {
    let sys = std::sync::Arc::new(FlowSystem::new(&cfg.orbit));
    random_initial_states(cfg.seed, cfg.states)
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let sys = sys.clone();
            let cfg = cfg.clone();
            Box::new(move || flow_checks(&sys, &cfg, i, s)) as Task
        })
        .collect()
}

// ------------------------------------------------------------ inner product

/// The ε ladder, values and fitted exponent for one pairing, plus the
/// Hermitian check against the swapped pairing at the smallest cutoff.
pub fn probe_checks(spec: &QuadratureSpec, ladder: &[f64]) -> Vec<CheckReport> {
    let base = params([
        ("J", spec.j.to_string()),
        ("m", spec.m.to_string()),
        ("n", spec.n.to_string()),
        ("a", spec.a.to_string()),
    ]);
    let mut out = Vec::new();
    out.push(match inner_product_probe(spec, ladder) {
        Ok(r) => CheckReport::report_only("probe.inner_product", base.clone(), serde_json::to_string(&r).expect("json")),
        Err(e) => CheckReport::report_only("probe.inner_product", base.clone(), e.to_string()),
    });
    let eps = ladder.iter().cloned().fold(f64::INFINITY, f64::min);
    let swapped = QuadratureSpec { m: spec.n, n: spec.m, ..spec.with_epsilon(eps) };
    let witness = match (inner_product_value(&spec.with_epsilon(eps)), inner_product_value(&swapped)) {
        (Ok(x), Ok(y)) => fmt_f((x - y.conj()).norm() / x.norm().max(1.0)),
        (Err(e), _) | (_, Err(e)) => e.to_string(),
    };
    out.push(CheckReport::report_only("probe.conjugate_symmetry", base, witness));
    out
}

pub fn default_ladder() -> Vec<f64> {
    vec![1e-3, 1e-4, 1e-5]
}

pub fn probe_tasks(spec: &QuadratureSpec, ladder: &[f64]) -> Vec<Task> {
    let (spec, ladder) = (spec.clone(), ladder.to_vec());
    vec![Box::new(move || probe_checks(&spec, &ladder))]
}

// --------------------------------------------------------------------- all

/// Every suite at its default parameters.
pub fn full_suite_tasks(seed: u64) -> Vec<Task> {
    let orbits = OrbitParams::samples();
    let mut tasks = classical_tasks(&orbits, seed);
    tasks.extend(commutator_tasks(&orbits));
    for j in 0..=3u32 {
        for a in [Scalar::from_int(0), Scalar::from_int(1)] {
            let a2 = a.clone();
            tasks.push(Box::new(move || verma_checks(j, &a2, 2 * j + 2)));
            tasks.push(Box::new(move || action_checks(j, &a)));
        }
    }
    tasks.extend(identity_tasks(seed));
    tasks.push(Box::new(|| {
        [(4, 8), (1, 3), (9, 9), (0, 0), (2, 1)]
            .iter()
            .map(|&(c0, c1)| quantize_check(&Scalar::from_int(c0), &Scalar::from_int(c1)))
            .collect()
    }));
    let cfg = SimulateConfig {
        orbit: OrbitParams::new(Scalar::ratio(1, 4), Scalar::ratio(3, 2)),
        t_end: 1.0,
        dt: 1e-3,
        states: 2,
        seed,
    };
    tasks.extend(simulate_tasks(&cfg));
    for j in 1..=2u32 {
        tasks.extend(probe_tasks(&QuadratureSpec::new(j, j as i64, j as i64, Scalar::from_int(0)), &default_ladder()));
    }
    tasks
}
