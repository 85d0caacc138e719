use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::classical_phase::{build_phase_map, OrbitParams, PhaseMap};
use crate::exact_algebra::{AlgebraError, CompiledExpr, RationalExpr, Var};

/// Relative distance to `z1 = z2` or `z_k = 0` that aborts a run.
pub const SINGULAR_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("state reached the singular set at t = {t}")]
    SingularityHit { t: f64, partial: Box<ConservationReport> },
    #[error("csv output failed: {0}")]
    Csv(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hamiltonian {
    H2,
    H3,
}

impl Hamiltonian {
    pub fn name(self) -> &'static str {
        match self {
            Hamiltonian::H2 => "h2",
            Hamiltonian::H3 => "h3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowState {
    pub z1: Complex64,
    pub z2: Complex64,
    pub w1: Complex64,
    pub w2: Complex64,
    pub t: f64,
}

impl FlowState {
    pub fn new(z: [Complex64; 2], w: [Complex64; 2]) -> Self {
        FlowState { z1: z[0], z2: z[1], w1: w[0], w2: w[1], t: 0.0 }
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.z1, self.z2, self.w1, self.w2]
    }

    fn from_array(v: [Complex64; 4], t: f64) -> Self {
        FlowState { z1: v[0], z2: v[1], w1: v[2], w2: v[3], t }
    }

    pub fn is_singular(&self) -> bool {
        let scale = 1.0 + self.z1.norm().max(self.z2.norm());
        (self.z1 - self.z2).norm() < SINGULAR_TOLERANCE * scale
            || self.z1.norm() < SINGULAR_TOLERANCE
            || self.z2.norm() < SINGULAR_TOLERANCE
    }

    /// Largest componentwise distance.
    pub fn distance(&self, o: &FlowState) -> f64 {
        let a = self.as_array();
        let b = o.as_array();
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

/// The vector field `ż = ∂H/∂w`, `ẇ = -∂H/∂z` with exact gradients.
#[derive(Clone, Debug)]
pub struct HamiltonianField {
    grad: [CompiledExpr; 4],
}

impl HamiltonianField {
    pub fn new(h: &RationalExpr) -> Self {
        let d = |v| CompiledExpr::new(&h.partial_derivative(v));
        HamiltonianField { grad: [d(Var::Z1), d(Var::Z2), d(Var::W1), d(Var::W2)] }
    }

    /// `(∂H/∂z1, ∂H/∂z2, ∂H/∂w1, ∂H/∂w2)`.
    pub fn gradient(&self, x: &[Complex64; 4]) -> Result<[Complex64; 4], AlgebraError> {
        Ok([self.grad[0].eval(x)?, self.grad[1].eval(x)?, self.grad[2].eval(x)?, self.grad[3].eval(x)?])
    }

    fn rhs(&self, x: &[Complex64; 4]) -> Result<[Complex64; 4], AlgebraError> {
        let g = self.gradient(x)?;
        Ok([g[2], g[3], -g[0], -g[1]])
    }

    /// One classical RK4 step.
    pub fn step(&self, s: &FlowState, dt: f64) -> Result<FlowState, AlgebraError> {
        let x = s.as_array();
        let axpy = |a: &[Complex64; 4], k: &[Complex64; 4], h: f64| -> [Complex64; 4] {
            std::array::from_fn(|i| a[i] + k[i] * h)
        };
        let k1 = self.rhs(&x)?;
        let k2 = self.rhs(&axpy(&x, &k1, dt / 2.0))?;
        let k3 = self.rhs(&axpy(&x, &k2, dt / 2.0))?;
        let k4 = self.rhs(&axpy(&x, &k3, dt))?;
        let next = std::array::from_fn(|i| x[i] + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0));
        Ok(FlowState::from_array(next, s.t + dt))
    }
}

/// The phase map and both flows of one orbit, compiled once.
#[derive(Clone, Debug)]
pub struct FlowSystem {
    pub map: PhaseMap,
    entries: [CompiledExpr; 6],
    h2: HamiltonianField,
    h3: HamiltonianField,
}

impl FlowSystem {
    pub fn new(orbit: &OrbitParams) -> Self {
        let map = build_phase_map(orbit);
        let entries = std::array::from_fn(|k| {
            let e = if k < 3 { &map.p[k] } else { &map.l[k - 3] };
            CompiledExpr::new(e)
        });
        let h2 = HamiltonianField::new(&map.h2());
        let h3 = HamiltonianField::new(&map.h3());
        FlowSystem { map, entries, h2, h3 }
    }

    pub fn field(&self, h: Hamiltonian) -> &HamiltonianField {
        match h {
            Hamiltonian::H2 => &self.h2,
            Hamiltonian::H3 => &self.h3,
        }
    }

    /// `(h0, h1, h2, h3) = (p·p, 2(p,L), L·L + p3, L3)` from the phase map
    /// evaluated at the state, so that all four are computed the same way.
    pub fn invariants(&self, s: &FlowState) -> Result<[Complex64; 4], AlgebraError> {
        let x = s.as_array();
        let mut v = [Complex64::new(0.0, 0.0); 6];
        for (slot, e) in v.iter_mut().zip(&self.entries) {
            *slot = e.eval(&x)?;
        }
        let (p, l) = (&v[..3], &v[3..]);
        let pp: Complex64 = p.iter().map(|x| x * x).sum();
        let pl: Complex64 = p.iter().zip(l).map(|(x, y)| x * y).sum();
        let ll: Complex64 = l.iter().map(|x| x * x).sum();
        Ok([pp, 2.0 * pl, ll + p[2], l[2]])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConservationReport {
    pub hamiltonian: Hamiltonian,
    pub steps: u64,
    pub t_reached: f64,
    /// `max_t |h_k(t) - h_k(0)| / max(|h_k(0)|, 1)` for `k = 0..3`.
    pub max_rel_drift: [f64; 4],
}

impl ConservationReport {
    pub fn worst(&self) -> f64 {
        self.max_rel_drift.iter().cloned().fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub states: Vec<FlowState>,
    pub invariants: Vec<[Complex64; 4]>,
    pub report: ConservationReport,
}

impl Trajectory {
    /// One CSV row per sample: `t`, real and imaginary parts of the state,
    /// then of `h0..h3`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), FlowError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        for name in ["z1", "z2", "w1", "w2", "h0", "h1", "h2", "h3"] {
            header.push(format!("re_{name}"));
            header.push(format!("im_{name}"));
        }
        w.write_record(&header).map_err(|e| FlowError::Csv(e.to_string()))?;
        for (s, h) in self.states.iter().zip(&self.invariants) {
            let mut row = vec![format!("{:e}", s.t)];
            for c in s.as_array().iter().chain(h.iter()) {
                row.push(format!("{:e}", c.re));
                row.push(format!("{:e}", c.im));
            }
            w.write_record(&row).map_err(|e| FlowError::Csv(e.to_string()))?;
        }
        w.flush().map_err(|e| FlowError::Csv(e.to_string()))
    }
}

fn drift(h0: &[Complex64; 4], h: &[Complex64; 4], acc: &mut [f64; 4]) {
    for k in 0..4 {
        let d = (h[k] - h0[k]).norm() / h0[k].norm().max(1.0);
        acc[k] = acc[k].max(d);
    }
}

/// Fixed-step RK4 from `initial` to `t_end`, recording the drift of all
/// four invariants. The step count is `round(t_end/dt)`.
pub fn integrate_flow(
    sys: &FlowSystem,
    h: Hamiltonian,
    initial: &FlowState,
    t_end: f64,
    dt: f64,
    keep_every: Option<u64>,
) -> Result<Trajectory, FlowError> {
    let field = sys.field(h);
    let steps = (t_end / dt).round() as u64;
    let mut report = ConservationReport { hamiltonian: h, steps: 0, t_reached: initial.t, max_rel_drift: [0.0; 4] };
    let singular = |t: f64, report: &ConservationReport| FlowError::SingularityHit {
        t,
        partial: Box::new(report.clone()),
    };
    if initial.is_singular() {
        return Err(singular(initial.t, &report));
    }
    let h_init = sys.invariants(initial).map_err(|_| singular(initial.t, &report))?;
    let mut states = vec![*initial];
    let mut invariants = vec![h_init];
    let mut s = *initial;
    for k in 1..=steps {
        let next = field.step(&s, dt).map_err(|_| singular(s.t, &report))?;
        if next.is_singular() || next.as_array().iter().any(|c| !c.is_finite()) {
            return Err(singular(next.t, &report));
        }
        let hv = sys.invariants(&next).map_err(|_| singular(next.t, &report))?;
        drift(&h_init, &hv, &mut report.max_rel_drift);
        report.steps = k;
        report.t_reached = next.t;
        if keep_every.is_some_and(|e| k % e == 0 || k == steps) {
            states.push(next);
            invariants.push(hv);
        }
        s = next;
    }
    if keep_every.is_none() {
        states.push(s);
        invariants.push(sys.invariants(&s).map_err(|_| singular(s.t, &report))?);
    }
    Ok(Trajectory { states, invariants, report })
}

/// The final state after time `tau` along `h`.
pub fn flow_map(sys: &FlowSystem, h: Hamiltonian, x: &FlowState, tau: f64, dt: f64) -> Result<FlowState, FlowError> {
    if tau == 0.0 {
        return Ok(*x);
    }
    let tr = integrate_flow(sys, h, x, tau, dt, None)?;
    Ok(*tr.states.last().expect("nonempty"))
}

/// `|Φ^a_τ Φ^b_τ x - Φ^b_τ Φ^a_τ x|`, componentwise maximum.
pub fn flow_commutativity(
    sys: &FlowSystem,
    a: Hamiltonian,
    b: Hamiltonian,
    x: &FlowState,
    tau: f64,
    dt: f64,
) -> Result<f64, FlowError> {
    let ab = flow_map(sys, a, &flow_map(sys, b, x, tau, dt)?, tau, dt)?;
    let ba = flow_map(sys, b, &flow_map(sys, a, x, tau, dt)?, tau, dt)?;
    Ok(ab.distance(&ba))
}

/// Drift of the invariants not generating the flow, at each `dt`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderTest {
    pub dts: Vec<f64>,
    pub drifts: Vec<f64>,
    pub ratios: Vec<f64>,
}

/// The drift of `h2` along the `h3` flow (or the reverse) for each step in
/// `dts`, and successive ratios `drift(dt)/drift(dt/2)`.
pub fn order_test(sys: &FlowSystem, h: Hamiltonian, x: &FlowState, t_end: f64, dts: &[f64]) -> Result<OrderTest, FlowError> {
    let watched = match h {
        Hamiltonian::H3 => 2,
        Hamiltonian::H2 => 3,
    };
    let mut drifts = Vec::new();
    for &dt in dts {
        let tr = integrate_flow(sys, h, x, t_end, dt, None)?;
        drifts.push(tr.report.max_rel_drift[watched]);
    }
    let ratios = drifts.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(OrderTest { dts: dts.to_vec(), drifts, ratios })
}
