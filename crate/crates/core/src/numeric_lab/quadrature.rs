use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::exact_algebra::{CompiledExpr, Scalar};
use crate::verma_module::basis_vector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("ladder values are not monotone at epsilon = {epsilon:e}")]
    QuadratureUnstable { epsilon: f64 },
    #[error("integrand not finite at z = ({z1}, {z2})")]
    NonFinite { z1: f64, z2: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub epsilon: f64,
    pub r: f64,
    pub nodes: usize,
    pub j: u32,
    pub m: i64,
    pub n: i64,
    pub a: Scalar,
}

impl QuadratureSpec {
    pub fn new(j: u32, m: i64, n: i64, a: Scalar) -> Self {
        QuadratureSpec { epsilon: 1e-3, r: 60.0, nodes: 401, j, m, n, a }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        QuadratureSpec { epsilon, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let jm = self.j as i64;
        if !(self.epsilon > 0.0 && self.epsilon < self.r && self.r.is_finite()) {
            return Err(QuadratureError::InvalidSpec(format!("need 0 < epsilon < R, got {} and {}", self.epsilon, self.r)));
        }
        if self.nodes < 16 {
            return Err(QuadratureError::InvalidSpec(format!("need nodes >= 16, got {}", self.nodes)));
        }
        if self.m.abs() > jm || self.n.abs() > jm {
            return Err(QuadratureError::InvalidSpec(format!("weights {} and {} outside [-{jm}, {jm}]", self.m, self.n)));
        }
        Ok(())
    }
}

fn log_factorial(n: i64) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `f̃_Jm` compiled: `√((J+m)!/(J-m)!) · f_Jm`, with `e^E` evaluated in floats.
struct CanonicalVector {
    prefactor: CompiledExpr,
    scale: f64,
    a: Complex64,
}

impl CanonicalVector {
    fn new(j: u32, m: i64, a: &Scalar) -> Self {
        let f = basis_vector(j as i64, m, a);
        let jm = j as i64;
        let scale = (0.5 * (log_factorial(jm + m) - log_factorial(jm - m))).exp();
        CanonicalVector { prefactor: CompiledExpr::new(&f.prefactor), scale, a: a.to_complex64() }
    }

    fn eval(&self, z1: f64, z2: f64) -> Option<Complex64> {
        let x = [Complex64::new(z1, 0.0), Complex64::new(z2, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        let p = self.prefactor.eval(&x).ok()?;
        let e = (-(z1 + z2) / 2.0 + self.a / z1 + self.a / z2).exp();
        Some(p * e * self.scale)
    }
}

fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let c = if k == 0 || k == n - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect()
}

/// The unnormalized pairing over `[ε,R]²` by tensor-product Simpson in
/// `u = ln z`. The weight is `(z1z2)^{J-1} e^{-2a/z1-2a/z2}` divided by
/// `√(Γ(J-m+1)Γ(J+m+1)Γ(J-n+1)Γ(J+n+1))`, which is the printed denominator
/// on the diagonal and keeps the pairing Hermitian off it.
pub fn inner_product_value(spec: &QuadratureSpec) -> Result<Complex64, QuadratureError> {
    spec.validate()?;
    let nodes = if spec.nodes % 2 == 0 { spec.nodes + 1 } else { spec.nodes };
    let (u0, u1) = (spec.epsilon.ln(), spec.r.ln());
    let h = (u1 - u0) / (nodes - 1) as f64;
    let zs: Vec<f64> = (0..nodes).map(|k| (u0 + h * k as f64).exp()).collect();
    let wts = simpson_weights(nodes, h);
    let fm = CanonicalVector::new(spec.j, spec.m, &spec.a);
    let fn_ = CanonicalVector::new(spec.j, spec.n, &spec.a);
    let jm = spec.j as i64;
    let norm = (-0.5
        * (log_factorial(jm - spec.m) + log_factorial(jm + spec.m) + log_factorial(jm - spec.n) + log_factorial(jm + spec.n)))
        .exp();
    let a = spec.a.to_complex64();
    let mut total = Complex64::new(0.0, 0.0);
    for (i, &z1) in zs.iter().enumerate() {
        let mut row = Complex64::new(0.0, 0.0);
        for (k, &z2) in zs.iter().enumerate() {
            let nf = || QuadratureError::NonFinite { z1, z2 };
            let vm = fm.eval(z1, z2).ok_or_else(nf)?;
            let vn = fn_.eval(z1, z2).ok_or_else(nf)?;
            let weight = (z1 * z2).powi(spec.j as i32 - 1) * (-2.0 * a / z1 - 2.0 * a / z2).exp();
            // dz = z du in each variable.
            let v = vm.conj() * vn * weight * (z1 * z2);
            if !v.is_finite() {
                return Err(nf());
            }
            row += v * wts[k];
        }
        total += row * wts[i];
    }
    Ok(total * norm)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderPoint {
    pub epsilon: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub j: u32,
    pub m: i64,
    pub n: i64,
    pub ladder: Vec<LadderPoint>,
    /// Least-squares slope of `ln|value|` against `ln ε`.
    pub total_slope: f64,
    /// The slope per integration variable, `total_slope / 2`.
    pub divergence_exponent: f64,
    /// Set when the slope is near zero, where the growth is logarithmic.
    pub log_divergent: bool,
}

impl ProbeReport {
    pub fn values(&self) -> Vec<Complex64> {
        self.ladder.iter().map(|p| Complex64::new(p.re, p.im)).collect()
    }
}

/// `ε_k = start · ratio^k` for `k < count`.
pub fn geometric_ladder(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}

fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Runs [`inner_product_value`] down a decreasing `ε` ladder and fits the
/// log-log slope. `|value|` must grow monotonically down the ladder.
pub fn inner_product_probe(spec: &QuadratureSpec, ladder: &[f64]) -> Result<ProbeReport, QuadratureError> {
    if ladder.len() < 2 {
        return Err(QuadratureError::InvalidSpec("ladder needs at least two cutoffs".into()));
    }
    if ladder.windows(2).any(|w| w[1] >= w[0]) {
        return Err(QuadratureError::InvalidSpec("ladder must be strictly decreasing".into()));
    }
    let mut points = Vec::new();
    for &eps in ladder {
        let v = inner_product_value(&spec.with_epsilon(eps))?;
        points.push(LadderPoint { epsilon: eps, re: v.re, im: v.im });
    }
    for w in points.windows(2) {
        let (a, b) = (Complex64::new(w[0].re, w[0].im).norm(), Complex64::new(w[1].re, w[1].im).norm());
        if b < a {
            return Err(QuadratureError::QuadratureUnstable { epsilon: w[1].epsilon });
        }
    }
    let xs: Vec<f64> = ladder.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| Complex64::new(p.re, p.im).norm().ln()).collect();
    let total_slope = fit_slope(&xs, &ys);
    Ok(ProbeReport {
        j: spec.j,
        m: spec.m,
        n: spec.n,
        ladder: points,
        total_slope,
        divergence_exponent: total_slope / 2.0,
        log_divergent: total_slope.abs() < 0.5,
    })
}
