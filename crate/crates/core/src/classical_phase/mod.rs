//! The classical side: coadjoint orbits of e(3), the explicit phase map in
//! separation variables, Poisson brackets, invariants of the Lax matrix,
//! the spectral curve and the numerical separation round trip.

mod lax;
mod phase_map;
mod poisson;
mod separation;

pub use lax::{lax_matrix, trace_of_square, LaxPoly, LaxPolynomials};
pub use phase_map::{build_phase_map, PhaseMap};
pub use poisson::{
    orbit_and_hamiltonians, poisson_bracket, verify_e3_brackets, BracketResidual, E3BracketReport,
    OrbitIdentities,
};
pub use separation::{
    reconstruct, separate, separation_roundtrip, spectral_curve_residual, spectral_curve_residual_expr,
    spectral_curve_residual_printed, PhasePoint, RoundTrip, SeparationPoint,
};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_algebra::{AlgebraError, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassicalError {
    #[error("bracket {relation} fails under both sign conventions")]
    MismatchBeyondSign { relation: String },
    #[error("separation roots coincide or vanish (|z1-z2| = {gap:e}, min |z| = {min_abs:e})")]
    DegenerateRoots { gap: f64, min_abs: f64 },
    #[error("phase point is off the orbit (residual {residual:e})")]
    OffOrbit { residual: f64 },
    #[error("spectral curve residual needs z != 0")]
    ZeroAbscissa,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A coadjoint orbit `p·p = c0`, `(p, L) = c1/2`, optionally with the
/// quantization data `(a, J)` that fixes `c0 = a²`, `c1 = 2a(J+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitParams {
    pub c0: Scalar,
    pub c1: Scalar,
    quantized: Option<(Scalar, u32)>,
}

impl OrbitParams {
    pub fn new(c0: Scalar, c1: Scalar) -> Self {
        OrbitParams { c0, c1, quantized: None }
    }

    /// The orbit collapsed to `p = 0`.
    pub fn degenerate() -> Self {
        Self::new(Scalar::zero(), Scalar::zero())
    }

    /// The quantized orbit with `c0 = a²`, `c1 = 2a(J+1)`.
    pub fn quantized(a: Scalar, j: u32) -> Self {
        let c0 = &a * &a;
        let c1 = (&a * &Scalar::from_int(j as i64 + 1)).scale_int(2);
        OrbitParams { c0, c1, quantized: Some((a, j)) }
    }

    /// Recovers `(a, J)` from `(c0, c1)`, refusing anything whose
    /// `c1/(2√c0) - 1` is not a nonnegative integer.
    pub fn try_quantized(c0: Scalar, c1: Scalar) -> Result<Self, crate::verma_module::QuantizationError> {
        match crate::verma_module::quantization_condition(&c0, &c1)? {
            crate::verma_module::Quantization::Level { j, a } => Ok(Self::quantized(a, j)),
            crate::verma_module::Quantization::Degenerate => Ok(Self::degenerate()),
        }
    }

    pub fn a(&self) -> Option<&Scalar> {
        self.quantized.as_ref().map(|(a, _)| a)
    }

    pub fn j(&self) -> Option<u32> {
        self.quantized.as_ref().map(|(_, j)| *j)
    }

    pub fn is_degenerate(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// Six rational `(c0, c1)` samples, including `(0, 0)`, used wherever an
    /// identity is claimed for all orbit parameters.
    pub fn samples() -> Vec<OrbitParams> {
        vec![
            OrbitParams::degenerate(),
            OrbitParams::new(Scalar::one(), Scalar::from_int(3)),
            OrbitParams::new(Scalar::ratio(9, 4), Scalar::ratio(-5, 2)),
            OrbitParams::new(Scalar::from_int(-2), Scalar::ratio(1, 3)),
            OrbitParams::new(Scalar::ratio(7, 5), Scalar::zero()),
            OrbitParams::new(Scalar::complex(1, 2, 1, 1), Scalar::from_int(4)),
            OrbitParams::quantized(Scalar::ratio(3, 2), 2),
        ]
    }
}
