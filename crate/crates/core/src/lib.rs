//! Exact and numerical verification of the separation-of-variables
//! quantization of the 2-gap isotropic Landau–Lifshitz system.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact_algebra`]: Gaussian rationals, Laurent polynomials, fractions.
//! * [`classical_phase`]: the phase map `(z, w) -> (p, L)`, Poisson brackets,
//!   orbit invariants, the spectral curve and the separation round trip.
//! * [`diff_ops`]: differential operators in `z1, z2` acting on wavefunctions
//!   that carry a fixed exponential factor.
//! * [`e3_representation`]: the second-order e(3) generators and Hamiltonians.
//! * [`verma_module`]: Laguerre machinery, the Verma basis, action tables and
//!   quantization conditions.
//! * [`numeric_lab`]: RK4 flows and inner-product quadrature probes.
//! * [`reports`]: check records and the suites driven by the CLI.

pub mod classical_phase;
pub mod diff_ops;
pub mod e3_representation;
pub mod exact_algebra;
pub mod numeric_lab;
pub mod reports;
pub mod verma_module;

pub use exact_algebra::{AlgebraError, LaurentPoly, RationalExpr, Scalar, Var};

