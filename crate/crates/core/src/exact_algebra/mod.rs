//! Exact arithmetic: Gaussian-rational scalars, Laurent polynomials in
//! `(z1, z2, w1, w2)`, and fractions of them.

mod laurent;
mod rational;
pub mod render;
mod scalar;

pub use laurent::{LaurentPoly, Monomial, Var};
pub use rational::{Binding, CompiledExpr, RationalExpr, POLE_TOLERANCE};
pub use render::{parse_poly, render_poly};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("quotient is not a Laurent polynomial")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    NearPole,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &LaurentPoly, q: &LaurentPoly, op: PolyOp) -> LaurentPoly {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

pub fn exact_div(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    p.exact_div(q)
}
