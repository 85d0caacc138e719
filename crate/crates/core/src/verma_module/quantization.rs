use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact_algebra::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantizationError {
    #[error("c1/(2 sqrt c0) - 1 = {value} is not a nonnegative integer")]
    NotQuantizable { value: String },
    #[error("sqrt(c0) is not rational for c0 = {c0}")]
    IrrationalRoot { c0: String },
    #[error("orbit parameters must be real with c0 >= 0")]
    InvalidParameters,
}

/// A quantizable orbit.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantization {
    /// `c0 = a²`, `c1 = 2a(J+1)` with `a = √c0 > 0`.
    Level { j: u32, a: Scalar },
    /// `c0 = c1 = 0`: the orbit collapsed to a point; every `J` occurs.
    Degenerate,
}

/// `J = c1/(2√c0) - 1` when that is a nonnegative integer.
pub fn quantization_condition(c0: &Scalar, c1: &Scalar) -> Result<Quantization, QuantizationError> {
    if !c0.is_real() || !c1.is_real() || c0.re().is_negative() {
        return Err(QuantizationError::InvalidParameters);
    }
    if c0.is_zero() {
        return if c1.is_zero() {
            Ok(Quantization::Degenerate)
        } else {
            Err(QuantizationError::NotQuantizable { value: "inf".into() })
        };
    }
    let root = c0.rational_sqrt().ok_or_else(|| QuantizationError::IrrationalRoot { c0: c0.to_string() })?;
    let j1 = c1.re() / (BigRational::from_integer(BigInt::from(2)) * &root);
    let j = j1 - BigRational::from_integer(BigInt::from(1));
    if !j.is_integer() || j.is_negative() {
        return Err(QuantizationError::NotQuantizable { value: Scalar::real(j).to_string() });
    }
    let j = j.to_integer().to_u32().ok_or(QuantizationError::InvalidParameters)?;
    Ok(Quantization::Level { j, a: Scalar::real(root) })
}
