use thiserror::Error;

use super::laguerre::{factorial, laguerre};
use crate::classical_phase::OrbitParams;
use crate::diff_ops::{apply, ExpFactor, WaveFunction};
use crate::e3_representation::{build_generators, E3Generators};
use crate::exact_algebra::{parse_poly, LaurentPoly, Monomial, RationalExpr, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VermaError {
    #[error("L- generation differs from the closed form at level {level} (m = {m})")]
    MismatchAtLevel { level: u32, m: i64 },
}

/// Basis label `(J, m)` of the module with highest weight `J` over the
/// orbit with parameter `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct VermaLabel {
    pub j: u32,
    pub m: i64,
    pub a: Scalar,
    /// Second Whittaker index `μ` of a separated factor, when relevant.
    pub whittaker_index: Option<Scalar>,
}

impl VermaLabel {
    pub fn new(j: u32, m: i64, a: Scalar) -> Self {
        VermaLabel { j, m, a, whittaker_index: None }
    }

    /// The orbit this label lives on: `c0 = a²`, `c1 = 2a(J+1)`.
    pub fn orbit(&self) -> OrbitParams {
        OrbitParams::quantized(self.a.clone(), self.j)
    }
}

/// `(z1 z2)^{-J}`.
pub fn z_product_power(j: i64) -> LaurentPoly {
    LaurentPoly::term(Monomial([-j as i32, -j as i32, 0, 0]), Scalar::from_int(1))
}

/// `i^{J-m} (J-m)! (z1z2)^{-J} L_{J-m}^{-2J-1}(z1+z2) · e^E`.
///
/// # Panics
///
/// If `m > J`.
pub fn closed_form_f(label: &VermaLabel) -> WaveFunction {
    assert!(label.m <= label.j as i64, "weight above the highest weight");
    let pre = closed_form_prefactor(label.j as i64, label.m);
    WaveFunction::new(RationalExpr::from_poly(pre), ExpFactor::new(label.a.clone()))
}

/// The closed form at any integer `J`, including the formal `J < 0`
/// vectors that the `p̂` tables reach from `J = 0`; zero when `m > J`.
pub fn basis_vector(j: i64, m: i64, a: &Scalar) -> WaveFunction {
    if m > j {
        return WaveFunction::zero(ExpFactor::new(a.clone()));
    }
    WaveFunction::new(RationalExpr::from_poly(closed_form_prefactor(j, m)), ExpFactor::new(a.clone()))
}

fn closed_form_prefactor(j: i64, m: i64) -> LaurentPoly {
    let n = (j - m) as u32;
    let alpha = Scalar::from_int(-2 * j - 1);
    let s = parse_poly("z1 + z2").expect("static");
    let coeff = &Scalar::i_pow(n as i64) * &factorial(n);
    (&laguerre(n, &alpha, &s) * &z_product_power(j)).scale(&coeff)
}

/// The generators on the orbit carrying highest weight `J`.
pub fn generators_for(j: u32, a: &Scalar) -> E3Generators {
    build_generators(&OrbitParams::quantized(a.clone(), j))
}

/// `f_JJ, L̂- f_JJ, ..., L̂-^depth f_JJ`, each compared with the closed form.
pub fn generate_verma(j: u32, a: &Scalar, depth: u32) -> Result<Vec<WaveFunction>, VermaError> {
    let g = generators_for(j, a);
    let mut cur = closed_form_f(&VermaLabel::new(j, j as i64, a.clone()));
    let mut out = vec![cur.clone()];
    for level in 1..=depth {
        let m = j as i64 - level as i64;
        cur = apply(&g.lminus, &cur);
        if cur != closed_form_f(&VermaLabel::new(j, m, a.clone())) {
            return Err(VermaError::MismatchAtLevel { level, m });
        }
        out.push(cur.clone());
    }
    Ok(out)
}

/// `L̂+ f_{J,-J-1}`, which vanishes on the invariant submodule.
pub fn submodule_image(j: u32, a: &Scalar) -> WaveFunction {
    let g = generators_for(j, a);
    apply(&g.lplus, &closed_form_f(&VermaLabel::new(j, -(j as i64) - 1, a.clone())))
}

pub fn submodule_is_invariant(j: u32, a: &Scalar) -> bool {
    submodule_image(j, a).prefactor.is_zero()
}
