use num_traits::Zero;
use thiserror::Error;

use super::laguerre::{factorial, laguerre, rising};
use crate::diff_ops::{ExpFactor, WaveFunction};
use crate::exact_algebra::{LaurentPoly, Monomial, RationalExpr, Scalar, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error("product formula fails for n = {n}, alpha = {alpha}; difference {difference}")]
    IdentityFails { n: u32, alpha: String, difference: String },
}

fn z() -> LaurentPoly {
    LaurentPoly::var(Var::Z1)
}

fn zpow(e: i32) -> LaurentPoly {
    LaurentPoly::var_pow(Var::Z1, e)
}

/// `-1/4 - m/z - C/z² - c1/z³ - c0/z⁴`.
fn whittaker_potential(m: &Scalar, c: &Scalar, c0: &Scalar, c1: &Scalar) -> LaurentPoly {
    LaurentPoly::from_terms([
        (Monomial::ONE, Scalar::ratio(-1, 4)),
        (Monomial::var(Var::Z1, -1), -m),
        (Monomial::var(Var::Z1, -2), -c),
        (Monomial::var(Var::Z1, -3), -c1),
        (Monomial::var(Var::Z1, -4), -c0),
    ])
}

/// `(W'' + V W)/W` for `W = z^{-m} e^{-z/2 + a/z}`, using
/// `W''/W = g' + g²` with `g = W'/W = -m/z - 1/2 - a/z²`.
pub fn whittaker_residual(m: &Scalar, c: &Scalar, c0: &Scalar, c1: &Scalar, a: &Scalar) -> LaurentPoly {
    let g = LaurentPoly::from_terms([
        (Monomial::var(Var::Z1, -1), -m),
        (Monomial::ONE, Scalar::ratio(-1, 2)),
        (Monomial::var(Var::Z1, -2), -a),
    ]);
    &(&g.derivative(Var::Z1) + &(&g * &g)) + &whittaker_potential(m, c, c0, c1)
}

/// `e^{-E}(W'' + V W)` for `W = prefactor(z) · e^{-z/2 + a/z}`, with
/// `prefactor` a function of `z1` alone.
pub fn whittaker_image(prefactor: &RationalExpr, m: &Scalar, c: &Scalar, c0: &Scalar, c1: &Scalar, a: &Scalar) -> RationalExpr {
    let w = WaveFunction::new(prefactor.clone(), ExpFactor::new(a.clone()));
    let w2 = w.twisted_derivative(Var::Z1).twisted_derivative(Var::Z1);
    &w2.prefactor + &prefactor.mul_poly(&whittaker_potential(m, c, c0, c1))
}

/// Both sides of the product formula as printed,
/// `L_n^α(z1) L_n^α(z2)` and `Σ_k (α+k+1)⋯(α+n) (z1z2)^k/k! L_{n-k}^{α+2k}(z1+z2)`.
pub fn laguerre_product_sides(n: u32, alpha: &Scalar) -> (LaurentPoly, LaurentPoly) {
    let z1 = LaurentPoly::var(Var::Z1);
    let z2 = LaurentPoly::var(Var::Z2);
    let lhs = &laguerre(n, alpha, &z1) * &laguerre(n, alpha, &z2);
    let s = &z1 + &z2;
    let p = &z1 * &z2;
    let mut rhs = LaurentPoly::zero();
    for k in 0..=n {
        let c = &rising(alpha, k as i64 + 1, n as i64) / &factorial(k);
        let a2 = alpha + &Scalar::from_int(2 * k as i64);
        let term = &p.pow(k) * &laguerre(n - k, &a2, &s);
        rhs = &rhs + &term.scale(&c);
    }
    (lhs, rhs)
}

/// `κ` with `rhs = κ · lhs` for the printed sides, when one exists.
pub fn printed_product_normalization(n: u32, alpha: &Scalar) -> Option<Scalar> {
    let (lhs, rhs) = laguerre_product_sides(n, alpha);
    let (m, c) = lhs.leading()?;
    let kappa = &rhs.coeff(m) / c;
    (rhs == lhs.scale(&kappa)).then_some(kappa)
}

/// The product formula with the sum divided by `n!`, compared exactly.
/// The printed sum equals `n!` times the left side, so without that
/// factor the identity fails for every `n ≥ 2`.
pub fn laguerre_product_identity(n: u32, alpha: &Scalar) -> Result<(), IdentityError> {
    let (lhs, rhs) = laguerre_product_sides(n, alpha);
    let diff = &lhs - &rhs.scale(&factorial(n).inv().expect("nonzero"));
    if diff.is_zero() {
        Ok(())
    } else {
        Err(IdentityError::IdentityFails { n, alpha: alpha.to_string(), difference: diff.to_string() })
    }
}

/// A separated product `c · W_j(z1) W_j(z2)` with
/// `W_j = z^{-j} e^{-z/2} L_{j-m}^{-2j-1}(z)`, Whittaker index `μ = -(j+1/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatedTerm {
    pub j: i64,
    pub whittaker_index: Scalar,
    pub coefficient: Scalar,
    /// Residual of the one-variable equation with index `m`, `C = j(j+1)`.
    pub residual: RationalExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeparationExpansion {
    /// `a = 0`: `f_Jm` as a finite sum of separated products.
    Separated { terms: Vec<SeparatedTerm>, reconstructs: bool },
    /// `a ≠ 0`: residual of the generic equation for the would-be factor
    /// `z^{-J} e^{-z/2+a/z} L_{J-m}^{-2J-1}(z)`.
    Obstructed { residual: RationalExpr },
}

fn one_variable_factor(j: i64, m: i64) -> LaurentPoly {
    let alpha = Scalar::from_int(-2 * j - 1);
    &zpow(-j as i32) * &laguerre((j - m) as u32, &alpha, &z())
}

fn product_factor(j: i64, m: i64) -> LaurentPoly {
    let f1 = one_variable_factor(j, m);
    &f1 * &f1.swapped()
}

/// `(z1z2)^{-j} L_{j-m}^{-2j-1}(z1+z2)`.
fn sum_factor(j: i64, m: i64) -> LaurentPoly {
    let alpha = Scalar::from_int(-2 * j - 1);
    let s = &LaurentPoly::var(Var::Z1) + &LaurentPoly::var(Var::Z2);
    let p = LaurentPoly::term(Monomial([-j as i32, -j as i32, 0, 0]), Scalar::from_int(1));
    &p * &laguerre((j - m) as u32, &alpha, &s)
}

/// Exact least-index solution of `Σ d_i cols_i = target`, if one exists.
fn solve_span(cols: &[LaurentPoly], target: &LaurentPoly) -> Option<Vec<Scalar>> {
    let mut monos: Vec<Monomial> = cols.iter().chain([target]).flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
    monos.sort();
    monos.dedup();
    let n = cols.len();
    let mut rows: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|mo| {
            let mut r: Vec<Scalar> = cols.iter().map(|c| c.coeff(mo)).collect();
            r.push(target.coeff(mo));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(row, p);
        let inv = rows[row][col].inv().expect("nonzero pivot");
        rows[row] = rows[row].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let sub: Vec<Scalar> = rows[row].iter().map(|x| x * &f).collect();
                for (x, y) in rows[r].iter_mut().zip(sub) {
                    *x -= &y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut d = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        d[c] = rows[r][n].clone();
    }
    Some(d)
}

/// Expands `f_Jm` over the separated products `W_j(z1) W_j(z2)`,
/// `j = m, ..., J`. The product formula says `product_j` is a combination
/// of the `sum_i`, `i ≤ j`; that system is singular for some `m < 0`, so
/// the coefficients are found by exact elimination on monomials and the
/// reconstruction is checked directly.
pub fn separation_expansion(j: u32, m: i64, a: &Scalar) -> SeparationExpansion {
    let ji = j as i64;
    assert!(m <= ji, "weight above the highest weight");
    let n = (ji - m) as u32;
    if !a.is_zero() {
        let c = &Scalar::from_int(ji * (ji + 1)) + a;
        let c0 = a * a;
        let c1 = a.scale_int(2 * (ji + 1));
        let factor = RationalExpr::from_poly(one_variable_factor(ji, m));
        let residual = whittaker_image(&factor, &Scalar::from_int(m), &c, &c0, &c1, a);
        return SeparationExpansion::Obstructed { residual };
    }
    let overall = &Scalar::i_pow(n as i64) * &factorial(n);
    let target = sum_factor(ji, m).scale(&overall);
    let cols: Vec<LaurentPoly> = (m..=ji).map(|jj| product_factor(jj, m)).collect();
    let (d, solvable) = match solve_span(&cols, &target) {
        Some(d) => (d, true),
        None => (vec![Scalar::zero(); cols.len()], false),
    };
    let mut rebuilt = LaurentPoly::zero();
    let mut terms = Vec::new();
    let zero = Scalar::zero();
    for jj in m..=ji {
        let coefficient = d[(jj - m) as usize].clone();
        rebuilt = &rebuilt + &product_factor(jj, m).scale(&coefficient);
        let factor = RationalExpr::from_poly(one_variable_factor(jj, m));
        let residual =
            whittaker_image(&factor, &Scalar::from_int(m), &Scalar::from_int(jj * (jj + 1)), &zero, &zero, &zero);
        terms.push(SeparatedTerm { j: jj, whittaker_index: Scalar::ratio(-(2 * jj + 1), 2), coefficient, residual });
    }
    SeparationExpansion::Separated { reconstructs: solvable && rebuilt == target, terms }
}
