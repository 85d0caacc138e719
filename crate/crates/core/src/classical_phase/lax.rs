use crate::exact_algebra::{RationalExpr, Scalar};

use super::PhaseMap;

/// A polynomial in the spectral parameter `z` with coefficients that are
/// rational expressions in the separation variables. `coeffs[k]` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxPoly {
    coeffs: Vec<RationalExpr>,
}

impl LaxPoly {
    pub fn new(mut coeffs: Vec<RationalExpr>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LaxPoly { coeffs }
    }

    pub fn zero() -> Self {
        LaxPoly { coeffs: Vec::new() }
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> RationalExpr {
        self.coeffs.get(k).cloned().unwrap_or_else(RationalExpr::zero)
    }

    pub fn add(&self, o: &LaxPoly) -> LaxPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        LaxPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> LaxPoly {
        LaxPoly::new(self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    pub fn mul(&self, o: &LaxPoly) -> LaxPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return LaxPoly::zero();
        }
        let mut out = vec![RationalExpr::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LaxPoly::new(out)
    }

    /// Horner evaluation at `z = x`.
    pub fn eval(&self, x: &RationalExpr) -> RationalExpr {
        self.coeffs.iter().rev().fold(RationalExpr::zero(), |acc, c| &(&acc * x) + c)
    }
}

/// The Lax entries `μ1 = p1 + L1 z`, `μ2 = p2 + L2 z`, `μ3 = p3 + L3 z + z²/2`.
#[derive(Clone, Debug)]
pub struct LaxPolynomials {
    pub mu1: LaxPoly,
    pub mu2: LaxPoly,
    pub mu3: LaxPoly,
}

impl LaxPolynomials {
    pub fn from_map(map: &PhaseMap) -> Self {
        LaxPolynomials {
            mu1: LaxPoly::new(vec![map.p[0].clone(), map.l[0].clone()]),
            mu2: LaxPoly::new(vec![map.p[1].clone(), map.l[1].clone()]),
            mu3: LaxPoly::new(vec![map.p[2].clone(), map.l[2].clone(), RationalExpr::ratio(1, 2)]),
        }
    }

    /// `μ1(z) + i μ3(z)`, whose roots are the separation coordinates.
    pub fn separating_entry(&self) -> LaxPoly {
        self.mu1.add(&self.mu3.scale(&Scalar::i()))
    }
}

/// `L(z) = [[i μ3, μ1 - i μ2], [-μ1 - i μ2, -i μ3]]`.
pub fn lax_matrix(mu: &LaxPolynomials) -> [[LaxPoly; 2]; 2] {
    let i = Scalar::i();
    let mi = -Scalar::i();
    [
        [mu.mu3.scale(&i), mu.mu1.add(&mu.mu2.scale(&mi))],
        [mu.mu1.scale(&Scalar::from_int(-1)).add(&mu.mu2.scale(&mi)), mu.mu3.scale(&mi)],
    ]
}

/// `Tr L(z)²` computed from the matrix product.
pub fn trace_of_square(m: &[[LaxPoly; 2]; 2]) -> LaxPoly {
    let a = m[0][0].mul(&m[0][0]);
    let bc = m[0][1].mul(&m[1][0]);
    let d = m[1][1].mul(&m[1][1]);
    a.add(&bc).add(&bc).add(&d)
}
