//! Multivariate Laurent polynomials in `z1, z2, w1, w2` over [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{AlgebraError, Scalar};

/// One of the four phase-space coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Z1,
    Z2,
    W1,
    W2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::Z2, Var::W1, Var::W2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::W1 => "w1",
            Var::W2 => "w2",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector `(z1, z2, w1, w2)`; may be negative.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub [i32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = [0; 4];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Exchange `(z1, w1) <-> (z2, w2)`.
    pub fn swapped(&self) -> Monomial {
        let [a, b, c, d] = self.0;
        Monomial([b, a, d, c])
    }

    fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }
}

/// A finite sum of `Scalar * Monomial` with no stored zero coefficients.
///
/// Terms live in a `BTreeMap`, so the lexicographic order on exponent
/// vectors is the canonical term order and derived equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Scalar::one())
    }

    /// `v^e` with unit coefficient.
    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::term(Monomial::var(v, e), Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The constant value, if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// `(monomial, coefficient)` if this has exactly one term.
    pub fn as_term(&self) -> Option<(Monomial, Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (zero for the zero poly).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::ONE };
        let mut m = first.0;
        for k in it {
            for (a, b) in m.iter_mut().zip(k.0) {
                *a = (*a).min(b);
            }
        }
        Monomial(m)
    }

    pub fn max_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::ONE };
        let mut m = first.0;
        for k in it {
            for (a, b) in m.iter_mut().zip(k.0) {
                *a = (*a).max(b);
            }
        }
        Monomial(m)
    }

    /// Exact partial derivative; Laurent exponents follow the power rule.
    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut k = *m;
            k.0[i] -= 1;
            out.insert(k, c.scale_int(e as i64));
        }
        LaurentPoly { terms: out }
    }

    /// Exchange `(z1, w1) <-> (z2, w2)`.
    pub fn swapped(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.swapped(), c.clone())).collect() }
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    /// Exact division. `Ok(r)` with `self = q * r`, or `NotDivisible`.
    ///
    /// Both operands are shifted into the ordinary polynomial ring by their
    /// minimum exponents. The shifted divisor has no monomial factor, so
    /// Laurent divisibility equals polynomial divisibility there, and a
    /// single divisor is its own Gröbner basis: lex-leading-term reduction
    /// decides membership.
    pub fn exact_div(&self, q: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        if q.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if let Some((m, c)) = q.as_term() {
            let inv = c.inv()?;
            return Ok(LaurentPoly {
                terms: self.terms.iter().map(|(k, x)| (k.div(&m), x * &inv)).collect(),
            });
        }
        let sp = self.min_exponents();
        let sq = q.min_exponents();
        let mut rem = self.mul_monomial(&Monomial::ONE.div(&sp));
        let d = q.mul_monomial(&Monomial::ONE.div(&sq));
        let (dlm, dlc) = d.leading().map(|(m, c)| (*m, c.clone())).expect("nonzero");
        let dinv = dlc.inv()?;
        let mut quot = LaurentPoly::zero();
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !dlm.divides(&lm) {
                return Err(AlgebraError::NotDivisible);
            }
            let tm = lm.div(&dlm);
            let tc = &lc * &dinv;
            rem = &rem - &d.mul_term(&tm, &tc);
            quot.add_term(tm, &tc);
        }
        Ok(quot.mul_monomial(&sp.div(&sq)))
    }

    /// Exact evaluation with some variables bound to scalars; unbound ones stay symbolic.
    pub fn substitute_scalars(&self, point: &[Option<Scalar>; 4]) -> Result<LaurentPoly, AlgebraError> {
        let mut cache: [BTreeMap<i32, Scalar>; 4] = Default::default();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = *m;
            for v in 0..4 {
                if let Some(x) = &point[v] {
                    let e = m.0[v];
                    if e != 0 {
                        let pw = match cache[v].get(&e) {
                            Some(p) => p.clone(),
                            None => {
                                let p = x.pow(e)?;
                                cache[v].insert(e, p.clone());
                                p
                            }
                        };
                        coef = &coef * &pw;
                    }
                    rest.0[v] = 0;
                }
            }
            out.add_term(rest, &coef);
        }
        Ok(out)
    }

    /// Evaluate at a complex point; `None` if a negative power meets a zero.
    pub fn eval_complex(&self, point: &[Complex64; 4]) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex64();
            for v in 0..4 {
                let e = m.0[v];
                if e != 0 {
                    if e < 0 && point[v].norm() == 0.0 {
                        return None;
                    }
                    t *= point[v].powi(e);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// `Σ |c|·|monomial(point)|`, the scale against which cancellation is judged.
    pub fn eval_abs_scale(&self, point: &[Complex64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_complex64().norm();
                for v in 0..4 {
                    if m.0[v] != 0 {
                        t *= point[v].norm().powi(m.0[v]);
                    }
                }
                t
            })
            .sum()
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_poly(self))
    }
}
