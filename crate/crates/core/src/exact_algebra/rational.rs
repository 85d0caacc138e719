//! Fractions of Laurent polynomials with exact equality.
//!
//! No multivariate GCD is computed. The denominator is kept as a product
//! of normalized factors (monomial content stripped, leading coefficient
//! one), and after each operation every factor is cancelled against the
//! numerator by exact division for as long as that succeeds. Equality
//! compares numerators over the common multiple of the two factor lists.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{AlgebraError, LaurentPoly, Monomial, Scalar, Var};

/// Relative threshold below which a denominator counts as vanishing.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: LaurentPoly,
    den: BTreeMap<LaurentPoly, u32>,
}

/// A value a variable may be bound to in [`RationalExpr::substitute`].
#[derive(Clone, Debug)]
pub enum Binding {
    Scalar(Scalar),
    Expr(RationalExpr),
}

/// Splits `q` into a unit part (`scalar * monomial`) and a normalized factor.
fn normalize_factor(q: &LaurentPoly) -> (Monomial, Scalar, Option<LaurentPoly>) {
    let shift = q.min_exponents();
    let shifted = q.mul_monomial(&Monomial::ONE.div(&shift));
    let lc = shifted.leading().map(|(_, c)| c.clone()).expect("nonzero factor");
    let atom = shifted.scale(&lc.inv().expect("nonzero"));
    if atom.is_one() {
        (shift, lc, None)
    } else {
        (shift, lc, Some(atom))
    }
}

impl RationalExpr {
    pub fn zero() -> Self {
        RationalExpr { num: LaurentPoly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalExpr { num, den: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(Scalar::ratio(n, d))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::from_poly(LaurentPoly::var_pow(v, e))
    }

    /// `num / den`; fails when `den` is the zero polynomial.
    pub fn new(num: LaurentPoly, den: &LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = Self::from_poly(num);
        r.divide_by_poly(den, 1);
        Ok(r)
    }

    /// Divides in place by `q^k`, `q` nonzero.
    fn divide_by_poly(&mut self, q: &LaurentPoly, k: u32) {
        let (shift, lc, atom) = normalize_factor(q);
        let unit_inv = lc.inv().expect("nonzero").pow(k as i32).expect("nonzero");
        let mono = Monomial::ONE.div(&shift);
        let mono = Monomial(mono.0.map(|e| e * k as i32));
        self.num = self.num.mul_term(&mono, &unit_inv);
        if let Some(a) = atom {
            *self.den.entry(a).or_insert(0) += k;
        }
        self.cancel();
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let atoms: Vec<LaurentPoly> = self.den.keys().cloned().collect();
        for a in atoms {
            let e = self.den.get_mut(&a).expect("present");
            while *e > 0 {
                match self.num.exact_div(&a) {
                    Ok(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    Err(_) => break,
                }
            }
            if *e == 0 {
                self.den.remove(&a);
            }
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// The normalized denominator factors with multiplicities.
    pub fn den_factors(&self) -> impl Iterator<Item = (&LaurentPoly, u32)> {
        self.den.iter().map(|(a, e)| (a, *e))
    }

    /// The expanded denominator.
    pub fn den(&self) -> LaurentPoly {
        self.den.iter().fold(LaurentPoly::one(), |acc, (a, e)| &acc * &a.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.num.uses_var(v) || self.den.keys().any(|a| a.uses_var(v))
    }

    /// Numerators of `self` and `other` rewritten over a shared denominator.
    fn common(&self, other: &Self) -> (LaurentPoly, LaurentPoly, BTreeMap<LaurentPoly, u32>) {
        if self.den == other.den {
            return (self.num.clone(), other.num.clone(), self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (a, e) in &other.den {
            let x = lcm.entry(a.clone()).or_insert(0);
            *x = (*x).max(*e);
        }
        let lift = |r: &RationalExpr| {
            let mut n = r.num.clone();
            for (a, e) in &lcm {
                let have = r.den.get(a).copied().unwrap_or(0);
                if *e > have {
                    n = &n * &a.pow(*e - have);
                }
            }
            n
        };
        (lift(self), lift(other), lcm)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut r = RationalExpr { num: &self.num * p, den: self.den.clone() };
        r.cancel();
        r
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = RationalExpr::from_poly(self.den());
        r.divide_by_poly(&self.num, 1);
        Ok(r)
    }

    pub fn pow(&self, k: i32) -> Result<Self, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalExpr::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact quotient-rule derivative.
    ///
    /// With `f = N / Π A_i^{e_i}`:
    /// `f' = (N' Π A_i - N Σ e_i A_i' Π_{j≠i} A_j) / (Π A_i^{e_i+1})`.
    pub fn partial_derivative(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        let moving: Vec<(&LaurentPoly, u32, LaurentPoly)> = self
            .den
            .iter()
            .map(|(a, e)| (a, *e, a.derivative(v)))
            .filter(|(_, _, da)| !da.is_zero())
            .collect();
        if moving.is_empty() {
            let mut r = RationalExpr { num: dn, den: self.den.clone() };
            r.cancel();
            return r;
        }
        let prod_all = moving.iter().fold(LaurentPoly::one(), |acc, (a, _, _)| &acc * *a);
        let mut num = &dn * &prod_all;
        for (i, (_, e, da)) in moving.iter().enumerate() {
            let others = moving
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(LaurentPoly::one(), |acc, (_, (a, _, _))| &acc * *a);
            let t = (&self.num * da).scale(&Scalar::from_int(*e as i64));
            num = &num - &(&t * &others);
        }
        let mut den = self.den.clone();
        for (a, _, _) in &moving {
            *den.get_mut(*a).expect("present") += 1;
        }
        let mut r = RationalExpr { num, den };
        r.cancel();
        r
    }

    /// Exchange `(z1, w1) <-> (z2, w2)`.
    pub fn swapped(&self) -> Self {
        let mut r = RationalExpr::from_poly(self.num.swapped());
        for (a, e) in &self.den {
            r.divide_by_poly(&a.swapped(), *e);
        }
        r
    }

    pub fn is_symmetric(&self) -> bool {
        self.swapped() == *self
    }

    /// Exact substitution of variables by scalars or rational expressions.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Binding>) -> Result<Self, AlgebraError> {
        let mut scalars: [Option<Scalar>; 4] = Default::default();
        let mut exprs: Vec<(Var, RationalExpr)> = Vec::new();
        for (v, b) in bindings {
            match b {
                Binding::Scalar(s) => scalars[v.index()] = Some(s.clone()),
                Binding::Expr(e) => exprs.push((*v, e.clone())),
            }
        }
        let step1 = |p: &LaurentPoly| p.substitute_scalars(&scalars);
        let mut out = RationalExpr::from_poly(step1(&self.num)?);
        for (a, e) in &self.den {
            let sa = step1(a)?;
            if sa.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            out.divide_by_poly(&sa, *e);
        }
        if exprs.is_empty() {
            return Ok(out);
        }
        let subst = |p: &LaurentPoly| -> Result<RationalExpr, AlgebraError> {
            let mut cache: BTreeMap<(Var, i32), RationalExpr> = BTreeMap::new();
            let mut acc = RationalExpr::zero();
            for (m, c) in p.terms() {
                let mut rest = *m;
                let mut t = RationalExpr::one();
                for (v, val) in &exprs {
                    let e = m.exp(*v);
                    rest.0[v.index()] = 0;
                    if e == 0 {
                        continue;
                    }
                    let pw = match cache.get(&(*v, e)) {
                        Some(x) => x.clone(),
                        None => {
                            let x = val.pow(e)?;
                            cache.insert((*v, e), x.clone());
                            x
                        }
                    };
                    t = &t * &pw;
                }
                acc = &acc + &t.mul_poly(&LaurentPoly::term(rest, c.clone()));
            }
            Ok(acc)
        };
        let mut r = subst(&out.num)?;
        for (a, e) in &out.den {
            let sa = subst(a)?;
            if sa.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            r = &r * &sa.pow(-(*e as i32))?;
        }
        Ok(r)
    }

    /// Exact value at a point where every variable is bound to a scalar.
    pub fn eval_exact(&self, point: &[Scalar; 4]) -> Result<Scalar, AlgebraError> {
        let pt: [Option<Scalar>; 4] = point.clone().map(Some);
        let n = self.num.substitute_scalars(&pt)?.as_constant().expect("fully bound");
        let mut d = Scalar::one();
        for (a, e) in &self.den {
            let v = a.substitute_scalars(&pt)?.as_constant().expect("fully bound");
            d = &d * &v.pow(*e as i32)?;
        }
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(&n / &d)
    }

    /// Floating evaluation; `NearPole` when a denominator factor vanishes
    /// relative to its own term scale.
    pub fn eval_complex(&self, point: &[Complex64; 4]) -> Result<Complex64, AlgebraError> {
        CompiledExpr::new(self).eval(point)
    }

    pub fn render(&self) -> String {
        let n = self.num.to_string();
        if self.den.is_empty() {
            return n;
        }
        let d: Vec<String> = self
            .den
            .iter()
            .map(|(a, e)| if *e == 1 { format!("({a})") } else { format!("({a})^{e}") })
            .collect();
        format!("({n})/{}", d.join("*"))
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        let (a, b, _) = self.common(other);
        a == b
    }
}

impl Eq for RationalExpr {}

impl<'a> Add<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, den) = self.common(rhs);
        let mut r = RationalExpr { num: &a + &b, den };
        r.cancel();
        r
    }
}

impl<'a> Sub<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        if self.is_zero() || rhs.is_zero() {
            return RationalExpr::zero();
        }
        let mut den = self.den.clone();
        for (a, e) in &rhs.den {
            *den.entry(a.clone()).or_insert(0) += e;
        }
        let mut r = RationalExpr { num: &self.num * &rhs.num, den };
        r.cancel();
        r
    }
}

impl<'a> Div<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    /// Panics on division by zero; use [`RationalExpr::inv`] for a fallible path.
    fn div(self, rhs: &RationalExpr) -> RationalExpr {
        self * &rhs.inv().expect("division by zero expression")
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $m(self, rhs: RationalExpr) -> RationalExpr {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $m(self, rhs: &RationalExpr) -> RationalExpr {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<LaurentPoly> for RationalExpr {
    fn from(p: LaurentPoly) -> Self {
        RationalExpr::from_poly(p)
    }
}

impl From<Scalar> for RationalExpr {
    fn from(c: Scalar) -> Self {
        RationalExpr::constant(c)
    }
}

impl From<Var> for RationalExpr {
    fn from(v: Var) -> Self {
        RationalExpr::var(v)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

type FloatTerms = Vec<([i32; 4], Complex64)>;

fn float_terms(p: &LaurentPoly) -> FloatTerms {
    p.terms().map(|(m, c)| (m.0, c.to_complex64())).collect()
}

fn eval_terms(t: &FloatTerms, pt: &[Complex64; 4]) -> Result<(Complex64, f64), AlgebraError> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (e, c) in t {
        let mut x = *c;
        for v in 0..4 {
            if e[v] != 0 {
                if e[v] < 0 && pt[v].norm() < POLE_TOLERANCE {
                    return Err(AlgebraError::NearPole);
                }
                x *= pt[v].powi(e[v]);
            }
        }
        scale += x.norm();
        acc += x;
    }
    Ok((acc, scale))
}

/// A [`RationalExpr`] lowered to floating coefficients for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    num: FloatTerms,
    den: Vec<(FloatTerms, i32)>,
}

impl CompiledExpr {
    pub fn new(r: &RationalExpr) -> Self {
        CompiledExpr {
            num: float_terms(&r.num),
            den: r.den.iter().map(|(a, e)| (float_terms(a), *e as i32)).collect(),
        }
    }

    pub fn eval(&self, pt: &[Complex64; 4]) -> Result<Complex64, AlgebraError> {
        let (mut v, _) = eval_terms(&self.num, pt)?;
        for (a, e) in &self.den {
            let (x, scale) = eval_terms(a, pt)?;
            if x.norm() <= POLE_TOLERANCE * scale {
                return Err(AlgebraError::NearPole);
            }
            v /= x.powi(*e);
        }
        Ok(v)
    }
}
