//! Differential operators in `z1, z2` with rational coefficients, acting on
//! wavefunctions `prefactor · e^E` with `E = -(z1+z2)/2 + a/z1 + a/z2`.
//!
//! The exponential is never expanded. A derivative acts on the prefactor
//! through the twisted derivative `∂_k + ∂E/∂z_k`, so every identity on
//! wavefunctions reduces to an identity between rational expressions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_algebra::{parse_poly, LaurentPoly, Monomial, RationalExpr, Scalar, Var};

/// Derivative order above which reports flag an operator as unusually large.
pub const ORDER_WARNING: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiffOpError {
    #[error("input wavefunction is not symmetric under z1 <-> z2")]
    AsymmetricInput,
    #[error("image is not symmetric under z1 <-> z2")]
    ImageNotSymmetric,
    #[error("pole (z1 - z2)^{order} survives in the image")]
    PoleSurvives { order: u32 },
}

/// The exponential `e^E` carried by every wavefunction of one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpFactor {
    pub a: Scalar,
}

impl ExpFactor {
    pub fn new(a: Scalar) -> Self {
        ExpFactor { a }
    }

    /// `a = 0`: the factor `e^{-(z1+z2)/2}`.
    pub fn degenerate() -> Self {
        ExpFactor { a: Scalar::zero() }
    }

    /// `∂E/∂z_k = -1/2 - a/z_k²`.
    pub fn log_derivative(&self, v: Var) -> LaurentPoly {
        let half = LaurentPoly::constant(Scalar::ratio(-1, 2));
        let tail = LaurentPoly::term(Monomial::var(v, -2), -&self.a);
        &half + &tail
    }
}

/// `prefactor · e^E` for a fixed [`ExpFactor`].
#[derive(Clone, Debug)]
pub struct WaveFunction {
    pub prefactor: RationalExpr,
    pub exp: ExpFactor,
}

impl PartialEq for WaveFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.prefactor.is_zero() && other.prefactor.is_zero() {
            return true;
        }
        self.exp == other.exp && self.prefactor == other.prefactor
    }
}

impl WaveFunction {
    pub fn new(prefactor: RationalExpr, exp: ExpFactor) -> Self {
        WaveFunction { prefactor, exp }
    }

    pub fn zero(exp: ExpFactor) -> Self {
        WaveFunction { prefactor: RationalExpr::zero(), exp }
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.prefactor.is_symmetric()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        WaveFunction { prefactor: self.prefactor.scale(c), exp: self.exp.clone() }
    }

    pub fn mul_expr(&self, r: &RationalExpr) -> Self {
        WaveFunction { prefactor: &self.prefactor * r, exp: self.exp.clone() }
    }

    /// Sum of two wavefunctions of the same orbit.
    pub fn add(&self, o: &WaveFunction) -> Self {
        assert_eq!(self.exp, o.exp, "wavefunctions from different orbits");
        WaveFunction { prefactor: &self.prefactor + &o.prefactor, exp: self.exp.clone() }
    }

    pub fn sub(&self, o: &WaveFunction) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    /// `e^{-E} ∂_v (prefactor e^E)`.
    pub fn twisted_derivative(&self, v: Var) -> Self {
        let d = self.prefactor.partial_derivative(v);
        let e = self.prefactor.mul_poly(&self.exp.log_derivative(v));
        WaveFunction { prefactor: &d + &e, exp: self.exp.clone() }
    }
}

/// Derivative multi-order `(i, j)` for `∂1^i ∂2^j`.
pub type Order = (u32, u32);

/// `Σ c_ij(z) ∂1^i ∂2^j` with coefficients to the left.
#[derive(Clone, Debug, Default)]
pub struct DiffOperator {
    terms: BTreeMap<Order, RationalExpr>,
}

impl PartialEq for DiffOperator {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

impl DiffOperator {
    pub fn zero() -> Self {
        DiffOperator { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::multiplication(RationalExpr::one())
    }

    /// Multiplication by `c`.
    pub fn multiplication(c: RationalExpr) -> Self {
        Self::term((0, 0), c)
    }

    /// `∂1^i ∂2^j`.
    pub fn derivative(i: u32, j: u32) -> Self {
        Self::term((i, j), RationalExpr::one())
    }

    pub fn term(order: Order, c: RationalExpr) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(order, c);
        }
        DiffOperator { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Order, &RationalExpr)> {
        self.terms.iter()
    }

    pub fn coeff(&self, order: Order) -> RationalExpr {
        self.terms.get(&order).cloned().unwrap_or_else(RationalExpr::zero)
    }

    /// Total derivative order; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    fn add_term(&mut self, order: Order, c: RationalExpr) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&order) {
            Some(x) => &x + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(order, merged);
        }
    }

    pub fn add(&self, o: &DiffOperator) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &DiffOperator) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffOperator { terms: self.terms.iter().map(|(k, x)| (*k, x.scale(c))).collect() }
    }

    /// `c · self`, multiplying every coefficient.
    pub fn left_mul(&self, c: &RationalExpr) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, x * c);
        }
        out
    }

    /// Exchange `z1 <-> z2`, mapping `∂1^i ∂2^j` to `∂1^j ∂2^i`.
    pub fn swapped(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            out.add_term((*j, *i), c.swapped());
        }
        out
    }

    /// Canonical rendering, one `d(i,j): coefficient` line per term.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0\n".into();
        }
        let mut s = String::new();
        for ((i, j), c) in &self.terms {
            s.push_str(&format!("d({i},{j}): {}\n", c.render()));
        }
        s
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Mixed partials `∂1^i ∂2^j c` of one coefficient, memoized.
struct DerivativeCache<'a> {
    base: &'a RationalExpr,
    memo: BTreeMap<Order, RationalExpr>,
}

impl<'a> DerivativeCache<'a> {
    fn new(base: &'a RationalExpr) -> Self {
        DerivativeCache { base, memo: BTreeMap::new() }
    }

    fn get(&mut self, (i, j): Order) -> RationalExpr {
        if i == 0 && j == 0 {
            return self.base.clone();
        }
        if let Some(x) = self.memo.get(&(i, j)) {
            return x.clone();
        }
        let x = if i > 0 {
            self.get((i - 1, j)).partial_derivative(Var::Z1)
        } else {
            self.get((0, j - 1)).partial_derivative(Var::Z2)
        };
        self.memo.insert((i, j), x.clone());
        x
    }
}

fn twisted(memo: &mut BTreeMap<Order, WaveFunction>, (i, j): Order) -> WaveFunction {
    if let Some(x) = memo.get(&(i, j)) {
        return x.clone();
    }
    let x = if i > 0 {
        twisted(memo, (i - 1, j)).twisted_derivative(Var::Z1)
    } else {
        twisted(memo, (0, j - 1)).twisted_derivative(Var::Z2)
    };
    memo.insert((i, j), x.clone());
    x
}

/// Applies `op` to `f` exactly.
pub fn apply(op: &DiffOperator, f: &WaveFunction) -> WaveFunction {
    let mut memo: BTreeMap<Order, WaveFunction> = BTreeMap::new();
    memo.insert((0, 0), f.clone());
    let mut acc = RationalExpr::zero();
    for (k, c) in &op.terms {
        let g = twisted(&mut memo, *k);
        acc = &acc + &(c * &g.prefactor);
    }
    WaveFunction { prefactor: acc, exp: f.exp.clone() }
}

/// The normal-form product `A ∘ B`, using
/// `∂^α (b ∂^β) = Σ_κ C(α, κ) (∂^κ b) ∂^{α-κ+β}` termwise.
pub fn compose(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    let mut out = DiffOperator::zero();
    let mut caches: Vec<(Order, DerivativeCache)> =
        b.terms.iter().map(|(k, c)| (*k, DerivativeCache::new(c))).collect();
    for ((a1, a2), ca) in &a.terms {
        for ((b1, b2), cache) in caches.iter_mut() {
            for k1 in 0..=*a1 {
                for k2 in 0..=*a2 {
                    let db = cache.get((k1, k2));
                    if db.is_zero() {
                        continue;
                    }
                    let binom = binomial(*a1, k1) * binomial(*a2, k2);
                    let coeff = (ca * &db).scale(&Scalar::from_int(binom));
                    out.add_term((a1 - k1 + *b1, a2 - k2 + *b2), coeff);
                }
            }
        }
    }
    out
}

/// `[A, B] = A∘B - B∘A`.
pub fn commutator(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    compose(a, b).sub(&compose(b, a))
}

/// Outcome of a passing [`symmetric_closure_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureReport {
    /// Highest power of `(z1 - z2)` in any coefficient of the operator.
    pub apparent_pole_order: u32,
    pub image: WaveFunction,
}

fn diagonal() -> LaurentPoly {
    parse_poly("z1 - z2").expect("static")
}

/// Multiplicity of the factor `z1 - z2` in a denominator.
pub fn diagonal_pole_order(r: &RationalExpr) -> u32 {
    let d = diagonal();
    r.den_factors().filter(|(a, _)| **a == d).map(|(_, e)| e).sum()
}

/// Checks that `op` maps the symmetric `f` to a symmetric function whose
/// apparent pole on `z1 = z2` cancels.
pub fn symmetric_closure_check(op: &DiffOperator, f: &WaveFunction) -> Result<ClosureReport, DiffOpError> {
    if !f.is_symmetric() {
        return Err(DiffOpError::AsymmetricInput);
    }
    let apparent_pole_order = op.terms().map(|(_, c)| diagonal_pole_order(c)).max().unwrap_or(0);
    let image = apply(op, f);
    if !image.is_symmetric() {
        return Err(DiffOpError::ImageNotSymmetric);
    }
    let k = diagonal_pole_order(&image.prefactor);
    if k > 0 && image.prefactor.num().exact_div(&diagonal().pow(k)).is_err() {
        return Err(DiffOpError::PoleSurvives { order: k });
    }
    Ok(ClosureReport { apparent_pole_order, image })
}
