//! The second-order operator realization of e(3) on symmetric functions of
//! `z1, z2`, the two separated Hamiltonians, and the commutator suite.

use num_traits::Zero;
use thiserror::Error;

use crate::classical_phase::OrbitParams;
use crate::diff_ops::{apply, commutator, compose, DiffOperator, WaveFunction};
use crate::exact_algebra::{parse_poly, LaurentPoly, Monomial, RationalExpr, Scalar, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepresentationError {
    #[error("relation {relation} fails; residual:\n{residual}")]
    RelationFailed { relation: String, residual: String },
}

#[derive(Clone, Debug)]
pub struct E3Generators {
    pub l3: DiffOperator,
    pub lplus: DiffOperator,
    pub lminus: DiffOperator,
    pub p3: DiffOperator,
    pub pplus: DiffOperator,
    pub pminus: DiffOperator,
    pub h2: DiffOperator,
    pub h3: DiffOperator,
}

fn frac(num: &str, den: &str) -> RationalExpr {
    let n = parse_poly(num).expect("static");
    let d = parse_poly(den).expect("static");
    RationalExpr::new(n, &d).expect("nonzero")
}

/// `num / (z1 - z2)^k`, keeping `z1 - z2` as the single denominator factor.
fn over_diag(num: &str, k: i32) -> RationalExpr {
    let d = RationalExpr::from_poly(parse_poly("z1 - z2").expect("static"));
    &frac(num, "1") * &d.pow(-k).expect("nonzero")
}

fn second(v: Var) -> DiffOperator {
    if v == Var::Z1 {
        DiffOperator::derivative(2, 0)
    } else {
        DiffOperator::derivative(0, 2)
    }
}

fn first(v: Var) -> DiffOperator {
    if v == Var::Z1 {
        DiffOperator::derivative(1, 0)
    } else {
        DiffOperator::derivative(0, 1)
    }
}

/// `-1/4 - c1/z³ - c0/z⁴` in the variable `v`.
fn potential(orbit: &OrbitParams, v: Var) -> RationalExpr {
    let p = LaurentPoly::from_terms([
        (Monomial::ONE, Scalar::ratio(-1, 4)),
        (Monomial::var(v, -3), -&orbit.c1),
        (Monomial::var(v, -4), -&orbit.c0),
    ]);
    RationalExpr::from_poly(p)
}

/// `∂_v² + V(z_v)`.
fn separated(orbit: &OrbitParams, v: Var) -> DiffOperator {
    second(v).add(&DiffOperator::multiplication(potential(orbit, v)))
}

/// `z_v²/(z1 - z2)` with the sign making the combination antisymmetric
/// in the labels, so that `z2` picks up `-z2²/(z1 - z2)`.
fn weight(v: Var, num: &str) -> RationalExpr {
    let w = over_diag(num, 1);
    if v == Var::Z1 {
        w
    } else {
        -w
    }
}

fn l3(orbit: &OrbitParams) -> DiffOperator {
    let mut op = DiffOperator::zero();
    for v in [Var::Z1, Var::Z2] {
        let num = if v == Var::Z1 { "z1^2" } else { "z2^2" };
        op = op.add(&separated(orbit, v).left_mul(&weight(v, num)));
    }
    op
}

/// `L̂±`; `sign = +1` for the raising operator.
fn lpm(orbit: &OrbitParams, sign: i64) -> DiffOperator {
    let mut op = DiffOperator::zero();
    for v in [Var::Z1, Var::Z2] {
        let num = if v == Var::Z1 { "z1^2" } else { "z2^2" };
        let inner = separated(orbit, v)
            .scale(&Scalar::from_int(-1))
            .add(&DiffOperator::multiplication(RationalExpr::ratio(-1, 2)))
            .add(&first(v).scale(&Scalar::from_int(-sign)));
        op = op.add(&inner.left_mul(&weight(v, num).scale(&Scalar::i())));
    }
    op
}

/// `z1²∂1² + z2²∂2² - 2 z1 z2 ∂1∂2`.
fn d2() -> DiffOperator {
    DiffOperator::term((2, 0), frac("z1^2", "1"))
        .add(&DiffOperator::term((0, 2), frac("z2^2", "1")))
        .add(&DiffOperator::term((1, 1), frac("-2*z1*z2", "1")))
}

/// The part shared by `p̂3` and `p̂±`:
/// `s·[(z1z2/d²)·D2 - (2z1²z2²/d³)(∂1 - ∂2)] + z1z2/4 + t·c0/(z1z2)`.
fn p_core(orbit: &OrbitParams, s: i64, t: i64) -> DiffOperator {
    let s = Scalar::from_int(s);
    let grad = DiffOperator::derivative(1, 0).sub(&DiffOperator::derivative(0, 1));
    let second_order = d2().left_mul(&over_diag("z1*z2", 2));
    let first_order = grad.left_mul(&over_diag("2*z1^2*z2^2", 3));
    let zeroth = &frac("z1*z2", "4") + &frac("1", "z1*z2").scale(&orbit.c0.scale_int(t));
    second_order.sub(&first_order).scale(&s).add(&DiffOperator::multiplication(zeroth))
}

fn p3(orbit: &OrbitParams) -> DiffOperator {
    p_core(orbit, -1, 1)
}

fn ppm(orbit: &OrbitParams, sign: i64) -> DiffOperator {
    let euler = DiffOperator::term((1, 0), frac("z1", "1")).sub(&DiffOperator::term((0, 1), frac("z2", "1")));
    let shift = euler.left_mul(&over_diag("z1*z2", 1)).scale(&Scalar::from_int(sign));
    p_core(orbit, 1, -1).add(&shift).scale(&Scalar::i())
}

fn h2(orbit: &OrbitParams) -> DiffOperator {
    let mut op = DiffOperator::zero();
    for v in [Var::Z1, Var::Z2] {
        let num = if v == Var::Z1 { "-z1^2*z2" } else { "-z1*z2^2" };
        op = op.add(&separated(orbit, v).left_mul(&weight(v, num)));
    }
    op
}

/// The eight displayed operators with `c0, c1` bound.
pub fn build_generators(orbit: &OrbitParams) -> E3Generators {
    let l3 = l3(orbit);
    E3Generators {
        h3: l3.clone(),
        l3,
        lplus: lpm(orbit, 1),
        lminus: lpm(orbit, -1),
        p3: p3(orbit),
        pplus: ppm(orbit, 1),
        pminus: ppm(orbit, -1),
        h2: h2(orbit),
    }
}

impl E3Generators {
    /// `(name, operator)` pairs in display order.
    pub fn named(&self) -> [(&'static str, &DiffOperator); 8] {
        [
            ("L3", &self.l3),
            ("L+", &self.lplus),
            ("L-", &self.lminus),
            ("p3", &self.p3),
            ("p+", &self.pplus),
            ("p-", &self.pminus),
            ("h2", &self.h2),
            ("h3", &self.h3),
        ]
    }

    /// `L̂² = L̂3² + (L̂+L̂- + L̂-L̂+)/2`.
    pub fn l_squared(&self) -> DiffOperator {
        symmetrized(&self.l3, &self.l3, &self.lplus, &self.lminus)
    }

    /// `p̂² = p̂3² + (p̂+p̂- + p̂-p̂+)/2`.
    pub fn p_squared(&self) -> DiffOperator {
        symmetrized(&self.p3, &self.p3, &self.pplus, &self.pminus)
    }

    /// `(p̂, L̂) = p̂3L̂3 + (p̂+L̂- + p̂-L̂+)/2`.
    pub fn p_dot_l(&self) -> DiffOperator {
        let half = Scalar::ratio(1, 2);
        compose(&self.p3, &self.l3)
            .add(&compose(&self.pplus, &self.lminus).scale(&half))
            .add(&compose(&self.pminus, &self.lplus).scale(&half))
    }
}

fn symmetrized(a3: &DiffOperator, b3: &DiffOperator, plus: &DiffOperator, minus: &DiffOperator) -> DiffOperator {
    let half = Scalar::ratio(1, 2);
    compose(a3, b3).add(&compose(plus, minus).add(&compose(minus, plus)).scale(&half))
}

/// One exact operator relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationRecord {
    pub relation: String,
    pub residual: DiffOperator,
}

impl RelationRecord {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

fn record(relation: &str, parts: &[DiffOperator]) -> RelationRecord {
    let residual = parts.iter().fold(DiffOperator::zero(), |acc, r| acc.add(r));
    RelationRecord { relation: relation.into(), residual }
}

/// The relations as ten records. A paired relation such as `[L3,L±] = ±L±`
/// is one record; its residual is the first nonzero one of the two signs.
pub fn commutator_records(g: &E3Generators) -> Vec<RelationRecord> {
    let two = Scalar::from_int(2);
    let pair = |name: &str, a: DiffOperator, b: DiffOperator| -> RelationRecord {
        if a.is_zero() {
            RelationRecord { relation: name.into(), residual: b }
        } else {
            RelationRecord { relation: name.into(), residual: a }
        }
    };
    vec![
        pair(
            "[L3,L±]=±L±",
            commutator(&g.l3, &g.lplus).sub(&g.lplus),
            commutator(&g.l3, &g.lminus).add(&g.lminus),
        ),
        record("[L+,L-]=2L3", &[commutator(&g.lplus, &g.lminus), g.l3.scale(&-&two)]),
        pair("[p3,p±]=0", commutator(&g.p3, &g.pplus), commutator(&g.p3, &g.pminus)),
        record("[p+,p-]=0", &[commutator(&g.pplus, &g.pminus)]),
        pair(
            "[L3,p±]=±p±",
            commutator(&g.l3, &g.pplus).sub(&g.pplus),
            commutator(&g.l3, &g.pminus).add(&g.pminus),
        ),
        pair(
            "[p3,L±]=±p±",
            commutator(&g.p3, &g.lplus).sub(&g.pplus),
            commutator(&g.p3, &g.lminus).add(&g.pminus),
        ),
        record("[L+,p-]=2p3", &[commutator(&g.lplus, &g.pminus), g.p3.scale(&-&two)]),
        record("[p+,L-]=2p3", &[commutator(&g.pplus, &g.lminus), g.p3.scale(&-&two)]),
        record("h3=L3", &[g.h3.sub(&g.l3)]),
        record("[h2,h3]=0", &[commutator(&g.h2, &g.h3)]),
    ]
}

/// All ten relations, failing on the first nonzero residual.
pub fn verify_e3_commutators(g: &E3Generators) -> Result<Vec<RelationRecord>, RepresentationError> {
    let records = commutator_records(g);
    if let Some(bad) = records.iter().find(|r| !r.holds()) {
        return Err(RepresentationError::RelationFailed {
            relation: bad.relation.clone(),
            residual: bad.residual.render(),
        });
    }
    Ok(records)
}

/// `Some(λ)` when `g = λ f`; `Some(0)` when `g = 0`.
pub fn eigenvalue(f: &WaveFunction, g: &WaveFunction) -> Option<Scalar> {
    if g.is_zero() {
        return Some(Scalar::zero());
    }
    if f.is_zero() || f.exp != g.exp {
        return None;
    }
    (&g.prefactor / &f.prefactor).as_constant()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CasimirEntry {
    pub index: usize,
    pub p_squared: Option<Scalar>,
    pub p_dot_l: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct CasimirReport {
    pub entries: Vec<CasimirEntry>,
}

impl CasimirReport {
    /// Every entry is an eigenvector and the eigenvalues agree across the basis.
    pub fn consistent(&self) -> bool {
        let same = |get: fn(&CasimirEntry) -> &Option<Scalar>| {
            let first = self.entries.first().map(get);
            self.entries.iter().all(|e| get(e).is_some() && Some(get(e)) == first)
        };
        same(|e| &e.p_squared) && same(|e| &e.p_dot_l)
    }
}

/// Applies the two quadratic Casimirs to each basis vector.
pub fn casimir_report(g: &E3Generators, basis: &[WaveFunction]) -> CasimirReport {
    if basis.is_empty() {
        return CasimirReport::default();
    }
    let p2 = g.p_squared();
    let pl = g.p_dot_l();
    let entries = basis
        .iter()
        .enumerate()
        .map(|(index, f)| CasimirEntry {
            index,
            p_squared: eigenvalue(f, &apply(&p2, f)),
            p_dot_l: eigenvalue(f, &apply(&pl, f)),
        })
        .collect();
    CasimirReport { entries }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianAction {
    pub h2f: WaveFunction,
    pub h3f: WaveFunction,
    /// `ĥ3 f = L̂3 f`.
    pub h3_matches_l3: bool,
    /// `(ĥ2 - L̂² - p̂3) f`, kept verbatim.
    pub h2_difference: WaveFunction,
}

/// `ĥ2 - (L̂² + p̂3)` in normal form.
pub fn h2_difference_operator(g: &E3Generators) -> DiffOperator {
    g.h2.sub(&g.l_squared().add(&g.p3))
}

pub fn hamiltonian_action(g: &E3Generators, f: &WaveFunction) -> HamiltonianAction {
    let h3f = apply(&g.h3, f);
    HamiltonianAction {
        h2f: apply(&g.h2, f),
        h3_matches_l3: h3f == apply(&g.l3, f),
        h3f,
        h2_difference: apply(&h2_difference_operator(g), f),
    }
}

/// A quick structural property: every generator has order at most two and
/// denominators built only from `z1`, `z2` and `z1 - z2`.
pub fn generators_well_formed(g: &E3Generators) -> bool {
    let diag = parse_poly("z1 - z2").expect("static");
    g.named().iter().all(|(_, op)| {
        op.order() <= 2 && op.terms().all(|(_, c)| c.den_factors().all(|(a, _)| *a == diag) && !c.is_zero())
    })
}
