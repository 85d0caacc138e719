use num_traits::Zero;

use super::lax::{lax_matrix, trace_of_square, LaxPoly, LaxPolynomials};
use super::{ClassicalError, PhaseMap};
use crate::exact_algebra::{RationalExpr, Scalar, Var};

/// `{f, g} = Σ_k (∂f/∂z_k ∂g/∂w_k - ∂f/∂w_k ∂g/∂z_k)`.
pub fn poisson_bracket(f: &RationalExpr, g: &RationalExpr) -> RationalExpr {
    let mut acc = RationalExpr::zero();
    for (z, w) in [(Var::Z1, Var::W1), (Var::Z2, Var::W2)] {
        let a = &f.partial_derivative(z) * &g.partial_derivative(w);
        let b = &f.partial_derivative(w) * &g.partial_derivative(z);
        acc = &acc + &(&a - &b);
    }
    acc
}

/// Levi-Civita symbol on `{0, 1, 2}`.
fn epsilon(k: usize, l: usize, j: usize) -> i64 {
    match (k, l, j) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[derive(Clone, Debug)]
pub struct BracketResidual {
    pub relation: String,
    pub residual: RationalExpr,
}

#[derive(Clone, Debug)]
pub struct E3BracketReport {
    /// The global orientation `σ` with `{L_k, L_l} = σ ε_klj L_j`.
    pub sign: i64,
    pub residuals: Vec<BracketResidual>,
}

impl E3BracketReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.residual.is_zero())
    }
}

struct RawBracket {
    relation: String,
    value: RationalExpr,
    // expected value for σ = +1
    expected: RationalExpr,
}

fn raw_brackets(map: &PhaseMap) -> Vec<RawBracket> {
    let names = ["1", "2", "3"];
    let mut out = Vec::new();
    let third = |k: usize, l: usize| 3 - k - l;
    for k in 0..3 {
        for l in (k + 1)..3 {
            out.push(RawBracket {
                relation: format!("{{p{},p{}}}", names[k], names[l]),
                value: poisson_bracket(&map.p[k], &map.p[l]),
                expected: RationalExpr::zero(),
            });
        }
    }
    for k in 0..3 {
        for l in (k + 1)..3 {
            let j = third(k, l);
            out.push(RawBracket {
                relation: format!("{{L{},L{}}}", names[k], names[l]),
                value: poisson_bracket(&map.l[k], &map.l[l]),
                expected: map.l[j].scale(&Scalar::from_int(epsilon(k, l, j))),
            });
        }
    }
    for k in 0..3 {
        for l in 0..3 {
            let expected = if k == l {
                RationalExpr::zero()
            } else {
                let j = third(k, l);
                map.p[j].scale(&Scalar::from_int(epsilon(k, l, j)))
            };
            out.push(RawBracket {
                relation: format!("{{p{},L{}}}", names[k], names[l]),
                value: poisson_bracket(&map.p[k], &map.l[l]),
                expected,
            });
        }
    }
    out
}

/// Checks all 15 brackets among `{p, L}` against the e(3) structure.
///
/// The orientation `σ` is read off `{L1, L2}` (either `L3` or `-L3`) and then
/// held fixed for every other bracket.
pub fn verify_e3_brackets(map: &PhaseMap) -> Result<E3BracketReport, ClassicalError> {
    let raw = raw_brackets(map);
    let ll = raw.iter().find(|r| r.relation == "{L1,L2}").expect("present");
    let sign = if ll.value == ll.expected {
        1
    } else if ll.value == -&ll.expected {
        -1
    } else {
        return Err(ClassicalError::MismatchBeyondSign { relation: ll.relation.clone() });
    };
    let sigma = Scalar::from_int(sign);
    let mut residuals = Vec::with_capacity(raw.len());
    for r in raw {
        let residual = &r.value - &r.expected.scale(&sigma);
        if !residual.is_zero() {
            let flipped = &r.value + &r.expected.scale(&sigma);
            if !flipped.is_zero() {
                return Err(ClassicalError::MismatchBeyondSign { relation: r.relation });
            }
        }
        residuals.push(BracketResidual { relation: r.relation, residual });
    }
    Ok(E3BracketReport { sign, residuals })
}

/// The orbit invariants, the Hamiltonians, and the expansion of `-Tr L²`.
#[derive(Clone, Debug)]
pub struct OrbitIdentities {
    /// `h0 = p·p`, `h1 = 2(L, p)`, `h2 = L·L + p3`, `h3 = L3`.
    pub h: [RationalExpr; 4],
    pub sphere_residual: RationalExpr,
    pub plane_residual: RationalExpr,
    /// `-Tr L(z)²` from the matrix product.
    pub neg_trace: LaxPoly,
    /// `z⁴/4 + h3 z³ + h2 z² + c1 z + c0`.
    pub target: LaxPoly,
    /// Coefficients of `-Tr L² - target`, `z^0` first.
    pub literal_residuals: Vec<RationalExpr>,
    /// The constant `κ` with `-Tr L² = κ · target`, when one exists.
    pub normalization: Option<Scalar>,
    /// Coefficients of `-Tr L²/κ - target` (empty if no `κ`).
    pub normalized_residuals: Vec<RationalExpr>,
    /// `[z³](-Tr L²/κ) - L3`.
    pub h3_residual: RationalExpr,
}

impl OrbitIdentities {
    pub fn orbit_holds(&self) -> bool {
        self.sphere_residual.is_zero() && self.plane_residual.is_zero()
    }

    pub fn literal_trace_holds(&self) -> bool {
        self.literal_residuals.iter().all(|r| r.is_zero())
    }

    pub fn normalized_trace_holds(&self) -> bool {
        self.normalization.is_some() && self.normalized_residuals.iter().all(|r| r.is_zero())
    }
}

fn dot(a: &[RationalExpr; 3], b: &[RationalExpr; 3]) -> RationalExpr {
    a.iter().zip(b).fold(RationalExpr::zero(), |acc, (x, y)| &acc + &(x * y))
}

pub fn orbit_and_hamiltonians(map: &PhaseMap) -> OrbitIdentities {
    let c0 = RationalExpr::constant(map.orbit.c0.clone());
    let c1 = RationalExpr::constant(map.orbit.c1.clone());
    let h0 = dot(&map.p, &map.p);
    let pl = dot(&map.p, &map.l);
    let h1 = pl.scale(&Scalar::from_int(2));
    let h2 = &dot(&map.l, &map.l) + &map.p[2];
    let h3 = map.l[2].clone();

    let mu = LaxPolynomials::from_map(map);
    let neg_trace = trace_of_square(&lax_matrix(&mu)).scale(&Scalar::from_int(-1));
    let target = LaxPoly::new(vec![c0.clone(), c1.clone(), h2.clone(), h3.clone(), RationalExpr::ratio(1, 4)]);
    let literal_residuals: Vec<RationalExpr> = (0..5).map(|k| &neg_trace.coeff(k) - &target.coeff(k)).collect();

    let normalization = neg_trace
        .coeff(4)
        .as_constant()
        .filter(|c| !c.is_zero())
        .map(|lead| &lead / &Scalar::ratio(1, 4));
    let (normalized_residuals, h3_residual) = match &normalization {
        Some(k) => {
            let inv = k.inv().expect("nonzero");
            let scaled = neg_trace.scale(&inv);
            (
                (0..5).map(|j| &scaled.coeff(j) - &target.coeff(j)).collect(),
                &scaled.coeff(3) - &map.l[2],
            )
        }
        None => (Vec::new(), &neg_trace.coeff(3) - &map.l[2]),
    };

    OrbitIdentities {
        sphere_residual: &h0 - &c0,
        plane_residual: &pl - &c1.scale(&Scalar::ratio(1, 2)),
        h: [h0, h1, h2, h3],
        neg_trace,
        target,
        literal_residuals,
        normalization,
        normalized_residuals,
        h3_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_phase_map, OrbitParams};
    use super::*;

    #[test]
    fn canonical_pairs() {
        let z1 = RationalExpr::var(Var::Z1);
        let w1 = RationalExpr::var(Var::W1);
        let w2 = RationalExpr::var(Var::W2);
        assert_eq!(poisson_bracket(&z1, &w1), RationalExpr::one());
        assert!(poisson_bracket(&z1, &w2).is_zero());
    }

    #[test]
    fn bracket_self_vanishes() {
        let m = build_phase_map(&OrbitParams::new(Scalar::from_int(2), Scalar::from_int(-1)));
        for (_, e) in m.entries() {
            assert!(poisson_bracket(e, e).is_zero());
        }
    }

    #[test]
    fn e3_structure_with_positive_orientation() {
        let m = build_phase_map(&OrbitParams::new(Scalar::ratio(5, 3), Scalar::from_int(2)));
        let r = verify_e3_brackets(&m).unwrap();
        assert_eq!(r.sign, 1);
        assert_eq!(r.residuals.len(), 15);
        assert!(r.all_zero());
        let p1p2 = r.residuals.iter().find(|x| x.relation == "{p1,p2}").unwrap();
        assert!(p1p2.residual.is_zero());
    }

    #[test]
    fn trace_expansion_carries_factor_two() {
        let m = build_phase_map(&OrbitParams::new(Scalar::from_int(3), Scalar::ratio(1, 7)));
        let id = orbit_and_hamiltonians(&m);
        assert!(id.orbit_holds());
        assert!(!id.literal_trace_holds());
        assert_eq!(id.normalization, Some(Scalar::from_int(2)));
        assert!(id.normalized_trace_holds());
        assert!(id.h3_residual.is_zero());
        assert_eq!(id.h[0], RationalExpr::int(3));
    }
}
