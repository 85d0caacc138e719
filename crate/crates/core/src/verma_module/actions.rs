//! Action formulas on the unnormalized basis `f_Jm`.
//!
//! The printed `p̂` tables live in the canonical basis `f̃_Jm = s_Jm f_Jm`,
//! `s_Jm² = (J+m)!/(J-m)!`. Every coefficient `κ√r` there becomes
//! `κ√(r·s_target²/s_source²)` here, and the radicand below is always a
//! perfect square, so the translated table is rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::basis::{basis_vector, generators_for};
use super::laguerre::factorial;
use crate::diff_ops::{apply, DiffOperator, WaveFunction};
use crate::exact_algebra::{parse_poly, RationalExpr, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error("{generator} on f({j},{m}): residual prefactor {residual}")]
    ActionMismatch { generator: String, j: u32, m: i64, residual: String },
    #[error("translated coefficient for {generator} on f({j},{m}) is singular or irrational")]
    IrrationalCoefficient { generator: String, j: u32, m: i64 },
    #[error("the generic table divides by J; J = 0 needs a = 0")]
    GenericAtZero,
}

/// One checked identity `op f_Jm = expected`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionRecord {
    pub generator: String,
    pub j: u32,
    pub m: i64,
    pub residual: WaveFunction,
}

impl ActionRecord {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }

    fn into_result(self) -> Result<ActionRecord, ActionError> {
        if self.holds() {
            Ok(self)
        } else {
            Err(ActionError::ActionMismatch {
                generator: self.generator,
                j: self.j,
                m: self.m,
                residual: self.residual.prefactor.render(),
            })
        }
    }
}

fn check(generator: &str, op: &DiffOperator, j: u32, m: i64, expected: &WaveFunction, a: &Scalar) -> ActionRecord {
    let f = basis_vector(j as i64, m, a);
    ActionRecord { generator: generator.into(), j, m, residual: apply(op, &f).sub(expected) }
}

/// `L̂3 f = m f`, `L̂- f = f_{J,m-1}`, `L̂+ f = (J-m)(J+m+1) f_{J,m+1}` and
/// `(L̂+L̂- - L̂-L̂+) f = 2m f` for every `m` in `ms`.
pub fn sl2_records(j: u32, a: &Scalar, ms: &[i64]) -> Vec<ActionRecord> {
    let g = generators_for(j, a);
    let ji = j as i64;
    let mut out = Vec::new();
    for &m in ms {
        let f = basis_vector(ji, m, a);
        out.push(check("L3", &g.l3, j, m, &f.scale(&Scalar::from_int(m)), a));
        out.push(check("L-", &g.lminus, j, m, &basis_vector(ji, m - 1, a), a));
        let up = Scalar::from_int((ji - m) * (ji + m + 1));
        out.push(check("L+", &g.lplus, j, m, &basis_vector(ji, m + 1, a).scale(&up), a));
        let lhs = apply(&g.lplus, &apply(&g.lminus, &f)).sub(&apply(&g.lminus, &apply(&g.lplus, &f)));
        out.push(ActionRecord {
            generator: "[L+,L-]".into(),
            j,
            m,
            residual: lhs.sub(&f.scale(&Scalar::from_int(2 * m))),
        });
    }
    out
}

pub fn verify_sl2_actions(j: u32, a: &Scalar, ms: &[i64]) -> Result<Vec<ActionRecord>, ActionError> {
    sl2_records(j, a, ms).into_iter().map(ActionRecord::into_result).collect()
}

/// `s_Jm² = Γ(J+m+1)/Γ(J-m+1)` for `-J ≤ m ≤ J`.
pub fn intertwiner_squared(j: i64, m: i64) -> Option<Scalar> {
    if j < 0 || m < -j || m > j {
        return None;
    }
    let num = factorial((j + m) as u32);
    let den = factorial((j - m) as u32);
    Some(&num / &den)
}

/// One term `κ · M^{uses_multiplier} · √radicand · f̃_target` of a printed table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableTerm {
    pub kappa: Scalar,
    pub radicand: i64,
    pub target: (i64, i64),
    pub uses_multiplier: bool,
}

/// A printed canonical-basis table entry for generator `name` on `f̃_Jm`.
pub fn printed_p_table(name: &str, j: i64, m: i64, a: &Scalar) -> Vec<TableTerm> {
    let mi = Scalar::i();
    let generic = !a.is_zero();
    let a_over_j = if generic { a / &Scalar::from_int(j) } else { Scalar::zero() };
    let (lead, extra) = match name {
        "p+" => (
            TableTerm { kappa: -&mi, radicand: (j - m) * (j - m - 1), target: (j - 1, m + 1), uses_multiplier: true },
            TableTerm { kappa: a_over_j, radicand: (j - m) * (j + m + 1), target: (j, m + 1), uses_multiplier: false },
        ),
        "p3" => (
            TableTerm { kappa: -&mi, radicand: (j - m) * (j + m), target: (j - 1, m), uses_multiplier: true },
            TableTerm { kappa: a_over_j.scale_int(m), radicand: 1, target: (j, m), uses_multiplier: false },
        ),
        "p-" => (
            TableTerm { kappa: mi, radicand: (j + m) * (j + m - 1), target: (j - 1, m - 1), uses_multiplier: true },
            TableTerm { kappa: a_over_j, radicand: (j + m) * (j - m + 1), target: (j, m - 1), uses_multiplier: false },
        ),
        _ => panic!("unknown generator {name}"),
    };
    if generic {
        vec![lead, extra]
    } else {
        vec![lead]
    }
}

fn sqrt_exact(x: &Scalar) -> Option<Scalar> {
    x.rational_sqrt().map(Scalar::real)
}

/// A linear form `J + side·m + c` in the source label.
type Form = (i64, i64);

/// `Γ(x + δ)/Γ(x)` for `x = J + side·m + c0`, as factor multisets.
fn gamma_shift(side: i64, c0: i64, delta: i64, num: &mut Vec<Form>, den: &mut Vec<Form>) {
    if delta >= 0 {
        num.extend((0..delta).map(|t| (side, c0 + t)));
    } else {
        den.extend((delta..0).map(|t| (side, c0 + t)));
    }
}

/// `radicand · s_target²/s_source²` with the Gamma ratios cancelled as
/// rational functions of `m` before evaluation, so boundary weights where
/// the canonical formula reads `0·∞` get their continued value.
pub fn conjugated_radicand(table: &str, term_index: usize, j: i64, m: i64, target: (i64, i64)) -> Option<Scalar> {
    let (dj, dm) = (target.0 - j, target.1 - m);
    let mut num: Vec<Form> = radicand_forms(table, term_index);
    let mut den: Vec<Form> = Vec::new();
    // s² = Γ(J+m+1)/Γ(J-m+1)
    gamma_shift(1, 1, dj + dm, &mut num, &mut den);
    gamma_shift(-1, 1, dj - dm, &mut den, &mut num);
    for f in den.clone() {
        if let Some(pos) = num.iter().position(|g| *g == f) {
            num.remove(pos);
            den.remove(den.iter().position(|g| *g == f).expect("present"));
        }
    }
    let eval = |(side, c): &Form| Scalar::from_int(j + side * m + c);
    let n = num.iter().fold(Scalar::from_int(1), |acc, f| &acc * &eval(f));
    let d = den.iter().fold(Scalar::from_int(1), |acc, f| &acc * &eval(f));
    if d.is_zero() {
        return None;
    }
    Some(&n / &d)
}

/// The radicand of each printed term as linear forms `J ± m + c`.
fn radicand_forms(table: &str, term_index: usize) -> Vec<Form> {
    match (table, term_index) {
        ("p+", 0) => vec![(-1, 0), (-1, -1)],
        ("p+", 1) => vec![(-1, 0), (1, 1)],
        ("p3", 0) => vec![(-1, 0), (1, 0)],
        ("p3", 1) => vec![],
        ("p-", 0) => vec![(1, 0), (1, -1)],
        ("p-", 1) => vec![(1, 0), (-1, 1)],
        _ => panic!("unknown table entry {table}/{term_index}"),
    }
}

/// The coefficient of `f_target` in the unnormalized basis, or `None` when
/// the conjugated radicand has a pole or is not a rational square.
pub fn conjugated_coefficient(table: &str, term_index: usize, term: &TableTerm, source: (i64, i64)) -> Option<Scalar> {
    if term.kappa.is_zero() {
        return Some(Scalar::zero());
    }
    let r = conjugated_radicand(table, term_index, source.0, source.1, term.target)?;
    Some(&term.kappa * &sqrt_exact(&r)?)
}

/// `1 + a(z1+z2)/(J z1 z2)`.
pub fn multiplier(j: u32, a: &Scalar) -> RationalExpr {
    if a.is_zero() {
        return RationalExpr::one();
    }
    let s = RationalExpr::from_poly(parse_poly("z1^-1 + z2^-1").expect("static"));
    let k = a / &Scalar::from_int(j as i64);
    &RationalExpr::one() + &s.scale(&k)
}

fn p_operator<'g>(g: &'g crate::e3_representation::E3Generators, name: &str) -> &'g DiffOperator {
    match name {
        "p+" => &g.pplus,
        "p3" => &g.p3,
        "p-" => &g.pminus,
        _ => panic!("unknown generator {name}"),
    }
}

/// The translated right-hand side of `name` on `f_Jm`.
pub fn p_table_image(name: &str, j: u32, m: i64, a: &Scalar) -> Result<WaveFunction, ActionError> {
    let ji = j as i64;
    let mut acc = WaveFunction::zero(crate::diff_ops::ExpFactor::new(a.clone()));
    for (idx, term) in printed_p_table(name, ji, m, a).into_iter().enumerate() {
        let c = conjugated_coefficient(name, idx, &term, (ji, m))
            .ok_or_else(|| ActionError::IrrationalCoefficient { generator: name.into(), j, m })?;
        if c.is_zero() {
            continue;
        }
        let mut v = basis_vector(term.target.0, term.target.1, a).scale(&c);
        if term.uses_multiplier {
            v = v.mul_expr(&multiplier(j, a));
        }
        acc = acc.add(&v);
    }
    Ok(acc)
}

/// The three `p̂` tables on `f_Jm` for every `m` in `ms`.
pub fn p_records(j: u32, a: &Scalar, ms: &[i64]) -> Result<Vec<ActionRecord>, ActionError> {
    if j == 0 && !a.is_zero() {
        return Err(ActionError::GenericAtZero);
    }
    let g = generators_for(j, a);
    let mut out = Vec::new();
    for &m in ms {
        for name in ["p+", "p3", "p-"] {
            let expected = p_table_image(name, j, m, a)?;
            out.push(check(name, p_operator(&g, name), j, m, &expected, a));
        }
    }
    Ok(out)
}

pub fn verify_p_actions(j: u32, a: &Scalar, ms: &[i64]) -> Result<Vec<ActionRecord>, ActionError> {
    p_records(j, a, ms)?.into_iter().map(ActionRecord::into_result).collect()
}

/// For `-J ≤ m < J`: the unnormalized `L̂+(m)·L̂-(m+1)` product equals the
/// square of the canonical coefficient `√((J-m)(J+m+1))`, read off both
/// from the raising formula at `m` and the lowering formula at `m+1`, and
/// the same product is recovered by conjugating by `s`.
pub fn shapovalov_check(j: u32, m: i64) -> bool {
    let ji = j as i64;
    if m < -ji || m >= ji {
        return false;
    }
    let raise = (ji - m) * (ji + m + 1);
    let lower = 1i64;
    let canonical_up = (ji - m) * (ji + m + 1);
    let canonical_down = (ji + (m + 1)) * (ji - (m + 1) + 1);
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let (Some(s_lo), Some(s_hi)) = (intertwiner_squared(ji, m), intertwiner_squared(ji, m + 1)) else {
        return false;
    };
    let conj_up = &(&Scalar::real(big(raise * raise)) * &s_lo) / &s_hi;
    let conj_down = &(&Scalar::real(big(lower)) * &s_hi) / &s_lo;
    raise * lower == canonical_up
        && canonical_up == canonical_down
        && conj_up == Scalar::from_int(canonical_up)
        && conj_down == Scalar::from_int(canonical_down)
}
