use num_complex::Complex64;
use num_traits::Zero;

use super::{ClassicalError, OrbitParams, PhaseMap};
use crate::exact_algebra::{CompiledExpr, RationalExpr, Scalar};

/// Threshold for coincident or vanishing separation roots.
pub const ROOT_TOLERANCE: f64 = 1e-8;
/// Tolerance on the orbit equations of an input phase point.
pub const ORBIT_TOLERANCE: f64 = 1e-10;

/// A point `(p, L)` of the complexified phase space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub p: [Complex64; 3],
    pub l: [Complex64; 3],
}

/// Separation coordinates `(z1, z2, w1, w2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationPoint {
    pub z: [Complex64; 2],
    pub w: [Complex64; 2],
}

impl SeparationPoint {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.z[0], self.z[1], self.w[0], self.w[1]]
    }

    /// The same point with the labels of the two pairs exchanged.
    pub fn swapped(&self) -> Self {
        SeparationPoint { z: [self.z[1], self.z[0]], w: [self.w[1], self.w[0]] }
    }
}

impl PhasePoint {
    fn components(&self) -> [Complex64; 6] {
        [self.p[0], self.p[1], self.p[2], self.l[0], self.l[1], self.l[2]]
    }

    /// `max |self - other| / max |self|` over the six components.
    pub fn rel_distance(&self, other: &PhasePoint) -> f64 {
        let a = self.components();
        let b = other.components();
        let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
    }

    /// Residuals of `p·p = c0` and `(p, L) = c1/2`, relative to the term scale.
    pub fn orbit_residual(&self, orbit: &OrbitParams) -> f64 {
        let c0 = orbit.c0.to_complex64();
        let c1 = orbit.c1.to_complex64();
        let pp: Complex64 = self.p.iter().map(|x| x * x).sum();
        let pl: Complex64 = self.p.iter().zip(self.l).map(|(x, y)| x * y).sum();
        let s0: f64 = self.p.iter().map(|x| x.norm_sqr()).sum::<f64>() + c0.norm();
        let s1: f64 = self.p.iter().zip(self.l).map(|(x, y)| (x * y).norm()).sum::<f64>() + 0.5 * c1.norm();
        let r0 = (pp - c0).norm() / s0.max(1.0);
        let r1 = (pl - 0.5 * c1).norm() / s1.max(1.0);
        r0.max(r1)
    }
}

fn lex_key(z: &Complex64) -> (f64, f64) {
    (z.re, z.im)
}

/// Roots of `μ1(z) + i μ3(z)` and `w_k = i μ2(z_k)/z_k²`.
pub fn separate(point: &PhasePoint, orbit: &OrbitParams) -> Result<SeparationPoint, ClassicalError> {
    let residual = point.orbit_residual(orbit);
    if residual > ORBIT_TOLERANCE {
        return Err(ClassicalError::OffOrbit { residual });
    }
    let i = Complex64::i();
    // (i/2) z² + (L1 + i L3) z + (p1 + i p3)
    let qa = 0.5 * i;
    let qb = point.l[0] + i * point.l[2];
    let qc = point.p[0] + i * point.p[2];
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let mut roots = [(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)];
    roots.sort_by(|x, y| lex_key(x).partial_cmp(&lex_key(y)).expect("finite roots"));
    let gap = (roots[0] - roots[1]).norm();
    let min_abs = roots[0].norm().min(roots[1].norm());
    let scale = 1.0 + roots[0].norm().max(roots[1].norm());
    if gap < ROOT_TOLERANCE * scale || min_abs < ROOT_TOLERANCE {
        return Err(ClassicalError::DegenerateRoots { gap, min_abs });
    }
    let w = roots.map(|z| i * (point.p[1] + point.l[1] * z) / (z * z));
    Ok(SeparationPoint { z: roots, w })
}

/// Evaluates the phase map at a separation point.
pub fn reconstruct(map: &PhaseMap, sep: &SeparationPoint) -> Result<PhasePoint, ClassicalError> {
    let pt = sep.as_array();
    let ev = |e: &RationalExpr| CompiledExpr::new(e).eval(&pt);
    Ok(PhasePoint {
        p: [ev(&map.p[0])?, ev(&map.p[1])?, ev(&map.p[2])?],
        l: [ev(&map.l[0])?, ev(&map.l[1])?, ev(&map.l[2])?],
    })
}

#[derive(Clone, Copy, Debug)]
pub struct RoundTrip {
    pub separation: SeparationPoint,
    pub reconstructed: PhasePoint,
    pub rel_error: f64,
}

/// `(p, L) -> (z, w) -> (p, L)`.
pub fn separation_roundtrip(map: &PhaseMap, point: &PhasePoint) -> Result<RoundTrip, ClassicalError> {
    let separation = separate(point, &map.orbit)?;
    let reconstructed = reconstruct(map, &separation)?;
    Ok(RoundTrip { separation, reconstructed, rel_error: point.rel_distance(&reconstructed) })
}

fn curve_rhs(z: &RationalExpr, orbit: &OrbitParams, h2: &RationalExpr, h3: &RationalExpr) -> RationalExpr {
    let z2 = z * z;
    let z3 = &z2 * z;
    let z4 = &z2 * &z2;
    let mut acc = z4.scale(&Scalar::ratio(1, 4));
    acc = &acc + &(h3 * &z3);
    acc = &acc + &(h2 * &z2);
    acc = &acc + &z.scale(&orbit.c1);
    &acc + &RationalExpr::constant(orbit.c0.clone())
}

/// `z⁴w² + (z⁴/4 + h3 z³ + h2 z² + c1 z + c0)`.
///
/// This is `det(L(z) - z² w)` with `w` scaled by `z²`, the curve on which
/// every separated pair `(z_k, w_k)` lies.
pub fn spectral_curve_residual_expr(
    z: &RationalExpr,
    w: &RationalExpr,
    orbit: &OrbitParams,
    h2: &RationalExpr,
    h3: &RationalExpr,
) -> RationalExpr {
    let z2 = z * z;
    let lhs = &(&z2 * &z2) * &(w * w);
    &lhs + &curve_rhs(z, orbit, h2, h3)
}

/// Exact residual at a scalar point; `z` must be nonzero.
pub fn spectral_curve_residual(
    z: &Scalar,
    w: &Scalar,
    orbit: &OrbitParams,
    h2: &Scalar,
    h3: &Scalar,
) -> Result<Scalar, ClassicalError> {
    if z.is_zero() {
        return Err(ClassicalError::ZeroAbscissa);
    }
    let r = spectral_curve_residual_expr(
        &RationalExpr::constant(z.clone()),
        &RationalExpr::constant(w.clone()),
        orbit,
        &RationalExpr::constant(h2.clone()),
        &RationalExpr::constant(h3.clone()),
    );
    Ok(r.as_constant().expect("constant"))
}

/// `z⁴w² - (z⁴/4 + h3 z³ + h2 z² + c1 z + c0)`, the opposite sign
/// convention; kept so reports can show that it is not satisfied.
pub fn spectral_curve_residual_printed(
    z: &RationalExpr,
    w: &RationalExpr,
    orbit: &OrbitParams,
    h2: &RationalExpr,
    h3: &RationalExpr,
) -> RationalExpr {
    let z2 = z * z;
    let lhs = &(&z2 * &z2) * &(w * w);
    &lhs - &curve_rhs(z, orbit, h2, h3)
}

#[cfg(test)]
mod tests {
    use super::super::{build_phase_map, LaxPolynomials};
    use super::*;
    use crate::exact_algebra::{parse_poly, Var};

    #[test]
    fn separating_entry_factorizes() {
        for o in OrbitParams::samples() {
            let m = build_phase_map(&o);
            let entry = LaxPolynomials::from_map(&m).separating_entry();
            // (i/2)(z - z1)(z - z2) = (i/2) z² - (i/2)(z1+z2) z + (i/2) z1 z2
            let half_i = Scalar::complex(0, 1, 1, 2);
            assert_eq!(entry.degree(), Some(2));
            assert_eq!(entry.coeff(2), RationalExpr::constant(half_i.clone()));
            let s = RationalExpr::from_poly(parse_poly("z1 + z2").unwrap());
            let p = RationalExpr::from_poly(parse_poly("z1*z2").unwrap());
            assert_eq!(entry.coeff(1), s.scale(&-half_i.clone()));
            assert_eq!(entry.coeff(0), p.scale(&half_i));
        }
    }

    #[test]
    fn conjugate_variable_recovered() {
        for o in OrbitParams::samples() {
            let m = build_phase_map(&o);
            let mu = LaxPolynomials::from_map(&m);
            for (z, w) in [(Var::Z1, Var::W1), (Var::Z2, Var::W2)] {
                let zk = RationalExpr::var(z);
                let wk = (&mu.mu2.eval(&zk).scale(&Scalar::i())) / &(&zk * &zk);
                assert_eq!(wk, RationalExpr::var(w));
            }
        }
    }

    #[test]
    fn separated_pairs_lie_on_curve() {
        for o in OrbitParams::samples() {
            let m = build_phase_map(&o);
            let (h2, h3) = (m.h2(), m.h3());
            for (z, w) in [(Var::Z1, Var::W1), (Var::Z2, Var::W2)] {
                let r = spectral_curve_residual_expr(&RationalExpr::var(z), &RationalExpr::var(w), &o, &h2, &h3);
                assert!(r.is_zero());
                let printed =
                    spectral_curve_residual_printed(&RationalExpr::var(z), &RationalExpr::var(w), &o, &h2, &h3);
                assert!(!printed.is_zero());
            }
        }
    }

    #[test]
    fn degenerate_curve() {
        let o = OrbitParams::degenerate();
        let half_i = Scalar::complex(0, 1, 1, 2);
        for z in [Scalar::from_int(1), Scalar::ratio(-7, 3), Scalar::complex(2, 1, 1, 5)] {
            let r = spectral_curve_residual(&z, &half_i, &o, &Scalar::zero(), &Scalar::zero()).unwrap();
            assert!(r.is_zero());
        }
        assert_eq!(
            spectral_curve_residual(&Scalar::zero(), &half_i, &o, &Scalar::zero(), &Scalar::zero()),
            Err(ClassicalError::ZeroAbscissa)
        );
    }

    #[test]
    fn coincident_roots_rejected() {
        let o = OrbitParams::degenerate();
        let i = Complex64::i();
        // p = 0 and L1 + i L3 = 0: the separating quadratic is (i/2) z², a double root at 0.
        let point = PhasePoint { p: [Complex64::zero(); 3], l: [Complex64::new(1.0, 0.0), Complex64::zero(), i] };
        assert!(matches!(separate(&point, &o), Err(ClassicalError::DegenerateRoots { .. })));
    }
}
