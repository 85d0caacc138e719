use super::OrbitParams;
use crate::exact_algebra::{parse_poly, RationalExpr, Scalar};

/// The dynamic variables `p = μ⁽⁰⁾` and `L = μ⁽¹⁾` as functions of the
/// separation variables `(z1, z2, w1, w2)` on a fixed orbit.
#[derive(Clone, Debug)]
pub struct PhaseMap {
    pub p: [RationalExpr; 3],
    pub l: [RationalExpr; 3],
    pub orbit: OrbitParams,
}

fn poly(s: &str) -> RationalExpr {
    RationalExpr::from_poly(parse_poly(s).expect("static polynomial"))
}

/// The six explicit expressions for `p1..L3`.
pub fn build_phase_map(orbit: &OrbitParams) -> PhaseMap {
    let i = Scalar::i();
    let c0 = RationalExpr::constant(orbit.c0.clone());
    let c1 = RationalExpr::constant(orbit.c1.clone());
    let d = poly("z1 - z2");
    let d2 = &d * &d;
    let prod = poly("z1*z2");
    let sum = poly("z1 + z2");
    let quarter = Scalar::ratio(1, 4);
    let inv_prod = poly("z1^-1*z2^-1");
    let inv_prod2 = poly("z1^-2*z2^-2");

    // (z1 w1 - z2 w2) and (z1² w1² - z2² w2²)/(z1 - z2), (z1² w1 - z2² w2)/(z1 - z2)
    let lin = poly("z1*w1 - z2*w2");
    let quad = &poly("z1^2*w1^2 - z2^2*w2^2") / &d;
    let mixed = &poly("z1^2*w1 - z2^2*w2") / &d;
    let kinetic = &(&prod * &(&lin * &lin)) / &d2;

    let base_p = prod.scale(&quarter);
    let c0_term = &c0 * &inv_prod;
    let p1 = (&(&base_p - &c0_term) - &kinetic).scale(&i);
    let p2 = (&(&prod * &lin) / &d).scale(&i);
    let p3 = &(&base_p + &c0_term) + &kinetic;

    let base_l = sum.scale(&-quarter.clone());
    let orbit_l = &(&c1 * &inv_prod) + &(&(&c0 * &sum) * &inv_prod2);
    let l1 = (&(&base_l - &orbit_l) + &quad).scale(&i);
    let l2 = mixed.scale(&-i.clone());
    let l3 = &(&base_l + &orbit_l) - &quad;

    PhaseMap { p: [p1, p2, p3], l: [l1, l2, l3], orbit: orbit.clone() }
}

impl PhaseMap {
    pub fn entries(&self) -> [(&'static str, &RationalExpr); 6] {
        [
            ("p1", &self.p[0]),
            ("p2", &self.p[1]),
            ("p3", &self.p[2]),
            ("L1", &self.l[0]),
            ("L2", &self.l[1]),
            ("L3", &self.l[2]),
        ]
    }

    /// `h2 = L·L + p3` as a function of the separation variables.
    pub fn h2(&self) -> RationalExpr {
        let ll = self.l.iter().fold(RationalExpr::zero(), |acc, x| &acc + &(x * x));
        &ll + &self.p[2]
    }

    /// `h3 = L3`.
    pub fn h3(&self) -> RationalExpr {
        self.l[2].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_matches_display() {
        let m = build_phase_map(&OrbitParams::new(Scalar::from_int(3), Scalar::ratio(1, 2)));
        let expect = (&(&poly("z1*z2") * &poly("z1*w1 - z2*w2")) / &poly("z1 - z2")).scale(&Scalar::i());
        assert_eq!(m.p[1], expect);
    }

    #[test]
    fn degenerate_l1_plus_i_l3() {
        // with c0 = c1 = 0: L1 + i L3 = -i (z1 + z2)/2
        let m = build_phase_map(&OrbitParams::degenerate());
        let lhs = &m.l[0] + &m.l[2].scale(&Scalar::i());
        assert_eq!(lhs, poly("z1 + z2").scale(&Scalar::complex(0, 1, -1, 2)));
    }

    #[test]
    fn p1_plus_i_p3_independent_of_c0() {
        for o in OrbitParams::samples() {
            let m = build_phase_map(&o);
            let lhs = &m.p[0] + &m.p[2].scale(&Scalar::i());
            assert_eq!(lhs, poly("z1*z2").scale(&Scalar::complex(0, 1, 1, 2)));
        }
    }

    #[test]
    fn entries_symmetric_under_pair_swap() {
        for o in OrbitParams::samples() {
            let m = build_phase_map(&o);
            for (name, e) in m.entries() {
                assert!(e.is_symmetric(), "{name} not symmetric");
            }
        }
    }
}
