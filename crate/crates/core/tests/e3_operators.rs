use e3sov::classical_phase::OrbitParams;
use e3sov::diff_ops::{symmetric_closure_check, ExpFactor, WaveFunction};
use e3sov::e3_representation::{
    build_generators, casimir_report, commutator_records, generators_well_formed, hamiltonian_action,
};
use e3sov::exact_algebra::{parse_poly, RationalExpr, Scalar};

fn frac(n: &str, d: &str) -> RationalExpr {
    RationalExpr::new(parse_poly(n).unwrap(), &parse_poly(d).unwrap()).unwrap()
}

#[test]
fn all_relations_hold_on_every_sample() {
    for orbit in OrbitParams::samples() {
        let g = build_generators(&orbit);
        assert!(generators_well_formed(&g));
        let records = commutator_records(&g);
        assert_eq!(records.len(), 10);
        for r in records {
            assert!(r.holds(), "{} at c0={} c1={}:\n{}", r.relation, orbit.c0, orbit.c1, r.residual);
        }
    }
}

#[test]
fn l3_second_order_coefficient() {
    let g = build_generators(&OrbitParams::new(Scalar::from_int(2), Scalar::ratio(1, 3)));
    assert_eq!(g.l3.coeff((2, 0)), frac("z1^2", "z1 - z2"));
    assert_eq!(g.l3.coeff((0, 2)), frac("-z2^2", "z1 - z2"));
    assert_eq!(g.l3.coeff((1, 1)), RationalExpr::zero());
    assert_eq!(g.h3, g.l3);
}

#[test]
fn p3_lower_order_part_on_degenerate_orbit() {
    let g = build_generators(&OrbitParams::degenerate());
    assert_eq!(g.p3.coeff((0, 0)), frac("z1*z2", "4"));
    let grad = frac("2*z1^2*z2^2", "z1^3 - 3*z1^2*z2 + 3*z1*z2^2 - z2^3");
    assert_eq!(g.p3.coeff((1, 0)), grad);
    assert_eq!(g.p3.coeff((0, 1)), -grad);
}

#[test]
fn l3_on_highest_vector() {
    let g = build_generators(&OrbitParams::degenerate());
    for j in 0..4 {
        let f = WaveFunction::new(frac("1", "z1*z2").pow(j).unwrap(), ExpFactor::degenerate());
        let img = symmetric_closure_check(&g.l3, &f).unwrap().image;
        assert_eq!(img, f.scale(&Scalar::from_int(j as i64)));
    }
}

#[test]
fn p3_closes_on_constant() {
    let g = build_generators(&OrbitParams::degenerate());
    let f = WaveFunction::new(RationalExpr::one(), ExpFactor::degenerate());
    let report = symmetric_closure_check(&g.p3, &f).unwrap();
    assert!(report.apparent_pole_order >= 2);
    assert!(report.image.is_symmetric());
}

#[test]
fn empty_basis_gives_empty_report() {
    let g = build_generators(&OrbitParams::degenerate());
    assert!(casimir_report(&g, &[]).entries.is_empty());
}

#[test]
fn zero_wavefunction_gives_zero_pair() {
    let g = build_generators(&OrbitParams::degenerate());
    let h = hamiltonian_action(&g, &WaveFunction::zero(ExpFactor::degenerate()));
    assert!(h.h2f.is_zero() && h.h3f.is_zero() && h.h3_matches_l3);
}
