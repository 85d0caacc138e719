use e3sov::classical_phase::{build_phase_map, reconstruct, separation_roundtrip, OrbitParams, SeparationPoint};
use e3sov::diff_ops::{apply, commutator, compose, DiffOperator, ExpFactor, WaveFunction};
use e3sov::exact_algebra::{parse_poly, CompiledExpr, Monomial};
use e3sov::numeric_lab::{FlowState, FlowSystem, Hamiltonian};
use e3sov::{LaurentPoly, RationalExpr, Scalar, Var};
use num_complex::Complex64;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(p, q, im)| Scalar::complex(p, q, im, 2))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !num_traits::Zero::is_zero(s))
}

/// Laurent polynomials in `z1, z2` (and optionally `w1, w2`) with a few terms.
fn poly(with_w: bool) -> impl Strategy<Value = LaurentPoly> {
    let wmax = if with_w { 2 } else { 0 };
    prop::collection::vec((scalar(), -2i32..=2, -2i32..=2, 0..=wmax, 0..=wmax), 1..4).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(c, a, b, w1, w2)| (Monomial([a, b, w1, w2]), c)))
    })
}

fn atom() -> impl Strategy<Value = LaurentPoly> {
    prop::sample::select(vec!["z1 - z2", "z1 + z2 + 1", "z1*z2 - 2", "z1 + 3"])
        .prop_map(|s| parse_poly(s).expect("static"))
}

fn rational(with_w: bool) -> impl Strategy<Value = RationalExpr> {
    (poly(with_w), prop::collection::vec((atom(), 1i32..=2), 0..3)).prop_map(|(n, dens)| {
        let mut r = RationalExpr::from_poly(n);
        for (a, e) in dens {
            r = &r / &RationalExpr::from_poly(a).pow(e).expect("nonzero");
        }
        r
    })
}

/// Points where none of the atoms above vanish.
fn exact_point() -> impl Strategy<Value = [Scalar; 4]> {
    (7i64..=13, 17i64..=23, 1i64..=5, 1i64..=5).prop_map(|(a, b, c, d)| {
        [Scalar::ratio(a, 3), Scalar::ratio(b, 3), Scalar::ratio(c, 2), Scalar::ratio(-d, 5)]
    })
}

/// Coefficients with at most one denominator atom, to keep compositions small.
fn coefficient() -> impl Strategy<Value = RationalExpr> {
    (poly(false), prop::option::of(atom())).prop_map(|(n, d)| match d {
        Some(d) => &RationalExpr::from_poly(n) / &RationalExpr::from_poly(d),
        None => RationalExpr::from_poly(n),
    })
}

fn operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec(((0u32..=2, 0u32..=2), coefficient()), 1..4).prop_map(|ts| {
        ts.into_iter().fold(DiffOperator::zero(), |acc, (o, c)| acc.add(&DiffOperator::term(o, c)))
    })
}

fn wavefunction() -> impl Strategy<Value = WaveFunction> {
    (coefficient(), -2i64..=2).prop_map(|(p, a)| WaveFunction::new(p, ExpFactor::new(Scalar::ratio(a, 2))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn evaluation_is_multiplicative(f in rational(true), g in rational(true), pt in exact_point()) {
        let lhs = (&f * &g).eval_exact(&pt).unwrap();
        let rhs = &f.eval_exact(&pt).unwrap() * &g.eval_exact(&pt).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_additive(f in rational(true), g in rational(true), pt in exact_point()) {
        let lhs = (&f + &g).eval_exact(&pt).unwrap();
        let rhs = &f.eval_exact(&pt).unwrap() + &g.eval_exact(&pt).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_undoes_multiplication(p in poly(true), q in poly(true)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn equality_ignores_common_factors(f in rational(true), c in atom(), k in nonzero_scalar()) {
        let c = RationalExpr::from_poly(c).scale(&k);
        let g = &(&f * &c) / &c;
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(&f, &g);
        prop_assert!((&f - &g).is_zero());
    }

    #[test]
    fn partial_derivative_obeys_leibniz(f in rational(true), g in rational(true), v in 0usize..4) {
        let v = Var::ALL[v];
        let lhs = (&f * &g).partial_derivative(v);
        let rhs = &(&f.partial_derivative(v) * &g) + &(&f * &g.partial_derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compiled_evaluation_matches_exact(f in rational(true), pt in exact_point()) {
        let exact = f.eval_exact(&pt).unwrap().to_complex64();
        let float = CompiledExpr::new(&f).eval(&pt.clone().map(|s| s.to_complex64())).unwrap();
        prop_assert!((exact - float).norm() <= 1e-9 * exact.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn composition_matches_successive_application(a in operator(), b in operator(), f in wavefunction()) {
        prop_assert_eq!(apply(&compose(&a, &b), &f), apply(&a, &apply(&b, &f)));
    }

    #[test]
    fn commutator_is_antisymmetric_and_bilinear(a in operator(), b in operator(), c in operator(), k in scalar()) {
        prop_assert_eq!(commutator(&a, &b), commutator(&b, &a).scale(&Scalar::from_int(-1)));
        let sum = commutator(&a, &b.add(&c.scale(&k)));
        prop_assert_eq!(sum, commutator(&a, &b).add(&commutator(&a, &c).scale(&k)));
    }

    #[test]
    fn normal_form_has_no_zero_terms(a in operator(), b in operator()) {
        for op in [a.add(&b), a.sub(&a), compose(&a, &b), commutator(&a, &b)] {
            prop_assert!(op.terms().all(|(_, c)| !c.is_zero()));
        }
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn application_is_linear(a in operator(), f in rational(false), g in rational(false), k in scalar()) {
        let e = ExpFactor::new(Scalar::ratio(1, 2));
        let (wf, wg) = (WaveFunction::new(f, e.clone()), WaveFunction::new(g, e));
        prop_assert_eq!(apply(&a, &wf.add(&wg.scale(&k))), apply(&a, &wf).add(&apply(&a, &wg).scale(&k)));
    }
}

fn complex_in(re: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, -0.5f64..0.5).prop_map(|(a, b)| Complex64::new(a, b))
}

fn separation_point() -> impl Strategy<Value = SeparationPoint> {
    (complex_in(0.5..1.5), complex_in(2.0..3.0), complex_in(-1.0..1.0), complex_in(-1.0..1.0))
        .prop_map(|(z1, z2, w1, w2)| SeparationPoint { z: [z1, z2], w: [w1, w2] })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn separation_round_trip(sep in separation_point(), k in 0usize..7) {
        let orbit = &OrbitParams::samples()[k];
        let map = build_phase_map(orbit);
        let pt = reconstruct(&map, &sep).unwrap();
        prop_assert!(pt.orbit_residual(orbit) <= 1e-10);
        let rt = separation_roundtrip(&map, &pt).unwrap();
        prop_assert!(rt.rel_error <= 1e-9, "rel error {}", rt.rel_error);
    }

    #[test]
    fn relabelling_the_pairs_fixes_the_phase_point(sep in separation_point()) {
        let map = build_phase_map(&OrbitParams::new(Scalar::ratio(9, 4), Scalar::ratio(-5, 2)));
        let a = reconstruct(&map, &sep).unwrap();
        let b = reconstruct(&map, &sep.swapped()).unwrap();
        prop_assert!(a.rel_distance(&b) <= 1e-12);
    }
}

#[test]
fn phase_map_is_symmetric() {
    for o in OrbitParams::samples() {
        let map = build_phase_map(&o);
        for (name, e) in map.entries() {
            assert!(e.is_symmetric(), "{name} not symmetric for c0 = {}", o.c0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn gradient_matches_central_differences(
        z1 in complex_in(1.0..1.8), z2 in complex_in(2.4..3.2),
        w1 in complex_in(-0.4..0.4), w2 in complex_in(-0.4..0.4), which in 0usize..2,
    ) {
        let sys = FlowSystem::new(&OrbitParams::new(Scalar::from_int(1), Scalar::from_int(3)));
        let h = [Hamiltonian::H2, Hamiltonian::H3][which];
        let ham = CompiledExpr::new(&if which == 0 { sys.map.h2() } else { sys.map.h3() });
        let x = FlowState::new([z1, z2], [w1, w2]).as_array();
        let g = sys.field(h).gradient(&x).unwrap();
        let step = 1e-5;
        for k in 0..4 {
            let (mut xp, mut xm) = (x, x);
            xp[k] += step;
            xm[k] -= step;
            let fd = (ham.eval(&xp).unwrap() - ham.eval(&xm).unwrap()) / (2.0 * step);
            prop_assert!((fd - g[k]).norm() <= 1e-6 * g[k].norm().max(1.0));
        }
    }

    #[test]
    fn fourth_order_step_error(
        z1 in complex_in(1.0..1.8), z2 in complex_in(2.4..3.2),
        w1 in complex_in(-0.4..0.4), w2 in complex_in(-0.4..0.4),
    ) {
        // One step at dt and two at dt/2 differ by O(dt^5).
        let sys = FlowSystem::new(&OrbitParams::new(Scalar::from_int(1), Scalar::from_int(3)));
        let f = sys.field(Hamiltonian::H3);
        let s = FlowState::new([z1, z2], [w1, w2]);
        let err = |dt: f64| {
            let one = f.step(&s, dt).unwrap();
            let two = f.step(&f.step(&s, dt / 2.0).unwrap(), dt / 2.0).unwrap();
            one.distance(&two)
        };
        let ratio = err(0.02) / err(0.01);
        prop_assert!((16.0..=64.0).contains(&ratio), "ratio {}", ratio);
    }
}
