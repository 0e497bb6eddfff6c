use chordwig::centres::{centre_area, find_centre_chords, CentreChord};
use chordwig::chords::{chord_area, diameter_along, realization_at};
use chordwig::evaluators::{
    chord_asymptotic, chord_evaluate, correlation_semiclassical, origin_shift, ChordRegime, ChordValue,
};
use chordwig::fock::{fock_chord_exact, FockState};
use chordwig::special::{airy, laguerre_weighted};
use chordwig::wigner::wigner_evaluate;
use chordwig::{build_curve, find_chord_realizations, wedge, ChordVector, ConvexCurve, Error, PhasePoint};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn curves() -> &'static [ConvexCurve; 4] {
    static CURVES: OnceLock<[ConvexCurve; 4]> = OnceLock::new();
    CURVES.get_or_init(|| {
        [
            build_curve("circle", &[], 10, 1.0).unwrap(),
            build_curve("quartic-perturbed", &[0.05], 10, 1.0).unwrap(),
            build_curve("cubic-perturbed", &[0.05], 10, 1.0).unwrap(),
            build_curve("cubic-perturbed", &[0.1], 4, 0.5).unwrap(),
        ]
    })
}

/// Chord at a fraction of the diameter along `angle`.
fn chord(curve: &ConvexCurve, angle: f64, fraction: f64) -> ChordVector {
    let u = ChordVector::polar(1.0, angle);
    u * (fraction * diameter_along(curve, u).unwrap().xi_d.norm())
}

fn vector() -> impl Strategy<Value = ChordVector> {
    (-50.0..50.0f64, -50.0..50.0f64).prop_map(|(p, q)| ChordVector::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_antisymmetric_and_bilinear(a in vector(), b in vector(), c in vector(), s in -3.0..3.0f64) {
        prop_assert_eq!(wedge(a, b), -wedge(b, a));
        prop_assert_eq!(wedge(a, a), 0.0);
        let lhs = wedge(a * s + c, b);
        let rhs = s * wedge(a, b) + wedge(c, b);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn hermitian_on_symmetric_curves(which in 0usize..2, angle in 0.0..(2.0 * PI), f in 0.05..1.3f64) {
        let c = &curves()[which];
        let xi = chord(c, angle, f);
        let a = chord_evaluate(c, xi).unwrap().complex();
        let b = chord_evaluate(c, -xi).unwrap().complex();
        prop_assert!((a - b.conj()).norm() <= 1e-10, "{a} vs {b}");
    }

    #[test]
    fn chord_values_are_finite_with_a_regime(which in 0usize..4, angle in 0.0..(2.0 * PI), f in 0.05..1.4f64) {
        let c = &curves()[which];
        let v = chord_evaluate(c, chord(c, angle, f)).unwrap();
        prop_assert!(v.re.is_finite() && v.im.is_finite());
        prop_assert!(f < 1.0 || v.regime == ChordRegime::Transitional || v.regime == ChordRegime::Evanescent);
    }

    #[test]
    fn origin_shift_keeps_the_modulus(re in -1.0..1.0f64, im in -1.0..1.0f64, a in vector(), b in vector(), h in 0.01..10.0f64) {
        let chi = ChordValue::new(Complex64::new(re, im), ChordRegime::Uniform);
        let shifted = origin_shift(chi, a, b, h);
        prop_assert!((shifted.abs() - chi.abs()).abs() <= 1e-14 * chi.abs().max(1e-300) * 4.0);
        prop_assert_eq!(shifted.regime, chi.regime);
    }

    #[test]
    fn areas_are_complementary(which in 0usize..4, angle in 0.0..(2.0 * PI), f in 0.05..0.97f64) {
        let c = &curves()[which];
        let xi = chord(c, angle, f);
        let g = find_chord_realizations(c, xi).unwrap();
        let total = c.enclosed_area();
        for r in [g.r1, g.r2] {
            let back = realization_at(c, r.theta_plus, -xi);
            prop_assert!((chord_area(c, &r) + chord_area(c, &back) - total).abs() <= 1e-8 * total.max(1.0));
        }
    }

    #[test]
    fn centre_areas_are_complementary(which in 2usize..4, t in 0.0..(2.0 * PI), r in 0.05..0.85f64) {
        let c = &curves()[which];
        let y = c.point_at(t);
        let x = PhasePoint::new(r * y.p, r * y.q);
        let g = match find_centre_chords(c, x) {
            Ok(g) => g,
            Err(Error::NearCausticDegenerate | Error::AtCusp) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for ch in &g.chords {
            let rev = CentreChord {
                xi: -ch.xi,
                theta_minus: ch.theta_plus,
                theta_plus: ch.theta_minus,
                x_minus: ch.x_plus,
                x_plus: ch.x_minus,
                bracket: -ch.bracket,
                area: 0.0,
            };
            prop_assert!((ch.area + centre_area(c, &rev) - c.enclosed_area()).abs() <= 1e-8 * c.enclosed_area());
        }
    }

    #[test]
    fn wigner_is_finite_inside(which in 0usize..4, t in 0.0..(2.0 * PI), r in 0.02..0.95f64) {
        let c = &curves()[which];
        let y = c.point_at(t);
        let x = PhasePoint::new(r * y.p, r * y.q);
        match wigner_evaluate(c, x) {
            Ok(w) => prop_assert!(w.value.is_finite() && (w.contributing_chords == 1 || w.contributing_chords == 3)),
            Err(e) => prop_assert!(matches!(
                e,
                Error::SymmetricDegenerate | Error::NearCausticDegenerate | Error::AtCusp
            ), "{e}"),
        }
    }

    #[test]
    fn circle_diameters_have_length_2r(n in 0u32..40, angle in 0.0..(2.0 * PI)) {
        let c = build_curve("circle", &[], n, 1.0).unwrap();
        let d = diameter_along(&c, ChordVector::polar(1.0, angle)).unwrap();
        prop_assert!((d.xi_d.norm() - 2.0 * c.scale()).abs() <= 1e-9 * c.scale());
        prop_assert!(d.x_d.p.abs() < 1e-9 && d.x_d.q.abs() < 1e-9);
    }

    #[test]
    fn correlation_is_the_squared_modulus(which in 0usize..4, angle in 0.0..(2.0 * PI), f in 0.1..0.6f64) {
        let c = &curves()[which];
        let xi = chord(c, angle, f);
        let Ok(chi) = chord_asymptotic(c, xi) else { return Ok(()) };
        let corr = correlation_semiclassical(c, xi).unwrap();
        let direct = (2.0 * PI * c.hbar).powi(2) * chi.complex().norm_sqr();
        let g = find_chord_realizations(c, xi).unwrap();
        let envelope = 2.0 * PI * c.hbar / (2.0 * PI).powi(2)
            * (g.r1.bracket.abs().powf(-0.5) + g.r2.bracket.abs().powf(-0.5)).powi(2);
        prop_assert!((corr - direct).abs() <= 1e-12 * envelope);
    }

    #[test]
    fn exact_correlation_is_a_probability(n in 0u32..60, l in 0.0..20.0f64, h in 0.2..3.0f64) {
        let s = FockState::new(n, h).unwrap();
        let c = (2.0 * PI * h).powi(2) * fock_chord_exact(&s, ChordVector::new(l, 0.0)).powi(2);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
    }

    #[test]
    fn weighted_laguerre_is_bounded(n in 0u32..500, x in 0.0..4000.0f64) {
        let w = laguerre_weighted(n, x);
        prop_assert!(w.is_finite() && w.abs() <= 1.0 + 1e-9);
    }

    #[test]
    fn airy_satisfies_its_equation(x in -9.5..9.5f64) {
        // Ai'' = x Ai, checked by a central difference of Ai'
        let h = 1e-4;
        let (a, _) = airy(x).unwrap();
        let (_, dp) = airy(x + h).unwrap();
        let (_, dm) = airy(x - h).unwrap();
        let second = (dp - dm) / (2.0 * h);
        prop_assert!((second - x * a).abs() <= 1e-7 * (1.0 + x.abs()));
    }
}
