use mbkit::pullback::examples::{empty_locus, example, gelfand, line, EXAMPLE_NAMES};
use mbkit::pullback::*;
use mbkit::Error;
use num_complex::Complex64;
use proptest::prelude::*;

const CATALOG: [&str; 3] = ["line", "hyperbola", "parabola"];

#[test]
fn mollified_and_surface_agree_on_catalog_phases() {
    for name in CATALOG {
        let ex = example(name).unwrap();
        let m = pullback_mollified(&ex.rho, &ex.phi, MollifierSchedule::default()).unwrap();
        let s = pullback_surface(&ex.rho, &ex.charts, &ex.phi).unwrap();
        assert!((m.value - s).norm() < 1e-6, "{name}: {} vs {s}", m.value);
        assert!((s.re - ex.exact).abs() < 1e-10 && s.im == 0.0, "{name}: {s} vs {}", ex.exact);
        assert!((m.value.re - ex.exact).abs() < 1e-8, "{name}: {} vs {}", m.value, ex.exact);
    }
}

#[test]
fn mollifier_sequence_is_first_order() {
    for name in CATALOG {
        let ex = example(name).unwrap();
        let schedule = MollifierSchedule::default();
        let m = pullback_mollified(&ex.rho, &ex.phi, schedule).unwrap();
        assert!((0.8..=1.5).contains(&m.order), "{name}: fitted order {}", m.order);
        let d: Vec<f64> = m.values.windows(2).map(|w| (w[0] - w[1]).norm()).collect();
        for w in d.windows(2) {
            let local = (w[0] / w[1]).ln() / (1.0 / schedule.ratio).ln();
            assert!(
                (0.8 * m.order..=1.5 * m.order).contains(&local),
                "{name}: local order {local}, fitted {}",
                m.order
            );
        }
    }
}

#[test]
fn named_values() {
    let h = example("hyperbola").unwrap();
    assert!((h.exact - 0.2277877).abs() < 1e-7);
    let g = gelfand(0.3).unwrap();
    let m = pullback_mollified(&g.rho, &g.phi, MollifierSchedule::default()).unwrap();
    assert!((m.value.re - (-0.09f64).exp()).abs() < 1e-9);
    let names: Vec<_> = EXAMPLE_NAMES.iter().map(|n| example(n).unwrap().name).collect();
    assert_eq!(names, EXAMPLE_NAMES);
    assert!(example("nope").is_err());
}

#[test]
fn linearity_in_the_test_function() {
    let ex = line(0.4).unwrap();
    let phi2 = SchwartzFunction::new(1, |x| Complex64::new((-x[0] * x[0]).exp(), x[0] * (-x[0] * x[0]).exp()), 6.3)
        .unwrap();
    let alpha = Complex64::new(2.0, -1.5);
    let combo = ex.phi.combine(alpha, &phi2);
    let sched = MollifierSchedule::default();
    let p = |phi: &SchwartzFunction| pullback_mollified(&ex.rho, phi, sched).unwrap().value;
    let lhs = p(&combo);
    let rhs = alpha * p(&ex.phi) + p(&phi2);
    assert!((lhs - rhs).norm() < 1e-10, "{lhs} vs {rhs}");
    let s = |phi: &SchwartzFunction| pullback_surface(&ex.rho, &ex.charts, phi).unwrap();
    assert!((s(&combo) - alpha * s(&ex.phi) - s(&phi2)).norm() < 1e-10);
}

#[test]
fn empty_locus_vanishes() {
    for x in [3.0, 10.0, 50.0] {
        let ex = empty_locus(x).unwrap();
        let m = pullback_mollified(&ex.rho, &ex.phi, MollifierSchedule::default()).unwrap();
        let s = pullback_surface(&ex.rho, &ex.charts, &ex.phi).unwrap();
        assert!(m.value.norm() < 1e-8 && s.norm() < 1e-8, "x = {x}: {} {s}", m.value);
    }
    assert!(empty_locus(0.5).is_err());
}

#[test]
fn oscillatory_double_integral() {
    let g = gelfand(0.3).unwrap();
    let v = oscillatory_check(&g.rho, &g.phi, 400.0, 2.5e-4).unwrap();
    assert!((v.re - 0.9139312).abs() < 1e-3, "{v}");

    let rho = PhaseField::new(1, |x| 2.0 * x[0], |_| vec![2.0]).unwrap();
    let phi = SchwartzFunction::new(1, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0), 6.1).unwrap();
    let v = oscillatory_check(&rho, &phi, 400.0, 2.5e-4).unwrap();
    assert!((v.re - 0.5).abs() < 1e-3, "{v}");

    let ex = line(0.0).unwrap();
    let v = oscillatory_check(&ex.rho, &ex.phi, 50.0, 1e-3).unwrap();
    assert!((v.re - 0.25).abs() < 1e-3 && v.im.abs() < 1e-10, "{v}");

    let ex = example("hyperbola").unwrap();
    let v = oscillatory_check(&ex.rho, &ex.phi, 400.0, 2.5e-4).unwrap();
    assert!((v.re - ex.exact).abs() < 1e-3, "{v}");
}

#[test]
fn oscillatory_check_approaches_the_pullback() {
    let g = gelfand(0.3).unwrap();
    let coarse = oscillatory_check(&g.rho, &g.phi, 100.0, 4e-3).unwrap();
    let fine = oscillatory_check(&g.rho, &g.phi, 400.0, 2.5e-4).unwrap();
    assert!((fine.re - g.exact).abs() < (coarse.re - g.exact).abs());
}

#[test]
fn rejects_bad_inputs() {
    let phi = SchwartzFunction::new(1, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0), 6.1).unwrap();
    let flat = PhaseField::new(1, |x| x[0] * x[0], |x| vec![2.0 * x[0]]).unwrap();
    assert!(matches!(
        pullback_mollified(&flat, &phi, MollifierSchedule::default()),
        Err(Error::NotSubmersive(_))
    ));

    let rho = PhaseField::new(1, |x| x[0] - 0.3, |_| vec![1.0]).unwrap();
    assert!(matches!(
        pullback_surface(&rho, &[LocusChart::point(0.31)], &phi),
        Err(Error::ChartInconsistent { .. })
    ));
    let short = MollifierSchedule { steps: 2, ..Default::default() };
    assert!(pullback_mollified(&rho, &phi, short).is_err());

    assert!(SchwartzFunction::new(1, |_| Complex64::new(1.0, 0.0), 5.0).is_err());
    assert!(PhaseField::new(4, |_| 0.0, |_| vec![0.0; 4]).is_err());
    let phi2 = SchwartzFunction::new(2, |x| Complex64::new((-x[0] * x[0] - x[1] * x[1]).exp(), 0.0), 6.1).unwrap();
    assert!(pullback_mollified(&rho, &phi2, MollifierSchedule::default()).is_err());
    let rho3 = PhaseField::new(3, |x| x[0], |_| vec![1.0, 0.0, 0.0]).unwrap();
    let phi3 = SchwartzFunction::new(3, |x| Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0), 6.1)
        .unwrap();
    assert!(oscillatory_check(&rho3, &phi3, 10.0, 1e-2).is_err());
}

#[test]
fn three_dimensional_gaussian() {
    // ∫∫ e^{-y²-z²} dy dz = π on the plane x = 0
    let rho = PhaseField::new(3, |x| x[0], |_| vec![1.0, 0.0, 0.0]).unwrap();
    let phi = SchwartzFunction::new(3, |x| Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0), 6.1)
        .unwrap();
    let m = pullback_mollified(&rho, &phi, MollifierSchedule::default()).unwrap();
    assert!((m.value.re - std::f64::consts::PI).abs() < 1e-8, "{}", m.value);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn line_pullback_is_half_phi_at_half_xi(xi in -6.0f64..6.0) {
        let ex = line(xi).unwrap();
        let m = pullback_mollified(&ex.rho, &ex.phi, MollifierSchedule::default()).unwrap();
        let s = pullback_surface(&ex.rho, &ex.charts, &ex.phi).unwrap();
        prop_assert!((m.value.re - ex.exact).abs() < 1e-8);
        prop_assert!((s.re - ex.exact).abs() < 1e-14);
    }
}
