use proptest::prelude::*;
use weno_core::advect1d::residual;
use weno_core::kernels::{beta_js_r2, beta_js_r3, beta_star_es, tau};
use weno_core::reconstruction::linear_r2;
use weno_core::*;

const TAUS: [TauKind; 8] = [
    TauKind::Tau3,
    TauKind::Tau4,
    TauKind::TauCp1,
    TauKind::First3Third1,
    TauKind::Second2Third1,
    TauKind::Third1Squared,
    TauKind::ProductCentral(1.0),
    TauKind::SecondSquared(1.0 / 6.0),
];

fn all_schemes() -> Vec<SchemeSpec> {
    SchemeId::ALL.into_iter().map(SchemeSpec::new).collect()
}

fn win(v: &[f64]) -> StencilWindow {
    StencilWindow::new(v).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn window5() -> impl Strategy<Value = [f64; 5]> {
    prop::array::uniform5(-10.0..10.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn indicators_are_nonnegative(f in window5()) {
        let w = win(&f);
        let b = beta_js_r2(&w).unwrap();
        prop_assert!(b.beta0 >= 0.0 && b.beta1 >= 0.0);
        prop_assert!(beta_js_r3(&w).unwrap().iter().all(|b| *b >= 0.0));
        for v in [EsVariant::Es2 { c_beta0: 0.5 }, EsVariant::Es3 { c_beta0: 0.6 }] {
            let b = beta_star_es(&w, v).unwrap();
            prop_assert!(b.beta0 >= 0.0 && b.beta1 >= 0.0);
        }
        for k in TAUS {
            prop_assert!(tau(&w, k).unwrap() >= 0.0, "{k:?}");
        }
    }

    #[test]
    fn indicators_ignore_shifts_and_scale_quadratically(
        f in window5(),
        shift in -100.0..100.0f64,
        c in 0.01..100.0f64,
    ) {
        let w = win(&f);
        let shifted = win(&f.map(|v| v + shift));
        let scaled = w.scaled(c);
        let b = beta_js_r2(&w).unwrap();
        let bs = beta_js_r2(&scaled).unwrap();
        prop_assert!(close(bs.beta0, c * c * b.beta0, 1e-12));
        prop_assert!(close(bs.beta1, c * c * b.beta1, 1e-12));
        for k in TAUS {
            let t = tau(&w, k).unwrap();
            prop_assert!(close(tau(&scaled, k).unwrap(), c * c * t, 1e-12), "{k:?}");
            // Shifting by up to 100 loses about log10(100/|f|) digits.
            let ts = tau(&shifted, k).unwrap();
            prop_assert!((ts - t).abs() <= 1e-9 * (1.0 + t), "{k:?}: {t} vs {ts}");
        }
    }

    #[test]
    fn weights_are_a_partition_of_unity(f in window5()) {
        for spec in all_schemes() {
            let ws = spec.weights(&win(&f)).unwrap();
            let sum: f64 = ws.omega().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-14, "{}: {sum}", spec.id);
            prop_assert!(ws.omega().iter().all(|w| (0.0..=1.0).contains(w)), "{}", spec.id);
        }
    }

    #[test]
    fn mirrored_reconstruction_is_the_reversed_upwind_value(f in window5()) {
        let w = win(&f);
        for spec in all_schemes() {
            let minus = reconstruct_minus(&w, &spec).unwrap().fhat;
            let plus = reconstruct_plus(&w.reversed(), &spec).unwrap().fhat;
            prop_assert_eq!(minus.to_bits(), plus.to_bits(), "{}", spec.id);
        }
    }

    #[test]
    fn constants_are_reproduced_exactly(c in -1e6..1e6f64) {
        for spec in all_schemes() {
            let v = reconstruct_plus(&win(&[c; 5]), &spec).unwrap().fhat;
            prop_assert_eq!(v, c, "{}", spec.id);
        }
    }

    #[test]
    fn linear_data_gives_the_linear_scheme(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let f: [f64; 5] = std::array::from_fn(|k| a + b * (k as f64 - 2.0));
        let w = win(&f);
        let linear = linear_r2(&w).unwrap();
        for id in [SchemeId::Z3, SchemeId::Zm3, SchemeId::Es2, SchemeId::Es3, SchemeId::F3] {
            let v = reconstruct_plus(&w, &SchemeSpec::new(id)).unwrap().fhat;
            prop_assert_eq!(v, linear, "{}", id);
        }
    }

    #[test]
    fn interface_value_stays_between_candidates(f in window5()) {
        let w = win(&f);
        let (q0, q1) = weno_core::reconstruction::candidates_r2(&w).unwrap();
        for spec in all_schemes().into_iter().filter(|s| s.id.is_third_order()) {
            let v = reconstruct_plus(&w, &spec).unwrap().fhat;
            let slack = 1e-12 * (1.0 + q0.abs().max(q1.abs()));
            prop_assert!(v >= q0.min(q1) - slack && v <= q0.max(q1) + slack, "{}", spec.id);
        }
    }

    #[test]
    fn advection_residual_conserves_and_commutes_with_shifts(
        u in prop::collection::vec(-1.0..1.0f64, 12..40),
        s in 1usize..11,
    ) {
        let n = u.len();
        let mut rotated = u.clone();
        rotated.rotate_right(s);
        for spec in all_schemes() {
            let mut r = vec![0.0; n];
            let mut rr = vec![0.0; n];
            residual(&u, 0.1, &spec, &mut r).unwrap();
            residual(&rotated, 0.1, &spec, &mut rr).unwrap();
            let total: f64 = r.iter().sum();
            let scale: f64 = r.iter().map(|v| v.abs()).sum();
            prop_assert!(total.abs() <= 1e-13 * (1.0 + scale), "{}: {total}", spec.id);
            r.rotate_right(s);
            prop_assert_eq!(&r, &rr, "{}", spec.id);
        }
    }
}

#[test]
fn quadratic_data_is_interpolated_to_third_order() {
    // The optimal combination is exact on quadratics at x_{j+1/2}.
    for (a, b, c) in [(1.0, -2.0, 0.5), (0.0, 3.0, -4.0), (2.5, 0.0, 1.0)] {
        let p = |x: f64| a + b * x + c * x * x;
        let f: [f64; 5] = std::array::from_fn(|k| p(k as f64 - 2.0));
        let exact_flux_value = linear_r2(&win(&f)).unwrap();
        // Point-value scheme: the third-order value reproduces the
        // primitive-function interpolant, i.e. p(1/2) - c/12 for quadratics.
        let expect = p(0.5) - c / 12.0;
        assert!((exact_flux_value - expect).abs() < 1e-13, "{exact_flux_value} vs {expect}");
    }
}

#[test]
fn nonlinear_weights_approach_the_linear_ones_on_smooth_data() {
    // Away from critical points ω - d = O(h²) for the Z-type schemes.
    let x0 = 0.3;
    let sample = |h: f64| -> [f64; 5] { std::array::from_fn(|k| (x0 + (k as f64 - 2.0) * h).sin()) };
    for id in [SchemeId::Z3, SchemeId::Es2, SchemeId::Es3] {
        let spec = SchemeSpec::new(id);
        let dev = |h: f64| {
            let ws = spec.weights(&win(&sample(h))).unwrap();
            (ws.omega()[0] - ws.linear()[0]).abs()
        };
        let slope = (dev(0.02) / dev(0.01)).log2();
        assert!(slope >= 1.75, "{id}: slope {slope}");
    }
}

#[test]
fn scheme_names_round_trip() {
    for id in SchemeId::ALL {
        assert_eq!(SchemeSpec::parse(id.name()).unwrap().id, id);
    }
    let err = SchemeSpec::parse("nosuch").unwrap_err().to_string();
    for id in SchemeId::ALL {
        assert!(err.contains(id.name()), "{err}");
    }
}
