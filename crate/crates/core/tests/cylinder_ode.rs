use bilap_core::coefficients::Sigma;
use bilap_core::cylinder_ode::{
    autonomous_rhs, equilibrium, integrate, integrate_simple, linearized_spectrum,
    nonautonomous_rhs, poly_roots, AutonomousSystem, CylState, IntegrateOptions, OdeSystem, Status,
};
use bilap_core::rational::{qf, qi};
use bilap_core::{Params, Result};
use proptest::prelude::*;

struct Oscillator;

impl OdeSystem for Oscillator {
    fn dim(&self) -> usize {
        2
    }
    fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        dy[0] = y[1];
        dy[1] = -y[0];
        Ok(())
    }
}

struct Riccati;

impl OdeSystem for Riccati {
    fn dim(&self) -> usize {
        1
    }
    fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        dy[0] = y[0] * y[0];
        Ok(())
    }
}

#[test]
fn oscillator_period_and_dense_output() {
    let tr = integrate_simple(
        &Oscillator,
        0.0,
        &[0.0, 1.0],
        2.0 * std::f64::consts::PI,
        1e-12,
        1e-14,
    )
    .unwrap();
    let end = tr.last();
    assert!(
        end[0].abs() < 1e-9 && (end[1] - 1.0).abs() < 1e-9,
        "{end:?}"
    );
    for k in 1..40 {
        let t = 0.15 * k as f64;
        let y = tr.eval(t).unwrap();
        assert!((y[0] - t.sin()).abs() < 1e-8, "t={t}");
        let dy = tr.eval_dt(t).unwrap();
        assert!((dy[0] - t.cos()).abs() < 1e-6, "t={t}");
    }
    let z = tr.first_zero(1).unwrap();
    assert!((z - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
}

#[test]
fn backward_integration() {
    let tr = integrate_simple(
        &Oscillator,
        1.0,
        &[1.0f64.sin(), 1.0f64.cos()],
        -1.0,
        1e-12,
        1e-14,
    )
    .unwrap();
    let y = tr.last();
    assert!((y[0] - (-1.0f64).sin()).abs() < 1e-9);
    assert!(tr.eval(0.0).unwrap()[0].abs() < 1e-9);
}

#[test]
fn blow_up_is_reported_with_the_partial_trajectory() {
    // y' = y², y(0) = 1 blows up at t = 1
    let opts = IntegrateOptions {
        blow_up: 1e6,
        ..IntegrateOptions::tol(1e-10, 1e-12)
    };
    match integrate(&Riccati, 0.0, &[1.0], 2.0, &opts) {
        Ok(tr) => {
            assert_eq!(tr.status, Status::BlowUp);
            assert!(tr.t_end() < 1.0 && tr.t_end() > 0.999);
        }
        Err(e) => assert!(e.partial.t_end() < 1.0 && e.partial.t_end() > 0.999),
    }
}

#[test]
fn equilibrium_is_stationary() {
    let p = Params::scalar(5, qi(7)).unwrap();
    // K0(5, 7) = 112/81
    let v = equilibrium(&p, Sigma::Minus).unwrap().unwrap();
    assert!((v - (112.0f64 / 81.0).powf(1.0 / 6.0)).abs() < 1e-15);
    let dy = autonomous_rhs(&p, Sigma::Minus, &[v, 0.0, 0.0, 0.0]).unwrap();
    assert!(dy.iter().all(|d| d.abs() < 1e-13), "{dy:?}");
    // below 2_** there is no positive equilibrium
    let low = Params::scalar(6, qi(2)).unwrap();
    assert!(equilibrium(&low, Sigma::Minus).unwrap().is_none());
}

#[test]
fn polynomial_roots() {
    // (λ-1)(λ-2)(λ+3)(λ²+1) = λ⁵ - 6λ³ + 6λ² - 7λ + 6, lowest degree first
    let c = [6.0, -7.0, 6.0, -6.0, 0.0, 1.0];
    let roots = poly_roots(&c);
    assert!(roots
        .iter()
        .any(|z| (z.im - 1.0).abs() < 1e-10 && z.re.abs() < 1e-10));
    let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    let want = [-3.0, 0.0, 0.0, 1.0, 2.0];
    for (a, b) in re.iter().zip(want) {
        assert!((a - b).abs() < 1e-10, "{re:?}");
    }
}

#[test]
fn linearized_spectrum_reconstructs_its_polynomial() {
    for (n, s) in [(5, qi(7)), (6, qf(7, 2)), (8, qf(5, 2))] {
        let (sp, nontrivial) =
            linearized_spectrum(&Params::scalar(n, s).unwrap(), Sigma::Minus).unwrap();
        assert!(nontrivial);
        assert_eq!(sp.roots.len(), 4);
        assert!(sp.reconstruction_error() < 1e-10);
    }
    // the critical exponent linearizes to a center: imaginary pair present
    let (sp, _) = linearized_spectrum(&Params::scalar(5, qi(9)).unwrap(), Sigma::Minus).unwrap();
    assert!(!sp.imaginary_frequencies(1e-9).is_empty());
}

#[test]
fn state_length_is_checked() {
    let p = Params::scalar(5, qi(7)).unwrap();
    assert!(autonomous_rhs(&p, Sigma::Minus, &[1.0, 0.0, 0.0]).is_err());
    assert!(nonautonomous_rhs(5, 10.0, &[1.0, 0.0]).is_err());
    assert_eq!(
        nonautonomous_rhs(5, 10.0, &[1.0, 0.0, 0.0, 0.0])
            .unwrap()
            .len(),
        4
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rays_are_invariant(theta in 0.0f64..std::f64::consts::FRAC_PI_2, v in 0.2f64..1.0, b in -0.2f64..0.2) {
        let s = qi(7);
        let p1 = Params::new(5, s.clone(), 1).unwrap();
        let p2 = Params::new(5, s, 2).unwrap();
        let data = [v, 0.0, b, 0.0];
        let scalar = integrate_simple(&AutonomousSystem::from_params(&p1, Sigma::Minus).unwrap(), 0.0, &data, 1.0, 1e-11, 1e-13).unwrap();
        let dir = [theta.cos(), theta.sin()];
        let y0 = CylState::on_ray(0.0, &dir, data);
        let vec = integrate_simple(&AutonomousSystem::from_params(&p2, Sigma::Minus).unwrap(), 0.0, &y0.y, 1.0, 1e-11, 1e-13).unwrap();
        let a = scalar.last()[0];
        let end = CylState::new(1.0, vec.last().to_vec());
        let v0 = end.derivative(0);
        prop_assert!((v0[0] - dir[0] * a).abs() < 1e-8);
        prop_assert!((v0[1] - dir[1] * a).abs() < 1e-8);
    }

    #[test]
    fn on_ray_round_trips(d in prop::collection::vec(-1.0f64..1.0, 3), data in prop::array::uniform4(-5.0f64..5.0)) {
        let st = CylState::on_ray(0.0, &d, data);
        prop_assert_eq!(st.components(), 3);
        for k in 0..4 {
            let got = st.derivative(k);
            for (g, l) in got.iter().zip(&d) {
                prop_assert!((g - l * data[k]).abs() < 1e-15);
            }
        }
    }
}
