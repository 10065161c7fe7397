use bilap_core::coefficients::Sigma;
use bilap_core::cylinder_ode::{
    equilibrium, integrate_simple, AutonomousSystem, CoeffRoute, NonautonomousSystem,
};
use bilap_core::pohozaev::{
    aviles_dh_formula, aviles_hamiltonian, aviles_p_coeffs, aviles_p_coeffs_exact, dh_formula,
    hamiltonian_radial, level_identity, limiting_levels, monotonicity_trials, pohozaev_series,
};
use bilap_core::rational::{qf, qi, to_f64};
use bilap_core::Params;

#[test]
fn energy_is_conserved_at_the_critical_exponent() {
    let p = Params::scalar(5, qi(9)).unwrap();
    let sys = AutonomousSystem::from_params(&p, Sigma::Minus).unwrap();
    // small perturbation of the equilibrium (25/16)^{1/8}
    let y0 = [1.05, 0.01, -0.01, 0.0];
    assert_eq!(dh_formula(&sys, &y0), 0.0);
    let tr = integrate_simple(&sys, 0.0, &y0, 1.5, 1e-12, 1e-14).unwrap();
    // the equilibrium is a saddle-center, so stay on the stretch before escape
    assert!(tr.y.iter().flatten().all(|v| v.abs() < 10.0));
    let h0 = hamiltonian_radial(&sys, &y0);
    for y in &tr.y {
        let h = hamiltonian_radial(&sys, y);
        assert!((h - h0).abs() <= 1e-10 * h0.abs().max(1.0), "{h} vs {h0}");
    }
}

#[test]
fn energy_derivative_matches_the_formula() {
    let p = Params::scalar(6, qf(7, 2)).unwrap();
    let sys = AutonomousSystem::from_params(&p, Sigma::Minus).unwrap();
    let tr = integrate_simple(&sys, 0.0, &[0.9, 0.2, 0.1, -0.1], 3.0, 1e-12, 1e-14).unwrap();
    let series = pohozaev_series(&sys, &tr, 6, 3e-4).unwrap();
    assert!(series.len() > 5);
    for e in series {
        assert!(
            (e.dh_numeric - e.dh_formula).abs() <= 1e-5 * e.dh_formula.abs().max(1e-3),
            "{e:?}"
        );
        assert!(e.dh_formula >= -1e-14);
    }
}

#[test]
fn monotone_inside_the_exponent_range() {
    for (n, s) in [(5, qi(7)), (6, qf(7, 2)), (9, qf(5, 2))] {
        let p = Params::scalar(n, s).unwrap();
        let m = monotonicity_trials(&p, Sigma::Minus, 6, 7, 10.0).unwrap();
        assert!(m.in_range);
        assert!(m.formula_agrees(), "{m:?}");
        assert!(m.nondecreasing(), "{m:?}");
    }
}

#[test]
fn equilibrium_energy_equals_minus_the_level() {
    for (n, s) in [(5, qi(7)), (7, qi(3)), (10, qf(13, 6))] {
        let p = Params::scalar(n, s).unwrap();
        let li = level_identity(&p, Sigma::Minus).unwrap();
        assert!(li.equal, "{li:?}");
        let sys = AutonomousSystem::from_params(&p, Sigma::Minus).unwrap();
        let v = equilibrium(&p, Sigma::Minus).unwrap().unwrap();
        let h = hamiltonian_radial(&sys, &[v, 0.0, 0.0, 0.0]);
        let l = limiting_levels(&p, Sigma::Minus)
            .unwrap()
            .l_star_autonomous
            .unwrap();
        assert!((h + l).abs() <= 1e-12 * l.abs(), "{h} vs {l}");
    }
    assert!(level_identity(&Params::scalar(6, qi(2)).unwrap(), Sigma::Minus).is_err());
}

#[test]
fn nonautonomous_energy_derivative_matches_the_formula() {
    for route in [CoeffRoute::Printed, CoeffRoute::Derived] {
        let sys = NonautonomousSystem::new(6, 1, route).unwrap();
        let tr = integrate_simple(&sys, 2.0, &[0.5, 0.1, -0.05, 0.02], 4.0, 1e-12, 1e-14).unwrap();
        let h = |t: f64| aviles_hamiltonian(&sys, t, &tr.eval(t).unwrap()).unwrap();
        let d = 1e-3;
        for k in 1..10 {
            let t = 2.0 + 0.2 * k as f64;
            let num =
                (-h(t + 2.0 * d) + 8.0 * h(t + d) - 8.0 * h(t - d) + h(t - 2.0 * d)) / (12.0 * d);
            let form = aviles_dh_formula(&sys, t, &tr.eval(t).unwrap()).unwrap();
            assert!(
                (num - form).abs() <= 1e-6 * form.abs().max(1e-2),
                "{route:?} t={t}: {num} vs {form}"
            );
        }
    }
}

#[test]
fn p3_definitions_differ_by_a_factor_of_t() {
    for n in [5, 6, 8, 11] {
        let one = aviles_p_coeffs_exact(n, &qi(1)).unwrap();
        assert_eq!(one.definitional, one.derivative);
        let t = aviles_p_coeffs_exact(n, &qf(7, 2)).unwrap();
        assert_eq!(t.definitional[..3], t.derivative[..3]);
        assert_ne!(t.definitional[3], t.derivative[3]);
        let f = aviles_p_coeffs(n, 3.5).unwrap();
        assert!((f.derivative[3] - to_f64(&t.derivative[3])).abs() < 1e-12);
    }
}
