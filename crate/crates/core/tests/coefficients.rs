use bilap_core::coefficients::chain_rule::{
    derive_cyl_coeffs_numeric, derive_second_order_numeric, Scaling,
};
use bilap_core::coefficients::nonauto::derived_nonautonomous;
use bilap_core::coefficients::printed::{autonomous_coeffs_raw, nonautonomous_coeffs};
use bilap_core::coefficients::symbol::{char_symbol_raw, second_order_symbol, Sigma};
use bilap_core::coefficients::{critical_and_lower_values, hat_limits};
use bilap_core::params::special_exponents;
use bilap_core::rational::{qf, qi, to_f64, Q};
use num_traits::Zero;

fn s_grid(n: u32) -> Vec<Q> {
    let e = special_exponents(n).unwrap();
    vec![qf(3, 2), qi(2), qi(3), qi(5), e.lower.clone(), e.critical()]
}

#[test]
fn even_coefficients_agree_exactly() {
    for n in 5..=12 {
        for s in s_grid(n) {
            let p = autonomous_coeffs_raw(n, &s).unwrap();
            for sigma in [Sigma::Plus, Sigma::Minus] {
                let o = char_symbol_raw(n, &s, sigma).unwrap().coefficients();
                assert_eq!(p.k0, o.k0);
                assert_eq!(p.k2, o.k2);
                assert_eq!(p.j0, o.j0);
            }
        }
    }
}

#[test]
fn odd_coefficients_follow_one_convention() {
    for n in 5..=12 {
        for s in s_grid(n) {
            let p = autonomous_coeffs_raw(n, &s).unwrap();
            let o = char_symbol_raw(n, &s, Sigma::Minus).unwrap().coefficients();
            assert_eq!(p.k1, o.k1, "K1 n={n}");
            assert_eq!(p.k3, o.k3, "K3 n={n}");
        }
    }
}

#[test]
fn critical_values_reproduced() {
    for n in 5..=12 {
        let e = special_exponents(n).unwrap();
        let r = critical_and_lower_values(n).unwrap();
        let o = char_symbol_raw(n, &e.critical(), Sigma::Minus)
            .unwrap()
            .coefficients();
        assert_eq!(o.k0, r.critical.k0);
        assert_eq!(o.k2, r.critical.k2);
        assert_eq!(o.j0, r.critical.j0);
        assert!(o.k1.is_zero() && o.k3.is_zero() && o.j1.is_zero());
        let low = char_symbol_raw(n, &e.lower, Sigma::Minus)
            .unwrap()
            .coefficients();
        assert!(low.k0.is_zero());
    }
}

#[test]
fn chain_rule_autonomous_matches_symbol() {
    for n in [5u32, 6, 8] {
        for s in [
            qf(3, 2),
            qi(3),
            special_exponents(n).unwrap().lower,
            special_exponents(n).unwrap().critical(),
        ] {
            let o = char_symbol_raw(n, &s, Sigma::Minus).unwrap().coefficients();
            let ok = [o.k0, o.k1, o.k2, o.k3].map(|q| to_f64(&q));
            let oj = [o.j0, o.j1].map(|q| to_f64(&q));
            for r in [0.1, 0.3, 0.5, 0.9] {
                let e = derive_cyl_coeffs_numeric(
                    Scaling::Autonomous {
                        s: to_f64(&s),
                        sigma: Sigma::Minus,
                    },
                    n,
                    r,
                )
                .unwrap();
                for j in 0..4 {
                    assert!(
                        (e.k[j] - ok[j]).abs() <= 1e-10 * (1.0 + ok[j].abs()),
                        "n={n} r={r} K{j}: {} vs {}",
                        e.k[j],
                        ok[j]
                    );
                }
                for j in 0..2 {
                    assert!(
                        (e.j[j] - oj[j]).abs() <= 1e-10 * (1.0 + oj[j].abs()),
                        "J{j}"
                    );
                }
            }
        }
    }
}

#[test]
fn chain_rule_nonautonomous_matches_exact_operator() {
    for n in [5u32, 6, 8, 11] {
        let d = derived_nonautonomous(n).unwrap();
        let p = nonautonomous_coeffs(n).unwrap();
        for t in [0.5f64, 2.0, 10.0] {
            let e = derive_cyl_coeffs_numeric(Scaling::Nonautonomous, n, (-t).exp()).unwrap();
            let dv = d.eval(t).unwrap();
            for j in 0..4 {
                assert!(
                    (e.k[j] - dv.k[j]).abs() <= 1e-8 * (1.0 + dv.k[j].abs()),
                    "n={n} t={t} K~{j}: {} vs {}",
                    e.k[j],
                    dv.k[j]
                );
            }
            for j in 0..2 {
                assert!(
                    (e.j[j] - dv.j[j]).abs() <= 1e-8 * (1.0 + dv.j[j].abs()),
                    "J~{j}"
                );
            }
            let pv = p.eval(t).unwrap();
            println!("n={n} t={t} derived {:?} printed {:?}", dv, pv);
        }
    }
}

#[test]
fn second_order_chain_rule() {
    for n in 3..=9u32 {
        let crit = Q::from_integer((n as i64 + 2).into()) / qi(n as i64 - 2);
        let (k20, k21) = second_order_symbol(n, &crit, Sigma::Minus).unwrap();
        let k = derive_second_order_numeric(
            Scaling::Autonomous {
                s: to_f64(&crit),
                sigma: Sigma::Minus,
            },
            n,
            0.4,
        )
        .unwrap();
        assert!((k[0] - to_f64(&k20)).abs() < 1e-10);
        assert!((k[1] - to_f64(&k21)).abs() < 1e-10);
        assert!((k[2] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn hat_limit_values() {
    let h = hat_limits(5).unwrap();
    assert_eq!(h.from_formula[0], qi(27));
    assert_eq!(h.theorem_k0, qf(27, 2));
    assert_eq!(h.from_formula[3], qi(2));
}
