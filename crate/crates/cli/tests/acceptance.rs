//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness; the process fails when any criterion fails.

use bilap_core::asymptotics::{
    classify_regime, fit_log_corrected, fit_power_law, log_samples, residual_decay_check, Regime,
};
use bilap_core::closed_forms::{
    bubble_constant, kernel_residual, relative_residual, AvilesProfile, Bubble, HatVariant,
    SingularPower,
};
use bilap_core::coefficients::ledger::{n_grid, s_grid};
use bilap_core::coefficients::printed::appendix_j40;
use bilap_core::coefficients::{
    audit, autonomous_coeffs, build_ledger, char_symbol, derive_cyl_coeffs_numeric,
    second_order_coeffs, sigma_vote, Scaling, Sigma, Verdict,
};
use bilap_core::cylinder_ode::AutonomousSystem;
use bilap_core::delaunay::{find_b, CMode, CriticalConstants, ShootingOptions};
use bilap_core::pohozaev::{
    aviles_p_coeffs, hamiltonian_radial, level_identity, monotonicity_trials, Monotonicity,
    ScaledPower,
};
use bilap_core::rational::{qf, qi, to_f64};
use bilap_core::verify::aviles_monotonicity;
use bilap_core::{special_exponents, Params, Q};
use num_traits::{One, Zero};
use std::process::Command;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Res = Result<Outcome, String>;

fn sigma() -> Sigma {
    sigma_vote().chosen
}

fn p(n: u32, s: Q) -> Params {
    Params::scalar(n, s).expect("valid parameters")
}

fn c1_exact_constants() -> Res {
    let sg = sigma();
    let mut bad = Vec::new();
    for n in 5..=12u32 {
        let e = special_exponents(n).map_err(|e| e.to_string())?;
        let nq = qi(n as i64);
        let crit = char_symbol(&p(n, e.critical()), sg)
            .map_err(|e| e.to_string())?
            .coefficients();
        let lower = char_symbol(&p(n, e.lower.clone()), sg)
            .map_err(|e| e.to_string())?
            .coefficients();
        let four = qi(4);
        let want_k0 = &nq * &nq * (&nq - &four) * (&nq - &four) / qi(16);
        let want_k2 = -(&nq * &nq - qi(4) * &nq + qi(8)) / qi(2);
        let want_j0 = -(&nq * (&nq - &four)) / qi(2);
        let checks = [
            ("K*_0", crit.k0 == want_k0),
            ("K*_2", crit.k2 == want_k2),
            ("J*_0", crit.j0 == want_j0),
            ("K0(2_**)", lower.k0.is_zero()),
            ("K*_1", crit.k1.is_zero()),
            ("K*_3", crit.k3.is_zero()),
            ("J*_1", crit.j1.is_zero()),
        ];
        bad.extend(
            checks
                .iter()
                .filter(|c| !c.1)
                .map(|c| format!("{} at n={n}", c.0)),
        );
    }
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "all exact for n = 5..12".into()
        } else {
            bad.join(", ")
        },
    ))
}

fn c2_oracle_agreement() -> Res {
    let mut exact_bad = Vec::new();
    // K1, K3, J1 must agree with the oracle for one σ across the whole grid
    let mut agree = [(Sigma::Plus, true), (Sigma::Minus, true)];
    let mut j40_equal = 0usize;
    let mut points = 0usize;
    for n in n_grid() {
        for s in s_grid(n) {
            let pr = p(n, s.clone());
            let printed = autonomous_coeffs(&pr).map_err(|e| e.to_string())?;
            points += 1;
            for (sg, ok) in agree.iter_mut() {
                let o = char_symbol(&pr, *sg)
                    .map_err(|e| e.to_string())?
                    .coefficients();
                *ok &= printed.k1 == o.k1 && printed.k3 == o.k3 && printed.j1 == o.j1;
                if *sg == Sigma::Minus {
                    if printed.k0 != o.k0 || printed.k2 != o.k2 || printed.j0 != o.j0 {
                        exact_bad.push(format!("n={n} s={s}"));
                    }
                    if appendix_j40(n, &s).map_err(|e| e.to_string())? == o.j0 {
                        j40_equal += 1;
                    }
                }
            }
        }
    }
    let global = agree.iter().find(|a| a.1).map(|a| a.0);
    let (_, ledger) = build_ledger().map_err(|e| e.to_string())?;
    let j40_ledgered = ledger
        .iter()
        .any(|e| e.symbol == "J40" && e.verdict == Verdict::Mismatch);
    let pass = exact_bad.is_empty() && global.is_some() && j40_ledgered && j40_equal < points;
    Ok(outcome(
        pass,
        format!(
            "K0, K2, J0 exact on {points} points: {}; K1, K3, J1 under one global sigma: {}; J40 ledgered MISMATCH: {j40_ledgered}",
            if exact_bad.is_empty() { "yes".to_string() } else { exact_bad.join(" ") },
            match global {
                Some(s) => format!("yes (sigma {})", s.value()),
                None => "no sigma reproduces all three".into(),
            }
        ),
    ))
}

fn c3_chain_rule() -> Res {
    let sg = sigma();
    let mut worst_r: f64 = 0.0;
    let mut worst_o: f64 = 0.0;
    for n in [5u32, 6, 8] {
        let e = special_exponents(n).map_err(|e| e.to_string())?;
        for s in [qf(3, 2), qi(3), e.lower.clone(), e.critical()] {
            let o = char_symbol(&p(n, s.clone()), sg)
                .map_err(|e| e.to_string())?
                .coefficients();
            let oracle = [&o.k0, &o.k1, &o.k2, &o.k3, &o.j0, &o.j1].map(to_f64);
            let mut first: Option<[f64; 6]> = None;
            for r in [0.3, 0.7, 1.5, 4.0] {
                let est = derive_cyl_coeffs_numeric(
                    Scaling::Autonomous {
                        s: to_f64(&s),
                        sigma: sg,
                    },
                    n,
                    r,
                )
                .map_err(|e| e.to_string())?;
                let v = [est.k[0], est.k[1], est.k[2], est.k[3], est.j[0], est.j[1]];
                for i in 0..6 {
                    let scale = oracle[i].abs().max(1.0);
                    worst_o = worst_o.max((v[i] - oracle[i]).abs() / scale);
                    if let Some(f) = first {
                        worst_r = worst_r.max((v[i] - f[i]).abs() / scale);
                    }
                }
                first.get_or_insert(v);
            }
        }
    }
    let mut second_bad = Vec::new();
    for n in 3..=10u32 {
        let nq = qi(n as i64);
        let crit = (&nq + qi(2)) / (&nq - qi(2));
        let so = second_order_coeffs(n, &crit, sg).map_err(|e| e.to_string())?;
        let want = -((&nq - qi(2)) * (&nq - qi(2))) / qi(4);
        if so.oracle.0 != want || !so.oracle.1.is_zero() {
            second_bad.push(n);
        }
    }
    Ok(outcome(
        worst_r <= 1e-10 && worst_o <= 1e-10 && second_bad.is_empty(),
        format!(
            "r-dependence {worst_r:.3e}, deviation from oracle {worst_o:.3e}; second-order K20 = -(n-2)²/4, K21 = 0 at 2*-1 {}",
            if second_bad.is_empty() { "for n = 3..10".to_string() } else { format!("fails at {second_bad:?}") }
        ),
    ))
}

fn c4_residuals() -> Res {
    let sg = sigma();
    let radii = [1e-3, 0.1, 1.0, 10.0, 1e3];
    let mut details = Vec::new();
    let mut pass = true;
    for (n, s) in [(5u32, qi(7)), (6, qi(2))] {
        let pr = p(n, s.clone());
        let w = match SingularPower::new(vec![1.0], &pr, sg) {
            Ok(sp) => {
                let mut w: f64 = 0.0;
                for r in radii {
                    w = w.max(sp.residual(r).map_err(|e| e.to_string())?[0]);
                }
                details.push(format!("power residual n={n} s={s}: {w:.3e}"));
                w
            }
            Err(_) => {
                // K0 = 0: zero amplitude, r^{-γ} is in the kernel of Δ²
                let w = radii
                    .iter()
                    .map(|r| kernel_residual(n, to_f64(&s), *r))
                    .fold(0.0, f64::max);
                details.push(format!("n={n} s={s} has K0 = 0, kernel residual {w:.3e}"));
                w
            }
        };
        pass &= w <= 1e-10;
    }
    let (mut bubble, mut ident): (f64, f64) = (0.0, 0.0);
    for n in 5..=10u32 {
        let c = bubble_constant(n).map_err(|e| e.to_string())?.c;
        let prof = Bubble::new(vec![0.0; n as usize], 1.0, n)
            .map_err(|e| e.to_string())?
            .profile();
        let q = (n as f64 + 4.0) / (n as f64 - 4.0);
        for r in [0.05, 0.3, 1.0, 3.0, 20.0] {
            bubble = bubble.max(relative_residual(&prof, n, c, q, r));
        }
        let nf = n as f64;
        let k0 = nf * nf * (nf - 4.0) * (nf - 4.0) / 16.0;
        let closed = (nf * (nf - 4.0) / (nf * nf - 4.0)).powf((nf - 4.0) / 8.0);
        ident = ident.max(((k0 / c).powf((nf - 4.0) / 8.0) - closed).abs());
    }
    pass &= bubble <= 1e-9 && ident <= 1e-9;
    details.push(format!(
        "bubble residual {bubble:.3e}, a0 identity gap {ident:.3e} for n = 5..10"
    ));
    Ok(outcome(pass, details.join("; ")))
}

fn c5_level_identity() -> Res {
    let sg = sigma();
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 5..=8u32 {
        let e = special_exponents(n).map_err(|e| e.to_string())?;
        let crit = e.critical();
        for f in [qf(1, 7), qf(1, 4), qf(1, 2), qf(3, 4), qf(6, 7)] {
            let s = &e.lower + (&crit - &e.lower) * f;
            let pr = p(n, s.clone());
            let k0 = autonomous_coeffs(&pr).map_err(|e| e.to_string())?.k0;
            let m = &s - Q::one();
            let want = ScaledPower::new(
                -(&m) / (qi(2) * (&s + Q::one())),
                k0.clone(),
                (&s + Q::one()) / &m,
            );
            let li = level_identity(&pr, sg).map_err(|e| e.to_string())?;
            // floating cross-check of H at the equilibrium
            let sys = AutonomousSystem::from_params(&pr, sg).map_err(|e| e.to_string())?;
            let v = to_f64(&k0).powf(1.0 / to_f64(&m));
            let h = hamiltonian_radial(&sys, &[v, 0.0, 0.0, 0.0]);
            let hf = want.to_f64();
            if !(li.equal && li.minus_l_star == want && li.h_equilibrium == want)
                || (h - hf).abs() > 1e-12 * hf.abs()
            {
                bad.push(format!("n={n} s={s}"));
            }
            count += 1;
        }
    }
    Ok(outcome(
        bad.is_empty(),
        format!(
            "exact at {count} rational exponents{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!("; fails at {}", bad.join(", "))
            }
        ),
    ))
}

fn c6_monotonicity() -> Res {
    let sg = sigma();
    let mut pass = true;
    let mut details = Vec::new();
    for (n, s) in [(5u32, qi(7)), (6, qi(2)), (8, qf(5, 3))] {
        let m = monotonicity_trials(&p(n, s.clone()), sg, 20, 20240607, 4.0)
            .map_err(|e| e.to_string())?;
        let ok = m.formula_agrees() && m.nondecreasing();
        pass &= ok;
        details.push(format!(
            "n={n} s={s}: formula ratio {:.2e}, min dP/dt {:.3e}{}",
            m.worst_ratio,
            m.min_dp,
            if m.in_range {
                ""
            } else {
                " (outside 2_** < s < 2**-1)"
            }
        ));
    }
    Ok(outcome(pass, details.join("; ")))
}

fn c7_delaunay() -> Res {
    let opts = ShootingOptions::default();
    let mut pass = true;
    let mut details = Vec::new();
    for n in [5u32, 6] {
        let consts = CriticalConstants::new(n, CMode::Measured).map_err(|e| e.to_string())?;
        let (mut res, mut per, mut drift, mut minv): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
        for f in [0.3, 0.6, 0.9] {
            let a = f * consts.a0;
            let r = find_b(&consts, a, &opts).map_err(|e| format!("n={n} a={f}a0: {e}"))?;
            res = res.max(r.residual);
            per = per.max(r.periodicity_defect);
            drift = drift.max(r.energy_drift);
            minv = minv.max((r.min_v - a).abs());
        }
        let near = find_b(&consts, 0.999 * consts.a0, &opts).map_err(|e| e.to_string())?;
        let lin = consts.linearized_period();
        let gap = (near.period - lin).abs() / lin;
        pass &= res <= 1e-9 && per <= 1e-6 && drift <= 1e-8 && minv <= 1e-6 && gap <= 0.02;
        details.push(format!(
            "n={n}: residual {res:.2e}, periodicity {per:.2e}, drift {drift:.2e}, |min v - a| {minv:.2e}, T(0.999a0) vs linearized {gap:.2e}"
        ));
    }
    Ok(outcome(pass, details.join("; ")))
}

fn c8_aviles() -> Res {
    let mut pass = true;
    let mut details = Vec::new();
    for n in [5u32, 8] {
        let r = residual_decay_check(n, HatVariant::Theorem, None).map_err(|e| e.to_string())?;
        let rate = r.rate.unwrap_or(f64::NAN);
        pass &= (0.9..=1.1).contains(&rate);
        details.push(format!("decay rate n={n} {rate:.4}"));
    }
    let mut verdicts = Vec::new();
    for n in 5..=9u32 {
        let m = aviles_monotonicity(n).map_err(|e| e.to_string())?;
        let want = if n <= 7 {
            Monotonicity::Nonincreasing
        } else {
            Monotonicity::Nondecreasing
        };
        pass &= m.verdict == want;
        let nf = n as f64;
        let sign = (nf * nf - 10.0 * nf + 20.0).signum();
        let p0 = aviles_p_coeffs(n, 1e4).map_err(|e| e.to_string())?;
        pass &= p0.printed[0].signum() == sign && p0.derivative[0].signum() == sign;
        verdicts.push(format!(
            "n={n} {} p0 {:+}",
            m.verdict.label(),
            p0.derivative[0].signum()
        ));
    }
    details.push(verdicts.join(", "));
    Ok(outcome(pass, details.join("; ")))
}

fn c9_classifier_fits() -> Res {
    let mut pass = true;
    let mut details = Vec::new();
    let tiny = qf(1, 1_000_000);
    let mut wrong = 0;
    for n in 5..=16u32 {
        let e = special_exponents(n).map_err(|e| e.to_string())?;
        let crit = e.critical();
        for (s, want) in [
            (&e.lower - &tiny, Regime::SerrinLions),
            (e.lower.clone(), Regime::Aviles),
            (&e.lower + &tiny, Regime::GidasSpruck),
            (&crit - &tiny, Regime::GidasSpruck),
            (crit.clone(), Regime::Critical),
            (&crit + &tiny, Regime::Supercritical),
        ] {
            if classify_regime(&p(n, s)).map_err(|e| e.to_string())?.regime != want {
                wrong += 1;
            }
        }
    }
    pass &= wrong == 0;
    details.push(format!(
        "{wrong} misclassified boundary cases for n = 5..16"
    ));

    // power law: K0^{1/(s-1)} r^{-2/3} at n = 5, s = 7
    let k0 = to_f64(
        &autonomous_coeffs(&p(5, qi(7)))
            .map_err(|e| e.to_string())?
            .k0,
    );
    let amp = k0.powf(1.0 / 6.0);
    let grid = |lo: f64, hi: f64, k: usize| -> Vec<f64> {
        (0..k)
            .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (k - 1) as f64).exp())
            .collect()
    };
    let pts: Vec<(f64, f64)> = grid(1e-4, 1.0, 40)
        .into_iter()
        .map(|r| (r, amp * r.powf(-2.0 / 3.0)))
        .collect();
    let f =
        fit_power_law(&log_samples(&pts).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (de, da) = (
        (f.exponent - 2.0 / 3.0).abs(),
        (f.amplitude - amp).abs() / amp,
    );
    pass &= de <= 1e-10 && da <= 1e-10;
    details.push(format!(
        "power fit exponent error {de:.2e}, amplitude error {da:.2e}"
    ));

    for n in [5u32, 6, 8] {
        let prof = AvilesProfile::new(n, HatVariant::Theorem).map_err(|e| e.to_string())?;
        let pts: Vec<(f64, f64)> = grid(1e-12, (-3.0f64).exp(), 40)
            .into_iter()
            .map(|r| prof.eval(r).map(|v| (r, v)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let f = fit_log_corrected(&log_samples(&pts).map_err(|e| e.to_string())?, n)
            .map_err(|e| e.to_string())?;
        let kappa = (4.0 - n as f64) / 4.0;
        let dk = (f.log_exponent.unwrap_or(f64::NAN) - kappa).abs();
        let da = (f.amplitude - prof.amplitude).abs() / prof.amplitude;
        let pure: Vec<(f64, f64)> = grid(1e-12, (-3.0f64).exp(), 40)
            .into_iter()
            .map(|r| (r, r.powf(4.0 - n as f64)))
            .collect();
        let g = fit_log_corrected(&log_samples(&pure).map_err(|e| e.to_string())?, n)
            .map_err(|e| e.to_string())?;
        let d0 = g.log_exponent.unwrap_or(f64::NAN).abs();
        pass &= dk <= 1e-8 && da <= 1e-8 && d0 <= 1e-10;
        details.push(format!("n={n} log fit: exponent error {dk:.2e}, amplitude error {da:.2e}, pure power log exponent {d0:.2e}"));
    }
    Ok(outcome(pass, details.join("; ")))
}

fn c10_ledger() -> Res {
    let out = Command::new(env!("CARGO_BIN_EXE_bilap"))
        .args(["verify", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("verify output is not JSON: {e}"))?;
    let flagged: Vec<String> = doc["ledger"]
        .as_array()
        .ok_or("no ledger array")?
        .iter()
        .filter(|e| e["verdict"] != "MATCH")
        .map(|e| e["symbol"].as_str().unwrap_or("?").to_string())
        .collect();
    let (_, entries) = build_ledger().map_err(|e| e.to_string())?;
    let a = audit(&entries);
    Ok(outcome(
        code == Some(0) && a.exact(),
        format!(
            "verify exit {code:?}; {} non-MATCH entries; missing documented: {}; beyond the documented list: {}",
            flagged.len(),
            if a.missing_documented.is_empty() { "none".into() } else { a.missing_documented.join(", ") },
            if a.undocumented.is_empty() { "none".into() } else { a.undocumented.join(", ") }
        ),
    ))
}

fn main() {
    let criteria: [(u32, &str, f64, fn() -> Res); 10] = [
        (1, "exact constants", 1.0, c1_exact_constants),
        (2, "oracle agreement", 1.0, c2_oracle_agreement),
        (3, "chain-rule engine", 5.0, c3_chain_rule),
        (4, "residual suite", 5.0, c4_residuals),
        (5, "Pohozaev level identity", 1.0, c5_level_identity),
        (6, "monotonicity", 60.0, c6_monotonicity),
        (
            7,
            "critical conservation and Delaunay orbits",
            120.0,
            c7_delaunay,
        ),
        (8, "logarithmic-regime machinery", 60.0, c8_aviles),
        (9, "regime classifier and fits", 10.0, c9_classifier_fits),
        (10, "ledger completeness", 180.0, c10_ledger),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let t0 = Instant::now();
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let secs = t0.elapsed().as_secs_f64();
        let pass = o.pass && secs < limit;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {name}: {} [{secs:.2} s, limit {limit} s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
