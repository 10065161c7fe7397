//! One function per subcommand; each returns the artifact to emit.

use crate::config::{FitModel, RunConfig, Synthetic};
use crate::report::{Artifact, Cell, Table};
use bilap_core::asymptotics::{
    classify_regime, fit_log_corrected, fit_power_law, log_samples, FitReport, Regime,
};
use bilap_core::closed_forms::{AvilesProfile, Bubble, HatVariant};
use bilap_core::coefficients::printed::appendix_j40;
use bilap_core::coefficients::{
    autonomous_coeffs, char_symbol, derive_cyl_coeffs_numeric, sigma_vote, sign_report,
    LedgerEntry, Scaling, Sigma, Verdict,
};
use bilap_core::cylinder_ode::{integrate, AutonomousSystem, CylState, IntegrateOptions};
use bilap_core::delaunay::{orbit_table, CriticalConstants, ShootingOptions};
use bilap_core::pohozaev::{level_identity, limiting_levels, monotonicity_trials, pohozaev_series};
use bilap_core::rational::{fmt_q, to_f64};
use bilap_core::verify::{self, CheckStatus, Suite, VerifyConfig};
use bilap_core::{special_exponents, Params, Q};
use rayon::prelude::*;
use std::sync::Arc;

/// Why a command stopped: bad input (exit 2) or a failed computation (exit 1).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Run(String),
    /// The artifact was produced but reports a failure.
    Reported(Box<Artifact>, String),
}

impl From<bilap_core::Error> for Failure {
    fn from(e: bilap_core::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

type Out = Result<Artifact, Failure>;

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

pub fn resolve_sigma(cfg: &RunConfig) -> Sigma {
    cfg.sigma.unwrap_or_else(|| sigma_vote().chosen)
}

fn params(n: u32, s: &Q, p: usize) -> Result<Params, Failure> {
    Params::new(n, s.clone(), p).map_err(|e| Failure::Usage(e.to_string()))
}

fn pairs(cfg: &RunConfig) -> Result<Vec<(u32, Q)>, Failure> {
    let ns = usage(cfg.require_n())?;
    let ss = usage(cfg.require_s())?;
    let mut out = Vec::new();
    for &n in ns {
        for s in ss {
            params(n, s, cfg.p)?;
            out.push((n, s.clone()));
        }
    }
    Ok(out)
}

fn sigma_str(s: Sigma) -> &'static str {
    if s.value() > 0 {
        "+1"
    } else {
        "-1"
    }
}

pub fn coeffs(cfg: &RunConfig) -> Out {
    let sigma = resolve_sigma(cfg);
    let pts = pairs(cfg)?;
    let rows: Vec<Result<Vec<(Vec<Cell>, Option<LedgerEntry>)>, Failure>> = pts
        .par_iter()
        .map(|(n, s)| {
            let p = params(*n, s, cfg.p)?;
            let printed = autonomous_coeffs(&p)?;
            let oracle = char_symbol(&p, sigma)?.coefficients();
            let flipped = char_symbol(&p, sigma.flip())?.coefficients();
            let est = derive_cyl_coeffs_numeric(
                Scaling::Autonomous {
                    s: p.s_f64(),
                    sigma,
                },
                *n,
                0.7,
            )?;
            let numeric = [est.k[0], est.k[1], est.k[2], est.k[3], est.j[0], est.j[1]];
            let mut out = Vec::new();
            let mut push = |name: &str, pr: &Q, or: &Q, fl: &Q, num: Option<f64>| {
                let verdict = if pr == or {
                    Verdict::Match
                } else if pr == fl {
                    Verdict::SignConvention
                } else {
                    Verdict::Mismatch
                };
                let entry = (verdict != Verdict::Match).then(|| LedgerEntry {
                    symbol: name.to_string(),
                    location: format!("autonomous coefficient block at n={n}, s={}", fmt_q(s)),
                    printed: fmt_q(pr),
                    oracle: fmt_q(or),
                    verdict,
                    note: format!("oracle with the opposite orientation gives {}", fmt_q(fl)),
                });
                let row = vec![
                    (*n).into(),
                    fmt_q(s).into(),
                    name.into(),
                    fmt_q(pr).into(),
                    fmt_q(or).into(),
                    fmt_q(fl).into(),
                    to_f64(pr).into(),
                    num.into(),
                    verdict.label().into(),
                ];
                out.push((row, entry));
            };
            for (i, ((name, pr), (_, or))) in
                printed.named().into_iter().zip(oracle.named()).enumerate()
            {
                push(name, pr, or, flipped.named()[i].1, Some(numeric[i]));
            }
            let j40 = appendix_j40(*n, s)?;
            push("J40 (appendix)", &j40, &oracle.j0, &flipped.j0, None);
            Ok(out)
        })
        .collect();
    let mut art = Artifact::new(sigma);
    art.header("chain_rule_radius", "0.7");
    let mut t = Table::new(
        "coefficients",
        &[
            "n",
            "s",
            "constant",
            "printed",
            "oracle",
            "oracle_flipped",
            "printed_f64",
            "chain_rule",
            "verdict",
        ],
    );
    for r in rows {
        for (row, entry) in r? {
            t.push(row);
            art.ledger.extend(entry);
        }
    }
    art.tables.push(t);
    Ok(art)
}

/// `count` evenly spaced exponents on `[2_**, 2**-1]`.
pub fn s_grid(n: u32, count: u32) -> Result<Vec<Q>, Failure> {
    if count < 2 {
        return Err(Failure::Usage("--s-grid needs at least 2 points".into()));
    }
    let e = special_exponents(n)?;
    let (lo, hi) = (e.lower.clone(), e.critical());
    Ok((0..count)
        .map(|k| &lo + (&hi - &lo) * Q::new(k.into(), (count - 1).into()))
        .collect())
}

pub fn signs(cfg: &RunConfig, grid: Option<u32>) -> Out {
    let sigma = resolve_sigma(cfg);
    let ns = usage(cfg.require_n())?;
    let mut pts = Vec::new();
    for &n in ns {
        let ss = match grid {
            Some(k) => s_grid(n, k)?,
            None => usage(cfg.require_s())?.to_vec(),
        };
        for s in ss {
            params(n, &s, cfg.p)?;
            pts.push((n, s));
        }
    }
    let reports: Vec<_> = pts
        .par_iter()
        .map(|(n, s)| -> Result<_, Failure> {
            let p = params(*n, s, cfg.p)?;
            let c = char_symbol(&p, sigma)?.coefficients();
            Ok((sign_report(&p, sigma)?, c, to_f64(s)))
        })
        .collect();
    let mut art = Artifact::new(sigma);
    if let Some(k) = grid {
        art.header("s_grid", k);
    }
    let mut t = Table::new(
        "signs",
        &[
            "n",
            "s",
            "s_f64",
            "in_range",
            "K0",
            "K1",
            "K2",
            "K3",
            "J0",
            "K1_value",
            "K3_value",
            "k0_positive",
            "k1_positive",
            "k3_negative",
        ],
    );
    let (mut inside, mut confirmed) = (0usize, 0usize);
    for r in reports {
        let (r, c, s_f64) = r?;
        if r.in_range {
            inside += 1;
            if r.k0_positive == Some(true)
                && r.k1_positive == Some(true)
                && r.k3_negative == Some(true)
            {
                confirmed += 1;
            }
        }
        t.push(vec![
            r.n.into(),
            r.s.clone().into(),
            s_f64.into(),
            r.in_range.into(),
            r.k0.into(),
            r.k1.into(),
            r.k2.into(),
            r.k3.into(),
            r.j0.into(),
            fmt_q(&c.k1).into(),
            fmt_q(&c.k3).into(),
            r.k0_positive.into(),
            r.k1_positive.into(),
            r.k3_negative.into(),
        ]);
    }
    art.summary.push(format!("K0 > 0, K1 > 0 and K3 < 0 hold at {confirmed} of {inside} points strictly inside (2_**, 2**-1)"));
    art.tables.push(t);
    Ok(art)
}

/// The one-line prediction, e.g. `GIDAS_SPRUCK, predicted |U| ~ K0^{1/(s−1)} |x|^{−2/3}`.
pub fn prediction_line(p: &Params) -> Result<(String, Regime), Failure> {
    let c = classify_regime(p)?;
    let line = match c.regime {
        Regime::GidasSpruck => {
            let k0 = char_symbol(p, Sigma::Minus)?.coefficients().k0;
            format!(
                "{}, predicted |U| ~ K0^{{1/(s−1)}} |x|^{{−{}}} with K0 = {}",
                c.regime.label(),
                fmt_q(&p.gamma()),
                fmt_q(&k0)
            )
        }
        _ => format!(
            "{}, predicted |U| ~ {}",
            c.regime.label(),
            c.profile.formula
        ),
    };
    Ok((line, c.regime))
}

pub fn classify(cfg: &RunConfig) -> Out {
    let sigma = resolve_sigma(cfg);
    let pts = pairs(cfg)?;
    let rows: Vec<Result<_, Failure>> = pts
        .par_iter()
        .map(|(n, s)| {
            let p = params(*n, s, cfg.p)?;
            let c = classify_regime(&p)?;
            let (line, _) = prediction_line(&p)?;
            Ok((c, line))
        })
        .collect();
    let mut art = Artifact::new(sigma);
    let mut t = Table::new(
        "classification",
        &[
            "n",
            "s",
            "regime",
            "profile",
            "exponent",
            "log_exponent",
            "amplitudes",
            "prediction",
        ],
    );
    for r in rows {
        let (c, line) = r?;
        let amps = c
            .profile
            .amplitudes
            .iter()
            .map(|(k, v)| format!("{k}={}", bilap_core::fmt::fmt_f(*v)))
            .collect::<Vec<_>>()
            .join(";");
        t.push(vec![
            c.n.into(),
            c.s.clone().into(),
            c.regime.label().into(),
            c.profile.formula.clone().into(),
            c.profile.exponent.into(),
            c.profile.log_exponent.into(),
            amps.into(),
            line.clone().into(),
        ]);
        art.summary.push(line);
    }
    art.tables.push(t);
    Ok(art)
}

pub fn integrate_cmd(cfg: &RunConfig, init: &[f64], t0: f64, t_end: f64) -> Out {
    let sigma = resolve_sigma(cfg);
    let (n, s) = usage(cfg.single())?;
    let p = params(n, &s, cfg.p)?;
    let y0 = if init.len() == 4 * cfg.p {
        init.to_vec()
    } else if init.len() == 4 {
        let mut dir = vec![0.0; cfg.p];
        dir[0] = 1.0;
        CylState::on_ray(t0, &dir, [init[0], init[1], init[2], init[3]]).y
    } else {
        return Err(Failure::Usage(format!(
            "--init takes 4 or {} values, got {}",
            4 * cfg.p,
            init.len()
        )));
    };
    if !(t_end != t0 && t_end.is_finite() && t0.is_finite()) {
        return Err(Failure::Usage("--t-end must differ from --t0".into()));
    }
    let sys = AutonomousSystem::from_params(&p, sigma)?;
    let opts = IntegrateOptions::tol(cfg.rel_tol, cfg.abs_tol);
    let (traj, err) = match integrate(&sys, t0, &y0, t_end, &opts) {
        Ok(t) => (t, None),
        Err(e) => (*e.partial, Some(e.error.to_string())),
    };
    let mut art = Artifact::new(sigma);
    art.header(
        "init",
        init.iter()
            .map(|v| bilap_core::fmt::fmt_f(*v))
            .collect::<Vec<_>>()
            .join(","),
    );
    art.header("t0", bilap_core::fmt::fmt_f(t0));
    art.header("t_end", bilap_core::fmt::fmt_f(t_end));
    let mut cols = vec!["t".to_string()];
    for i in 0..cfg.p {
        for d in ["v", "v1", "v2", "v3"] {
            cols.push(if cfg.p == 1 {
                d.to_string()
            } else {
                format!("{d}_{i}")
            });
        }
    }
    let mut t = Table {
        name: "trajectory".into(),
        columns: cols,
        rows: vec![],
    };
    for (ti, yi) in traj.t.iter().zip(&traj.y) {
        let mut row: Vec<Cell> = vec![(*ti).into()];
        row.extend(yi.iter().map(|v| Cell::Num(*v)));
        t.push(row);
    }
    art.tables.push(t);
    let mut e = Table::new("energy", &["t", "H", "P_cyl", "dH_formula", "dH_numeric"]);
    if let Ok(series) = pohozaev_series(&sys, &traj, n, 3e-4) {
        for s in series {
            e.push(vec![
                s.t.into(),
                s.h.into(),
                s.p_cyl.into(),
                s.dh_formula.into(),
                s.dh_numeric.into(),
            ]);
        }
    }
    art.tables.push(e);
    art.summary.push(format!(
        "{} steps, status {:?}, t in [{}, {}]",
        traj.len().saturating_sub(1),
        traj.status,
        traj.t_start(),
        traj.t_end()
    ));
    match err {
        None => Ok(art),
        Some(msg) => Err(Failure::Reported(
            Box::new(art),
            format!("integration stopped early: {msg}"),
        )),
    }
}

pub fn pohozaev(cfg: &RunConfig, trials: usize, t_end: f64) -> Out {
    let sigma = resolve_sigma(cfg);
    let pts = pairs(cfg)?;
    if trials == 0 || !(t_end > 0.0) {
        return Err(Failure::Usage(
            "--trials and --t-end must be positive".into(),
        ));
    }
    let rows: Vec<Result<_, Failure>> = pts
        .par_iter()
        .map(|(n, s)| {
            let p = params(*n, s, cfg.p)?;
            let levels = limiting_levels(&p, sigma)?;
            let identity = level_identity(&p, sigma).ok();
            let mono = monotonicity_trials(&p, sigma, trials, cfg.seed, t_end)?;
            Ok((levels, identity, mono))
        })
        .collect();
    let mut art = Artifact::new(sigma);
    art.header("trials", trials);
    art.header("trial_t_end", t_end);
    let mut lv = Table::new(
        "levels",
        &[
            "n",
            "s",
            "l_star",
            "H_equilibrium",
            "minus_l_star",
            "identity_exact",
            "l_star_aviles_printed",
            "l_star_aviles_derived",
        ],
    );
    let mut mt = Table::new(
        "monotonicity",
        &[
            "n",
            "s",
            "in_range",
            "trials",
            "samples",
            "worst_ratio",
            "formula_agrees",
            "min_dP",
            "nondecreasing",
        ],
    );
    let mut bad = Vec::new();
    for r in rows {
        let (l, id, m) = r?;
        lv.push(vec![
            m.n.into(),
            l.s.clone().into(),
            l.l_star_autonomous.into(),
            id.as_ref().map(|i| i.h_equilibrium.render()).into(),
            id.as_ref().map(|i| i.minus_l_star.render()).into(),
            id.as_ref().map(|i| i.equal).into(),
            l.l_star_aviles_printed.into(),
            l.l_star_aviles_derived.into(),
        ]);
        if !m.formula_agrees() || (m.in_range && !m.nondecreasing()) {
            bad.push(format!("n={} s={}", m.n, l.s));
        }
        mt.push(vec![
            m.n.into(),
            l.s.clone().into(),
            m.in_range.into(),
            m.trials.into(),
            m.samples.into(),
            m.worst_ratio.into(),
            m.formula_agrees().into(),
            m.min_dp.into(),
            m.nondecreasing().into(),
        ]);
    }
    art.tables.push(lv);
    art.tables.push(mt);
    if bad.is_empty() {
        Ok(art)
    } else {
        let msg = format!("monotonicity formula or sign failed at {}", bad.join(", "));
        art.summary.push(msg.clone());
        Err(Failure::Reported(Box::new(art), msg))
    }
}

pub fn shoot(cfg: &RunConfig, fractions: &[f64], orbit_samples: Option<usize>) -> Out {
    let sigma = resolve_sigma(cfg);
    let ns = usage(cfg.require_n())?;
    if fractions.is_empty() || fractions.iter().any(|f| !(*f > 0.0 && *f <= 1.0)) {
        return Err(Failure::Usage("--a takes fractions of a0 in (0, 1]".into()));
    }
    let opts = ShootingOptions::default();
    let mut art = Artifact::new(sigma);
    art.header(
        "a_over_a0",
        fractions
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    art.header("shooting_tol", format!("{:e}", opts.tol));
    let mut t = Table::new(
        "orbits",
        &[
            "n",
            "a_over_a0",
            "a",
            "b",
            "period",
            "t_half",
            "energy",
            "energy_drift",
            "residual",
            "periodicity_defect",
            "symmetry_defect",
            "min_v",
            "wrapper_residual",
            "linearized_period",
            "error",
        ],
    );
    let mut samples = Table::new(
        "orbit_samples",
        &["n", "a_over_a0", "t", "v", "v1", "v2", "v3"],
    );
    let mut failed = Vec::new();
    for &n in ns {
        let consts = CriticalConstants::new(n, cfg.c_mode())?;
        let grid: Vec<f64> = fractions.iter().map(|f| f * consts.a0).collect();
        let table = orbit_table(&consts, &grid, &opts)?;
        let lin = consts.linearized_period();
        for (f, e) in fractions.iter().zip(&table.entries) {
            match &e.result {
                Some(r) => {
                    let w = verify::wrapper_residual(&consts, r).ok();
                    t.push(vec![
                        n.into(),
                        (*f).into(),
                        r.a.into(),
                        r.b.into(),
                        r.period.into(),
                        r.t_half.into(),
                        r.energy.into(),
                        r.energy_drift.into(),
                        r.residual.into(),
                        r.periodicity_defect.into(),
                        r.symmetry_defect.into(),
                        r.min_v.into(),
                        w.into(),
                        lin.into(),
                        Cell::Missing,
                    ]);
                    if let Some(k) = orbit_samples.filter(|k| *k >= 2) {
                        let orbit = Arc::new(r.orbit.clone());
                        for i in 0..k {
                            let tt = r.period * i as f64 / (k - 1) as f64;
                            let y = orbit.eval(tt.min(orbit.t_end()))?;
                            samples.push(vec![
                                n.into(),
                                (*f).into(),
                                tt.into(),
                                y[0].into(),
                                y[1].into(),
                                y[2].into(),
                                y[3].into(),
                            ]);
                        }
                    }
                }
                None => {
                    let msg = e.error.clone().unwrap_or_default();
                    failed.push(format!("n={n} a={f}a0: {msg}"));
                    let mut row: Vec<Cell> = vec![n.into(), (*f).into(), e.a.into()];
                    row.extend(std::iter::repeat_n(Cell::Missing, 10));
                    row.push(lin.into());
                    row.push(msg.into());
                    t.push(row);
                }
            }
        }
    }
    art.tables.push(t);
    if orbit_samples.is_some() {
        art.tables.push(samples);
    }
    if failed.is_empty() {
        Ok(art)
    } else {
        let msg = format!("shooting failed for {}", failed.join("; "));
        Err(Failure::Reported(Box::new(art), msg))
    }
}

fn read_samples(path: &std::path::Path) -> Result<Vec<(f64, f64)>, Failure> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Failure::Usage(e.to_string()))?;
        if rec.len() < 2 {
            continue;
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(r), Ok(v)) => out.push((r, v)),
            // a header row
            _ if out.is_empty() => continue,
            _ => return Err(Failure::Usage(format!("unreadable sample row {:?}", rec))),
        }
    }
    Ok(out)
}

fn log_grid(lo: f64, hi: f64, k: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..k).map(move |i| (a + (b - a) * i as f64 / (k - 1) as f64).exp())
}

fn synthetic(cfg: &RunConfig, kind: Synthetic, sigma: Sigma) -> Result<Vec<(f64, f64)>, Failure> {
    let n = *usage(cfg.require_n())?.first().expect("nonempty");
    Ok(match kind {
        Synthetic::Power => {
            let s = usage(cfg.require_s())?[0].clone();
            let p = params(n, &s, cfg.p)?;
            let k0 = to_f64(&char_symbol(&p, sigma)?.coefficients().k0);
            if !(k0 > 0.0) {
                return Err(Failure::Usage(format!(
                    "K0 = {k0} is not positive at n={n}, s={}",
                    fmt_q(&s)
                )));
            }
            let g = to_f64(&p.gamma());
            let amp = k0.powf(1.0 / (p.s_f64() - 1.0));
            log_grid(1e-4, 1.0, 40)
                .map(|r| (r, amp * r.powf(-g)))
                .collect()
        }
        Synthetic::Aviles => {
            let prof = AvilesProfile::new(n, HatVariant::Theorem)?;
            log_grid(1e-12, (-3.0f64).exp(), 40)
                .map(|r| Ok((r, prof.eval(r)?)))
                .collect::<Result<_, bilap_core::Error>>()?
        }
        Synthetic::Bubble => {
            let b = Bubble::new(vec![0.0; n as usize], 1.0, n)?;
            log_grid(1e2, 1e4, 40).map(|r| (r, b.radial(r))).collect()
        }
    })
}

pub fn fit(
    cfg: &RunConfig,
    input: Option<&std::path::Path>,
    kind: Option<Synthetic>,
    model: FitModel,
) -> Out {
    let sigma = resolve_sigma(cfg);
    let raw = match (input, kind) {
        (Some(p), _) => read_samples(p)?,
        (None, Some(k)) => synthetic(cfg, k, sigma)?,
        (None, None) => return Err(Failure::Usage("fit needs --input or --synthetic".into())),
    };
    let samples = log_samples(&raw)?;
    let report: FitReport = match model {
        FitModel::Power => fit_power_law(&samples)?,
        FitModel::Log => {
            let n = *usage(cfg.require_n())?.first().expect("nonempty");
            fit_log_corrected(&samples, n)?
        }
    };
    let mut art = Artifact::new(sigma);
    art.header("model", format!("{model:?}").to_lowercase());
    if let Some(k) = kind {
        art.header("synthetic", format!("{k:?}").to_lowercase());
    }
    let mut t = Table::new(
        "fit",
        &[
            "model",
            "exponent",
            "amplitude",
            "log_exponent",
            "residual",
            "samples",
            "regime",
        ],
    );
    t.push(vec![
        format!("{model:?}").to_lowercase().into(),
        report.exponent.into(),
        report.amplitude.into(),
        report.log_exponent.into(),
        report.residual.into(),
        report.samples.into(),
        report.regime.map(|r| r.label()).into(),
    ]);
    art.tables.push(t);
    if !report.amplitude_checks.is_empty() {
        let mut c = Table::new(
            "amplitude_checks",
            &["reading", "predicted", "relative_deviation"],
        );
        for (label, pred, dev) in &report.amplitude_checks {
            c.push(vec![label.clone().into(), (*pred).into(), (*dev).into()]);
        }
        art.tables.push(c);
    }
    let mut s = Table::new("samples", &["r", "value"]);
    for (r, v) in &raw {
        s.push(vec![(*r).into(), (*v).into()]);
    }
    art.tables.push(s);
    Ok(art)
}

pub fn verify_cmd(cfg: &RunConfig) -> Out {
    let mut suites = Vec::new();
    for name in &cfg.suites {
        match Suite::parse(name) {
            Some(s) => suites.push(s),
            None => {
                let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return Err(Failure::Usage(format!(
                    "unknown suite '{name}', expected one of {}",
                    known.join(", ")
                )));
            }
        }
    }
    if cfg.n.len() > 1 || cfg.s.len() > 1 {
        return Err(Failure::Usage(
            "verify takes at most one --n and one --s".into(),
        ));
    }
    if let (Some(&n), Some(s)) = (cfg.n.first(), cfg.s.first()) {
        params(n, s, 1)?;
    }
    let vc = VerifyConfig {
        n: cfg.n.first().copied(),
        s: cfg.s.first().cloned(),
        sigma: cfg.sigma,
        seed: cfg.seed,
        c_mode: cfg.c_mode(),
    };
    let report = verify::run(&suites, &vc)?;
    let mut art = Artifact::new(report.sigma);
    art.header(
        "suites",
        if suites.is_empty() {
            "all".to_string()
        } else {
            suites
                .iter()
                .map(|s| s.name())
                .collect::<Vec<_>>()
                .join(",")
        },
    );
    let mut vote = Table::new("sigma_vote", &["anchor", "sigma"]);
    for (name, s) in &report.vote.anchors {
        vote.push(vec![name.clone().into(), s.map(sigma_str).into()]);
    }
    let mut checks = Table::new("checks", &["suite", "check", "status", "detail"]);
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Documented => "DOCUMENTED",
            CheckStatus::Known => "KNOWN",
        };
        checks.push(vec![
            c.suite.name().into(),
            c.name.clone().into(),
            status.into(),
            c.detail.clone().into(),
        ]);
    }
    art.tables.push(checks);
    art.tables.push(vote);
    art.ledger = report.ledger.clone();
    let audit = bilap_core::coefficients::audit(&report.ledger);
    let fails = report.failures().len();
    art.summary.push(format!(
        "sigma {} by {} to {}; {} checks, {} failed",
        sigma_str(report.sigma),
        report.vote.minus.max(report.vote.plus),
        report.vote.minus.min(report.vote.plus),
        report.checks.len(),
        fails
    ));
    if !report.ledger.is_empty() {
        art.summary.push(format!(
            "ledger: {} entries, {} non-MATCH; beyond the documented list: {}",
            report.ledger.len(),
            report
                .ledger
                .iter()
                .filter(|e| e.verdict != Verdict::Match)
                .count(),
            if audit.undocumented.is_empty() {
                "none".to_string()
            } else {
                audit.undocumented.join(", ")
            }
        ));
    }
    if report.ok() {
        Ok(art)
    } else {
        let names: Vec<String> = report
            .failures()
            .iter()
            .map(|c| format!("{}: {}", c.suite.name(), c.name))
            .collect();
        Err(Failure::Reported(
            Box::new(art),
            format!("{fails} check(s) failed: {}", names.join("; ")),
        ))
    }
}
