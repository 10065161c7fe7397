//! Printed constants checked against independent derivations.

use super::chain_rule::{
    appendix_list_matrix, appendix_radial_weights, chain_rule_matrix, radial_weights,
    second_order_matrix_printed, weights_symbol,
};
use super::nonauto::{derived_nonautonomous, derived_second_order_nonautonomous};
use super::printed::{
    a0, appendix_j40, autonomous_coeffs_raw, critical_and_lower_values, nonautonomous_coeffs,
    second_order_nonautonomous_printed, second_order_printed, second_order_remark, theorem_hat_k0,
    AutonomousCoefficients,
};
use super::symbol::{char_symbol_raw, radial_symbol, second_order_symbol, Sigma};
use crate::closed_forms::{bubble_constant, green_g1, green_g1_printed};
use crate::error::Result;
use crate::fmt::fmt_f;
use crate::params::{second_order_exponents, special_exponents};
use crate::pohozaev::{aviles_level_derived, aviles_level_printed, aviles_p_coeffs_exact};
use crate::poly::Poly;
use crate::rational::{fmt_q, qf, qi, to_f64, Q};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    SignConvention,
    Mismatch,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::SignConvention => "SIGN_CONVENTION",
            Verdict::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub symbol: String,
    pub location: String,
    pub printed: String,
    pub oracle: String,
    pub verdict: Verdict,
    pub note: String,
}

/// Inconsistencies catalogued as known open questions; every other
/// non-MATCH entry is a finding of this build.
pub const DOCUMENTED: &[&str] = &[
    "K_{1,*}",
    "K^0",
    "J40",
    "K_{3,*}",
    "p2",
    "p0",
    "l*(n)",
    "W display",
];

/// Non-MATCH entries this build knows about beyond the documented list.
pub const DISCOVERED: &[&str] = &[
    "J1", "J_{1,*}", "K~1", "K~3", "K~0", "p3", "p1", "c-list", "N4j", "c10", "G1", "K20", "K21",
    "K21,*",
];

/// Step-by-step record of the σ vote.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaVote {
    pub anchors: Vec<(String, Option<Sigma>)>,
    pub plus: usize,
    pub minus: usize,
    pub chosen: Sigma,
}

/// The exponent grid used for every autonomous comparison.
pub fn s_grid(n: u32) -> Vec<Q> {
    let ex = special_exponents(n).expect("n ≥ 5");
    let crit = ex.critical();
    let mid = (&ex.lower + &crit) / qi(2);
    let mut out = vec![qf(3, 2), qi(2), qi(3), qi(5), ex.lower.clone(), mid, crit];
    out.sort();
    out.dedup();
    out
}

pub fn n_grid() -> std::ops::RangeInclusive<u32> {
    5..=12
}

fn oracle(n: u32, s: &Q, sigma: Sigma) -> AutonomousCoefficients {
    char_symbol_raw(n, s, sigma).expect("s > 1").coefficients()
}

fn printed(n: u32, s: &Q) -> AutonomousCoefficients {
    autonomous_coeffs_raw(n, s).expect("s > 1")
}

fn pick(c: &AutonomousCoefficients, name: &str) -> Q {
    match name {
        "K0" => c.k0.clone(),
        "K1" => c.k1.clone(),
        "K2" => c.k2.clone(),
        "K3" => c.k3.clone(),
        "J0" => c.j0.clone(),
        "J1" => c.j1.clone(),
        _ => unreachable!("unknown coefficient {name}"),
    }
}

fn is_odd(name: &str) -> bool {
    matches!(name, "K1" | "K3" | "J1")
}

/// Which σ (if exactly one) makes `printed(n, s) == oracle(n, s, σ)` on the whole grid.
fn unique_sigma(pts: &[(u32, Q)], f: &dyn Fn(u32, &Q, Sigma) -> bool) -> Option<Sigma> {
    let ok = |sg: Sigma| pts.iter().all(|(n, s)| f(*n, s, sg));
    match (ok(Sigma::Plus), ok(Sigma::Minus)) {
        (true, false) => Some(Sigma::Plus),
        (false, true) => Some(Sigma::Minus),
        _ => None,
    }
}

fn grid() -> Vec<(u32, Q)> {
    n_grid()
        .flat_map(|n| s_grid(n).into_iter().map(move |s| (n, s)))
        .collect()
}

fn in_range(n: u32, s: &Q) -> bool {
    let ex = special_exponents(n).expect("n ≥ 5");
    *s > ex.lower && *s < ex.critical()
}

/// Majority vote for σ over the anchors that discriminate between the two conventions.
pub fn sigma_vote() -> SigmaVote {
    let pts = grid();
    let in_pts: Vec<(u32, Q)> = pts
        .iter()
        .filter(|(n, s)| in_range(*n, s))
        .cloned()
        .collect();
    let mut anchors: Vec<(String, Option<Sigma>)> = Vec::new();
    for name in ["K1", "K3", "J1"] {
        anchors.push((
            format!("{name} formula"),
            unique_sigma(&pts, &|n, s, sg| {
                pick(&printed(n, s), name) == pick(&oracle(n, s, sg), name)
            }),
        ));
    }
    let lower_pts: Vec<(u32, Q)> = n_grid()
        .map(|n| (n, special_exponents(n).unwrap().lower))
        .collect();
    let crit_pts: Vec<(u32, Q)> = n_grid()
        .map(|n| (n, special_exponents(n).unwrap().critical()))
        .collect();
    for name in ["K1", "K3", "J1"] {
        anchors.push((
            format!("{name} at 2_**"),
            unique_sigma(&lower_pts, &|n, s, sg| {
                pick(&critical_and_lower_values(n).unwrap().lower, name)
                    == pick(&oracle(n, s, sg), name)
            }),
        ));
        anchors.push((
            format!("{name} at 2**-1"),
            unique_sigma(&crit_pts, &|n, s, sg| {
                pick(&critical_and_lower_values(n).unwrap().critical, name)
                    == pick(&oracle(n, s, sg), name)
            }),
        ));
    }
    anchors.push((
        "K1 > 0 on (2_**, 2**-1)".into(),
        unique_sigma(&in_pts, &|n, s, sg| oracle(n, s, sg).k1.is_positive()),
    ));
    anchors.push((
        "K3 < 0 on (2_**, 2**-1)".into(),
        unique_sigma(&in_pts, &|n, s, sg| oracle(n, s, sg).k3.is_negative()),
    ));
    let plus = anchors.iter().filter(|a| a.1 == Some(Sigma::Plus)).count();
    let minus = anchors.iter().filter(|a| a.1 == Some(Sigma::Minus)).count();
    // ties go to the stated t = -ln r
    let chosen = if minus > plus {
        Sigma::Minus
    } else {
        Sigma::Plus
    };
    SigmaVote {
        anchors,
        plus,
        minus,
        chosen,
    }
}

fn entry(
    symbol: &str,
    location: &str,
    printed: String,
    oracle: String,
    verdict: Verdict,
    note: impl Into<String>,
) -> LedgerEntry {
    LedgerEntry {
        symbol: symbol.into(),
        location: location.into(),
        printed,
        oracle,
        verdict,
        note: note.into(),
    }
}

/// Compare a printed rational quantity with its oracle on a list of points,
/// allowing a σ flip for odd coefficients.
fn compare_points(
    symbol: &str,
    location: &str,
    pts: &[(u32, Q)],
    printed_at: &dyn Fn(u32, &Q) -> Q,
    oracle_at: &dyn Fn(u32, &Q, Sigma) -> Q,
    sigma: Sigma,
    odd: bool,
    note: &str,
) -> LedgerEntry {
    let first_diff = |sg: Sigma| {
        pts.iter()
            .find(|(n, s)| printed_at(*n, s) != oracle_at(*n, s, sg))
    };
    let show = |(n, s): &(u32, Q), sg: Sigma| {
        (
            fmt_q(&printed_at(*n, s)),
            fmt_q(&oracle_at(*n, s, sg)),
            format!("n={n}, s={}", fmt_q(s)),
        )
    };
    match first_diff(sigma) {
        None => {
            let (p, o, at) = show(&pts[0], sigma);
            entry(
                symbol,
                location,
                p,
                o,
                Verdict::Match,
                format!(
                    "{note}equal on all {} grid points (shown at {at})",
                    pts.len()
                ),
            )
        }
        Some(pt) => {
            let (p, o, at) = show(pt, sigma);
            if odd && first_diff(sigma.flip()).is_none() {
                entry(symbol, location, p, o, Verdict::SignConvention, format!("{note}matches the opposite σ on every grid point; first difference at {at}"))
            } else {
                entry(
                    symbol,
                    location,
                    p,
                    o,
                    Verdict::Mismatch,
                    format!("{note}first difference at {at}"),
                )
            }
        }
    }
}

fn poly_str(p: &Poly) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => fmt_q(c),
            1 => format!("({})/t", fmt_q(c)),
            _ => format!("({})/t^{k}", fmt_q(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// The same operator written in `t' = -t`: `a_k(u) -> (-1)^k a_k(-u)`.
fn t_reverse(p: &Poly, k: usize) -> Poly {
    let r = p.compose_linear(&Q::zero(), &qi(-1));
    if k % 2 == 1 {
        r.scale(&qi(-1))
    } else {
        r
    }
}

fn autonomous_entries(sigma: Sigma, out: &mut Vec<LedgerEntry>) {
    let pts = grid();
    for name in ["K0", "K1", "K2", "K3", "J0", "J1"] {
        out.push(compare_points(
            name,
            "autonomous coefficient block",
            &pts,
            &|n, s| pick(&printed(n, s), name),
            &|n, s, sg| pick(&oracle(n, s, sg), name),
            sigma,
            is_odd(name),
            "",
        ));
    }
    out.push(compare_points(
        "J40",
        "appendix fourth-order coefficient list",
        &pts,
        &|n, s| appendix_j40(n, s).unwrap(),
        &|n, s, sg| oracle(n, s, sg).j0,
        sigma,
        false,
        "appendix J40 against the zeroth angular coefficient; ",
    ));
    let crit: Vec<(u32, Q)> = n_grid()
        .map(|n| (n, special_exponents(n).unwrap().critical()))
        .collect();
    let lower: Vec<(u32, Q)> = n_grid()
        .map(|n| (n, special_exponents(n).unwrap().lower))
        .collect();
    for name in ["K0", "K1", "K2", "K3", "J0", "J1"] {
        let sym = format!("{}*_{}", &name[..1], &name[1..]);
        out.push(compare_points(
            &sym,
            "sign discussion, values at 2**-1",
            &crit,
            &|n, _| pick(&critical_and_lower_values(n).unwrap().critical, name),
            &|n, s, sg| pick(&oracle(n, s, sg), name),
            sigma,
            is_odd(name),
            "",
        ));
        let sym = format!("{}_{{{},*}}", &name[..1], &name[1..]);
        out.push(compare_points(
            &sym,
            "sign discussion, values at 2_**",
            &lower,
            &|n, _| pick(&critical_and_lower_values(n).unwrap().lower, name),
            &|n, s, sg| pick(&oracle(n, s, sg), name),
            sigma,
            is_odd(name),
            "",
        ));
    }
    // sign statements on the Gidas-Spruck range
    let in_pts: Vec<(u32, Q)> = pts
        .iter()
        .filter(|(n, s)| in_range(*n, s))
        .cloned()
        .collect();
    for (sym, claim, name) in [
        ("K1>0 claim", "K1 > 0", "K1"),
        ("K3<0 claim", "K3 < 0", "K3"),
    ] {
        let holds = |sg: Sigma| {
            in_pts.iter().all(|(n, s)| {
                let v = pick(&oracle(*n, s, sg), name);
                if name == "K1" {
                    v.is_positive()
                } else {
                    v.is_negative()
                }
            })
        };
        let (v, note) = if holds(sigma) {
            (
                Verdict::Match,
                format!("{claim} holds at every grid point of (2_**, 2**-1)"),
            )
        } else if holds(sigma.flip()) {
            (
                Verdict::SignConvention,
                format!("{claim} holds only with the opposite σ"),
            )
        } else {
            (Verdict::Mismatch, format!("{claim} fails under both σ"))
        };
        let ex = &in_pts[0];
        out.push(entry(
            sym,
            "sign discussion",
            claim.into(),
            fmt_q(&pick(&oracle(ex.0, &ex.1, sigma), name)),
            v,
            format!("{note}; oracle shown at n={}, s={}", ex.0, fmt_q(&ex.1)),
        ));
    }
}

fn nonautonomous_entries(out: &mut Vec<LedgerEntry>) -> Result<()> {
    let names = ["K~0", "K~1", "K~2", "K~3", "J~0", "J~1"];
    for (idx, name) in names.iter().enumerate() {
        let j_order = [0, 1, 2, 3, 0, 1][idx];
        let mut verdict = Verdict::Match;
        let mut shown = None;
        let mut u_flip = true;
        for n in n_grid() {
            let p = nonautonomous_coeffs(n)?;
            let d = derived_nonautonomous(n)?;
            let (pp, dp) = if idx < 4 {
                (&p.k[idx], &d.k[idx])
            } else {
                (&p.j[idx - 4], &d.j[idx - 4])
            };
            if pp != dp {
                let v = if j_order % 2 == 1 && t_reverse(pp, j_order) == *dp {
                    Verdict::SignConvention
                } else {
                    Verdict::Mismatch
                };
                u_flip &= pp.compose_linear(&Q::zero(), &qi(-1)) == *dp;
                if verdict != Verdict::Mismatch {
                    verdict = v;
                }
                shown.get_or_insert((n, poly_str(pp), poly_str(dp)));
            }
        }
        let (n, p, d) = shown.unwrap_or_else(|| {
            let p = nonautonomous_coeffs(5).unwrap();
            let i = idx;
            let poly = if i < 4 {
                p.k[i].clone()
            } else {
                p.j[i - 4].clone()
            };
            (5, poly_str(&poly), poly_str(&poly))
        });
        let note = if verdict == Verdict::Match {
            "identical polynomials in 1/t for n = 5..12".to_string()
        } else if u_flip {
            format!("printed polynomial is the exact one with 1/t replaced by -1/t for every n = 5..12; shown at n={n}")
        } else {
            format!("exact conjugation of the radial and angular operators with t = -ln r; shown at n={n}")
        };
        out.push(entry(
            name,
            "nonautonomous coefficient block",
            p,
            d,
            verdict,
            note,
        ));
    }
    let n = 5;
    let lim = nonautonomous_coeffs(n)?.hat_k0();
    let th = theorem_hat_k0(n);
    let all_half = n_grid().all(|m| {
        nonautonomous_coeffs(m)
            .map(|c| c.hat_k0() == qi(2) * theorem_hat_k0(m))
            .unwrap_or(false)
    });
    out.push(entry(
        "K^0",
        "logarithmic-profile theorem vs limit of t K~0",
        fmt_q(&th),
        fmt_q(&lim),
        if th == lim { Verdict::Match } else { Verdict::Mismatch },
        format!(
            "stated constant (n-4)(n-2)(n+4)/2 against lim t K~0 = (n-4)(n-2)(n+4) at n=5{}; exact operator gives {}",
            if all_half { ", factor 2 for every n = 5..12" } else { "" },
            fmt_q(&super::derived_hat_k0(n)?)
        ),
    ));
    Ok(())
}

fn second_order_entries(sigma: Sigma, out: &mut Vec<LedgerEntry>) -> Result<()> {
    let pts: Vec<(u32, Q)> = (3..=12u32)
        .flat_map(|n| {
            let (up, lo) = second_order_exponents(n).unwrap();
            let mut v = vec![qf(3, 2), qi(2), qi(3), lo, up - Q::one()];
            v.retain(|s| *s != Q::one());
            v.sort();
            v.dedup();
            v.into_iter().map(move |s| (n, s))
        })
        .collect();
    out.push(compare_points(
        "K20",
        "second-order coefficient list",
        &pts,
        &|n, s| second_order_printed(n, s).unwrap().0,
        &|n, s, sg| second_order_symbol(n, s, sg).unwrap().0,
        sigma,
        false,
        "",
    ));
    out.push(compare_points(
        "K21",
        "second-order coefficient list",
        &pts,
        &|n, s| second_order_printed(n, s).unwrap().1,
        &|n, s, sg| second_order_symbol(n, s, sg).unwrap().1,
        sigma,
        true,
        "",
    ));
    let crit: Vec<(u32, Q)> = (3..=12u32)
        .map(|n| (n, second_order_exponents(n).unwrap().0 - Q::one()))
        .collect();
    let lower: Vec<(u32, Q)> = (3..=12u32)
        .map(|n| (n, second_order_exponents(n).unwrap().1))
        .collect();
    for (k, nm) in [(0usize, "0"), (1, "1")] {
        let pick2 = |p: (Q, Q)| if k == 0 { p.0 } else { p.1 };
        out.push(compare_points(
            &format!("K*2{nm}"),
            "second-order values at 2*-1",
            &crit,
            &|n, _| pick2(second_order_remark(n).0),
            &|n, s, sg| pick2(second_order_symbol(n, s, sg).unwrap()),
            sigma,
            k == 1,
            "",
        ));
        out.push(compare_points(
            &format!("K2{nm},*"),
            "second-order values at 2_*",
            &lower,
            &|n, _| pick2(second_order_remark(n).1),
            &|n, s, sg| pick2(second_order_symbol(n, s, sg).unwrap()),
            sigma,
            k == 1,
            "",
        ));
    }
    for (k, name) in [(0usize, "K~20"), (1, "K~21")] {
        let mut verdict = Verdict::Match;
        let mut shown = None;
        for n in 3..=12u32 {
            let p = second_order_nonautonomous_printed(n);
            let d = derived_second_order_nonautonomous(n)?;
            let (pp, dp) = if k == 0 { (p.0, d.0) } else { (p.1, d.1) };
            if pp != dp {
                verdict = if k == 1 && t_reverse(&pp, 1) == dp && verdict != Verdict::Mismatch {
                    Verdict::SignConvention
                } else {
                    Verdict::Mismatch
                };
                shown.get_or_insert((poly_str(&pp), poly_str(&dp)));
            } else if shown.is_none() && n == 5 {
                shown = Some((poly_str(&pp), poly_str(&dp)));
            }
        }
        let (p, d) = shown.unwrap_or_default();
        out.push(entry(
            name,
            "nonautonomous second-order equation",
            p,
            d,
            verdict,
            "exact conjugation of the second-order radial operator, n = 3..12",
        ));
    }
    Ok(())
}

fn chain_rule_entries(out: &mut Vec<LedgerEntry>) {
    // a generic jet: ρ and ψ with all derivatives nonzero
    let rho = [1.3, -0.7, 0.45, 0.2, -0.9];
    let psi = [0.8, -0.35, 0.6, 0.25];
    let good = chain_rule_matrix(rho, psi);
    let list = appendix_list_matrix(rho, psi);
    let mut worst: f64 = 0.0;
    let mut cells = Vec::new();
    for j in 0..5 {
        for l in 0..5 {
            let d = (good.c[j][l] - list.c[j][l]).abs();
            if d > 1e-12 {
                cells.push(format!("c4{l}"));
                worst = worst.max(d);
            }
        }
    }
    out.push(entry(
        "c-list",
        "appendix fourth-order coefficient list",
        format!(
            "differs in {}",
            if cells.is_empty() {
                "none".into()
            } else {
                cells.join(", ")
            }
        ),
        "decomposition display".into(),
        if cells.is_empty() {
            Verdict::Match
        } else {
            Verdict::Mismatch
        },
        format!(
            "list vs the derivative decomposition on a generic jet, max deviation {}",
            fmt_f(worst)
        ),
    ));
    let bad_ok = n_grid().all(|n| weights_symbol(&appendix_radial_weights(n)) == radial_symbol(n));
    let good_ok = n_grid().all(|n| weights_symbol(&radial_weights(n)) == radial_symbol(n));
    let w5 = appendix_radial_weights(5);
    let r5 = radial_weights(5);
    out.push(entry(
        "N4j",
        "appendix spherical weights",
        format!("[{}]", w5.iter().map(fmt_q).collect::<Vec<_>>().join(", ")),
        format!("[{}]", r5.iter().map(fmt_q).collect::<Vec<_>>().join(", ")),
        if bad_ok { Verdict::Match } else { Verdict::Mismatch },
        format!("weights of r^(j-4) d^j at n=5 as listed vs those reproducing B(β,0); listed reproduce: {bad_ok}, corrected reproduce: {good_ok}"),
    ));
    let m = second_order_matrix_printed([rho[0], rho[1], rho[2]], [psi[0], psi[1]]);
    out.push(entry(
        "c10",
        "second-order chain-rule matrix",
        fmt_f(m[1][0]),
        fmt_f(rho[1]),
        if (m[1][0] - rho[1]).abs() < 1e-15 {
            Verdict::Match
        } else {
            Verdict::Mismatch
        },
        "the (1,0) entry reads ρ where the first derivative of the composition needs ρ_r",
    ));
}

fn pohozaev_entries(out: &mut Vec<LedgerEntry>) -> Result<()> {
    let ts: Vec<Q> = [
        qi(1),
        qi(2),
        qi(3),
        qf(7, 2),
        qi(5),
        qi(10),
        qi(100),
        qf(1, 3),
    ]
    .into();
    for j in [0usize, 1, 2, 3] {
        let mut first = None;
        for n in n_grid() {
            for t in &ts {
                let p = aviles_p_coeffs_exact(n, t)?;
                if p.printed[j] != p.definitional[j] {
                    first.get_or_insert((
                        n,
                        t.clone(),
                        p.printed[j].clone(),
                        p.definitional[j].clone(),
                    ));
                }
            }
        }
        let t5 = qi(100);
        let p5 = aviles_p_coeffs_exact(5, &t5)?;
        let (verdict, printed, oracle, note) = match first {
            None => (
                Verdict::Match,
                fmt_q(&p5.printed[j]),
                fmt_q(&p5.definitional[j]),
                "explicit and definitional forms agree at 8 rational t for n = 5..12".to_string(),
            ),
            Some((n, t, a, b)) => (
                Verdict::Mismatch,
                fmt_q(&a),
                fmt_q(&b),
                format!(
                    "explicit vs definitional form with the printed K~j; shown at n={n}, t={}",
                    fmt_q(&t)
                ),
            ),
        };
        out.push(entry(
            &format!("p{j}"),
            "nonautonomous Hamiltonian coefficients",
            printed,
            oracle,
            verdict,
            note,
        ));
    }
    // the definitional p3 omits the t of t K~3'
    let mut d3 = None;
    for n in n_grid() {
        for t in &ts {
            let p = aviles_p_coeffs_exact(n, t)?;
            if p.definitional[3] != p.derivative[3] {
                d3.get_or_insert((
                    n,
                    t.clone(),
                    p.definitional[3].clone(),
                    p.derivative[3].clone(),
                ));
            }
        }
    }
    if let Some(e) = out.iter_mut().find(|e| e.symbol == "p3") {
        if let Some((n, t, a, b)) = d3 {
            e.note.push_str(&format!(
                "; the definition -[K~3 + K~3'] also differs from the derivative of the Hamiltonian, -[K~3 + t K~3'] ({} vs {} at n={n}, t={})",
                fmt_q(&a),
                fmt_q(&b),
                fmt_q(&t)
            ));
            if e.verdict == Verdict::Match {
                e.verdict = Verdict::Mismatch;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for n in 5..=10u32 {
        let p = aviles_level_printed(n);
        let d = aviles_level_derived(n, to_f64(&theorem_hat_k0(n)));
        worst = worst.max(((p - d) / d).abs());
    }
    let (p5, d5) = (
        aviles_level_printed(5),
        aviles_level_derived(5, to_f64(&theorem_hat_k0(5))),
    );
    out.push(entry(
        "l*(n)",
        "limiting energy level in the logarithmic regime",
        fmt_f(p5),
        fmt_f(d5),
        if worst <= 1e-9 { Verdict::Match } else { Verdict::Mismatch },
        format!(
            "closed form vs |Λ|^(2_**+1)/(2_**+1) + K^0|Λ|² at n=5; largest relative gap over n = 5..10 is {}; the level is stated both as -l*(n) and l*(n)",
            fmt_f(worst)
        ),
    ));
    Ok(())
}

fn misc_entries(out: &mut Vec<LedgerEntry>) -> Result<()> {
    // W = ρU in the display vs U = ρW in the assembly, at r = 1/e
    let n = 5.0f64;
    let r = (-1.0f64).exp();
    let rho = r.powf(4.0 - n) * (-r.ln()).powf((4.0 - n) / 4.0);
    let (u, w_display) = (1.0, rho);
    let w_assembly = u / rho;
    out.push(entry(
        "W display",
        "nonautonomous change of variables",
        format!("W = {}", fmt_f(w_display)),
        format!("W = {}", fmt_f(w_assembly)),
        if (w_display - w_assembly).abs() < 1e-12 { Verdict::Match } else { Verdict::Mismatch },
        "display multiplies U by r^(4-n)(-ln r)^((4-n)/4) while the assembly uses U = ρW; values for U = 1 at n = 5, r = 1/e; the assembly convention is used",
    ));
    // G1 with the reflected term read literally must vanish on the sphere
    let x = [0.3, 0.2, -0.1, 0.0, 0.1];
    let y = [0.6, 0.0, 0.8, 0.0, 0.0];
    let lit = green_g1_printed(5, &x, &y)?;
    let std = green_g1(5, &x, &y)?;
    out.push(entry(
        "G1",
        "Green function of the Laplacian in the unit ball",
        fmt_f(lit),
        fmt_f(std),
        if lit.abs() <= 1e-12 { Verdict::Match } else { Verdict::Mismatch },
        "boundary value for |y| = 1 with the reflected term |x/|x| - x|y||; the standard form vanishes there",
    ));
    let mut worst: f64 = 0.0;
    for n in 5..=10u32 {
        let nf = n as f64;
        let k0 = nf * nf * (nf - 4.0) * (nf - 4.0) / 16.0;
        let c = bubble_constant(n)?.c;
        worst = worst.max(((k0 / c).powf((nf - 4.0) / 8.0) - a0(n)).abs());
    }
    out.push(entry(
        "a0",
        "Cauchy problem constant",
        fmt_f(a0(5)),
        fmt_f((1.5625 / bubble_constant(5)?.c).powf(1.0 / 8.0)),
        if worst <= 1e-9 { Verdict::Match } else { Verdict::Mismatch },
        format!("exponent written n-4/8 read as (n-4)/8; agrees with (K*_0/c)^((n-4)/8) to {} for n = 5..10", fmt_f(worst)),
    ));
    Ok(())
}

/// Every comparison, with σ fixed by [`sigma_vote`].
pub fn build_ledger() -> Result<(SigmaVote, Vec<LedgerEntry>)> {
    let vote = sigma_vote();
    let sigma = vote.chosen;
    let mut out = Vec::new();
    autonomous_entries(sigma, &mut out);
    nonautonomous_entries(&mut out)?;
    second_order_entries(sigma, &mut out)?;
    chain_rule_entries(&mut out);
    pohozaev_entries(&mut out)?;
    misc_entries(&mut out)?;
    Ok((vote, out))
}

/// How the ledger relates to the documented and known lists.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerAudit {
    /// Non-MATCH entries outside the documented list.
    pub undocumented: Vec<String>,
    /// Documented symbols whose entry is MATCH or absent.
    pub missing_documented: Vec<String>,
    /// Non-MATCH entries in neither list.
    pub unknown: Vec<String>,
}

impl LedgerAudit {
    pub fn exact(&self) -> bool {
        self.undocumented.is_empty() && self.missing_documented.is_empty()
    }

    pub fn all_known(&self) -> bool {
        self.unknown.is_empty()
    }
}

pub fn audit(entries: &[LedgerEntry]) -> LedgerAudit {
    let flagged: Vec<&LedgerEntry> = entries
        .iter()
        .filter(|e| e.verdict != Verdict::Match)
        .collect();
    LedgerAudit {
        undocumented: flagged
            .iter()
            .filter(|e| !DOCUMENTED.contains(&e.symbol.as_str()))
            .map(|e| e.symbol.clone())
            .collect(),
        missing_documented: DOCUMENTED
            .iter()
            .filter(|d| !flagged.iter().any(|e| e.symbol == **d))
            .map(|d| d.to_string())
            .collect(),
        unknown: flagged
            .iter()
            .filter(|e| {
                !DOCUMENTED.contains(&e.symbol.as_str()) && !DISCOVERED.contains(&e.symbol.as_str())
            })
            .map(|e| e.symbol.clone())
            .collect(),
    }
}

/// CSV with columns `symbol,location,printed,oracle,verdict,note`.
pub fn ledger_csv(entries: &[LedgerEntry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["symbol", "location", "printed", "oracle", "verdict", "note"])
        .expect("in-memory write");
    for e in entries {
        w.write_record([
            &e.symbol,
            &e.location,
            &e.printed,
            &e.oracle,
            e.verdict.label(),
            &e.note,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
