//! Regime classification and log-space profile fits.

use crate::closed_forms::HatVariant;
use crate::coefficients::symbol::{char_symbol, Sigma};
use crate::cylinder_ode::{nonautonomous_rhs, Trajectory};
use crate::error::{domain, Error, Result};
use crate::params::Params;
use crate::rational::{fmt_q, to_f64};
use num_traits::Signed;
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    SerrinLions,
    Aviles,
    GidasSpruck,
    Critical,
    Supercritical,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::SerrinLions => "SERRIN_LIONS",
            Regime::Aviles => "AVILES",
            Regime::GidasSpruck => "GIDAS_SPRUCK",
            Regime::Critical => "CRITICAL",
            Regime::Supercritical => "SUPERCRITICAL",
        }
    }
}

/// The singular profile attached to a regime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictedProfile {
    pub formula: String,
    /// Decay exponent `e` in `|x|^{-e}`.
    pub exponent: Option<f64>,
    /// Exponent of `(-ln|x|)`.
    pub log_exponent: f64,
    /// Amplitudes by label; the logarithmic regime carries every `K̂0` reading.
    pub amplitudes: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub n: u32,
    pub s: String,
    pub regime: Regime,
    pub profile: PredictedProfile,
}

fn regime_of(cmp_lower: Ordering, cmp_crit: Ordering) -> Regime {
    match (cmp_lower, cmp_crit) {
        (Ordering::Less, _) => Regime::SerrinLions,
        (Ordering::Equal, _) => Regime::Aviles,
        (Ordering::Greater, Ordering::Less) => Regime::GidasSpruck,
        (_, Ordering::Equal) => Regime::Critical,
        _ => Regime::Supercritical,
    }
}

/// Exact classification for rational `s`.
pub fn classify_regime(params: &Params) -> Result<Classification> {
    let ex = params.exponents();
    let regime = regime_of(params.s.cmp(&ex.lower), params.s.cmp(&ex.critical()));
    let n = params.n;
    let nf = n as f64;
    let profile = match regime {
        Regime::SerrinLions => PredictedProfile {
            formula: "C|x|^(4-n)".into(),
            exponent: Some(nf - 4.0),
            log_exponent: 0.0,
            amplitudes: vec![],
        },
        Regime::Aviles => PredictedProfile {
            formula: "K^0^((n-4)/4)|x|^(4-n)(-ln|x|)^((4-n)/4)".into(),
            exponent: Some(nf - 4.0),
            log_exponent: (4.0 - nf) / 4.0,
            amplitudes: aviles_amplitudes(n)?,
        },
        Regime::GidasSpruck => {
            let k0 = char_symbol(params, Sigma::Minus)?.coefficients().k0;
            let s = params.s_f64();
            PredictedProfile {
                formula: "K0^(1/(s-1))|x|^(-4/(s-1))".into(),
                exponent: Some(to_f64(&params.gamma())),
                log_exponent: 0.0,
                amplitudes: if k0.is_positive() {
                    vec![("K0".into(), to_f64(&k0).powf(1.0 / (s - 1.0)))]
                } else {
                    vec![]
                },
            }
        }
        Regime::Critical => PredictedProfile {
            formula: "|x|^(-(n-4)/2) v(-ln|x|), v periodic".into(),
            exponent: Some((nf - 4.0) / 2.0),
            log_exponent: 0.0,
            amplitudes: vec![],
        },
        Regime::Supercritical => PredictedProfile {
            formula: "outside the classified range".into(),
            exponent: None,
            log_exponent: 0.0,
            amplitudes: vec![],
        },
    };
    Ok(Classification {
        n,
        s: fmt_q(&params.s),
        regime,
        profile,
    })
}

/// Classification for floating `s` with boundary tolerance `1e-12`.
pub fn classify_regime_f64(n: u32, s: f64) -> Result<Regime> {
    if n < 5 || !(s > 1.0) {
        return domain(format!("need n ≥ 5 and s > 1, got n = {n}, s = {s}"));
    }
    let nf = n as f64;
    let cmp = |a: f64, b: f64| {
        if (a - b).abs() <= 1e-12 * b.abs().max(1.0) {
            Ordering::Equal
        } else {
            a.total_cmp(&b)
        }
    };
    Ok(regime_of(
        cmp(s, nf / (nf - 4.0)),
        cmp(s, (nf + 4.0) / (nf - 4.0)),
    ))
}

fn aviles_amplitudes(n: u32) -> Result<Vec<(String, f64)>> {
    let e = (n as f64 - 4.0) / 4.0;
    let mut out = Vec::new();
    for (label, v) in [
        ("theorem", HatVariant::Theorem),
        ("formula", HatVariant::Formula),
        ("derived", HatVariant::Derived),
    ] {
        out.push((label.to_string(), v.hat_k0(n)?.powf(e)));
    }
    Ok(out)
}

/// A sample `(ln r, ln value)`; fits work in log space so radii far below
/// the f64 range can be represented.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogSample {
    pub ln_r: f64,
    pub ln_value: f64,
}

impl LogSample {
    pub fn new(r: f64, value: f64) -> Result<Self> {
        if !(r > 0.0) || !(value > 0.0) || !value.is_finite() {
            return Err(Error::Fit(format!(
                "sample (r = {r}, value = {value}) is not positive"
            )));
        }
        Ok(Self {
            ln_r: r.ln(),
            ln_value: value.ln(),
        })
    }
}

pub fn log_samples(samples: &[(f64, f64)]) -> Result<Vec<LogSample>> {
    samples.iter().map(|&(r, v)| LogSample::new(r, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    /// `e` in `A r^{-e} (-ln r)^{κ}`.
    pub exponent: f64,
    pub amplitude: f64,
    /// `κ`, present for the log-corrected model.
    pub log_exponent: Option<f64>,
    /// RMS of the log deviations.
    pub residual: f64,
    pub samples: usize,
    pub regime: Option<Regime>,
    /// `(label, predicted amplitude, relative deviation of the fit)`.
    pub amplitude_checks: Vec<(String, f64, f64)>,
}

/// Ordinary least squares `y ≈ α + βx`; returns `(α, β, rms)`.
fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let beta = sxy / sxx;
    let alpha = my - beta * mx;
    let rms = (x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - alpha - beta * a).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok((alpha, beta, rms))
}

/// `value ≈ A r^{-e}` by least squares on `(ln r, ln value)`.
pub fn fit_power_law(samples: &[LogSample]) -> Result<FitReport> {
    if samples.len() < 8 {
        return Err(Error::Fit(format!(
            "need at least 8 samples, got {}",
            samples.len()
        )));
    }
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| {
            (a.min(s.ln_r), b.max(s.ln_r))
        });
    if hi - lo < 2.0 * std::f64::consts::LN_10 * (1.0 - 1e-12) {
        return Err(Error::Fit("radii span less than two decades".into()));
    }
    let x: Vec<f64> = samples.iter().map(|s| s.ln_r).collect();
    let y: Vec<f64> = samples.iter().map(|s| s.ln_value).collect();
    let (alpha, beta, rms) = linear_fit(&x, &y)?;
    Ok(FitReport {
        exponent: -beta,
        amplitude: alpha.exp(),
        log_exponent: None,
        residual: rms,
        samples: samples.len(),
        regime: None,
        amplitude_checks: vec![],
    })
}

/// `value · r^{n-4} ≈ A (-ln r)^{κ}` by regression of `ln(value r^{n-4})` on `ln(-ln r)`.
pub fn fit_log_corrected(samples: &[LogSample], n: u32) -> Result<FitReport> {
    if n < 5 {
        return domain(format!("dimension n = {n} must be at least 5"));
    }
    if samples.len() < 12 {
        return Err(Error::Fit(format!(
            "need at least 12 samples, got {}",
            samples.len()
        )));
    }
    if let Some(s) = samples.iter().find(|s| s.ln_r >= -2.0) {
        return Err(Error::Fit(format!(
            "sample at ln r = {} is not below -2",
            s.ln_r
        )));
    }
    let nf = n as f64;
    let x: Vec<f64> = samples.iter().map(|s| (-s.ln_r).ln()).collect();
    let y: Vec<f64> = samples
        .iter()
        .map(|s| s.ln_value + (nf - 4.0) * s.ln_r)
        .collect();
    let (alpha, kappa, rms) = linear_fit(&x, &y)?;
    let amplitude = alpha.exp();
    let target = (4.0 - nf) / 4.0;
    let regime = if (kappa - target).abs() < 0.05 {
        Some(Regime::Aviles)
    } else if kappa.abs() < 0.05 {
        Some(Regime::SerrinLions)
    } else {
        None
    };
    let amplitude_checks = aviles_amplitudes(n)?
        .into_iter()
        .map(|(l, a)| (l, a, (amplitude - a) / a))
        .collect();
    Ok(FitReport {
        exponent: nf - 4.0,
        amplitude,
        log_exponent: Some(kappa),
        residual: rms,
        samples: samples.len(),
        regime,
        amplitude_checks,
    })
}

/// Map a nonautonomous trajectory back to `u(r) = r^{4-n}(-ln r)^{(4-n)/4}|W(-ln r)|`
/// at `count` log-spaced times in `[t0, t1]`.
pub fn aviles_samples_from_trajectory(
    n: u32,
    traj: &dyn Fn(f64) -> Result<Vec<f64>>,
    t0: f64,
    t1: f64,
    count: usize,
) -> Result<Vec<LogSample>> {
    if !(t0 > 0.0 && t1 > t0) || count < 2 {
        return domain("need 0 < t0 < t1 and at least two samples");
    }
    let nf = n as f64;
    (0..count)
        .map(|i| {
            let t = t0 * (t1 / t0).powf(i as f64 / (count - 1) as f64);
            let y = traj(t)?;
            let w = y.chunks_exact(4).map(|c| c[0] * c[0]).sum::<f64>().sqrt();
            if !(w > 0.0) {
                return Err(Error::Fit(format!("|W| vanishes at t = {t}")));
            }
            Ok(LogSample {
                ln_r: -t,
                ln_value: (nf - 4.0) * t + (4.0 - nf) / 4.0 * t.ln() + w.ln(),
            })
        })
        .collect()
}

/// Convenience for a single trajectory.
pub fn aviles_samples(
    n: u32,
    traj: &Trajectory,
    t0: f64,
    t1: f64,
    count: usize,
) -> Result<Vec<LogSample>> {
    aviles_samples_from_trajectory(n, &|t| traj.eval(t), t0, t1, count)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualDecay {
    pub n: u32,
    pub variant: HatVariant,
    /// `K̂0^{(n-4)/4}`.
    pub w_star: f64,
    /// Fitted `ρ` in `|residual| ~ t^{-ρ}`; `None` when the residual vanishes identically.
    pub rate: Option<f64>,
    pub samples: Vec<(f64, f64)>,
}

/// `|w⁗|` from the printed right-hand side at the constant state `w*`
/// over `t ∈ [10, 10⁴]`, with the decay rate fitted in log space.
pub fn residual_decay_check(
    n: u32,
    variant: HatVariant,
    w_star_override: Option<f64>,
) -> Result<ResidualDecay> {
    let w_star = match w_star_override {
        Some(w) => w,
        None => variant.hat_k0(n)?.powf((n as f64 - 4.0) / 4.0),
    };
    let count = 40;
    let mut samples = Vec::with_capacity(count);
    for i in 0..count {
        let t = 10.0 * 1000f64.powf(i as f64 / (count - 1) as f64);
        let dy = nonautonomous_rhs(n, t, &[w_star, 0.0, 0.0, 0.0])?;
        samples.push((t, dy[3].abs()));
    }
    let rate = if samples.iter().all(|s| s.1 == 0.0) {
        None
    } else {
        let ls = log_samples(&samples)?;
        Some(fit_power_law(&ls)?.exponent)
    };
    Ok(ResidualDecay {
        n,
        variant,
        w_star,
        rate,
        samples,
    })
}
