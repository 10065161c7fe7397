use super::centered_derivative;
use crate::coefficients::printed::nonautonomous_coeffs;
use crate::cylinder_ode::{NonautonomousSystem, Trajectory};
use crate::error::{domain, Result};
use crate::poly::Poly;
use crate::rational::{qi, to_f64, Q};
use num_traits::{One, Zero};
use serde::Serialize;

fn dot_k(y: &[f64], a: usize, b: usize) -> f64 {
    y.chunks_exact(4).map(|c| c[a] * c[b]).sum()
}

/// Radial nonautonomous Hamiltonian
/// `-t(⟨W‴,W′⟩ + K̃3⟨W″,W′⟩) + (t/2)(|W″|² - K̃2|W′|² - K̃0|W|²) + |W|^{2_**+1}/(2_**+1)`.
pub fn aviles_hamiltonian(sys: &NonautonomousSystem, t: f64, y: &[f64]) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("nonautonomous Hamiltonian needs t > 0, got {t}"));
    }
    let [k0, _, k2, k3] = sys.coeffs_at(t);
    let q2 = sys.exponent() + 2.0;
    let w2 = dot_k(y, 0, 0);
    Ok(-t * (dot_k(y, 3, 1) + k3 * dot_k(y, 2, 1))
        + 0.5 * t * (dot_k(y, 2, 2) - k2 * dot_k(y, 1, 1) - k0 * w2)
        + w2.sqrt().powf(q2) / q2)
}

/// `-⟨W‴,W′⟩ + p3⟨W″,W′⟩ + p2|W″|² + p1|W′|² + p0|W|²` with the true
/// derivative coefficients of the system's own `K̃_j`.
pub fn aviles_dh_formula(sys: &NonautonomousSystem, t: f64, y: &[f64]) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("nonautonomous Hamiltonian needs t > 0, got {t}"));
    }
    let k = sys.coeffs_at(t);
    let dk = sys.coeffs_dt_at(t);
    let p3 = -(k[3] + t * dk[3]);
    let p2 = 0.5 - t * k[3];
    let p1 = -0.5 * (k[2] + t * dk[2] - 2.0 * t * k[1]);
    let p0 = -0.5 * (k[0] + t * dk[0]);
    Ok(-dot_k(y, 3, 1)
        + p3 * dot_k(y, 2, 1)
        + p2 * dot_k(y, 2, 2)
        + p1 * dot_k(y, 1, 1)
        + p0 * dot_k(y, 0, 0))
}

/// `𝔭_0..𝔭_3` by three routes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PCoeffs<T> {
    /// The explicit closed forms as printed.
    pub printed: [T; 4],
    /// The printed definitions (`𝔭_3 = -[K̃3 + K̃3′]`) applied to the printed `K̃_j`.
    pub definitional: [T; 4],
    /// Coefficients of the actual derivative of the Hamiltonian (`𝔭_3 = -[K̃3 + tK̃3′]`).
    pub derivative: [T; 4],
}

fn t_dk(p: &Poly, u: &Q) -> Q {
    // t d/dt = -u d/du
    -(u * p.derivative().eval(u))
}

/// Exact `𝔭_j` at a rational `t > 0`.
pub fn aviles_p_coeffs_exact(n: u32, t: &Q) -> Result<PCoeffs<Q>> {
    if *t <= Q::zero() {
        return domain("p coefficients need t > 0");
    }
    let c = nonautonomous_coeffs(n)?;
    let u = Q::one() / t;
    let k: Vec<Q> = c.k.iter().map(|p| p.eval(&u)).collect();
    let tdk: Vec<Q> = c.k.iter().map(|p| t_dk(p, &u)).collect();
    let half = Q::one() / qi(2);
    let p2 = &half - t * &k[3];
    let p1 = -&half * (&k[2] + &tdk[2] - qi(2) * t * &k[1]);
    let p0 = -&half * (&k[0] + &tdk[0]);
    let derivative = [p0.clone(), p1.clone(), p2.clone(), -(&k[3] + &tdk[3])];
    let definitional = [p0, p1, p2, -(&k[3] + &tdk[3] * &u)];

    let nq = qi(n as i64);
    let n4 = &nq - qi(4);
    let u2 = &u * &u;
    let printed = [
        qi(3) * &n4 * &nq * (&nq + qi(4)) * (&nq + qi(8)) / qi(512) * &u2 * &u2
            + &n4 * &n4 * &nq * (&nq + qi(4)) / qi(32) * &u2 * &u
            + &n4 * &nq * (&nq * &nq - qi(10) * &nq + qi(20)) / qi(32) * &u2,
        &nq * (&nq + qi(7)) * &n4 / qi(16) * &u2
            + qi(3) * &nq * &n4 * &n4 / qi(8) * &u
            + qi(5) * (qi(7) * &nq - qi(10))
            - qi(2) * (&nq - qi(2)) * &n4 * t,
        -(&n4 * &u) - (qi(4) * &nq - qi(17)) / qi(2),
        -(&n4 * &u2) - &n4 * &u - qi(2) * &n4,
    ];
    Ok(PCoeffs {
        printed,
        definitional,
        derivative,
    })
}

pub fn aviles_p_coeffs(n: u32, t: f64) -> Result<PCoeffs<f64>> {
    if !(t > 0.0) {
        return domain(format!("p coefficients need t > 0, got {t}"));
    }
    let tq = crate::rational::from_f64(t)?;
    let e = aviles_p_coeffs_exact(n, &tq)?;
    let f = |a: &[Q; 4]| a.each_ref().map(to_f64);
    Ok(PCoeffs {
        printed: f(&e.printed),
        definitional: f(&e.definitional),
        derivative: f(&e.derivative),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Monotonicity {
    Nonincreasing,
    Nondecreasing,
    Constant,
    Inconclusive,
}

impl Monotonicity {
    /// The sign split by dimension for orbits tending to the nontrivial constant.
    pub fn expected(n: u32) -> Self {
        if n >= 8 {
            Self::Nondecreasing
        } else {
            Self::Nonincreasing
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Nonincreasing => "NONINCREASING",
            Self::Nondecreasing => "NONDECREASING",
            Self::Constant => "CONSTANT",
            Self::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvilesMonotonicity {
    pub verdict: Monotonicity,
    /// Start of the final single-sign stretch.
    pub t_detected: Option<f64>,
    pub settled: bool,
    pub reason: String,
    /// `(t, H̃, dH̃ numeric, dH̃ formula)`.
    pub samples: Vec<(f64, f64, f64, f64)>,
}

/// Relative distance from the quasi-equilibrium `(tK̃0)^{(n-4)/4}` that counts as settled.
const SETTLED_TOL: f64 = 0.05;

/// Sign of `dH̃/dt` along trajectory pieces of the nonautonomous system.
/// Each piece is differenced separately, so corrected restarts between
/// pieces do not pollute the derivative.
pub fn monotonicity_check_aviles(
    sys: &NonautonomousSystem,
    pieces: &[Trajectory],
    spacing: f64,
) -> Result<AvilesMonotonicity> {
    let delta = (spacing / 4.0).min(0.25);
    let mut samples = Vec::new();
    let mut floor = 0.0f64;
    for tr in pieces {
        let (lo, hi) = (tr.t_start().min(tr.t_end()), tr.t_start().max(tr.t_end()));
        if lo < 1.0 {
            return domain("nonautonomous pieces must lie in t ≥ 1");
        }
        let h_at = |t: f64| -> Result<f64> { aviles_hamiltonian(sys, t, &tr.eval(t)?) };
        let mut t = lo + 2.0 * delta;
        while t <= hi - 2.0 * delta {
            let y = tr.eval(t)?;
            let h = aviles_hamiltonian(sys, t, &y)?;
            let d = centered_derivative(&h_at, t, delta)?;
            let f = aviles_dh_formula(sys, t, &y)?;
            let scale: f64 = y.iter().map(|v| v * v).sum::<f64>() * t;
            floor = floor.max(
                64.0 * f64::EPSILON
                    * (h.abs()
                        + scale * (1.0 + sys.coeffs_at(t).iter().map(|k| k.abs()).sum::<f64>()))
                    / delta,
            );
            samples.push((t, h, d, f));
            t += spacing;
        }
    }
    let mut out = AvilesMonotonicity {
        verdict: Monotonicity::Inconclusive,
        t_detected: None,
        settled: false,
        reason: String::new(),
        samples,
    };
    if out.samples.len() < 8 {
        out.reason = "trajectory too short".into();
        return Ok(out);
    }
    if out.samples.iter().all(|s| s.2.abs() <= floor) {
        out.verdict = Monotonicity::Constant;
        out.reason = "derivative below the rounding floor everywhere".into();
        return Ok(out);
    }
    let last = pieces.last().expect("nonempty");
    let (t_end, y_end) = (last.t_end(), last.last());
    let target = (t_end * sys.coeffs_at(t_end)[0])
        .max(0.0)
        .powf((sys.n as f64 - 4.0) / 4.0);
    let w = y_end
        .chunks_exact(4)
        .map(|c| c[0] * c[0])
        .sum::<f64>()
        .sqrt();
    out.settled = target > 0.0 && ((w - target) / target).abs() < SETTLED_TOL;
    if !out.settled {
        out.reason = format!("final |W| = {w:.6e} is not within {SETTLED_TOL} of {target:.6e}");
        return Ok(out);
    }
    let signed: Vec<(f64, i8)> = out
        .samples
        .iter()
        .filter(|s| s.2.abs() > floor)
        .map(|s| (s.0, if s.2 > 0.0 { 1 } else { -1 }))
        .collect();
    let final_sign = signed.last().expect("some sample above floor").1;
    let start_idx = signed
        .iter()
        .rposition(|s| s.1 != final_sign)
        .map_or(0, |i| i + 1);
    let t_det = signed[start_idx].0;
    out.t_detected = Some(t_det);
    let t0 = out.samples[0].0;
    let t1 = out.samples.last().unwrap().0;
    if t1 - t_det < 0.5 * (t1 - t0) {
        out.reason = format!(
            "single sign only on the last {:.3e} of {:.3e}",
            t1 - t_det,
            t1 - t0
        );
        return Ok(out);
    }
    out.verdict = if final_sign > 0 {
        Monotonicity::Nondecreasing
    } else {
        Monotonicity::Nonincreasing
    };
    out.reason = format!(
        "{} samples above the floor {floor:.3e}",
        signed.len() - start_idx
    );
    Ok(out)
}
