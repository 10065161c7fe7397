use super::OdeSystem;
use crate::coefficients::nonauto::derived_nonautonomous;
use crate::coefficients::printed::{nonautonomous_coeffs, NonautonomousCoefficients};
use crate::coefficients::symbol::{char_symbol, Sigma};
use crate::error::{domain, Error, Result};
use crate::params::Params;
use crate::rational::to_f64;
use serde::Serialize;

/// `|V|^{q} v_i` written into `out[i]`, zero when `V = 0`.
pub(crate) fn norm_power(v: &[f64], q: f64, out: &mut [f64]) {
    let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nrm == 0.0 {
        out.iter_mut().for_each(|o| *o = 0.0);
        return;
    }
    let f = nrm.powf(q);
    for (o, x) in out.iter_mut().zip(v) {
        *o = f * x;
    }
}

fn check_finite(t: f64, y: &[f64]) -> Result<()> {
    if y.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { t })
    }
}

/// Constant-coefficient system
/// `v_i⁗ = c |V|^{s-1} v_i - K3 v_i‴ - K2 v_i″ - K1 v_i′ - K0 v_i`,
/// state ordered component-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutonomousSystem {
    pub p: usize,
    pub s: f64,
    /// `[K0, K1, K2, K3]`
    pub k: [f64; 4],
    /// Coefficient of the nonlinearity (1 for the system itself).
    pub c: f64,
}

impl AutonomousSystem {
    /// Coefficients from the symbol with the given σ.
    pub fn from_params(params: &Params, sigma: Sigma) -> Result<Self> {
        let c = char_symbol(params, sigma)?.coefficients();
        Ok(Self {
            p: params.p,
            s: params.s_f64(),
            k: [to_f64(&c.k0), to_f64(&c.k1), to_f64(&c.k2), to_f64(&c.k3)],
            c: 1.0,
        })
    }
}

impl OdeSystem for AutonomousSystem {
    fn dim(&self) -> usize {
        4 * self.p
    }

    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        check_finite(t, y)?;
        let p = self.p;
        let mut v = [0.0; 64];
        let mut nl = [0.0; 64];
        if p > 64 {
            return domain("at most 64 components are supported");
        }
        for i in 0..p {
            v[i] = y[4 * i];
        }
        norm_power(&v[..p], self.s - 1.0, &mut nl[..p]);
        let [k0, k1, k2, k3] = self.k;
        for i in 0..p {
            let b = 4 * i;
            dy[b] = y[b + 1];
            dy[b + 1] = y[b + 2];
            dy[b + 2] = y[b + 3];
            dy[b + 3] = self.c * nl[i] - k3 * y[b + 3] - k2 * y[b + 2] - k1 * y[b + 1] - k0 * y[b];
        }
        Ok(())
    }
}

/// One-shot evaluation of the autonomous right-hand side.
pub fn autonomous_rhs(params: &Params, sigma: Sigma, state: &[f64]) -> Result<Vec<f64>> {
    let sys = AutonomousSystem::from_params(params, sigma)?;
    if state.len() != sys.dim() {
        return domain(format!(
            "state has length {}, expected {}",
            state.len(),
            sys.dim()
        ));
    }
    let mut dy = vec![0.0; state.len()];
    sys.rhs(0.0, state, &mut dy)?;
    Ok(dy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffRoute {
    /// The printed `t`-dependent formulas.
    Printed,
    /// Coefficients from the exact operator conjugation.
    Derived,
}

/// `w_i⁗ = t^{-1}|W|^{4/(n-4)} w_i - Σ_j K̃_j(t) w_i^{(j)}` for `t > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonautonomousSystem {
    pub n: u32,
    pub p: usize,
    pub route: CoeffRoute,
    /// Polynomial coefficients of `K̃_j` in `u = 1/t`, lowest first.
    k: [Vec<f64>; 4],
}

impl NonautonomousSystem {
    pub fn new(n: u32, p: usize, route: CoeffRoute) -> Result<Self> {
        if p == 0 {
            return domain("component count p must be positive");
        }
        let c: NonautonomousCoefficients = match route {
            CoeffRoute::Printed => nonautonomous_coeffs(n)?,
            CoeffRoute::Derived => derived_nonautonomous(n)?,
        };
        Ok(Self {
            n,
            p,
            route,
            k: c.k.map(|poly| poly.coeffs().iter().map(to_f64).collect()),
        })
    }

    /// `4/(n-4)`, the power in `|W|^{2_** - 1}`.
    pub fn exponent(&self) -> f64 {
        4.0 / (self.n as f64 - 4.0)
    }

    pub fn coeffs_at(&self, t: f64) -> [f64; 4] {
        let u = 1.0 / t;
        self.k
            .each_ref()
            .map(|c| c.iter().rev().fold(0.0, |acc, a| acc * u + a))
    }

    /// `d/dt K̃_j(t)`.
    pub fn coeffs_dt_at(&self, t: f64) -> [f64; 4] {
        let u = 1.0 / t;
        self.k.each_ref().map(|c| {
            let d = c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (j, a)| acc * u + j as f64 * a);
            -u * u * d
        })
    }

    /// `lim t K̃0(t)`.
    pub fn hat_k0(&self) -> f64 {
        self.k[0].get(1).copied().unwrap_or(0.0)
    }
}

impl OdeSystem for NonautonomousSystem {
    fn dim(&self) -> usize {
        4 * self.p
    }

    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        if !(t > 0.0) {
            return domain(format!("nonautonomous system needs t > 0, got {t}"));
        }
        check_finite(t, y)?;
        let p = self.p;
        if p > 64 {
            return domain("at most 64 components are supported");
        }
        let mut v = [0.0; 64];
        let mut nl = [0.0; 64];
        for i in 0..p {
            v[i] = y[4 * i];
        }
        norm_power(&v[..p], self.exponent(), &mut nl[..p]);
        let [k0, k1, k2, k3] = self.coeffs_at(t);
        for i in 0..p {
            let b = 4 * i;
            dy[b] = y[b + 1];
            dy[b + 1] = y[b + 2];
            dy[b + 2] = y[b + 3];
            dy[b + 3] = nl[i] / t - k3 * y[b + 3] - k2 * y[b + 2] - k1 * y[b + 1] - k0 * y[b];
        }
        Ok(())
    }
}

/// One-shot evaluation of the nonautonomous right-hand side (printed coefficients).
pub fn nonautonomous_rhs(n: u32, t: f64, state: &[f64]) -> Result<Vec<f64>> {
    if state.len() % 4 != 0 || state.is_empty() {
        return domain("state length must be a positive multiple of 4");
    }
    let sys = NonautonomousSystem::new(n, state.len() / 4, CoeffRoute::Printed)?;
    let mut dy = vec![0.0; state.len()];
    sys.rhs(t, state, &mut dy)?;
    Ok(dy)
}
