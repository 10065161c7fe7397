//! Tracking the bounded solution of the nonautonomous scalar equation.
//!
//! Near the quasi-equilibrium `(tK̃0)^{(n-4)/4}` the frozen linearization has
//! one growing mode, so plain forward integration drifts away. Each chunk
//! is shot along the growing eigenvector until the state a window ahead
//! has no growing component relative to the quasi-equilibrium.

use super::dopri::{integrate, IntegrateOptions};
use super::rhs::NonautonomousSystem;
use super::spectrum::poly_roots;
use super::trajectory::Trajectory;
use crate::error::{domain, Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SettledOptions {
    /// Length of each accepted chunk.
    pub chunk: f64,
    /// Target growth `e^{λ window}` of the look-ahead window.
    pub window_gain: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for SettledOptions {
    fn default() -> Self {
        Self {
            chunk: 2.0,
            window_gain: 1e8,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SettledTrack {
    pub pieces: Vec<Trajectory>,
    /// Largest relative kick applied at a chunk start.
    pub max_correction: f64,
    /// Growing root of the frozen linearization at the last chunk.
    pub growth_rate: f64,
}

impl SettledTrack {
    pub fn t_start(&self) -> f64 {
        self.pieces[0].t_start()
    }

    pub fn t_end(&self) -> f64 {
        self.pieces.last().expect("nonempty").t_end()
    }

    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        let i = self
            .pieces
            .partition_point(|p| p.t_end() < t)
            .min(self.pieces.len() - 1);
        self.pieces[i].eval(t)
    }
}

/// `(tK̃0(t))^{(n-4)/4}`, the constant state balancing the potential term.
pub fn quasi_equilibrium(sys: &NonautonomousSystem, t: f64) -> f64 {
    (t * sys.coeffs_at(t)[0])
        .max(0.0)
        .powf((sys.n as f64 - 4.0) / 4.0)
}

/// Frozen characteristic polynomial at `(t, w)`, lowest degree first.
fn frozen_poly(sys: &NonautonomousSystem, t: f64, w: f64) -> [f64; 5] {
    let [k0, k1, k2, k3] = sys.coeffs_at(t);
    let q = sys.exponent();
    [k0 - (q + 1.0) * w.abs().powf(q) / t, k1, k2, k3, 1.0]
}

fn growing_mode(sys: &NonautonomousSystem, t: f64, w: f64) -> Result<(f64, [f64; 4], [f64; 4])> {
    let a = frozen_poly(sys, t, w);
    let lam = poly_roots(&a)
        .into_iter()
        .filter(|z| z.im.abs() < 1e-9 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if !(lam > 0.0) {
        return domain(format!("no real growing mode at t = {t}"));
    }
    let right = [1.0, lam, lam * lam, lam * lam * lam];
    let l0 = -a[0] / lam;
    let l1 = (l0 - a[1]) / lam;
    let l2 = (l1 - a[2]) / lam;
    Ok((lam, right, [l0, l1, l2, 1.0]))
}

fn dot(a: &[f64; 4], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integrate the scalar (`p = 1`) system from near the quasi-equilibrium at
/// `t0` to `t1`, keeping the growing mode suppressed.
pub fn track_settled(
    sys: &NonautonomousSystem,
    t0: f64,
    t1: f64,
    opts: &SettledOptions,
) -> Result<SettledTrack> {
    if sys.p != 1 {
        return domain("settled tracking is implemented for a single component");
    }
    if !(t0 >= 1.0 && t1 > t0) {
        return domain(format!("need 1 ≤ t0 < t1, got [{t0}, {t1}]"));
    }
    let iopts = IntegrateOptions {
        blow_up: f64::INFINITY,
        ..IntegrateOptions::tol(opts.rel_tol, opts.abs_tol)
    };
    let run = |t: f64, y: &[f64], tend: f64| -> Result<Trajectory> {
        integrate(sys, t, y, tend, &iopts).map_err(Error::from)
    };

    let h = 1e-3 * t0;
    let w0 = quasi_equilibrium(sys, t0);
    let dw0 = (quasi_equilibrium(sys, t0 + h) - quasi_equilibrium(sys, t0 - h)) / (2.0 * h);
    let mut y = vec![w0, dw0, 0.0, 0.0];
    let mut t = t0;
    let mut pieces = Vec::new();
    let mut max_corr: f64 = 0.0;
    let mut growth = 0.0;
    while t < t1 {
        let (lam, right, left) = growing_mode(sys, t, y[0])?;
        growth = lam;
        // the first chunk starts off the manifold, so widen the window gradually
        let gains: Vec<f64> = if pieces.is_empty() {
            let mut g = vec![];
            let mut v = 1e2;
            while v < opts.window_gain {
                g.push(v);
                v *= 1e2;
            }
            g.push(opts.window_gain);
            g
        } else {
            vec![opts.window_gain]
        };
        let mut a1 = 0.0;
        for gain in gains {
            let t_win = t + (gain.ln() / lam).max(opts.chunk);
            a1 = shoot_alpha(sys, &run, t, &y, a1, t_win, lam, &right, &left)?;
        }
        let scale = quasi_equilibrium(sys, t).abs().max(1.0);
        max_corr = max_corr.max(a1.abs() / scale);
        let ys: Vec<f64> = y.iter().zip(&right).map(|(v, r)| v + a1 * r).collect();
        let tc = (t + opts.chunk).min(t1);
        let piece = run(t, &ys, tc)?;
        y = piece.last().to_vec();
        t = tc;
        pieces.push(piece);
    }
    Ok(SettledTrack {
        pieces,
        max_correction: max_corr,
        growth_rate: growth,
    })
}

#[allow(clippy::too_many_arguments)]
fn shoot_alpha(
    sys: &NonautonomousSystem,
    run: &dyn Fn(f64, &[f64], f64) -> Result<Trajectory>,
    t: f64,
    y: &[f64],
    start: f64,
    t_win: f64,
    lam: f64,
    right: &[f64; 4],
    left: &[f64; 4],
) -> Result<f64> {
    let target = [quasi_equilibrium(sys, t_win), 0.0, 0.0, 0.0];
    let scale = target[0].abs().max(1.0);
    let miss = |alpha: f64| -> Result<f64> {
        let ys: Vec<f64> = y.iter().zip(right).map(|(v, r)| v + alpha * r).collect();
        let tr = run(t, &ys, t_win)?;
        let d: Vec<f64> = tr.last().iter().zip(&target).map(|(a, b)| a - b).collect();
        Ok(dot(left, &d))
    };
    let slope0 = dot(left, right) * (lam * (t_win - t)).exp();
    let mut a0 = start;
    let mut g0 = miss(a0)?;
    let mut a1 = a0 - g0 / slope0;
    let mut g1 = miss(a1)?;
    for _ in 0..12 {
        if g1.abs() <= 1e-9 * scale || g1 == g0 {
            break;
        }
        let a2 = a1 - g1 * (a1 - a0) / (g1 - g0);
        a0 = a1;
        g0 = g1;
        a1 = a2;
        g1 = miss(a1)?;
    }
    Ok(a1)
}
