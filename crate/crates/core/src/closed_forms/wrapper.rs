use super::RadialProfile;
use crate::cylinder_ode::Trajectory;
use crate::error::{domain, Result};
use std::sync::Arc;

/// `u(r) = r^{(4-n)/2} v(ln r + T)` from a periodic orbit; queries outside
/// the stored span are folded back by the period.
///
/// Derivatives come from the stored jet `(v, v′, v″, v‴)` and the time
/// derivative of the dense output for `v⁗`.
pub fn emden_fowler_wrapper(
    orbit: Arc<Trajectory>,
    shift: f64,
    period: f64,
    n: u32,
) -> Result<RadialProfile> {
    if !(period > 0.0) || orbit.t_end() - orbit.t_start() < period * (1.0 - 1e-12) {
        return domain("orbit must cover at least one full period");
    }
    let t0 = orbit.t_start();
    let e = (4.0 - n as f64) / 2.0;
    let t_end = orbit.t_end();
    let fold = move |r: f64| (t0 + (r.ln() + shift - t0).rem_euclid(period)).min(t_end);
    let value = {
        let orbit = orbit.clone();
        move |r: f64| r.powf(e) * orbit.eval(fold(r)).map(|y| y[0]).unwrap_or(f64::NAN)
    };
    let derivs = move |r: f64| {
        let tau = fold(r);
        let (Ok(y), Ok(dy)) = (orbit.eval(tau), orbit.eval_dt(tau)) else {
            return [f64::NAN; 5];
        };
        let v = [y[0], y[1], y[2], y[3], dy[3]];
        // x-derivatives of e^{e x} v(x) with x = ln r, scaled by r^{-e}
        let binom = [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 2.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 3.0, 1.0, 0.0],
            [1.0, 4.0, 6.0, 4.0, 1.0],
        ];
        let mut w = [0.0; 5];
        for k in 0..5 {
            w[k] = (0..=k)
                .map(|j| binom[k][j] * e.powi((k - j) as i32) * v[j])
                .sum();
        }
        // r^k d^k/dr^k in terms of (r d/dr)^j: signed Stirling numbers of the first kind
        let scale = r.powf(e);
        [
            scale * w[0],
            scale * w[1] / r,
            scale * (w[2] - w[1]) / r.powi(2),
            scale * (w[3] - 3.0 * w[2] + 2.0 * w[1]) / r.powi(3),
            scale * (w[4] - 6.0 * w[3] + 11.0 * w[2] - 6.0 * w[1]) / r.powi(4),
        ]
    };
    Ok(RadialProfile::with_exact(
        format!("emden_fowler(n={n}, T={shift})"),
        value,
        derivs,
    ))
}
