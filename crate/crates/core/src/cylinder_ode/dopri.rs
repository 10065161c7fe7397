//! Dormand–Prince 5(4) with PI step control and quartic dense output.

use super::trajectory::{Segment, Status, Trajectory};
use super::OdeSystem;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Any state entry above this in magnitude ends the run with `BlowUp`.
    pub blow_up: f64,
    pub h0: Option<f64>,
    pub h_max: Option<f64>,
    pub max_steps: usize,
    /// Stop at the first strict sign change of this state entry.
    pub stop_on_zero: Option<usize>,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            blow_up: 1e8,
            h0: None,
            h_max: None,
            max_steps: 5_000_000,
            stop_on_zero: None,
        }
    }
}

impl IntegrateOptions {
    pub fn tol(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }
}

/// A failed run together with everything integrated before the failure.
#[derive(Debug, Clone)]
pub struct IntegrateError {
    pub error: Error,
    pub partial: Box<Trajectory>,
}

impl From<IntegrateError> for Error {
    fn from(e: IntegrateError) -> Self {
        e.error
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

fn err_norm(y0: &[f64], y1: &[f64], e: &[f64], o: &IntegrateOptions) -> f64 {
    let mut acc = 0.0;
    for i in 0..y0.len() {
        let sc = o.abs_tol + o.rel_tol * y0[i].abs().max(y1[i].abs());
        acc += (e[i] / sc).powi(2);
    }
    (acc / y0.len() as f64).sqrt()
}

fn initial_step(
    sys: &dyn OdeSystem,
    t0: f64,
    y0: &[f64],
    f0: &[f64],
    dir: f64,
    span: f64,
    o: &IntegrateOptions,
) -> Result<f64> {
    let dim = y0.len();
    let sc: Vec<f64> = y0.iter().map(|v| o.abs_tol + o.rel_tol * v.abs()).collect();
    let d0 = (y0
        .iter()
        .zip(&sc)
        .map(|(v, s)| (v / s).powi(2))
        .sum::<f64>()
        / dim as f64)
        .sqrt();
    let d1 = (f0
        .iter()
        .zip(&sc)
        .map(|(v, s)| (v / s).powi(2))
        .sum::<f64>()
        / dim as f64)
        .sqrt();
    let mut h = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    h = h.min(span);
    let y1: Vec<f64> = (0..dim).map(|i| y0[i] + dir * h * f0[i]).collect();
    let mut f1 = vec![0.0; dim];
    sys.rhs(t0 + dir * h, &y1, &mut f1)?;
    let d2 = (0..dim)
        .map(|i| ((f1[i] - f0[i]) / sc[i]).powi(2))
        .sum::<f64>()
        .sqrt()
        / (dim as f64).sqrt()
        / h;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    Ok((100.0 * h).min(h1).min(span))
}

/// Integrates `sys` from `(t0, y0)` to `t1` (either direction).
pub fn integrate(
    sys: &dyn OdeSystem,
    t0: f64,
    y0: &[f64],
    t1: f64,
    o: &IntegrateOptions,
) -> std::result::Result<Trajectory, IntegrateError> {
    let dim = sys.dim();
    let mut traj = Trajectory::new(dim, t0, y0.to_vec(), o.rel_tol, o.abs_tol);
    let fail = |traj: Trajectory, error: Error| IntegrateError {
        error,
        partial: Box::new(traj),
    };
    if !(o.rel_tol > 0.0 && o.abs_tol > 0.0) {
        return Err(fail(
            traj,
            Error::Domain("tolerances must be positive".into()),
        ));
    }
    if y0.len() != dim {
        return Err(fail(
            traj,
            Error::Domain(format!("state has length {}, expected {dim}", y0.len())),
        ));
    }
    if t1 == t0 {
        return Err(fail(traj, Error::Domain("empty time interval".into())));
    }
    let dir = (t1 - t0).signum();
    let span = (t1 - t0).abs();
    let h_min = 1e-14 * span;
    let h_max = o.h_max.unwrap_or(span).min(span);

    let mut f0 = vec![0.0; dim];
    if let Err(e) = sys.rhs(t0, y0, &mut f0) {
        return Err(fail(traj, e));
    }
    traj.stats.rhs_evals += 1;
    let mut h = match o.h0 {
        Some(h) => h.abs().min(h_max),
        None => match initial_step(sys, t0, y0, &f0, dir, span, o) {
            Ok(h) => h.min(h_max),
            Err(e) => return Err(fail(traj, e)),
        },
    };
    traj.stats.rhs_evals += 1;

    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; dim]; 7];
    k[0].copy_from_slice(&f0);
    let mut tmp = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];
    let mut err = vec![0.0; dim];
    let mut facold: f64 = 1e-4;
    let beta = 0.04;
    let expo1 = 0.2 - beta * 0.75;
    let safe = 0.9;
    let mut last_rejected = false;

    loop {
        if traj.stats.steps >= o.max_steps {
            traj.status = Status::StepUnderflow;
            return Err(fail(
                traj,
                Error::Domain(format!("step budget {} exhausted at t = {t}", o.max_steps)),
            ));
        }
        let remaining = (t1 - t) * dir;
        if remaining <= 0.0 {
            break;
        }
        let mut last = false;
        if h >= remaining * (1.0 - 1e-12) {
            h = remaining;
            last = true;
        }
        if h < h_min && !last {
            traj.status = Status::StepUnderflow;
            return Err(fail(traj, Error::StepUnderflow { t, h }));
        }
        let hs = dir * h;
        let stages: [(f64, &[f64]); 6] = [
            (C2, &[A21]),
            (C3, &[A31, A32]),
            (C4, &[A41, A42, A43]),
            (C5, &[A51, A52, A53, A54]),
            (1.0, &[A61, A62, A63, A64, A65]),
            (1.0, &[A71, 0.0, A73, A74, A75, A76]),
        ];
        let mut ok = true;
        for (s, (c, a)) in stages.iter().enumerate() {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, aj) in a.iter().enumerate() {
                    acc += aj * k[j][i];
                }
                tmp[i] = y[i] + hs * acc;
            }
            if s == 5 {
                y_new.copy_from_slice(&tmp);
            }
            if let Err(e) = sys.rhs(t + c * hs, &tmp, &mut k[s + 1]) {
                match e {
                    Error::NonFinite { .. } => {
                        ok = false;
                        break;
                    }
                    other => return Err(fail(traj, other)),
                }
            }
        }
        traj.stats.rhs_evals += 6;
        let en = if ok {
            for i in 0..dim {
                err[i] = hs
                    * (E1 * k[0][i]
                        + E3 * k[2][i]
                        + E4 * k[3][i]
                        + E5 * k[4][i]
                        + E6 * k[5][i]
                        + E7 * k[6][i]);
            }
            err_norm(&y, &y_new, &err, o)
        } else {
            f64::INFINITY
        };
        if !en.is_finite() || en > 1.0 {
            traj.stats.rejects += 1;
            let fac11 = if en.is_finite() { en.powf(expo1) } else { 10.0 };
            h /= (fac11 / safe).min(10.0);
            last_rejected = true;
            if h < h_min {
                traj.status = Status::StepUnderflow;
                return Err(fail(traj, Error::StepUnderflow { t, h }));
            }
            continue;
        }
        // accepted
        let mut coef = vec![0.0; 5 * dim];
        for i in 0..dim {
            let a = y[i];
            let b = y_new[i] - y[i];
            let c = hs * k[0][i] - b;
            let d = b - hs * k[6][i] - c;
            let e = hs
                * (D1 * k[0][i]
                    + D3 * k[2][i]
                    + D4 * k[3][i]
                    + D5 * k[4][i]
                    + D6 * k[5][i]
                    + D7 * k[6][i]);
            coef[i] = a;
            coef[dim + i] = b + c;
            coef[2 * dim + i] = -c + d + e;
            coef[3 * dim + i] = -d - 2.0 * e;
            coef[4 * dim + i] = e;
        }
        let t_new = if last { t1 } else { t + hs };
        traj.push(
            Segment {
                t0: t,
                h: t_new - t,
                coef,
            },
            t_new,
            y_new.clone(),
        );
        traj.stats.steps += 1;
        t = t_new;
        y.copy_from_slice(&y_new);
        let k6 = k[6].clone();
        k[0].copy_from_slice(&k6);

        if y.iter().any(|v| v.abs() > o.blow_up) {
            traj.status = Status::BlowUp;
            return Ok(traj);
        }
        if let Some(idx) = o.stop_on_zero {
            let n = traj.len();
            let prev = traj.y[n - 2][idx];
            let cur = traj.y[n - 1][idx];
            let crossed = if n == 2 && prev == 0.0 {
                traj.first_zero(idx).is_some()
            } else {
                prev * cur < 0.0 || (cur == 0.0 && prev != 0.0)
            };
            if crossed {
                traj.status = Status::Event;
                return Ok(traj);
            }
        }
        if last {
            break;
        }
        let fac11 = en.powf(expo1);
        let fac = (fac11 / facold.powf(beta) / safe).clamp(0.1, 5.0);
        let mut h_new = h / fac;
        if last_rejected {
            h_new = h_new.min(h);
        }
        facold = en.max(1e-4);
        last_rejected = false;
        h = h_new.min(h_max);
    }
    Ok(traj)
}

/// Convenience wrapper returning only the error on failure.
pub fn integrate_simple(
    sys: &dyn OdeSystem,
    t0: f64,
    y0: &[f64],
    t1: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Trajectory> {
    if !(rel_tol > 0.0 && abs_tol > 0.0) {
        return domain("tolerances must be positive");
    }
    Ok(integrate(
        sys,
        t0,
        y0,
        t1,
        &IntegrateOptions::tol(rel_tol, abs_tol),
    )?)
}
