//! Periodic orbits of the critical cylinder equation, found by shooting on `v″(0)`.

mod taylor;

use crate::closed_forms::bubble_constant;
use crate::cylinder_ode::{Segment, Status, Trajectory};
use crate::error::{domain, Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use taylor::{dd, eval_deriv, eval_state, step_size, CriticalField, DD, ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CMode {
    /// `c(n)` measured from the bubble.
    Measured,
    /// `c = 1`.
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalConstants {
    pub n: u32,
    pub c_mode: CMode,
    pub c: f64,
    pub k0: f64,
    pub k2: f64,
    /// Equilibrium `(K*_0/c)^{(n-4)/8}`.
    pub a0: f64,
    /// `[n(n-4)/(n²-4)]^{(n-4)/8}`.
    pub a0_closed_form: f64,
}

impl CriticalConstants {
    pub fn new(n: u32, c_mode: CMode) -> Result<Self> {
        if n < 5 {
            return domain(format!("dimension n = {n} must be at least 5"));
        }
        let nf = n as f64;
        let c = match c_mode {
            CMode::Measured => bubble_constant(n)?.c,
            CMode::Unit => 1.0,
        };
        let k0 = nf * nf * (nf - 4.0) * (nf - 4.0) / 16.0;
        let k2 = -(nf * nf - 4.0 * nf + 8.0) / 2.0;
        Ok(Self {
            n,
            c_mode,
            c,
            k0,
            k2,
            a0: (k0 / c).powf((nf - 4.0) / 8.0),
            a0_closed_form: crate::coefficients::printed::a0(n),
        })
    }

    fn guard(&self) -> f64 {
        BLOW_UP * self.a0.max(1.0)
    }

    /// `2** - 1 = (n+4)/(n-4)`.
    pub fn exponent(&self) -> f64 {
        (self.n as f64 + 4.0) / (self.n as f64 - 4.0)
    }

    fn field(&self) -> CriticalField {
        let (p, q) = reduced(self.n as i32 + 4, self.n as i32 - 4);
        CriticalField {
            c: dd(self.c),
            k0: dd(self.k0),
            k2: dd(self.k2),
            p,
            q,
        }
    }

    /// Period `2π/ω` of the oscillatory linearization at `a0`.
    pub fn linearized_period(&self) -> f64 {
        // λ⁴ + K2λ² + K0(1 - s) = 0 at the equilibrium
        let s = self.exponent();
        let c0 = self.k0 * (1.0 - s);
        let disc = (self.k2 * self.k2 - 4.0 * c0).sqrt();
        let mu = (-self.k2 - disc) / 2.0;
        2.0 * std::f64::consts::PI / (-mu).sqrt()
    }
}

fn reduced(p: i32, q: i32) -> (i32, i32) {
    let g = num_integer::gcd(p, q);
    (p / g, q / g)
}

/// `v⁗ = c v^{2**-1} - K*_2 v″ - K*_0 v`.
pub fn critical_rhs(consts: &CriticalConstants, state: &[f64; 4]) -> Result<[f64; 4]> {
    let v = state[0];
    if v < 0.0 {
        return domain(format!("v = {v} left the positive cone"));
    }
    let nl = if v == 0.0 {
        0.0
    } else {
        consts.c * v.powf(consts.exponent())
    };
    Ok([
        state[1],
        state[2],
        state[3],
        nl - consts.k2 * state[2] - consts.k0 * v,
    ])
}

/// Outcome of one shot from `(a, 0, b, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shot {
    /// `v′` returned to zero at `t1` with `v‴(t1) = f`.
    Turn {
        t1: f64,
        f: f64,
    },
    /// `v` exceeded the guard before `v′` returned to zero.
    BlowUp {
        t: f64,
    },
    /// `v` reached zero.
    Escape {
        t: f64,
    },
    Timeout,
}

impl Shot {
    /// Sign used for bracketing; growth without a turn counts as positive.
    pub fn bracket_sign(&self) -> Option<i8> {
        match self {
            Shot::Turn { f, .. } => Some(if *f > 0.0 {
                1
            } else if *f < 0.0 {
                -1
            } else {
                0
            }),
            Shot::BlowUp { .. } => Some(1),
            _ => None,
        }
    }
}

/// Growth guard relative to `max(1, a0)`; bounded orbits stay far below it.
const BLOW_UP: f64 = 1e3;
const MAX_STEPS: usize = 200_000;
const T_MAX: f64 = 200.0;

struct DdTurn {
    t1: DD,
    f: DD,
}

enum DdShot {
    Turn(DdTurn),
    Other(Shot),
}

fn shoot_dd(field: &CriticalField, a: DD, b: DD, guard: f64) -> DdShot {
    let mut y = [a, dd(0.0), b, dd(0.0)];
    let mut t = dd(0.0);
    let mut steps = 0;
    while t.hi() < T_MAX && steps < MAX_STEPS {
        steps += 1;
        let Some(ser) = field.series(&y) else {
            return DdShot::Other(Shot::Escape { t: t.hi() });
        };
        let h = dd(step_size(&ser));
        let next = eval_state(&ser, h);
        if next[1].hi() <= 0.0 {
            let th = locate_zero(&ser, h);
            return DdShot::Turn(DdTurn {
                t1: t + th,
                f: eval_deriv(&ser, th, 3),
            });
        }
        if next[0].hi() > guard || !next[0].hi().is_finite() {
            return DdShot::Other(Shot::BlowUp { t: t.hi() });
        }
        if next[0].hi() <= 0.0 {
            return DdShot::Other(Shot::Escape { t: t.hi() });
        }
        y = next;
        t += h;
    }
    DdShot::Other(Shot::Timeout)
}

/// Zero of `v′` in `(0, h]` given `v′ > 0` just after `0` and `v′(h) ≤ 0`.
fn locate_zero(ser: &[DD; ORDER + 1], h: DD) -> DD {
    let (mut lo, mut hi) = (dd(0.0), h);
    for _ in 0..64 {
        let mid = (lo + hi) / 2.0;
        if eval_deriv(ser, mid, 1).hi() > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut th = (lo + hi) / 2.0;
    for _ in 0..3 {
        let d2 = eval_deriv(ser, th, 2);
        if d2.hi() == 0.0 {
            break;
        }
        th -= eval_deriv(ser, th, 1) / d2;
    }
    th
}

fn to_shot(s: &DdShot) -> Shot {
    match s {
        DdShot::Turn(t) => Shot::Turn {
            t1: t.t1.hi(),
            f: t.f.hi(),
        },
        DdShot::Other(o) => *o,
    }
}

/// The shooting function at one `b`.
pub fn shooting_function(consts: &CriticalConstants, a: f64, b: f64) -> Shot {
    to_shot(&shoot_dd(&consts.field(), dd(a), dd(b), consts.guard()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootingOptions {
    /// Target `|v‴(t1)|` at the accepted root.
    pub tol: f64,
    pub grid_points: usize,
    pub b_min: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            grid_points: 60,
            b_min: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShootingResult {
    pub n: u32,
    pub a: f64,
    pub b: f64,
    /// First return of `v′` to zero.
    pub t_half: f64,
    pub period: f64,
    pub energy: f64,
    /// `max |H(t) - H(0)|` over the orbit.
    pub energy_drift: f64,
    /// `|v‴(t1)|` at the accepted root.
    pub residual: f64,
    /// `max_k |y_k(T) - y_k(0)|`.
    pub periodicity_defect: f64,
    /// `max |v(t1 + τ) - v(t1 - τ)|` on sampled `τ`.
    pub symmetry_defect: f64,
    pub min_v: f64,
    #[serde(skip)]
    pub orbit: Trajectory,
}

/// Geometric sweep of the shooting function over `[b_min, 10 K*_0 a0]`.
pub fn sweep(consts: &CriticalConstants, a: f64, opts: &ShootingOptions) -> Vec<(f64, Shot)> {
    let b_max = 10.0 * consts.k0 * consts.a0;
    let m = opts.grid_points.max(2);
    (0..m)
        .into_par_iter()
        .map(|i| {
            let b = opts.b_min * (b_max / opts.b_min).powf(i as f64 / (m - 1) as f64);
            (b, shooting_function(consts, a, b))
        })
        .collect()
}

fn hamiltonian_dd(field: &CriticalField, y: &[DD; 4]) -> DD {
    let alpha1 = field.p + field.q;
    let pot = taylor::rational_pow(y[0], alpha1, field.q) * dd(field.q as f64) / dd(alpha1 as f64);
    -(y[3] * y[1])
        + (y[2] * y[2] - field.k2 * y[1] * y[1] - field.k0 * y[0] * y[0]) / 2.0
        + field.c * pot
}

/// Root `b(a)` of the shooting function and the orbit over one period.
pub fn find_b(
    consts: &CriticalConstants,
    a: f64,
    opts: &ShootingOptions,
) -> Result<ShootingResult> {
    if !(a > 0.0 && a <= consts.a0 * (1.0 + 1e-12)) {
        return domain(format!("a = {a} must lie in (0, a0 = {}]", consts.a0));
    }
    if (a - consts.a0).abs() <= 1e-12 * consts.a0 {
        return Ok(constant_orbit(consts));
    }
    let field = consts.field();
    let guard = consts.guard();
    let table = sweep(consts, a, opts);
    let bracket = table.windows(2).find_map(|w| {
        let (s0, s1) = (w[0].1.bracket_sign()?, w[1].1.bracket_sign()?);
        (s0 < 0 && s1 > 0).then_some((w[0].0, w[1].0))
    });
    let Some((lo, hi)) = bracket else {
        let diag: Vec<String> = table
            .iter()
            .map(|(b, s)| format!("{b:.3e}:{s:?}"))
            .collect();
        return Err(Error::Shooting(format!(
            "no sign change of the shooting function; sweep: {}",
            diag.join(", ")
        )));
    };
    let (mut lo, mut hi) = (dd(lo), dd(hi));
    // bisection until both ends turn
    let mut f_lo = None;
    let mut f_hi = None;
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        match shoot_dd(&field, dd(a), mid, guard) {
            DdShot::Turn(t) if t.f.hi() < 0.0 => {
                lo = mid;
                f_lo = Some(t.f);
            }
            DdShot::Turn(t) => {
                hi = mid;
                f_hi = Some(t.f);
            }
            DdShot::Other(Shot::BlowUp { .. }) => {
                hi = mid;
                f_hi = None;
            }
            DdShot::Other(o) => {
                return Err(Error::Shooting(format!(
                    "shot at b = {} ended with {o:?}",
                    mid.hi()
                )))
            }
        }
        if f_lo.is_some() && f_hi.is_some() && ((hi - lo) / hi).hi() < 1e-6 {
            break;
        }
    }
    let (Some(mut fl), Some(mut fh)) = (f_lo, f_hi) else {
        return Err(Error::Shooting(
            "bisection did not reach a two-sided bracket".into(),
        ));
    };
    // Illinois polish in double-double
    let mut best = (lo, fl);
    let mut side = 0i8;
    for _ in 0..200 {
        let x = lo - fl * (hi - lo) / (fh - fl);
        let x = if x.hi() > lo.hi() && x.hi() < hi.hi() {
            x
        } else {
            (lo + hi) / 2.0
        };
        let fx = match shoot_dd(&field, dd(a), x, guard) {
            DdShot::Turn(t) => t.f,
            DdShot::Other(o) => {
                return Err(Error::Shooting(format!("polish shot ended with {o:?}")))
            }
        };
        if fx.abs().hi() < best.1.abs().hi() {
            best = (x, fx);
        }
        if fx.hi() == 0.0 || fx.abs().hi() < 1e-28 || ((hi - lo) / x).abs().hi() < 1e-30 {
            break;
        }
        if fx.hi() < 0.0 {
            lo = x;
            fl = fx;
            if side == -1 {
                fh = fh / 2.0;
            }
            side = -1;
        } else {
            hi = x;
            fh = fx;
            if side == 1 {
                fl = fl / 2.0;
            }
            side = 1;
        }
    }
    let (b, f) = best;
    let DdShot::Turn(turn) = shoot_dd(&field, dd(a), b, guard) else {
        return Err(Error::Shooting("accepted root does not turn".into()));
    };
    if f.abs().hi() > opts.tol {
        return Err(Error::Shooting(format!(
            "|F| = {:e} above tolerance {:e}",
            f.abs().hi(),
            opts.tol
        )));
    }
    let period = turn.t1 * 2.0;
    let orbit = integrate_orbit(&field, dd(a), b, period)?;
    let res = summarize(consts, &field, a, b, turn.t1, f, orbit.0, orbit.1);
    if res.min_v < a - 1e-6 {
        return Err(Error::Shooting(format!(
            "orbit minimum {} is below a = {a}: wrong branch",
            res.min_v
        )));
    }
    Ok(res)
}

/// The equilibrium orbit at `a = a0` with the linearized period.
fn constant_orbit(consts: &CriticalConstants) -> ShootingResult {
    let field = consts.field();
    let y = [consts.a0, 0.0, 0.0, 0.0];
    let period = consts.linearized_period();
    let mut orbit = Trajectory::new(4, 0.0, y.to_vec(), 0.0, 0.0);
    let mut coef = vec![0.0; 8];
    coef[..4].copy_from_slice(&y);
    orbit.push(
        Segment {
            t0: 0.0,
            h: period,
            coef,
        },
        period,
        y.to_vec(),
    );
    let energy = hamiltonian_dd(&field, &y.map(dd)).hi();
    ShootingResult {
        n: consts.n,
        a: consts.a0,
        b: 0.0,
        t_half: period / 2.0,
        period,
        energy,
        energy_drift: 0.0,
        residual: 0.0,
        periodicity_defect: 0.0,
        symmetry_defect: 0.0,
        min_v: consts.a0,
        orbit,
    }
}

/// Taylor integration over `[0, period]`, returning the orbit and the DD energies at the nodes.
fn integrate_orbit(
    field: &CriticalField,
    a: DD,
    b: DD,
    period: DD,
) -> Result<(Trajectory, Vec<DD>)> {
    let mut y = [a, dd(0.0), b, dd(0.0)];
    let mut t = dd(0.0);
    let to64 = |y: &[DD; 4]| y.iter().map(|v| v.hi()).collect::<Vec<f64>>();
    let mut orbit = Trajectory::new(4, 0.0, to64(&y), 0.0, 0.0);
    let mut energies = vec![hamiltonian_dd(field, &y)];
    while (period - t).hi() > 0.0 {
        let ser = field.series(&y).ok_or_else(|| {
            Error::Shooting(format!("orbit left the positive cone at t = {}", t.hi()))
        })?;
        let mut h = dd(step_size(&ser));
        if (t + h - period).hi() >= 0.0 {
            h = period - t;
        }
        let hf = h.hi();
        let mut coef = vec![0.0; 4 * (ORDER + 1 - 3)];
        // Segment holds v and its first three derivatives as polynomials in θ
        let deg = ORDER - 3;
        for d in 0..4 {
            for k in 0..=deg {
                let j = k + d;
                if j > ORDER {
                    continue;
                }
                let f: f64 = ((k + 1)..=j).map(|m| m as f64).product();
                coef[k * 4 + d] = (ser[j] * dd(f)).hi() * hf.powi(k as i32);
            }
        }
        y = eval_state(&ser, h);
        t += h;
        energies.push(hamiltonian_dd(field, &y));
        orbit.push(
            Segment {
                t0: (t - h).hi(),
                h: hf,
                coef,
            },
            t.hi(),
            to64(&y),
        );
        orbit.stats.steps += 1;
    }
    orbit.status = Status::Completed;
    Ok((orbit, energies))
}

#[allow(clippy::too_many_arguments)]
fn summarize(
    consts: &CriticalConstants,
    field: &CriticalField,
    a: f64,
    b: DD,
    t1: DD,
    f: DD,
    orbit: Trajectory,
    energies: Vec<DD>,
) -> ShootingResult {
    let _ = field;
    let period = orbit.t_end();
    let end = orbit.last();
    let start = [a, 0.0, b.hi(), 0.0];
    let periodicity_defect = end
        .iter()
        .zip(&start)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let e0 = energies[0];
    let energy_drift = energies
        .iter()
        .map(|e| (*e - e0).abs().hi())
        .fold(0.0, f64::max);
    let th = t1.hi();
    let mut sym: f64 = 0.0;
    let mut min_v = f64::INFINITY;
    for i in 0..=400 {
        let tau = th * i as f64 / 400.0;
        if let (Ok(p), Ok(m)) = (
            orbit.eval((th + tau).min(period)),
            orbit.eval((th - tau).max(0.0)),
        ) {
            sym = sym.max((p[0] - m[0]).abs());
            min_v = min_v.min(p[0]).min(m[0]);
        }
    }
    let min_v = orbit.y.iter().map(|y| y[0]).fold(min_v, f64::min);
    ShootingResult {
        n: consts.n,
        a,
        b: b.hi(),
        t_half: th,
        period,
        energy: e0.hi(),
        energy_drift,
        residual: f.abs().hi(),
        periodicity_defect,
        symmetry_defect: sym,
        min_v,
        orbit,
    }
}

/// One entry of an orbit table: the result or the failure message.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitEntry {
    pub a: f64,
    pub result: Option<ShootingResult>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitTable {
    pub n: u32,
    pub entries: Vec<OrbitEntry>,
    /// Whether `T_a` is monotone in `a` over the converged entries.
    pub period_monotone: Option<bool>,
}

/// Shoot every `a` of the grid in parallel; failures are recorded per entry.
pub fn orbit_table(
    consts: &CriticalConstants,
    a_grid: &[f64],
    opts: &ShootingOptions,
) -> Result<OrbitTable> {
    if let Some(bad) = a_grid
        .iter()
        .find(|a| !(**a > 0.0 && **a <= consts.a0 * (1.0 + 1e-12)))
    {
        return domain(format!("a = {bad} outside (0, a0 = {}]", consts.a0));
    }
    let entries: Vec<OrbitEntry> = a_grid
        .par_iter()
        .map(|&a| match find_b(consts, a, opts) {
            Ok(r) => OrbitEntry {
                a,
                result: Some(r),
                error: None,
            },
            Err(e) => OrbitEntry {
                a,
                result: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let mut pts: Vec<(f64, f64)> = entries
        .iter()
        .filter_map(|e| e.result.as_ref().map(|r| (e.a, r.period)))
        .collect();
    pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let period_monotone = (pts.len() >= 2).then(|| {
        let inc = pts.windows(2).all(|w| w[1].1 >= w[0].1);
        let dec = pts.windows(2).all(|w| w[1].1 <= w[0].1);
        inc || dec
    });
    Ok(OrbitTable {
        n: consts.n,
        entries,
        period_monotone,
    })
}
