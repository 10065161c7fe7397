//! Hamiltonian energies, cylindrical Pohozaev functionals and their levels.

mod aviles;
mod levels;

pub use aviles::{
    aviles_dh_formula, aviles_hamiltonian, aviles_p_coeffs, aviles_p_coeffs_exact,
    monotonicity_check_aviles, AvilesMonotonicity, Monotonicity, PCoeffs,
};
pub use levels::{
    aviles_level_derived, aviles_level_printed, level_identity, limiting_levels, LevelIdentity,
    PohozaevLevels, ScaledPower,
};

use crate::cylinder_ode::{AutonomousSystem, Trajectory};
use crate::error::{domain, Result};
use serde::Serialize;

fn dot_k(y: &[f64], a: usize, b: usize) -> f64 {
    y.chunks_exact(4).map(|c| c[a] * c[b]).sum()
}

/// Radial Hamiltonian
/// `-(⟨V‴,V′⟩ + K3⟨V″,V′⟩) + ½(|V″|² - K2|V′|² - K0|V|²) + |V|^{s+1}/(s+1)`.
pub fn hamiltonian_radial(sys: &AutonomousSystem, y: &[f64]) -> f64 {
    let [k0, _, k2, k3] = sys.k;
    let v2 = dot_k(y, 0, 0);
    let s = sys.s;
    -(dot_k(y, 3, 1) + k3 * dot_k(y, 2, 1))
        + 0.5 * (dot_k(y, 2, 2) - k2 * dot_k(y, 1, 1) - k0 * v2)
        + sys.c * v2.sqrt().powf(s + 1.0) / (s + 1.0)
}

/// `K1|V′|² - K3|V″|²`, the derivative of the radial Hamiltonian along solutions.
pub fn dh_formula(sys: &AutonomousSystem, y: &[f64]) -> f64 {
    sys.k[1] * dot_k(y, 1, 1) - sys.k[3] * dot_k(y, 2, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergySample {
    pub t: f64,
    pub h: f64,
    /// `ω_{n-1} H`, the cylindrical Pohozaev functional on radial data.
    pub p_cyl: f64,
    pub dh_formula: f64,
    pub dh_numeric: f64,
}

/// Fourth-order centered difference of `f` at `t`.
pub(crate) fn centered_derivative(f: &dyn Fn(f64) -> Result<f64>, t: f64, d: f64) -> Result<f64> {
    Ok((-f(t + 2.0 * d)? + 8.0 * f(t + d)? - 8.0 * f(t - d)? + f(t - 2.0 * d)?) / (12.0 * d))
}

/// Energy along a trajectory of the autonomous system, sampled at the
/// stored nodes away from the ends; `dh_numeric` differences the
/// interpolated Hamiltonian with step `delta`.
pub fn pohozaev_series(
    sys: &AutonomousSystem,
    traj: &Trajectory,
    n: u32,
    delta: f64,
) -> Result<Vec<EnergySample>> {
    if traj.len() < 5 {
        return domain("trajectory has fewer than 5 samples");
    }
    let omega = crate::special::sphere_area(n);
    let (lo, hi) = {
        let (a, b) = (traj.t_start(), traj.t_end());
        (a.min(b), a.max(b))
    };
    let h_at = |t: f64| -> Result<f64> { Ok(hamiltonian_radial(sys, &traj.eval(t)?)) };
    let mut out = Vec::new();
    for (t, y) in traj.t.iter().zip(&traj.y) {
        if *t - 2.0 * delta < lo || *t + 2.0 * delta > hi {
            continue;
        }
        let h = hamiltonian_radial(sys, y);
        out.push(EnergySample {
            t: *t,
            h,
            p_cyl: omega * h,
            dh_formula: dh_formula(sys, y),
            dh_numeric: centered_derivative(&h_at, *t, delta)?,
        });
    }
    if out.is_empty() {
        return domain("trajectory too short for the difference step");
    }
    Ok(out)
}

/// Outcome of the formula-versus-numeric comparison on random data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityTrials {
    pub n: u32,
    pub s: f64,
    pub trials: usize,
    pub samples: usize,
    /// Largest `|dP_num - dP_formula| / max(1e-6, 1e-3 |dP_formula|)`; at most 1 means agreement.
    pub worst_ratio: f64,
    /// Smallest numeric `dP_cyl/dt` seen.
    pub min_dp: f64,
    /// Whether the parameters satisfy `2_** < s < 2**-1`, where monotonicity is asserted.
    pub in_range: bool,
}

impl MonotonicityTrials {
    pub fn formula_agrees(&self) -> bool {
        self.worst_ratio <= 1.0
    }

    pub fn nondecreasing(&self) -> bool {
        self.min_dp >= -1e-8
    }
}

/// Integrates `trials` seeded random states `v ∈ (0, 1]`, `v′, v″, v‴ ∈ [-1, 1]`
/// over `t ∈ [0, t_end]` (stopping early at `|y| = 10³`) and compares
/// `ω_{n-1} dH/dt` from differences with `ω_{n-1}(K1|V′|² - K3|V″|²)`.
pub fn monotonicity_trials(
    params: &crate::params::Params,
    sigma: crate::coefficients::Sigma,
    trials: usize,
    seed: u64,
    t_end: f64,
) -> Result<MonotonicityTrials> {
    use crate::cylinder_ode::{integrate, IntegrateOptions};
    use rand::{Rng, SeedableRng};
    let sys = AutonomousSystem::from_params(params, sigma)?;
    let omega = crate::special::sphere_area(params.n);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let opts = IntegrateOptions {
        blow_up: 1e3,
        ..IntegrateOptions::tol(1e-11, 1e-13)
    };
    // fast transients near the guard need a short difference step
    let delta = 3e-4;
    let (mut worst, mut min_dp, mut count) = (0.0f64, f64::INFINITY, 0usize);
    for _ in 0..trials {
        let mut y0 = Vec::with_capacity(4 * params.p);
        for _ in 0..params.p {
            y0.push(rng.gen_range(1e-3..=1.0));
            for _ in 0..3 {
                y0.push(rng.gen_range(-1.0..=1.0));
            }
        }
        let traj = match integrate(&sys, 0.0, &y0, t_end, &opts) {
            Ok(t) => t,
            Err(e) => *e.partial,
        };
        if traj.t_end() - traj.t_start() < 8.0 * delta {
            continue;
        }
        let series = pohozaev_series(&sys, &traj, params.n, delta)?;
        for e in series {
            let (num, form) = (omega * e.dh_numeric, omega * e.dh_formula);
            worst = worst.max((num - form).abs() / (1e-3 * form.abs()).max(1e-6));
            min_dp = min_dp.min(num);
            count += 1;
        }
    }
    if count == 0 {
        return domain("no trajectory survived long enough to difference");
    }
    let e = params.exponents();
    Ok(MonotonicityTrials {
        n: params.n,
        s: params.s_f64(),
        trials,
        samples: count,
        worst_ratio: worst,
        min_dp,
        in_range: params.s > e.lower && params.s < e.critical(),
    })
}
