use super::{radial_bilaplacian, radial_bilaplacian_terms, RadialProfile};
use crate::coefficients::symbol::{char_symbol, Sigma};
use crate::coefficients::{derived_hat_k0, nonautonomous_coeffs, theorem_hat_k0};
use crate::error::{domain, Error, Result};
use crate::jet::Jet;
use crate::params::Params;
use crate::rational::{fmt_q, to_f64};
use num_traits::Signed;
use serde::Serialize;

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// `(2μ/(1+μ²|x-x0|²))^{(n-4)/2}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bubble {
    pub x0: Vec<f64>,
    pub mu: f64,
    pub n: u32,
}

impl Bubble {
    pub fn new(x0: Vec<f64>, mu: f64, n: u32) -> Result<Self> {
        if !(mu > 0.0) {
            return domain(format!("bubble scale mu = {mu} must be positive"));
        }
        if n < 5 {
            return domain(format!("dimension n = {n} must be at least 5"));
        }
        Ok(Self { x0, mu, n })
    }

    pub fn radial(&self, r: f64) -> f64 {
        let e = (self.n as f64 - 4.0) / 2.0;
        (2.0 * self.mu / (1.0 + self.mu * self.mu * r * r)).powf(e)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.radial(dist(x, &self.x0))
    }

    pub fn profile(&self) -> RadialProfile {
        let (mu, e) = (self.mu, (self.n as f64 - 4.0) / 2.0);
        let b = self.clone();
        RadialProfile::with_exact(
            format!("bubble(n={}, mu={mu})", self.n),
            move |r| b.radial(r),
            move |r| {
                let x = Jet::var(r);
                ((x * x * (mu * mu) + 1.0).recip() * (2.0 * mu))
                    .powf(e)
                    .derivs()
            },
        )
    }
}

/// `c(n)` with `Δ²u = c(n) u^{2**-1}` for bubbles, measured at three radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BubbleConstant {
    pub n: u32,
    pub c: f64,
    pub radii: [f64; 3],
    pub samples: [f64; 3],
    /// Largest relative deviation among the samples.
    pub spread: f64,
}

pub fn bubble_constant(n: u32) -> Result<BubbleConstant> {
    let b = Bubble::new(vec![0.0; n as usize], 1.0, n)?;
    let prof = b.profile();
    let q = (n as f64 + 4.0) / (n as f64 - 4.0);
    let radii = [0.5, 1.0, 2.0];
    let samples = radii.map(|r| {
        let d = prof.derivs(r);
        radial_bilaplacian(n, r, &d) / d[0].powf(q)
    });
    let c = samples.iter().sum::<f64>() / 3.0;
    let spread = samples
        .iter()
        .map(|v| (v - c).abs() / c.abs())
        .fold(0.0, f64::max);
    if spread > 1e-9 {
        return Err(Error::Domain(format!(
            "bubble residual ratios disagree (spread {spread:e})"
        )));
    }
    Ok(BubbleConstant {
        n,
        c,
        radii,
        samples,
        spread,
    })
}

/// `n(n-4)(n²-4)/16`, the value the measured constant is compared with.
pub fn bubble_constant_predicted(n: u32) -> f64 {
    let nf = n as f64;
    nf * (nf - 4.0) * (nf * nf - 4.0) / 16.0
}

/// `Λ K0^{1/(s-1)} |x|^{-γ(s)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularPower {
    pub lambda: Vec<f64>,
    pub n: u32,
    pub s: f64,
    pub gamma: f64,
    pub k0: f64,
    pub amplitude: f64,
}

impl SingularPower {
    pub fn new(lambda: Vec<f64>, params: &Params, sigma: Sigma) -> Result<Self> {
        let norm = lambda.iter().map(|x| x * x).sum::<f64>().sqrt();
        if lambda.iter().any(|x| *x < 0.0) || (norm - 1.0).abs() > 1e-12 {
            return domain("direction must be a unit vector with nonnegative entries");
        }
        let k0 = char_symbol(params, sigma)?.coefficients().k0;
        if !k0.is_positive() {
            let e = params.exponents();
            return domain(format!(
                "K0 = {} is not positive; a singular power solution needs {} < s < {}",
                fmt_q(&k0),
                fmt_q(&e.lower),
                fmt_q(&e.critical())
            ));
        }
        let s = params.s_f64();
        let k0 = to_f64(&k0);
        Ok(Self {
            lambda,
            n: params.n,
            s,
            gamma: 4.0 / (s - 1.0),
            k0,
            amplitude: k0.powf(1.0 / (s - 1.0)),
        })
    }

    pub fn radial(&self, r: f64) -> f64 {
        self.amplitude * r.powf(-self.gamma)
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let u = self.radial(r);
        self.lambda.iter().map(|l| l * u).collect()
    }

    pub fn profile(&self) -> RadialProfile {
        let (a, g) = (self.amplitude, self.gamma);
        RadialProfile::with_exact(
            format!("singular_power(n={}, s={})", self.n, self.s),
            move |r| a * r.powf(-g),
            move |r| (Jet::var(r).powf(-g) * a).derivs(),
        )
    }

    /// Per-component `|Δ²u_i - |U|^{s-1}u_i| / |U|^{s-1}|u_i|` (zero entries skipped).
    pub fn residual(&self, r: f64) -> Result<Vec<f64>> {
        if !(1e-8..=1e8).contains(&r) {
            return domain(format!(
                "radius {r} outside the sampling window [1e-8, 1e8]"
            ));
        }
        let d = self.profile().derivs(r);
        let lap = radial_bilaplacian(self.n, r, &d);
        let nrm = d[0];
        Ok(self
            .lambda
            .iter()
            .map(|l| {
                let rhs = nrm.powf(self.s - 1.0) * l * d[0];
                if rhs == 0.0 {
                    0.0
                } else {
                    (l * lap - rhs).abs() / rhs.abs()
                }
            })
            .collect())
    }
}

/// `Δ²(r^{-γ})` relative to the size of its terms; used where `K0 = 0` and
/// the power solution degenerates to the zero amplitude.
pub fn kernel_residual(n: u32, s: f64, r: f64) -> f64 {
    let g = 4.0 / (s - 1.0);
    let d = Jet::var(r).powf(-g).derivs();
    let (v, scale) = radial_bilaplacian_terms(n, r, &d);
    v.abs() / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HatVariant {
    /// `(n-4)(n-2)(n+4)/2` as stated with the logarithmic profile.
    Theorem,
    /// `lim t K̃0` of the printed coefficient, `(n-4)(n-2)(n+4)`.
    Formula,
    /// `lim t K̃0` from the exact operator, `(n-4)²(n-2)/2`.
    Derived,
}

impl HatVariant {
    pub fn hat_k0(self, n: u32) -> Result<f64> {
        Ok(match self {
            HatVariant::Theorem => to_f64(&theorem_hat_k0(n)),
            HatVariant::Formula => to_f64(&nonautonomous_coeffs(n)?.hat_k0()),
            HatVariant::Derived => to_f64(&derived_hat_k0(n)?),
        })
    }
}

/// `K̂0^{(n-4)/4} r^{4-n} (-ln r)^{(4-n)/4}` on `0 < r < 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvilesProfile {
    pub n: u32,
    pub variant: HatVariant,
    pub hat_k0: f64,
    pub amplitude: f64,
}

impl AvilesProfile {
    pub fn new(n: u32, variant: HatVariant) -> Result<Self> {
        let hat_k0 = variant.hat_k0(n)?;
        Ok(Self {
            n,
            variant,
            hat_k0,
            amplitude: hat_k0.powf((n as f64 - 4.0) / 4.0),
        })
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r < 1.0) {
            return domain(format!("logarithmic profile needs 0 < r < 1, got {r}"));
        }
        let e = 4.0 - self.n as f64;
        Ok(self.amplitude * r.powf(e) * (-r.ln()).powf(e / 4.0))
    }

    pub fn profile(&self) -> RadialProfile {
        let (a, e) = (self.amplitude, 4.0 - self.n as f64);
        RadialProfile::with_exact(
            format!("aviles(n={}, {:?})", self.n, self.variant),
            move |r| a * r.powf(e) * (-r.ln()).powf(e / 4.0),
            move |r| {
                let x = Jet::var(r);
                (x.powf(e) * (-x.ln()).powf(e / 4.0) * a).derivs()
            },
        )
    }
}
