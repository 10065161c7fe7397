use crate::coefficients::symbol::{char_symbol, Sigma};
use crate::error::{domain, Result};
use crate::params::Params;
use crate::rational::{fmt_q, qi, to_f64, Q};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// `coef · base^exp` with rational entries; the exponent is kept in
/// `[0, 1)` by moving integer parts into the coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPower {
    pub coef: Q,
    pub base: Q,
    pub exp: Q,
}

impl ScaledPower {
    pub fn new(coef: Q, base: Q, exp: Q) -> Self {
        let fl = exp.floor();
        let frac = &exp - &fl;
        let k = fl.to_integer();
        let k: i64 = (&k).try_into().unwrap_or(0);
        let coef = if base.is_zero() {
            if exp.is_zero() {
                coef
            } else {
                Q::zero()
            }
        } else {
            coef * crate::rational::powi(&base, k)
        };
        let mut out = Self {
            coef,
            base,
            exp: frac,
        };
        if out.coef.is_zero() || out.exp.is_zero() {
            out.exp = Q::zero();
            out.base = Q::one();
        }
        out
    }

    /// Exact sum when the two terms share base and fractional exponent.
    pub fn add(&self, o: &Self) -> Option<Self> {
        if self.coef.is_zero() {
            return Some(o.clone());
        }
        if o.coef.is_zero() {
            return Some(self.clone());
        }
        (self.base == o.base && self.exp == o.exp)
            .then(|| Self::new(&self.coef + &o.coef, self.base.clone(), self.exp.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coef) * to_f64(&self.base).powf(to_f64(&self.exp))
    }

    pub fn render(&self) -> String {
        if self.exp.is_zero() {
            fmt_q(&self.coef)
        } else {
            format!(
                "{}*({})^({})",
                fmt_q(&self.coef),
                fmt_q(&self.base),
                fmt_q(&self.exp)
            )
        }
    }
}

/// `H(v*, 0, 0, 0)` and `-l*(n,s)` as exact scaled powers of `K0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelIdentity {
    pub h_equilibrium: ScaledPower,
    pub minus_l_star: ScaledPower,
    pub equal: bool,
}

/// With `v*^{s-1} = K0`: `-½K0 v*² = -½ K0^{1+2/(s-1)}` and
/// `v*^{s+1}/(s+1) = K0^{(s+1)/(s-1)}/(s+1)`.
pub fn level_identity(params: &Params, sigma: Sigma) -> Result<LevelIdentity> {
    let k0 = char_symbol(params, sigma)?.coefficients().k0;
    if !k0.is_positive() {
        return domain(format!(
            "K0 = {} is not positive, no nontrivial equilibrium",
            fmt_q(&k0)
        ));
    }
    let s = &params.s;
    let m = s - Q::one();
    let e = (s + Q::one()) / &m;
    let quad = ScaledPower::new(qi(-1) / qi(2), k0.clone(), Q::one() + qi(2) / &m);
    let pot = ScaledPower::new(Q::one() / (s + Q::one()), k0.clone(), e.clone());
    let h = quad
        .add(&pot)
        .expect("both terms are powers of K0 with equal exponent");
    let minus_l = ScaledPower::new(-(&m) / (qi(2) * (s + Q::one())), k0, e);
    let equal = h == minus_l;
    Ok(LevelIdentity {
        h_equilibrium: h,
        minus_l_star: minus_l,
        equal,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PohozaevLevels {
    pub n: u32,
    pub s: String,
    /// `(s-1)/(2(s+1)) K0^{(s+1)/(s-1)}`, absent when `K0 ≤ 0`.
    pub l_star_autonomous: Option<f64>,
    pub l_star_aviles_printed: f64,
    pub l_star_aviles_derived: f64,
    /// The derived level with each `K̂0` reading: theorem, formula limit, exact operator.
    pub l_star_aviles_variants: [f64; 3],
}

/// The long closed form stated for the logarithmic regime.
pub fn aviles_level_printed(n: u32) -> f64 {
    let nf = n as f64;
    let a = 2f64.powf((nf - 8.0) / (nf - 4.0))
        * (nf - 4.0)
        * ((nf - 2.0) * (nf * nf - 16.0)).powf(2.0 * (nf - 2.0) / (nf - 4.0));
    let b = (nf - 2.0).powi(5) * (nf * nf - 16.0).powi(4);
    (a + b) / (16.0 * (nf - 2.0))
}

/// `|Λ|^{2_**+1}/(2_**+1) + K̂0|Λ|²` at `|Λ| = K̂0^{(n-4)/4}`.
pub fn aviles_level_derived(n: u32, hat_k0: f64) -> f64 {
    let nf = n as f64;
    let q = nf / (nf - 4.0) + 1.0;
    let lam = hat_k0.powf((nf - 4.0) / 4.0);
    lam.powf(q) / q + hat_k0 * lam * lam
}

pub fn limiting_levels(params: &Params, sigma: Sigma) -> Result<PohozaevLevels> {
    use crate::closed_forms::HatVariant;
    let n = params.n;
    let k0 = char_symbol(params, sigma)?.coefficients().k0;
    let s = params.s_f64();
    let l_aut = k0
        .is_positive()
        .then(|| (s - 1.0) / (2.0 * (s + 1.0)) * to_f64(&k0).powf((s + 1.0) / (s - 1.0)));
    let variants = [
        HatVariant::Theorem,
        HatVariant::Formula,
        HatVariant::Derived,
    ];
    let mut vals = [0.0; 3];
    for (v, out) in variants.iter().zip(vals.iter_mut()) {
        *out = aviles_level_derived(n, v.hat_k0(n)?);
    }
    Ok(PohozaevLevels {
        n,
        s: fmt_q(&params.s),
        l_star_autonomous: l_aut,
        l_star_aviles_printed: aviles_level_printed(n),
        l_star_aviles_derived: vals[0],
        l_star_aviles_variants: vals,
    })
}
