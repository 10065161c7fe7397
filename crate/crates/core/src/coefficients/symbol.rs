//! The separated-mode symbol of the bi-Laplacian.
//!
//! On `u = r^β Y_k` with `-Δσ Y_k = ν Y_k`,
//! `Δ²u = B(β, ν) r^{β-4} Y_k` where
//! `B(β, ν) = (β(β+n-2) - ν)((β-2)(β+n-4) - ν)`.
//! Substituting `u = r^{-γ} e^{λt} Y_k` with `t = -σ ln r` gives
//! `β = -γ - σλ`, so the cylinder operator has symbol
//! `S(λ, ν) = P(λ) + ν² - (2λ² + J1 λ + J0) ν`.

use super::printed::AutonomousCoefficients;
use crate::error::Result;
use crate::params::{gamma_of, Params};
use crate::poly::Poly;
use crate::rational::{qi, Q};
use num_traits::One;
use serde::Serialize;

/// Which way the cylinder variable runs: `+1` for `t = -ln r`, `-1` for `t = ln r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sigma {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sigma {
    pub fn value(self) -> i64 {
        match self {
            Sigma::Plus => 1,
            Sigma::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sigma::Plus => Sigma::Minus,
            Sigma::Minus => Sigma::Plus,
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sigma::Plus),
            -1 => Some(Sigma::Minus),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sigma::Plus => "+1 (t = -ln r)",
            Sigma::Minus => "-1 (t = ln r)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharSymbol {
    pub n: u32,
    pub s: Q,
    pub sigma: Sigma,
    /// `P(λ) = Σ p[k] λ^k`, `p[4] = 1`
    pub p: Poly,
    /// `2λ² + J1 λ + J0`
    pub j: Poly,
}

/// `β(β+n-2)`, the radial Laplacian symbol.
pub fn lap_symbol(n: &Q, beta: &Poly) -> Poly {
    beta * &(beta + &Poly::constant(n - qi(2)))
}

/// `(β-2)(β+n-4)`, the Laplacian symbol one power down.
pub fn lap_symbol_shifted(n: &Q, beta: &Poly) -> Poly {
    &(beta - &Poly::constant(qi(2))) * &(beta + &Poly::constant(n - qi(4)))
}

/// `B(β, 0)` as a polynomial in `β`.
pub fn radial_symbol(n: u32) -> Poly {
    let nq = qi(n as i64);
    let beta = Poly::from_i64(&[0, 1]);
    &lap_symbol(&nq, &beta) * &lap_symbol_shifted(&nq, &beta)
}

/// Sum of the two Laplacian factors, the `-ν` coefficient of `B(β, ν)`.
pub fn angular_symbol(n: u32) -> Poly {
    let nq = qi(n as i64);
    let beta = Poly::from_i64(&[0, 1]);
    &lap_symbol(&nq, &beta) + &lap_symbol_shifted(&nq, &beta)
}

/// `Q(γ) = γ(γ+2)(n-2-γ)(n-4-γ) = B(-γ, 0)`.
pub fn q_of_gamma(n: u32, gamma: &Q) -> Q {
    radial_symbol(n).eval(&(-gamma))
}

pub fn char_symbol(params: &Params, sigma: Sigma) -> Result<CharSymbol> {
    char_symbol_raw(params.n, &params.s, sigma)
}

pub fn char_symbol_raw(n: u32, s: &Q, sigma: Sigma) -> Result<CharSymbol> {
    if *s == Q::one() {
        return crate::error::domain("s = 1 has no Fowler exponent");
    }
    let nq = qi(n as i64);
    let g = gamma_of(s);
    let beta = Poly::linear(-g, qi(-sigma.value()));
    let q1 = lap_symbol(&nq, &beta);
    let q2 = lap_symbol_shifted(&nq, &beta);
    Ok(CharSymbol {
        n,
        s: s.clone(),
        sigma,
        p: &q1 * &q2,
        j: &q1 + &q2,
    })
}

impl CharSymbol {
    pub fn eval(&self, lambda: &Q, nu: &Q) -> Q {
        self.p.eval(lambda) + nu * nu - self.j.eval(lambda) * nu
    }

    pub fn coefficients(&self) -> AutonomousCoefficients {
        AutonomousCoefficients {
            k0: self.p.coeff(0),
            k1: self.p.coeff(1),
            k2: self.p.coeff(2),
            k3: self.p.coeff(3),
            j0: self.j.coeff(0),
            j1: self.j.coeff(1),
        }
    }

    /// Linearization of `v⁗ + … + K0 v = v^s` about `v* = K0^{1/(s-1)}`:
    /// `P(λ) - s K0`, since `d/dv (v^s) = s v*^{s-1} = s K0` there.
    pub fn linearization(&self) -> Poly {
        let k0 = self.p.coeff(0);
        &self.p - &Poly::constant(&self.s * k0)
    }

    pub fn is_normalized(&self) -> bool {
        self.p.coeff(4) == Q::one() && self.p.degree() == Some(4) && self.j.coeff(2) == qi(2)
    }
}

/// Second-order symbol `q(β) = β(β+n-2)` with `β = -γ2 - σλ`, `γ2 = 2/(s-1)`.
/// Returns `(K20, K21)` of `v″ + K21 v′ + K20 v`.
pub fn second_order_symbol(n: u32, s: &Q, sigma: Sigma) -> Result<(Q, Q)> {
    if *s == Q::one() {
        return crate::error::domain("s = 1 has no Fowler exponent");
    }
    let g2 = qi(2) / (s - Q::one());
    let beta = Poly::linear(-g2, qi(-sigma.value()));
    let q = lap_symbol(&qi(n as i64), &beta);
    debug_assert_eq!(q.coeff(2), Q::one());
    Ok((q.coeff(0), q.coeff(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::special_exponents;
    use crate::rational::qf;
    use num_traits::Zero;

    #[test]
    fn symbol_spot_values() {
        let p = Params::scalar(5, qi(3)).unwrap();
        let sym = char_symbol(&p, Sigma::Plus).unwrap();
        assert_eq!(sym.eval(&Q::zero(), &Q::zero()), qi(-8));
        assert!(sym.is_normalized());
        let crit = char_symbol(&Params::scalar(5, qi(9)).unwrap(), Sigma::Minus).unwrap();
        assert_eq!(crit.coefficients().j0, qf(-5, 2));
        let sub = char_symbol(&Params::scalar(5, qi(7)).unwrap(), Sigma::Minus).unwrap();
        assert_eq!(sub.coefficients().k0, qf(112, 81));
    }

    #[test]
    fn kernel_exponents_are_roots() {
        for n in 5..=9u32 {
            let b = radial_symbol(n);
            for root in [0, 2, 2 - n as i64, 4 - n as i64] {
                assert!(b.eval(&qi(root)).is_zero(), "n={n} root {root}");
            }
        }
    }

    #[test]
    fn lower_critical_magnitude_of_k1() {
        let e = special_exponents(5).unwrap();
        for sigma in [Sigma::Plus, Sigma::Minus] {
            let c = char_symbol_raw(5, &e.lower, sigma).unwrap().coefficients();
            assert_eq!(num_traits::Signed::abs(&c.k1), qi(6));
        }
    }

    #[test]
    fn second_order_critical_values() {
        for n in 3..=10u32 {
            let s = Q::from_integer((n as i64 + 2).into()) / qi(n as i64 - 2);
            let (k20, k21) = second_order_symbol(n, &s, Sigma::Plus).unwrap();
            assert_eq!(k21, Q::zero());
            assert_eq!(k20, -qi((n as i64 - 2).pow(2)) / qi(4));
        }
    }
}
