//! Sign chart of the autonomous coefficients computed from the symbol.

use super::symbol::{char_symbol, Sigma};
use crate::error::Result;
use crate::params::Params;
use crate::rational::{fmt_q, sign, Q};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignReport {
    pub n: u32,
    pub s: String,
    pub sigma: Sigma,
    /// `2_** < s < 2**-1`
    pub in_range: bool,
    pub k0: i32,
    pub k1: i32,
    pub k2: i32,
    pub k3: i32,
    pub j0: i32,
    /// `Some(K0 > 0)` inside the range; `None` outside, where nothing is asserted.
    pub k0_positive: Option<bool>,
    /// Whether the claims `K1 > 0` and `K3 < 0` hold here (inside the range only).
    pub k1_positive: Option<bool>,
    pub k3_negative: Option<bool>,
}

pub fn sign_report(params: &Params, sigma: Sigma) -> Result<SignReport> {
    let e = params.exponents();
    let s: &Q = &params.s;
    let in_range = *s > e.lower && *s < e.critical();
    let c = char_symbol(params, sigma)?.coefficients();
    let (k0, k1, k2, k3, j0) = (
        sign(&c.k0),
        sign(&c.k1),
        sign(&c.k2),
        sign(&c.k3),
        sign(&c.j0),
    );
    let when = |b: bool| in_range.then_some(b);
    Ok(SignReport {
        n: params.n,
        s: fmt_q(s),
        sigma,
        in_range,
        k0,
        k1,
        k2,
        k3,
        j0,
        k0_positive: when(k0 > 0),
        k1_positive: when(k1 > 0),
        k3_negative: when(k3 < 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn sign_spot_checks() {
        let r = sign_report(&Params::scalar(5, qi(7)).unwrap(), Sigma::Minus).unwrap();
        assert!(r.in_range);
        assert_eq!(r.k0_positive, Some(true));
        let r = sign_report(&Params::scalar(5, qi(3)).unwrap(), Sigma::Minus).unwrap();
        assert_eq!((r.k0, r.in_range, r.k0_positive), (-1, false, None));
        let r = sign_report(&Params::scalar(5, qi(5)).unwrap(), Sigma::Minus).unwrap();
        assert_eq!(r.k0, 0);
    }
}
