use crate::error::{domain, Result};
use crate::rational::{fmt_q, parse_q, qi, to_f64, Q};
use num_traits::One;
use serde::Serialize;

/// Dimension, exponent and number of components of the system
/// `Δ²u_i = |U|^{s-1} u_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub n: u32,
    pub s: Q,
    pub p: usize,
}

impl Params {
    pub fn new(n: u32, s: Q, p: usize) -> Result<Self> {
        if n < 5 {
            return domain(format!("dimension n = {n} must be at least 5"));
        }
        if s <= Q::one() {
            return domain(format!("exponent s = {} must exceed 1", fmt_q(&s)));
        }
        if p == 0 {
            return domain("component count p must be positive");
        }
        Ok(Self { n, s, p })
    }

    pub fn parse(n: u32, s: &str, p: usize) -> Result<Self> {
        Self::new(n, parse_q(s)?, p)
    }

    pub fn scalar(n: u32, s: Q) -> Result<Self> {
        Self::new(n, s, 1)
    }

    pub fn s_f64(&self) -> f64 {
        to_f64(&self.s)
    }

    pub fn nq(&self) -> Q {
        qi(self.n as i64)
    }

    /// Fowler exponent `4/(s-1)`.
    pub fn gamma(&self) -> Q {
        gamma_of(&self.s)
    }

    pub fn exponents(&self) -> SpecialExponents {
        special_exponents(self.n).expect("n validated at construction")
    }
}

pub fn gamma_of(s: &Q) -> Q {
    qi(4) / (s - Q::one())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialExponents {
    /// `2** = 2n/(n-4)`
    #[serde(serialize_with = "ser_q")]
    pub upper: Q,
    /// `2_** = n/(n-4)`
    #[serde(serialize_with = "ser_q")]
    pub lower: Q,
}

impl SpecialExponents {
    /// `2** - 1`, the critical exponent of the system.
    pub fn critical(&self) -> Q {
        &self.upper - Q::one()
    }

    pub fn gamma(&self, s: &Q) -> Q {
        gamma_of(s)
    }
}

pub fn special_exponents(n: u32) -> Result<SpecialExponents> {
    if n < 5 {
        return domain(format!("dimension n = {n} must be at least 5"));
    }
    let nq = qi(n as i64);
    let d = &nq - qi(4);
    Ok(SpecialExponents {
        upper: qi(2) * &nq / &d,
        lower: nq / d,
    })
}

/// Second-order analogues `2* = 2n/(n-2)` and `2_* = n/(n-2)`, valid for n ≥ 3.
pub fn second_order_exponents(n: u32) -> Result<(Q, Q)> {
    if n < 3 {
        return domain(format!("dimension n = {n} must be at least 3"));
    }
    let nq = qi(n as i64);
    let d = &nq - qi(2);
    Ok((qi(2) * &nq / &d, nq / d))
}

pub(crate) fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn exponents_for_small_dimensions() {
        let e5 = special_exponents(5).unwrap();
        assert_eq!(e5.upper, qi(10));
        assert_eq!(e5.lower, qi(5));
        let e6 = special_exponents(6).unwrap();
        assert_eq!((e6.upper.clone(), e6.lower.clone()), (qi(6), qi(3)));
        let e8 = special_exponents(8).unwrap();
        assert_eq!(gamma_of(&e8.lower), qi(4));
        assert!(special_exponents(4).is_err());
    }

    #[test]
    fn gamma_identities() {
        for n in 5..=16u32 {
            let e = special_exponents(n).unwrap();
            assert_eq!(e.upper, qi(2) * &e.lower);
            assert_eq!(gamma_of(&e.lower), qi(n as i64 - 4));
            assert_eq!(gamma_of(&e.critical()), qf(n as i64 - 4, 2));
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(Params::parse(5, "1", 1).is_err());
        assert!(Params::parse(4, "3", 1).is_err());
        assert!(Params::parse(5, "3", 0).is_err());
    }
}
