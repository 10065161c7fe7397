//! Second-order (Laplacian) coefficient set, used to exercise the
//! chain-rule engine on a case with an independent symbol.

use super::nonauto::derived_second_order_nonautonomous;
use super::printed::{
    second_order_nonautonomous_printed, second_order_printed, second_order_remark,
};
use super::symbol::{second_order_symbol, Sigma};
use crate::error::Result;
use crate::params::second_order_exponents;
use crate::poly::Poly;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderCoefficients {
    pub n: u32,
    pub s: Q,
    /// Printed `(K20, K21)`.
    pub printed: (Q, Q),
    /// Symbol `(K20, K21)` for the requested σ.
    pub oracle: (Q, Q),
    /// Symbol values at `2*-1` and `2_*`.
    pub oracle_critical: (Q, Q),
    pub oracle_lower: (Q, Q),
    /// Printed `(K*20, K*21)` and `(K20,*, K21,*)`.
    pub remark_critical: (Q, Q),
    pub remark_lower: (Q, Q),
    pub nonautonomous_printed: (Poly, Poly),
    pub nonautonomous_derived: (Poly, Poly),
}

pub fn second_order_coeffs(n: u32, s: &Q, sigma: Sigma) -> Result<SecondOrderCoefficients> {
    let (upper, lower) = second_order_exponents(n)?;
    let crit = &upper - Q::from_integer(1.into());
    let (remark_critical, remark_lower) = second_order_remark(n);
    Ok(SecondOrderCoefficients {
        n,
        s: s.clone(),
        printed: second_order_printed(n, s)?,
        oracle: second_order_symbol(n, s, sigma)?,
        oracle_critical: second_order_symbol(n, &crit, sigma)?,
        oracle_lower: second_order_symbol(n, &lower, sigma)?,
        remark_critical,
        remark_lower,
        nonautonomous_printed: second_order_nonautonomous_printed(n),
        nonautonomous_derived: derived_second_order_nonautonomous(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use num_traits::Zero;

    #[test]
    fn critical_and_lower_special_values() {
        for n in 3..=10u32 {
            let c = second_order_coeffs(n, &qi(3), Sigma::Minus).unwrap();
            assert_eq!(c.oracle_critical, c.remark_critical);
            assert!(c.oracle_lower.0.is_zero());
        }
    }
}
