//! Exact derivation of the `t`-dependent coefficients.
//!
//! With `t = -ln r`, the radial Laplacian on a mode is
//! `Δ = e^{2t}(D² - (n-2)D - ν)`, `D = d/dt`, and pulling an exponential
//! through shifts `D → D + β`. Writing `U = e^{(n-4)t} t^α W` with
//! `α = (4-n)/4` and dividing by `e^{nt} t^α` leaves
//! `(X₂² - (n-2)X₂ - ν)(X₀² - (n-2)X₀ - ν)` where `X_β = D + β + α/t`.
//! All coefficients are polynomials in `1/t` with rational entries.

use super::printed::NonautonomousCoefficients;
use crate::error::{domain, Result};
use crate::poly::{DiffOp, Poly};
use crate::rational::{qf, qi, Q};
use num_traits::One;

fn shifted_laplacian(n: u32, beta: i64, alpha: &Q) -> DiffOp {
    let x = DiffOp::d_plus(Poly::linear(qi(beta), alpha.clone()));
    let x2 = x.compose(&x);
    &x2 + &x.scale(&qi(-(n as i64 - 2)))
}

/// Full derived operator pieces: `K̃` (order-4 operator) and the `-ν` part.
pub struct DerivedNonautonomous {
    pub radial: DiffOp,
    pub angular: DiffOp,
}

pub fn derive_nonautonomous_ops(n: u32) -> Result<DerivedNonautonomous> {
    if n < 5 {
        return domain(format!("dimension n = {n} must be at least 5"));
    }
    let alpha = qf(4 - n as i64, 4);
    let outer = shifted_laplacian(n, n as i64 - 2, &alpha);
    let inner = shifted_laplacian(n, n as i64 - 4, &alpha);
    Ok(DerivedNonautonomous {
        radial: outer.compose(&inner),
        angular: &outer + &inner,
    })
}

/// Oracle values of `K̃0..K̃3, J̃0, J̃1` in the same layout as the printed ones.
pub fn derived_nonautonomous(n: u32) -> Result<NonautonomousCoefficients> {
    let ops = derive_nonautonomous_ops(n)?;
    debug_assert_eq!(ops.radial.coeff(4), Poly::constant(Q::one()));
    debug_assert_eq!(ops.angular.coeff(2), Poly::constant(qi(2)));
    Ok(NonautonomousCoefficients {
        n,
        k: [0, 1, 2, 3].map(|i| ops.radial.coeff(i)),
        j: [0, 1].map(|i| ops.angular.coeff(i)),
    })
}

/// Oracle `K̃20, K̃21` for `U = e^{(n-2)t} t^{(2-n)/2} W`.
pub fn derived_second_order_nonautonomous(n: u32) -> Result<(Poly, Poly)> {
    if n < 3 {
        return domain(format!("dimension n = {n} must be at least 3"));
    }
    let alpha = qf(2 - n as i64, 2);
    let op = shifted_laplacian(n, n as i64 - 2, &alpha);
    Ok((op.coeff(0), op.coeff(1)))
}

/// `lim t K̃0(t)` from the oracle: `(n-4)²(n-2)/2`.
pub fn derived_hat_k0(n: u32) -> Result<Q> {
    Ok(derived_nonautonomous(n)?.hat_k0())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::printed::{nonautonomous_coeffs, second_order_nonautonomous_printed};

    #[test]
    fn constant_terms_vanish() {
        // K̃0 has no t-independent part: the zeroth coefficient is K0(n, 2_**) = 0.
        for n in 5..=12 {
            assert_eq!(
                derived_nonautonomous(n).unwrap().k[0].coeff(0),
                Q::from_integer(0.into())
            );
        }
    }

    #[test]
    fn derived_limit_constant() {
        assert_eq!(derived_hat_k0(5).unwrap(), qf(3, 2));
        assert_eq!(derived_hat_k0(8).unwrap(), qi(48));
    }

    #[test]
    fn agreeing_entries() {
        for n in 5..=12 {
            let d = derived_nonautonomous(n).unwrap();
            let p = nonautonomous_coeffs(n).unwrap();
            assert_eq!(d.k[2], p.k[2]);
            assert_eq!(d.j[0], p.j[0]);
            assert_eq!(d.j[1], p.j[1]);
        }
    }

    #[test]
    fn second_order_nonautonomous_matches() {
        for n in 3..=12 {
            let (k20, k21) = derived_second_order_nonautonomous(n).unwrap();
            let (p20, p21) = second_order_nonautonomous_printed(n);
            assert_eq!(k20, p20);
            assert_eq!(k21, p21);
        }
    }
}
