//! Literal transcriptions of the printed coefficient formulas.
//!
//! Nothing here is trusted: every value is compared against the oracles in
//! [`super::symbol`] and [`super::nonauto`] and the outcome goes to the ledger.

use crate::error::{domain, Result};
use crate::params::Params;
use crate::poly::Poly;
use crate::rational::{qi, to_f64, Q};
use num_traits::{One, Zero};
use serde::Serialize;

/// Constant coefficients of the autonomous cylinder operator
/// `∂⁴ + K3∂³ + K2∂² + K1∂ + K0 + Δθ² + 2∂²Δθ + J1∂Δθ + J0Δθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutonomousCoefficients {
    pub k0: Q,
    pub k1: Q,
    pub k2: Q,
    pub k3: Q,
    pub j0: Q,
    pub j1: Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AutonomousF64 {
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub j0: f64,
    pub j1: f64,
}

impl AutonomousCoefficients {
    pub fn k(&self, j: usize) -> &Q {
        match j {
            0 => &self.k0,
            1 => &self.k1,
            2 => &self.k2,
            3 => &self.k3,
            _ => panic!("K index {j} out of range"),
        }
    }

    pub fn to_f64(&self) -> AutonomousF64 {
        AutonomousF64 {
            k0: to_f64(&self.k0),
            k1: to_f64(&self.k1),
            k2: to_f64(&self.k2),
            k3: to_f64(&self.k3),
            j0: to_f64(&self.j0),
            j1: to_f64(&self.j1),
        }
    }

    /// `(name, value)` pairs in a fixed order.
    pub fn named(&self) -> [(&'static str, &Q); 6] {
        [
            ("K0", &self.k0),
            ("K1", &self.k1),
            ("K2", &self.k2),
            ("K3", &self.k3),
            ("J0", &self.j0),
            ("J1", &self.j1),
        ]
    }
}

fn m_of(s: &Q) -> Result<Q> {
    let m = s - Q::one();
    if m.is_zero() {
        return domain("s = 1 makes the coefficient formulas singular");
    }
    Ok(m)
}

/// The six printed autonomous formulas, evaluated exactly.
pub fn autonomous_coeffs(params: &Params) -> Result<AutonomousCoefficients> {
    autonomous_coeffs_raw(params.n, &params.s)
}

pub fn autonomous_coeffs_raw(n: u32, s: &Q) -> Result<AutonomousCoefficients> {
    let m = m_of(s)?;
    let n = qi(n as i64);
    let a = (&n - qi(2)) * (&n - qi(4));
    let b = &n * &n - qi(10) * &n + qi(20);
    let n4 = &n - qi(4);
    let m2 = &m * &m;
    let m3 = &m2 * &m;
    let m4 = &m3 * &m;

    let k0 = qi(8) / &m4 * (&a * &m3 + qi(2) * &b * &m2 - qi(16) * &n4 * &m + qi(32));
    let k1 = qi(-2) / &m3 * (&a * &m3 + qi(4) * &b * &m2 - qi(48) * &n4 * &m + qi(128));
    let k2 = (&b * &m2 - qi(24) * &n4 * &m + qi(96)) / &m2;
    let k3 = qi(2) / &m * (&n4 * &m - qi(8));
    let j0 = qi(-2) / &m2 * (&n4 * &m2 + qi(4) * &n4 * &m - qi(16));
    let j1 = qi(2) / &m * (&n4 * &m + qi(16));
    Ok(AutonomousCoefficients {
        k0,
        k1,
        k2,
        k3,
        j0,
        j1,
    })
}

/// The zeroth-order angular coefficient as listed with the fourth-order
/// chain-rule assembly, `J40 = 2(s-1)^{-2}[(s+1)²(s-1)² - n(s-3)(s-1)]`.
pub fn appendix_j40(n: u32, s: &Q) -> Result<Q> {
    let m = m_of(s)?;
    let n = qi(n as i64);
    let sp = s + Q::one();
    Ok(qi(2) / (&m * &m) * (&sp * &sp * &m * &m - &n * (s - qi(3)) * &m))
}

/// The printed special values at `s = 2**-1` (`critical`) and `s = 2_**`
/// (`lower`). Comparison data only.
#[derive(Debug, Clone, PartialEq)]
pub struct RemarkValues {
    pub critical: AutonomousCoefficients,
    pub lower: AutonomousCoefficients,
}

pub fn critical_and_lower_values(n: u32) -> Result<RemarkValues> {
    if n < 5 {
        return domain(format!("dimension n = {n} must be at least 5"));
    }
    let n = qi(n as i64);
    let n4 = &n - qi(4);
    let critical = AutonomousCoefficients {
        k0: &n * &n * &n4 * &n4 / qi(16),
        k1: Q::zero(),
        k2: -(&n * &n - qi(4) * &n + qi(8)) / qi(2),
        k3: Q::zero(),
        j0: -(&n * &n4) / qi(2),
        j1: Q::zero(),
    };
    let lower = AutonomousCoefficients {
        k0: Q::zero(),
        k1: qi(2) * &n4 * (&n + qi(2)),
        k2: &n * &n - qi(10) * &n + qi(20),
        k3: qi(2) * &n4,
        j0: qi(-2) * &n4,
        j1: qi(2) * &n4,
    };
    Ok(RemarkValues { critical, lower })
}

/// Coefficients that depend on `t`, stored as exact polynomials in `u = 1/t`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonautonomousCoefficients {
    pub n: u32,
    /// `K̃0..K̃3`
    pub k: [Poly; 4],
    /// `J̃0, J̃1`
    pub j: [Poly; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonautonomousValues {
    pub k: [f64; 4],
    pub j: [f64; 2],
}

impl NonautonomousCoefficients {
    pub fn eval(&self, t: f64) -> Result<NonautonomousValues> {
        if !(t > 0.0) {
            return domain(format!("nonautonomous coefficients need t > 0, got {t}"));
        }
        let u = 1.0 / t;
        Ok(NonautonomousValues {
            k: [0, 1, 2, 3].map(|i| self.k[i].eval_f64(u)),
            j: [0, 1].map(|i| self.j[i].eval_f64(u)),
        })
    }

    /// `d/dt` of each `K̃_j` at `t`.
    pub fn eval_dt(&self, t: f64) -> Result<[f64; 4]> {
        if !(t > 0.0) {
            return domain(format!("nonautonomous coefficients need t > 0, got {t}"));
        }
        let u = 1.0 / t;
        Ok([0, 1, 2, 3].map(|i| -u * u * self.k[i].derivative().eval_f64(u)))
    }

    /// `lim t K̃0(t)`, the coefficient of `u`.
    pub fn hat_k0(&self) -> Q {
        self.k[0].coeff(1)
    }

    pub fn named(&self) -> [(&'static str, &Poly); 6] {
        [
            ("K~0", &self.k[0]),
            ("K~1", &self.k[1]),
            ("K~2", &self.k[2]),
            ("K~3", &self.k[3]),
            ("J~0", &self.j[0]),
            ("J~1", &self.j[1]),
        ]
    }
}

fn upoly(c: &[Q]) -> Poly {
    Poly::from_coeffs(c.to_vec())
}

/// The six printed `t`-dependent formulas.
pub fn nonautonomous_coeffs(n: u32) -> Result<NonautonomousCoefficients> {
    if n < 5 {
        return domain(format!("dimension n = {n} must be at least 5"));
    }
    let nq = qi(n as i64);
    let n4 = &nq - qi(4);
    let n2 = &nq - qi(2);
    let b = &nq * &nq - qi(10) * &nq + qi(20);
    let z = Q::zero();

    let k0 = upoly(&[
        z.clone(),
        &n4 * &n2 * (&nq + qi(4)),
        &n4 * &nq * &b / qi(16),
        -(&n4 * &n4 * &nq * (&nq + qi(4))) / qi(32),
        &n4 * &nq * (&nq + qi(4)) * (&nq + qi(8)) / qi(256),
    ]);
    let k1 = upoly(&[
        qi(-2) * &n4 * &n2,
        &n4 * &b / qi(2),
        qi(3) * &nq * &n4 / qi(8),
        &n4 * &nq * (&nq + qi(4)) / qi(16),
    ]);
    let k2 = upoly(&[
        b.clone(),
        qi(-3) * &n4 * &n4 / qi(2),
        qi(3) * &nq * &n4 / qi(8),
    ]);
    let k3 = upoly(&[qi(2) * &n4, n4.clone()]);
    let j0 = upoly(&[qi(-2) * &n4, -(&n4 * &n4) / qi(2), &nq * &n4 / qi(8)]);
    let j1 = upoly(&[qi(2) * &n4, -n4.clone()]);
    Ok(NonautonomousCoefficients {
        n,
        k: [k0, k1, k2, k3],
        j: [j0, j1],
    })
}

/// `K̂0(n) = (n-4)(n-2)(n+4)/2` as printed with the logarithmic profile.
pub fn theorem_hat_k0(n: u32) -> Q {
    let n = qi(n as i64);
    (&n - qi(4)) * (&n - qi(2)) * (&n + qi(4)) / qi(2)
}

/// Second-order printed coefficients `K20, K21`.
pub fn second_order_printed(n: u32, s: &Q) -> Result<(Q, Q)> {
    if n < 3 {
        return domain(format!("dimension n = {n} must be at least 3"));
    }
    let m = m_of(s)?;
    let n = qi(n as i64);
    let k20 = qi(2) / (&m * &m) * (&n * &m - qi(2) * s);
    let k21 = -(s * (&n - qi(2)) + &n + qi(2)) / &m;
    Ok((k20, k21))
}

/// Printed special values `(K*20, K*21)` at `2*-1` and `(K20,*, K21,*)` at `2_*`.
pub fn second_order_remark(n: u32) -> ((Q, Q), (Q, Q)) {
    let n2 = qi(n as i64 - 2);
    ((-(&n2 * &n2) / qi(4), Q::zero()), (Q::zero(), n2))
}

/// Printed nonautonomous second-order coefficients `K̃20, K̃21` in `u = 1/t`.
pub fn second_order_nonautonomous_printed(n: u32) -> (Poly, Poly) {
    let nq = qi(n as i64);
    let n2 = &nq - qi(2);
    let k20 = upoly(&[Q::zero(), -(&n2 * &n2) / qi(2), &nq * &n2 / qi(4)]);
    let k21 = upoly(&[n2.clone(), -n2]);
    (k20, k21)
}

/// `a0 = [n(n-4)/(n²-4)]^{(n-4)/8}`, reading the printed exponent as `(n-4)/8`.
pub fn a0(n: u32) -> f64 {
    let nf = n as f64;
    (nf * (nf - 4.0) / (nf * nf - 4.0)).powf((nf - 4.0) / 8.0)
}

/// The same quantity under the literal reading `n - 4/8` of the exponent.
pub fn a0_literal(n: u32) -> f64 {
    let nf = n as f64;
    (nf * (nf - 4.0) / (nf * nf - 4.0)).powf(nf - 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn printed_values_at_spot_points() {
        let c = autonomous_coeffs(&Params::scalar(5, qi(9)).unwrap()).unwrap();
        assert_eq!(c.k0, qf(25, 16));
        assert_eq!(c.k2, qf(-13, 2));
        let c = autonomous_coeffs(&Params::scalar(5, qi(5)).unwrap()).unwrap();
        assert_eq!(c.k0, Q::zero());
        assert!(autonomous_coeffs_raw(5, &qi(1)).is_err());
    }

    #[test]
    fn appendix_j40_disagrees_with_main_text() {
        assert_eq!(appendix_j40(5, &qi(9)).unwrap(), qf(385, 2));
        let c = autonomous_coeffs_raw(5, &qi(9)).unwrap();
        assert_eq!(c.j0, qf(-5, 2));
    }

    #[test]
    fn remark_values() {
        let r = critical_and_lower_values(6).unwrap();
        assert_eq!(r.critical.k0, qi(9));
        let r = critical_and_lower_values(5).unwrap();
        assert_eq!(r.lower.k1, qi(14));
    }

    #[test]
    fn nonautonomous_spot_values() {
        let c = nonautonomous_coeffs(8).unwrap();
        let v = c.eval(1.0).unwrap();
        assert!((v.k[2] + 8.0).abs() < 1e-12);
        let c5 = nonautonomous_coeffs(5).unwrap();
        assert_eq!(c5.hat_k0(), qi(27));
        assert_eq!(theorem_hat_k0(5), qf(27, 2));
        let far = c5.eval(1e9).unwrap();
        assert!((far.k[3] - 2.0).abs() < 1e-8);
        assert!(c5.eval(0.0).is_err());
    }

    #[test]
    fn second_order_spot_value() {
        let (k20, _) = second_order_printed(4, &qi(3)).unwrap();
        assert_eq!(k20, qi(1));
    }
}
