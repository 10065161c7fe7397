//! Numeric replay of the generalized change of variables
//! `u(r) = ρ(r) w(ψ(r))`: radial derivatives are expanded as
//! `∂_r^j u = Σ_ℓ c_{jℓ} ∂_t^ℓ w` and combined with the spherical weights
//! of `Δ²` to give the cylinder coefficients at a single radius.

use super::symbol::{angular_symbol, radial_symbol, Sigma};
use crate::error::{domain, Result};
use crate::jet::Jet;
use crate::poly::Poly;
use crate::rational::{qi, to_f64, Q};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainRuleMatrix {
    pub c: [[f64; 5]; 5],
}

impl ChainRuleMatrix {
    pub fn get(&self, j: usize, l: usize) -> f64 {
        self.c[j][l]
    }
}

/// Fills `c_{jℓ}` from `ρ, ρ', …, ρ⁗` and `ψ', …, ψ⁗` using the
/// closed-form decomposition of `∂_r^j`.
pub fn chain_rule_matrix(rho: [f64; 5], psi: [f64; 4]) -> ChainRuleMatrix {
    let [r0, r1, r2, r3, r4] = rho;
    let [p1, p2, p3, p4] = psi;
    let mut c = [[0.0; 5]; 5];
    c[0][0] = r0;
    c[1][0] = r1;
    c[1][1] = p1 * r0;
    c[2][0] = r2;
    c[2][1] = 2.0 * p1 * r1 + p2 * r0;
    c[2][2] = p1 * p1 * r0;
    c[3][0] = r3;
    c[3][1] = 3.0 * p1 * r2 + 3.0 * p2 * r1 + p3 * r0;
    c[3][2] = 3.0 * p1 * p1 * r1 + 3.0 * p1 * p2 * r0;
    c[3][3] = p1.powi(3) * r0;
    c[4][0] = r4;
    c[4][1] = 4.0 * p1 * r3 + 6.0 * p2 * r2 + 4.0 * p3 * r1 + p4 * r0;
    c[4][2] = 6.0 * p1 * p1 * r2 + 12.0 * p1 * p2 * r1 + (3.0 * p2 * p2 + 4.0 * p1 * p3) * r0;
    c[4][3] = 4.0 * p1.powi(3) * r1 + 6.0 * p1 * p1 * p2 * r0;
    c[4][4] = p1.powi(4) * r0;
    ChainRuleMatrix { c }
}

/// The coefficient list exactly as it appears next to the fourth-order
/// assembly. It differs from the decomposition in two places: the `ρ_r`
/// factor of `c42` reads `3ψ'' + 12ψ'ψ''` and the `ρ` factor reads
/// `3ψ'² + 4ψ'ψ'''`; the diagonal entry is labelled `c40`, so a literal
/// reading overwrites `c40` with `ψ'^4 ρ` and leaves `c44` empty.
pub fn appendix_list_matrix(rho: [f64; 5], psi: [f64; 4]) -> ChainRuleMatrix {
    let mut m = chain_rule_matrix(rho, psi);
    let [_, r1, r2, _, _] = rho;
    let [p1, p2, p3, _] = psi;
    let r0 = rho[0];
    m.c[4][2] = 6.0 * p1 * p1 * r2
        + (3.0 * p2 + 12.0 * p1 * p2) * r1
        + (3.0 * p1 * p1 + 4.0 * p1 * p3) * r0;
    m.c[4][0] = p1.powi(4) * r0;
    m.c[4][4] = 0.0;
    m
}

/// Second-order matrix as printed, whose `c10` entry reads `ρ`.
pub fn second_order_matrix_printed(rho: [f64; 3], psi: [f64; 2]) -> [[f64; 3]; 3] {
    let [r0, r1, r2] = rho;
    let [p1, p2] = psi;
    [
        [r0, 0.0, 0.0],
        [r0, p1 * r0, 0.0],
        [r2, 2.0 * p1 * r1 + p2 * r0, p1 * p1 * r0],
    ]
}

/// Weights of `r^{j-4} ∂_r^j` in the radial part of `Δ²`.
pub fn radial_weights(n: u32) -> [Q; 5] {
    let n = qi(n as i64);
    let a = (&n - qi(1)) * (&n - qi(3));
    [qi(0), -a.clone(), a, qi(2) * (&n - qi(1)), qi(1)]
}

/// Weights of `r^{j-4} ∂_r^j Δσ`; the `Δσ²` term carries `r^{-4}`.
pub fn angular_weights(n: u32) -> [Q; 3] {
    let n = n as i64;
    [qi(-2 * (n - 4)), qi(2 * (n - 3)), qi(2)]
}

/// Radial weights in the order they are listed with the assembly
/// (`N41 = 2(n-1)`, `N42 = (n-1)(n-3)`, `N43 = -(n-1)(n-3)`).
pub fn appendix_radial_weights(n: u32) -> [Q; 5] {
    let n = qi(n as i64);
    let a = (&n - qi(1)) * (&n - qi(3));
    [qi(0), qi(2) * (&n - qi(1)), a.clone(), -a, qi(1)]
}

/// `Σ_j w_j (β)_j` with the falling factorial `(β)_j`: the symbol of
/// `Σ_j w_j r^j ∂_r^j` on `r^β`.
pub fn weights_symbol(w: &[Q]) -> Poly {
    let beta = Poly::from_i64(&[0, 1]);
    let mut falling = Poly::constant(qi(1));
    let mut out = Poly::zero();
    for (j, wj) in w.iter().enumerate() {
        out = &out + &falling.scale(wj);
        falling = &falling * &(&beta - &Poly::constant(qi(j as i64)));
    }
    out
}

/// True when the hard-coded weights reproduce `B(β,0)` and `q1 + q2`.
pub fn weights_validate(n: u32) -> bool {
    weights_symbol(&radial_weights(n)) == radial_symbol(n)
        && weights_symbol(&angular_weights(n)) == angular_symbol(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scaling {
    /// `ρ = r^{-γ(s)}`, `ψ = -σ ln r`.
    Autonomous { s: f64, sigma: Sigma },
    /// `ρ = r^{4-n} ψ^{(4-n)/4}`, `ψ = -ln r`, for `0 < r < 1`.
    Nonautonomous,
}

/// Cylinder coefficients recovered at one radius, already divided by the
/// common scaling factor. `k[4]`, `j[2]` and `j4` should come out as 1, 2, 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylCoeffEstimate {
    pub r: f64,
    pub k: [f64; 5],
    pub j: [f64; 3],
    pub j4: f64,
}

struct Setup {
    rho: Jet,
    psi: Jet,
    factor: f64,
}

fn setup(scaling: Scaling, n: u32, r: f64, order: u32) -> Result<Setup> {
    if !(r > 0.0 && r.is_finite()) {
        return domain(format!("radius r = {r} must be positive"));
    }
    let x = Jet::var(r);
    let order_f = order as f64;
    match scaling {
        Scaling::Autonomous { s, sigma } => {
            if !(s > 1.0) {
                return domain(format!("exponent s = {s} must exceed 1"));
            }
            let g = order_f / (s - 1.0);
            Ok(Setup {
                rho: x.powf(-g),
                psi: x.ln().scale(-(sigma.value() as f64)),
                factor: r.powf(-g - order_f),
            })
        }
        Scaling::Nonautonomous => {
            if r >= 1.0 {
                return domain(format!("nonautonomous scaling needs 0 < r < 1, got {r}"));
            }
            let nf = n as f64;
            let e = (order_f - nf) / order_f;
            let psi = -x.ln();
            let rho = x.powf(order_f - nf) * psi.powf(e);
            Ok(Setup {
                rho,
                psi,
                factor: r.powf(-nf) * psi.value().powf(e),
            })
        }
    }
}

fn psi_derivs(psi: &Jet) -> [f64; 4] {
    [psi.deriv(1), psi.deriv(2), psi.deriv(3), psi.deriv(4)]
}

/// Assembles `K_{4ℓ} = Σ_j N_j r^{j-4} c_{jℓ}` and the angular analogues.
pub fn derive_cyl_coeffs_numeric(scaling: Scaling, n: u32, r: f64) -> Result<CylCoeffEstimate> {
    if n < 5 {
        return domain(format!("dimension n = {n} must be at least 5"));
    }
    let st = setup(scaling, n, r, 4)?;
    let m = chain_rule_matrix(st.rho.derivs(), psi_derivs(&st.psi));
    let nw = radial_weights(n).map(|q| to_f64(&q));
    let mw = angular_weights(n).map(|q| to_f64(&q));
    let mut k = [0.0; 5];
    for (l, kl) in k.iter_mut().enumerate() {
        *kl = (l..5)
            .map(|j| nw[j] * r.powi(j as i32 - 4) * m.c[j][l])
            .sum::<f64>()
            / st.factor;
    }
    let mut j = [0.0; 3];
    for (l, jl) in j.iter_mut().enumerate() {
        *jl = (l..3)
            .map(|i| mw[i] * r.powi(i as i32 - 4) * m.c[i][l])
            .sum::<f64>()
            / st.factor;
    }
    let j4 = r.powi(-4) * m.c[0][0] / st.factor;
    Ok(CylCoeffEstimate { r, k, j, j4 })
}

/// Second-order assembly with `N = (0, n-1, 1)` and `ρ = r^{-γ2}` or
/// `r^{2-n} ψ^{(2-n)/2}`. Returns `(K20, K21, K22)`.
pub fn derive_second_order_numeric(scaling: Scaling, n: u32, r: f64) -> Result<[f64; 3]> {
    if n < 3 {
        return domain(format!("dimension n = {n} must be at least 3"));
    }
    let st = setup(scaling, n, r, 2)?;
    let m = chain_rule_matrix(st.rho.derivs(), psi_derivs(&st.psi));
    let nw = [0.0, n as f64 - 1.0, 1.0];
    let mut k = [0.0; 3];
    for (l, kl) in k.iter_mut().enumerate() {
        *kl = (l..3)
            .map(|j| nw[j] * r.powi(j as i32 - 2) * m.c[j][l])
            .sum::<f64>()
            / st.factor;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `c_{j+1,ℓ} = c_{jℓ}' + ψ' c_{j,ℓ-1}`, carried out on jets.
    fn recursive_matrix(rho: Jet, psi: Jet) -> [[f64; 5]; 5] {
        let dpsi = psi.differentiate();
        let mut rows: Vec<Vec<Jet>> = vec![vec![rho]];
        for j in 0..4 {
            let prev = &rows[j];
            let mut next = vec![Jet::constant(0.0); j + 2];
            for (l, c) in prev.iter().enumerate() {
                next[l] = next[l] + c.differentiate();
                next[l + 1] = next[l + 1] + *c * dpsi;
            }
            rows.push(next);
        }
        let mut out = [[0.0; 5]; 5];
        for (j, row) in rows.iter().enumerate() {
            for (l, c) in row.iter().enumerate() {
                out[j][l] = c.value();
            }
        }
        out
    }

    #[test]
    fn identity_change_of_variables() {
        let m = chain_rule_matrix([1.0, 0.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]);
        for j in 0..5 {
            for l in 0..5 {
                assert_eq!(m.get(j, l), if j == l { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn power_and_log_at_unit_radius() {
        let x = Jet::var(1.0);
        let rho = x.powf(-2.0);
        let psi = -x.ln();
        let m = chain_rule_matrix(rho.derivs(), psi_derivs(&psi));
        assert_eq!(m.get(1, 1), -1.0);
        assert_eq!(m.get(1, 0), -2.0);
        let x = Jet::var(0.37);
        let psi = -x.ln();
        let rho = x.powf(-0.8);
        let m = chain_rule_matrix(rho.derivs(), psi_derivs(&psi));
        assert!((m.get(2, 2) - rho.value() / (0.37 * 0.37)).abs() < 1e-12);
    }

    #[test]
    fn decomposition_matches_recursion() {
        let x = Jet::var(0.6);
        let psi = -x.ln() + x * x;
        let rho = x.powf(-1.3) * (x + 2.0).ln();
        let direct = chain_rule_matrix(rho.derivs(), psi_derivs(&psi));
        let rec = recursive_matrix(rho, psi);
        for j in 0..5 {
            for l in 0..=j {
                let d = (direct.c[j][l] - rec[j][l]).abs();
                assert!(d <= 1e-10 * (1.0 + rec[j][l].abs()), "c{j}{l}");
            }
        }
        let app = appendix_list_matrix(rho.derivs(), psi_derivs(&psi));
        assert!((app.c[4][2] - rec[4][2]).abs() > 1e-6);
    }

    #[test]
    fn weights_reproduce_symbols() {
        for n in 5..=12 {
            assert!(weights_validate(n));
            assert_ne!(
                weights_symbol(&appendix_radial_weights(n)),
                radial_symbol(n)
            );
        }
    }

    #[test]
    fn normalization_entries() {
        let e = derive_cyl_coeffs_numeric(
            Scaling::Autonomous {
                s: 3.0,
                sigma: Sigma::Minus,
            },
            5,
            0.4,
        )
        .unwrap();
        assert!((e.k[4] - 1.0).abs() < 1e-12);
        assert!((e.j[2] - 2.0).abs() < 1e-12);
        assert!((e.j4 - 1.0).abs() < 1e-12);
        assert!(derive_cyl_coeffs_numeric(Scaling::Nonautonomous, 5, 1.5).is_err());
    }
}
