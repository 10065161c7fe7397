//! Exact univariate polynomials and linear differential operators whose
//! coefficients are polynomials in `u = 1/t`.

use crate::rational::{qi, to_f64, Q};
use num_traits::Zero;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn constant(v: Q) -> Self {
        Self::from_coeffs(vec![v])
    }

    /// `a + b x`
    pub fn linear(a: Q, b: Q) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn monomial(v: Q, k: usize) -> Self {
        let mut c = vec![Q::zero(); k + 1];
        c[k] = v;
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| qi(v)).collect())
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.c.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + to_f64(a))
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::from_coeffs(self.c.iter().map(|a| a * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * qi(k as i64))
                .collect(),
        )
    }

    /// `p(a + b x)`
    pub fn compose_linear(&self, a: &Q, b: &Q) -> Self {
        let lin = Poly::linear(a.clone(), b.clone());
        self.c.iter().rev().fold(Poly::zero(), |acc, k| {
            &(&acc * &lin) + &Poly::constant(k.clone())
        })
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }
}

/// `Σ_k a_k(u) D^k` with `D = d/dt` and `u = 1/t`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiffOp {
    a: Vec<Poly>,
}

/// `d/dt` of a polynomial in `u = 1/t`: `-u² p'(u)`.
fn dt(p: &Poly) -> Poly {
    -(&(&Poly::monomial(qi(1), 2) * &p.derivative()))
}

impl DiffOp {
    pub fn from_coeffs(mut a: Vec<Poly>) -> Self {
        while a.last().is_some_and(|p| p.is_zero()) {
            a.pop();
        }
        Self { a }
    }

    /// `D + c` for constant-in-u coefficient polynomial `c(u)`.
    pub fn d_plus(c: Poly) -> Self {
        Self::from_coeffs(vec![c, Poly::constant(qi(1))])
    }

    pub fn coeff(&self, k: usize) -> Poly {
        self.a.get(k).cloned().unwrap_or_default()
    }

    pub fn order(&self) -> Option<usize> {
        self.a.len().checked_sub(1)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::from_coeffs(self.a.iter().map(|p| p.scale(k)).collect())
    }

    /// Left multiplication by `D`.
    fn d_left(&self) -> Self {
        let mut out = vec![Poly::zero(); self.a.len() + 1];
        for (k, b) in self.a.iter().enumerate() {
            out[k] = &out[k] + &dt(b);
            out[k + 1] = &out[k + 1] + b;
        }
        Self::from_coeffs(out)
    }

    pub fn compose(&self, inner: &DiffOp) -> DiffOp {
        let mut acc = DiffOp::default();
        let mut di = inner.clone();
        for a in &self.a {
            let term = DiffOp::from_coeffs(di.a.iter().map(|b| a * b).collect());
            acc = &acc + &term;
            di = di.d_left();
        }
        acc
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, o: &DiffOp) -> DiffOp {
        let n = self.a.len().max(o.a.len());
        DiffOp::from_coeffs((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn poly_arithmetic() {
        let p = Poly::from_i64(&[1, 2, 3]);
        let q = Poly::from_i64(&[0, 1]);
        assert_eq!(&p * &q, Poly::from_i64(&[0, 1, 2, 3]));
        assert_eq!(p.eval(&qi(2)), qi(17));
        assert_eq!(p.derivative(), Poly::from_i64(&[2, 6]));
        // p(1 - x) = 1 + 2(1-x) + 3(1-x)^2 = 6 - 8x + 3x^2
        assert_eq!(
            p.compose_linear(&qi(1), &qi(-1)),
            Poly::from_i64(&[6, -8, 3])
        );
    }

    #[test]
    fn operator_composition_respects_leibniz() {
        // D ∘ (u ·) = u D - u²
        let mult_u = DiffOp::from_coeffs(vec![Poly::monomial(qi(1), 1)]);
        let d = DiffOp::d_plus(Poly::zero());
        let c = d.compose(&mult_u);
        assert_eq!(c.coeff(1), Poly::monomial(qi(1), 1));
        assert_eq!(c.coeff(0), Poly::monomial(qi(-1), 2));
        // (D + a u) ∘ (D + a u) applied to t^a: with a = 1/2, (D + u/2) = t^{-1/2} D t^{1/2}
        let a = qf(1, 2);
        let op = DiffOp::d_plus(Poly::monomial(a.clone(), 1));
        let sq = op.compose(&op);
        assert_eq!(sq.coeff(2), Poly::constant(qi(1)));
        assert_eq!(sq.coeff(1), Poly::monomial(qi(1), 1));
        // u²(a² - a) = -u²/4
        assert_eq!(sq.coeff(0), Poly::monomial(qf(-1, 4), 2));
    }
}
