//! Truncated Taylor series of degree 4, used wherever exact derivatives of a
//! closed-form expression are needed (coefficient assembly, residuals).

use std::ops::{Add, Div, Mul, Neg, Sub};

pub const DEG: usize = 4;

/// `c[k]` is the k-th Taylor coefficient, `f^{(k)}(x0)/k!`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub c: [f64; DEG + 1],
}

const FACT: [f64; DEG + 1] = [1.0, 1.0, 2.0, 6.0, 24.0];

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; DEG + 1];
        c[0] = v;
        Self { c }
    }

    /// The independent variable at `x0`.
    pub fn var(x0: f64) -> Self {
        let mut c = [0.0; DEG + 1];
        c[0] = x0;
        c[1] = 1.0;
        Self { c }
    }

    pub fn from_derivs(d: [f64; DEG + 1]) -> Self {
        let mut c = d;
        for (k, v) in c.iter_mut().enumerate() {
            *v /= FACT[k];
        }
        Self { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `f^{(k)}(x0)`
    pub fn deriv(&self, k: usize) -> f64 {
        self.c[k] * FACT[k]
    }

    pub fn derivs(&self) -> [f64; DEG + 1] {
        std::array::from_fn(|k| self.deriv(k))
    }

    /// Jet of `f'`; the top coefficient is lost.
    pub fn differentiate(&self) -> Self {
        let mut c = [0.0; DEG + 1];
        for k in 0..DEG {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self { c }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            c: self.c.map(|v| v * k),
        }
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0) / *self
    }

    /// `f^p` for `f(x0) > 0`, via `(f^p)' f = p f' f^p`.
    pub fn powf(&self, p: f64) -> Self {
        let a = &self.c;
        let mut w = [0.0; DEG + 1];
        w[0] = a[0].powf(p);
        for k in 1..=DEG {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += (p * j as f64 - (k - j) as f64) * a[j] * w[k - j];
            }
            w[k] = acc / (k as f64 * a[0]);
        }
        Self { c: w }
    }

    pub fn ln(&self) -> Self {
        let a = &self.c;
        let mut w = [0.0; DEG + 1];
        w[0] = a[0].ln();
        // f (ln f)' = f'
        for k in 1..=DEG {
            let mut acc = k as f64 * a[k];
            for j in 1..k {
                acc -= j as f64 * w[j] * a[k - j];
            }
            w[k] = acc / (k as f64 * a[0]);
        }
        Self { c: w }
    }

    pub fn exp(&self) -> Self {
        let a = &self.c;
        let mut w = [0.0; DEG + 1];
        w[0] = a[0].exp();
        for k in 1..=DEG {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * a[j] * w[k - j];
            }
            w[k] = acc / k as f64;
        }
        Self { c: w }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            c: std::array::from_fn(|k| self.c[k] + o.c[k]),
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet {
            c: std::array::from_fn(|k| self.c[k] - o.c[k]),
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; DEG + 1];
        for i in 0..=DEG {
            for j in 0..=DEG - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let mut q = [0.0; DEG + 1];
        for k in 0..=DEG {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= o.c[j] * q[k - j];
            }
            q[k] = acc / o.c[0];
        }
        Jet { c: q }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, v: f64) -> Jet {
        self.c[0] += v;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, v: f64) -> Jet {
        self.scale(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn power_derivatives() {
        let x = Jet::var(2.0);
        let y = x.powf(-1.5);
        let mut expect = 2f64.powf(-1.5);
        let mut e = -1.5;
        for k in 0..=DEG {
            assert!(close(y.deriv(k), expect), "k={k}");
            expect *= e / 2.0;
            e -= 1.0;
        }
    }

    #[test]
    fn log_exp_roundtrip() {
        let x = Jet::var(0.7) * 3.0 + 1.0;
        let back = x.ln().exp();
        for k in 0..=DEG {
            assert!(close(back.c[k], x.c[k]));
        }
        let l = Jet::var(0.5).ln();
        assert!(close(l.deriv(4), -6.0 / 0.5f64.powi(4)));
    }

    #[test]
    fn quotient_rule() {
        let x = Jet::var(1.3);
        let q = (x * x + 1.0) / x;
        // x + 1/x
        assert!(close(q.deriv(1), 1.0 - 1.0 / 1.69));
        assert!(close(q.deriv(3), -6.0 / 1.3f64.powi(4)));
    }
}
