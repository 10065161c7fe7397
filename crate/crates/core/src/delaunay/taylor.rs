//! Double-double Taylor integration of `v⁗ = c v^α - K2 v″ - K0 v`.

use twofloat::TwoFloat;

pub(crate) type DD = TwoFloat;

pub(crate) fn dd(x: f64) -> DD {
    TwoFloat::from(x)
}

/// `x^{p/q}` for `x > 0` by Newton on `y^q = x^p`.
pub(crate) fn rational_pow(x: DD, p: i32, q: i32) -> DD {
    let xp = x.powi(p);
    let mut y = dd(x.hi().powf(p as f64 / q as f64));
    for _ in 0..3 {
        let yq1 = y.powi(q - 1);
        y -= (yq1 * y - xp) / (yq1 * dd(q as f64));
    }
    y
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct CriticalField {
    pub c: DD,
    pub k0: DD,
    pub k2: DD,
    /// `α = p/q`
    pub p: i32,
    pub q: i32,
}

pub(crate) const ORDER: usize = 32;

impl CriticalField {
    /// Taylor coefficients `a_k = v^{(k)}(t)/k!` at a state.
    pub fn series(&self, y: &[DD; 4]) -> Option<[DD; ORDER + 1]> {
        if !(y[0].hi() > 0.0) {
            return None;
        }
        let mut a = [dd(0.0); ORDER + 1];
        a[0] = y[0];
        a[1] = y[1];
        a[2] = y[2] / 2.0;
        a[3] = y[3] / 6.0;
        let mut w = [dd(0.0); ORDER + 1];
        let alpha = dd(self.p as f64) / dd(self.q as f64);
        w[0] = rational_pow(y[0], self.p, self.q);
        let inv0 = a[0].recip();
        for k in 0..=ORDER - 4 {
            if k > 0 {
                let mut acc = dd(0.0);
                for j in 1..=k {
                    acc += (alpha * dd(j as f64) - dd((k - j) as f64)) * a[j] * w[k - j];
                }
                w[k] = acc * inv0 / dd(k as f64);
            }
            let kf = k as f64;
            let num =
                self.c * w[k] - self.k2 * dd((kf + 2.0) * (kf + 1.0)) * a[k + 2] - self.k0 * a[k];
            a[k + 4] = num / dd((kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0));
        }
        Some(a)
    }
}

/// Step bounded by the decay of the last coefficients.
pub(crate) fn step_size(a: &[DD; ORDER + 1]) -> f64 {
    let scale = a[0].hi().abs().max(1.0);
    let eps = 1e-33 * scale;
    let mut h = f64::INFINITY;
    for k in [ORDER - 1, ORDER] {
        let m = a[k].hi().abs();
        if m > 0.0 {
            h = h.min((eps / m).powf(1.0 / k as f64));
        }
    }
    if h.is_finite() {
        0.9 * h
    } else {
        0.5
    }
}

/// `(v, v′, v″, v‴)` at offset `h` from the series.
pub(crate) fn eval_state(a: &[DD; ORDER + 1], h: DD) -> [DD; 4] {
    let mut out = [dd(0.0); 4];
    for (d, o) in out.iter_mut().enumerate() {
        let mut acc = dd(0.0);
        for k in (d..=ORDER).rev() {
            let f: f64 = ((k - d + 1)..=k).map(|m| m as f64).product();
            acc = acc * h + a[k] * dd(f);
        }
        *o = acc;
    }
    out
}

/// Value of derivative order `d` only.
pub(crate) fn eval_deriv(a: &[DD; ORDER + 1], h: DD, d: usize) -> DD {
    let mut acc = dd(0.0);
    for k in (d..=ORDER).rev() {
        let f: f64 = ((k - d + 1)..=k).map(|m| m as f64).product();
        acc = acc * h + a[k] * dd(f);
    }
    acc
}
