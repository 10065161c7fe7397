//! High-order finite differences for profiles without exact derivatives.

/// Fornberg's weights for derivatives `0..=m` at `x0` on nodes `x`.
/// `w[k][j]` multiplies `f(x[j])` for the k-th derivative.
pub fn fornberg(x0: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let np = x.len();
    let mut c = vec![vec![0.0; np]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - x0;
    for i in 1..np {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - x0;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Central differences of order 8 for the derivative of order `k`.
fn central(f: &dyn Fn(f64) -> f64, r: f64, h: f64, k: usize) -> f64 {
    // 9 points reach order 8 for k ≤ 2; 11 points for k = 3, 4
    let half: i32 = if k <= 2 { 4 } else { 5 };
    let offs: Vec<f64> = (-half..=half).map(|i| i as f64).collect();
    let w = fornberg(0.0, &offs, k);
    let mut acc = 0.0;
    for (j, o) in offs.iter().enumerate() {
        if w[k][j] != 0.0 {
            acc += w[k][j] * f(r + o * h);
        }
    }
    acc / h.powi(k as i32)
}

/// Derivatives `0..=4` at `r` with `h = r ε^{1/9}` and one Richardson step.
pub fn radial_derivs_fd(f: &dyn Fn(f64) -> f64, r: f64) -> [f64; 5] {
    let h = r * f64::EPSILON.powf(1.0 / 9.0);
    let mut out = [0.0; 5];
    out[0] = f(r);
    for (k, o) in out.iter_mut().enumerate().skip(1) {
        let a = central(f, r, h, k);
        let b = central(f, r, 0.5 * h, k);
        *o = (256.0 * b - a) / 255.0;
    }
    out
}
