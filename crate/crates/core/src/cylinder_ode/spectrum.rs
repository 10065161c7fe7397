use crate::coefficients::symbol::{char_symbol, Sigma};
use crate::error::Result;
use crate::params::Params;
use crate::rational::{to_f64, Q};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Roots of a real polynomial, with the polynomial kept for checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Coefficients, lowest degree first.
    pub poly: Vec<f64>,
    #[serde(serialize_with = "ser_roots")]
    pub roots: Vec<Complex64>,
}

fn ser_roots<S: serde::Serializer>(r: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(r.len()))?;
    for z in r {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots by Aberth–Ehrlich iteration with a Newton polish.
pub fn poly_roots(c: &[f64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.len() > 1 && c.last() == Some(&0.0) {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<f64> = c.iter().map(|a| a / lead).collect();
    // Cauchy bound for the starting circle
    let bound = 1.0 + monic[..deg].iter().map(|a| a.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            Complex64::from_polar(
                0.5 * bound,
                2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..deg {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..5 {
            let (p, dp) = horner(&monic, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
        if zi.im.abs() <= 1e-14 * (1.0 + zi.re.abs()) {
            zi.im = 0.0;
        }
    }
    z.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
    z
}

impl Spectrum {
    pub fn of_poly(poly: Vec<f64>) -> Self {
        let roots = poly_roots(&poly);
        Self { poly, roots }
    }

    pub fn max_real_part(&self) -> f64 {
        self.roots
            .iter()
            .map(|z| z.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest coefficient deviation of `lead·Π(λ - r_i)` from the stored
    /// polynomial, relative to the largest coefficient.
    pub fn reconstruction_error(&self) -> f64 {
        let lead = *self.poly.last().unwrap_or(&1.0);
        let mut prod = vec![Complex64::new(lead, 0.0)];
        for r in &self.roots {
            let mut next = vec![Complex64::zero(); prod.len() + 1];
            for (k, a) in prod.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            prod = next;
        }
        let scale = self
            .poly
            .iter()
            .map(|a| a.abs())
            .fold(0.0, f64::max)
            .max(1e-300);
        self.poly
            .iter()
            .zip(&prod)
            .map(|(a, b)| (Complex64::new(*a, 0.0) - b).norm())
            .fold(0.0, f64::max)
            / scale
    }

    /// Roots on the imaginary axis within `tol`, as positive frequencies.
    pub fn imaginary_frequencies(&self, tol: f64) -> Vec<f64> {
        self.roots
            .iter()
            .filter(|z| z.re.abs() <= tol && z.im > tol)
            .map(|z| z.im)
            .collect()
    }
}

/// `K0^{1/(s-1)}` when `K0 > 0`.
pub fn equilibrium(params: &Params, sigma: Sigma) -> Result<Option<f64>> {
    let k0 = char_symbol(params, sigma)?.coefficients().k0;
    Ok(if k0.is_positive() {
        Some(to_f64(&k0).powf(1.0 / (params.s_f64() - 1.0)))
    } else {
        None
    })
}

/// Linearization about the nontrivial equilibrium (`P(λ) - sK0`), or about
/// zero (`P(λ)`) when `K0 ≤ 0`. The flag reports which.
pub fn linearized_spectrum(params: &Params, sigma: Sigma) -> Result<(Spectrum, bool)> {
    let sym = char_symbol(params, sigma)?;
    let k0: Q = sym.p.coeff(0);
    let nontrivial = k0.is_positive();
    let poly = if nontrivial {
        sym.linearization()
    } else {
        sym.p.clone()
    };
    let c: Vec<f64> = (0..=4).map(|k| to_f64(&poly.coeff(k))).collect();
    Ok((Spectrum::of_poly(c), nontrivial))
}
