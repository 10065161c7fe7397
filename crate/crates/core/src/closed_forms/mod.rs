//! Exact solutions and kernels, and their residuals under the radial `Δ²`.

pub mod fd;
mod green;
mod profiles;
mod wrapper;

pub use green::{
    green_ball, green_g1, green_g1_printed, green_h1, inversion_map, kelvin_transform, GreenValues,
};
pub use profiles::{
    bubble_constant, bubble_constant_predicted, kernel_residual, AvilesProfile, Bubble,
    BubbleConstant, HatVariant, SingularPower,
};
pub use wrapper::emden_fowler_wrapper;

use std::sync::Arc;

type ValueFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type DerivFn = Arc<dyn Fn(f64) -> [f64; 5] + Send + Sync>;

/// A positive radial function with optional exact derivatives.
#[derive(Clone)]
pub struct RadialProfile {
    pub tag: String,
    value: ValueFn,
    exact: Option<DerivFn>,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("tag", &self.tag)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl RadialProfile {
    pub fn new(tag: impl Into<String>, value: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            tag: tag.into(),
            value: Arc::new(value),
            exact: None,
        }
    }

    pub fn with_exact(
        tag: impl Into<String>,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivs: impl Fn(f64) -> [f64; 5] + Send + Sync + 'static,
    ) -> Self {
        Self {
            tag: tag.into(),
            value: Arc::new(value),
            exact: Some(Arc::new(derivs)),
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.value)(r)
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `u, u', …, u⁗` at `r`: exact when available, otherwise finite differences.
    pub fn derivs(&self, r: f64) -> [f64; 5] {
        match &self.exact {
            Some(d) => d(r),
            None => self.fd_derivs(r),
        }
    }

    pub fn fd_derivs(&self, r: f64) -> [f64; 5] {
        let f = self.value.clone();
        fd::radial_derivs_fd(&move |x| f(x), r)
    }

    /// Largest relative gap between exact and finite-difference derivatives.
    pub fn derivative_consistency(&self, r: f64) -> Option<f64> {
        let e = self.exact.as_ref()?(r);
        let d = self.fd_derivs(r);
        Some(
            e.iter()
                .zip(&d)
                .map(|(a, b)| (a - b).abs() / a.abs().max(1e-300))
                .fold(0.0, f64::max),
        )
    }

    /// Rows `(r, u, u', u'', u''', u'''')` on a log-spaced grid.
    pub fn sample_log_grid(&self, r_min: f64, r_max: f64, points: usize) -> Vec<[f64; 6]> {
        let points = points.max(2);
        let (a, b) = (r_min.ln(), r_max.ln());
        (0..points)
            .map(|i| {
                let r = (a + (b - a) * i as f64 / (points - 1) as f64).exp();
                let d = self.derivs(r);
                [r, d[0], d[1], d[2], d[3], d[4]]
            })
            .collect()
    }
}

/// Radial bi-Laplacian from `u, …, u⁗` at `r`.
pub fn radial_bilaplacian(n: u32, r: f64, d: &[f64; 5]) -> f64 {
    let (terms, _) = radial_bilaplacian_terms(n, r, d);
    terms
}

/// The bi-Laplacian together with the sum of absolute values of its terms,
/// which is the natural scale for judging cancellation.
pub fn radial_bilaplacian_terms(n: u32, r: f64, d: &[f64; 5]) -> (f64, f64) {
    let nf = n as f64;
    let a = (nf - 1.0) * (nf - 3.0);
    let t = [
        d[4],
        2.0 * (nf - 1.0) / r * d[3],
        a / (r * r) * d[2],
        -a / (r * r * r) * d[1],
    ];
    (t.iter().sum(), t.iter().map(|x| x.abs()).sum())
}

/// `|Δ²u - c u^q| / |c u^q|` at `r`.
pub fn relative_residual(profile: &RadialProfile, n: u32, c: f64, q: f64, r: f64) -> f64 {
    let d = profile.derivs(r);
    let rhs = c * d[0].powf(q);
    (radial_bilaplacian(n, r, &d) - rhs).abs() / rhs.abs()
}
