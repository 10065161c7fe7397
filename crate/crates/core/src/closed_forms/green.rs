use crate::error::{domain, Result};
use crate::special::sphere_area;
use serde::Serialize;

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `I(x) = x0 + (μ/|x-x0|)²(x-x0)`.
pub fn inversion_map(x0: &[f64], mu: f64, x: &[f64]) -> Result<Vec<f64>> {
    if !(mu > 0.0) {
        return domain(format!("inversion radius mu = {mu} must be positive"));
    }
    let d: Vec<f64> = x.iter().zip(x0).map(|(a, b)| a - b).collect();
    let r2 = dot(&d, &d);
    if r2 == 0.0 {
        return domain("inversion is undefined at its center");
    }
    let f = mu * mu / r2;
    Ok(x0.iter().zip(&d).map(|(c, v)| c + f * v).collect())
}

/// `x ↦ (μ/|x-x0|)^{n-4} u(I(x))`.
pub fn kelvin_transform<F>(u: F, n: u32, x0: Vec<f64>, mu: f64) -> impl Fn(&[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    move |x: &[f64]| {
        let ix = inversion_map(&x0, mu, x)?;
        let d: Vec<f64> = x.iter().zip(&x0).map(|(a, b)| a - b).collect();
        Ok((mu / norm(&d)).powi(n as i32 - 4) * u(&ix))
    }
}

fn check_ball(n: u32, x: &[f64], y: &[f64]) -> Result<()> {
    if n < 3 {
        return domain(format!("dimension n = {n} must be at least 3"));
    }
    if x.len() != n as usize || y.len() != n as usize {
        return domain(format!("points must have {n} coordinates"));
    }
    if norm(x) >= 1.0 {
        return domain("x must lie in the open unit ball");
    }
    Ok(())
}

/// Green function of `-Δ` in the unit ball,
/// `(|x-y|^{2-n} - (1 - 2x·y + |x|²|y|²)^{(2-n)/2}) / ((n-2)ω_{n-1})`.
pub fn green_g1(n: u32, x: &[f64], y: &[f64]) -> Result<f64> {
    check_ball(n, x, y)?;
    if norm(y) > 1.0 {
        return domain("y must lie in the closed unit ball");
    }
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let dxy = norm(&d);
    if dxy == 0.0 {
        return domain("G1 is singular at coincident points");
    }
    let refl2 = 1.0 - 2.0 * dot(x, y) + dot(x, x) * dot(y, y);
    let e = 2.0 - n as f64;
    Ok((dxy.powf(e) - refl2.powf(e / 2.0)) / ((n as f64 - 2.0) * sphere_area(n)))
}

/// The reflected term read literally as `|x/|x| - x|y||`.
pub fn green_g1_printed(n: u32, x: &[f64], y: &[f64]) -> Result<f64> {
    check_ball(n, x, y)?;
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let dxy = norm(&d);
    let nx = norm(x);
    if dxy == 0.0 || nx == 0.0 {
        return domain("printed G1 is singular at coincident points or x = 0");
    }
    let ny = norm(y);
    let refl: Vec<f64> = x.iter().map(|v| v / nx - v * ny).collect();
    let e = 2.0 - n as f64;
    Ok((dxy.powf(e) - norm(&refl).powf(e)) / ((n as f64 - 2.0) * sphere_area(n)))
}

/// Poisson kernel `(1-|x|²)/(ω_{n-1}|x-y|^n)` for `|y| = 1`.
pub fn green_h1(n: u32, x: &[f64], y: &[f64]) -> Result<f64> {
    check_ball(n, x, y)?;
    if (norm(y) - 1.0).abs() > 1e-12 {
        return domain("H1 needs y on the unit sphere");
    }
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    Ok((1.0 - dot(x, x)) / (sphere_area(n) * norm(&d).powi(n as i32)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GreenValues {
    /// `G1(x, y)` when `|y| < 1`.
    pub g1: Option<f64>,
    /// `H1(x, y)` when `|y| = 1`.
    pub h1: Option<f64>,
}

pub fn green_ball(n: u32, x: &[f64], y: &[f64]) -> Result<GreenValues> {
    check_ball(n, x, y)?;
    let ny = norm(y);
    if (ny - 1.0).abs() <= 1e-12 {
        Ok(GreenValues {
            g1: Some(green_g1(n, x, y)?),
            h1: Some(green_h1(n, x, y)?),
        })
    } else if ny < 1.0 {
        Ok(GreenValues {
            g1: Some(green_g1(n, x, y)?),
            h1: None,
        })
    } else {
        domain("y must lie in the closed unit ball")
    }
}
