//! The reduced ODE systems on the cylinder and their integration.

mod dopri;
mod rhs;
mod settled;
mod spectrum;
mod trajectory;

pub use dopri::{integrate, integrate_simple, IntegrateError, IntegrateOptions};
pub use rhs::{
    autonomous_rhs, nonautonomous_rhs, AutonomousSystem, CoeffRoute, NonautonomousSystem,
};
pub use settled::{quasi_equilibrium, track_settled, SettledOptions, SettledTrack};
pub use spectrum::{equilibrium, linearized_spectrum, poly_roots, Spectrum};
pub use trajectory::{Segment, Stats, Status, Trajectory};

use crate::error::Result;

/// First-order system `y' = f(t, y)`.
pub trait OdeSystem: Sync {
    fn dim(&self) -> usize;
    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()>;
}

/// A state `(t; v, v′, v″, v‴)` per component, component-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CylState {
    pub t: f64,
    pub y: Vec<f64>,
}

impl CylState {
    pub fn new(t: f64, y: Vec<f64>) -> Self {
        Self { t, y }
    }

    /// Scalar data `(v, v′, v″, v‴)` placed along a direction `Λ`.
    pub fn on_ray(t: f64, lambda: &[f64], scalar: [f64; 4]) -> Self {
        let mut y = Vec::with_capacity(4 * lambda.len());
        for l in lambda {
            y.extend(scalar.iter().map(|v| v * l));
        }
        Self { t, y }
    }

    pub fn components(&self) -> usize {
        self.y.len() / 4
    }

    /// Derivative order `k` of every component.
    pub fn derivative(&self, k: usize) -> Vec<f64> {
        self.y.iter().skip(k).step_by(4).copied().collect()
    }
}
