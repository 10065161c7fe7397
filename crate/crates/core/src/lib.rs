//! Cylindrical reductions of the fourth-order system `Δ²u_i = |U|^{s-1} u_i`:
//! coefficient oracles, ODE integration, Pohozaev functionals, Delaunay
//! orbits and asymptotic fits.

pub mod asymptotics;
pub mod closed_forms;
pub mod coefficients;
pub mod cylinder_ode;
pub mod delaunay;
pub mod error;
pub mod fmt;
pub mod jet;
pub mod params;
pub mod pohozaev;
pub mod poly;
pub mod rational;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use params::{special_exponents, Params, SpecialExponents};
pub use rational::Q;
