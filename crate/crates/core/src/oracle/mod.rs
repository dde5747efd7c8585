//! Independent numerical ground truth.

mod cascade;
mod grid;
pub mod ode;

pub use cascade::{ode_cascade, ode_i1, ode_j1, ASYMPTOTIC_TERMS};
pub use grid::{GridSpec, SampledCurve};
mod bloch;
mod nested;

pub use bloch::{bloch_integrate, NORM_DRIFT_TOL};
pub use nested::{quad_nested, QUAD_NESTED_TOL};
mod identities;

pub use identities::{verify_identity, Identity, IdentityReport, SampleResult, ANCHOR_OFFSET};
mod spectrum;

pub use spectrum::fourier_spectrum;
mod fd;

pub use fd::{modsq_at_nu, modsq_nu_derivative_fd, FD_STEP};
