//! Nested oscillatory integrals
//!
//! ```text
//! I_k(τ) = ∫_{-∞}^{τ} dτ₁ ∫_{-∞}^{τ₁} dτ₂ cos(τ₁² − τ₂²) ∫_{-∞}^{τ₂} dτ₃ ∫_{-∞}^{τ₃} dτ₄ cos(τ₃² − τ₄²) ⋯
//! ```
//!
//! evaluated at finite τ through index derivatives of parabolic cylinder
//! functions, with an exact coefficient generator and independent ODE and
//! quadrature oracles.
//!
//! Layout:
//!
//! - [`specfun`]: gamma/polygamma, Bell polynomials, erf, Fresnel, PCF series and
//!   contour evaluation, modified PCFs 𝒟^{(k)}_ν(z), ₂F₂ and 𝓡(τ)
//! - [`closedform`]: P-polynomials, 𝓙_n, I_k and the Landau–Zener bridge
//! - [`symbolic`]: exact ring ℚ(i)[π, γ, ln 2, ζ₃, ζ₅, …] and expression rendering
//! - [`oracle`]: ODE cascade, Bloch equations, nested quadrature, identity checks
//! - [`cli`]: the `oscint` command (eval, coeffs, verify, figdata)
//!
//! Runnable examples live in `examples/`:
//!
//! ```text
//! cargo run --release --example crossing_values
//! cargo run --release --example modified_pcf
//! cargo run --release --example coefficients
//! cargo run --release --example ode_oracle
//! cargo run --release --example landau_zener
//! cargo run --release --example sine_integral
//! cargo run --release --example identities
//! cargo run --release --example spectrum
//! ```

pub mod cli;
pub mod closedform;
pub mod error;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod symbolic;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// μ₀ = √2·e^{−iπ/4} = 1 − i.
pub const MU0: Complex64 = Complex64::new(1.0, -1.0);

/// The PCF argument −iμ₀τ = −(1+i)τ used throughout.
pub fn lz_arg(tau: f64) -> Complex64 {
    Complex64::new(-tau, -tau)
}
