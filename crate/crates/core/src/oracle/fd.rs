use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lz_arg;
use crate::specfun::pcf_modified_orders;

/// |𝒟^{(k)}_{−iν−1}(−iμ₀τ)|² at real ν.
pub fn modsq_at_nu(k: usize, tau: f64, nu: f64) -> Result<f64> {
    Ok(pcf_modified_orders(k, Complex64::new(-1.0, -nu), lz_arg(tau))?[k].norm_sqr())
}

/// Step sizes per derivative order balancing truncation against rounding.
pub const FD_STEP: [f64; 4] = [0.01, 0.01, 0.01, 0.03];

/// n-th ν-derivative of |𝒟^{(k)}_{−iν−1}(−iμ₀τ)|² at ν = 0 by central
/// differences with step h, Richardson-extrapolated once (h, h/2).
pub fn modsq_nu_derivative_fd(n: usize, k: usize, tau: f64, h: f64) -> Result<f64> {
    if !(1..=4).contains(&n) {
        return Err(Error::domain(
            "modsq_nu_derivative_fd",
            format!("n = {n} (supported 1..=4)"),
        ));
    }
    if !(h > 0.0) {
        return Err(Error::domain("modsq_nu_derivative_fd", format!("h = {h}")));
    }
    let stencil = |h: f64| -> Result<f64> {
        let f = |m: f64| modsq_at_nu(k, tau, m * h);
        Ok(match n {
            1 => (f(1.0)? - f(-1.0)?) / (2.0 * h),
            2 => (f(1.0)? - 2.0 * f(0.0)? + f(-1.0)?) / (h * h),
            3 => (f(2.0)? - 2.0 * f(1.0)? + 2.0 * f(-1.0)? - f(-2.0)?) / (2.0 * h.powi(3)),
            _ => (f(2.0)? - 4.0 * f(1.0)? + 6.0 * f(0.0)? - 4.0 * f(-1.0)? + f(-2.0)?) / h.powi(4),
        })
    };
    let coarse = stencil(h)?;
    let fine = stencil(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
