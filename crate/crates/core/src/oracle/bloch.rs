//! Landau–Zener Bloch vector, u̇ = B × u with B = (Ω, 0, 2τ), Ω = 2√(2ν).

use super::grid::{GridSpec, SampledCurve};
use super::ode::{solve_dense, OdeOptions};
use crate::error::{Error, Result};

/// Allowed drift of |u| before the trajectory is rejected.
pub const NORM_DRIFT_TOL: f64 = 1e-6;

/// Adiabatic-following expansion u ~ Σ a_j τ^{−j} with a_0 = (0, 0, 1).
fn asymptotic_start(omega: f64, tau: f64, terms: usize) -> [f64; 3] {
    let n = terms + 2;
    let (mut ax, mut ay, mut az) = (vec![0.0; n + 2], vec![0.0; n + 2], vec![0.0; n + 2]);
    az[0] = 1.0;
    for m in 0..n {
        let x_prev = if m >= 1 { ax[m - 1] } else { 0.0 };
        ay[m + 1] = (m as f64 - 1.0) * x_prev / 2.0;
        if m >= 1 {
            az[m] = -omega * ay[m + 1] / m as f64;
        }
        let y_prev = if m >= 1 { ay[m - 1] } else { 0.0 };
        ax[m + 1] = (omega * az[m] - (m as f64 - 1.0) * y_prev) / 2.0;
    }
    let eval = |c: &[f64]| c[..=terms].iter().rev().fold(0.0, |acc, v| acc / tau + v);
    let u = [eval(&ax), eval(&ay), eval(&az)];
    // the truncated series is unit only to its own order
    let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    [u[0] / norm, u[1] / norm, u[2] / norm]
}

/// Bloch trajectory (u_x, u_y, u_z) on the grid samples.
pub fn bloch_integrate(nu: f64, grid: GridSpec) -> Result<SampledCurve<[f64; 3]>> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::domain("bloch_integrate", format!("ν = {nu}")));
    }
    grid.validate()?;
    let omega = 2.0 * (2.0 * nu).sqrt();
    if grid.tau_start > -2.0 * omega - 8.0 {
        return Err(Error::domain(
            "bloch_integrate",
            format!("τ_start = {} too close to the crossing", grid.tau_start),
        ));
    }
    let u0 = asymptotic_start(omega, grid.tau_start, 16);
    let ts = grid.samples();
    let sol = solve_dense(
        |t, u, du| {
            du[0] = -2.0 * t * u[1];
            du[1] = 2.0 * t * u[0] - omega * u[2];
            du[2] = omega * u[1];
        },
        grid.tau_start,
        &u0,
        &ts,
        OdeOptions {
            rel_tol: grid.rel_tol,
            abs_tol: grid.abs_tol,
            ..OdeOptions::default()
        },
    )?;
    let mut values = Vec::with_capacity(ts.len());
    for (t, y) in ts.iter().zip(&sol.y) {
        let norm = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
        if (norm - 1.0).abs() > NORM_DRIFT_TOL {
            return Err(Error::Integration {
                op: "bloch_integrate",
                at: *t,
                detail: format!("|u| drifted to {norm}"),
            });
        }
        values.push([y[0], y[1], y[2]]);
    }
    Ok(SampledCurve {
        tau: ts,
        values,
        err: sol.err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_leading_terms() {
        let omega = 2.0;
        let tau = -100.0;
        let u = asymptotic_start(omega, tau, 10);
        assert!((u[0] - omega / (2.0 * tau)).abs() < 1e-5);
        assert!((u[2] - (1.0 - 0.5 / (tau * tau))).abs() < 1e-7);
    }

    #[test]
    fn transition_limit() {
        let nu = 0.3;
        let c = bloch_integrate(nu, GridSpec::window(200.0, 200.0, 2).with_start(-200.0)).unwrap();
        let uz = c.values[1][2];
        let expect = 2.0 * (-2.0 * std::f64::consts::PI * nu).exp() - 1.0;
        assert!((uz - expect).abs() < 5e-3, "{uz} vs {expect}");
    }
}
