//! I_k and J₁ from the first-order complex cascade
//!   I_k′ = Re G_k,  G_k′ = 2iτ G_k + I_{k−1},  I₀ = 1,
//! started on the slow manifold at τ_start.

use num_complex::Complex64;

use super::grid::{GridSpec, SampledCurve};
use super::ode::{solve_dense, OdeOptions};
use crate::error::{Error, Result};

/// Terms of the 1/τ expansions used for the starting values.
pub const ASYMPTOTIC_TERMS: usize = 16;

/// Coefficients (s_j, g_j) of I_k ~ Σ s_j τ^{−j} and G_k ~ Σ g_j τ^{−j} for
/// every level, given the source expansion of I₀ = 1.
fn asymptotic_coeffs(k_max: usize, n: usize) -> Vec<(Vec<f64>, Vec<Complex64>)> {
    let mut out = Vec::with_capacity(k_max);
    let mut src = vec![0.0; n + 2];
    src[0] = 1.0;
    for _ in 0..k_max {
        let mut g = vec![Complex64::new(0.0, 0.0); n + 3];
        // g_{m+1} = (−(m−1) g_{m−1} − S_m) / 2i
        for m in 0..=n + 1 {
            let prev = if m >= 1 {
                g[m - 1] * (m as f64 - 1.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            g[m + 1] = (-prev - src[m]) / Complex64::new(0.0, 2.0);
        }
        let mut s = vec![0.0; n + 2];
        for j in 1..=n + 1 {
            s[j] = -g[j + 1].re / j as f64;
        }
        src = s.clone();
        out.push((s, g));
    }
    out
}

fn eval_series<T>(c: &[T], tau: f64) -> T
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    let inv = 1.0 / tau;
    let mut acc = c[c.len() - 1];
    for v in c[..c.len() - 1].iter().rev() {
        acc = acc * inv + *v;
    }
    acc
}

fn initial_state(k_max: usize, tau0: f64) -> Vec<f64> {
    let coeffs = asymptotic_coeffs(k_max, ASYMPTOTIC_TERMS);
    let mut y = Vec::with_capacity(3 * k_max + 1);
    for (s, g) in &coeffs {
        let gv = eval_series(&g[..ASYMPTOTIC_TERMS + 1], tau0);
        y.push(eval_series(&s[..ASYMPTOTIC_TERMS + 1], tau0));
        y.push(gv.re);
        y.push(gv.im);
    }
    y
}

fn check_start(grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    if grid.tau_start > -8.0 {
        return Err(Error::domain(
            "ode",
            format!(
                "τ_start = {} too close to the crossing for asymptotic start",
                grid.tau_start
            ),
        ));
    }
    Ok(())
}

fn opts(grid: &GridSpec) -> OdeOptions {
    OdeOptions {
        rel_tol: grid.rel_tol,
        abs_tol: grid.abs_tol,
        ..OdeOptions::default()
    }
}

/// Curves I_1..I_{k_max}, integrated jointly.
pub fn ode_cascade(k_max: usize, grid: GridSpec) -> Result<Vec<SampledCurve>> {
    if k_max == 0 {
        return Err(Error::domain("ode_cascade", "k_max must be ≥ 1"));
    }
    check_start(&grid)?;
    let y0 = initial_state(k_max, grid.tau_start);
    let ts = grid.samples();
    let sol = solve_dense(
        |t, y, dy| {
            let mut src = 1.0;
            for l in 0..k_max {
                let (i, gr, gi) = (y[3 * l], y[3 * l + 1], y[3 * l + 2]);
                dy[3 * l] = gr;
                dy[3 * l + 1] = -2.0 * t * gi + src;
                dy[3 * l + 2] = 2.0 * t * gr;
                src = i;
            }
        },
        grid.tau_start,
        &y0,
        &ts,
        opts(&grid),
    )?;
    Ok((0..k_max)
        .map(|l| SampledCurve {
            tau: ts.clone(),
            values: sol.y.iter().map(|y| y[3 * l]).collect(),
            err: sol.err.clone(),
        })
        .collect())
}

pub fn ode_i1(grid: GridSpec) -> Result<SampledCurve> {
    Ok(ode_cascade(1, grid)?.remove(0))
}

/// J₁(τ; τ_start), the sine counterpart of I₁ anchored at the grid start.
pub fn ode_j1(grid: GridSpec) -> Result<SampledCurve> {
    check_start(&grid)?;
    let mut y0 = initial_state(1, grid.tau_start);
    y0[0] = 0.0;
    let ts = grid.samples();
    let sol = solve_dense(
        |t, y, dy| {
            dy[0] = y[2];
            dy[1] = -2.0 * t * y[2] + 1.0;
            dy[2] = 2.0 * t * y[1];
        },
        grid.tau_start,
        &y0,
        &ts,
        opts(&grid),
    )?;
    Ok(SampledCurve {
        tau: ts,
        values: sol.y.iter().map(|y| y[0]).collect(),
        err: sol.err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn first_level_expansion() {
        // I₁ ~ 1/(8τ²), G₁ ~ i/(2τ)
        let c = asymptotic_coeffs(1, 6);
        assert!((c[0].1[1] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert!((c[0].0[2] - 0.125).abs() < 1e-15);
    }

    #[test]
    fn crossing_values() {
        let curves = ode_cascade(3, GridSpec::window(0.0, 1.0, 2)).unwrap();
        assert!((curves[0].values[0] - PI / 8.0).abs() < 1e-8);
        assert!((curves[1].values[0] - PI * PI / 128.0).abs() < 1e-8);
    }

    #[test]
    fn start_sensitivity() {
        let a = ode_cascade(2, GridSpec::window(2.0, 3.0, 2)).unwrap();
        let b = ode_cascade(2, GridSpec::window(2.0, 3.0, 2).with_start(-60.0)).unwrap();
        for l in 0..2 {
            assert!((a[l].values[0] - b[l].values[0]).abs() < 1e-9);
        }
    }
}
