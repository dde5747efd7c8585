//! Direct iterated quadrature of the nested cosine integrals.
//!
//! cos(τ₁² − τ₂²) = Re[e^{iτ₁²} e^{−iτ₂²}] separates, so each level is two
//! cumulative integrals over the same panels. Panel integration matrices
//! give the cumulative values at every node.
//!
//! A sharp cutoff at −c drops ∫_{−∞}^{−c} e^{−iu²} du, which is O(1/c) and
//! would swamp the target, so the first inner level starts from that Fresnel
//! tail. What is left of the truncation is O(1/c²).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::fresnel;

const NODES: usize = 10;
/// Target for the panel-halving error estimate.
pub const QUAD_NESTED_TOL: f64 = 1e-4;
const MAX_REFINE: usize = 6;

/// Gauss–Legendre nodes and weights on [−1, 1].
fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..m {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(m, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(m, t);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

fn legendre(m: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for n in 2..=m {
        let p2 = ((2 * n - 1) as f64 * t * p1 - (n - 1) as f64 * p0) / n as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, m as f64 * (t * p1 - p0) / (t * t - 1.0))
}

/// S[i][j] = ∫_{−1}^{x_i} ℓ_j, exact for the Lagrange basis on the nodes.
fn integration_matrix(x: &[f64], w: &[f64]) -> Vec<Vec<f64>> {
    let m = x.len();
    let lagrange = |j: usize, s: f64| {
        (0..m)
            .filter(|&k| k != j)
            .fold(1.0, |acc, k| acc * (s - x[k]) / (x[j] - x[k]))
    };
    (0..m)
        .map(|i| {
            let half = (x[i] + 1.0) / 2.0;
            (0..m)
                .map(|j| {
                    (0..m)
                        .map(|q| w[q] * half * lagrange(j, -1.0 + half * (x[q] + 1.0)))
                        .sum()
                })
                .collect()
        })
        .collect()
}

fn panels(a: f64, b: f64, scale: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut s = a;
    while s < b {
        // phase of e^{iu²} advances by about π/2 per panel
        let h = (scale * std::f64::consts::PI / (4.0 * s.abs() + 1.0)).min(b - s);
        out.push((s, s + h));
        s += h;
    }
    out
}

fn nested_once(k: usize, tau: f64, cutoff: f64, scale: f64) -> f64 {
    let (x, w) = gauss_legendre(NODES);
    let smat = integration_matrix(&x, &w);
    let pans = panels(-cutoff, tau, scale);
    let np = pans.len();
    let nodes: Vec<f64> = pans
        .iter()
        .flat_map(|&(a, b)| x.iter().map(move |&t| 0.5 * (a + b) + 0.5 * (b - a) * t))
        .collect();
    let mut level: Vec<f64> = vec![1.0; nodes.len()];
    let mut end_value = 0.0;
    for l in 0..k {
        // inner: W(s) = ∫ e^{−iu²} I_{prev}(u) du, outer: ∫ Re[e^{is²} W(s)] ds
        let g: Vec<Complex64> = nodes
            .iter()
            .zip(&level)
            .map(|(&u, &f)| Complex64::from_polar(f, -u * u))
            .collect();
        let mut inner = cumulative(&pans, &smat, &w, &g);
        if l == 0 {
            let tail = fresnel_tail(cutoff);
            inner.0.iter_mut().for_each(|v| *v += tail);
        }
        let h: Vec<Complex64> = nodes
            .iter()
            .zip(&inner.0)
            .map(|(&s, &wv)| Complex64::new((Complex64::from_polar(1.0, s * s) * wv).re, 0.0))
            .collect();
        let outer = cumulative(&pans, &smat, &w, &h);
        level = outer.0.iter().map(|v| v.re).collect();
        end_value = outer.1.re;
        debug_assert_eq!(level.len(), np * NODES);
    }
    end_value
}

/// ∫_{−∞}^{−c} e^{−iu²} du = conj ∫_c^∞ e^{iu²} du.
fn fresnel_tail(c: f64) -> Complex64 {
    let (cc, ss) = fresnel(c * (2.0 / std::f64::consts::PI).sqrt());
    Complex64::new(0.5 - cc, -(0.5 - ss)) * (std::f64::consts::PI / 2.0).sqrt()
}

/// Cumulative integral at all nodes, plus the total.
fn cumulative(
    pans: &[(f64, f64)],
    smat: &[Vec<f64>],
    w: &[f64],
    g: &[Complex64],
) -> (Vec<Complex64>, Complex64) {
    let mut out = Vec::with_capacity(g.len());
    let mut base = Complex64::new(0.0, 0.0);
    for (p, &(a, b)) in pans.iter().enumerate() {
        let half = 0.5 * (b - a);
        let gp = &g[p * NODES..(p + 1) * NODES];
        for row in smat {
            let v: Complex64 = row.iter().zip(gp).map(|(s, v)| v * *s).sum();
            out.push(base + v * half);
        }
        let full: Complex64 = w.iter().zip(gp).map(|(wi, v)| v * *wi).sum();
        base += full * half;
    }
    (out, base)
}

/// I_k(τ) for k ≤ 2 by direct quadrature with −∞ replaced by −cutoff.
pub fn quad_nested(k: usize, tau: f64, cutoff: f64) -> Result<f64> {
    if !(1..=2).contains(&k) {
        return Err(Error::domain(
            "quad_nested",
            format!("k = {k} (supported: 1, 2)"),
        ));
    }
    if !(cutoff > 0.0 && cutoff.is_finite() && tau.is_finite()) {
        return Err(Error::domain(
            "quad_nested",
            format!("cutoff = {cutoff}, τ = {tau}"),
        ));
    }
    if tau <= -cutoff {
        return Ok(0.0);
    }
    let mut scale = 1.0;
    let mut prev = nested_once(k, tau, cutoff, scale);
    let mut est = f64::INFINITY;
    for _ in 0..MAX_REFINE {
        scale /= 2.0;
        let cur = nested_once(k, tau, cutoff, scale);
        est = (cur - prev).abs();
        if est <= QUAD_NESTED_TOL {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature {
        op: "quad_nested",
        estimate: est,
        target: QUAD_NESTED_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matrix_integrates_polynomials() {
        let (x, w) = gauss_legendre(NODES);
        let s = integration_matrix(&x, &w);
        // ∫_{−1}^{x_i} t³ dt
        for (i, row) in s.iter().enumerate() {
            let v: f64 = row.iter().zip(&x).map(|(a, t)| a * t.powi(3)).sum();
            assert!((v - (x[i].powi(4) - 1.0) / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn crossing() {
        let v = quad_nested(1, 0.0, 30.0).unwrap();
        assert!((v - PI / 8.0).abs() < 1e-3, "{v} {}", PI / 8.0);
        assert!((quad_nested(2, 0.0, 25.0).unwrap() - PI * PI / 128.0).abs() < 5e-3);
        assert!(quad_nested(3, 0.0, 25.0).is_err());
    }
}
