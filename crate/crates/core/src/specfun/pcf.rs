//! Parabolic cylinder functions D_ν(z) and the modified family
//!
//! ```text
//! 𝒟^{(k)}_ν(z) = e^{−z²/4}/Γ(−ν) Σ_n (−z)^n/n! 2^{(n−ν−2)/2} ∂^k_ν Γ((n−ν)/2)
//!              = e^{−z²/4}/Γ(−ν) ∫₀^∞ e^{−xz−x²/2} x^{−ν−1} (ln√2 − ln x)^k dx,   Re ν < 0.
//! ```
//!
//! The series is used where it is well conditioned (|z| ≤ 4); beyond that the
//! integral is taken along a steepest-descent path through the saddle x = −z.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use super::bell::bell_complete_all;
use super::gamma::{gamma_complex, ln_gamma, polygamma_complex};
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};

/// Radius below which the power series is summed directly.
pub const SERIES_RADIUS: f64 = 4.0;
/// Beyond this radius the series terms overflow or cancel catastrophically.
const SERIES_HARD_LIMIT: f64 = 35.0;
const CONTOUR_REL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        SeriesTruncation {
            abs_tol: 1e-14,
            max_terms: 1_000_000,
        }
    }
}

/// One evaluation of 𝒟^{(k)}_ν(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedPcfSpec {
    pub deriv_order: usize,
    pub index: Complex64,
    pub arg: Complex64,
    pub trunc: SeriesTruncation,
}

impl ModifiedPcfSpec {
    pub fn new(deriv_order: usize, index: Complex64, arg: Complex64) -> Result<Self> {
        check_index("pcf_modified", index)?;
        Ok(ModifiedPcfSpec {
            deriv_order,
            index,
            arg,
            trunc: SeriesTruncation::default(),
        })
    }
}

fn check_index(op: &'static str, nu: Complex64) -> Result<()> {
    if !(nu.re < 0.0) || !nu.im.is_finite() {
        return Err(Error::domain(op, format!("index ν = {nu} needs Re ν < 0")));
    }
    Ok(())
}

fn check_arg(op: &'static str, z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(op, format!("argument z = {z}")));
    }
    Ok(())
}

/// Series sum for orders 0..=k_max together with Σ|aₙ|, the conditioning scale
/// of the k = 0 sum.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    pub values: Vec<Complex64>,
    pub magnitude: f64,
    pub terms: usize,
}

/// Sum the modified-PCF series for all orders 0..=k_max at once.
pub fn pcf_modified_series_orders(
    k_max: usize,
    nu: Complex64,
    z: Complex64,
    trunc: SeriesTruncation,
) -> Result<SeriesSum> {
    check_index("pcf_series", nu)?;
    check_arg("pcf_series", z)?;
    if z.norm() > SERIES_HARD_LIMIT {
        return Err(Error::Range {
            op: "pcf_series",
            detail: format!(
                "|z| = {} exceeds the series limit {SERIES_HARD_LIMIT}",
                z.norm()
            ),
        });
    }
    let lg = ln_gamma(-nu)?;
    // even chain n = 0, 2, 4, …  and odd chain n = 1, 3, 5, …
    let mut w = [-nu / 2.0, (1.0 - nu) / 2.0];
    let mut t = [
        (LN_2 * (-nu - 2.0) / 2.0 + ln_gamma(w[0])? - lg).exp(),
        -z * (LN_2 * (-nu - 1.0) / 2.0 + ln_gamma(w[1])? - lg).exp(),
    ];
    let mut psi: [Vec<Complex64>; 2] = [Vec::new(), Vec::new()];
    for c in 0..2 {
        for r in 0..k_max {
            psi[c].push(polygamma_complex(r as u32, w[c])?);
        }
    }
    let factorials: Vec<f64> = (0..=k_max)
        .scan(1.0, |acc, r| {
            let v = *acc;
            *acc *= (r + 1) as f64;
            Some(v)
        })
        .collect();
    let z2 = z * z;
    let mut sums = vec![Complex64::new(0.0, 0.0); k_max + 1];
    let mut magnitude = 0.0;
    let mut quiet = 0;
    for n in 0..trunc.max_terms {
        let c = n % 2;
        let bell = bell_complete_all(k_max, &psi[c]);
        let mut small = true;
        let mut scale = 1.0;
        for k in 0..=k_max {
            let term = t[c] * bell[k] * scale;
            sums[k] += term;
            if term.norm() >= trunc.abs_tol * (1.0 + sums[k].norm()) {
                small = false;
            }
            scale *= -0.5;
        }
        magnitude += t[c].norm();
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 3 {
            let pref = (-z2 / 4.0).exp();
            return Ok(SeriesSum {
                values: sums.into_iter().map(|s| s * pref).collect(),
                magnitude: magnitude * pref.norm(),
                terms: n + 1,
            });
        }
        // a_{n+2} = a_n z² (n−ν)/((n+1)(n+2));  ψ^{(r)}(w+1) = ψ^{(r)}(w) + (−1)^r r!/w^{r+1}
        t[c] *= z2 * (n as f64 - nu) / ((n + 1) * (n + 2)) as f64;
        let inv = w[c].inv();
        let mut p = inv;
        for r in 0..k_max {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            psi[c][r] += p * (sign * factorials[r]);
            p *= inv;
        }
        w[c] += 1.0;
    }
    Err(Error::Convergence {
        op: "pcf_series",
        terms: trunc.max_terms,
        partial: format!("{}", sums[0] * (-z2 / 4.0).exp()),
    })
}

/// D_ν(z) by the power series, Re ν < 0.
pub fn pcf_series(nu: Complex64, z: Complex64, trunc: SeriesTruncation) -> Result<Complex64> {
    Ok(pcf_modified_series_orders(0, nu, z, trunc)?.values[0])
}

/// ∂^k_ν Γ((n−ν)/2) = (−1/2)^k Γ(w) B_k(ψ(w), …, ψ^{(k−1)}(w)),  w = (n−ν)/2.
pub fn gamma_index_deriv(k: usize, n: usize, nu: Complex64) -> Result<Complex64> {
    let w = (n as f64 - nu) / 2.0;
    if !(w.re > 0.0) {
        return Err(Error::domain(
            "gamma_index_deriv",
            format!("(n−ν)/2 = {w} is outside Re > 0"),
        ));
    }
    let psi = (0..k)
        .map(|r| polygamma_complex(r as u32, w))
        .collect::<Result<Vec<_>>>()?;
    let b = bell_complete_all(k, &psi);
    Ok(gamma_complex(w)? * b[k] * (-0.5f64).powi(k as i32))
}

/// Log-weighted integral representation along a steepest-descent path.
pub fn pcf_modified_contour_orders(
    k_max: usize,
    nu: Complex64,
    z: Complex64,
    rel_tol: f64,
) -> Result<Vec<Complex64>> {
    check_index("pcf_modified", nu)?;
    check_arg("pcf_modified", z)?;
    let lg = ln_gamma(-nu)?;
    let ln_sqrt2 = 0.5 * LN_2;
    let dim = k_max + 1;
    let base = -z * z / 4.0 - lg;
    let integrand = |x: Complex64, dx: Complex64, out: &mut [Complex64]| {
        if x.norm() == 0.0 {
            out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
            return;
        }
        let lx = x.ln();
        let e = (base - x * z - x * x / 2.0 + (-nu - 1.0) * lx).exp() * dx;
        let l = ln_sqrt2 - lx;
        let mut p = e;
        for o in out.iter_mut() {
            *o = p;
            p *= l;
        }
    };
    let opts = QuadOptions {
        rel_tol,
        abs_tol: 1e-300,
        max_segments: 20_000,
    };
    // polynomial growth of x^{−ν−1} log^k shifts where the Gaussian takes over
    let growth = (-nu.re - 1.0).max(0.0) + k_max as f64;
    let mut total = vec![Complex64::new(0.0, 0.0); dim];
    if z.re < 0.0 {
        let y = -z.im;
        if y != 0.0 {
            let dx = Complex64::new(0.0, y);
            let r = integrate(
                |s, out| integrand(Complex64::new(0.0, y * s), dx, out),
                0.0,
                1.0,
                dim,
                opts,
            )
            .map_err(|e| relabel(e, "pcf_modified"))?;
            add_into(&mut total, &r.values);
        }
        let t_end = -z.re + 12.0 + growth;
        let one = Complex64::new(1.0, 0.0);
        let r = integrate(
            |t, out| integrand(Complex64::new(t, y), one, out),
            0.0,
            t_end,
            dim,
            opts,
        )
        .map_err(|e| relabel(e, "pcf_modified"))?;
        add_into(&mut total, &r.values);
    } else {
        let arg = if z.norm() == 0.0 { 0.0 } else { z.arg() };
        let theta = (-arg).clamp(-0.2 * PI, 0.2 * PI);
        let dir = Complex64::from_polar(1.0, theta);
        let a = z.norm() * (theta + arg).cos();
        let b = (2.0 * theta).cos() / 2.0;
        let c = 48.0 + 3.0 * growth;
        let r_end = (-a + (a * a + 4.0 * b * c).sqrt()) / (2.0 * b) + growth;
        let r = integrate(|r, out| integrand(dir * r, dir, out), 0.0, r_end, dim, opts)
            .map_err(|e| relabel(e, "pcf_modified"))?;
        add_into(&mut total, &r.values);
    }
    Ok(total)
}

fn add_into(acc: &mut [Complex64], v: &[Complex64]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += *b;
    }
}

fn relabel(e: Error, op: &'static str) -> Error {
    match e {
        Error::Quadrature {
            estimate, target, ..
        } => Error::Quadrature {
            op,
            estimate,
            target,
        },
        other => other,
    }
}

/// 𝒟^{(0..=k_max)}_ν(z), choosing series or contour by |z|.
pub fn pcf_modified_orders(k_max: usize, nu: Complex64, z: Complex64) -> Result<Vec<Complex64>> {
    if z.norm() <= SERIES_RADIUS {
        Ok(pcf_modified_series_orders(k_max, nu, z, SeriesTruncation::default())?.values)
    } else {
        pcf_modified_contour_orders(k_max, nu, z, CONTOUR_REL_TOL)
    }
}

/// 𝒟^{(k)}_ν(z). Inside |z| ≤ 4 this is the term-wise series with the
/// requested truncation; outside, the contour integral.
pub fn pcf_modified(spec: &ModifiedPcfSpec) -> Result<Complex64> {
    check_index("pcf_modified", spec.index)?;
    let k = spec.deriv_order;
    if spec.arg.norm() <= SERIES_RADIUS {
        Ok(pcf_modified_series_orders(k, spec.index, spec.arg, spec.trunc)?.values[k])
    } else {
        Ok(pcf_modified_contour_orders(k, spec.index, spec.arg, CONTOUR_REL_TOL)?[k])
    }
}

/// D_a(z) for any index with Re a < 1 + (small shifts): indices with Re a ≥ 0
/// are reached by D_{a}(z) = z D_{a−1}(z) − (a−1) D_{a−2}(z).
pub fn pcf(a: Complex64, z: Complex64) -> Result<Complex64> {
    if a.re < 0.0 {
        return Ok(pcf_modified_orders(0, a, z)?[0]);
    }
    let m = a.re.floor() as usize + 1;
    let base = a - m as f64;
    let mut lower = pcf_modified_orders(0, base - 1.0, z)?[0];
    let mut upper = pcf_modified_orders(0, base, z)?[0];
    let mut idx = base;
    for _ in 0..m {
        // idx is the index of `upper`
        let next = z * upper - idx * lower;
        lower = upper;
        upper = next;
        idx += 1.0;
    }
    Ok(upper)
}

/// Independent oracle: D_ν(z) by adaptive quadrature of
/// e^{−z²/4}/Γ(−ν) ∫₀^X e^{−xz−x²/2} x^{−ν−1} dx on the real axis, with X
/// chosen so the discarded tail is below 1e−12 of the bound.
pub fn pcf_via_integral(nu: Complex64, z: Complex64) -> Result<Complex64> {
    check_index("pcf_via_integral", nu)?;
    check_arg("pcf_via_integral", z)?;
    let p = -nu.re - 1.0;
    // choose X with X·Re z + X²/2 − p ln X ≥ ln 1e14 past the peak
    let mut x_end = 1.0;
    while x_end * z.re + x_end * x_end / 2.0 - p * x_end.ln() < 32.0 || x_end < -z.re {
        x_end *= 1.25;
    }
    let pref = (-z * z / 4.0).exp() / gamma_complex(-nu)?;
    let opts = QuadOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-15,
        max_segments: 20_000,
    };
    let r = integrate(
        |x, out| {
            out[0] = if x == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (-x * z - x * x / 2.0 + (-nu - 1.0) * x.ln()).exp()
            }
        },
        0.0,
        x_end,
        1,
        opts,
    )
    .map_err(|e| relabel(e, "pcf_via_integral"))?;
    Ok(r.values[0] * pref)
}

/// D_{−1}(z) = e^{z²/4} √(π/2) [1 − erf(z/√2)].
pub fn pcf_minus_one_erf(z: Complex64) -> Result<Complex64> {
    let e = super::erf::erf_complex(z / 2f64.sqrt())?;
    Ok((z * z / 4.0).exp() * FRAC_PI_2.sqrt() * (1.0 - e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reference_values() {
        let t = SeriesTruncation::default();
        let d = pcf_series(c(-1.0, 0.0), c(0.0, 0.0), t).unwrap();
        assert!((d - c(1.253_314_137_315_500_3, 0.0)).norm() < 1e-13, "{d}");
        let d = pcf_series(c(-1.0, 0.0), c(2.0, 0.0), t).unwrap();
        assert!((d.re - 0.155_013_076_597_330_8).abs() < 1e-13, "{d}");
        let d = pcf_series(c(-0.5, -0.3), c(1.0, -1.0), t).unwrap();
        assert!(
            (d - c(0.555_277_346_369_098_4, 0.402_375_532_402_600_7)).norm() < 1e-13,
            "{d}"
        );
    }

    #[test]
    fn contour_matches_series_in_overlap() {
        for &(nu, z) in &[
            (c(-1.0, 0.0), c(-2.5, -2.5)),
            (c(-1.0, 0.0), c(2.5, 2.5)),
            (c(-1.0, -0.7), c(-3.0, 1.0)),
            (c(-0.4, 0.2), c(1.5, -2.0)),
            (c(-2.3, 0.0), c(-1.0, 0.5)),
        ] {
            let s = pcf_modified_series_orders(4, nu, z, SeriesTruncation::default()).unwrap();
            let q = pcf_modified_contour_orders(4, nu, z, 1e-13).unwrap();
            for k in 0..=4 {
                let scale = s.values[k].norm().max(1.0);
                assert!(
                    (s.values[k] - q[k]).norm() < 1e-11 * scale,
                    "ν={nu} z={z} k={k}: {} vs {}",
                    s.values[k],
                    q[k]
                );
            }
        }
    }

    #[test]
    fn erf_form_of_minus_one() {
        for &tau in &[-5.0, -2.0, -0.3, 0.0, 1.0, 3.0, 5.0] {
            let z = crate::lz_arg(tau);
            let a = pcf_minus_one_erf(z).unwrap();
            let b = pcf_modified_orders(0, c(-1.0, 0.0), z).unwrap()[0];
            assert!((a - b).norm() < 1e-9, "τ={tau}: {a} vs {b}");
        }
    }

    #[test]
    fn index_domain_enforced() {
        assert!(pcf_series(c(0.0, 1.0), c(1.0, 0.0), SeriesTruncation::default()).is_err());
        assert!(ModifiedPcfSpec::new(0, c(0.5, 0.0), c(0.0, 0.0)).is_err());
        assert!(pcf_via_integral(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn truncation_limit_reports_partial_sum() {
        let t = SeriesTruncation {
            abs_tol: 1e-14,
            max_terms: 5,
        };
        match pcf_series(c(-1.0, 0.0), c(3.0, 1.0), t) {
            Err(Error::Convergence { terms, .. }) => assert_eq!(terms, 5),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn gamma_index_derivatives() {
        let nu = c(-1.0, 0.0);
        assert!((gamma_index_deriv(0, 1, nu).unwrap() - 1.0).norm() < 1e-15);
        let d1 = gamma_index_deriv(1, 0, nu).unwrap();
        assert!((d1.re - 1.740_115_453_456_63).abs() < 1e-12);
    }

    #[test]
    fn recurrence_reaches_nonnegative_index() {
        // D_0(z) = e^{−z²/4}
        let z = c(0.7, -1.2);
        let d0 = pcf(c(0.0, 0.0), z).unwrap();
        assert!((d0 - (-z * z / 4.0).exp()).norm() < 1e-13);
        let z = c(6.0, 6.0);
        let d0 = pcf(c(0.0, 0.0), z).unwrap();
        assert!((d0 - (-z * z / 4.0).exp()).norm() < 1e-12);
    }
}
