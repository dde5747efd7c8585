//! Numerical checks of PCF integral identities tied to the LZ problem.
//!
//! Write A = D_{−iν−1}(−iμ₀τ), B = D_{−iν}(−iμ₀τ) and g = |A|² − |B|²/ν.
//! Conjugates are continued analytically (Ā(s) = D_{iν−1}(iμ̄₀s)), so g is
//! entire in s. Inner integrals ∫_{−∞}^τ e^{±is²} g are then taken along a
//! steepest-descent ray with no truncated real-axis tail. Outer integrals
//! in the double-integral identities start at a finite anchor, with the left
//! side's value there as the boundary term; that form is exact for any anchor.

use num_complex::Complex64;
use serde::Serialize;
use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use crate::closedform::{i1_closed_fresnel, ray_orders};
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::specfun::{fresnel, pcf, r_function};
use crate::{lz_arg, MU0};

/// Distance from min(τ, 0) to the anchor of outer integrals.
pub const ANCHOR_OFFSET: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// D_{−iν} D*_{−iν−1} = −μ₀ν e^{−iτ²} ∫_{−∞}^τ e^{is²} g(s) ds
    ProductFold,
    /// the conjugate relation, computed along its own ray
    ProductFoldConj,
    /// ∫₀^τ e^{is²/2} D_{−1}(−iμ₀s) ds = iμ₀ 𝓡(τ)
    RAntiderivative,
    /// |A|² = −4ν ∫∫ cos(τ₁² − τ₂²) g(τ₂)
    CosineFold,
    /// |D_{−1}(−iμ₀τ)|² = π([½ + C]² + [½ + S]²)
    FresnelModulus,
    /// −ν e^{−πν/2} g → 1 as τ → −∞
    InitialLimit,
    /// ν e^{−πν/2} (|A|² + |B|²/ν) = 1
    Conservation,
    /// ∫ (e^{−iπ/4} B Ā − e^{iπ/4} B̄ A) = 2√2 iν ∫∫ cos(τ₁² − τ₂²) g(τ₂)
    ///
    /// The left side is purely imaginary; the factor i is what makes this
    /// consistent with `PopulationDerivative` and `CosineFold`.
    TransverseY,
    /// ∫ (e^{−iπ/4} B Ā + e^{iπ/4} B̄ A) = 2√2 ν ∫∫ sin(τ₁² − τ₂²) g(τ₂)
    TransverseX,
    /// |A|² = i√2 ∫ (e^{−iπ/4} B Ā − e^{iπ/4} B̄ A)
    PopulationDerivative,
    /// π|D_{−1}|² + 4 Im[D_{−1} 𝒟^{(1)}_{−1}(iμ̄₀τ)] = 16 ∫∫ cos(τ₁² − τ₂²) |D_{−1}(τ₂)|²
    SecondOrderFold,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::ProductFold,
        Identity::ProductFoldConj,
        Identity::RAntiderivative,
        Identity::CosineFold,
        Identity::FresnelModulus,
        Identity::InitialLimit,
        Identity::Conservation,
        Identity::TransverseY,
        Identity::TransverseX,
        Identity::PopulationDerivative,
        Identity::SecondOrderFold,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::ProductFold => "product-fold",
            Identity::ProductFoldConj => "product-fold-conj",
            Identity::RAntiderivative => "r-antiderivative",
            Identity::CosineFold => "cosine-fold",
            Identity::FresnelModulus => "fresnel-modulus",
            Identity::InitialLimit => "initial-limit",
            Identity::Conservation => "conservation",
            Identity::TransverseY => "transverse-y",
            Identity::TransverseX => "transverse-x",
            Identity::PopulationDerivative => "population-derivative",
            Identity::SecondOrderFold => "second-order-fold",
        }
    }

    pub fn from_id(s: &str) -> Option<Identity> {
        Self::ALL.iter().copied().find(|i| i.id() == s)
    }

    /// Whether ν enters; the ν = 0 identities ignore it.
    pub fn uses_nu(self) -> bool {
        !matches!(
            self,
            Identity::RAntiderivative | Identity::FresnelModulus | Identity::SecondOrderFold
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleResult {
    pub tau: f64,
    pub nu: f64,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    /// |lhs − rhs|, or NaN when the sample could not be evaluated.
    pub residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: &'static str,
    pub tol: f64,
    pub samples: Vec<SampleResult>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| {
                if s.residual.is_nan() {
                    f64::INFINITY
                } else {
                    s.residual
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Evaluate `which` at each (τ, ν). Failures are recorded per sample.
pub fn verify_identity(which: Identity, samples: &[(f64, f64)], tol: f64) -> IdentityReport {
    let samples = samples
        .iter()
        .map(|&(tau, nu)| match both_sides(which, tau, nu) {
            Ok((lhs, rhs)) => {
                let residual = (lhs - rhs).norm();
                SampleResult {
                    tau,
                    nu,
                    lhs: [lhs.re, lhs.im],
                    rhs: [rhs.re, rhs.im],
                    residual,
                    pass: residual <= tol,
                    error: None,
                }
            }
            Err(e) => SampleResult {
                tau,
                nu,
                lhs: [f64::NAN; 2],
                rhs: [f64::NAN; 2],
                residual: f64::NAN,
                pass: false,
                error: Some(e.to_string()),
            },
        })
        .collect();
    IdentityReport {
        id: which.id(),
        tol,
        samples,
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// (A, Ā, B, B̄) continued to complex s.
fn products(nu: f64, s: Complex64) -> Result<[Complex64; 4]> {
    let z = c(-1.0, -1.0) * s;
    let zb = c(-1.0, 1.0) * s;
    Ok([
        pcf(c(-1.0, -nu), z)?,
        pcf(c(-1.0, nu), zb)?,
        pcf(c(0.0, -nu), z)?,
        pcf(c(0.0, nu), zb)?,
    ])
}

fn bracket(nu: f64, s: Complex64) -> Result<Complex64> {
    let [a, ab, b, bb] = products(nu, s)?;
    Ok(a * ab - b * bb / nu)
}

fn modsq_minus_one(s: Complex64) -> Result<Complex64> {
    Ok(pcf(c(-1.0, 0.0), c(-1.0, -1.0) * s)? * pcf(c(-1.0, 0.0), c(-1.0, 1.0) * s)?)
}

fn opts() -> QuadOptions {
    QuadOptions {
        rel_tol: 1e-11,
        abs_tol: 1e-13,
        max_segments: 20_000,
    }
}

/// Scalar quadrature of a fallible integrand.
fn quad<F: FnMut(f64) -> Result<Complex64>>(mut f: F, a: f64, b: f64) -> Result<Complex64> {
    let failure = RefCell::new(None);
    let r = integrate(
        |x, out| {
            out[0] = match f(x) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        a,
        b,
        1,
        opts(),
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.values[0])
}

/// ∫_{−∞}^τ e^{σ i s²} h(s) ds for entire h of at most Gaussian-neutral growth
/// along the ray s₀ + r e^{iα}, α = π ± π/4, s₀ = min(τ, 0).
fn fold_to_minus_infinity<H>(sigma: f64, h: H, tau: f64) -> Result<Complex64>
where
    H: Fn(Complex64) -> Result<Complex64>,
{
    let s0 = tau.min(0.0);
    let alpha = PI + sigma * FRAC_PI_4;
    let dir = Complex64::from_polar(1.0, alpha);
    // |e^{σ i s²}| = exp(√2 s₀ r − r²) along the ray
    let r_end = {
        let b = -SQRT_2 * s0;
        (-b + (b * b + 4.0 * 46.0).sqrt()) / 2.0
    };
    let ray = quad(
        |r| {
            let s = s0 + dir * r;
            Ok((c(0.0, sigma) * s * s).exp() * h(s)? * dir)
        },
        0.0,
        r_end,
    )?;
    let mut total = -ray;
    if tau > s0 {
        total += quad(
            |s| {
                let sc = c(s, 0.0);
                Ok(Complex64::from_polar(1.0, sigma * s * s) * h(sc)?)
            },
            s0,
            tau,
        )?;
    }
    Ok(total)
}

/// F(x) = ∫₀^x e^{is²} ds.
fn fresnel_f(x: f64) -> Complex64 {
    let (cc, ss) = fresnel(x * (2.0 / PI).sqrt());
    c(cc, ss) * (PI / 2.0).sqrt()
}

/// ∫_a^τ dτ₁ ∫_{−∞}^{τ₁} e^{i(τ₁² − τ₂²)} g(τ₂) dτ₂ for real-on-axis g. The
/// real part is the cosine double integral, the imaginary part the sine one.
fn anchored_double<G>(g: G, tau: f64, anchor: f64) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let w_anchor = fold_to_minus_infinity(-1.0, &g, anchor)?;
    let f_tau = fresnel_f(tau);
    let head = w_anchor * (f_tau - fresnel_f(anchor));
    let body = quad(
        |s| {
            let gv = g(c(s, 0.0))?.re;
            Ok(Complex64::from_polar(gv, -s * s) * (f_tau - fresnel_f(s)))
        },
        anchor,
        tau,
    )?;
    Ok(head + body)
}

fn anchor_for(tau: f64) -> f64 {
    tau.min(0.0) - ANCHOR_OFFSET
}

/// ∫_a^τ (e^{−iπ/4} B Ā ∓ e^{iπ/4} B̄ A) ds with sign −1 (y) or +1 (x).
fn transverse_lhs(nu: f64, tau: f64, anchor: f64, sign: f64) -> Result<Complex64> {
    let ph = Complex64::from_polar(1.0, -FRAC_PI_4);
    quad(
        |s| {
            let [a, ab, b, bb] = products(nu, c(s, 0.0))?;
            Ok(ph * b * ab + sign * ph.conj() * bb * a)
        },
        anchor,
        tau,
    )
}

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::domain(
            "verify_identity",
            format!("ν = {nu} must be > 0"),
        ));
    }
    Ok(())
}

fn both_sides(which: Identity, tau: f64, nu: f64) -> Result<(Complex64, Complex64)> {
    if !tau.is_finite() {
        return Err(Error::domain("verify_identity", format!("τ = {tau}")));
    }
    if which.uses_nu() {
        check_nu(nu)?;
    }
    let s = c(tau, 0.0);
    let g = |s: Complex64| bracket(nu, s);
    match which {
        Identity::ProductFold => {
            let [_, ab, b, _] = products(nu, s)?;
            let w = fold_to_minus_infinity(1.0, g, tau)?;
            Ok((
                b * ab,
                -MU0 * nu * Complex64::from_polar(1.0, -tau * tau) * w,
            ))
        }
        Identity::ProductFoldConj => {
            let [a, _, _, bb] = products(nu, s)?;
            let w = fold_to_minus_infinity(-1.0, g, tau)?;
            Ok((
                bb * a,
                -MU0.conj() * nu * Complex64::from_polar(1.0, tau * tau) * w,
            ))
        }
        Identity::RAntiderivative => {
            let lhs = quad(
                |x| Ok(Complex64::from_polar(1.0, x * x / 2.0) * pcf(c(-1.0, 0.0), lz_arg(x))?),
                0.0,
                tau,
            )?;
            Ok((lhs, c(0.0, 1.0) * MU0 * r_function(tau)?))
        }
        Identity::CosineFold => {
            let a = anchor_for(tau);
            let lhs = products(nu, s)?[0].norm_sqr() - products(nu, c(a, 0.0))?[0].norm_sqr();
            let d = anchored_double(g, tau, a)?;
            Ok((c(lhs, 0.0), c(-4.0 * nu * d.re, 0.0)))
        }
        Identity::FresnelModulus => {
            let d = pcf(c(-1.0, 0.0), lz_arg(tau))?;
            // π r² = 4 I₁ through the Fresnel form
            Ok((c(d.norm_sqr(), 0.0), c(4.0 * i1_closed_fresnel(tau), 0.0)))
        }
        Identity::InitialLimit => {
            let gv = bracket(nu, s)?.re;
            Ok((c(-nu * (-PI * nu / 2.0).exp() * gv, 0.0), c(1.0, 0.0)))
        }
        Identity::Conservation => {
            let [a, _, b, _] = products(nu, s)?;
            let v = nu * (-PI * nu / 2.0).exp() * (a.norm_sqr() + b.norm_sqr() / nu);
            Ok((c(v, 0.0), c(1.0, 0.0)))
        }
        Identity::TransverseY | Identity::TransverseX => {
            let a = anchor_for(tau);
            let sign = if which == Identity::TransverseY {
                -1.0
            } else {
                1.0
            };
            let lhs = transverse_lhs(nu, tau, a, sign)?;
            let d = anchored_double(g, tau, a)?;
            let rhs = if which == Identity::TransverseY {
                c(0.0, 2.0 * SQRT_2 * nu * d.re)
            } else {
                c(2.0 * SQRT_2 * nu * d.im, 0.0)
            };
            Ok((lhs, rhs))
        }
        Identity::PopulationDerivative => {
            let a = anchor_for(tau);
            let lhs = products(nu, s)?[0].norm_sqr() - products(nu, c(a, 0.0))?[0].norm_sqr();
            let rhs = c(0.0, SQRT_2) * transverse_lhs(nu, tau, a, -1.0)?;
            Ok((c(lhs, 0.0), rhs))
        }
        Identity::SecondOrderFold => {
            let a = anchor_for(tau);
            let side = |t: f64| -> Result<f64> {
                let d = ray_orders(1, t)?;
                Ok(PI * d[0].norm_sqr() + 4.0 * (d[0] * d[1].conj()).im)
            };
            let lhs = side(tau)? - side(a)?;
            let d = anchored_double(modsq_minus_one, tau, a)?;
            Ok((c(lhs, 0.0), c(16.0 * d.re, 0.0)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_limit_far_left() {
        let r = verify_identity(Identity::InitialLimit, &[(-40.0, 0.3)], 1e-3);
        assert!(r.pass(), "{:?}", r.samples);
    }

    #[test]
    fn conservation_sample() {
        let r = verify_identity(Identity::Conservation, &[(1.0, 0.7)], 1e-8);
        assert!(r.pass(), "{:?}", r.samples);
    }

    #[test]
    fn fresnel_sample() {
        let r = verify_identity(Identity::FresnelModulus, &[(-2.0, 0.0)], 1e-9);
        assert!(r.pass(), "{:?}", r.samples);
    }

    #[test]
    fn ids_round_trip() {
        for i in Identity::ALL {
            assert_eq!(Identity::from_id(i.id()), Some(i));
        }
    }
}
