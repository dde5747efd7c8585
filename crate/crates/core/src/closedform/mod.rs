//! Numeric evaluation of I_k(τ) in terms of modified PCFs at index −1 on the
//! ray z = −iμ₀τ, plus the Landau–Zener probability bridge.

mod explicit;
mod ppoly;

pub use explicit::{
    d_modsq_deriv_printed, explicit_bracket, i_k_explicit, printed_modsq_bracket, BracketTerm,
    TermKind,
};
pub use ppoly::{p_poly, phi_r, PPolyKey, PPolyTable};

use num_complex::Complex64;
use num_integer::binomial;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::lz_arg;
use crate::specfun::{fresnel, pcf, pcf_modified_orders, r_function};

/// Imaginary residue tolerated before an assembly is declared inconsistent.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    ExplicitK,
    Ode,
    Quadrature,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::ExplicitK => "explicit_k",
            Method::Ode => "ode",
            Method::Quadrature => "quadrature",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralValue {
    pub k: usize,
    pub tau: f64,
    pub value: f64,
    pub method: Method,
    pub err_estimate: f64,
}

/// 𝒟^{(0..=k_max)}_{−1}(−iμ₀τ). Conjugates give the values at iμ̄₀τ.
pub fn ray_orders(k_max: usize, tau: f64) -> Result<Vec<Complex64>> {
    if !tau.is_finite() {
        return Err(Error::domain("ray_orders", format!("τ = {tau}")));
    }
    pcf_modified_orders(k_max, Complex64::new(-1.0, 0.0), lz_arg(tau))
}

/// ∂^n_ν |𝒟^{(r)}_{−iν−1}(−iμ₀τ)|² at ν = 0 from precomputed orders `d`
/// (at least r+n+1 entries):
/// Σ_j C(n,j) [Σ_k P_{n−j,k} 𝒟^{(r+k)}] [Σ_ℓ P*_{j,ℓ} 𝒟^{(r+ℓ)*}].
pub fn modsq_index_deriv(table: &PPolyTable, d: &[Complex64], n: usize, r: usize) -> Complex64 {
    let mut partial = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..=m {
            s += table.get(m, k as i64) * d[r + k];
        }
        partial.push(s);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        total += partial[n - j] * partial[j].conj() * binomial(n as u64, j as u64) as f64;
    }
    total
}

/// 𝓙_n(τ) = ∂^n_ν |D_{−iν−1}(−iμ₀τ)|² at ν = 0.
pub fn j_n(n: usize, tau: f64) -> Result<Complex64> {
    let table = PPolyTable::new(n, 0.0)?;
    let d = ray_orders(n, tau)?;
    Ok(modsq_index_deriv(&table, &d, n, 0))
}

/// ∂^n_ν |𝒟^{(k)}_{−iν−1}(−iμ₀τ)|² at ν = 0 (general Leibniz/Bell form).
pub fn d_modsq_deriv(n: usize, k: usize, tau: f64) -> Result<f64> {
    let table = PPolyTable::new(n, 0.0)?;
    let d = ray_orders(n + k, tau)?;
    let v = modsq_index_deriv(&table, &d, n, k);
    real_part("d_modsq_deriv", v, v.norm())
}

fn real_part(op: &'static str, v: Complex64, scale: f64) -> Result<f64> {
    if v.im.abs() > IMAG_RESIDUE_TOL * scale.max(1.0) {
        return Err(Error::inconsistent(
            op,
            format!("imaginary residue {:e}", v.im),
        ));
    }
    Ok(v.re)
}

fn check_k(op: &'static str, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::domain(op, "k must be ≥ 1"));
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, j| a * j as f64)
}

/// I_k(τ) = π^{k−1}/2^{4k−2} Σ_{n=0}^{k−1} (−2/π)^n / (n!(k−n−1)!) 𝓙_n(τ).
pub fn i_k(k: usize, tau: f64) -> Result<IntegralValue> {
    check_k("i_k", k)?;
    let n_max = k - 1;
    let table = PPolyTable::new(n_max, 0.0)?;
    let d = ray_orders(n_max, tau)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for n in 0..=n_max {
        let c = PI.powi((k - 1 - n) as i32) * (-2.0f64).powi(n as i32)
            / (2f64.powi(4 * k as i32 - 2) * factorial(n) * factorial(k - n - 1));
        let term = modsq_index_deriv(&table, &d, n, 0) * c;
        magnitude += term.norm();
        sum += term;
    }
    let value = real_part("i_k", sum, 1.0)?;
    Ok(IntegralValue {
        k,
        tau,
        value,
        method: Method::ClosedForm,
        err_estimate: sum.im.abs() + 1e-12 * magnitude,
    })
}

/// I_k through the Landau–Zener probability:
/// I_k = (−1)^{k+1}/(2^{3k−1} k!) ∂^k_ν P_LZ at ν = 0, with
/// ∂^k_ν[ν e^{−πν/2} M] = k Σ_n C(k−1,n) (−π/2)^{k−1−n} ∂^n_ν M.
/// Orders n ≤ 4 use the printed |𝒟|² derivative forms; higher orders the
/// general expansion. The result is checked against [`i_k`].
pub fn i_k_from_plz(k: usize, tau: f64) -> Result<IntegralValue> {
    check_k("i_k_from_plz", k)?;
    let mut deriv = 0.0;
    let mut magnitude = 0.0;
    for n in 0..k {
        let jn = if n <= 4 {
            d_modsq_deriv_printed(n, 0, tau)?
        } else {
            d_modsq_deriv(n, 0, tau)?
        };
        let term = k as f64
            * binomial((k - 1) as u64, n as u64) as f64
            * (-PI / 2.0).powi((k - 1 - n) as i32)
            * jn;
        magnitude += term.abs();
        deriv += term;
    }
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let scale = sign / (2f64.powi(3 * k as i32 - 1) * factorial(k));
    let value = deriv * scale;
    let reference = i_k(k, tau)?;
    if (value - reference.value).abs() > 1e-8 {
        return Err(Error::inconsistent(
            "i_k_from_plz",
            format!("k={k} τ={tau}: {value} vs closed form {}", reference.value),
        ));
    }
    Ok(IntegralValue {
        k,
        tau,
        value,
        method: Method::ClosedForm,
        err_estimate: 1e-12 * magnitude * scale.abs(),
    })
}

/// P_LZ(τ,ν) = ν e^{−πν/2} |D_{−iν−1}(−iμ₀τ)|².
pub fn plz(tau: f64, nu: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() || !tau.is_finite() {
        return Err(Error::domain("plz", format!("τ = {tau}, ν = {nu}")));
    }
    if nu == 0.0 {
        return Ok(0.0);
    }
    let d = pcf(Complex64::new(-1.0, -nu), lz_arg(tau))?;
    let p = nu * (-PI * nu / 2.0).exp() * d.norm_sqr();
    if !(-1e-9..=1.0 + 1e-9).contains(&p) {
        return Err(Error::inconsistent(
            "plz",
            format!("P = {p} outside [0,1] at τ={tau}, ν={nu}"),
        ));
    }
    Ok(p)
}

/// (I_k(0), I_k(∞)) = (π^k/(2^{3k} k!), π^k/(2^{2k−1} k!)).
pub fn known_limits(k: usize) -> (f64, f64) {
    let pk = PI.powi(k as i32) / factorial(k);
    (
        pk / 2f64.powi(3 * k as i32),
        pk / 2f64.powi(2 * k as i32 - 1),
    )
}

/// I₁(τ) = Re 𝓡(τ) + π/8, using Re 𝓡(−∞) = −π/8.
pub fn i1_closed_r(tau: f64) -> Result<f64> {
    Ok(r_function(tau)?.re + PI / 8.0)
}

/// J₁(τ; τ_s) = ∫_{τ_s}^τ dτ₁ ∫_{−∞}^{τ₁} dτ₂ sin(τ₁² − τ₂²) = Im[𝓡(τ) − 𝓡(τ_s)].
///
/// The integral diverges logarithmically as τ_s → −∞, so the outer lower
/// limit is explicit.
pub fn j1_closed(tau: f64, tau_ref: f64) -> Result<f64> {
    Ok(r_function(tau)?.im - r_function(tau_ref)?.im)
}

/// I₁(τ) = (π/4) ([½ + C(x)]² + [½ + S(x)]²), x = √(2/π) τ.
pub fn i1_closed_fresnel(tau: f64) -> f64 {
    let (c, s) = fresnel((2.0 / PI).sqrt() * tau);
    PI / 4.0 * ((0.5 + c).powi(2) + (0.5 + s).powi(2))
}
