use num_complex::Complex64;
use std::f64::consts::PI;

use super::erf::erf_complex;
use super::pcf::SeriesTruncation;
use crate::error::{Error, Result};
use crate::quad::{integrate_complex, QuadOptions};

/// ₂F₂(1,1; b₁,b₂; w) by the term recurrence t_{n+1} = t_n (n+1) w / ((b₁+n)(b₂+n)).
pub fn hyp2f2_11(b1: f64, b2: f64, w: Complex64, trunc: SeriesTruncation) -> Result<Complex64> {
    for b in [b1, b2] {
        if b <= 0.0 && b.fract() == 0.0 {
            return Err(Error::domain(
                "hyp2f2_11",
                format!("lower parameter {b} is a non-positive integer"),
            ));
        }
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..trunc.max_terms {
        let nf = n as f64;
        term *= w * ((nf + 1.0) / ((b1 + nf) * (b2 + nf)));
        sum += term;
        quiet = if term.norm() < trunc.abs_tol * (1.0 + sum.norm()) {
            quiet + 1
        } else {
            0
        };
        if quiet >= 3 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        op: "hyp2f2_11",
        terms: trunc.max_terms,
        partial: format!("{sum}"),
    })
}

/// ₂F₂(1,1; 3/2,2; w) = (1/w) ∫₀¹ (e^{w(1−u²)} − 1)/(1 − u²) du, used where the
/// series would lose digits to cancellation.
fn hyp2f2_32_2_integral(w: Complex64) -> Result<Complex64> {
    let f = |u: f64| {
        let v = 1.0 - u * u;
        let x = w * v;
        if x.norm() < 1e-5 {
            w * (1.0 + x / 2.0 + x * x / 6.0)
        } else {
            (x.exp() - 1.0) / v
        }
    };
    let opts = QuadOptions {
        rel_tol: 1e-14,
        abs_tol: 1e-15,
        max_segments: 50_000,
    };
    let (v, _) = integrate_complex(f, 0.0, 1.0, opts).map_err(|e| match e {
        Error::Quadrature {
            estimate, target, ..
        } => Error::Quadrature {
            op: "hyp2f2_11",
            estimate,
            target,
        },
        other => other,
    })?;
    Ok(v / w)
}

/// 𝓡(τ) = (π/4) erf(e^{−iπ/4} τ) + (τ²/2) ₂F₂(1,1; 3/2,2; iτ²).
pub fn r_function(tau: f64) -> Result<Complex64> {
    if !tau.is_finite() {
        return Err(Error::domain("r_function", format!("τ = {tau}")));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e = erf_complex(Complex64::new(s * tau, -s * tau))?;
    let w = Complex64::new(0.0, tau * tau);
    let f = if tau * tau <= 8.0 {
        hyp2f2_11(1.5, 2.0, w, SeriesTruncation::default())?
    } else {
        hyp2f2_32_2_integral(w)?
    };
    Ok(e * (PI / 4.0) + f * (tau * tau / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_basics() {
        let t = SeriesTruncation::default();
        assert_eq!(
            hyp2f2_11(1.5, 2.0, Complex64::new(0.0, 0.0), t).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let w = Complex64::new(1e-4, 2e-4);
        let v = hyp2f2_11(1.5, 2.0, w, t).unwrap();
        assert!((v - (1.0 + w / 3.0)).norm() < 1e-7);
        assert!(hyp2f2_11(-1.0, 2.0, w, t).is_err());
    }

    #[test]
    fn reference_at_four_i() {
        let w = Complex64::new(0.0, 4.0);
        let v = hyp2f2_11(1.5, 2.0, w, SeriesTruncation::default()).unwrap();
        assert!(
            (v - Complex64::new(0.215_152_969_777_865_9, 0.528_751_184_019_110_3)).norm() < 1e-14
        );
        assert!((hyp2f2_32_2_integral(w).unwrap() - v).norm() < 1e-13);
    }

    #[test]
    fn series_and_integral_agree() {
        for &t in &[2.0, 2.8, 3.5] {
            let w = Complex64::new(0.0, t * t);
            let a = hyp2f2_11(1.5, 2.0, w, SeriesTruncation::default()).unwrap();
            let b = hyp2f2_32_2_integral(w).unwrap();
            assert!(
                (a - b).norm() < 1e-12 * a.norm().max(1.0),
                "τ={t}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn r_at_zero() {
        assert_eq!(r_function(0.0).unwrap(), Complex64::new(0.0, 0.0));
    }
}
