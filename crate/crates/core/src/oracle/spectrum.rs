use num_complex::Complex64;

use super::grid::SampledCurve;
use crate::error::{Error, Result};

/// |Σ f(τ_j) e^{iωτ_j} h| at ω = 2πm/(N h), m = −N/2..N/2, for a curve on a
/// uniform grid of spacing h. The `err` column carries h·Σ err_j.
pub fn fourier_spectrum(curve: &SampledCurve) -> Result<SampledCurve> {
    let n = curve.len();
    if n < 2 {
        return Err(Error::domain("fourier_spectrum", format!("{n} samples")));
    }
    let h = (curve.tau[n - 1] - curve.tau[0]) / (n - 1) as f64;
    for w in curve.tau.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0) {
            return Err(Error::domain(
                "fourier_spectrum",
                format!("non-uniform spacing near τ = {}", w[0]),
            ));
        }
    }
    let half = (n / 2) as i64;
    let dw = 2.0 * std::f64::consts::PI / (n as f64 * h);
    let err_bound = h * curve.err.iter().sum::<f64>();
    let mut out = SampledCurve {
        tau: Vec::with_capacity(n),
        values: Vec::with_capacity(n),
        err: Vec::with_capacity(n),
    };
    for m in -half..=half {
        let omega = m as f64 * dw;
        let s: Complex64 = curve
            .tau
            .iter()
            .zip(&curve.values)
            .map(|(&t, &f)| Complex64::from_polar(f, omega * t))
            .sum();
        out.tau.push(omega);
        out.values.push((s * h).norm());
        out.err.push(err_bound);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(f: impl Fn(f64) -> f64) -> SampledCurve {
        let tau: Vec<f64> = (0..101).map(|i| -5.0 + 0.1 * i as f64).collect();
        SampledCurve {
            values: tau.iter().map(|&t| f(t)).collect(),
            err: vec![0.0; tau.len()],
            tau,
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let s = fourier_spectrum(&curve(|_| 0.0)).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn even_window_symmetric() {
        let s = fourier_spectrum(&curve(|t| (-t * t).exp())).unwrap();
        let n = s.len();
        for i in 0..n {
            assert!((s.values[i] - s.values[n - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_nonuniform() {
        let mut c = curve(|t| t);
        c.tau[3] += 0.01;
        assert!(fourier_spectrum(&c).is_err());
    }
}
