use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
/// Largest admissible Im(z)² − Re(z)², i.e. |e^{−z²}| ≤ e^{700}.
const OVERFLOW_EXPONENT: f64 = 700.0;

/// erf(z) for complex z.
///
/// Maclaurin series where |Re z| ≤ 2 (cancellation bounded by e^{2 Re²z});
/// elsewhere the Laplace continued fraction for erfc, evaluated in the right
/// half-plane and reflected by oddness.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("erf_complex", format!("z = {z}")));
    }
    if z.im * z.im - z.re * z.re > OVERFLOW_EXPONENT {
        return Err(Error::Range {
            op: "erf_complex",
            detail: format!("|e^(-z^2)| overflows at z = {z}"),
        });
    }
    if z.re.abs() <= 2.0 {
        return maclaurin(z);
    }
    if z.re < 0.0 {
        return Ok(-(Complex64::new(1.0, 0.0) - erfc_cf(-z)?));
    }
    Ok(Complex64::new(1.0, 0.0) - erfc_cf(z)?)
}

fn maclaurin(z: Complex64) -> Result<Complex64> {
    // erf z = 2/√π Σ (−1)^n z^{2n+1} / (n! (2n+1))
    let z2 = z * z;
    let mut power = z;
    let mut sum = z;
    for n in 1..2000 {
        power *= -z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum * FRAC_2_SQRT_PI);
        }
    }
    Err(Error::Convergence {
        op: "erf_complex",
        terms: 2000,
        partial: format!("{}", sum * FRAC_2_SQRT_PI),
    })
}

/// erfc z = e^{−z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …)))), Re z > 0.
fn erfc_cf(z: Complex64) -> Result<Complex64> {
    let tiny = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..5000 {
        let a = n as f64 / 2.0;
        d = z + a * d;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        c = z + a / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((-z * z).exp() / (f * PI.sqrt()));
        }
    }
    Err(Error::Convergence {
        op: "erf_complex",
        terms: 5000,
        partial: format!("{f}"),
    })
}

/// Fresnel pair C(x) = ∫₀^x cos(πt²/2) dt, S(x) = ∫₀^x sin(πt²/2) dt,
/// normalized so that C(∞) = S(∞) = 1/2.
pub fn fresnel(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x.is_infinite() {
        let h = 0.5 * x.signum();
        return (h, h);
    }
    // C + iS = (1+i)/2 · erf(√π/2 (1−i) x); the argument stays on the e^{−iπ/4} ray
    let w = Complex64::new(1.0, -1.0) * (PI.sqrt() / 2.0 * x);
    let e = erf_complex(w).expect("erf on the Fresnel ray is always in range");
    let v = Complex64::new(0.5, 0.5) * e;
    (v.re, v.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_values() {
        assert_eq!(
            erf_complex(Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let e1 = erf_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((e1.re - 0.842_700_792_949_714_9).abs() < 1e-15 && e1.im == 0.0);
        let e3 = erf_complex(Complex64::new(3.0, 0.0)).unwrap();
        assert!((e3.re - 0.999_977_909_503_001_4).abs() < 1e-15);
        let em = erf_complex(Complex64::new(-2.5, 0.0)).unwrap();
        assert!((em.re + 0.999_593_047_982_555).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_near_switch() {
        for &(re, im) in &[(2.0, 1.0), (2.0, -3.0), (-2.0, 2.0), (2.0, 2.0)] {
            let z = Complex64::new(re, im);
            let a = maclaurin(z).unwrap();
            let b = Complex64::new(1.0, 0.0)
                - erfc_cf(Complex64::new(re.abs(), im * re.signum())).unwrap();
            let b = if re < 0.0 { -b } else { b };
            assert!(
                (a - b).norm() < 1e-12 * a.norm().max(1.0),
                "z={z}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn complex_reference() {
        // erf(1+i) = 1.3161512816979476 + 0.19045346923783471 i
        let v = erf_complex(Complex64::new(1.0, 1.0)).unwrap();
        assert!(
            (v - Complex64::new(1.316_151_281_697_947_6, 0.190_453_469_237_834_7)).norm() < 1e-14
        );
        // erf(3−3i), continued-fraction branch
        let v = erf_complex(Complex64::new(3.0, -3.0)).unwrap();
        assert!(
            (v - Complex64::new(0.867_826_497_575_451_1, 0.012_152_181_790_312_26)).norm() < 1e-14
        );
    }

    #[test]
    fn overflow_guard() {
        assert!(erf_complex(Complex64::new(0.0, 30.0)).is_err());
    }

    #[test]
    fn fresnel_limits_and_oddness() {
        assert_eq!(fresnel(0.0), (0.0, 0.0));
        let (c, s) = fresnel(1.0);
        assert!((c - 0.779_893_400_376_822_8).abs() < 1e-14);
        assert!((s - 0.438_259_147_390_354_8).abs() < 1e-14);
        let (c, s) = fresnel(1e4);
        assert!((c - 0.5).abs() < 1e-4 && (s - 0.5).abs() < 1e-4);
        for &x in &[0.3, 1.7, 2.5, 6.0] {
            let (c1, s1) = fresnel(x);
            let (c2, s2) = fresnel(-x);
            assert_eq!((c1, s1), (-c2, -s2));
        }
    }
}
