use crate::error::{Error, Result};
use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// B₂, B₄, …, B₃₀.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * j as f64)
}

/// Γ(x) for real x > 0. Integers and half-integers use the exact recurrence
/// from Γ(1) = 1 and Γ(1/2) = √π.
pub fn gamma_positive(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("gamma_positive", format!("x = {x}")));
    }
    if x > 171.6 {
        return Err(Error::Range {
            op: "gamma_positive",
            detail: format!("Γ({x}) overflows"),
        });
    }
    let twice = 2.0 * x;
    if twice.fract() == 0.0 {
        let half = (twice as u64) % 2 == 1;
        let (mut v, mut a) = if half { (SQRT_PI, 0.5) } else { (1.0, 1.0) };
        while a < x {
            v *= a;
            a += 1.0;
        }
        return Ok(v);
    }
    Ok(ln_gamma(Complex64::new(x, 0.0))?.re.exp())
}

/// Principal-branch-free log-gamma for Re z > 0: exp of the result is Γ(z),
/// the imaginary part may differ from the principal value by multiples of 2π.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(Error::domain(
            "ln_gamma",
            format!("z = {z} (need Re z > 0)"),
        ));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < 17.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(10) {
        let k = (k + 1) as f64;
        series += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - shift)
}

/// Γ(z) for Re z > 0.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// ζ(n) for integer n ≥ 2 by Euler–Maclaurin summation.
pub fn zeta(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(
            "zeta",
            format!("n = {n} (pole or unsupported)"),
        ));
    }
    let s = n as f64;
    let big_n = 10.0_f64;
    let mut sum: f64 = (1..10).map(|j| (j as f64).powf(-s)).sum();
    sum += big_n.powf(1.0 - s) / (s - 1.0) + 0.5 * big_n.powf(-s);
    // rising product s(s+1)…(s+2k−2) / (2k)!
    let mut rising = s;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(12) {
        let k = (k + 1) as f64;
        sum += b * rising / fact * big_n.powf(-s - 2.0 * k + 1.0);
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    Ok(sum)
}

/// ψ^{(r)}(x) for real x > 0. Integer and half-integer arguments start from the
/// closed values at 1 and 1/2 and climb with
/// ψ^{(r)}(x+1) = ψ^{(r)}(x) + (−1)^r r! x^{−(r+1)}.
/// For r ≥ 1 the climb cancels (the steps oppose the start value), so it is
/// only used up to x = 2; larger arguments go through the asymptotic series.
pub fn polygamma(r: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "polygamma",
            format!("x = {x} (poles at x ≤ 0)"),
        ));
    }
    let twice = 2.0 * x;
    if twice.fract() == 0.0 && (x <= 2.0 || (r == 0 && x <= 64.0)) {
        let half = (twice as u64) % 2 == 1;
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let rf = factorial(r);
        let mut v = if r == 0 {
            if half {
                -EULER_GAMMA - 2.0 * std::f64::consts::LN_2
            } else {
                -EULER_GAMMA
            }
        } else {
            let z = zeta(r + 1)?;
            let scale = if half {
                2f64.powi(r as i32 + 1) - 1.0
            } else {
                1.0
            };
            -sign * rf * z * scale
        };
        let mut a = if half { 0.5 } else { 1.0 };
        while a < x {
            v += sign * rf * a.powi(-(r as i32) - 1);
            a += 1.0;
        }
        return Ok(v);
    }
    Ok(polygamma_complex(r, Complex64::new(x, 0.0))?.re)
}

/// ψ^{(r)}(z) for Re z > 0 via upward shift and the asymptotic series.
pub fn polygamma_complex(r: u32, z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(Error::domain(
            "polygamma",
            format!("z = {z} (need Re z > 0)"),
        ));
    }
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    let rf = factorial(r);
    let threshold = 20.0 + r as f64;
    let mut w = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while w.norm() < threshold {
        correction += w.powi(-(r as i32) - 1);
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let asym = if r == 0 {
        let mut s = w.ln() - 0.5 * inv;
        let mut pow = inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let k = (k + 1) as f64;
            s -= pow * (b / (2.0 * k));
            pow *= inv2;
        }
        s
    } else {
        let inv_r = inv.powi(r as i32);
        let mut s = inv_r * factorial(r - 1) + inv_r * inv * (0.5 * rf);
        // (2k+r−1)!/(2k)!
        let mut pow = inv_r * inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let k2 = 2 * (k as u32 + 1);
            let ratio: f64 = (k2 + 1..=k2 + r - 1).fold(1.0, |acc, j| acc * j as f64);
            s += pow * (b * ratio);
            pow *= inv2;
        }
        -sign * s
    };
    // ψ^{(r)}(z) = ψ^{(r)}(z+n) − (−1)^r r! Σ (z+j)^{−(r+1)}
    Ok(asym - correction * (sign * rf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_values() {
        assert!((gamma_positive(0.5).unwrap() - SQRT_PI).abs() < 1e-15);
        assert_eq!(gamma_positive(1.0).unwrap(), 1.0);
        assert!((gamma_positive(2.5).unwrap() - 0.75 * SQRT_PI).abs() < 1e-15);
        assert!((gamma_positive(0.3).unwrap() - 2.991_568_987_687_590_6).abs() < 1e-13);
        assert!(gamma_positive(0.0).is_err());
        assert!(gamma_positive(-1.5).is_err());
    }

    #[test]
    fn ln_gamma_complex_matches_reference() {
        // Γ(1+i) = 0.49801566811835604 − 0.15494982830181069 i
        let g = gamma_complex(Complex64::new(1.0, 1.0)).unwrap();
        assert!(
            (g - Complex64::new(0.498_015_668_118_356, -0.154_949_828_301_810_7)).norm() < 1e-14
        );
    }

    #[test]
    fn polygamma_values() {
        assert!((polygamma(0, 1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((polygamma(1, 1.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((polygamma(0, 0.5).unwrap() + 1.963_510_026_021_423_5).abs() < 1e-14);
        assert!(polygamma(0, 0.0).is_err());
        assert!(polygamma(2, -2.0).is_err());
    }

    #[test]
    fn polygamma_paths_agree() {
        for r in 0..8 {
            for &x in &[0.5, 1.0, 3.5, 7.0, 12.5] {
                let exact = polygamma(r, x).unwrap();
                let asym = polygamma_complex(r, Complex64::new(x, 0.0)).unwrap().re;
                assert!(
                    (exact - asym).abs() <= 1e-12 * exact.abs().max(1.0),
                    "r={r} x={x}: {exact} vs {asym}"
                );
            }
        }
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(3).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-15);
        assert!((zeta(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
    }
}
