use num_complex::Complex64;
use num_integer::binomial;
use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::specfun::{bell_complete_all, polygamma, polygamma_complex};

/// φ^{(1)}(ν) = −i(ψ(iν+1) − ln2/2);  φ^{(r)}(ν) = −(i^r) ψ^{(r−1)}(iν+1), r > 1.
pub fn phi_r(r: usize, nu: f64) -> Result<Complex64> {
    if r == 0 {
        return Err(Error::domain("phi_r", "r must be ≥ 1"));
    }
    if !nu.is_finite() {
        return Err(Error::domain("phi_r", format!("ν = {nu}")));
    }
    let psi = if nu == 0.0 {
        Complex64::new(polygamma(r as u32 - 1, 1.0)?, 0.0)
    } else {
        polygamma_complex(r as u32 - 1, Complex64::new(1.0, nu))?
    };
    let i = Complex64::new(0.0, 1.0);
    if r == 1 {
        Ok(-i * (psi - LN_2 / 2.0))
    } else {
        Ok(-i.powi(r as i32) * psi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PPolyKey {
    pub n: usize,
    pub m: i64,
    pub nu: f64,
}

/// 𝓟_{n,m}(ν) = (−i)^m C(n,m) B_{n−m}(φ^{(1)},…,φ^{(n−m)}), B₀ = 1, for all
/// n ≤ n_max. Built once and read-only afterwards.
#[derive(Debug, Clone)]
pub struct PPolyTable {
    n_max: usize,
    nu: f64,
    values: Vec<Vec<Complex64>>,
}

impl PPolyTable {
    pub fn new(n_max: usize, nu: f64) -> Result<Self> {
        let phis = (1..=n_max)
            .map(|r| phi_r(r, nu))
            .collect::<Result<Vec<_>>>()?;
        let bell = bell_complete_all(n_max, &phis);
        let minus_i = Complex64::new(0.0, -1.0);
        let values = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|m| {
                        minus_i.powi(m as i32) * bell[n - m] * binomial(n as u64, m as u64) as f64
                    })
                    .collect()
            })
            .collect();
        Ok(PPolyTable { n_max, nu, values })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// 𝓟_{n,m}; zero for m < 0 or m > n. Panics if n exceeds the table.
    pub fn get(&self, n: usize, m: i64) -> Complex64 {
        if m < 0 || m as usize > n {
            return Complex64::new(0.0, 0.0);
        }
        self.values[n][m as usize]
    }
}

pub fn p_poly(key: PPolyKey) -> Result<Complex64> {
    if key.m < 0 || key.m as usize > key.n {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(PPolyTable::new(key.n, key.nu)?.get(key.n, key.m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;
    use std::f64::consts::PI;

    #[test]
    fn phi_values_at_zero() {
        let p1 = phi_r(1, 0.0).unwrap();
        assert!(p1.re.abs() < 1e-16 && (p1.im - (EULER_GAMMA + LN_2 / 2.0)).abs() < 1e-15);
        let p2 = phi_r(2, 0.0).unwrap();
        assert!((p2 - PI * PI / 6.0).norm() < 1e-14);
    }

    #[test]
    fn phi_higher_orders_are_derivatives_of_first() {
        // φ^{(r+1)} = d/dν φ^{(r)}
        let h = 1e-4;
        for r in 1..4 {
            for &nu in &[0.0, 0.3, -0.7] {
                let fd = (phi_r(r, nu + h).unwrap() - phi_r(r, nu - h).unwrap()) / (2.0 * h);
                let exact = phi_r(r + 1, nu).unwrap();
                assert!(
                    (fd - exact).norm() < 1e-6 * exact.norm().max(1.0),
                    "r={r} ν={nu}: {fd} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn p_poly_structure() {
        let key = |n, m| PPolyKey { n, m, nu: 0.0 };
        assert!((p_poly(key(2, 2)).unwrap() + 1.0).norm() < 1e-15);
        assert!((p_poly(key(1, 0)).unwrap() - phi_r(1, 0.0).unwrap()).norm() < 1e-15);
        assert_eq!(p_poly(key(3, 5)).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(p_poly(key(3, -1)).unwrap(), Complex64::new(0.0, 0.0));
        for n in 0..6 {
            let expect = Complex64::new(0.0, -1.0).powi(n as i32);
            assert!((p_poly(key(n, n as i64)).unwrap() - expect).norm() < 1e-15);
        }
    }
}
