//! Partial and complete Bell polynomials over any commutative ring with
//! integer scaling, so the same code serves f64, Complex64 and the exact ring.

use num_complex::Complex64;
use num_integer::binomial;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

pub trait BellScalar: Clone + Add<Output = Self> + Mul<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_count(c: u64) -> Self;
}

impl BellScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_count(c: u64) -> Self {
        c as f64
    }
}

impl BellScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_count(c: u64) -> Self {
        Complex64::new(c as f64, 0.0)
    }
}

/// Table `t[n][j] = B_{n,j}(x₁,…,x_{n−j+1})` for 0 ≤ j ≤ n ≤ n_max, with
/// `x[i]` holding x_{i+1}.
pub fn bell_partial_table<T: BellScalar>(n_max: usize, x: &[T]) -> Vec<Vec<T>> {
    let mut t: Vec<Vec<T>> = Vec::with_capacity(n_max + 1);
    t.push(vec![T::one()]);
    for n in 1..=n_max {
        let mut row = vec![T::zero(); n + 1];
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            let mut acc = T::zero();
            for i in 1..=(n - j + 1) {
                if i > x.len() || j - 1 > n - i {
                    continue;
                }
                let c = T::from_count(binomial(n as u64 - 1, i as u64 - 1));
                acc = acc + c * x[i - 1].clone() * t[n - i][j - 1].clone();
            }
            *slot = acc;
        }
        t.push(row);
    }
    t
}

/// B_{n,j}(x₁,…,x_{n−j+1}).
pub fn bell_partial<T: BellScalar>(n: usize, j: usize, x: &[T]) -> Result<T> {
    if j < 1 || j > n {
        return Err(Error::domain(
            "bell_partial",
            format!("need 1 ≤ j ≤ n, got n={n}, j={j}"),
        ));
    }
    if x.len() != n - j + 1 {
        return Err(Error::domain(
            "bell_partial",
            format!("expected {} arguments, got {}", n - j + 1, x.len()),
        ));
    }
    Ok(bell_partial_table(n, x)[n][j].clone())
}

/// Complete Bell polynomials B₀ = 1, B₁, …, B_{n_max} by
/// B_{m+1} = Σ_k C(m,k) B_{m−k} x_{k+1}.
pub fn bell_complete_all<T: BellScalar>(n_max: usize, x: &[T]) -> Vec<T> {
    let mut b = Vec::with_capacity(n_max + 1);
    b.push(T::one());
    for m in 0..n_max {
        let mut acc = T::zero();
        for k in 0..=m.min(x.len().saturating_sub(1)) {
            let c = T::from_count(binomial(m as u64, k as u64));
            acc = acc + c * b[m - k].clone() * x[k].clone();
        }
        b.push(acc);
    }
    b
}

/// B_n(x₁,…,x_n) = Σ_j B_{n,j}.
pub fn bell_complete<T: BellScalar>(n: usize, x: &[T]) -> Result<T> {
    if n < 1 || x.len() != n {
        return Err(Error::domain(
            "bell_complete",
            format!("need n ≥ 1 and n arguments, got n={n} with {}", x.len()),
        ));
    }
    Ok(bell_complete_all(n, x)[n].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        let (a, b, c) = (1.3, -0.7, 2.1);
        assert_eq!(bell_partial(1, 1, &[a]).unwrap(), a);
        assert!((bell_partial(3, 2, &[a, b]).unwrap() - 3.0 * a * b).abs() < 1e-14);
        assert!((bell_partial(5, 5, &[a]).unwrap() - a.powi(5)).abs() < 1e-12);
        assert!((bell_complete(2, &[a, b]).unwrap() - (a * a + b)).abs() < 1e-14);
        assert!(
            (bell_complete(3, &[a, b, c]).unwrap() - (a.powi(3) + 3.0 * a * b + c)).abs() < 1e-13
        );
        assert_eq!(bell_complete(5, &[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn complete_is_sum_of_partials() {
        let x: Vec<f64> = (1..=7).map(|i| 0.3 * i as f64 - 1.0).collect();
        let t = bell_partial_table(7, &x);
        let all = bell_complete_all(7, &x);
        for n in 1..=7 {
            let s: f64 = t[n][1..].iter().sum();
            assert!((s - all[n]).abs() < 1e-12 * s.abs().max(1.0));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bell_partial(3, 4, &[1.0]).is_err());
        assert!(bell_partial(3, 0, &[1.0]).is_err());
        assert!(bell_partial(3, 2, &[1.0]).is_err());
        assert!(bell_complete(3, &[1.0, 2.0]).is_err());
    }
}
