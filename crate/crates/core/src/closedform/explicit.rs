//! Hard-coded low-order closed forms. Brackets multiply 1/(2^{3k−1} k!).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{ray_orders, IntegralValue, Method};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TermKind {
    Abs2,
    Re,
    Im,
}

/// coeff = num/den · π^pi_pow, multiplying the basis term.
#[derive(Debug, Clone, Copy)]
pub struct BracketTerm {
    pub num: i64,
    pub den: i64,
    pub pi_pow: i32,
    pub kind: TermKind,
    pub a: usize,
    pub b: usize,
}

const fn t(num: i64, den: i64, pi_pow: i32, kind: TermKind, a: usize, b: usize) -> BracketTerm {
    BracketTerm {
        num,
        den,
        pi_pow,
        kind,
        a,
        b,
    }
}

use TermKind::{Abs2, Im, Re};

const K1: &[BracketTerm] = &[t(1, 1, 0, Abs2, 0, 0)];
const K2: &[BracketTerm] = &[t(1, 1, 1, Abs2, 0, 0), t(4, 1, 0, Im, 0, 1)];
const K3: &[BracketTerm] = &[
    t(7, 4, 2, Abs2, 0, 0),
    t(6, 1, 0, Abs2, 1, 1),
    t(6, 1, 1, Im, 0, 1),
    t(-6, 1, 0, Re, 0, 2),
];
const K4: &[BracketTerm] = &[
    t(5, 2, 3, Abs2, 0, 0),
    t(14, 1, 2, Im, 0, 1),
    t(-12, 1, 1, Re, 0, 2),
    t(-8, 1, 0, Im, 0, 3),
    t(12, 1, 1, Abs2, 1, 1),
    t(24, 1, 0, Im, 1, 2),
];
const K5: &[BracketTerm] = &[
    t(61, 16, 4, Abs2, 0, 0),
    t(25, 1, 3, Im, 0, 1),
    t(-35, 1, 2, Re, 0, 2),
    t(-20, 1, 1, Im, 0, 3),
    t(10, 1, 0, Re, 0, 4),
    t(35, 1, 2, Abs2, 1, 1),
    t(60, 1, 1, Im, 1, 2),
    t(-40, 1, 0, Re, 1, 3),
    t(30, 1, 0, Abs2, 2, 2),
];

/// Bracket of I_k for k = 1..5 (signs as required by I_k(0) > 0).
pub fn explicit_bracket(k: usize) -> Option<&'static [BracketTerm]> {
    match k {
        1 => Some(K1),
        2 => Some(K2),
        3 => Some(K3),
        4 => Some(K4),
        5 => Some(K5),
        _ => None,
    }
}

pub(crate) fn basis_value(kind: TermKind, a: usize, b: usize, d: &[Complex64]) -> f64 {
    match kind {
        TermKind::Abs2 => d[a].norm_sqr(),
        TermKind::Re => (d[a] * d[b].conj()).re,
        TermKind::Im => (d[a] * d[b].conj()).im,
    }
}

fn eval_bracket(terms: &[BracketTerm], shift: usize, d: &[Complex64]) -> (f64, f64) {
    let mut sum = 0.0;
    let mut mag = 0.0;
    for term in terms {
        let c = term.num as f64 / term.den as f64 * PI.powi(term.pi_pow);
        let v = c * basis_value(term.kind, term.a + shift, term.b + shift, d);
        sum += v;
        mag += v.abs();
    }
    (sum, mag)
}

pub fn i_k_explicit(k: usize, tau: f64) -> Result<IntegralValue> {
    let terms = explicit_bracket(k)
        .ok_or_else(|| Error::domain("i_k_explicit", format!("k = {k} outside 1..=5")))?;
    let d = ray_orders(k - 1, tau)?;
    let (sum, mag) = eval_bracket(terms, 0, &d);
    let pref = 1.0 / (2f64.powi(3 * k as i32 - 1) * (1..=k).product::<usize>() as f64);
    Ok(IntegralValue {
        k,
        tau,
        value: pref * sum,
        method: Method::ExplicitK,
        err_estimate: 1e-12 * mag * pref,
    })
}

const DN0: &[BracketTerm] = &[t(1, 1, 0, Abs2, 0, 0)];
const DN1: &[BracketTerm] = &[t(-2, 1, 0, Im, 0, 1)];
const DN2: &[BracketTerm] = &[
    t(1, 3, 2, Abs2, 0, 0),
    t(-2, 1, 0, Re, 0, 2),
    t(2, 1, 0, Abs2, 1, 1),
];
const DN3: &[BracketTerm] = &[
    t(-2, 1, 2, Im, 0, 1),
    t(2, 1, 0, Im, 0, 3),
    t(-6, 1, 0, Im, 1, 2),
];
const DN4: &[BracketTerm] = &[
    t(1, 5, 4, Abs2, 0, 0),
    t(-4, 1, 2, Re, 0, 2),
    t(2, 1, 0, Re, 0, 4),
    t(4, 1, 2, Abs2, 1, 1),
    t(-8, 1, 0, Re, 1, 3),
    t(6, 1, 0, Abs2, 2, 2),
];

/// Closed forms of ∂^n_ν |𝒟^{(k)}_{−iν−1}(−iμ₀τ)|² at ν = 0 for n ≤ 4.
pub fn printed_modsq_bracket(n: usize) -> Option<&'static [BracketTerm]> {
    match n {
        0 => Some(DN0),
        1 => Some(DN1),
        2 => Some(DN2),
        3 => Some(DN3),
        4 => Some(DN4),
        _ => None,
    }
}

pub fn d_modsq_deriv_printed(n: usize, k: usize, tau: f64) -> Result<f64> {
    let terms = printed_modsq_bracket(n).ok_or_else(|| {
        Error::domain(
            "d_modsq_deriv",
            format!("closed form only for n ≤ 4, got {n}"),
        )
    })?;
    let d = ray_orders(k + n, tau)?;
    Ok(eval_bracket(terms, k, &d).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{d_modsq_deriv, i_k};

    #[test]
    fn explicit_matches_general() {
        for k in 1..=5 {
            for &tau in &[-3.0, 0.0, 2.0, 3.0, 7.0] {
                let a = i_k_explicit(k, tau).unwrap().value;
                let b = i_k(k, tau).unwrap().value;
                assert!((a - b).abs() < 1e-10, "k={k} τ={tau}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn printed_derivatives_match_general() {
        for n in 0..=4 {
            for k in 0..=2 {
                for &tau in &[-2.0, 0.5, 4.0] {
                    let a = d_modsq_deriv_printed(n, k, tau).unwrap();
                    let b = d_modsq_deriv(n, k, tau).unwrap();
                    assert!(
                        (a - b).abs() < 1e-9 * b.abs().max(1.0),
                        "n={n} k={k} τ={tau}: {a} vs {b}"
                    );
                }
            }
        }
    }
}
