//! Exact constants: ℚ(i)-linear combinations of monomials in π, γ, ln 2 and
//! odd zeta values.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::specfun::{BellScalar, EULER_GAMMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Pi,
    Gamma,
    Ln2,
    /// ζ(n) for odd n ≥ 3; even arguments are rewritten through π.
    Zeta(u32),
}

impl Symbol {
    pub fn value(self) -> f64 {
        match self {
            Symbol::Pi => std::f64::consts::PI,
            Symbol::Gamma => EULER_GAMMA,
            Symbol::Ln2 => std::f64::consts::LN_2,
            Symbol::Zeta(n) => crate::specfun::zeta(n).unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Pi => f.write_str("π"),
            Symbol::Gamma => f.write_str("γ"),
            Symbol::Ln2 => f.write_str("λ₂"),
            Symbol::Zeta(n) => write!(f, "ζ{}", subscript(*n)),
        }
    }
}

fn subscript(n: u32) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

pub(crate) fn superscript(n: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| SUP[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Product of symbol powers; the empty monomial is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Symbol, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn of(sym: Symbol, pow: u32) -> Self {
        let mut m = BTreeMap::new();
        if pow > 0 {
            m.insert(sym, pow);
        }
        Monomial(m)
    }

    pub fn power(&self, sym: Symbol) -> u32 {
        self.0.get(&sym).copied().unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.0.iter().map(|(s, p)| (*s, *p))
    }

    /// Some(j) iff the monomial is π^j.
    pub fn pi_power(&self) -> Option<u32> {
        match self.0.len() {
            0 => Some(0),
            1 => self.0.get(&Symbol::Pi).copied(),
            _ => None,
        }
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (s, p) in &other.0 {
            *m.entry(*s).or_insert(0) += p;
        }
        Monomial(m)
    }

    fn value(&self) -> f64 {
        self.0
            .iter()
            .map(|(s, p)| s.value().powi(*p as i32))
            .product()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, p) in &self.0 {
            if *p == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}{}", superscript(*p))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn mul(&self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(ratio_f64(&self.re), ratio_f64(&self.im))
    }
}

pub(crate) fn ratio_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Element of ℚ(i)[π, γ, λ₂, ζ₃, ζ₅, …] in canonical form: no zero
/// coefficients, monomials ordered.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymbolicConstant {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl SymbolicConstant {
    pub fn zero() -> Self {
        SymbolicConstant::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), GaussianRational::from_ints(1, 0))
    }

    pub fn i() -> Self {
        Self::term(Monomial::one(), GaussianRational::from_ints(0, 1))
    }

    pub fn rational(q: BigRational) -> Self {
        Self::term(Monomial::one(), GaussianRational::real(q))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(Monomial::of(s, 1), GaussianRational::from_ints(1, 0))
    }

    /// q·π^j.
    pub fn pi_term(q: BigRational, j: u32) -> Self {
        Self::term(Monomial::of(Symbol::Pi, j), GaussianRational::real(q))
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymbolicConstant { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn conj(&self) -> Self {
        SymbolicConstant {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    /// Coefficient-wise real part (all symbols are real).
    pub fn re(&self) -> Self {
        self.map_coeffs(|c| GaussianRational::real(c.re.clone()))
    }

    pub fn im(&self) -> Self {
        self.map_coeffs(|c| GaussianRational::real(c.im.clone()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.map_coeffs(|c| GaussianRational::new(&c.re * q, &c.im * q))
    }

    fn map_coeffs(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        SymbolicConstant { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Some((q, j)) iff the value is q·π^j with q real rational (zero gives (0, 0)).
    pub fn as_rational_pi_power(&self) -> Option<(BigRational, u32)> {
        if self.terms.is_empty() {
            return Some((BigRational::zero(), 0));
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !c.im.is_zero() {
            return None;
        }
        Some((c.re.clone(), m.pi_power()?))
    }

    /// Monomials carrying γ, λ₂ or a zeta value.
    pub fn transcendental_monomials(&self) -> Vec<Monomial> {
        self.terms
            .keys()
            .filter(|m| m.symbols().any(|(s, _)| s != Symbol::Pi))
            .cloned()
            .collect()
    }

    /// Floating-point image (one-way bridge).
    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex() * m.value())
            .sum()
    }
}

impl Add for &SymbolicConstant {
    type Output = SymbolicConstant;
    fn add(self, o: &SymbolicConstant) -> SymbolicConstant {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let e = terms
                .entry(m.clone())
                .or_insert_with(|| GaussianRational::from_ints(0, 0));
            e.re += &c.re;
            e.im += &c.im;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        SymbolicConstant { terms }
    }
}

impl Mul for &SymbolicConstant {
    type Output = SymbolicConstant;
    fn mul(self, o: &SymbolicConstant) -> SymbolicConstant {
        let mut acc = SymbolicConstant::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                acc = &acc + &SymbolicConstant::term(m1.times(m2), c1.mul(c2));
            }
        }
        acc
    }
}

impl Neg for &SymbolicConstant {
    type Output = SymbolicConstant;
    fn neg(self) -> SymbolicConstant {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &SymbolicConstant {
    type Output = SymbolicConstant;
    fn sub(self, o: &SymbolicConstant) -> SymbolicConstant {
        self + &(-o)
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for SymbolicConstant {
            type Output = SymbolicConstant;
            fn $f(self, o: SymbolicConstant) -> SymbolicConstant {
                (&self).$f(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Mul, mul);
by_value!(Sub, sub);

impl Neg for SymbolicConstant {
    type Output = SymbolicConstant;
    fn neg(self) -> SymbolicConstant {
        -&self
    }
}

impl BellScalar for SymbolicConstant {
    fn zero() -> Self {
        SymbolicConstant::zero()
    }
    fn one() -> Self {
        SymbolicConstant::one()
    }
    fn from_count(n: u64) -> Self {
        SymbolicConstant::rational(BigRational::from_integer(BigInt::from(n)))
    }
}

/// `q` as "p/q" or "p".
pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let coeff = match (c.re.is_zero(), c.im.is_zero()) {
                (false, true) => fmt_rational(&c.re),
                (true, false) => format!("{}i", fmt_rational(&c.im)),
                _ => format!(
                    "({} {} {}i)",
                    fmt_rational(&c.re),
                    if c.im.is_negative() { "−" } else { "+" },
                    fmt_rational(&c.im.abs())
                ),
            };
            let ms = m.to_string();
            if ms.is_empty() {
                f.write_str(&coeff)?;
            } else if coeff == "1" {
                f.write_str(&ms)?;
            } else {
                write!(f, "{coeff}·{ms}")?;
            }
        }
        Ok(())
    }
}

/// Exact Bernoulli numbers B_0..=B_n (B_1 = −1/2).
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // Σ_{j<m} C(m+1, j) B_j + (m+1) B_m = 0
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            s += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// ζ(n) for integer n ≥ 2: rational·π^n for even n, the symbol otherwise.
pub fn zeta_exact(n: u32) -> SymbolicConstant {
    assert!(n >= 2, "ζ(n) needs n ≥ 2");
    if n % 2 == 1 {
        return SymbolicConstant::symbol(Symbol::Zeta(n));
    }
    // ζ(2m) = (−1)^{m+1} B_{2m} (2π)^{2m} / (2 (2m)!)
    let m = n / 2;
    let b = bernoulli(n as usize).pop().unwrap();
    let mut fact = BigInt::one();
    for i in 1..=n {
        fact *= BigInt::from(i);
    }
    let two_pow = BigInt::from(2).pow(n);
    let sign = if m % 2 == 1 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let q = sign * b * BigRational::from_integer(two_pow) / BigRational::from_integer(fact * 2);
    SymbolicConstant::pi_term(q, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_zeta_values() {
        assert_eq!(zeta_exact(2), SymbolicConstant::pi_term(rat(1, 6), 2));
        assert_eq!(zeta_exact(4), SymbolicConstant::pi_term(rat(1, 90), 4));
        assert_eq!(zeta_exact(6), SymbolicConstant::pi_term(rat(1, 945), 6));
        let z10 = zeta_exact(10).to_complex().re;
        assert!((z10 - crate::specfun::zeta(10).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn i_squared() {
        let i = SymbolicConstant::i();
        assert_eq!(&i * &i, SymbolicConstant::integer(-1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let g = SymbolicConstant::symbol(Symbol::Gamma);
        assert!((&g - &g).is_zero());
    }

    #[test]
    fn display() {
        let x =
            &SymbolicConstant::pi_term(rat(7, 4), 2) + &SymbolicConstant::symbol(Symbol::Zeta(3));
        assert_eq!(x.to_string(), "7/4·π² + ζ₃");
    }
}
