use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

use super::ring::{zeta_exact, Monomial, Symbol, SymbolicConstant};
use crate::closedform::{ray_orders, TermKind};
use crate::error::{Error, Result};
use crate::specfun::bell_complete_all;

/// |𝒟^{(a)}|², Re[𝒟^{(a)} 𝒟^{(b)*}] or Im[𝒟^{(a)} 𝒟^{(b)*}] with a < b; all
/// at index −1 and argument −iμ₀τ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisTerm {
    pub kind: TermKind,
    pub a: usize,
    pub b: usize,
}

impl BasisTerm {
    pub fn abs2(a: usize) -> Self {
        BasisTerm {
            kind: TermKind::Abs2,
            a,
            b: a,
        }
    }

    pub fn re(a: usize, b: usize) -> Self {
        BasisTerm {
            kind: TermKind::Re,
            a,
            b,
        }
    }

    pub fn im(a: usize, b: usize) -> Self {
        BasisTerm {
            kind: TermKind::Im,
            a,
            b,
        }
    }

    /// Value from 𝒟^{(0..)} at one τ.
    pub fn evaluate(&self, d: &[Complex64]) -> f64 {
        let x = d[self.a] * d[self.b].conj();
        match self.kind {
            TermKind::Abs2 => x.re,
            TermKind::Re => x.re,
            TermKind::Im => x.im,
        }
    }

    fn key(&self) -> (usize, usize, TermKind) {
        (self.a, self.b, self.kind)
    }
}

impl PartialOrd for BasisTerm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisTerm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for BasisTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TermKind::Abs2 => write!(f, "|D{}|²", self.a),
            TermKind::Re => write!(f, "Re[D{}·D{}*]", self.a, self.b),
            TermKind::Im => write!(f, "Im[D{}·D{}*]", self.a, self.b),
        }
    }
}

/// prefactor × Σ coeff·term, terms in canonical order with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralExpression {
    pub k: usize,
    pub prefactor: SymbolicConstant,
    pub terms: Vec<(SymbolicConstant, BasisTerm)>,
}

impl IntegralExpression {
    /// Value at τ through the numeric PCF layer.
    pub fn evaluate(&self, tau: f64) -> Result<f64> {
        let top = self.terms.iter().map(|(_, t)| t.b).max().unwrap_or(0);
        let d = ray_orders(top, tau)?;
        self.evaluate_with(&d)
    }

    pub fn evaluate_with(&self, d: &[Complex64]) -> Result<f64> {
        let mut s = Complex64::new(0.0, 0.0);
        for (c, t) in &self.terms {
            if t.b >= d.len() {
                return Err(Error::domain(
                    "evaluate",
                    format!("term {t} needs order {}", t.b),
                ));
            }
            s += c.to_complex() * t.evaluate(d);
        }
        Ok((s * self.prefactor.to_complex()).re)
    }

    /// Coefficients as (q, j) for q·π^j; None if any coefficient is outside ℚ·π^j.
    pub fn rational_pi_coefficients(&self) -> Option<Vec<(BigRational, u32)>> {
        self.terms
            .iter()
            .map(|(c, _)| c.as_rational_pi_power())
            .collect()
    }
}

/// Which reading of the two ambiguous conventions to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    /// φ^{(r)} = −(i^r) ψ^{(r−1)} for r ≥ 2 when true, (−i)^r ψ^{(r−1)} otherwise.
    pub phi_minus_i_power: bool,
    /// Binomial C(n, j) over the Leibniz split when true, C(n, k) over the
    /// inner derivative order otherwise.
    pub leibniz_binomial: bool,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            phi_minus_i_power: true,
            leibniz_binomial: true,
        }
    }
}

fn i_pow(r: usize) -> SymbolicConstant {
    SymbolicConstant::i().pow(r as u32)
}

fn minus_i_pow(r: usize) -> SymbolicConstant {
    (-SymbolicConstant::i()).pow(r as u32)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// φ^{(r)} at ν = 0: i(γ + λ₂/2) for r = 1, −(i^r)(−1)^r (r−1)! ζ(r) beyond.
pub fn sym_phi(r: usize) -> SymbolicConstant {
    sym_phi_with(r, Conventions::default())
}

pub fn sym_phi_with(r: usize, conv: Conventions) -> SymbolicConstant {
    assert!(r >= 1, "φ^(r) needs r ≥ 1");
    if r == 1 {
        let half = BigRational::new(1.into(), 2.into());
        let inner = &SymbolicConstant::symbol(Symbol::Gamma)
            + &SymbolicConstant::symbol(Symbol::Ln2).scale(&half);
        return &SymbolicConstant::i() * &inner;
    }
    // ψ^{(m)}(1) = (−1)^{m+1} m! ζ(m+1), m = r − 1
    let m = r - 1;
    let sign = if (m + 1) % 2 == 0 { 1 } else { -1 };
    let psi = zeta_exact(r as u32).scale(&BigRational::from_integer(factorial(m) * sign));
    if conv.phi_minus_i_power {
        -(&i_pow(r) * &psi)
    } else {
        &minus_i_pow(r) * &psi
    }
}

/// 𝓟_{n,m}(0) table, rows n = 0..=n_max.
fn p_table(n_max: usize, conv: Conventions) -> Vec<Vec<SymbolicConstant>> {
    let phis: Vec<SymbolicConstant> = (1..=n_max).map(|r| sym_phi_with(r, conv)).collect();
    let bell = bell_complete_all(n_max, &phis);
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|m| {
                    let c = BigRational::from_integer(BigInt::from(binomial(n as u64, m as u64)));
                    (&minus_i_pow(m) * &bell[n - m]).scale(&c)
                })
                .collect()
        })
        .collect()
}

pub fn sym_p_poly(n: usize, m: i64) -> SymbolicConstant {
    if m < 0 || m as usize > n {
        return SymbolicConstant::zero();
    }
    p_table(n, Conventions::default())[n][m as usize].clone()
}

/// Coefficients c[(a, b)] of 𝒟^{(a)} 𝒟^{(b)*} in ∂^n_ν |𝒟^{(0)}_{−iν−1}|² at ν = 0.
fn bilinear(n: usize, conv: Conventions) -> BTreeMap<(usize, usize), SymbolicConstant> {
    let p = p_table(n, conv);
    let mut out: BTreeMap<(usize, usize), SymbolicConstant> = BTreeMap::new();
    for j in 0..=n {
        for k in 0..=(n - j) {
            for l in 0..=j {
                let binom = if conv.leibniz_binomial {
                    binomial(n as u64, j as u64)
                } else {
                    binomial(n as u64, k as u64)
                };
                let c = (&p[n - j][k] * &p[j][l].conj())
                    .scale(&BigRational::from_integer(BigInt::from(binom)));
                let e = out.entry((k, l)).or_default();
                *e = &*e + &c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Fold c_ab X + c_ba X̄ (X = 𝒟^{(a)}𝒟^{(b)*}) into the real basis. Fails if
/// the bilinear form is not Hermitian.
fn to_basis(
    form: &BTreeMap<(usize, usize), SymbolicConstant>,
    shift: usize,
) -> Result<Vec<(SymbolicConstant, BasisTerm)>> {
    let mut terms = Vec::new();
    let zero = SymbolicConstant::zero();
    let keys: Vec<(usize, usize)> = form.keys().copied().collect();
    for (a, b) in keys {
        if a > b {
            continue;
        }
        let cab = &form[&(a, b)];
        if a == b {
            if !cab.im().is_zero() {
                return Err(Error::inconsistent(
                    "sym_expression",
                    format!("|𝒟^({a})|² has non-real coefficient {cab}"),
                ));
            }
            terms.push((cab.clone(), BasisTerm::abs2(a + shift)));
            continue;
        }
        let cba = form.get(&(b, a)).unwrap_or(&zero);
        if *cba != cab.conj() {
            return Err(Error::inconsistent(
                "sym_expression",
                format!("pair ({a},{b}) is not Hermitian: {cab} vs {cba}"),
            ));
        }
        let two = BigRational::from_integer(2.into());
        let re = cab.re().scale(&two);
        let im = (-cab.im()).scale(&two);
        if !re.is_zero() {
            terms.push((re, BasisTerm::re(a + shift, b + shift)));
        }
        if !im.is_zero() {
            terms.push((im, BasisTerm::im(a + shift, b + shift)));
        }
    }
    for (a, b) in form.keys() {
        if a > b && !form.contains_key(&(*b, *a)) {
            return Err(Error::inconsistent(
                "sym_expression",
                format!("pair ({b},{a}) is missing its partner"),
            ));
        }
    }
    terms.sort_by(|x, y| x.1.cmp(&y.1));
    Ok(terms)
}

/// ∂^n_ν |𝒟^{(k)}_{−iν−1}|² at ν = 0 over orders k..=k+n, unit prefactor.
pub fn sym_derivative_modsq(n: usize, k: usize) -> Result<IntegralExpression> {
    Ok(IntegralExpression {
        k: n,
        prefactor: SymbolicConstant::one(),
        terms: to_basis(&bilinear(n, Conventions::default()), k)?,
    })
}

/// I_k as (1/(2^{3k−1} k!)) × [Σ coeff·term].
pub fn sym_expression(k: usize) -> Result<IntegralExpression> {
    sym_expression_with(k, Conventions::default())
}

pub fn sym_expression_with(k: usize, conv: Conventions) -> Result<IntegralExpression> {
    if k == 0 {
        return Err(Error::domain("sym_expression", "k must be ≥ 1"));
    }
    // I_k = π^{k−1}/2^{4k−2} Σ_n (−2/π)^n/(n!(k−1−n)!) 𝓙_n, rescaled by 2^{3k−1} k!
    let mut total: BTreeMap<(usize, usize), SymbolicConstant> = BTreeMap::new();
    for n in 0..k {
        let num =
            BigInt::from(-2).pow(n as u32) * BigInt::from(2).pow(3 * k as u32 - 1) * factorial(k);
        let den = BigInt::from(2).pow(4 * k as u32 - 2) * factorial(n) * factorial(k - 1 - n);
        let w = SymbolicConstant::pi_term(BigRational::new(num, den), (k - 1 - n) as u32);
        for (key, c) in bilinear(n, conv) {
            let e = total.entry(key).or_default();
            *e = &*e + &(&w * &c);
        }
    }
    total.retain(|_, v| !v.is_zero());
    let prefactor = SymbolicConstant::rational(BigRational::new(
        BigInt::one(),
        BigInt::from(2).pow(3 * k as u32 - 1) * factorial(k),
    ));
    Ok(IntegralExpression {
        k,
        prefactor,
        terms: to_basis(&total, 0)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub k: usize,
    pub pass: bool,
    /// (term, offending monomial) pairs.
    pub offending: Vec<(BasisTerm, Monomial)>,
}

impl fmt::Display for CancellationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            return write!(f, "k={}: all coefficients in ℚ·π^j", self.k);
        }
        write!(f, "k={}: surviving monomials", self.k)?;
        for (t, m) in &self.offending {
            write!(f, " [{t}: {m}]")?;
        }
        Ok(())
    }
}

/// Passes iff every coefficient (and the prefactor) lies in ℚ·π^j.
pub fn verify_cancellation(expr: &IntegralExpression) -> CancellationReport {
    let mut offending = Vec::new();
    for (c, t) in &expr.terms {
        for m in c.transcendental_monomials() {
            offending.push((*t, m));
        }
        if c.as_rational_pi_power().is_none() && c.transcendental_monomials().is_empty() {
            // mixed π powers or a non-real coefficient
            for (m, _) in c.terms() {
                offending.push((*t, m.clone()));
            }
        }
    }
    CancellationReport {
        k: expr.k,
        pass: offending.is_empty() && expr.prefactor.as_rational_pi_power().is_some(),
        offending,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{explicit_bracket, phi_r, PPolyTable};
    use crate::symbolic::ring::rat;

    #[test]
    fn phi_one_and_two() {
        let half = BigRational::new(1.into(), 2.into());
        let expect = &(&SymbolicConstant::i() * &SymbolicConstant::symbol(Symbol::Gamma))
            + &(&SymbolicConstant::i() * &SymbolicConstant::symbol(Symbol::Ln2)).scale(&half);
        assert_eq!(sym_phi(1), expect);
        assert_eq!(sym_phi(2), SymbolicConstant::pi_term(rat(1, 6), 2));
    }

    #[test]
    fn phi_numeric_bridge() {
        for r in 1..=6 {
            let d = sym_phi(r).to_complex() - phi_r(r, 0.0).unwrap();
            assert!(
                d.norm() < 1e-12 * (1.0 + phi_r(r, 0.0).unwrap().norm()),
                "r={r}"
            );
        }
    }

    #[test]
    fn p_poly_values() {
        assert_eq!(sym_p_poly(2, 2), SymbolicConstant::integer(-1));
        assert_eq!(sym_p_poly(1, 0), sym_phi(1));
        assert!(sym_p_poly(1, 3).is_zero());
        let table = PPolyTable::new(4, 0.0).unwrap();
        let d = sym_p_poly(3, 1).to_complex() - table.get(3, 1);
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn matches_explicit_tables() {
        for k in 1..=5 {
            let e = sym_expression(k).unwrap();
            let table = explicit_bracket(k).unwrap();
            assert_eq!(e.terms.len(), table.len(), "k={k}");
            for t in table {
                let kind = t.kind;
                let want = SymbolicConstant::pi_term(rat(t.num, t.den), t.pi_pow as u32);
                let found = e
                    .terms
                    .iter()
                    .find(|(_, b)| b.kind == kind && b.a == t.a && b.b == t.b)
                    .map(|(c, _)| c.clone());
                assert_eq!(found, Some(want), "k={k} term {kind:?}({},{})", t.a, t.b);
            }
        }
    }

    #[test]
    fn derivative_first_order() {
        let d = sym_derivative_modsq(1, 3).unwrap();
        assert_eq!(
            d.terms,
            vec![(SymbolicConstant::integer(-2), BasisTerm::im(3, 4))]
        );
    }

    #[test]
    fn stray_gamma_is_reported() {
        let mut e = sym_expression(2).unwrap();
        e.terms
            .push((SymbolicConstant::symbol(Symbol::Gamma), BasisTerm::abs2(1)));
        let r = verify_cancellation(&e);
        assert!(!r.pass);
        assert!(r.to_string().contains('γ'));
    }
}
