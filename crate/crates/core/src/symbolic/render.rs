use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::expr::{BasisTerm, IntegralExpression};
use super::ring::{fmt_rational, superscript, SymbolicConstant};
use crate::closedform::TermKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Serialize, Deserialize)]
struct StructuredTerm {
    kind: TermKind,
    a: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<usize>,
    coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct StructuredExpr {
    k: usize,
    prefactor: String,
    terms: Vec<StructuredTerm>,
}

pub fn render(expr: &IntegralExpression, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(render_text(expr)),
        Format::Structured => render_structured(expr),
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn text_coeff(c: &SymbolicConstant) -> (bool, String) {
    match c.as_rational_pi_power() {
        Some((q, j)) => {
            let neg = q.is_negative();
            let q = q.abs();
            let pi = match j {
                0 => String::new(),
                1 => "π".to_string(),
                _ => format!("π{}", superscript(j)),
            };
            let num = q.numer().to_string();
            let head = if num == "1" && !pi.is_empty() {
                pi
            } else {
                format!("{num}{pi}")
            };
            let body = if q.denom().is_one() {
                head
            } else {
                format!("{head}/{}", q.denom())
            };
            (neg, body)
        }
        None => (false, format!("({c})")),
    }
}

fn render_text(expr: &IntegralExpression) -> String {
    let k = expr.k;
    let standard = SymbolicConstant::rational(BigRational::new(
        BigInt::one(),
        BigInt::from(2).pow(3 * k as u32 - 1) * factorial(k),
    ));
    let head = if expr.prefactor == standard {
        format!("I_{k}(τ) = 1/(2{}·{k}!) [", superscript(3 * k as u32 - 1))
    } else if expr.prefactor == SymbolicConstant::one() {
        "[".to_string()
    } else {
        format!("{} [", text_coeff(&expr.prefactor).1)
    };
    let mut s = head;
    for (n, (c, t)) in expr.terms.iter().enumerate() {
        let (neg, body) = text_coeff(c);
        let body = if body == "1" { String::new() } else { body };
        match (n, neg) {
            (0, false) => {}
            (0, true) => s.push('−'),
            (_, false) => s.push_str(" +"),
            (_, true) => s.push_str(" −"),
        }
        s.push_str(&body);
        s.push_str(&t.to_string());
    }
    s.push_str("]\n  Dn = 𝒟^(n)_{−1}(−iμ₀τ), Dn* = 𝒟^(n)_{−1}(iμ̄₀τ)");
    s
}

fn structured_coeff(c: &SymbolicConstant) -> Result<String> {
    let (q, j) = c.as_rational_pi_power().ok_or_else(|| {
        Error::inconsistent("render", format!("coefficient {c} is not rational·π^j"))
    })?;
    Ok(match j {
        0 => fmt_rational(&q),
        1 => format!("{}*pi", fmt_rational(&q)),
        _ => format!("{}*pi^{j}", fmt_rational(&q)),
    })
}

fn render_structured(expr: &IntegralExpression) -> Result<String> {
    let prefactor = match expr.prefactor.as_rational_pi_power() {
        Some((q, 0)) => fmt_rational(&q),
        _ => {
            return Err(Error::inconsistent(
                "render",
                format!("prefactor {} is not rational", expr.prefactor),
            ))
        }
    };
    let terms = expr
        .terms
        .iter()
        .map(|(c, t)| {
            Ok(StructuredTerm {
                kind: t.kind,
                a: t.a,
                b: (t.kind != TermKind::Abs2).then_some(t.b),
                coeff: structured_coeff(c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = StructuredExpr {
        k: expr.k,
        prefactor,
        terms,
    };
    serde_json::to_string(&doc).map_err(|e| Error::inconsistent("render", e.to_string()))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::domain("parse_structured", format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit());
    let n_body = n.strip_prefix('-').unwrap_or(n);
    if !digits(n_body) || !digits(d) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// `rational ('*' 'pi' ('^' int)?)?`
fn parse_coeff(s: &str) -> Result<SymbolicConstant> {
    let (q, pi) = match s.split_once('*') {
        None => (s, None),
        Some((q, rest)) => (q, Some(rest)),
    };
    let q = parse_rational(q)?;
    let j = match pi {
        None => 0,
        Some("pi") => 1,
        Some(rest) => {
            let p = rest.strip_prefix("pi^").ok_or_else(|| {
                Error::domain("parse_structured", format!("bad coefficient {s:?}"))
            })?;
            p.parse::<u32>()
                .map_err(|_| Error::domain("parse_structured", format!("bad exponent in {s:?}")))?
        }
    };
    Ok(SymbolicConstant::pi_term(q, j))
}

/// Inverse of the structured rendering.
pub fn parse_structured(json: &str) -> Result<IntegralExpression> {
    let doc: StructuredExpr =
        serde_json::from_str(json).map_err(|e| Error::domain("parse_structured", e.to_string()))?;
    let prefactor = SymbolicConstant::rational(parse_rational(&doc.prefactor)?);
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        let basis = match (t.kind, t.b) {
            (TermKind::Abs2, None) => BasisTerm::abs2(t.a),
            (TermKind::Re, Some(b)) if b > t.a => BasisTerm::re(t.a, b),
            (TermKind::Im, Some(b)) if b > t.a => BasisTerm::im(t.a, b),
            (kind, b) => {
                return Err(Error::domain(
                    "parse_structured",
                    format!("{kind:?} term with a = {}, b = {b:?}", t.a),
                ))
            }
        };
        let c = parse_coeff(&t.coeff)?;
        if c.is_zero() {
            return Err(Error::domain("parse_structured", "zero coefficient"));
        }
        terms.push((c, basis));
    }
    terms.sort_by(|x, y| x.1.cmp(&y.1));
    Ok(IntegralExpression {
        k: doc.k,
        prefactor,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::sym_expression;

    #[test]
    fn k1_structured() {
        let s = render(&sym_expression(1).unwrap(), Format::Structured).unwrap();
        assert_eq!(
            s,
            r#"{"k":1,"prefactor":"1/4","terms":[{"kind":"Abs2","a":0,"coeff":"1"}]}"#
        );
    }

    #[test]
    fn k3_text() {
        let s = render(&sym_expression(3).unwrap(), Format::Text).unwrap();
        assert!(s.contains("7π²/4"), "{s}");
        assert!(s.contains("−6Re["), "{s}");
    }

    #[test]
    fn round_trip() {
        for k in 1..=6 {
            let e = sym_expression(k).unwrap();
            let s = render(&e, Format::Structured).unwrap();
            assert_eq!(parse_structured(&s).unwrap(), e, "k={k}");
        }
    }

    #[test]
    fn rejects_bad_grammar() {
        for coeff in ["7/4*pi^", "pi", "1/0", "3*e", "--2"] {
            let doc = format!(
                r#"{{"k":1,"prefactor":"1/4","terms":[{{"kind":"Abs2","a":0,"coeff":"{coeff}"}}]}}"#
            );
            assert!(parse_structured(&doc).is_err(), "{coeff}");
        }
    }
}
