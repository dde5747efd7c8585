//! Exact regeneration of the closed forms over ℚ(i)[π, γ, ln 2, ζ_odd].

mod expr;
pub mod printed;
mod render;
mod ring;

pub use crate::closedform::TermKind;
pub use expr::{
    sym_derivative_modsq, sym_expression, sym_expression_with, sym_p_poly, sym_phi, sym_phi_with,
    verify_cancellation, BasisTerm, CancellationReport, Conventions, IntegralExpression,
};
pub use render::{parse_structured, render, Format};
pub use ring::{bernoulli, zeta_exact, GaussianRational, Monomial, Symbol, SymbolicConstant};
