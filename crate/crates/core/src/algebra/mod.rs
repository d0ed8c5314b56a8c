//! Exact rational arithmetic, homogeneous polynomials in `x, y, z`, and the
//! input-expression parser.

mod gcd;
mod hompoly;
mod monomial;
mod parse;
mod univariate;

pub use gcd::{hom_gcd, squarefree_check};
pub use hompoly::HomPoly;
pub use monomial::{monomial_basis, monomial_index, space_dim, Monomial, Var};
pub use parse::{parse_expr, parse_poly, PolyExpr};
pub use univariate::UPoly;

/// Exact rational coefficients, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
