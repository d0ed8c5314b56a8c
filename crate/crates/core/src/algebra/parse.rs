//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := 'x' | 'y' | 'z' | int | int '/' int | '(' expr ')' | '-' factor
//! ```
//!
//! Whitespace is ignored. Implicit multiplication (`xy`, `2x`) is rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::hompoly::HomPoly;
use super::monomial::{Monomial, Var};
use super::Rational;
use crate::error::{Error, Result};

/// Syntax tree of a parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyExpr {
    Const(Rational),
    Var(Var),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
    Neg(Box<PolyExpr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err(start, "expected non-negative integer exponent after '^'");
            }
            let e: u32 = digits
                .parse()
                .or_else(|_| self.err(start, "exponent too large"))?;
            return Ok(PolyExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<PolyExpr> {
        let start = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        let node = match c {
            b'x' | b'y' | b'z' => {
                self.pos += 1;
                let v = match c {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    _ => Var::Z,
                };
                PolyExpr::Var(v)
            }
            b'0'..=b'9' => {
                let num: BigInt = self.digits().parse().unwrap();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let dpos = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return self.err(dpos, "expected integer denominator after '/'");
                    }
                    let den: BigInt = den.parse().unwrap();
                    if den.is_zero() {
                        return self.err(dpos, "zero denominator");
                    }
                    PolyExpr::Const(Rational::new(num, den))
                } else {
                    PolyExpr::Const(Rational::from_integer(num))
                }
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                inner
            }
            b'-' => {
                self.pos += 1;
                PolyExpr::Neg(Box::new(self.factor()?))
            }
            other => {
                return self.err(start, format!("unexpected character '{}'", other as char));
            }
        };
        // A base immediately followed by another base is implicit multiplication.
        if let Some(n) = self.peek() {
            if matches!(n, b'x' | b'y' | b'z' | b'(' | b'0'..=b'9') {
                return self.err(self.pos, "implicit multiplication is not supported; use '*'");
            }
        }
        Ok(node)
    }
}

/// Parses `text` into a syntax tree without expanding it.
pub fn parse_expr(text: &str) -> Result<PolyExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected character '{}'", c as char));
    }
    Ok(e)
}

type Sparse = BTreeMap<Monomial, Rational>;

fn add_into(acc: &mut Sparse, other: &Sparse, sign: bool) {
    for (m, c) in other {
        let e = acc.entry(*m).or_insert_with(Rational::zero);
        if sign {
            *e += c;
        } else {
            *e -= c;
        }
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

fn mul_sparse(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            let m = m1.mul(m2);
            let e = out.entry(m).or_insert_with(Rational::zero);
            *e += c1 * c2;
            if e.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

fn expand(e: &PolyExpr) -> Sparse {
    match e {
        PolyExpr::Const(c) => {
            let mut s = Sparse::new();
            if !c.is_zero() {
                s.insert(Monomial::ONE, c.clone());
            }
            s
        }
        PolyExpr::Var(v) => {
            let mut s = Sparse::new();
            s.insert(Monomial::var(*v), Rational::one());
            s
        }
        PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
            let mut s = expand(a);
            add_into(&mut s, &expand(b), matches!(e, PolyExpr::Add(..)));
            s
        }
        PolyExpr::Mul(a, b) => mul_sparse(&expand(a), &expand(b)),
        PolyExpr::Pow(a, n) => {
            let base = expand(a);
            let mut out = Sparse::new();
            out.insert(Monomial::ONE, Rational::one());
            for _ in 0..*n {
                out = mul_sparse(&out, &base);
            }
            out
        }
        PolyExpr::Neg(a) => expand(a).into_iter().map(|(m, c)| (m, -c)).collect(),
    }
}

/// Parses and expands `text` into a homogeneous polynomial.
pub fn parse_poly(text: &str) -> Result<HomPoly> {
    let sparse = expand(&parse_expr(text)?);
    let mut degrees = sparse.keys().map(|m| m.degree());
    let Some(first) = degrees.next() else {
        return Err(Error::ZeroPolynomial);
    };
    if let Some(second) = degrees.find(|&d| d != first) {
        return Err(Error::NotHomogeneous { first, second });
    }
    HomPoly::from_terms(first, sparse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_family_members() {
        let f = parse_poly("x^4 + (x*z + y^2)^2").unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.to_string(), "x^4 + x^2*z^2 + 2*x*y^2*z + y^4");
        let g = parse_poly("x*z*( (x*z)^2 + y^4 )").unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.to_string(), "x^3*z^3 + x*y^4*z");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_poly("x + y^2"),
            Err(Error::NotHomogeneous { first: 1, second: 2 })
        );
        assert_eq!(parse_poly("x - x"), Err(Error::ZeroPolynomial));
        assert!(matches!(parse_poly("xy"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(x + y"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_poly("x^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0*x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("w"), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn unary_minus_and_rationals() {
        assert_eq!(parse_poly("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(parse_poly("2*-x + 3/4*y").unwrap().to_string(), "-2*x + 3/4*y");
        assert_eq!(parse_poly("(x+1)^2 - 2*x - 1").unwrap().to_string(), "x^2");
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            Just("x".to_string()),
            Just("y".to_string()),
            Just("z".to_string()),
            (1i32..7).prop_map(|n| n.to_string()),
            (1i32..7, 2i32..5).prop_map(|(n, d)| format!("{n}/{d}")),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
                (inner.clone(), 0u32..3).prop_map(|(a, e)| format!("({a})^{e}")),
                inner.prop_map(|a| format!("-({a})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn canonical_text_round_trips(text in arb_expr()) {
            if let Ok(f) = parse_poly(&text) {
                let again = parse_poly(&f.to_string()).unwrap();
                prop_assert_eq!(again, f);
            }
        }
    }
}
