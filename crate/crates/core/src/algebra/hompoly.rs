use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{monomial_basis, monomial_index, Monomial, Var};
use super::Rational;
use crate::error::{Error, Result};

/// A homogeneous polynomial in `x, y, z` with exact rational coefficients.
///
/// The zero polynomial still carries a degree, so graded pieces stay typed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomPoly {
    pub fn zero(degree: u32) -> Self {
        HomPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = HomPoly::zero(m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms(
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = HomPoly::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::NotHomogeneous {
                    first: degree,
                    second: m.degree(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Coordinates in `monomial_basis(degree)`.
    pub fn from_coords(degree: u32, coords: &[Rational]) -> Self {
        let basis = monomial_basis(degree);
        assert_eq!(basis.len(), coords.len());
        let terms = basis
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect();
        HomPoly { degree, terms }
    }

    pub fn coords(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); super::space_dim(self.degree as i64)];
        for (m, c) in &self.terms {
            out[monomial_index(m)] = c.clone();
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> HomPoly {
        if c.is_zero() {
            return HomPoly::zero(self.degree);
        }
        HomPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> HomPoly {
        if c.is_zero() {
            return HomPoly::zero(self.degree + m.degree());
        }
        HomPoly {
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> HomPoly {
        let mut result = HomPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `∂f/∂v`, of degree `deg f - 1` (degree 0 stays 0 for constants).
    pub fn partial(&self, v: Var) -> HomPoly {
        let i = v.index();
        let mut out = HomPoly::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            out.terms.insert(n, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn gradient(&self) -> [HomPoly; 3] {
        [
            self.partial(Var::X),
            self.partial(Var::Y),
            self.partial(Var::Z),
        ]
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if m.0[i] > 0 {
                    t *= num_traits::pow(point[i].clone(), m.0[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// `f(L_x, L_y, L_z)` for homogeneous substitutes of a common degree.
    pub fn substitute(&self, subs: &[HomPoly; 3]) -> HomPoly {
        let sub_deg = subs[0].degree;
        debug_assert!(subs.iter().all(|s| s.degree == sub_deg));
        let mut powers: [Vec<HomPoly>; 3] = Default::default();
        for i in 0..3 {
            let max_e = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            let mut v = vec![HomPoly::one()];
            for e in 1..=max_e as usize {
                let next = &v[e - 1] * &subs[i];
                v.push(next);
            }
            powers[i] = v;
        }
        let mut out = HomPoly::zero(self.degree * sub_deg);
        for (m, c) in &self.terms {
            let t = &(&powers[0][m.0[0] as usize] * &powers[1][m.0[1] as usize])
                * &powers[2][m.0[2] as usize];
            for (tm, tc) in t.terms {
                out.add_term(tm, tc * c);
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &HomPoly) -> Option<HomPoly> {
        let (dm, dc) = divisor.leading()?;
        if self.is_zero() {
            return self.degree.checked_sub(divisor.degree).map(HomPoly::zero);
        }
        let qdeg = self.degree.checked_sub(divisor.degree)?;
        let mut rem = self.clone();
        let mut quot = HomPoly::zero(qdeg);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc)).ok()?;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scales to integer coefficients with content 1 and a positive leading coefficient.
    pub fn primitive(&self) -> HomPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let mut s = Rational::new(lcm, g);
        if self.leading().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Smallest exponent of `v` across all terms.
    pub fn valuation(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// LaTeX rendering without `*`, e.g. `xz+2y^2`.
    pub fn to_latex(&self) -> String {
        self.render("", "+", "-")
    }

    fn render(&self, sep: &str, plus: &str, minus: &str) -> String {
        let latex = sep.is_empty();
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(minus);
            } else {
                s.push_str(plus);
            }
            let a = c.abs();
            let coeff = if latex && !a.is_integer() {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            } else {
                a.to_string()
            };
            if *m == Monomial::ONE {
                s.push_str(&coeff);
            } else {
                if !a.is_one() {
                    write!(s, "{coeff}{sep}").unwrap();
                }
                m.write_with(&mut s, sep).unwrap();
            }
        }
        s
    }
}

impl fmt::Display for HomPoly {
    /// Canonical text: terms in decreasing graded-lex order, e.g.
    /// `x^4 + x^2*z^2 + 2*x*y^2*z + y^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("*", " + ", " - "))
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;

    fn mul(self, rhs: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.degree + rhs.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;

    fn neg(self) -> HomPoly {
        HomPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for HomPoly {
    type Output = HomPoly;

    fn neg(self) -> HomPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};

    fn p(s: &str) -> HomPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("x^4 + (x*z + y^2)^2").to_string(), "x^4 + x^2*z^2 + 2*x*y^2*z + y^4");
        assert_eq!(p("3/2*x - y").to_string(), "3/2*x - y");
        assert_eq!(p("-x^2 + 5*z^2").to_string(), "-x^2 + 5*z^2");
        assert_eq!(HomPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn partials() {
        assert_eq!(p("x^2*z + x*y^2").partial(Var::X), p("2*x*z + y^2"));
        assert_eq!(p("x^4 + (x*z + y^2)^2").partial(Var::Y), p("4*y*(x*z + y^2)"));
        let d = p("y^3").partial(Var::X);
        assert!(d.is_zero());
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn ring_ops() {
        let q = p("x*z + y^2");
        assert_eq!(&q * &q, p("x^2*z^2 + 2*x*y^2*z + y^4"));
        let x2 = p("x^2");
        let z = x2.add(&x2.scale(&rat(-1))).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 2);
        assert_eq!(&p("x") * &p("x^4 + (x*z + y^2)^2"), p("x*(x^4 + (x*z+y^2)^2)"));
        assert_eq!(p("x").add(&p("x^2")), Err(Error::DegreeMismatch(1, 2)));
    }

    #[test]
    fn exact_division() {
        let f = p("(x*z + y^2)^3*(x - 2*y)");
        assert_eq!(f.div_exact(&p("x*z+y^2")), Some(p("(x*z + y^2)^2*(x - 2*y)")));
        assert_eq!(f.div_exact(&p("x + y")), None);
    }

    #[test]
    fn substitution_and_primitive() {
        let f = p("x^2 + y*z");
        let s = [p("x + y"), p("y"), p("2*z")];
        assert_eq!(f.substitute(&s), p("(x+y)^2 + 2*y*z"));
        assert_eq!(p("-2/3*x + 4*y").primitive(), p("x - 6*y"));
    }
}
