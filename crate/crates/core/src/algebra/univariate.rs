use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial over the rationals, coefficients low to high.
///
/// Used for affine dehomogenizations, resultants and root extraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / lc;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => UPoly::zero(),
        }
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm / c.denom()))));
        let mut s = Rational::new(lcm, g);
        if self.leading().unwrap().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Distinct rational roots in increasing order.
    ///
    /// Returns `None` when the rational-root candidates could not be enumerated
    /// (a coefficient too large to factor by trial division).
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.squarefree_part().primitive();
        let mut roots = Vec::new();
        if p.valuation().unwrap_or(0) > 0 {
            roots.push(Rational::zero());
            p = UPoly::new(p.coeffs[1..].to_vec());
        }
        if p.degree().unwrap_or(0) > 0 {
            let a0 = p.coeffs[0].numer().abs();
            let an = p.leading().unwrap().numer().abs();
            let nums = divisors(&a0)?;
            let dens = divisors(&an)?;
            for q in &dens {
                for n in &nums {
                    if n.gcd(q) != BigInt::one() {
                        continue;
                    }
                    for s in [1, -1] {
                        let r = Rational::new(n * BigInt::from(s), q.clone());
                        if p.eval(&r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Some(roots)
    }
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= rest {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        if BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) < rest {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &f;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
