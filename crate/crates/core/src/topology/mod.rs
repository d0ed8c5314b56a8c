//! Hodge spectrum, monodromy eigenvalues, Alexander polynomial and the
//! Betti numbers of the Milnor fiber.
//!
//! Characteristic polynomials are kept factored into cyclotomic
//! polynomials; [`CycloPoly::expand`] gives integer coefficients on demand.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::algebra::{Rational, UPoly};
use crate::error::{Error, Result};

/// Spectrum exponents `α` with positive multiplicities, sorted by `α`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumMultiset {
    entries: BTreeMap<Rational64, u32>,
}

impl SpectrumMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, alpha: Rational64, mult: u32) {
        if mult > 0 {
            *self.entries.entry(alpha).or_insert(0) += mult;
        }
    }

    pub fn mult(&self, alpha: Rational64) -> u32 {
        self.entries.get(&alpha).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Rational64, u32)> + '_ {
        self.entries.iter().map(|(a, m)| (*a, *m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.entries.values().sum()
    }

    /// True when `α` and `4 - α` always have the same multiplicity.
    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(a, m)| self.mult(Rational64::from_integer(4) - a) == *m)
    }
}

impl fmt::Display for SpectrumMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m != 1 {
                write!(f, "{m}")?;
            }
            write!(f, "t^{a}")?;
        }
        Ok(())
    }
}

impl Serialize for SpectrumMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            alpha: String,
            mult: u32,
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (a, m) in &self.entries {
            seq.serialize_element(&Entry {
                alpha: a.to_string(),
                mult: *m,
            })?;
        }
        seq.end()
    }
}

/// `Sp¹(f) = Σ_{j=3}^{d-1} n_{j-2} (t^{1+j/d} + t^{3-j/d}) + b1 t²`, where
/// `njs[i] = n_{i+1}` for `i = 0..d-3`.
pub fn spectrum(njs: &[u32], d: u32, b1: u32) -> Result<SpectrumMultiset> {
    let expected = d.saturating_sub(3) as usize;
    if njs.len() != expected {
        return Err(Error::BadRange(format!(
            "expected {expected} values n_1..n_{expected} for degree {d}, got {}",
            njs.len()
        )));
    }
    let d = d as i64;
    let mut sp = SpectrumMultiset::new();
    for j in 3..d {
        let n = njs[(j - 3) as usize];
        sp.add(Rational64::new(d + j, d), n);
        sp.add(Rational64::new(3 * d - j, d), n);
    }
    sp.add(Rational64::from_integer(2), b1);
    Ok(sp)
}

/// Multiplicities of the monodromy eigenvalues `exp(-2πik/d)` on `H¹(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueTable {
    pub d: u32,
    pub mults: Vec<u32>,
}

impl EigenvalueTable {
    pub fn total(&self) -> u32 {
        self.mults.iter().sum()
    }
}

/// Sorts spectrum multiplicities by eigenvalue `λ = exp(-2πiα)`.
pub fn eigenvalue_table(sp: &SpectrumMultiset, d: u32) -> Result<EigenvalueTable> {
    let di = d as i64;
    let mut mults = vec![0; d as usize];
    for (alpha, m) in sp.entries() {
        let scaled = alpha * di;
        let bad = || Error::BadExponent(alpha.to_string());
        if !scaled.is_integer() {
            return Err(bad());
        }
        let num = scaled.to_integer();
        // 1 + j/d feeds k = j, 3 - j/d feeds k = d - j, 2 feeds k = 0
        if num <= di || num >= 3 * di {
            return Err(bad());
        }
        mults[num.mod_floor(&di) as usize] += m;
    }
    Ok(EigenvalueTable { d, mults })
}

pub fn totient(n: u32) -> u32 {
    let mut rest = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// The cyclotomic polynomial `Φ_n` with integer coefficients, low to high.
pub fn cyclotomic(n: u32) -> UPoly {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[0] = -Rational::one();
    coeffs[n as usize] = Rational::one();
    let mut p = UPoly::new(coeffs);
    for k in divisors(n).into_iter().filter(|&k| k < n) {
        p = p.div_rem(&cyclotomic(k)).0;
    }
    p
}

/// A product `Π Φ_n^{m_n}` of cyclotomic polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloPoly {
    factors: BTreeMap<u32, u32>,
}

impl CycloPoly {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut p = Self::one();
        for (n, m) in factors {
            p.multiply(n, m);
        }
        p
    }

    /// `(t^d - 1)^e = Π_{n | d} Φ_n^e`.
    pub fn power_of_tdm1(d: u32, e: u32) -> Self {
        Self::from_factors(divisors(d).into_iter().map(|n| (n, e)))
    }

    pub fn multiply(&mut self, n: u32, mult: u32) {
        assert!(n > 0, "cyclotomic index must be positive");
        if mult > 0 {
            *self.factors.entry(n).or_insert(0) += mult;
        }
    }

    pub fn mul(&self, other: &CycloPoly) -> CycloPoly {
        let mut out = self.clone();
        for (&n, &m) in &other.factors {
            out.multiply(n, m);
        }
        out
    }

    pub fn mult(&self, n: u32) -> u32 {
        self.factors.get(&n).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.factors.iter().map(|(n, m)| (*n, *m))
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(n, m)| m * totient(*n)).sum()
    }

    /// Integer coefficients, lowest degree first.
    pub fn expand(&self) -> Vec<BigInt> {
        let mut p = UPoly::constant(Rational::one());
        for (&n, &m) in &self.factors {
            let phi = cyclotomic(n);
            for _ in 0..m {
                p = p.mul(&phi);
            }
        }
        p.coeffs().iter().map(|c| c.to_integer()).collect()
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (n, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "Phi_{n}")?;
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for CycloPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.factors.len()))?;
        for (n, m) in &self.factors {
            seq.serialize_element(&Factor { n: *n, mult: *m })?;
        }
        seq.end()
    }
}

struct Factor {
    n: u32,
    mult: u32,
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Factor", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("mult", &self.mult)?;
        st.end()
    }
}

/// `Δ(t) = Π Φ_n^{m}` over Galois orbits of eigenvalues, `n = d / gcd(k, d)`.
pub fn alexander(tab: &EigenvalueTable) -> Result<CycloPoly> {
    let d = tab.d;
    let mut orbit_mult: BTreeMap<u32, u32> = BTreeMap::new();
    for (k, &m) in tab.mults.iter().enumerate() {
        let n = d / (k as u32).gcd(&d);
        match orbit_mult.get(&n) {
            Some(&prev) if prev != m => return Err(Error::OrbitInconsistency),
            _ => {
                orbit_mult.insert(n, m);
            }
        }
    }
    Ok(CycloPoly::from_factors(orbit_mult))
}

/// `Δ²(t) = (t^d - 1)^χ Δ(t) / (t - 1)`, exponent by exponent.
pub fn delta2(alex: &CycloPoly, chi: i64, d: u32) -> Result<CycloPoly> {
    let mut exps: BTreeMap<u32, i64> = alex.factors().map(|(n, m)| (n, m as i64)).collect();
    for n in divisors(d) {
        *exps.entry(n).or_insert(0) += chi;
    }
    *exps.entry(1).or_insert(0) -= 1;
    let mut out = CycloPoly::one();
    for (n, e) in exps {
        if e < 0 {
            return Err(Error::NotPolynomial { n, exponent: e });
        }
        out.multiply(n, e as u32);
    }
    Ok(out)
}

/// Betti numbers `b1(F)`, `b2(F)` of the Milnor fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberBetti {
    pub b1: u32,
    pub b2: u32,
}

/// `b1(F) = deg Δ`, and `b2(F)` from `χ(F) = d·χ(U)`.
pub fn milnor_fiber_betti(alex: &CycloPoly, chi: i64, d: u32) -> Result<FiberBetti> {
    let b1 = alex.degree();
    let b2 = d as i64 * chi - 1 + b1 as i64;
    if b2 < 0 {
        return Err(Error::NegativeBetti(format!(
            "b2(F) = {b2} for d = {d}, chi = {chi}, deg Delta = {b1}"
        )));
    }
    Ok(FiberBetti {
        b1,
        b2: b2.to_u32().unwrap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn c6_spectrum() -> SpectrumMultiset {
        spectrum(&[1, 1, 2], 6, 2).unwrap()
    }

    #[test]
    fn spectra() {
        let sp = c6_spectrum();
        let expect = [
            (r(3, 2), 1),
            (r(5, 3), 1),
            (r(11, 6), 2),
            (r(2, 1), 2),
            (r(13, 6), 2),
            (r(7, 3), 1),
            (r(5, 2), 1),
        ];
        assert_eq!(sp.entries().collect::<Vec<_>>(), expect);
        assert!(sp.is_symmetric());

        let sp = spectrum(&[0, 0, 0, 0], 7, 3).unwrap();
        assert_eq!(sp.entries().collect::<Vec<_>>(), vec![(r(2, 1), 3)]);

        let sp = spectrum(&[1], 4, 1).unwrap();
        assert_eq!(
            sp.entries().collect::<Vec<_>>(),
            vec![(r(7, 4), 1), (r(2, 1), 1), (r(9, 4), 1)]
        );
        assert!(spectrum(&[1, 2], 4, 1).is_err());
    }

    #[test]
    fn eigenvalues() {
        // n_j = floor((j+1)/2), b1 = 3 for the even octic
        let sp = spectrum(&[1, 1, 2, 2, 3], 8, 3).unwrap();
        assert_eq!(eigenvalue_table(&sp, 8).unwrap().mults, vec![3, 3, 2, 3, 2, 3, 2, 3]);
        let sp = spectrum(&[0, 0, 0, 0], 7, 3).unwrap();
        assert_eq!(eigenvalue_table(&sp, 7).unwrap().mults, vec![3, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            eigenvalue_table(&SpectrumMultiset::new(), 5).unwrap().mults,
            vec![0; 5]
        );
        let mut bad = SpectrumMultiset::new();
        bad.add(r(1, 2), 1);
        assert!(matches!(eigenvalue_table(&bad, 4), Err(Error::BadExponent(_))));
        let mut bad = SpectrumMultiset::new();
        bad.add(r(4, 3), 1);
        assert!(matches!(eigenvalue_table(&bad, 4), Err(Error::BadExponent(_))));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(cyclotomic(6), UPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), UPoly::from_ints(&[1, 0, 0, 0, 1]));
        let p = CycloPoly::power_of_tdm1(6, 2);
        let mut expect = vec![BigInt::zero(); 13];
        expect[0] = BigInt::from(1);
        expect[6] = BigInt::from(-2);
        expect[12] = BigInt::from(1);
        assert_eq!(p.expand(), expect);
        assert_eq!(p.degree(), 12);
        assert_eq!(p.to_string(), "Phi_1^2 * Phi_2^2 * Phi_3^2 * Phi_6^2");
    }

    #[test]
    fn alexander_polynomials() {
        let tab = eigenvalue_table(&c6_spectrum(), 6).unwrap();
        let alex = alexander(&tab).unwrap();
        assert_eq!(alex, CycloPoly::from_factors([(1, 2), (2, 2), (3, 1), (6, 2)]));
        assert_eq!(alex.degree(), tab.total());

        // odd degree 7: n_j = floor((j+1)/2), four components
        let sp = spectrum(&[1, 1, 2, 2], 7, 3).unwrap();
        let alex = alexander(&eigenvalue_table(&sp, 7).unwrap()).unwrap();
        assert_eq!(alex, CycloPoly::from_factors([(1, 3), (7, 2)]));

        let broken = EigenvalueTable {
            d: 4,
            mults: vec![1, 1, 0, 0],
        };
        assert_eq!(alexander(&broken), Err(Error::OrbitInconsistency));
    }

    #[test]
    fn second_polynomial_and_fiber() {
        let alex6 = CycloPoly::from_factors([(1, 2), (2, 2), (3, 1), (6, 2)]);
        assert_eq!(delta2(&alex6, -1, 6).unwrap(), CycloPoly::from_factors([(2, 1), (6, 1)]));
        assert_eq!(milnor_fiber_betti(&alex6, -1, 6), Ok(FiberBetti { b1: 10, b2: 3 }));

        let sp8 = spectrum(&[1, 1, 2, 2, 3], 8, 3).unwrap();
        let alex8 = alexander(&eigenvalue_table(&sp8, 8).unwrap()).unwrap();
        assert_eq!(delta2(&alex8, -2, 8).unwrap(), CycloPoly::from_factors([(8, 1)]));

        let alex = CycloPoly::from_factors([(1, 3)]);
        assert_eq!(delta2(&alex, 0, 7).unwrap(), CycloPoly::from_factors([(1, 2)]));
        assert_eq!(
            delta2(&CycloPoly::one(), -1, 3),
            Err(Error::NotPolynomial { n: 1, exponent: -2 })
        );

        let c5 = CycloPoly::from_factors([(1, 1)]).mul(&CycloPoly::power_of_tdm1(5, 1));
        assert_eq!(milnor_fiber_betti(&c5, -1, 5), Ok(FiberBetti { b1: 6, b2: 0 }));
        let c9 = CycloPoly::from_factors([(1, 1)]).mul(&CycloPoly::power_of_tdm1(9, 3));
        assert_eq!(milnor_fiber_betti(&c9, -3, 9), Ok(FiberBetti { b1: 28, b2: 0 }));
        assert!(matches!(
            milnor_fiber_betti(&CycloPoly::one(), -1, 5),
            Err(Error::NegativeBetti(_))
        ));
    }

    #[test]
    fn json_shape() {
        let p = CycloPoly::from_factors([(2, 1), (6, 1)]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"[{"n":2,"mult":1},{"n":6,"mult":1}]"#
        );
        let sp = spectrum(&[1], 4, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&sp).unwrap(),
            r#"[{"alpha":"7/4","mult":1},{"alpha":"2","mult":1},{"alpha":"9/4","mult":1}]"#
        );
    }
}
