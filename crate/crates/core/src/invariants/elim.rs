//! Resultants in the affine chart `z = 1`, eliminating `y`, computed by
//! evaluation at integer points and Newton interpolation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{HomPoly, Rational, UPoly, Var};

/// `h(x, y, 1)` scaled to integer coefficients, stored as `coeffs[j][i]`
/// = coefficient of `x^i y^j`.
#[derive(Clone, Debug)]
pub(crate) struct AffinePoly {
    coeffs: Vec<Vec<BigInt>>,
}

impl AffinePoly {
    pub(crate) fn new(h: &HomPoly) -> Self {
        let h = h.primitive();
        let mut coeffs: Vec<Vec<BigInt>> = Vec::new();
        for (m, c) in h.terms() {
            let (i, j) = (m.exp(Var::X) as usize, m.exp(Var::Y) as usize);
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Vec::new());
            }
            if coeffs[j].len() <= i {
                coeffs[j].resize(i + 1, BigInt::zero());
            }
            coeffs[j][i] += c.numer();
        }
        AffinePoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree of the affine polynomial.
    pub(crate) fn total_degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(j, c)| j + c.len() - 1)
            .max()
            .unwrap_or(0)
    }

    /// True when the coefficient of the top power of `y` does not depend on `x`.
    pub(crate) fn leading_is_constant(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| c.iter().skip(1).all(|v| v.is_zero()))
    }

    fn eval_x(&self, x: &BigInt) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, v| acc * x + v)
            })
            .collect()
    }
}

pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Determinant of the Sylvester matrix of two coefficient vectors (low to
/// high), using their lengths as formal degrees.
fn sylvester_det(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Polynomial through `(i, values[i])` for `i = 0..values.len()`.
fn interpolate(values: &[BigInt]) -> UPoly {
    let n = values.len();
    let mut dd: Vec<Rational> = values.iter().cloned().map(Rational::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rational::from_integer(BigInt::from(level));
        }
    }
    let mut p = UPoly::zero();
    for i in (0..n).rev() {
        let shift = UPoly::new(vec![
            Rational::from_integer(BigInt::from(-(i as i64))),
            Rational::one(),
        ]);
        p = p.mul(&shift).add(&UPoly::constant(dd[i].clone()));
    }
    p
}

/// `Res_y(a(x,y,1), b(x,y,1))` as a polynomial in `x`, with the actual
/// `y`-degrees as formal degrees. Two `y`-free inputs have no finite
/// resultant (any common root is a whole vertical line), so zero is returned.
pub(crate) fn resultant_y(a: &AffinePoly, b: &AffinePoly) -> UPoly {
    if a.is_zero() || b.is_zero() || (a.coeffs.len() == 1 && b.coeffs.len() == 1) {
        return UPoly::zero();
    }
    let bound = a.total_degree() * b.total_degree();
    let values: Vec<BigInt> = (0..=bound)
        .map(|i| {
            let x = BigInt::from(i);
            sylvester_det(&a.eval_x(&x), &b.eval_x(&x))
        })
        .collect();
    interpolate(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn aff(s: &str) -> AffinePoly {
        AffinePoly::new(&parse_poly(s).unwrap())
    }

    #[test]
    fn y_free_pair_gives_zero() {
        assert!(resultant_y(&aff("x"), &aff("x^2")).is_zero());
    }

    #[test]
    fn determinant() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(1)],
        ];
        // 0*(1) - 2*(1) + 1*(-3) = -5
        assert_eq!(bareiss_det(m), BigInt::from(-5));
    }

    #[test]
    fn resultant_of_line_and_conic() {
        // Res_y(y - x, y^2 - 1) = x^2 - 1 (up to sign)
        let r = resultant_y(&aff("y - x"), &aff("y^2 - z^2"));
        assert_eq!(r.primitive(), UPoly::from_ints(&[-1, 0, 1]));
        // common factor: identically zero
        assert!(resultant_y(&aff("y*(y-x)"), &aff("y*(x+z)")).is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UPoly::from_ints(&[3, 0, -2, 5]);
        let values: Vec<BigInt> = (0..6)
            .map(|i| p.eval(&crate::algebra::rat(i)).to_integer())
            .collect();
        assert_eq!(interpolate(&values), p);
    }
}
