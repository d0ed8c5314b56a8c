use std::cmp::Ordering;
use std::fmt;

/// One of the three coordinates of the projective plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// Exponent triple `x^a y^b z^c`.
///
/// Ordered graded-lexicographically with `x > y > z`: higher total degree
/// first, then by the `x` exponent, then by the `y` exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial([a, b, c])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 3];
        for i in 0..3 {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    pub(crate) fn write_with(&self, f: &mut impl fmt::Write, sep: &str) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(sep)?;
            }
            first = false;
            f.write_char(v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0[0].cmp(&other.0[0]))
            .then_with(|| self.0[1].cmp(&other.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, "*")
    }
}

/// `dim S_k = (k+1)(k+2)/2`, and zero for negative `k`.
pub fn space_dim(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// All monomials of total degree `k`, in decreasing graded-lex order.
pub fn monomial_basis(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(space_dim(k as i64));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push(Monomial([a, b, k - a - b]));
        }
    }
    out
}

/// Position of `m` inside `monomial_basis(m.degree())`.
pub fn monomial_index(m: &Monomial) -> usize {
    let k = m.degree() as usize;
    let s = k - m.0[0] as usize;
    s * (s + 1) / 2 + (s - m.0[1] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_small_degrees() {
        assert_eq!(monomial_basis(0), vec![Monomial::ONE]);
        let b2: Vec<String> = monomial_basis(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(b2, ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
        assert_eq!(monomial_basis(5).len(), 21);
    }

    #[test]
    fn basis_is_strictly_decreasing_and_indexed() {
        for k in 0..12 {
            let b = monomial_basis(k);
            assert_eq!(b.len(), space_dim(k as i64));
            for w in b.windows(2) {
                assert!(w[0] > w[1]);
            }
            for (i, m) in b.iter().enumerate() {
                assert_eq!(monomial_index(m), i);
            }
        }
    }
}
