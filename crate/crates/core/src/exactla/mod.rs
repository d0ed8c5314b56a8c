//! Exact rank and kernel computation over the rationals.
//!
//! Every graded-piece computation (syzygies, Jacobian ring dimensions,
//! divisibility tests) ends up here. Elimination is fraction-free on
//! integer rows; reduced row echelon forms are unique, so kernel bases are
//! reproducible regardless of how rows are fed in.

mod echelon;
mod modp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

pub use echelon::{Echelon, IntRow};
pub use modp::DEFAULT_PRIME;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::algebra::rat(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::new(self.cols);
        for r in 0..self.rows {
            s.push_row(
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            );
        }
        s
    }
}

/// Row-sparse rational matrix; the working format for large graded maps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as `(column, value)` pairs in any order; repeated
    /// columns are summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, Rational)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| !e.1.is_zero());
        self.rows.push(row);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            cols: self.rows.len(),
            rows: cols,
        }
    }

    /// Stacks `other` below `self`.
    pub fn stack(&mut self, other: &SparseMatrix) {
        assert_eq!(self.cols, other.cols);
        self.rows.extend(other.rows.iter().cloned());
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(Rational::zero(), |acc, (c, x)| {
                    acc + x * Rational::from_integer(v[*c].clone())
                })
            })
            .collect()
    }

    fn int_rows(&self) -> impl Iterator<Item = IntRow> + '_ {
        self.rows.iter().map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            row.iter()
                .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
                .collect()
        })
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for row in self.int_rows() {
            e.insert(row);
            if e.rank() == self.cols {
                break;
            }
        }
        e
    }

    /// Exact rank over Q.
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Rank, first trying the mod-p prefilter: a full-rank result mod p
    /// certifies the exact rank; otherwise the exact elimination runs.
    pub fn rank_prefiltered(&self) -> usize {
        let full = self.rows().min(self.cols);
        if let Ok(r) = self.rank_mod_p(DEFAULT_PRIME) {
            if r == full {
                return r;
            }
        }
        self.rank()
    }

    /// Right-kernel basis, integral with content 1 and first nonzero entry
    /// positive, one vector per free column in ascending order.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let mut e = self.echelon();
        e.reduce();
        e.kernel()
    }

    /// Rank of the reduction mod `p`: a lower bound on the exact rank.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        if !modp::is_usable_prime(p) {
            return Err(Error::BadPrime(p));
        }
        let rows = modp::rows_mod_p(&self.rows, p)?;
        Ok(modp::rank_mod_p(rows, self.cols, p))
    }
}

/// Exact rank over Q by fraction-free elimination.
pub fn rank(m: &ExactMatrix) -> usize {
    m.to_sparse().rank()
}

/// Basis of the right kernel; see [`SparseMatrix::kernel_basis`].
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    m.to_sparse().kernel_basis()
}

/// Rank of `m` reduced mod the prime `p`; fails if a denominator vanishes mod `p`.
pub fn modp_prefilter(m: &ExactMatrix, p: u64) -> Result<usize> {
    m.to_sparse().rank_mod_p(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&ExactMatrix::identity(2)), 2);
        assert_eq!(rank(&ExactMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&ExactMatrix::zeros(2, 3)), 0);
    }

    #[test]
    fn small_kernels() {
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
        let k = kernel_basis(&ExactMatrix::zeros(1, 3));
        let e = |i: usize| -> Vec<BigInt> {
            (0..3).map(|j| BigInt::from((i == j) as i64)).collect()
        };
        assert_eq!(k, vec![e(0), e(1), e(2)]);
    }

    #[test]
    fn kernel_is_normalized() {
        let m = ExactMatrix::from_rows(vec![vec![
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 3.into()),
            crate::algebra::rat(0),
        ]]);
        let k = kernel_basis(&m);
        // first free column is 1: v = (-2, 3, 0) -> normalized positive first entry
        assert_eq!(
            k[0],
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]
        );
    }

    #[test]
    fn prefilter() {
        assert_eq!(modp_prefilter(&ExactMatrix::identity(2), 7), Ok(2));
        let m = ExactMatrix::from_i64(&[&[7, 0], &[0, 1]]);
        assert_eq!(modp_prefilter(&m, 7), Ok(1));
        assert_eq!(rank(&m), 2);
        let bad = ExactMatrix::from_rows(vec![vec![Rational::new(1.into(), 7.into())]]);
        assert_eq!(modp_prefilter(&bad, 7), Err(Error::BadPrime(7)));
        assert_eq!(modp_prefilter(&m, 8), Err(Error::BadPrime(8)));
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    fn to_matrix(v: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_rows(
            v.iter()
                .map(|r| r.iter().map(|&x| crate::algebra::rat(x)).collect())
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel_vectors(v in arb_matrix()) {
            let m = to_matrix(&v);
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            let s = m.to_sparse();
            for vec in &k {
                prop_assert!(s.mul_vec(vec).iter().all(|x| x.is_zero()));
            }
            prop_assert!(modp_prefilter(&m, 5).unwrap() <= rank(&m));
        }

        #[test]
        fn rank_invariant_under_row_ops(v in arb_matrix(), scale in 1i64..5, shift in 0usize..5) {
            let m = to_matrix(&v);
            let mut rows = v.clone();
            let n = rows.len();
            rows.rotate_left(shift % n);
            for x in rows[0].iter_mut() {
                *x *= -scale;
            }
            prop_assert_eq!(rank(&to_matrix(&rows)), rank(&m));
        }
    }
}
