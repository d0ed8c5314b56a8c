//! Fraction-free sparse row reduction over the integers.
//!
//! Rows are kept primitive (content 1, positive leading entry). A new row is
//! reduced against existing pivot rows by cross-multiplication, so no
//! fractions ever appear; the pivot of a row is its first nonzero column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer row: `(column, value)` pairs sorted by column, no zeros.
pub type IntRow = Vec<(usize, BigInt)>;

pub(crate) fn make_primitive(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `alpha * a - beta * b`, where the result is expected to cancel at `skip`.
fn combine(a: &IntRow, alpha: &BigInt, b: &IntRow, beta: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push((ca, alpha * &a[i].1));
            i += 1;
        } else if cb < ca {
            out.push((cb, -(beta * &b[j].1)));
            j += 1;
        } else {
            let v = alpha * &a[i].1 - beta * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Eliminates column `col` of `row` using `pivot` (whose leading column is `col`).
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let Ok(pos) = row.binary_search_by_key(&col, |e| e.0) else {
        return row.clone();
    };
    let a = &row[pos].1;
    let p = &pivot[0].1;
    let g = a.gcd(p);
    let mut out = combine(row, &(p / &g), pivot, &(a / &g));
    make_primitive(&mut out);
    out
}

/// Row echelon form built incrementally, one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pivots: Vec<Option<IntRow>>,
    rank: usize,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the current pivots; returns true if it added a pivot.
    pub fn insert(&mut self, mut row: IntRow) -> bool {
        make_primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match &self.pivots[lead] {
                Some(p) => row = eliminate(&row, p, lead),
                None => {
                    self.pivots[lead] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    /// Turns the echelon form into the reduced row echelon form.
    pub fn reduce(&mut self) {
        let pivot_cols: Vec<usize> = (0..self.cols).filter(|&c| self.pivots[c].is_some()).collect();
        for &c in pivot_cols.iter().rev() {
            let prow = self.pivots[c].clone().unwrap();
            for &other in pivot_cols.iter().filter(|&&o| o < c) {
                let r = self.pivots[other].as_ref().unwrap();
                if r.binary_search_by_key(&c, |e| e.0).is_ok() {
                    let reduced = eliminate(r, &prow, c);
                    self.pivots[other] = Some(reduced);
                }
            }
        }
    }

    /// Right-kernel basis from the reduced form, one vector per free column in
    /// ascending order, each integral with content 1 and first nonzero entry positive.
    ///
    /// Must be called after [`Echelon::reduce`].
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let pivot_rows: Vec<(usize, &IntRow)> = self
            .pivots
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| (c, r)))
            .collect();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| self.pivots[c].is_none()) {
            let entries: Vec<(usize, &BigInt, &BigInt)> = pivot_rows
                .iter()
                .filter_map(|(c, r)| {
                    r.binary_search_by_key(&free, |e| e.0)
                        .ok()
                        .map(|pos| (*c, &r[pos].1, &r[0].1))
                })
                .collect();
            let lcm = entries
                .iter()
                .fold(BigInt::one(), |acc, (_, _, p)| acc.lcm(p));
            let mut v = vec![BigInt::zero(); self.cols];
            v[free] = lcm.clone();
            for (c, e, p) in entries {
                v[c] = -(e * (&lcm / p));
            }
            normalize_vector(&mut v);
            out.push(v);
        }
        out
    }
}

pub(crate) fn normalize_vector(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let sign_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if sign_neg { -g } else { g };
    for x in v.iter_mut() {
        *x /= &g;
    }
}
