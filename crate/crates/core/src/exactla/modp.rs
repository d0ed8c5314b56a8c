use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Prime used by the rank prefilter unless another is requested.
pub const DEFAULT_PRIME: u64 = 1_000_003;

fn reduce_int(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Primes usable by the prefilter: below `2^32`, checked by trial division.
pub(crate) fn is_usable_prime(p: u64) -> bool {
    if !(2..1 << 32).contains(&p) {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

pub(crate) fn reduce_rational(v: &Rational, p: u64) -> Result<u64> {
    let d = reduce_int(v.denom(), p);
    if d == 0 {
        return Err(Error::BadPrime(p));
    }
    Ok(mulmod(reduce_int(v.numer(), p), inv_mod(d, p), p))
}

/// Rank of sparse rows over `F_p`; entries are already reduced mod `p`.
pub(crate) fn rank_mod_p(rows: Vec<Vec<(usize, u64)>>, cols: usize, p: u64) -> usize {
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; cols];
    let mut rank = 0;
    for mut row in rows {
        row.retain(|e| e.1 != 0);
        while let Some(&(lead, a)) = row.first() {
            match &pivots[lead] {
                Some(piv) => {
                    // piv is monic at its lead; row -= a * piv
                    let mut out = Vec::with_capacity(row.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < piv.len() {
                        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                        let cj = piv.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                        if ci < cj {
                            out.push(row[i]);
                            i += 1;
                        } else if cj < ci {
                            out.push((cj, (p - mulmod(a, piv[j].1, p)) % p));
                            j += 1;
                        } else {
                            let v = (row[i].1 + p - mulmod(a, piv[j].1, p)) % p;
                            if v != 0 {
                                out.push((ci, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = out;
                }
                None => {
                    let inv = inv_mod(a, p);
                    for e in row.iter_mut() {
                        e.1 = mulmod(e.1, inv, p);
                    }
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

pub(crate) fn rows_mod_p(
    rows: &[Vec<(usize, Rational)>],
    p: u64,
) -> Result<Vec<Vec<(usize, u64)>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| Ok((*c, reduce_rational(v, p)?)))
                .collect()
        })
        .collect()
}
