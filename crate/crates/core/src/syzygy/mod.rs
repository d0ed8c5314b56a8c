//! Graded pieces of the module of Jacobian syzygies `AR(f)`, the minimal
//! degree `mdr(f)`, the kernels of the divergence maps `δ_j`, and freeness
//! certificates.
//!
//! Everything is linear algebra on monomial bases: a syzygy of degree `r`
//! is a kernel vector of `S_r^3 → S_{r+d-1}, (a,b,c) ↦ a f_x + b f_y + c f_z`.

use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{
    monomial_basis, monomial_index, space_dim, squarefree_check, HomPoly, Rational, Var,
};
use crate::error::{Error, Result};
use crate::exactla::SparseMatrix;

/// A reduced plane curve `f = 0` with its gradient precomputed.
#[derive(Clone, Debug)]
pub struct Curve {
    f: HomPoly,
    grad: [HomPoly; 3],
}

impl Curve {
    /// Wraps `f`, rejecting constants and polynomials with a repeated factor.
    pub fn new(f: HomPoly) -> Result<Self> {
        if f.degree() == 0 || !squarefree_check(&f) {
            return Err(Error::NotReduced);
        }
        let grad = f.gradient();
        Ok(Curve { f, grad })
    }

    pub fn f(&self) -> &HomPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn grad(&self) -> &[HomPoly; 3] {
        &self.grad
    }

    /// Images `m · f_v` for every monomial `m` of degree `src` and `v ∈ {x,y,z}`,
    /// as rows over `monomial_basis(src + d - 1)`. Row order matches the
    /// column order of the syzygy map: all `a`-slots, then `b`, then `c`.
    pub(crate) fn jacobian_images(&self, src: u32) -> SparseMatrix {
        let target = src + self.degree() - 1;
        let mut m = SparseMatrix::new(space_dim(target as i64));
        for g in &self.grad {
            for mono in monomial_basis(src) {
                m.push_row(
                    g.terms()
                        .map(|(t, c)| (monomial_index(&t.mul(&mono)), c.clone()))
                        .collect(),
                );
            }
        }
        m
    }

    /// Matrix of `δ_j: S_j^3 → S_{j-1}, (a,b,c) ↦ a_x + b_y + c_z`.
    pub(crate) fn divergence_matrix(j: u32) -> SparseMatrix {
        let n = space_dim(j as i64);
        let rows = space_dim(j as i64 - 1);
        let mut cols: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(3 * n);
        for v in Var::ALL {
            for mono in monomial_basis(j) {
                let d = HomPoly::monomial(mono, Rational::from_integer(1.into())).partial(v);
                cols.push(
                    d.terms()
                        .map(|(t, c)| (monomial_index(t), c.clone()))
                        .collect(),
                );
            }
        }
        let mut t = SparseMatrix::new(rows);
        for c in cols {
            t.push_row(c);
        }
        t.transpose()
    }
}

/// A Jacobian syzygy `(a, b, c)` of common degree `r` with `a f_x + b f_y + c f_z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygy {
    entries: [HomPoly; 3],
}

impl Syzygy {
    /// Checks the relation against `curve` before accepting the triple.
    pub fn new(curve: &Curve, a: HomPoly, b: HomPoly, c: HomPoly) -> Result<Self> {
        let r = a.degree();
        if b.degree() != r || c.degree() != r {
            return Err(Error::DegreeMismatch(b.degree().max(c.degree()), r));
        }
        let s = Syzygy { entries: [a, b, c] };
        if !s.apply(curve.grad()).is_zero() {
            return Err(Error::VerificationFailure(format!(
                "({}, {}, {}) is not a syzygy",
                s.entries[0], s.entries[1], s.entries[2]
            )));
        }
        Ok(s)
    }

    pub fn degree(&self) -> u32 {
        self.entries[0].degree()
    }

    pub fn a(&self) -> &HomPoly {
        &self.entries[0]
    }

    pub fn b(&self) -> &HomPoly {
        &self.entries[1]
    }

    pub fn c(&self) -> &HomPoly {
        &self.entries[2]
    }

    pub fn entries(&self) -> &[HomPoly; 3] {
        &self.entries
    }

    /// `a g_0 + b g_1 + c g_2`.
    pub fn apply(&self, g: &[HomPoly; 3]) -> HomPoly {
        let mut acc = HomPoly::zero(self.degree() + g[0].degree());
        for (e, gi) in self.entries.iter().zip(g) {
            acc = acc.add(&(e * gi)).expect("equal degrees");
        }
        acc
    }

    /// `δ(a,b,c) = a_x + b_y + c_z`.
    pub fn divergence(&self) -> HomPoly {
        let mut acc = HomPoly::zero(self.degree().saturating_sub(1));
        for (e, v) in self.entries.iter().zip(Var::ALL) {
            acc = acc.add(&e.partial(v)).expect("equal degrees");
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn coords(&self) -> Vec<Rational> {
        self.entries.iter().flat_map(|e| e.coords()).collect()
    }
}

impl fmt::Display for Syzygy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.entries[0], self.entries[1], self.entries[2])
    }
}

impl Serialize for Syzygy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Syzygy", 2)?;
        st.serialize_field("degree", &self.degree())?;
        let triple: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        st.serialize_field("entries", &triple)?;
        st.end()
    }
}

/// The degree-`r` piece `AR(f)_r` with a canonical basis.
#[derive(Clone, Debug)]
pub struct ARSlice {
    pub degree: u32,
    pub basis: Vec<Syzygy>,
}

impl ARSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn triple_from_kernel(r: u32, v: &[num_bigint::BigInt]) -> [HomPoly; 3] {
    let n = space_dim(r as i64);
    let coords: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    [
        HomPoly::from_coords(r, &coords[..n]),
        HomPoly::from_coords(r, &coords[n..2 * n]),
        HomPoly::from_coords(r, &coords[2 * n..]),
    ]
}

/// Basis of `AR(f)_r`.
pub fn ar_slice(curve: &Curve, r: u32) -> ARSlice {
    let map = curve.jacobian_images(r).transpose();
    let basis = map
        .kernel_basis()
        .iter()
        .map(|v| {
            let [a, b, c] = triple_from_kernel(r, v);
            Syzygy { entries: [a, b, c] }
        })
        .collect();
    ARSlice { degree: r, basis }
}

/// `dim AR(f)_r`, using the prefilter to skip exact elimination when the
/// map is injective mod p.
pub fn ar_dim(curve: &Curve, r: u32) -> usize {
    let images = curve.jacobian_images(r);
    images.rows() - images.rank_prefiltered()
}

/// Minimal degree of a Jacobian syzygy; at most `d - 1` because of the
/// Koszul syzygies.
pub fn mdr(curve: &Curve) -> u32 {
    (0..curve.degree())
        .find(|&r| ar_dim(curve, r) > 0)
        .unwrap_or(curve.degree() - 1)
}

/// `n_j = dim ker(δ_j : AR(f)_j → S_{j-1})`.
pub fn nj(curve: &Curve, j: u32) -> usize {
    let mut m = curve.jacobian_images(j).transpose();
    m.stack(&Curve::divergence_matrix(j));
    m.cols() - m.rank()
}

/// True iff `rho = h · rho1` for some `h` of degree `deg rho - deg rho1`.
pub fn is_multiple(rho: &Syzygy, rho1: &Syzygy) -> bool {
    let Some(e) = rho.degree().checked_sub(rho1.degree()) else {
        return false;
    };
    if rho.is_zero() {
        return true;
    }
    // Columns: coordinates of h; rows: coordinates of h·rho1 in S_{deg rho}^3.
    let target = rho.degree();
    let n = space_dim(target as i64);
    let mut cols = SparseMatrix::new(3 * n);
    for mono in monomial_basis(e) {
        let mut entries = Vec::new();
        for (k, g) in rho1.entries.iter().enumerate() {
            for (t, c) in g.terms() {
                entries.push((k * n + monomial_index(&t.mul(&mono)), c.clone()));
            }
        }
        cols.push_row(entries);
    }
    // Rows are the images of monomials h; the system is solvable iff adding
    // rho as one more row does not raise the rank.
    let mut augmented = cols.clone();
    augmented.push_row(
        rho.coords()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    );
    cols.rank() == augmented.rank()
}

/// Determinant of the 3×3 matrix with rows `(x, y, z)`, `rho1`, `rho2`.
pub fn saito_determinant(rho1: &Syzygy, rho2: &Syzygy) -> HomPoly {
    let [a1, b1, c1] = rho1.entries();
    let [a2, b2, c2] = rho2.entries();
    let minor = |p: &HomPoly, q: &HomPoly, r: &HomPoly, s: &HomPoly| (p * s).sub(&(q * r)).unwrap();
    let mx = minor(b1, c1, b2, c2);
    let my = minor(a1, c1, a2, c2);
    let mz = minor(a1, b1, a2, b2);
    let x = HomPoly::x();
    let y = HomPoly::y();
    let z = HomPoly::z();
    (&x * &mx)
        .sub(&(&y * &my))
        .unwrap()
        .add(&(&z * &mz))
        .unwrap()
}

/// Two syzygies certifying freeness: independent, with
/// `det((x,y,z), rho1, rho2) = scale · f`.
#[derive(Clone, Debug, Serialize)]
pub struct FreeCertificate {
    pub rho1: Syzygy,
    pub rho2: Syzygy,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub scale: Rational,
}

impl FreeCertificate {
    pub fn exponents(&self) -> (u32, u32) {
        (self.rho1.degree(), self.rho2.degree())
    }
}

/// Checks a candidate pair; returns the certificate when it passes.
pub fn certify_pair(curve: &Curve, rho1: &Syzygy, rho2: &Syzygy) -> Option<FreeCertificate> {
    if rho1.degree() + rho2.degree() + 1 != curve.degree() {
        return None;
    }
    let det = saito_determinant(rho1, rho2);
    if det.is_zero() {
        return None;
    }
    let q = det.div_exact(curve.f())?;
    if q.degree() != 0 || q.is_zero() {
        return None;
    }
    if is_multiple(rho2, rho1) {
        return None;
    }
    let scale = q.coeff(&crate::algebra::Monomial::ONE);
    Some(FreeCertificate {
        rho1: rho1.clone(),
        rho2: rho2.clone(),
        scale,
    })
}

/// Searches `AR(f)_r × AR(f)_{d-1-r}` (with `r = mdr(f)`) for a certifying pair.
///
/// For a free curve with exponents `d1 < d2`, `AR(f)_{d1}` is spanned by `ρ1`
/// and every basis element of `AR(f)_{d2}` is `hρ1 + cρ2`, so some basis pair
/// certifies; when `d1 = d2` any two distinct basis elements do. Searching
/// basis pairs is therefore exhaustive.
pub fn free_certificate(curve: &Curve) -> Option<FreeCertificate> {
    let r = mdr(curve);
    free_certificate_with_mdr(curve, r)
}

pub(crate) fn free_certificate_with_mdr(curve: &Curve, r: u32) -> Option<FreeCertificate> {
    let d = curve.degree();
    if r == 0 || r > d - 1 - r {
        return None;
    }
    let first = ar_slice(curve, r);
    let second = if d - 1 - r == r {
        first.clone()
    } else {
        ar_slice(curve, d - 1 - r)
    };
    for rho1 in &first.basis {
        for rho2 in &second.basis {
            if let Some(cert) = certify_pair(curve, rho1, rho2) {
                return Some(cert);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn curve(s: &str) -> Curve {
        Curve::new(parse_poly(s).unwrap()).unwrap()
    }

    fn poly_or_zero(s: &str, deg: u32) -> HomPoly {
        if s == "0" {
            HomPoly::zero(deg)
        } else {
            parse_poly(s).unwrap()
        }
    }

    fn syz(c: &Curve, deg: u32, a: &str, b: &str, cc: &str) -> Syzygy {
        let [a, b, cc] = [a, b, cc].map(|t| poly_or_zero(t, deg));
        Syzygy::new(c, a, b, cc).unwrap()
    }

    const C6: &str = "x^6 + (x*z + y^2)^3";

    #[test]
    fn not_reduced_rejected() {
        assert_eq!(Curve::new(parse_poly("x^2*y").unwrap()).err(), Some(Error::NotReduced));
    }

    #[test]
    fn slices_of_c6() {
        let c = curve(C6);
        assert_eq!(ar_slice(&c, 0).dim(), 0);
        let s1 = ar_slice(&c, 1);
        assert_eq!(s1.dim(), 1);
        assert_eq!(s1.basis[0].to_string(), "(0, x, -2*y)");
    }

    #[test]
    fn slice_of_cprime7() {
        let c = curve("x*((x*z)^3 + y^6)");
        let s1 = ar_slice(&c, 1);
        assert_eq!(s1.dim(), 1);
        assert_eq!(s1.basis[0].to_string(), "(6*x, -y, -8*z)");
    }

    #[test]
    fn small_mdr() {
        assert_eq!(mdr(&curve("x*y*z")), 1);
        assert_eq!(mdr(&curve("x^2 + y^2 + z^2")), 1);
        assert_eq!(mdr(&curve("x^3 + y^3 + z^3")), 2);
        assert_eq!(mdr(&curve("x*y*(x - y)")), 0);
    }

    #[test]
    fn multiples() {
        let c = curve(C6);
        let rho1 = syz(&c, 1, "0", "x", "-2*y");
        let rho = Syzygy {
            entries: [HomPoly::zero(2), parse_poly("x^2").unwrap(), parse_poly("-2*x*y").unwrap()],
        };
        assert!(is_multiple(&rho, &rho1));
        let other = Syzygy {
            entries: [parse_poly("y^2").unwrap(), HomPoly::zero(2), HomPoly::zero(2)],
        };
        assert!(!is_multiple(&other, &rho1));
    }

    #[test]
    fn certificates() {
        let c5 = curve("x*(x^4 + (x*z + y^2)^2)");
        let cert = free_certificate(&c5).unwrap();
        assert_eq!(cert.exponents(), (1, 3));
        assert_eq!(saito_determinant(&cert.rho1, &cert.rho2), c5.f().scale(&cert.scale));
        assert!(free_certificate(&curve("(x*z)^3 + y^6")).is_none());
        assert!(free_certificate(&curve("x^3 + y^3 + z^3")).is_none());
    }

    #[test]
    fn nj_small() {
        let c = curve(C6);
        assert_eq!(nj(&c, 1), 1);
        assert_eq!(nj(&curve("x*((x*z)^3 + y^6)"), 1), 0);
    }
}
