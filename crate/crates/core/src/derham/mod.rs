//! Polynomial differential forms on affine 3-space and the explicit
//! representatives of the monodromy eigenspaces `H^{1,0}(F)_λ` of the
//! Milnor fibers of the three families.
//!
//! A syzygy `(a, b, c)` gives the 2-form `a dy∧dz - b dx∧dz + c dx∧dy`;
//! contracting `h·ω` with the Euler field gives a 1-form whose restriction
//! to `F: f = 1` represents an eigenclass. Restriction is not modelled:
//! forms are returned as ambient polynomial 1-forms.

use std::fmt;

use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{monomial_basis, monomial_index, space_dim, HomPoly, Var};
use crate::error::{Error, Result};
use crate::exactla::SparseMatrix;
use crate::families::{first_syzygy_entries, generate, FamilyKind};
use crate::syzygy::Syzygy;

/// `A dy∧dz - B dx∧dz + C dx∧dy` with coefficients of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    pub a: HomPoly,
    pub b: HomPoly,
    pub c: HomPoly,
}

impl TwoForm {
    pub fn new(a: HomPoly, b: HomPoly, c: HomPoly) -> Result<Self> {
        for p in [&b, &c] {
            if p.degree() != a.degree() {
                return Err(Error::DegreeMismatch(a.degree(), p.degree()));
            }
        }
        Ok(TwoForm { a, b, c })
    }

    /// Degree of the coefficients; the form itself has degree this plus 2.
    pub fn coeff_degree(&self) -> u32 {
        self.a.degree()
    }

    pub fn multiply(&self, h: &HomPoly) -> TwoForm {
        TwoForm {
            a: h * &self.a,
            b: h * &self.b,
            c: h * &self.c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

/// `P dx + Q dy + R dz` with coefficients of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub p: HomPoly,
    pub q: HomPoly,
    pub r: HomPoly,
}

impl OneForm {
    /// LaTeX such as `-(xz+2y^2)\,dx + 2xy\,dy + x^2\,dz`.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for (coeff, v) in [(&self.p, "x"), (&self.q, "y"), (&self.r, "z")] {
            if coeff.is_zero() {
                continue;
            }
            let negative = coeff.leading().is_some_and(|(_, c)| c.is_negative());
            let body = if negative { -coeff } else { coeff.clone() };
            let sign = match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            out.push_str(sign);
            if body == HomPoly::one() {
                out.push_str(&format!("d{v}"));
            } else if body.num_terms() > 1 {
                out.push_str(&format!("({})\\,d{v}", body.to_latex()));
            } else {
                out.push_str(&format!("{}\\,d{v}", body.to_latex()));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy + ({}) dz", self.p, self.q, self.r)
    }
}

/// `ω(ρ) = a dy∧dz - b dx∧dz + c dx∧dy`.
pub fn omega(rho: &Syzygy) -> TwoForm {
    TwoForm {
        a: rho.a().clone(),
        b: rho.b().clone(),
        c: rho.c().clone(),
    }
}

/// Coefficient of `dx∧dy∧dz` in `dω`.
pub fn d2(form: &TwoForm) -> HomPoly {
    form.a
        .partial(Var::X)
        .add(&form.b.partial(Var::Y))
        .and_then(|s| s.add(&form.c.partial(Var::Z)))
        .expect("partials share a degree")
}

/// Coefficient of `dx∧dy∧dz` in `df ∧ ω`.
pub fn wedge_df(f: &HomPoly, form: &TwoForm) -> HomPoly {
    let [fx, fy, fz] = f.gradient();
    (&form.a * &fx)
        .add(&(&form.b * &fy))
        .and_then(|s| s.add(&(&form.c * &fz)))
        .expect("products share a degree")
}

/// Contraction with the Euler field `x∂x + y∂y + z∂z`:
/// `(Bz - Cy) dx + (Cx - Az) dy + (Ay - Bx) dz`.
pub fn euler_contract(form: &TwoForm) -> OneForm {
    let (x, y, z) = (HomPoly::x(), HomPoly::y(), HomPoly::z());
    let diff = |p: HomPoly, q: HomPoly| p.sub(&q).expect("same degree");
    OneForm {
        p: diff(&form.b * &z, &form.c * &y),
        q: diff(&form.c * &x, &form.a * &z),
        r: diff(&form.a * &y, &form.b * &x),
    }
}

/// Basis of the multiplier space of degree `e`: `u^i v^{e/2-i}` for even
/// `e`, times `x` (family C) or `y` (C′, C″) for odd `e`, where
/// `(u, v) = (x², xz + y²)` for C and `(xz, y²)` otherwise.
pub fn basis_e(kind: FamilyKind, e: u32) -> Vec<HomPoly> {
    let (x, y, z) = (HomPoly::x(), HomPoly::y(), HomPoly::z());
    let (u, v, odd_factor) = match kind {
        FamilyKind::C => (x.pow(2), (&x * &z).add(&y.pow(2)).unwrap(), x),
        _ => (&x * &z, y.pow(2), y),
    };
    let e1 = e / 2;
    (0..=e1)
        .map(|i| {
            let h = &u.pow(e1 - i) * &v.pow(i);
            if e % 2 == 1 {
                &odd_factor * &h
            } else {
                h
            }
        })
        .collect()
}

/// The 2-form `ω1` built from the first syzygy: `ω(0, -x, 2y)` for C and
/// `ω(x, 0, -z)` for C′ (even degree) and C″.
pub fn first_form(kind: FamilyKind, d: u32) -> TwoForm {
    let [a, b, c] = first_syzygy_entries(kind, d);
    let form = TwoForm { a, b, c };
    match kind {
        FamilyKind::C => TwoForm {
            a: -&form.a,
            b: -&form.b,
            c: -&form.c,
        },
        _ => form,
    }
}

/// A representative of `H^{1,0}(F)_λ`, `λ = exp(-2πik/d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenForm {
    pub k: u32,
    pub d: u32,
    /// Multiplier `h` with `parent = h·ω1`.
    pub h: HomPoly,
    pub parent: TwoForm,
    pub form: OneForm,
}

impl EigenForm {
    pub fn lambda_label(&self) -> String {
        format!("exp(-2*pi*i*{}/{})", self.k, self.d)
    }
}

impl Serialize for EigenForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Lambda {
            k: u32,
            d: u32,
        }
        let mut st = s.serialize_struct("EigenForm", 5)?;
        st.serialize_field("P", &self.form.p.to_string())?;
        st.serialize_field("Q", &self.form.q.to_string())?;
        st.serialize_field("R", &self.form.r.to_string())?;
        st.serialize_field("h", &self.h.to_string())?;
        st.serialize_field("lambda", &Lambda { k: self.k, d: self.d })?;
        st.end()
    }
}

/// Eigenbasis of `H^{1,0}(F)_λ` for `λ = exp(-2πik/d)`, `3 ≤ k ≤ d-1`: the
/// contractions of `h·ω1` for `h` in the multiplier basis of degree `k-3`.
/// Empty for C′ in odd degree, where every `n_j` vanishes.
pub fn eigenbasis(kind: FamilyKind, d: u32, k: u32) -> Result<Vec<EigenForm>> {
    let f = generate(kind, d)?;
    if !(3..d).contains(&k) {
        return Err(Error::BadRange(format!(
            "k = {k} must satisfy 3 <= k <= d - 1 = {}",
            d - 1
        )));
    }
    if kind == FamilyKind::Cprime && d % 2 == 1 {
        return Ok(Vec::new());
    }
    let omega1 = first_form(kind, d);
    basis_e(kind, k - 3)
        .into_iter()
        .map(|h| {
            let parent = omega1.multiply(&h);
            if !d2(&parent).is_zero() {
                return Err(Error::VerificationFailure(format!("d(h*omega1) != 0 for h = {h}")));
            }
            if !wedge_df(&f, &parent).is_zero() {
                return Err(Error::VerificationFailure(format!(
                    "df ^ (h*omega1) != 0 for h = {h}"
                )));
            }
            let form = euler_contract(&parent);
            Ok(EigenForm { k, d, h, parent, form })
        })
        .collect()
}

/// Dimension of the kernel of
/// `h ↦ 2m x h_x - y h_y - 2(m+1) z h_z - 3h` on `S_e`.
pub fn weight_kernel_dim(m: u32, e: u32) -> usize {
    let m = m as i64;
    let mut images = SparseMatrix::new(space_dim(e as i64));
    for mono in monomial_basis(e) {
        let [a, b, c] = mono.0.map(|v| v as i64);
        let weight = 2 * m * a - b - 2 * (m + 1) * c - 3;
        images.push_row(vec![(monomial_index(&mono), crate::algebra::rat(weight))]);
    }
    images.transpose().kernel_basis().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};
    use crate::syzygy::Curve;

    fn p(s: &str) -> HomPoly {
        parse_poly(s).unwrap()
    }

    fn form(a: &str, b: &str, c: &str, deg: u32) -> TwoForm {
        let get = |s: &str| if s == "0" { HomPoly::zero(deg) } else { p(s) };
        TwoForm::new(get(a), get(b), get(c)).unwrap()
    }

    #[test]
    fn omega_and_derivatives() {
        let c6 = Curve::new(generate(FamilyKind::C, 6).unwrap()).unwrap();
        let rho = Syzygy::new(&c6, HomPoly::zero(1), p("-x"), p("2*y")).unwrap();
        let w = omega(&rho);
        assert_eq!(w, form("0", "-x", "2*y", 1));
        assert!(d2(&w).is_zero());
        assert!(wedge_df(c6.f(), &w).is_zero());

        let cp7 = Curve::new(generate(FamilyKind::Cprime, 7).unwrap()).unwrap();
        let rho = Syzygy::new(&cp7, p("6*x"), p("-y"), p("-8*z")).unwrap();
        assert_eq!(d2(&omega(&rho)), HomPoly::constant(rat(-3)));

        assert_eq!(d2(&form("x^2", "0", "0", 2)), p("2*x"));
        let q = p("x^2 + y^2 + z^2");
        assert_eq!(wedge_df(&q, &form("x", "0", "0", 1)), p("2*x^2"));
        assert_eq!(wedge_df(&q, &TwoForm::new(HomPoly::one(), HomPoly::zero(0), HomPoly::zero(0)).unwrap()), p("2*x"));
    }

    #[test]
    fn contraction() {
        let w = euler_contract(&form("0", "-x", "2*y", 1));
        assert_eq!((w.p.to_string(), w.q.to_string(), w.r.to_string()), ("-x*z - 2*y^2".into(), "2*x*y".into(), "x^2".into()));
        assert_eq!(w.to_latex(), "-(xz+2y^2)\\,dx + 2xy\\,dy + x^2\\,dz");

        let one = TwoForm::new(HomPoly::one(), HomPoly::zero(0), HomPoly::zero(0)).unwrap();
        let w = euler_contract(&one);
        assert!(w.p.is_zero());
        assert_eq!((w.q.to_string(), w.r.to_string()), ("-z".into(), "y".into()));
        assert_eq!(w.to_latex(), "-z\\,dy + y\\,dz");

        let w = euler_contract(&form("x", "0", "-z", 1));
        assert_eq!((w.p.to_string(), w.q.to_string(), w.r.to_string()), ("y*z".into(), "-2*x*z".into(), "x*y".into()));
    }

    #[test]
    fn multiplier_bases() {
        let s = |k, e| basis_e(k, e).iter().map(|h| h.to_string()).collect::<Vec<_>>();
        assert_eq!(s(FamilyKind::C, 2), vec!["x^2", "x*z + y^2"]);
        assert_eq!(s(FamilyKind::Cprime, 3), vec!["x*y*z", "y^3"]);
        assert_eq!(s(FamilyKind::C, 0), vec!["1"]);
        for kind in FamilyKind::ALL {
            for e in 0..8 {
                let b = basis_e(kind, e);
                assert_eq!(b.len() as u32, e / 2 + 1);
                assert!(b.iter().all(|h| crate::families::multiplier_pde(kind, h)));
            }
        }
    }

    #[test]
    fn eigenforms() {
        let forms = eigenbasis(FamilyKind::C, 7, 3).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].h, HomPoly::one());
        assert_eq!(forms[0].form.to_latex(), "-(xz+2y^2)\\,dx + 2xy\\,dy + x^2\\,dz");
        assert_eq!(forms[0].lambda_label(), "exp(-2*pi*i*3/7)");

        let forms = eigenbasis(FamilyKind::Cdoubleprime, 8, 6).unwrap();
        let hs: Vec<String> = forms.iter().map(|f| f.h.to_string()).collect();
        assert_eq!(hs, vec!["x*y*z", "y^3"]);

        assert!(eigenbasis(FamilyKind::Cprime, 7, 4).unwrap().is_empty());
        assert_eq!(eigenbasis(FamilyKind::Cprime, 8, 5).unwrap().len(), 2);
        assert!(matches!(eigenbasis(FamilyKind::C, 7, 7), Err(Error::BadRange(_))));
        assert!(matches!(eigenbasis(FamilyKind::C, 7, 2), Err(Error::BadRange(_))));
        assert!(matches!(eigenbasis(FamilyKind::C, 2, 3), Err(Error::BadDegree { .. })));

        let json = serde_json::to_string(&eigenbasis(FamilyKind::C, 5, 3).unwrap()[0]).unwrap();
        assert_eq!(
            json,
            r#"{"P":"-x*z - 2*y^2","Q":"2*x*y","R":"x^2","h":"1","lambda":{"k":3,"d":5}}"#
        );
    }

    #[test]
    fn weight_kernel_vanishes_below_2m_minus_2() {
        for m in 1u32..7 {
            for e in 0..(2 * m).saturating_sub(2) {
                assert_eq!(weight_kernel_dim(m, e), 0, "m = {m}, e = {e}");
            }
        }
        // sharp: x*y^(2m-3) lies in the kernel in degree 2m-2
        for m in 2..7 {
            assert!(weight_kernel_dim(m, 2 * m - 2) >= 1, "m = {m}");
        }
    }
}
