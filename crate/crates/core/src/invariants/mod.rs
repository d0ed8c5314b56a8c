//! Tjurina and Milnor numbers, rational singular points, the freeness
//! classification and the Betti numbers of the complement.

mod elim;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{hom_gcd, space_dim, HomPoly, Monomial, Rational, UPoly, Var};
use crate::error::{Error, Result};
use crate::syzygy::{free_certificate_with_mdr, mdr, Curve};

use elim::{resultant_y, AffinePoly};

/// Shears tried before giving up on a Milnor number.
const MAX_SHEARS: u32 = 20;
/// Consecutive vanishing resultants that mark a non-isolated singularity.
const MAX_ZERO_RESULTANTS: u32 = 5;
/// Number of nonzero resultants whose gcd locates the singular abscissae.
const RESULTANTS_PER_CHART: usize = 4;

/// `dim (S/J_f)_k`.
pub fn hilbert_jacobian(curve: &Curve, k: u32) -> usize {
    let d = curve.degree();
    let total = space_dim(k as i64);
    if k + 1 < d {
        return total;
    }
    total - curve.jacobian_images(k + 1 - d).rank_prefiltered()
}

/// Degrees where the Hilbert function of the Jacobian ring is sampled for
/// the total Tjurina number; all three lie past its stabilization point.
pub fn tjurina_window(d: u32) -> [u32; 3] {
    let k = (3 * d).saturating_sub(5);
    [k, k + 1, k + 2]
}

/// Total Tjurina number: the stable value of `dim (S/J_f)_k`.
pub fn tjurina_total(curve: &Curve) -> Result<usize> {
    let values: Vec<usize> = tjurina_window(curve.degree())
        .iter()
        .map(|&k| hilbert_jacobian(curve, k))
        .collect();
    if values.iter().any(|v| *v != values[0]) {
        return Err(Error::NotStabilized(values));
    }
    Ok(values[0])
}

/// A rational singular point, scaled to integers with content 1 and first
/// nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub coords: [Rational; 3],
    pub milnor: Option<u32>,
}

impl SingularPoint {
    pub fn new(coords: [Rational; 3]) -> Self {
        SingularPoint {
            coords: canonical_point(&coords),
            milnor: None,
        }
    }

    pub fn from_ints(c: [i64; 3]) -> Self {
        Self::new(c.map(crate::algebra::rat))
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "({a}:{b}:{c})")
    }
}

impl Serialize for SingularPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SingularPoint", 2)?;
        let coords: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coords", &coords)?;
        st.serialize_field("milnor", &self.milnor)?;
        st.end()
    }
}

fn canonical_point(p: &[Rational; 3]) -> [Rational; 3] {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return p.clone();
    }
    if ints.iter().find(|v| !v.is_zero()).unwrap().is_negative() {
        g = -g;
    }
    let v: Vec<Rational> = ints
        .into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect();
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

/// The rational singular points found by elimination. `complete` is false
/// when some part of the singular locus could not be split over the
/// rationals (irrational or unfactorable residues).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularLocus {
    pub points: Vec<SingularPoint>,
    pub complete: bool,
}

/// `h` restricted to the line where the two variables other than `free`
/// take the values in `point`, as a polynomial in `free`.
fn restrict(h: &HomPoly, free: Var, point: &[Rational; 3]) -> UPoly {
    let mut coeffs: Vec<Rational> = vec![Rational::zero(); h.degree() as usize + 1];
    for (m, c) in h.terms() {
        let mut t = c.clone();
        for v in Var::ALL.into_iter().filter(|v| *v != free) {
            let e = m.exp(v) as usize;
            if e > 0 {
                t *= num_traits::pow(point[v.index()].clone(), e);
            }
        }
        coeffs[m.exp(free) as usize] += t;
    }
    UPoly::new(coeffs)
}

/// Rational roots of `gcd(polys)` together with a flag telling whether every
/// root was rational.
fn common_rational_roots(polys: &[UPoly]) -> (Vec<Rational>, bool) {
    let g = polys.iter().fold(UPoly::zero(), |acc, p| acc.gcd(p));
    if g.is_zero() {
        return (Vec::new(), false);
    }
    split_rational(&g)
}

fn split_rational(g: &UPoly) -> (Vec<Rational>, bool) {
    let sq = g.squarefree_part();
    match sq.rational_roots() {
        Some(roots) => {
            let complete = roots.len() == sq.degree().unwrap_or(0);
            (roots, complete)
        }
        None => (Vec::new(), false),
    }
}

fn gradient_combos(grad: &[HomPoly; 3]) -> Vec<HomPoly> {
    const COMBOS: [[i64; 3]; 8] = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 2, 3],
        [3, -1, 2],
        [2, 5, -1],
        [1, -3, 4],
        [4, 1, -2],
    ];
    COMBOS
        .iter()
        .map(|w| {
            let mut acc = HomPoly::zero(grad[0].degree());
            for (g, &c) in grad.iter().zip(w) {
                acc = acc.add(&g.scale(&crate::algebra::rat(c))).unwrap();
            }
            acc
        })
        .filter(|g| !g.is_zero())
        .collect()
}

fn is_singular(curve: &Curve, p: &[Rational; 3]) -> bool {
    curve.grad().iter().all(|g| g.eval(p).is_zero())
}

/// Rational singular points with their Milnor numbers.
pub fn singular_points(curve: &Curve) -> Result<SingularLocus> {
    let grad = curve.grad();
    let mut complete = true;
    let mut found: Vec<[Rational; 3]> = Vec::new();
    let zero = Rational::zero();
    let one = Rational::one();

    // Chart z = 1: abscissae from resultants, then ordinates per abscissa.
    let pieces: Vec<AffinePoly> = gradient_combos(grad).iter().map(AffinePoly::new).collect();
    let mut resultants = Vec::new();
    'pairs: for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let r = resultant_y(&pieces[i], &pieces[j]);
            if !r.is_zero() {
                resultants.push(r);
                if resultants.len() == RESULTANTS_PER_CHART {
                    break 'pairs;
                }
            }
        }
    }
    let (xs, xs_complete) = common_rational_roots(&resultants);
    complete &= xs_complete;
    for x0 in xs {
        let at = [x0.clone(), zero.clone(), one.clone()];
        let ys: Vec<UPoly> = grad.iter().map(|g| restrict(g, Var::Y, &at)).collect();
        let (roots, ok) = common_rational_roots(&ys);
        complete &= ok;
        for y0 in roots {
            found.push([x0.clone(), y0, one.clone()]);
        }
    }

    // Line z = 0 away from (1:0:0).
    let at = [zero.clone(), one.clone(), zero.clone()];
    let xs: Vec<UPoly> = grad.iter().map(|g| restrict(g, Var::X, &at)).collect();
    let (roots, ok) = common_rational_roots(&xs);
    complete &= ok;
    for x0 in roots {
        found.push([x0, one.clone(), zero.clone()]);
    }
    found.push([one.clone(), zero.clone(), zero.clone()]);

    let mut points = Vec::new();
    for p in found {
        if !is_singular(curve, &p) {
            continue;
        }
        let mut sp = SingularPoint::new(p);
        sp.milnor = Some(milnor_local(curve, &sp.coords)?);
        points.push(sp);
    }
    points.sort_by(|a, b| b.coords.cmp(&a.coords));
    points.dedup_by(|a, b| a.coords == b.coords);
    Ok(SingularLocus { points, complete })
}

fn linear(terms: &[(Var, Rational)]) -> HomPoly {
    let mut h = HomPoly::zero(1);
    for (v, c) in terms {
        h = h
            .add(&HomPoly::monomial(Monomial::var(*v), c.clone()))
            .unwrap();
    }
    h
}

/// Local Milnor number at `p`: the intersection multiplicity of the two
/// affine partials at `p`, read off as the order at `0` of a resultant after
/// a shear `(u, v) ↦ (u + tv, v)`, with `t = 1, 2, …`; a value seen twice
/// is accepted.
pub fn milnor_local(curve: &Curve, p: &[Rational; 3]) -> Result<u32> {
    if p.iter().all(|c| c.is_zero()) || !is_singular(curve, p) {
        return Err(Error::NotSingular);
    }
    let chart = (0..3).rev().find(|&i| !p[i].is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    // Affine coordinates (x, y) centered at p in the chart `X_chart = 1`.
    let subs: [HomPoly; 3] = std::array::from_fn(|i| {
        let mut terms = vec![(Var::Z, &p[i] / &p[chart])];
        if i == others[0] {
            terms.push((Var::X, Rational::one()));
        } else if i == others[1] {
            terms.push((Var::Y, Rational::one()));
        }
        linear(&terms)
    });
    let g = curve.f().substitute(&subs);
    // Factors shared by both partials away from the origin carry critical
    // points of the affine function that are not on the curve; drop them.
    let (mut gx, mut gy) = (g.partial(Var::X), g.partial(Var::Y));
    let common = hom_gcd(&gx, &gy);
    if common.degree() > 0 {
        let origin = [Rational::zero(), Rational::zero(), Rational::one()];
        if common.eval(&origin).is_zero() {
            return Err(Error::NonIsolated);
        }
        gx = gx.div_exact(&common).expect("gcd divides");
        gy = gy.div_exact(&common).expect("gcd divides");
    }

    let mut values: Vec<u32> = Vec::new();
    let mut zeros = 0;
    for t in 1..=MAX_SHEARS {
        let shear = [
            linear(&[(Var::X, Rational::one()), (Var::Y, crate::algebra::rat(t as i64))]),
            HomPoly::y(),
            HomPoly::z(),
        ];
        let a = AffinePoly::new(&gx.substitute(&shear));
        let b = AffinePoly::new(&gy.substitute(&shear));
        if !a.is_zero() && !b.is_zero() && !(a.leading_is_constant() && b.leading_is_constant()) {
            continue;
        }
        let res = resultant_y(&a, &b);
        let Some(ord) = res.valuation().map(|v| v as u32) else {
            zeros += 1;
            if zeros == MAX_ZERO_RESULTANTS {
                return Err(Error::NonIsolated);
            }
            continue;
        };
        zeros = 0;
        if values.contains(&ord) {
            return Ok(values.into_iter().chain([ord]).min().unwrap());
        }
        values.push(ord);
    }
    values.into_iter().min().ok_or(Error::NonIsolated)
}

/// Sum of the local Milnor numbers; requires a completely resolved locus.
pub fn milnor_total(curve: &Curve) -> Result<u32> {
    let locus = singular_points(curve)?;
    if !locus.complete {
        return Err(Error::IncompleteSingularLocus);
    }
    Ok(locus.points.iter().filter_map(|p| p.milnor).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    Free,
    NearlyFree,
    Neither,
    LinePencil,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Free => "free",
            ClassKind::NearlyFree => "nearly free",
            ClassKind::Neither => "neither",
            ClassKind::LinePencil => "line pencil",
        })
    }
}

/// Freeness type with exponents `d1 ≤ d2` when free or nearly free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: ClassKind,
    pub d1: Option<u32>,
    pub d2: Option<u32>,
}

impl Classification {
    fn plain(kind: ClassKind) -> Self {
        Classification {
            kind,
            d1: None,
            d2: None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.d1, self.d2) {
            (Some(a), Some(b)) => write!(f, "{} ({a}, {b})", self.kind),
            _ => write!(f, "{}", self.kind),
        }
    }
}

/// Classification from `τ` and `r = mdr(f)`, given both.
pub fn classify_from(d: u32, tau: usize, r: u32) -> Classification {
    if r == 0 {
        return Classification::plain(ClassKind::LinePencil);
    }
    let (d, r, tau) = (d as i64, r as i64, tau as i64);
    let free_tau = (d - 1) * (d - 1) - r * (d - r - 1);
    let with = |kind, d2: i64| Classification {
        kind,
        d1: Some(r as u32),
        d2: Some(d2 as u32),
    };
    if tau == free_tau {
        with(ClassKind::Free, d - 1 - r)
    } else if tau == free_tau - 1 {
        with(ClassKind::NearlyFree, d - r)
    } else {
        Classification::plain(ClassKind::Neither)
    }
}

/// Free / nearly free / neither, cross-checked against the determinant
/// certificate in both directions.
pub fn classify(curve: &Curve) -> Result<Classification> {
    let r = mdr(curve);
    let tau = tjurina_total(curve)?;
    let class = classify_from(curve.degree(), tau, r);
    if class.kind != ClassKind::LinePencil {
        let certified = free_certificate_with_mdr(curve, r).is_some();
        if certified != (class.kind == ClassKind::Free) {
            return Err(Error::CertificateMismatch);
        }
    }
    Ok(class)
}

/// `χ(P² \ C) = (d-1)(d-2) + 1 - μ`.
pub fn chi_complement(d: u32, mu: u32) -> i64 {
    let d = d as i64;
    (d - 1) * (d - 2) + 1 - mu as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementData {
    pub chi: i64,
    pub b0: u32,
    pub b1: u32,
    pub b2: u32,
    pub components: u32,
}

/// Betti numbers of the complement from `d`, `μ` and the number of
/// irreducible components.
pub fn complement_data(d: u32, mu: u32, components: u32) -> Result<ComplementData> {
    if components == 0 {
        return Err(Error::BadRange("a curve has at least one component".into()));
    }
    let chi = chi_complement(d, mu);
    let b1 = components - 1;
    let b2 = chi - 1 + b1 as i64;
    if b2 < 0 {
        return Err(Error::NegativeBetti(format!(
            "b2 = {b2} for d = {d}, mu = {mu}, {components} components"
        )));
    }
    Ok(ComplementData {
        chi,
        b0: 1,
        b1,
        b2: b2 as u32,
        components,
    })
}
