//! The three conic-pencil families, their closed-form invariants and
//! explicit syzygies.
//!
//! With `v = xz + y²` (one-point base locus) and `u = xz`, `w = y²`
//! (two-point base locus):
//!
//! | kind | `d = 2m`            | `d = 2m + 1`          |
//! |------|---------------------|-----------------------|
//! | C    | `x^{2m} + v^m`      | `x (x^{2m} + v^m)`    |
//! | C′   | `u (u^{m-1} + w^{m-1})` | `x (u^m + w^m)`   |
//! | C″   | `u^m + w^m`         | `y (u^m + w^m)`       |

mod verify;

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::algebra::{rat, HomPoly, Var};
use crate::error::{Error, Result};
use crate::invariants::{ClassKind, Classification, SingularPoint};
use crate::syzygy::{Curve, Syzygy};
use crate::topology::{CycloPoly, SpectrumMultiset};

pub use verify::{verify, Claim, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyKind {
    C,
    Cprime,
    Cdoubleprime,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::C, FamilyKind::Cprime, FamilyKind::Cdoubleprime];

    /// Smallest degree for which the family is defined.
    pub fn min_degree(self) -> u32 {
        3
    }

    /// Conventional name with primes, e.g. `C''_7`.
    pub fn label(self, d: u32) -> String {
        let primes = match self {
            FamilyKind::C => "",
            FamilyKind::Cprime => "'",
            FamilyKind::Cdoubleprime => "''",
        };
        format!("C{primes}_{d}")
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::C => "C",
            FamilyKind::Cprime => "Cprime",
            FamilyKind::Cdoubleprime => "Cdoubleprime",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "C" => Ok(FamilyKind::C),
            "Cprime" | "C'" => Ok(FamilyKind::Cprime),
            "Cdoubleprime" | "C''" => Ok(FamilyKind::Cdoubleprime),
            _ => Err(format!("unknown family '{s}' (expected C, Cprime or Cdoubleprime)")),
        }
    }
}

fn check_degree(kind: FamilyKind, d: u32) -> Result<()> {
    if d < kind.min_degree() {
        return Err(Error::BadDegree {
            kind: kind.to_string(),
            degree: d,
        });
    }
    Ok(())
}

fn sum(a: &HomPoly, b: &HomPoly) -> HomPoly {
    a.add(b).expect("summands share a degree")
}

/// The defining polynomial, expanded.
pub fn generate(kind: FamilyKind, d: u32) -> Result<HomPoly> {
    check_degree(kind, d)?;
    let m = d / 2;
    let (x, y, z) = (HomPoly::x(), HomPoly::y(), HomPoly::z());
    let xz = &x * &z;
    let y2 = y.pow(2);
    Ok(match (kind, d % 2) {
        (FamilyKind::C, 0) => sum(&x.pow(d), &sum(&xz, &y2).pow(m)),
        (FamilyKind::C, _) => &x * &sum(&x.pow(2 * m), &sum(&xz, &y2).pow(m)),
        (FamilyKind::Cprime, 0) => &xz * &sum(&xz.pow(m - 1), &y2.pow(m - 1)),
        (FamilyKind::Cprime, _) => &x * &sum(&xz.pow(m), &y2.pow(m)),
        (FamilyKind::Cdoubleprime, 0) => sum(&xz.pow(m), &y2.pow(m)),
        (FamilyKind::Cdoubleprime, _) => &y * &sum(&xz.pow(m), &y2.pow(m)),
    })
}

/// Number of irreducible components over the complex numbers: each
/// `A^m + B^m` with `A`, `B` members of the pencil splits into `m` conics.
pub fn components(kind: FamilyKind, d: u32) -> Result<u32> {
    check_degree(kind, d)?;
    let m = d / 2;
    let odd = d % 2;
    Ok(match kind {
        FamilyKind::C => m + odd,
        FamilyKind::Cprime => m + 1,
        FamilyKind::Cdoubleprime => m + odd,
    })
}

/// Expected invariants of a family member, from closed forms only.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyOracle {
    pub kind: FamilyKind,
    pub d: u32,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub f: HomPoly,
    pub components: u32,
    pub mdr: u32,
    pub classification: Classification,
    pub tau: u32,
    pub mu: u32,
    /// `μ` at `(0:0:1)` for family C, the maximal-Milnor-number point.
    pub mu_base: Option<u32>,
    pub chi: i64,
    pub b1: u32,
    pub b2: u32,
    /// `n_j` for `j = 1..=d-3`.
    pub nj: Vec<u32>,
    pub spectrum: SpectrumMultiset,
    pub alexander: Option<CycloPoly>,
    pub delta2: Option<CycloPoly>,
    pub singular_points: Vec<SingularPoint>,
}

/// Closed-form spectrum `Σ ⌊(j-1)/2⌋ (t^{1+j/d} + t^{3-j/d}) + c t²`.
fn closed_spectrum(d: u32, weights: bool, c2: u32) -> SpectrumMultiset {
    let mut sp = SpectrumMultiset::new();
    let di = d as i64;
    if weights {
        for j in 3..di {
            let n = ((j - 1) / 2) as u32;
            sp.add(Rational64::new(di + j, di), n);
            sp.add(Rational64::new(3 * di - j, di), n);
        }
    }
    sp.add(Rational64::from_integer(2), c2);
    sp
}

pub fn oracle(kind: FamilyKind, d: u32) -> Result<FamilyOracle> {
    let f = generate(kind, d)?;
    let comps = components(kind, d)?;
    let m = d / 2;
    let odd = d % 2 == 1;
    let sq = (d - 1) * (d - 1);
    let free_tau = sq - (d - 2);
    let half_down = d / 2;

    let (class, tau, mu, chi, b1, b2) = match kind {
        FamilyKind::C => {
            let mu = sq - half_down;
            let chi = 2 - d as i64 + half_down as i64;
            let b1 = if odd { m } else { m - 1 };
            (free(1, d - 2), free_tau, mu, chi, b1, 0)
        }
        FamilyKind::Cprime => (free(1, d - 2), free_tau, free_tau, 0, half_down, half_down - 1),
        FamilyKind::Cdoubleprime => {
            let b = (d - 1) / 2;
            (nearly_free(1, d - 1), free_tau - 1, free_tau - 1, 1, b, b)
        }
    };

    let c_prime_odd = kind == FamilyKind::Cprime && odd;
    let nj: Vec<u32> = (1..=d.saturating_sub(3))
        .map(|j| if c_prime_odd { 0 } else { (j + 1) / 2 })
        .collect();
    let spectrum = closed_spectrum(d, !c_prime_odd, b1);

    let alexander = match kind {
        FamilyKind::C if odd => {
            let e = u32::try_from(-chi).expect("chi is non-positive in odd degree");
            Some(CycloPoly::from_factors([(1, 1)]).mul(&CycloPoly::power_of_tdm1(d, e)))
        }
        FamilyKind::Cprime if odd => Some(CycloPoly::from_factors([(1, b1)])),
        _ => None,
    };
    let delta2 = match (kind, d) {
        (FamilyKind::C, 6) => Some(CycloPoly::from_factors([(2, 1), (6, 1)])),
        (FamilyKind::C, 8) => Some(CycloPoly::from_factors([(8, 1)])),
        _ => None,
    };

    let p100 = SingularPoint::from_ints([1, 0, 0]);
    let p010 = SingularPoint::from_ints([0, 1, 0]);
    let p001 = SingularPoint::from_ints([0, 0, 1]);
    let singular_points = match kind {
        FamilyKind::C => vec![p001],
        // a single conic and its tangent line only meet at (0:0:1)
        FamilyKind::Cprime if d == 3 => vec![p001],
        FamilyKind::Cprime if odd => vec![p100, p001],
        FamilyKind::Cprime => vec![p100, p010, p001],
        FamilyKind::Cdoubleprime => vec![p100, p001],
    };
    let mu_base = (kind == FamilyKind::C).then_some(mu);

    Ok(FamilyOracle {
        kind,
        d,
        f,
        components: comps,
        mdr: 1,
        classification: class,
        tau,
        mu,
        mu_base,
        chi,
        b1,
        b2,
        nj,
        spectrum,
        alexander,
        delta2,
        singular_points,
    })
}

fn free(d1: u32, d2: u32) -> Classification {
    Classification {
        kind: ClassKind::Free,
        d1: Some(d1),
        d2: Some(d2),
    }
}

fn nearly_free(d1: u32, d2: u32) -> Classification {
    Classification {
        kind: ClassKind::NearlyFree,
        d1: Some(d1),
        d2: Some(d2),
    }
}

fn divide(num: &HomPoly, den: &HomPoly, what: &str) -> Result<HomPoly> {
    num.div_exact(den)
        .ok_or_else(|| Error::DivisionFailure(format!("{what}: {den} does not divide {num}")))
}

fn linear(cx: i64, cy: i64, cz: i64) -> [HomPoly; 3] {
    [
        HomPoly::x().scale(&rat(cx)),
        HomPoly::y().scale(&rat(cy)),
        HomPoly::z().scale(&rat(cz)),
    ]
}

/// The degree-one syzygy `ρ1` of each family, as an unchecked triple.
pub(crate) fn first_syzygy_entries(kind: FamilyKind, d: u32) -> [HomPoly; 3] {
    let m = (d / 2) as i64;
    match kind {
        FamilyKind::C => [HomPoly::zero(1), HomPoly::x(), HomPoly::y().scale(&rat(-2))],
        FamilyKind::Cprime if d % 2 == 1 => linear(2 * m, -1, -2 * (m + 1)),
        _ => {
            let [x, _, z] = linear(1, 0, -1);
            [x, HomPoly::zero(1), z]
        }
    }
}

/// The explicit generators `(ρ1, ρ2)`; for C″ the second is the Koszul
/// syzygy `(f_y, -f_x, 0)`.
pub fn family_syzygies(kind: FamilyKind, d: u32) -> Result<(Syzygy, Syzygy)> {
    let f = generate(kind, d)?;
    let curve = Curve::new(f.clone())?;
    let [fx, fy, fz] = curve.grad().clone();
    let [a, b, c] = first_syzygy_entries(kind, d);
    let rho1 = Syzygy::new(&curve, a, b, c)?;

    let m = d / 2;
    let (x, y, z) = (HomPoly::x(), HomPoly::y(), HomPoly::z());
    let v = sum(&(&x * &z), &y.pow(2));
    let rho2 = match kind {
        FamilyKind::C => {
            // g = A f_x + B f_y is divisible by f_z, giving (A, B, -g/f_z)
            let (ca, cb) = if d % 2 == 0 {
                (v.pow(m - 1).scale(&rat(-2)), &y.pow(2 * m - 3) * &z)
            } else {
                (&x * &v.pow(m - 1).scale(&rat(-2 * m as i64)), y.pow(2 * m - 1))
            };
            let g = sum(&(&ca * &fx), &(&cb * &fy));
            let q = divide(&g, &fz, "g / f_z")?;
            Syzygy::new(&curve, ca, cb, -q)?
        }
        FamilyKind::Cprime => {
            let g = divide(&fy, &x, "f_y / x")?;
            let h = divide(&fz, &x, "f_z / x")?;
            Syzygy::new(&curve, HomPoly::zero(d - 2), h, -g)?
        }
        FamilyKind::Cdoubleprime => Syzygy::new(&curve, fy, -fx, HomPoly::zero(d - 1))?,
    };
    Ok((rho1, rho2))
}

/// Checks the multiplier equation for the family:
/// `x h_y - 2y h_z = 0` for C, `x h_x - z h_z = 0` otherwise.
pub fn multiplier_pde(kind: FamilyKind, h: &HomPoly) -> bool {
    let (x, y, z) = (HomPoly::x(), HomPoly::y(), HomPoly::z());
    let lhs = match kind {
        FamilyKind::C => (&x * &h.partial(Var::Y))
            .sub(&(&y * &h.partial(Var::Z)).scale(&rat(2))),
        _ => (&x * &h.partial(Var::X)).sub(&(&z * &h.partial(Var::Z))),
    };
    lhs.expect("both terms have the degree of h").is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syzygy::{certify_pair, is_multiple};

    #[test]
    fn generators() {
        let s = |k, d| generate(k, d).unwrap().to_string();
        assert_eq!(s(FamilyKind::C, 5), "x^5 + x^3*z^2 + 2*x^2*y^2*z + x*y^4");
        assert_eq!(s(FamilyKind::Cprime, 6), "x^3*z^3 + x*y^4*z");
        assert_eq!(s(FamilyKind::Cdoubleprime, 7), "x^3*y*z^3 + y^7");
        assert_eq!(s(FamilyKind::C, 3), "x^3 + x^2*z + x*y^2");
        assert!(matches!(
            generate(FamilyKind::C, 2),
            Err(Error::BadDegree { degree: 2, .. })
        ));
        for kind in FamilyKind::ALL {
            for d in 3..=20 {
                assert!(
                    crate::algebra::squarefree_check(&generate(kind, d).unwrap()),
                    "{}",
                    kind.label(d)
                );
            }
        }
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("Cprime".parse::<FamilyKind>(), Ok(FamilyKind::Cprime));
        assert_eq!("C''".parse::<FamilyKind>(), Ok(FamilyKind::Cdoubleprime));
        assert!("D".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn oracle_values() {
        let o = oracle(FamilyKind::C, 7).unwrap();
        assert_eq!((o.tau, o.mu, o.chi, o.b1, o.b2), (31, 33, -2, 3, 0));
        assert_eq!(o.alexander, Some(CycloPoly::from_factors([(1, 3), (7, 2)])));
        let o = oracle(FamilyKind::Cprime, 8).unwrap();
        assert_eq!((o.tau, o.mu, o.chi, o.b1, o.b2), (43, 43, 0, 4, 3));
        assert_eq!(o.classification, free(1, 6));
        let o = oracle(FamilyKind::Cdoubleprime, 6).unwrap();
        assert_eq!((o.tau, o.mu, o.chi, o.b1, o.b2), (20, 20, 1, 2, 2));
        assert_eq!(o.classification, nearly_free(1, 5));
        let o = oracle(FamilyKind::Cprime, 9).unwrap();
        assert_eq!(o.alexander, Some(CycloPoly::from_factors([(1, 4)])));
        assert_eq!(o.nj, vec![0; 6]);
    }

    #[test]
    fn oracle_is_self_consistent() {
        for kind in FamilyKind::ALL {
            for d in 3..=15 {
                let o = oracle(kind, d).unwrap();
                assert_eq!(o.chi, 1 - o.b1 as i64 + o.b2 as i64, "{}", kind.label(d));
                assert_eq!(o.b1 + 1, o.components);
                assert_eq!(
                    crate::invariants::chi_complement(d, o.mu),
                    o.chi,
                    "{}",
                    kind.label(d)
                );
                // spectrum formula agrees with n_j through the general formula
                assert_eq!(
                    crate::topology::spectrum(&o.nj, d, o.b1).unwrap(),
                    o.spectrum,
                    "{}",
                    kind.label(d)
                );
            }
        }
    }

    #[test]
    fn explicit_syzygies() {
        for kind in FamilyKind::ALL {
            for d in 3..=9 {
                let (r1, r2) = family_syzygies(kind, d).unwrap();
                assert_eq!(r1.degree(), 1);
                assert!(!is_multiple(&r2, &r1), "{}", kind.label(d));
                let curve = Curve::new(generate(kind, d).unwrap()).unwrap();
                let cert = certify_pair(&curve, &r1, &r2);
                assert_eq!(cert.is_some(), kind != FamilyKind::Cdoubleprime, "{}", kind.label(d));
            }
        }
        let (r1, _) = family_syzygies(FamilyKind::Cprime, 7).unwrap();
        assert_eq!(r1.to_string(), "(6*x, -y, -8*z)");
        let (r1, r2) = family_syzygies(FamilyKind::C, 6).unwrap();
        assert_eq!(r1.to_string(), "(0, x, -2*y)");
        assert_eq!(r2.degree(), 4);
    }

    #[test]
    fn pde_check() {
        let v = crate::algebra::parse_poly("x*z + y^2").unwrap();
        assert!(multiplier_pde(FamilyKind::C, &v));
        assert!(multiplier_pde(FamilyKind::C, &HomPoly::one()));
        assert!(!multiplier_pde(FamilyKind::C, &HomPoly::z()));
        assert!(multiplier_pde(FamilyKind::Cprime, &crate::algebra::parse_poly("x*y*z").unwrap()));
        assert!(!multiplier_pde(FamilyKind::Cprime, &HomPoly::x()));
    }
}
