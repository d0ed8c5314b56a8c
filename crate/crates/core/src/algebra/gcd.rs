//! Multivariate gcd of homogeneous polynomials by recursive primitive-part
//! Euclid in `Q[y][x]`, after stripping powers of `z` and setting `z = 1`.

use num_traits::{One, Zero};

use super::hompoly::HomPoly;
use super::monomial::{Monomial, Var};
use super::univariate::UPoly;
use super::Rational;

/// Polynomial in `x` with coefficients in `Q[y]`, indexed by the power of `x`.
type Bivar = Vec<UPoly>;

fn trim(mut p: Bivar) -> Bivar {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn dehomogenize(f: &HomPoly) -> Bivar {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for (m, c) in f.terms() {
        let (a, b) = (m.exp(Var::X) as usize, m.exp(Var::Y) as usize);
        if out.len() <= a {
            out.resize(a + 1, Vec::new());
        }
        if out[a].len() <= b {
            out[a].resize(b + 1, Rational::zero());
        }
        out[a][b] += c;
    }
    trim(out.into_iter().map(UPoly::new).collect())
}

fn content(p: &Bivar) -> UPoly {
    p.iter()
        .fold(UPoly::zero(), |acc, c| if acc.is_zero() { c.monic() } else { acc.gcd(c) })
}

fn divide_by(p: &Bivar, c: &UPoly) -> Bivar {
    p.iter().map(|a| a.div_rem(c).0).collect()
}

fn pseudo_rem(a: &Bivar, b: &Bivar) -> Bivar {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Bivar = r.iter().map(|c| c.mul(lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        r = trim(next);
    }
    r
}

fn bivar_gcd(p: Bivar, q: Bivar) -> Bivar {
    if p.is_empty() {
        return q;
    }
    if q.is_empty() {
        return p;
    }
    let (cp, cq) = (content(&p), content(&q));
    let c = cp.gcd(&cq);
    let mut a = divide_by(&p, &cp);
    let mut b = divide_by(&q, &cq);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            break;
        }
        let cr = content(&r);
        a = b;
        b = divide_by(&r, &cr);
    }
    if b.len() <= 1 {
        // b is a nonzero element of Q[y]: the primitive parts are coprime.
        return vec![c];
    }
    b.iter().map(|coef| coef.mul(&c)).collect()
}

fn homogenize(p: &Bivar) -> HomPoly {
    let mut terms = Vec::new();
    let mut deg = 0;
    for (a, coef) in p.iter().enumerate() {
        for (b, c) in coef.coeffs().iter().enumerate() {
            if !c.is_zero() {
                deg = deg.max(a + b);
                terms.push((a as u32, b as u32, c.clone()));
            }
        }
    }
    let deg = deg as u32;
    HomPoly::from_terms(
        deg,
        terms
            .into_iter()
            .map(|(a, b, c)| (Monomial::new(a, b, deg - a - b), c)),
    )
    .expect("homogenized terms share one degree")
}

/// Greatest common divisor of two homogeneous polynomials, normalized to
/// integer content 1 with a positive leading coefficient.
pub fn hom_gcd(f: &HomPoly, g: &HomPoly) -> HomPoly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let strip_z = |h: &HomPoly| {
        let zpow = Monomial::new(0, 0, h.valuation(Var::Z));
        h.div_exact(&HomPoly::monomial(zpow, Rational::one()))
            .expect("monomial divides")
    };
    let common_z = f.valuation(Var::Z).min(g.valuation(Var::Z));
    let core = homogenize(&bivar_gcd(
        dehomogenize(&strip_z(f)),
        dehomogenize(&strip_z(g)),
    ));
    core.mul_monomial(&Monomial::new(0, 0, common_z), &Rational::one())
        .primitive()
}

/// True iff `gcd(f, f_x, f_y, f_z)` is a nonzero constant, i.e. `f` has no
/// repeated factor.
pub fn squarefree_check(f: &HomPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut g = f.clone();
    for v in Var::ALL {
        g = hom_gcd(&g, &f.partial(v));
        if g.degree() == 0 {
            return true;
        }
    }
    g.degree() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str) -> HomPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        assert_eq!(hom_gcd(&p("(x+y)*(x-z)^2"), &p("(x-z)*(y+z)")), p("x - z"));
        assert_eq!(hom_gcd(&p("z^2*x"), &p("z*y")), p("z"));
        assert_eq!(hom_gcd(&p("x^2 + y^2"), &p("x*y")), p("1"));
        assert_eq!(
            hom_gcd(&p("(x*z + y^2)^2*x"), &p("(x*z+y^2)*(x^2+y*z)")),
            p("x*z + y^2")
        );
    }

    #[test]
    fn squarefree() {
        assert!(!squarefree_check(&p("x^2*y")));
        assert!(squarefree_check(&p("x*(x^4 + (x*z + y^2)^2)")));
        assert!(squarefree_check(&p("(x*z)^3 + y^6")));
        assert!(squarefree_check(&p("x*y*z")));
        assert!(!squarefree_check(&p("(x*z + y^2)^2*(x+y)")));
        assert!(!squarefree_check(&p("z^3")));
    }
}
