//! Report types and their deterministic JSON / text serializations.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::algebra::{parse_poly, Rational};
use crate::error::{Error, Result};
use crate::invariants::{
    classify, complement_data, singular_points, tjurina_total, ClassKind, Classification,
    ComplementData, SingularLocus,
};
use crate::syzygy::{free_certificate, mdr, nj, Curve, FreeCertificate};
use crate::topology::{
    alexander, delta2, eigenvalue_table, milnor_fiber_betti, spectrum, CycloPoly, EigenvalueTable,
    FiberBetti, SpectrumMultiset,
};

/// Version tag carried by every JSON document the crate emits.
pub const SCHEMA_VERSION: u32 = 1;

pub const NEEDS_COMPONENTS: &str = "needs --components";

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Everything computed for one reduced curve.
///
/// Fields that depend on the number of irreducible components are `None`
/// unless it was supplied; fields that depend on `μ` are `None` when the
/// singular locus could not be split over the rationals. `notes` says why.
#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub schema_version: u32,
    pub input: String,
    pub polynomial: String,
    pub degree: u32,
    pub mdr: u32,
    pub tau: u32,
    pub classification: Classification,
    pub exponents: Option<[u32; 2]>,
    pub certificate: Option<FreeCertificate>,
    pub singular_locus: Option<SingularLocus>,
    pub mu: Option<u32>,
    pub components: Option<u32>,
    pub chi: Option<i64>,
    pub complement: Option<ComplementData>,
    pub nj: Vec<u32>,
    pub spectrum: Option<SpectrumMultiset>,
    pub eigenvalues: Option<EigenvalueTable>,
    pub alexander: Option<CycloPoly>,
    pub delta2: Option<CycloPoly>,
    pub milnor_fiber: Option<FiberBetti>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

struct Clock {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, u64>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock {
            on,
            last: Instant::now(),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            let ms = now.duration_since(self.last).as_millis() as u64;
            self.laps.insert(stage.to_string(), ms);
            self.last = now;
        }
    }

    fn finish(self) -> Option<BTreeMap<String, u64>> {
        self.on.then_some(self.laps)
    }
}

/// Internal inconsistencies abort; anything else becomes a note.
fn soften<T>(r: Result<T>, notes: &mut Vec<String>, what: &str) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_internal() => Err(e),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            Ok(None)
        }
    }
}

impl CurveReport {
    /// Parses `input` and analyzes it.
    pub fn analyze(input: &str, components: Option<u32>, timing: bool) -> Result<Self> {
        let curve = Curve::new(parse_poly(input)?)?;
        Self::for_curve(input, &curve, components, timing)
    }

    pub fn for_curve(
        input: &str,
        curve: &Curve,
        components: Option<u32>,
        timing: bool,
    ) -> Result<Self> {
        if components == Some(0) {
            return Err(Error::BadRange("a curve has at least one component".into()));
        }
        let mut clock = Clock::new(timing);
        let mut notes = Vec::new();
        let d = curve.degree();

        let r = mdr(curve);
        let tau = tjurina_total(curve)? as u32;
        let classification = classify(curve)?;
        let certificate = match classification.kind {
            ClassKind::Free => free_certificate(curve),
            _ => None,
        };
        let exponents = classification.d1.zip(classification.d2).map(|(a, b)| [a, b]);
        clock.lap("syzygies");

        let locus = soften(singular_points(curve), &mut notes, "singular points")?;
        let mu = match &locus {
            Some(l) if l.complete => Some(l.points.iter().filter_map(|p| p.milnor).sum()),
            Some(_) => {
                notes.push("mu: singular locus is not split over the rationals".into());
                None
            }
            None => None,
        };
        clock.lap("singularities");

        let njs: Vec<u32> = (1..=d.saturating_sub(3)).map(|j| nj(curve, j) as u32).collect();
        clock.lap("kernels");

        let chi = mu.map(|m| crate::invariants::chi_complement(d, m));
        let complement = match (mu, components) {
            (Some(m), Some(c)) => soften(complement_data(d, m, c), &mut notes, "complement")?,
            (_, None) => {
                notes.push(format!("complement Betti numbers: {NEEDS_COMPONENTS}"));
                None
            }
            _ => None,
        };
        let pencil = classification.kind == ClassKind::LinePencil;
        if pencil {
            notes.push(
                "spectrum: the n_j formula does not apply to concurrent lines (mdr = 0)".into(),
            );
        }
        let spectrum = match components {
            _ if pencil => None,
            Some(c) if d >= 3 => soften(spectrum(&njs, d, c - 1), &mut notes, "spectrum")?,
            Some(_) => None,
            None => {
                notes.push(format!("spectrum: {NEEDS_COMPONENTS}"));
                None
            }
        };
        let eigenvalues = match &spectrum {
            Some(sp) => Some(eigenvalue_table(sp, d)?),
            None => None,
        };
        let alexander = match &eigenvalues {
            Some(t) => Some(alexander(t)?),
            None => None,
        };
        let (delta2, milnor_fiber) = match (&alexander, chi) {
            (Some(a), Some(chi)) => (
                soften(delta2(a, chi, d), &mut notes, "delta2")?,
                soften(milnor_fiber_betti(a, chi, d), &mut notes, "Milnor fiber")?,
            ),
            _ => (None, None),
        };
        clock.lap("topology");

        Ok(CurveReport {
            schema_version: SCHEMA_VERSION,
            input: input.to_string(),
            polynomial: curve.f().to_string(),
            degree: d,
            mdr: r,
            tau,
            classification,
            exponents,
            certificate,
            singular_locus: locus,
            mu,
            components,
            chi,
            complement,
            nj: njs,
            spectrum,
            eigenvalues,
            alexander,
            delta2,
            milnor_fiber,
            notes,
            timing_ms: clock.finish(),
        })
    }
}

fn opt<T: Display>(v: &Option<T>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "-".to_string(),
    }
}

impl fmt::Display for CurveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f              = {}", self.polynomial)?;
        writeln!(f, "degree         = {}", self.degree)?;
        writeln!(f, "mdr            = {}", self.mdr)?;
        writeln!(f, "tau            = {}", self.tau)?;
        writeln!(f, "classification = {}", self.classification)?;
        if let Some(c) = &self.certificate {
            writeln!(f, "rho1           = {}", c.rho1)?;
            writeln!(f, "rho2           = {}", c.rho2)?;
            writeln!(f, "det            = {} * f", c.scale)?;
        }
        if let Some(l) = &self.singular_locus {
            for p in &l.points {
                writeln!(f, "singular point = {p}, mu = {}", opt(&p.milnor))?;
            }
        }
        writeln!(f, "mu             = {}", opt(&self.mu))?;
        writeln!(f, "chi(U)         = {}", opt(&self.chi))?;
        if let Some(c) = &self.complement {
            writeln!(f, "b0, b1, b2     = {}, {}, {}", c.b0, c.b1, c.b2)?;
        }
        let nj: Vec<String> = self.nj.iter().map(|n| n.to_string()).collect();
        writeln!(f, "n_j            = [{}]", nj.join(", "))?;
        writeln!(f, "spectrum       = {}", opt(&self.spectrum))?;
        writeln!(f, "Delta          = {}", opt(&self.alexander))?;
        writeln!(f, "Delta^2        = {}", opt(&self.delta2))?;
        if let Some(b) = &self.milnor_fiber {
            writeln!(f, "b1(F), b2(F)   = {}, {}", b.b1, b.b2)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        if let Some(t) = &self.timing_ms {
            for (stage, ms) in t {
                writeln!(f, "time {stage}: {ms} ms")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::CycloPoly;

    #[test]
    fn c5_report() {
        let r = CurveReport::analyze("x*(x^4 + (x*z + y^2)^2)", Some(3), false).unwrap();
        assert_eq!(r.classification.to_string(), "free (1, 3)");
        assert_eq!(r.tau, 13);
        // (t-1)(t^5-1) = Phi_1^2 Phi_5
        assert_eq!(r.alexander, Some(CycloPoly::from_factors([(1, 2), (5, 1)])));
        assert!(r.notes.is_empty());
        assert!(r.certificate.is_some());
    }

    #[test]
    fn missing_components_are_noted() {
        let r = CurveReport::analyze("x^3+y^3+z^3", None, false).unwrap();
        assert_eq!(r.classification.kind, ClassKind::Neither);
        assert_eq!(r.tau, 0);
        assert_eq!(r.mu, Some(0));
        assert!(r.spectrum.is_none());
        assert!(r.notes.iter().any(|n| n.contains(NEEDS_COMPONENTS)));
    }

    #[test]
    fn non_reduced_is_rejected() {
        assert_eq!(
            CurveReport::analyze("x^2*y", None, false).unwrap_err(),
            Error::NotReduced
        );
    }

    #[test]
    fn line_pencil_has_no_spectrum() {
        let r = CurveReport::analyze("x*y*(x-y)", Some(3), false).unwrap();
        assert_eq!(r.classification.kind, ClassKind::LinePencil);
        assert_eq!(r.mu, Some(4));
        assert_eq!(r.chi, Some(-1));
        assert!(r.spectrum.is_none() && r.alexander.is_none());
        assert_eq!(r.complement.unwrap().b2, 0);
    }

    #[test]
    fn json_is_stable() {
        let a = serde_json::to_string(&CurveReport::analyze("x*y*z", Some(3), false).unwrap());
        let b = serde_json::to_string(&CurveReport::analyze("x*y*z", Some(3), false).unwrap());
        assert_eq!(a.unwrap(), b.unwrap());
    }
}
