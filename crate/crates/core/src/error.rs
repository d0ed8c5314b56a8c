use thiserror::Error;

/// Every failure the library can report.
///
/// Input errors (bad text, bad degree, non-reduced curve) are distinguished
/// from internal inconsistencies, which indicate a bug or a falsified
/// identity and map to a separate CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: found monomials of degree {first} and {second}")]
    NotHomogeneous { first: u32, second: u32 },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("prime {0} divides a denominator of the matrix")]
    BadPrime(u64),
    #[error("curve is not reduced (f has a repeated factor)")]
    NotReduced,
    #[error("Hilbert function of the Jacobian ring did not stabilize: {0:?}")]
    NotStabilized(Vec<usize>),
    #[error("singular point is not isolated (resultant vanished for 5 consecutive shears)")]
    NonIsolated,
    #[error("point is not a singular point of the curve")]
    NotSingular,
    #[error("singular locus could not be completely resolved over the rationals")]
    IncompleteSingularLocus,
    #[error("freeness test and determinant certificate disagree")]
    CertificateMismatch,
    #[error("negative Betti number: {0}")]
    NegativeBetti(String),
    #[error("spectrum exponent {0} is not of the form 1+j/d, 3-j/d or 2")]
    BadExponent(String),
    #[error("eigenvalue multiplicities are not constant on Galois orbits")]
    OrbitInconsistency,
    #[error("quotient is not a polynomial: exponent of Phi_{n} would be {exponent}")]
    NotPolynomial { n: u32, exponent: i64 },
    #[error("value out of range: {0}")]
    BadRange(String),
    #[error("verification failure: {0}")]
    VerificationFailure(String),
    #[error("invalid degree {degree} for family {kind}")]
    BadDegree { kind: String, degree: u32 },
    #[error("stated exact division failed: {0}")]
    DivisionFailure(String),
}

impl Error {
    /// True for errors that signal an internal inconsistency rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotStabilized(_)
                | Error::CertificateMismatch
                | Error::OrbitInconsistency
                | Error::VerificationFailure(_)
                | Error::DivisionFailure(_)
                | Error::NotPolynomial { .. }
                | Error::NegativeBetti(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
