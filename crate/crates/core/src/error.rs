use thiserror::Error;

/// Errors raised by the library. Each variant corresponds to a named
/// failure mode of one of the public operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate support: {0}")]
    DegenerateSupport(String),
    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,
    #[error("face is not a face of the Newton polytope")]
    FaceNotOfNewtonPolytope,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("bad valuation: {0}")]
    BadValuation(String),
    #[error("nonintegral exponent: eta quotient q-power {0}/24 is not an integer multiple of the declared variable")]
    NonintegralExponent(String),
    #[error("divergent outside disk: |t0| exceeds the convergence radius estimate {0}")]
    DivergentOutsideDisk(String),
    #[error("operator has no maximally unipotent point at t=0: indicial polynomial {0}")]
    NotMumPoint(String),
    #[error("Yukawa coupling is not a rational function: {0}")]
    NonrationalYukawa(String),
    #[error("singular point of the dilogarithm: z = {0}")]
    SingularPoint(String),
    #[error("integrand vanishes on the torus within margin: {0}")]
    VanishingOnTorus(String),
    #[error("function is not degree zero")]
    NotDegreeZero,
    #[error("function is not ({0},{1})-vertical")]
    NotVertical(i64, i64),
    #[error("arity mismatch: expected {0}, got {1}")]
    ArityMismatch(usize, usize),
    #[error("nonzero residue at cusp: H = {0}")]
    NonzeroResidueAtCusp(String),
    #[error("nonintegral instanton number at degree {0}: {1}")]
    NonintegralInstanton(usize, String),
    #[error("not a 2-dimensional reflexive polytope: {0}")]
    Not2dReflexive(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("io error: {0}")]
    Io(String),
}
