//! Exact and certified-precision invariants of toric hypersurface pencils
//! and their Eisenstein (modular) counterparts.
//!
//! The crate is organized around seven subsystems:
//!
//! * [`polytope`] — exact lattice-polytope machinery: Newton polytopes,
//!   polar duals, reflexivity, face lattices, face polynomials and the
//!   tempered sufficient conditions.
//! * [`cyclotomic`], [`laurent`], [`series`], [`eta`], [`recurrence`] —
//!   exact coefficient arithmetic in cyclotomic fields, Laurent
//!   polynomials, truncated power/log series, eta quotients and
//!   linear-recurrence (Picard-Fuchs) fitting.
//! * [`periods`] — fundamental and regulator period series, boundary
//!   special values, Frobenius solutions, mirror maps, Yukawa couplings.
//! * [`nt`] — Bernoulli polynomials, Dirichlet L-values, the two-sided
//!   periodic L-sums, the Bloch-Wigner dilogarithm, Néron N-gon regulator
//!   formulas, Mahler-measure quadrature and the identity verifiers.
//! * [`eisenstein`] — finite Fourier theory on (Z/N)^2, cusps, the
//!   horospherical map, fundamental vectors, Eisenstein q-expansions and
//!   lattice sums, regulator-period expansions, higher normal functions,
//!   cusp limits, pushforward and Fricke transforms.
//! * [`modular`] — the toric/Eisenstein comparison pipeline and the
//!   local-mirror-symmetry computations: Mori data, instanton extraction,
//!   growth rates, Hauptmodul checks.
//!
//! All exact arithmetic uses GMP rationals; all numerics use MPFR ball
//! arithmetic (midpoint + radius) at caller-selected precision.

pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod eta;
pub mod laurent;
pub mod modular;
pub mod nt;
pub mod num;
pub mod periods;
pub mod polytope;
pub mod recurrence;
pub mod series;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default working precision in bits for ball arithmetic.
pub const DEFAULT_PREC: u32 = 128;

/// Default truncation order for power series.
pub const DEFAULT_ORDER: usize = 32;
