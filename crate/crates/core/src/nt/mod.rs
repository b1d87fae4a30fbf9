//! Number-theoretic kernels: Bernoulli polynomials, Hurwitz zeta,
//! Dirichlet L-values, two-sided periodic L-sums, the Bloch-Wigner
//! dilogarithm, Néron N-gon regulator formulas, Mahler-measure
//! quadrature, and the special-value identity verifiers.

mod bernoulli;
mod dilog;
mod identities;
mod lvalues;
mod mahler;
mod neron;

pub use bernoulli::{bernoulli_number, bernoulli_poly};
pub use dilog::{bloch_wigner, d2_divisor, li2, DivisorOnCstar};
pub use identities::{verify_identity, IdentityCase, IdentityReport};
pub use lvalues::{
    catalan, dirichlet_l, hurwitz_zeta, ltilde_minus_numeric, ltilde_numeric,
    ltilde_via_bernoulli, zeta, DirichletCharacter,
};
pub use mahler::{mahler_measure, MahlerMethod};
pub use neron::{neron_regulator, NGonComponent, NGonData, NeronValue};
pub use neron::{a5_ngon as neron_a5_data, d5_ngon as neron_d5_data, e6_ngon as neron_e6_data};
