//! Exact exchange-operator algebra with rational-function coefficients.

pub mod build;
pub mod coeff;
pub mod expr;
pub mod perm;
pub mod poly;
pub mod scalar;

pub use build::{
    build_h, build_invariant, build_pi, build_scaled_a, caveat_identity, homogeneous_hamiltonian,
    inverse_two_m, pi_commutator_closed_form, three_body_coeff, trapped_hamiltonian,
    verify_effective_one_body, verify_integrability, CaveatReport, CommutatorCheck,
    ExchangeRuleCheck, IntegrabilityReport, Laurent, LaurentTerm, TERM_BUDGET,
};
pub use coeff::RationalCoeff;
pub use expr::{Key, OperatorExpr};
pub use perm::Perm;
pub use poly::{Poly, Scalar, PARAMS};
