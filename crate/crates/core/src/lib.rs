//! Parent Hamiltonians of one-dimensional Jastrow states, checked three ways:
//! pointwise local energies, an exact exchange-operator algebra, and
//! finite lattice representations.

pub mod algebra;
pub mod builder;
pub mod error;
pub mod lattice;
pub mod model;
pub mod one_body;
pub mod pair;
pub mod prepotential;
pub mod quadrature;
pub mod special;
pub mod units;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use model::{
    AssembledPotential, CatalogEntry, ConfigVector, DeltaTerm, ModelSpec, Term, TermKind, ThreeBody,
};
pub use one_body::{OneBodyKind, OneBodyProfile, Representation};
pub use pair::{eval_pair, DeltaStrength, PairFamily, PairKind, Parity, SingularPoint};
pub use prepotential::{Prepotential, PrepotentialShape};
pub use units::{Geometry, PhysicalConstants, Statistics};
pub use zoo::{zoo_model, ZOO};
