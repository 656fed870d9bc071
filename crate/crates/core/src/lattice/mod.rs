//! Finite-grid matrix realization of the exchange-operator formalism.

mod axioms;
mod eigen;
mod grid;
mod hamiltonian;
mod rep;
mod sparse;

pub use axioms::{
    check_projector_axioms, check_supersymmetric_lemma, invariant_commutator_on_probe,
    off_block_norm, probe_state, sandwich_defect, smooth_prepotential, AxiomReport, IdentityCheck,
    LemmaReport, AXIOM_TOL, LEMMA_PI_TOL, PROJECTOR_TOL,
};
pub use eigen::{lanczos_lowest, EigenMethod, SectorBasis, DENSE_MAX};
pub use grid::{Boundary, Grid};
pub use hamiltonian::{
    discretize_hamiltonian, energy_convergence, fit_order, grid_for, ground_state_overlap,
    invariant_commutator_study, CommutatorStudy, ConvergencePoint, ConvergenceReport,
    OverlapReport,
};
pub use rep::{Ladder, LatticeRep, ProductSpace, StencilOrder, DIM_BUDGET};
pub use sparse::SparseMatrix;
