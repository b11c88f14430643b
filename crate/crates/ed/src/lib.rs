//! Finite-chain oracles for the spin-1/2 XX chain in a transverse field:
//! matrix-free Lanczos ground states per magnetization sector, full thermal
//! spectra for small chains, reduced pair density matrices, and an exact
//! free-fermion evaluator for open chains.

pub mod basis;
pub mod error;
pub mod free_fermion;
pub mod ground;
pub mod hamiltonian;
pub mod inset;
pub mod lanczos;
pub mod reduced;
pub mod state;
pub mod thermal;

pub use basis::{Boundary, SpinBasis};
pub use error::{EdError, Result};
pub use free_fermion::{central_pair, free_fermion_finite, FreeFermionChain};
pub use ground::{ground_state, GroundState, SectorLadder};
pub use hamiltonian::{apply_hamiltonian, XxHamiltonian};
pub use inset::{bulk_curve, inset_curve, InsetCurve};
pub use lanczos::{lowest_eigenpair, LanczosOptions};
pub use reduced::{pair_elements, reduced_pair_rho, spin_correlators, PairSource, SpinCorrelators};
pub use state::SpinState;
pub use thermal::{thermal_state, ThermalEnsemble, ThermalSpectrum};
