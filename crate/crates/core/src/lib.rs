//! Pairwise entanglement of the spin-1/2 isotropic XY chain in a magnetic
//! field, in the thermodynamic limit and at finite temperature.
//!
//! ```text
//! H = J Σ_j (S^x_j S^x_{j+1} + S^y_j S^y_{j+1}) − h Σ_j S^z_j
//! ```
//!
//! The chain is mapped to free fermions with dispersion `J cos k − h`
//! ([`spectrum`]); two-site reduced density matrices follow from Wick's
//! theorem ([`wick`], [`pair`]); [`criticality`] locates the fields and
//! temperatures where the concurrence of a spin pair switches on and off.

pub mod criticality;
pub mod error;
pub mod pair;
pub mod params;
pub mod spectrum;
pub mod wick;

pub use error::{Error, Result};
pub use pair::{
    assemble_rho, concurrence_closed, concurrence_wootters, density_matrix_elements, z_general,
    ConcurrenceResult, PairDensityMatrix, PairElements,
};
pub use params::ChainParams;
pub use spectrum::{fourier_coefficient, CorrelatorTable};
