//! Zero-temperature states.
//!
//! The field couples only to total `Sᶻ`, so each sector's eigenvectors are
//! field independent and `E_n(h) = E_n(0) − h (n − N/2)`. The ladder solves
//! each sector once; the ground state at any `h ≥ 0` is then a lookup.
//! Sectors with `n < N/2` are mirror images of `N − n` lifted by the field,
//! so only `n ≥ N/2` are kept.

use std::sync::Arc;

use xychain_core::ChainParams;

use crate::basis::{check_sites, Boundary, SpinBasis, MAX_SITES};
use crate::error::Result;
use crate::hamiltonian::XxHamiltonian;
use crate::lanczos::{lowest_eigenpair, LanczosOptions};
use crate::state::SpinState;

/// Gaps below this are treated as level crossings.
pub const DEGENERACY_GAP: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct SectorGround {
    pub n_up: usize,
    /// Lowest energy in the sector at zero field.
    pub zero_field_energy: f64,
    pub residual: f64,
    pub iterations: usize,
    pub state: SpinState,
}

impl SectorGround {
    pub fn energy_at(&self, field: f64) -> f64 {
        let sites = self.state.sites() as f64;
        self.zero_field_energy - field * (self.n_up as f64 - 0.5 * sites)
    }
}

#[derive(Debug, Clone)]
pub struct SectorLadder {
    sites: usize,
    boundary: Boundary,
    coupling: f64,
    sectors: Vec<SectorGround>,
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub state: SpinState,
    pub n_up: usize,
    /// Distance to the next-lowest sector ground energy.
    pub sector_gap: f64,
    pub degenerate: bool,
    pub residual: f64,
}

impl SectorLadder {
    pub fn compute(sites: usize, boundary: Boundary, coupling: f64) -> Result<Self> {
        Self::compute_with(sites, boundary, coupling, &LanczosOptions::default())
    }

    pub fn compute_with(
        sites: usize,
        boundary: Boundary,
        coupling: f64,
        options: &LanczosOptions,
    ) -> Result<Self> {
        check_sites(sites, MAX_SITES)?;
        let params = ChainParams::new(coupling, 0.0, 0.0)?;
        let ham = XxHamiltonian::new(sites, boundary, &params);
        let mut sectors = Vec::new();
        for n_up in sites.div_ceil(2)..=sites {
            let basis = Arc::new(SpinBasis::sector(sites, n_up)?);
            let out = lowest_eigenpair(
                basis.dim(),
                |x, y| {
                    ham.apply(&basis, x, y)
                        .expect("dimensions fixed by the basis")
                },
                options,
            )?;
            let state = SpinState::from_parts(basis, boundary, out.vector, out.eigenvalue);
            sectors.push(SectorGround {
                n_up,
                zero_field_energy: out.eigenvalue,
                residual: out.residual,
                iterations: out.iterations,
                state,
            });
        }
        Ok(Self {
            sites,
            boundary,
            coupling,
            sectors,
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn sectors(&self) -> &[SectorGround] {
        &self.sectors
    }

    pub fn ground_at(&self, field: f64) -> GroundState {
        let mut energies: Vec<(usize, f64)> = self
            .sectors
            .iter()
            .enumerate()
            .map(|(k, s)| (k, s.energy_at(field)))
            .collect();
        energies.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, energy) = energies[0];
        // An odd chain at zero field is degenerate with its mirror sector.
        let mirror_tie = field == 0.0 && 2 * self.sectors[best].n_up != self.sites;
        let sector_gap = energies.get(1).map_or(f64::INFINITY, |e| e.1 - energy);
        let chosen = &self.sectors[best];
        let mut state = chosen.state.clone();
        state = SpinState::from_parts(
            Arc::clone(state.basis_arc()),
            self.boundary,
            state.amplitudes().to_vec(),
            energy,
        );
        GroundState {
            state,
            n_up: chosen.n_up,
            sector_gap: if mirror_tie { 0.0 } else { sector_gap },
            degenerate: mirror_tie || sector_gap < DEGENERACY_GAP,
            residual: chosen.residual,
        }
    }

    /// Fields where the ground sector steps from `n` to `n + 1` up spins:
    /// `E_{n+1}(0) − E_n(0)`.
    pub fn crossing_fields(&self) -> Vec<f64> {
        self.sectors
            .windows(2)
            .map(|w| w[1].zero_field_energy - w[0].zero_field_energy)
            .filter(|&h| h > 0.0)
            .collect()
    }
}

pub fn ground_state(sites: usize, boundary: Boundary, params: &ChainParams) -> Result<GroundState> {
    let ladder = SectorLadder::compute(sites, boundary, params.coupling())?;
    Ok(ladder.ground_at(params.field()))
}
