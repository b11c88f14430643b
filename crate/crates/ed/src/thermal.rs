//! Full spectra for small chains, reused across fields and temperatures.

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use xychain_core::ChainParams;

use crate::basis::{check_sites, Boundary, SpinBasis};
use crate::error::Result;
use crate::hamiltonian::XxHamiltonian;

pub const MAX_THERMAL_SITES: usize = 12;

#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    pub basis: Arc<SpinBasis>,
    pub zero_field_energies: Vec<f64>,
    /// Eigenvectors as columns.
    pub vectors: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct ThermalSpectrum {
    sites: usize,
    boundary: Boundary,
    coupling: f64,
    sectors: Vec<SectorSpectrum>,
}

impl ThermalSpectrum {
    pub fn compute(sites: usize, boundary: Boundary, coupling: f64) -> Result<Self> {
        check_sites(sites, MAX_THERMAL_SITES)?;
        let params = ChainParams::new(coupling, 0.0, 0.0)?;
        let ham = XxHamiltonian::new(sites, boundary, &params);
        let sectors = (0..=sites)
            .map(|n_up| {
                let basis = Arc::new(SpinBasis::sector(sites, n_up)?);
                let eig = SymmetricEigen::new(ham.dense(&basis));
                Ok(SectorSpectrum {
                    basis,
                    zero_field_energies: eig.eigenvalues.iter().copied().collect(),
                    vectors: eig.eigenvectors,
                })
            })
            .collect::<Result<Vec<_>>>()?;
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

    pub fn sectors(&self) -> &[SectorSpectrum] {
        &self.sectors
    }

    /// Boltzmann weights at `(h, T)`; `T = 0` spreads the weight evenly over
    /// the degenerate ground manifold.
    pub fn ensemble(self: &Arc<Self>, field: f64, temperature: f64) -> Result<ThermalEnsemble> {
        let params = ChainParams::new(self.coupling, field, temperature)?;
        let half = 0.5 * self.sites as f64;
        let energies: Vec<Vec<f64>> = self
            .sectors
            .iter()
            .enumerate()
            .map(|(n_up, s)| {
                let shift = -field * (n_up as f64 - half);
                s.zero_field_energies.iter().map(|e| e + shift).collect()
            })
            .collect();
        let ground = energies
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let raw: Vec<Vec<f64>> = energies
            .iter()
            .map(|sector| {
                sector
                    .iter()
                    .map(|&e| {
                        if params.is_zero_temperature() {
                            if e - ground < 1e-10 {
                                1.0
                            } else {
                                0.0
                            }
                        } else {
                            (-(e - ground) / temperature).exp()
                        }
                    })
                    .collect()
            })
            .collect();
        let shifted_partition: f64 = raw.iter().flatten().sum();
        let weights = raw
            .into_iter()
            .map(|sector| sector.into_iter().map(|w| w / shifted_partition).collect())
            .collect();
        Ok(ThermalEnsemble {
            spectrum: Arc::clone(self),
            params,
            energies,
            weights,
            ground_energy: ground,
            shifted_partition,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ThermalEnsemble {
    spectrum: Arc<ThermalSpectrum>,
    params: ChainParams,
    energies: Vec<Vec<f64>>,
    weights: Vec<Vec<f64>>,
    ground_energy: f64,
    shifted_partition: f64,
}

impl ThermalEnsemble {
    pub fn spectrum(&self) -> &ThermalSpectrum {
        &self.spectrum
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    pub fn sites(&self) -> usize {
        self.spectrum.sites
    }

    pub fn temperature(&self) -> f64 {
        self.params.temperature()
    }

    /// Energies at the ensemble's field, grouped by number of up spins.
    pub fn energies(&self) -> &[Vec<f64>] {
        &self.energies
    }

    /// Normalized populations, same layout as `energies`.
    pub fn populations(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// `ln Z`; finite at any temperature.
    pub fn log_partition(&self) -> f64 {
        if self.params.is_zero_temperature() {
            f64::INFINITY
        } else {
            self.shifted_partition.ln() - self.ground_energy / self.temperature()
        }
    }

    pub fn partition_function(&self) -> f64 {
        self.log_partition().exp()
    }

    pub fn mean_energy(&self) -> f64 {
        self.energies
            .iter()
            .flatten()
            .zip(self.weights.iter().flatten())
            .map(|(e, w)| e * w)
            .sum()
    }
}

pub fn thermal_state(
    sites: usize,
    boundary: Boundary,
    params: &ChainParams,
) -> Result<ThermalEnsemble> {
    let spectrum = Arc::new(ThermalSpectrum::compute(
        sites,
        boundary,
        params.coupling(),
    )?);
    spectrum.ensemble(params.field(), params.temperature())
}
