//! Two-site reduced density matrices from spin states and ensembles.
//!
//! Basis order `{↑↑, ↑↓, ↓↑, ↓↓}` for `(i, j)`, matching the analytic side.

use nalgebra::Matrix4;
use xychain_core::{PairDensityMatrix, PairElements};

use crate::basis::SpinBasis;
use crate::error::{EdError, Result};
use crate::ground::GroundState;
use crate::state::SpinState;
use crate::thermal::ThermalEnsemble;

pub trait PairSource {
    fn sites(&self) -> usize;

    /// Unvalidated `ρ_ij`.
    fn pair_matrix(&self, i: usize, j: usize) -> Matrix4<f64>;
}

impl PairSource for SpinState {
    fn sites(&self) -> usize {
        SpinState::sites(self)
    }

    fn pair_matrix(&self, i: usize, j: usize) -> Matrix4<f64> {
        let mut rho = Matrix4::zeros();
        accumulate(self.basis(), self.amplitudes(), 1.0, i, j, &mut rho);
        rho
    }
}

impl PairSource for GroundState {
    fn sites(&self) -> usize {
        self.state.sites()
    }

    fn pair_matrix(&self, i: usize, j: usize) -> Matrix4<f64> {
        self.state.pair_matrix(i, j)
    }
}

impl PairSource for ThermalEnsemble {
    fn sites(&self) -> usize {
        ThermalEnsemble::sites(self)
    }

    fn pair_matrix(&self, i: usize, j: usize) -> Matrix4<f64> {
        let mut rho = Matrix4::zeros();
        for (sector, weights) in self.spectrum().sectors().iter().zip(self.populations()) {
            for (k, &w) in weights.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let column = sector.vectors.column(k);
                accumulate(&sector.basis, column.as_slice(), w, i, j, &mut rho);
            }
        }
        rho
    }
}

fn pair_index(state: u32, i: usize, j: usize) -> usize {
    let bi = (state >> i & 1) as usize;
    let bj = (state >> j & 1) as usize;
    2 * (1 - bi) + (1 - bj)
}

/// `ρ += weight · Tr_rest |ψ><ψ|`
fn accumulate(
    basis: &SpinBasis,
    amplitudes: &[f64],
    weight: f64,
    i: usize,
    j: usize,
    rho: &mut Matrix4<f64>,
) {
    let clear = !((1u32 << i) | (1u32 << j));
    for (r, &s) in basis.states().iter().enumerate() {
        let c = amplitudes[r];
        if c == 0.0 {
            continue;
        }
        let x = pair_index(s, i, j);
        let rest = s & clear;
        for y in 0..4 {
            let up_i = (y < 2) as u32;
            let up_j = (y % 2 == 0) as u32;
            let partner = rest | up_i << i | up_j << j;
            if let Some(c2) = basis.index_of(partner) {
                rho[(x, y)] += weight * c * amplitudes[c2];
            }
        }
    }
}

fn check_pair(sites: usize, i: usize, j: usize) -> Result<()> {
    if i < j && j < sites {
        Ok(())
    } else {
        Err(EdError::InvalidPair { i, j, sites })
    }
}

pub fn reduced_pair_rho<S: PairSource + ?Sized>(
    source: &S,
    i: usize,
    j: usize,
) -> Result<PairDensityMatrix> {
    check_pair(source.sites(), i, j)?;
    Ok(PairDensityMatrix::new(source.pair_matrix(i, j))?)
}

/// The X-shaped entries of `ρ_ij`, for comparison with the free-fermion side.
pub fn pair_elements<S: PairSource + ?Sized>(
    source: &S,
    i: usize,
    j: usize,
) -> Result<PairElements> {
    let rho = reduced_pair_rho(source, i, j)?;
    Ok(PairElements {
        distance: j - i,
        x_plus: rho.get(0, 0),
        y_plus: rho.get(1, 1),
        y_minus: rho.get(2, 2),
        x_minus: rho.get(3, 3),
        z: rho.get(1, 2),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCorrelators {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub sz_i: f64,
    pub sz_j: f64,
}

impl SpinCorrelators {
    /// `<SᶻSᶻ> − <Sᶻ_i><Sᶻ_j>`
    pub fn zz_connected(&self) -> f64 {
        self.zz - self.sz_i * self.sz_j
    }
}

pub fn spin_correlators<S: PairSource + ?Sized>(
    source: &S,
    i: usize,
    j: usize,
) -> Result<SpinCorrelators> {
    let rho = reduced_pair_rho(source, i, j)?;
    let [xx, yy, zz] = rho.spin_correlators();
    let (sz_i, sz_j) = rho.magnetizations();
    Ok(SpinCorrelators {
        xx,
        yy,
        zz,
        sz_i,
        sz_j,
    })
}
