//! Open XX chain as free fermions.
//!
//! Without a boundary bond the Jordan-Wigner image carries no parity term:
//! hopping `J/2` between neighbours plus `−h` on site. Its eigenmodes are
//! standing waves `φ_q(l) = √(2/(N+1)) sin(π q (l+1)/(N+1))` with energies
//! `J cos(π q/(N+1)) − h`, `q = 1..=N`.

use std::f64::consts::PI;

use xychain_core::spectrum::fermi_dirac;
use xychain_core::wick::Contractions;
use xychain_core::{ChainParams, PairElements};

use crate::basis::Boundary;
use crate::error::{EdError, Result};

/// Largest central-pair distance reported by `free_fermion_finite`.
pub const CENTRAL_DISTANCES: usize = 4;

#[derive(Debug, Clone)]
pub struct FreeFermionChain {
    sites: usize,
    params: ChainParams,
    energies: Vec<f64>,
    particle_occupation: Vec<f64>,
    hole_occupation: Vec<f64>,
}

impl FreeFermionChain {
    pub fn open(sites: usize, params: &ChainParams) -> Result<Self> {
        if sites < 2 {
            return Err(EdError::SiteCount {
                sites,
                min: 2,
                max: usize::MAX,
            });
        }
        let energies: Vec<f64> = (1..=sites)
            .map(|q| {
                params.coupling() * (PI * q as f64 / (sites + 1) as f64).cos() - params.field()
            })
            .collect();
        let t = params.temperature();
        let particle_occupation = energies.iter().map(|&e| fermi_dirac(e, t)).collect();
        let hole_occupation = energies.iter().map(|&e| fermi_dirac(-e, t)).collect();
        Ok(Self {
            sites,
            params: *params,
            energies,
            particle_occupation,
            hole_occupation,
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// `φ_q(l)` for the `index`-th mode (`q = index + 1`).
    pub fn mode(&self, index: usize, site: usize) -> f64 {
        let n1 = (self.sites + 1) as f64;
        (2.0 / n1).sqrt() * (PI * ((index + 1) * (site + 1)) as f64 / n1).sin()
    }

    /// Dense contractions restricted to sites `first..first + len`.
    pub fn window(&self, first: usize, len: usize) -> WindowContractions {
        assert!(first + len <= self.sites, "window leaves the chain");
        let modes: Vec<Vec<f64>> = (0..self.sites)
            .map(|q| (first..first + len).map(|l| self.mode(q, l)).collect())
            .collect();
        let mut particle = vec![0.0; len * len];
        let mut hole = vec![0.0; len * len];
        for (q, phi) in modes.iter().enumerate() {
            let (n, e) = (self.particle_occupation[q], self.hole_occupation[q]);
            for a in 0..len {
                for b in 0..len {
                    let pp = phi[a] * phi[b];
                    particle[a * len + b] += pp * n;
                    hole[a * len + b] += pp * e;
                }
            }
        }
        WindowContractions {
            first,
            len,
            particle,
            hole,
        }
    }

    pub fn pair_elements(&self, i: usize, j: usize) -> Result<PairElements> {
        if !(i < j && j < self.sites) {
            return Err(EdError::InvalidPair {
                i,
                j,
                sites: self.sites,
            });
        }
        let w = self.window(i, j - i + 1);
        Ok(PairElements::from_contractions(&w, i, j))
    }

    /// `<c_i† c_j>` summed over the full mode set.
    pub fn particle(&self, i: usize, j: usize) -> f64 {
        (0..self.sites)
            .map(|q| self.mode(q, i) * self.mode(q, j) * self.particle_occupation[q])
            .sum()
    }
}

/// Sites `(i, i + m)` for a chain of `sites`, centred with `i` rounded down.
pub fn central_pair(sites: usize, m: usize) -> Option<(usize, usize)> {
    (m >= 1 && m < sites).then(|| {
        let i = (sites - m - 1) / 2;
        (i, i + m)
    })
}

#[derive(Debug, Clone)]
pub struct WindowContractions {
    first: usize,
    len: usize,
    particle: Vec<f64>,
    hole: Vec<f64>,
}

impl WindowContractions {
    fn at(&self, i: usize, j: usize) -> usize {
        let (a, b) = (i - self.first, j - self.first);
        assert!(a < self.len && b < self.len, "site outside the window");
        a * self.len + b
    }
}

impl Contractions for WindowContractions {
    fn particle(&self, i: usize, j: usize) -> f64 {
        self.particle[self.at(i, j)]
    }

    fn hole(&self, i: usize, j: usize) -> f64 {
        self.hole[self.at(i, j)]
    }
}

/// Pair entries for the central pairs `m = 1..=4` of an open chain.
pub fn free_fermion_finite(
    sites: usize,
    params: &ChainParams,
    boundary: Boundary,
) -> Result<Vec<PairElements>> {
    if boundary != Boundary::Open {
        return Err(EdError::PeriodicFreeFermion);
    }
    let chain = FreeFermionChain::open(sites, params)?;
    (1..=CENTRAL_DISTANCES.min(sites - 1))
        .map(|m| {
            let (i, j) = central_pair(sites, m).expect("m < sites");
            chain.pair_elements(i, j)
        })
        .collect()
}
