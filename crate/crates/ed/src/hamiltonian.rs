//! `H = (J/2) Σ (S⁺S⁻ + S⁻S⁺) − h Σ Sᶻ` acting on bit patterns.

use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;
use xychain_core::ChainParams;

use crate::basis::{Boundary, SpinBasis};
use crate::error::{EdError, Result};
use crate::state::SpinState;

/// Rows per rayon task in the matvec.
const MATVEC_CHUNK: usize = 4096;

#[derive(Debug, Clone)]
pub struct XxHamiltonian {
    sites: usize,
    boundary: Boundary,
    coupling: f64,
    field: f64,
    bond_masks: Vec<u32>,
}

impl XxHamiltonian {
    pub fn new(sites: usize, boundary: Boundary, params: &ChainParams) -> Self {
        let bond_masks = boundary
            .bonds(sites)
            .into_iter()
            .map(|(a, b)| (1u32 << a) | (1u32 << b))
            .collect();
        Self {
            sites,
            boundary,
            coupling: params.coupling(),
            field: params.field(),
            bond_masks,
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn diagonal(&self, state: u32) -> f64 {
        -self.field * (state.count_ones() as f64 - 0.5 * self.sites as f64)
    }

    pub fn hop_amplitude(&self) -> f64 {
        0.5 * self.coupling
    }

    /// Patterns reached by one flip-flop; each carries amplitude `J/2`.
    pub fn hops(&self, state: u32) -> impl Iterator<Item = u32> + '_ {
        self.bond_masks.iter().filter_map(move |&mask| {
            let pair = state & mask;
            (pair != 0 && pair != mask).then_some(state ^ mask)
        })
    }

    /// `out = H · input` on `basis`. Every row gathers from its own hops, so
    /// writes are disjoint and the result does not depend on the thread count.
    pub fn apply(&self, basis: &SpinBasis, input: &[f64], out: &mut [f64]) -> Result<()> {
        for len in [input.len(), out.len()] {
            if len != basis.dim() {
                return Err(EdError::DimensionMismatch {
                    expected: basis.dim(),
                    got: len,
                });
            }
        }
        let t = self.hop_amplitude();
        out.par_chunks_mut(MATVEC_CHUNK)
            .enumerate()
            .for_each(|(chunk, rows)| {
                let first = chunk * MATVEC_CHUNK;
                for (offset, value) in rows.iter_mut().enumerate() {
                    let r = first + offset;
                    let s = basis.state(r);
                    let mut acc = self.diagonal(s) * input[r];
                    for target in self.hops(s) {
                        let c = basis
                            .index_of(target)
                            .expect("flip-flop left the magnetization sector");
                        acc += t * input[c];
                    }
                    *value = acc;
                }
            });
        Ok(())
    }

    pub fn dense(&self, basis: &SpinBasis) -> DMatrix<f64> {
        let n = basis.dim();
        let t = self.hop_amplitude();
        let mut m = DMatrix::zeros(n, n);
        for (r, &s) in basis.states().iter().enumerate() {
            m[(r, r)] = self.diagonal(s);
            for target in self.hops(s) {
                let c = basis
                    .index_of(target)
                    .expect("flip-flop left the magnetization sector");
                m[(r, c)] += t;
            }
        }
        m
    }
}

/// `H |state>` with the state's own site count and basis. The returned
/// state is not normalized; its energy is the Rayleigh quotient of the input.
pub fn apply_hamiltonian(
    state: &SpinState,
    params: &ChainParams,
    boundary: Boundary,
) -> Result<SpinState> {
    let h = XxHamiltonian::new(state.sites(), boundary, params);
    let mut out = vec![0.0; state.basis().dim()];
    h.apply(state.basis(), state.amplitudes(), &mut out)?;
    let energy = dot(state.amplitudes(), &out);
    Ok(SpinState::from_parts(
        Arc::clone(state.basis_arc()),
        boundary,
        out,
        energy,
    ))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_hop_on_two_sites() {
        let p = ChainParams::unit(0.0, 0.0).unwrap();
        let basis = Arc::new(SpinBasis::full(2).unwrap());
        // |↑↓> = site 0 up = bit 0
        let mut amps = vec![0.0; 4];
        amps[0b01] = 1.0;
        let s = SpinState::new(basis, Boundary::Open, amps, 0.0).unwrap();
        let out = apply_hamiltonian(&s, &p, Boundary::Open).unwrap();
        assert_eq!(out.amplitudes(), &[0.0, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn polarized_state_only_feels_the_field() {
        for h in [0.0, 0.3, 2.0] {
            let p = ChainParams::unit(h, 0.0).unwrap();
            let basis = Arc::new(SpinBasis::sector(9, 9).unwrap());
            let s = SpinState::new(basis, Boundary::Periodic, vec![1.0], 0.0).unwrap();
            let out = apply_hamiltonian(&s, &p, Boundary::Periodic).unwrap();
            assert_eq!(out.amplitudes(), &[-h * 9.0 / 2.0]);
        }
    }

    #[test]
    fn matrix_free_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = ChainParams::new(1.3, 0.4, 0.0).unwrap();
        for (sites, bc) in [
            (3, Boundary::Open),
            (5, Boundary::Periodic),
            (10, Boundary::Open),
        ] {
            let basis = SpinBasis::full(sites).unwrap();
            let h = XxHamiltonian::new(sites, bc, &p);
            let v: Vec<f64> = (0..basis.dim())
                .map(|_| rng.random_range(-1.0..1.0))
                .collect();
            let mut out = vec![0.0; basis.dim()];
            h.apply(&basis, &v, &mut out).unwrap();
            let dense = h.dense(&basis) * DVector::from_vec(v);
            for (a, b) in out.iter().zip(dense.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hops_stay_in_the_sector() {
        let p = ChainParams::unit(0.5, 0.0).unwrap();
        for bc in [Boundary::Open, Boundary::Periodic] {
            let h = XxHamiltonian::new(10, bc, &p);
            for s in 0u32..1 << 10 {
                for t in h.hops(s) {
                    assert_eq!(t.count_ones(), s.count_ones());
                    assert_eq!((s ^ t).count_ones(), 2);
                }
            }
        }
    }

    #[test]
    fn dense_matrix_is_symmetric() {
        let p = ChainParams::unit(0.7, 0.0).unwrap();
        let basis = SpinBasis::sector(8, 4).unwrap();
        let m = XxHamiltonian::new(8, Boundary::Periodic, &p).dense(&basis);
        assert_eq!(m, m.transpose());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = ChainParams::unit(0.0, 0.0).unwrap();
        let basis = SpinBasis::sector(4, 2).unwrap();
        let h = XxHamiltonian::new(4, Boundary::Open, &p);
        let mut out = vec![0.0; 6];
        assert!(matches!(
            h.apply(&basis, &[1.0; 5], &mut out),
            Err(EdError::DimensionMismatch {
                expected: 6,
                got: 5
            })
        ));
    }
}
