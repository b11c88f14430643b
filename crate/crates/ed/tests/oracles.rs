use std::sync::Arc;

use proptest::prelude::*;
use xychain_core::{concurrence_closed, ChainParams};
use xychain_ed::{
    apply_hamiltonian, central_pair, free_fermion_finite, ground_state, pair_elements,
    reduced_pair_rho, spin_correlators, Boundary, SectorLadder, SpinBasis, SpinState,
    ThermalSpectrum, XxHamiltonian,
};

fn max_element_gap(a: &xychain_core::PairElements, b: &xychain_core::PairElements) -> f64 {
    [
        a.x_plus - b.x_plus,
        a.x_minus - b.x_minus,
        a.y_plus - b.y_plus,
        a.y_minus - b.y_minus,
        a.z - b.z,
    ]
    .iter()
    .fold(0.0f64, |m, d| m.max(d.abs()))
}

#[test]
fn spin_ed_equals_free_fermions_on_open_chains() {
    for sites in 5..=12 {
        let spectrum = Arc::new(ThermalSpectrum::compute(sites, Boundary::Open, 1.0).unwrap());
        for h in [0.0, 0.5, 1.0, 1.5] {
            for t in [0.1, 0.5, 1.0] {
                let ensemble = spectrum.ensemble(h, t).unwrap();
                let p = ChainParams::unit(h, t).unwrap();
                let fermions = free_fermion_finite(sites, &p, Boundary::Open).unwrap();
                for (m, ff) in (1..).zip(&fermions) {
                    let (i, j) = central_pair(sites, m).unwrap();
                    let ed = pair_elements(&ensemble, i, j).unwrap();
                    let gap = max_element_gap(&ed, ff);
                    assert!(
                        gap < 1e-8,
                        "N = {sites}, h = {h}, T = {t}, m = {m}: {gap:e}"
                    );
                }
            }
        }
    }
}

#[test]
fn twelve_site_thermal_pair_matches_free_fermions() {
    let p = ChainParams::unit(0.7, 0.2).unwrap();
    let spectrum = Arc::new(ThermalSpectrum::compute(12, Boundary::Open, 1.0).unwrap());
    let ed = pair_elements(&spectrum.ensemble(0.7, 0.2).unwrap(), 4, 6).unwrap();
    let ff = free_fermion_finite(12, &p, Boundary::Open).unwrap()[1];
    assert_eq!(ff.distance, 2);
    assert!(max_element_gap(&ed, &ff) < 1e-8);
}

#[test]
fn lanczos_ground_energies_match_dense_spectra() {
    for bc in [Boundary::Open, Boundary::Periodic] {
        for sites in 2..=12 {
            let spectrum = Arc::new(ThermalSpectrum::compute(sites, bc, 1.0).unwrap());
            let ladder = SectorLadder::compute(sites, bc, 1.0).unwrap();
            for h in [0.0, 0.37, 0.81, 1.3] {
                let dense = spectrum.ensemble(h, 0.0).unwrap().ground_energy();
                let g = ladder.ground_at(h);
                assert!(
                    (g.state.energy() - dense).abs() < 1e-10,
                    "{} N = {sites}, h = {h}",
                    bc.label()
                );
                assert!(g.residual <= 1e-8);
            }
        }
    }
}

#[test]
fn low_temperature_ensemble_approaches_the_ground_state() {
    for bc in [Boundary::Open, Boundary::Periodic] {
        let ladder = SectorLadder::compute(10, bc, 1.0).unwrap();
        let spectrum = Arc::new(ThermalSpectrum::compute(10, bc, 1.0).unwrap());
        for h in [0.1, 0.45, 0.75, 0.95] {
            let g = ladder.ground_at(h);
            if g.degenerate || g.sector_gap < 1e-3 {
                continue;
            }
            let cold = spectrum.ensemble(h, 1e-6).unwrap();
            for (i, j) in [(4, 5), (3, 5), (2, 6)] {
                let a = reduced_pair_rho(&g, i, j).unwrap();
                let b = reduced_pair_rho(&cold, i, j).unwrap();
                assert!((a.matrix() - b.matrix()).amax() < 1e-4, "h = {h}");
            }
        }
    }
}

#[test]
fn transverse_correlations_dominate_at_the_onset() {
    let p = ChainParams::unit(0.5, 0.0).unwrap();
    let g = ground_state(16, Boundary::Periodic, &p).unwrap();
    let c = spin_correlators(&g, 0, 2).unwrap();
    assert!(c.xx.abs() > c.zz_connected().abs(), "{c:?}");
    assert!((c.xx - c.yy).abs() < 1e-12);
}

#[test]
fn saturated_ground_states_carry_no_entanglement() {
    let p = ChainParams::unit(2.0, 0.0).unwrap();
    let g = ground_state(12, Boundary::Open, &p).unwrap();
    for m in 1..=4 {
        let (i, j) = central_pair(12, m).unwrap();
        let e = pair_elements(&g, i, j).unwrap();
        assert_eq!(concurrence_closed(&e).unwrap().value, 0.0);
    }
}

#[test]
fn state_dump_survives_a_file_round_trip() {
    let p = ChainParams::unit(0.3, 0.0).unwrap();
    let g = ground_state(8, Boundary::Periodic, &p).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ground.bin");
    g.state
        .write_to(std::fs::File::create(&path).unwrap())
        .unwrap();
    let back = SpinState::read_from(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(back.amplitudes(), g.state.amplitudes());
    assert_eq!(back.energy(), g.state.energy());
    assert_eq!(back.basis().n_up(), Some(g.n_up));
    let len = std::fs::metadata(&path).unwrap().len() as usize;
    assert_eq!(len, 36 + 8 * g.state.basis().dim());
}

fn sector_state(sites: usize, n_up: usize, seed: &[f64]) -> SpinState {
    let full = Arc::new(SpinBasis::full(sites).unwrap());
    let mut amps = vec![0.0; full.dim()];
    let mut k = 0;
    for (s, a) in amps.iter_mut().enumerate() {
        if (s as u32).count_ones() as usize == n_up {
            *a = seed[k % seed.len()] + 1e-3;
            k += 1;
        }
    }
    let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    SpinState::new(full, Boundary::Periodic, amps, 0.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matvec_never_leaves_the_sector(
        sites in 2usize..=10,
        fraction in 0.0f64..=1.0,
        h in 0.0f64..2.0,
        periodic in any::<bool>(),
        seed in prop::collection::vec(-1.0f64..1.0, 1..16),
    ) {
        let n_up = (fraction * sites as f64).round() as usize;
        let bc = if periodic { Boundary::Periodic } else { Boundary::Open };
        let p = ChainParams::unit(h, 0.0).unwrap();
        let state = sector_state(sites, n_up, &seed);
        let out = apply_hamiltonian(&state, &p, bc).unwrap();
        for (s, a) in out.amplitudes().iter().enumerate() {
            if (s as u32).count_ones() as usize != n_up {
                prop_assert_eq!(*a, 0.0);
            }
        }
    }

    #[test]
    fn sector_and_full_matvecs_agree(
        sites in 2usize..=9,
        n_up in 0usize..=9,
        h in 0.0f64..2.0,
        seed in prop::collection::vec(-1.0f64..1.0, 1..16),
    ) {
        let n_up = n_up.min(sites);
        let p = ChainParams::unit(h, 0.0).unwrap();
        let ham = XxHamiltonian::new(sites, Boundary::Open, &p);
        let sector = SpinBasis::sector(sites, n_up).unwrap();
        let full_state = sector_state(sites, n_up, &seed);
        let input: Vec<f64> = sector
            .states()
            .iter()
            .map(|&s| full_state.amplitudes()[s as usize])
            .collect();
        let mut out = vec![0.0; sector.dim()];
        ham.apply(&sector, &input, &mut out).unwrap();
        let full_out = apply_hamiltonian(&full_state, &p, Boundary::Open).unwrap();
        for (r, &s) in sector.states().iter().enumerate() {
            prop_assert!((out[r] - full_out.amplitudes()[s as usize]).abs() < 1e-14);
        }
    }
}
