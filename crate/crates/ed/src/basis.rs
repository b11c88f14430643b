//! Bit-pattern bases. Bit `l` set means site `l` is up.

use crate::error::{EdError, Result};

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

impl Boundary {
    pub fn label(self) -> &'static str {
        match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        }
    }

    /// Nearest-neighbour bonds. A periodic pair of sites has a single bond.
    pub fn bonds(self, sites: usize) -> Vec<(usize, usize)> {
        let mut bonds: Vec<_> = (0..sites.saturating_sub(1)).map(|l| (l, l + 1)).collect();
        if self == Boundary::Periodic && sites > 2 {
            bonds.push((sites - 1, 0));
        }
        bonds
    }
}

impl std::str::FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(format!(
                "unknown boundary condition '{other}' (open|periodic)"
            )),
        }
    }
}

pub fn check_sites(sites: usize, max: usize) -> Result<()> {
    if (MIN_SITES..=max).contains(&sites) {
        Ok(())
    } else {
        Err(EdError::SiteCount {
            sites,
            min: MIN_SITES,
            max,
        })
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Fixed-magnetization sector or the full `2^N` space, in ascending bit order.
///
/// Sector lookup uses Lin's two-table scheme: the low and high halves of a
/// pattern are ranked separately and the index is the sum.
#[derive(Debug, Clone)]
pub struct SpinBasis {
    sites: usize,
    n_up: Option<usize>,
    states: Vec<u32>,
    low_bits: usize,
    low_rank: Vec<u32>,
    high_offset: Vec<u32>,
}

impl SpinBasis {
    pub fn sector(sites: usize, n_up: usize) -> Result<Self> {
        check_sites(sites, MAX_SITES)?;
        if n_up > sites {
            return Err(EdError::Sector { sites, n_up });
        }
        let states = combinations(sites, n_up);
        debug_assert_eq!(states.len(), binomial(sites, n_up));

        let low_bits = sites / 2;
        let mut counters = vec![0u32; low_bits + 1];
        let low_rank = (0..1u32 << low_bits)
            .map(|l| {
                let c = &mut counters[l.count_ones() as usize];
                *c += 1;
                *c - 1
            })
            .collect();
        let mut high_offset = vec![u32::MAX; 1 << (sites - low_bits)];
        for (idx, &s) in states.iter().enumerate() {
            let h = (s >> low_bits) as usize;
            if high_offset[h] == u32::MAX {
                high_offset[h] = idx as u32;
            }
        }
        Ok(Self {
            sites,
            n_up: Some(n_up),
            states,
            low_bits,
            low_rank,
            high_offset,
        })
    }

    pub fn full(sites: usize) -> Result<Self> {
        check_sites(sites, MAX_SITES)?;
        Ok(Self {
            sites,
            n_up: None,
            states: (0..1u32 << sites).collect(),
            low_bits: 0,
            low_rank: Vec::new(),
            high_offset: Vec::new(),
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// `None` for the full space.
    pub fn n_up(&self) -> Option<usize> {
        self.n_up
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn state(&self, index: usize) -> u32 {
        self.states[index]
    }

    pub fn index_of(&self, state: u32) -> Option<usize> {
        if state >> self.sites != 0 {
            return None;
        }
        let Some(n_up) = self.n_up else {
            return Some(state as usize);
        };
        if state.count_ones() as usize != n_up {
            return None;
        }
        let low = state & ((1u32 << self.low_bits) - 1);
        let high = (state >> self.low_bits) as usize;
        let offset = self.high_offset[high];
        debug_assert_ne!(offset, u32::MAX);
        Some((offset + self.low_rank[low as usize]) as usize)
    }
}

/// All `sites`-bit patterns with `k` bits set, ascending (Gosper's hack).
fn combinations(sites: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(binomial(sites, k));
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit = 1u64 << sites;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        out.push(s as u32);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_dimensions_are_binomial() {
        for sites in 2..=14 {
            let mut total = 0;
            for n_up in 0..=sites {
                let b = SpinBasis::sector(sites, n_up).unwrap();
                assert_eq!(b.dim(), binomial(sites, n_up));
                total += b.dim();
            }
            assert_eq!(total, 1 << sites);
        }
        assert_eq!(binomial(24, 12), 2_704_156);
    }

    #[test]
    fn lookup_inverts_enumeration() {
        for (sites, n_up) in [(2, 1), (7, 3), (12, 6), (13, 9), (16, 0), (16, 16)] {
            let b = SpinBasis::sector(sites, n_up).unwrap();
            for (i, &s) in b.states().iter().enumerate() {
                assert_eq!(b.index_of(s), Some(i));
                assert_eq!(s.count_ones() as usize, n_up);
            }
            assert!(b.states().windows(2).all(|w| w[0] < w[1]));
        }
        let b = SpinBasis::sector(6, 3).unwrap();
        assert_eq!(b.index_of(0b1111), None);
        assert_eq!(b.index_of(0b1000000 | 0b11), None);
    }

    #[test]
    fn full_space_is_the_identity_map() {
        let b = SpinBasis::full(5).unwrap();
        assert_eq!(b.dim(), 32);
        assert_eq!(b.index_of(19), Some(19));
        assert_eq!(b.n_up(), None);
    }

    #[test]
    fn site_and_sector_limits() {
        assert!(matches!(
            SpinBasis::sector(25, 3),
            Err(EdError::SiteCount { sites: 25, .. })
        ));
        assert!(SpinBasis::sector(1, 0).is_err());
        assert!(matches!(
            SpinBasis::sector(4, 5),
            Err(EdError::Sector { .. })
        ));
    }

    #[test]
    fn bonds() {
        assert_eq!(Boundary::Open.bonds(3), vec![(0, 1), (1, 2)]);
        assert_eq!(Boundary::Periodic.bonds(3), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(Boundary::Periodic.bonds(2), vec![(0, 1)]);
        assert_eq!("periodic".parse::<Boundary>(), Ok(Boundary::Periodic));
        assert!("ring".parse::<Boundary>().is_err());
    }
}
