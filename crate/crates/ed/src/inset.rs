//! Zero-temperature concurrence against field for finite chains, and its
//! distance from the infinite-chain curve.

use xychain_core::criticality::concurrence as bulk_concurrence;
use xychain_core::{concurrence_closed, ChainParams};

use crate::basis::Boundary;
use crate::error::Result;
use crate::free_fermion::central_pair;
use crate::ground::SectorLadder;
use crate::reduced::pair_elements;

#[derive(Debug, Clone)]
pub struct InsetCurve {
    pub sites: usize,
    pub boundary: Boundary,
    pub distance: usize,
    pub pair: (usize, usize),
    pub fields: Vec<f64>,
    pub concurrence: Vec<f64>,
    /// Ground state degenerate at this field; left out of comparisons.
    pub excluded: Vec<bool>,
    pub crossings: Vec<f64>,
}

/// Sites used for distance `m`: `(0, m)` on a ring, the central pair otherwise.
pub fn inset_pair(sites: usize, boundary: Boundary, m: usize) -> Option<(usize, usize)> {
    match boundary {
        Boundary::Periodic => (m >= 1 && m < sites).then_some((0, m)),
        Boundary::Open => central_pair(sites, m),
    }
}

pub fn inset_curve(ladder: &SectorLadder, m: usize, fields: &[f64]) -> Result<InsetCurve> {
    let sites = ladder.sites();
    let pair = inset_pair(sites, ladder.boundary(), m).ok_or(crate::EdError::InvalidPair {
        i: 0,
        j: m,
        sites,
    })?;
    let mut concurrence = Vec::with_capacity(fields.len());
    let mut excluded = Vec::with_capacity(fields.len());
    for &h in fields {
        let g = ladder.ground_at(h);
        let e = pair_elements(&g, pair.0, pair.1)?;
        concurrence.push(concurrence_closed(&e)?.value);
        excluded.push(g.degenerate);
    }
    Ok(InsetCurve {
        sites,
        boundary: ladder.boundary(),
        distance: m,
        pair,
        fields: fields.to_vec(),
        concurrence,
        excluded,
        crossings: ladder.crossing_fields(),
    })
}

pub fn bulk_curve(m: usize, fields: &[f64], coupling: f64) -> Result<Vec<f64>> {
    fields
        .iter()
        .map(|&h| {
            let p = ChainParams::new(coupling, h, 0.0)?;
            Ok(bulk_concurrence(m, &p)?.value)
        })
        .collect()
}

impl InsetCurve {
    /// Root-mean-square gap to `reference` over fields kept by both `self` and `mask`.
    pub fn rms_distance(&self, reference: &[f64], mask: &[bool]) -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for k in 0..self.fields.len() {
            if self.excluded[k] || mask[k] {
                continue;
            }
            sum += (self.concurrence[k] - reference[k]).powi(2);
            count += 1;
        }
        (sum / count.max(1) as f64).sqrt()
    }

    /// Fields with non-zero concurrence.
    pub fn entangled_fields(&self) -> Vec<f64> {
        self.fields
            .iter()
            .zip(&self.concurrence)
            .filter(|(_, &c)| c > 0.0)
            .map(|(&h, _)| h)
            .collect()
    }

    /// Number of distinct non-zero plateaus along the field grid.
    pub fn plateaus(&self) -> usize {
        let mut count = 0;
        let mut last = 0.0;
        for &c in &self.concurrence {
            if c > 0.0 && (c - last).abs() > 1e-12 {
                count += 1;
            }
            last = c;
        }
        count
    }
}
