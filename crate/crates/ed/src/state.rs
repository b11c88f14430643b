use std::io::{Read, Write};
use std::sync::Arc;

use crate::basis::{Boundary, SpinBasis};
use crate::error::{EdError, Result};

pub const NORM_TOLERANCE: f64 = 1e-10;

const MAGIC: &[u8; 4] = b"XXST";
const FORMAT_VERSION: u32 = 1;

/// Real amplitudes over a basis, with the energy they were computed at.
#[derive(Debug, Clone)]
pub struct SpinState {
    basis: Arc<SpinBasis>,
    boundary: Boundary,
    amplitudes: Vec<f64>,
    energy: f64,
}

impl SpinState {
    /// Rejects vectors whose norm is off by more than `NORM_TOLERANCE`.
    pub fn new(
        basis: Arc<SpinBasis>,
        boundary: Boundary,
        amplitudes: Vec<f64>,
        energy: f64,
    ) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(EdError::DimensionMismatch {
                expected: basis.dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(EdError::Format(format!("state norm {norm} is not 1")));
        }
        Ok(Self::from_parts(basis, boundary, amplitudes, energy))
    }

    pub(crate) fn from_parts(
        basis: Arc<SpinBasis>,
        boundary: Boundary,
        amplitudes: Vec<f64>,
        energy: f64,
    ) -> Self {
        Self {
            basis,
            boundary,
            amplitudes,
            energy,
        }
    }

    pub fn sites(&self) -> usize {
        self.basis.sites()
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn basis(&self) -> &SpinBasis {
        &self.basis
    }

    pub(crate) fn basis_arc(&self) -> &Arc<SpinBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// `<Sᶻ_total>`; exact for a sector state.
    pub fn magnetization(&self) -> f64 {
        let half = 0.5 * self.sites() as f64;
        self.basis
            .states()
            .iter()
            .zip(&self.amplitudes)
            .map(|(s, a)| a * a * (s.count_ones() as f64 - half))
            .sum()
    }

    /// Binary dump; see the README for the layout.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(self.sites() as u32).to_le_bytes())?;
        let sector = self.basis.n_up().map_or(-1i32, |n| n as i32);
        w.write_all(&sector.to_le_bytes())?;
        let bc: u32 = match self.boundary {
            Boundary::Open => 0,
            Boundary::Periodic => 1,
        };
        w.write_all(&bc.to_le_bytes())?;
        w.write_all(&self.energy.to_le_bytes())?;
        w.write_all(&(self.amplitudes.len() as u64).to_le_bytes())?;
        for a in &self.amplitudes {
            w.write_all(&a.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(EdError::Format("bad magic".into()));
        }
        let version = u32::from_le_bytes(read_array(&mut r)?);
        if version != FORMAT_VERSION {
            return Err(EdError::Format(format!("unsupported version {version}")));
        }
        let sites = u32::from_le_bytes(read_array(&mut r)?) as usize;
        let sector = i32::from_le_bytes(read_array(&mut r)?);
        let boundary = match u32::from_le_bytes(read_array(&mut r)?) {
            0 => Boundary::Open,
            1 => Boundary::Periodic,
            other => return Err(EdError::Format(format!("boundary code {other}"))),
        };
        let energy = f64::from_le_bytes(read_array(&mut r)?);
        let dim = u64::from_le_bytes(read_array(&mut r)?) as usize;
        let basis = match sector {
            -1 => SpinBasis::full(sites)?,
            n if n >= 0 => SpinBasis::sector(sites, n as usize)?,
            n => return Err(EdError::Format(format!("sector code {n}"))),
        };
        if basis.dim() != dim {
            return Err(EdError::DimensionMismatch {
                expected: basis.dim(),
                got: dim,
            });
        }
        let mut amplitudes = Vec::with_capacity(dim);
        for _ in 0..dim {
            amplitudes.push(f64::from_le_bytes(read_array(&mut r)?));
        }
        Self::new(Arc::new(basis), boundary, amplitudes, energy)
    }
}

fn read_array<R: Read, const N: usize>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trip() {
        let basis = Arc::new(SpinBasis::sector(4, 2).unwrap());
        let amps: Vec<f64> = (1..=6).map(|i| i as f64 / 91f64.sqrt()).collect();
        let s = SpinState::new(basis, Boundary::Periodic, amps, -1.25).unwrap();
        let mut bytes = Vec::new();
        s.write_to(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 4 + 4 * 4 + 8 + 8 + 6 * 8);
        let back = SpinState::read_from(bytes.as_slice()).unwrap();
        assert_eq!(back.amplitudes(), s.amplitudes());
        assert_eq!(back.energy(), -1.25);
        assert_eq!(back.boundary(), Boundary::Periodic);
        assert_eq!(back.basis().n_up(), Some(2));

        bytes[0] = b'Y';
        assert!(matches!(
            SpinState::read_from(bytes.as_slice()),
            Err(EdError::Format(_))
        ));
    }

    #[test]
    fn normalization_is_enforced() {
        let basis = Arc::new(SpinBasis::sector(3, 1).unwrap());
        assert!(SpinState::new(basis.clone(), Boundary::Open, vec![1.0, 1.0, 0.0], 0.0).is_err());
        assert!(SpinState::new(basis, Boundary::Open, vec![1.0, 0.0], 0.0).is_err());
    }
}
