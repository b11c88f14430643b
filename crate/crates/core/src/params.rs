use crate::error::{Error, Result};

/// Control parameters of the chain: exchange coupling `J`, field `h` and
/// temperature `T` (energy units, `k_B = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    coupling: f64,
    field: f64,
    temperature: f64,
}

impl ChainParams {
    pub fn new(coupling: f64, field: f64, temperature: f64) -> Result<Self> {
        if !coupling.is_finite() || coupling <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "coupling J",
                value: coupling,
                reason: "must be finite and > 0",
            });
        }
        if !field.is_finite() || field < 0.0 {
            return Err(Error::InvalidParameter {
                name: "field h",
                value: field,
                reason: "must be finite and >= 0",
            });
        }
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(Error::InvalidParameter {
                name: "temperature T",
                value: temperature,
                reason: "must be finite and >= 0",
            });
        }
        Ok(Self {
            coupling,
            field,
            temperature,
        })
    }

    /// `J = 1` with the given field and temperature.
    pub fn unit(field: f64, temperature: f64) -> Result<Self> {
        Self::new(1.0, field, temperature)
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Inverse temperature; infinite at `T = 0`.
    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    /// Saturation field `h_c = J` of the isotropic chain.
    pub fn critical_field(&self) -> f64 {
        self.coupling
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.temperature == 0.0
    }

    pub fn with_field(&self, field: f64) -> Result<Self> {
        Self::new(self.coupling, field, self.temperature)
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.coupling, self.field, temperature)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unphysical_values() {
        assert!(ChainParams::new(0.0, 0.0, 0.0).is_err());
        assert!(ChainParams::new(-1.0, 0.0, 0.0).is_err());
        assert!(ChainParams::new(1.0, -0.1, 0.0).is_err());
        assert!(ChainParams::new(1.0, 0.0, -1e-3).is_err());
        assert!(ChainParams::new(1.0, f64::NAN, 0.0).is_err());
        assert!(ChainParams::new(f64::INFINITY, 0.0, 0.0).is_err());
    }

    #[test]
    fn critical_field_tracks_coupling() {
        let p = ChainParams::new(2.5, 0.3, 0.1).unwrap();
        assert_eq!(p.critical_field(), 2.5);
        assert_eq!(p.beta(), 10.0);
        assert!(ChainParams::unit(0.0, 0.0).unwrap().is_zero_temperature());
    }
}
