//! Free-fermion description of the chain.
//!
//! After the Jordan-Wigner mapping the chain is a band of spinless fermions
//! with dispersion `ε(k) = J cos k − h`. Everything the entanglement formulas
//! need is the real-space two-point function
//!
//! ```text
//! f_n = <a_i† a_{i+n}> = (1/2π) ∫ e^{-ikn} f(k) dk = (1/π) ∫_0^π cos(nk) f(k) dk
//! ```
//!
//! For `h >= 0` the band is at least half filled, so the finite-temperature
//! branch integrates the *hole* distribution `1 − f(k)` and recovers
//! `f_0 = 1 − q_0`, `f_n = −q_n`. Near saturation the holes are exponentially
//! rare and this keeps `1 − f_0` and the `f_n` accurate in a relative sense,
//! which the density-matrix entries `X⁻ = (1 − f_0)² − f_m²` depend on.

use std::f64::consts::PI;

use crate::params::ChainParams;

/// Lower bound on the trapezoid grid.
pub const MIN_QUADRATURE_POINTS: usize = 4096;
/// Grid points per unit of `J / T`; the Fermi edge has width `O(T)`.
pub const POINTS_PER_INVERSE_TEMPERATURE: f64 = 64.0;
/// Hard cap on the grid (reached only for `T < ~1e-6 J`).
pub const MAX_QUADRATURE_POINTS: usize = 1 << 26;

/// Single-fermion energy `J cos k − h`.
pub fn dispersion(k: f64, params: &ChainParams) -> f64 {
    let k = if k.abs() > PI {
        (k + PI).rem_euclid(2.0 * PI) - PI
    } else {
        k
    };
    params.coupling() * k.cos() - params.field()
}

/// Fermi-Dirac occupation of a level at `energy`.
///
/// At `T = 0` this is the step function with value 1/2 exactly at zero energy.
pub fn fermi_dirac(energy: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return if energy < 0.0 {
            1.0
        } else if energy > 0.0 {
            0.0
        } else {
            0.5
        };
    }
    let x = energy / temperature;
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// Occupation `f(k)` of the mode at momentum `k`.
pub fn fermi_occupation(k: f64, params: &ChainParams) -> f64 {
    fermi_dirac(dispersion(k, params), params.temperature())
}

/// Trapezoid grid size for the finite-temperature branch, `None` at `T = 0`.
///
/// Always even so the folded grid lands on `k = π`.
pub fn quadrature_points(params: &ChainParams) -> Option<usize> {
    if params.is_zero_temperature() {
        return None;
    }
    let scaled = (POINTS_PER_INVERSE_TEMPERATURE * params.coupling() / params.temperature()).ceil();
    let points = if scaled >= MAX_QUADRATURE_POINTS as f64 {
        MAX_QUADRATURE_POINTS
    } else {
        (scaled as usize).max(MIN_QUADRATURE_POINTS)
    };
    Some(points + points % 2)
}

/// Fermi wave vector `k_F = arccos(min(h/J, 1))`; modes with `|k| > k_F` are
/// filled at zero temperature.
pub fn fermi_momentum(params: &ChainParams) -> f64 {
    (params.field() / params.coupling()).min(1.0).acos()
}

/// Fourier coefficient `f_n` of the Fermi distribution.
pub fn fourier_coefficient(n: usize, params: &ChainParams) -> f64 {
    match quadrature_points(params) {
        None => zero_temperature_coefficient(n, fermi_momentum(params)),
        Some(points) => fourier_coefficient_with_points(n, params, points),
    }
}

/// Finite-temperature `f_n` on an explicit trapezoid grid of `points` nodes.
pub fn fourier_coefficient_with_points(n: usize, params: &ChainParams, points: usize) -> f64 {
    let points = points.max(2);
    let points = points + points % 2;
    let half = points / 2;
    let dk = 2.0 * PI / points as f64;
    let nf = n as f64;
    let mut acc = 0.0;
    for j in 0..=half {
        let k = j as f64 * dk;
        let weight = if j == 0 || j == half { 1.0 } else { 2.0 };
        let hole = hole_occupation(k.cos(), params);
        acc += weight * hole * (nf * k).cos();
    }
    let q = acc / points as f64;
    if n == 0 {
        1.0 - q
    } else {
        -q
    }
}

fn zero_temperature_coefficient(n: usize, k_fermi: f64) -> f64 {
    if n == 0 {
        1.0 - k_fermi / PI
    } else {
        let nf = n as f64;
        -(nf * k_fermi).sin() / (nf * PI)
    }
}

fn hole_occupation(cos_k: f64, params: &ChainParams) -> f64 {
    let energy = params.coupling() * cos_k - params.field();
    fermi_dirac(-energy, params.temperature())
}

/// Batched `f_0..f_{n_max}` together with the directly integrated hole
/// fraction `1 − f_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorTable {
    params: Option<ChainParams>,
    f: Vec<f64>,
    hole_fraction: f64,
    quadrature_points: Option<usize>,
}

impl CorrelatorTable {
    /// Evaluates `f_0..f_{n_max}` for the given parameters.
    pub fn compute(n_max: usize, params: &ChainParams) -> Self {
        match quadrature_points(params) {
            None => {
                let k_fermi = fermi_momentum(params);
                let f = (0..=n_max)
                    .map(|n| zero_temperature_coefficient(n, k_fermi))
                    .collect();
                Self {
                    params: Some(*params),
                    f,
                    hole_fraction: k_fermi / PI,
                    quadrature_points: None,
                }
            }
            Some(points) => {
                let q = hole_moments(n_max, params, points);
                let mut f: Vec<f64> = q.iter().map(|v| -v).collect();
                f[0] = 1.0 - q[0];
                Self {
                    params: Some(*params),
                    f,
                    hole_fraction: q[0],
                    quadrature_points: Some(points),
                }
            }
        }
    }

    /// Table built from given coefficients, with no physical parameters
    /// attached. Used to exercise the correlator algebra directly.
    pub fn from_values(f: Vec<f64>) -> Self {
        assert!(!f.is_empty(), "a correlator table needs at least f_0");
        let hole_fraction = 1.0 - f[0];
        Self {
            params: None,
            f,
            hole_fraction,
            quadrature_points: None,
        }
    }

    pub fn params(&self) -> Option<&ChainParams> {
        self.params.as_ref()
    }

    pub fn n_max(&self) -> usize {
        self.f.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.f
    }

    /// `f_n`; panics if `n > n_max`.
    pub fn f(&self, n: usize) -> f64 {
        self.f[n]
    }

    /// `1 − f_0`, integrated directly rather than by subtraction.
    pub fn hole_fraction(&self) -> f64 {
        self.hole_fraction
    }

    pub fn quadrature_points(&self) -> Option<usize> {
        self.quadrature_points
    }

    /// `<a_i† a_{i+n}>` for any integer separation.
    pub fn particle(&self, separation: i64) -> f64 {
        self.f[separation.unsigned_abs() as usize]
    }

    /// `<a_i a_{i+n}†> = δ_{n,0} − f_n`.
    pub fn hole(&self, separation: i64) -> f64 {
        if separation == 0 {
            self.hole_fraction
        } else {
            -self.particle(separation)
        }
    }

    /// Pairing contractions `<a_i a_j>` vanish: the fermionic Hamiltonian
    /// conserves particle number.
    pub fn anomalous(&self, _separation: i64) -> f64 {
        0.0
    }
}

/// `q_n = (1/M) Σ_j cos(n k_j) (1 − f(k_j))` on the uniform periodic grid,
/// folded onto `[0, π]` by evenness. `cos(nk)` by the Chebyshev recurrence.
fn hole_moments(n_max: usize, params: &ChainParams, points: usize) -> Vec<f64> {
    let half = points / 2;
    let dk = 2.0 * PI / points as f64;
    let mut acc = vec![0.0; n_max + 1];
    let mut cos_nk = vec![0.0; n_max + 1];
    for j in 0..=half {
        let k = j as f64 * dk;
        let weight = if j == 0 || j == half { 1.0 } else { 2.0 };
        let c1 = k.cos();
        let wh = weight * hole_occupation(c1, params);
        cos_nk[0] = 1.0;
        if n_max >= 1 {
            cos_nk[1] = c1;
        }
        for n in 2..=n_max {
            cos_nk[n] = 2.0 * c1 * cos_nk[n - 1] - cos_nk[n - 2];
        }
        for (a, c) in acc.iter_mut().zip(&cos_nk) {
            *a += wh * c;
        }
    }
    let scale = 1.0 / points as f64;
    acc.iter_mut().for_each(|a| *a *= scale);
    acc
}
