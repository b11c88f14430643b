//! Two-site reduced density matrix and its concurrence.
//!
//! In the standard basis `{↑↑, ↑↓, ↓↑, ↓↓}` (spin up = occupied fermion) the
//! pair matrix of the XX chain is X-shaped:
//!
//! ```text
//!     | X⁺  0   0   0  |
//! ρ = | 0   Y⁺  Z   0  |
//!     | 0   Z   Y⁻  0  |
//!     | 0   0   0   X⁻ |
//! ```
//!
//! with `X⁺ = <n_i n_j>`, `Y⁺ = <n_i (1 − n_j)>`, `Y⁻ = <(1 − n_i) n_j>`,
//! `X⁻ = <(1 − n_i)(1 − n_j)>` and `Z` the Jordan-Wigner string correlator.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::spectrum::CorrelatorTable;
use crate::wick::{self, Contractions};

/// Tolerance on element invariants (trace, symmetry of the two `Y`s).
pub const ELEMENT_TOLERANCE: f64 = 1e-8;
/// Negative values above this are rounding noise and clamp to zero.
pub const CLAMP_TOLERANCE: f64 = 1e-10;

/// The five independent entries of the pair density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairElements {
    pub distance: usize,
    pub x_plus: f64,
    pub x_minus: f64,
    pub y_plus: f64,
    pub y_minus: f64,
    pub z: f64,
}

impl PairElements {
    /// Entries for sites `i < j` from arbitrary two-point contractions
    /// (translation invariance is not assumed).
    pub fn from_contractions<C: Contractions + ?Sized>(ctx: &C, i: usize, j: usize) -> Self {
        assert!(i < j, "pair needs i < j (got {i}, {j})");
        let (n_i, n_j) = (ctx.particle(i, i), ctx.particle(j, j));
        let (e_i, e_j) = (ctx.hole(i, i), ctx.hole(j, j));
        let exchange = ctx.particle(i, j) * ctx.particle(j, i);
        Self {
            distance: j - i,
            x_plus: n_i * n_j - exchange,
            x_minus: e_i * e_j - exchange,
            y_plus: n_i * e_j + exchange,
            y_minus: e_i * n_j + exchange,
            z: wick::string_correlator(i, j, ctx),
        }
    }

    pub fn trace(&self) -> f64 {
        self.x_plus + self.y_plus + self.y_minus + self.x_minus
    }

    /// Checks trace and non-negativity of the diagonal.
    pub fn validate(&self) -> Result<()> {
        let trace = self.trace();
        if (trace - 1.0).abs() > ELEMENT_TOLERANCE {
            return Err(Error::Invariant(format!("trace {trace} != 1")));
        }
        for (name, v) in self.diagonal_named() {
            if v < -CLAMP_TOLERANCE {
                return Err(Error::Invariant(format!("diagonal entry {name} = {v} < 0")));
            }
        }
        Ok(())
    }

    fn diagonal_named(&self) -> [(&'static str, f64); 4] {
        [
            ("X+", self.x_plus),
            ("Y+", self.y_plus),
            ("Y-", self.y_minus),
            ("X-", self.x_minus),
        ]
    }

    /// `2(|Z| − √(X⁺X⁻))`, the signed quantity whose positive part is the
    /// concurrence.
    pub fn witness(&self) -> f64 {
        2.0 * (self.z.abs() - (self.x_plus * self.x_minus).max(0.0).sqrt())
    }
}

/// The explicit Wick polynomials for `Z_{i,i+m}`, `m = 1..=4`.
pub fn z_polynomial(m: usize, f: &[f64]) -> Option<f64> {
    let get = |n: usize| f.get(n).copied();
    match m {
        1 => get(1),
        2 => {
            let (f0, f1, f2) = (get(0)?, get(1)?, get(2)?);
            Some(f2 - 2.0 * f0 * f2 + 2.0 * f1 * f1)
        }
        3 => {
            let (f0, f1, f2, f3) = (get(0)?, get(1)?, get(2)?, get(3)?);
            Some(
                4.0 * (f1.powi(3) - 2.0 * f0 * f1 * f2 + f2 * f2 * f1 + f0 * f0 * f3
                    - f1 * f1 * f3
                    + f1 * f2
                    - f0 * f3)
                    + f3,
            )
        }
        4 => {
            let (f0, f1, f2, f3, f4) = (get(0)?, get(1)?, get(2)?, get(3)?, get(4)?);
            let quartic = f1.powi(4) - 3.0 * f0 * f1 * f1 * f2
                + 2.0 * f1 * f1 * f2 * f2
                + 2.0 * f0 * f0 * f1 * f3
                + f0 * f0 * f2 * f2
                - f2.powi(4)
                - 2.0 * f0 * f1 * f2 * f3
                + 2.0 * f1 * f2 * f2 * f3
                - 2.0 * f1.powi(3) * f3
                + f1 * f1 * f3 * f3
                - f0 * f2 * f3 * f3
                - f0.powi(3) * f4
                + 2.0 * f0 * f1 * f1 * f4
                - 2.0 * f1 * f1 * f2 * f4
                + f0 * f2 * f2 * f4;
            let cubic = 3.0 * f1 * f1 * f2 - 2.0 * f0 * f2 * f2 - 4.0 * f0 * f1 * f3
                + 2.0 * f1 * f2 * f3
                + 3.0 * f0 * f0 * f4
                - 2.0 * f1 * f1 * f4
                + f2 * f3 * f3
                - f2 * f2 * f4;
            let quadratic = 2.0 * f1 * f3 - 3.0 * f0 * f4 + f2 * f2;
            Some(8.0 * quartic + 4.0 * cubic + 2.0 * quadratic + f4)
        }
        _ => None,
    }
}

fn check_distance(m: usize, table: &CorrelatorTable) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroDistance);
    }
    if m > table.n_max() {
        return Err(Error::TableTooShort {
            need: m,
            have: table.n_max(),
        });
    }
    Ok(())
}

/// `Z_{i,i+m}` for any `m >= 1` by a full Wick contraction of the string.
pub fn z_general(m: usize, table: &CorrelatorTable) -> Result<f64> {
    check_distance(m, table)?;
    Ok(wick::string_correlator(0, m, table))
}

/// Pair entries at distance `m` in the infinite chain.
///
/// `m = 1..=4` use the explicit polynomials; larger `m` go through
/// [`z_general`].
pub fn density_matrix_elements(m: usize, table: &CorrelatorTable) -> Result<PairElements> {
    check_distance(m, table)?;
    let mut elements = PairElements::from_contractions(table, 0, m);
    if let Some(z) = z_polynomial(m, table.values()) {
        elements.z = z;
    }
    Ok(elements)
}

/// Real symmetric, unit-trace, positive semidefinite 4×4 matrix in the basis
/// `{↑↑, ↑↓, ↓↑, ↓↓}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDensityMatrix(Matrix4<f64>);

impl PairDensityMatrix {
    pub fn new(matrix: Matrix4<f64>) -> Result<Self> {
        let asym = (matrix - matrix.transpose()).abs().max();
        if asym > CLAMP_TOLERANCE {
            return Err(Error::Invariant(format!(
                "matrix not symmetric (|ρ − ρᵀ| = {asym:e})"
            )));
        }
        let trace = matrix.trace();
        if (trace - 1.0).abs() > CLAMP_TOLERANCE {
            return Err(Error::Invariant(format!("trace {trace} != 1")));
        }
        let min = SymmetricEigen::new(matrix).eigenvalues.min();
        if min < -CLAMP_TOLERANCE {
            return Err(Error::Invariant(format!("eigenvalue {min:e} < 0")));
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    /// True when only the diagonal and the `↑↓/↓↑` coherence are nonzero.
    pub fn is_x_shaped(&self, tol: f64) -> bool {
        (0..4).all(|r| {
            (0..4).all(|c| {
                r == c || (r, c) == (1, 2) || (r, c) == (2, 1) || self.0[(r, c)].abs() <= tol
            })
        })
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.0)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    /// `Tr(ρ σ^a ⊗ σ^b) / 4` for `a = b ∈ {x, y, z}`.
    pub fn spin_correlators(&self) -> [f64; 3] {
        let r = &self.0;
        let xx = (r[(0, 3)] + r[(1, 2)] + r[(2, 1)] + r[(3, 0)]) / 4.0;
        let yy = (-r[(0, 3)] + r[(1, 2)] + r[(2, 1)] - r[(3, 0)]) / 4.0;
        let zz = (r[(0, 0)] - r[(1, 1)] - r[(2, 2)] + r[(3, 3)]) / 4.0;
        [xx, yy, zz]
    }

    /// `(<S^z_i>, <S^z_j>)`
    pub fn magnetizations(&self) -> (f64, f64) {
        let r = &self.0;
        let up_i = r[(0, 0)] + r[(1, 1)];
        let up_j = r[(0, 0)] + r[(2, 2)];
        (up_i - 0.5, up_j - 0.5)
    }
}

fn clamp_nonnegative(name: &str, v: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else if v > -CLAMP_TOLERANCE {
        Ok(0.0)
    } else {
        Err(Error::Invariant(format!("{name} = {v:e} is negative")))
    }
}

/// Builds the X-shaped matrix from its five entries.
pub fn assemble_rho(elements: &PairElements) -> Result<PairDensityMatrix> {
    elements.validate()?;
    let x_plus = clamp_nonnegative("X+", elements.x_plus)?;
    let y_plus = clamp_nonnegative("Y+", elements.y_plus)?;
    let y_minus = clamp_nonnegative("Y-", elements.y_minus)?;
    let x_minus = clamp_nonnegative("X-", elements.x_minus)?;
    let z = elements.z;

    let mean = 0.5 * (y_plus + y_minus);
    let spread = (0.25 * (y_plus - y_minus).powi(2) + z * z).sqrt();
    if mean - spread < -ELEMENT_TOLERANCE {
        return Err(Error::Invariant(format!(
            "coherence |Z| = {} exceeds √(Y⁺Y⁻) = {}",
            z.abs(),
            (y_plus * y_minus).sqrt()
        )));
    }

    #[rustfmt::skip]
    let m = Matrix4::new(
        x_plus, 0.0,    0.0,     0.0,
        0.0,    y_plus, z,       0.0,
        0.0,    z,      y_minus, 0.0,
        0.0,    0.0,    0.0,     x_minus,
    );
    // the stored entries carry rounding at the 1e-16 level; renormalize
    // rather than fail the stricter matrix-level trace check
    Ok(PairDensityMatrix(m / m.trace()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    pub value: f64,
    /// `λ_1 ≥ λ_2 ≥ λ_3 ≥ λ_4 ≥ 0`
    pub lambdas: [f64; 4],
    /// Signed argument of the `max(0, ·)`.
    pub witness: f64,
}

fn sorted_descending(mut v: [f64; 4]) -> [f64; 4] {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Concurrence of an X-shaped pair state, `max{0, 2(|Z| − √(X⁺X⁻))}`.
pub fn concurrence_closed(elements: &PairElements) -> Result<ConcurrenceResult> {
    let radicand = elements.x_plus * elements.x_minus;
    if radicand < -1e-12 {
        return Err(Error::Invariant(format!("X⁺X⁻ = {radicand:e} is negative")));
    }
    let outer = radicand.max(0.0).sqrt();
    let inner = (elements.y_plus * elements.y_minus).max(0.0).sqrt();
    let z = elements.z.abs();
    let witness = 2.0 * (z - outer);
    Ok(ConcurrenceResult {
        value: witness.max(0.0),
        lambdas: sorted_descending([outer, outer, z + inner, (z - inner).abs()]),
        witness,
    })
}

/// `σ^y ⊗ σ^y`, real in the standard basis.
fn spin_flip() -> Matrix4<f64> {
    #[rustfmt::skip]
    let flip = Matrix4::new(
        0.0,  0.0, 0.0, -1.0,
        0.0,  0.0, 1.0,  0.0,
        0.0,  1.0, 0.0,  0.0,
        -1.0, 0.0, 0.0,  0.0,
    );
    flip
}

/// Wootters concurrence of a general real two-qubit state.
///
/// The `λ_i` are square roots of the eigenvalues of `ρ ρ̃`. For real `ρ` they
/// equal the moduli of the eigenvalues of the symmetric matrix
/// `A = √ρ (σ^y⊗σ^y) √ρ`, since `A² = √ρ ρ̃ √ρ` is similar to `ρ ρ̃`. Working
/// with `A` avoids taking square roots of near-zero eigenvalues.
pub fn concurrence_wootters(rho: &PairDensityMatrix) -> Result<ConcurrenceResult> {
    let eig = SymmetricEigen::new(rho.0);
    let mut sqrt_vals = eig.eigenvalues;
    for v in sqrt_vals.iter_mut() {
        *v = clamp_nonnegative("eigenvalue of ρ", *v)?.sqrt();
    }
    let vecs = &eig.eigenvectors;
    let sqrt_rho = vecs * Matrix4::from_diagonal(&sqrt_vals) * vecs.transpose();

    let a = sqrt_rho * spin_flip() * sqrt_rho;
    let a = 0.5 * (a + a.transpose());

    let mut lambdas = [0.0; 4];
    for (slot, mu) in lambdas
        .iter_mut()
        .zip(SymmetricEigen::new(a).eigenvalues.iter())
    {
        *slot = mu.abs();
    }
    let lambdas = sorted_descending(lambdas);
    let witness = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(ConcurrenceResult {
        value: witness.max(0.0),
        lambdas,
        witness,
    })
}
