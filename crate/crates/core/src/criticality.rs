//! Where pair entanglement switches on and off in the `(h, T)` plane.
//!
//! All root finding works on the signed witness `W = 2(|Z| − √(X⁺X⁻))`
//! rather than on `C = max(0, W)`, which is flat at zero outside the
//! entangled region. A point counts as entangled when `W > 1e-12`.
//!
//! Scan resolution is fixed: fields step by `1e-3 J` when looking for the
//! zero-temperature onset and temperatures use 400 log-spaced points on
//! `[1e-4 J, 4 J]`. Entangled slivers narrower than one scan cell are missed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pair::{concurrence_closed, density_matrix_elements, ConcurrenceResult, PairElements};
use crate::params::ChainParams;
use crate::spectrum::CorrelatorTable;

pub const ENTANGLED_THRESHOLD: f64 = 1e-12;
/// Onset scan step in units of `J`.
pub const ONSET_FIELD_STEP: f64 = 1e-3;
pub const TEMPERATURE_SCAN_POINTS: usize = 400;
/// Lower end of the temperature scan in units of `J`.
pub const TEMPERATURE_SCAN_MIN: f64 = 1e-4;
/// Upper end of the temperature scan in units of `J`.
pub const TEMPERATURE_SCAN_MAX: f64 = 4.0;
/// Largest field reached by the `T_c` maximization, in units of `J`.
pub const TC_MAX_FIELD_LIMIT: f64 = 1.2;
/// Largest field accepted by [`phase_boundary`], in units of `J`.
pub const PHASE_BOUNDARY_FIELD_LIMIT: f64 = 1.3;

const TC_MAX_COARSE_STEP: f64 = 0.01;
const TC_MAX_FIELD_TOLERANCE: f64 = 1e-5;

/// Pair entries at distance `m` for one parameter point.
pub fn pair_state(m: usize, params: &ChainParams) -> Result<PairElements> {
    density_matrix_elements(m, &CorrelatorTable::compute(m, params))
}

pub fn witness(m: usize, params: &ChainParams) -> Result<f64> {
    Ok(pair_state(m, params)?.witness())
}

pub fn concurrence(m: usize, params: &ChainParams) -> Result<ConcurrenceResult> {
    concurrence_closed(&pair_state(m, params)?)
}

pub fn is_entangled(witness: f64) -> bool {
    witness > ENTANGLED_THRESHOLD
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    /// Zero-temperature field where the pair becomes entangled.
    EntangledField,
    /// The only critical temperature: entangled below, separable above.
    TcSingle,
    /// Entanglement switches on when heating through this temperature.
    TcLower,
    /// Entanglement switches off when heating through this temperature.
    TcUpper,
}

impl CriticalKind {
    pub fn label(&self) -> &'static str {
        match self {
            CriticalKind::EntangledField => "entangled_field",
            CriticalKind::TcSingle => "tc_single",
            CriticalKind::TcLower => "tc_lower",
            CriticalKind::TcUpper => "tc_upper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub kind: CriticalKind,
    /// Field or temperature, depending on `kind`.
    pub location: f64,
    /// Final bisection bracket; the entangled predicate differs at its ends.
    pub bracket: (f64, f64),
    /// Witness re-evaluated at `location`.
    pub residual_witness: f64,
}

/// Bisects the entangled predicate between `lo` and `hi` down to adjacent
/// floating-point values.
fn refine<F>(mut lo: f64, mut hi: f64, mut entangled: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<bool>,
{
    let at_lo = entangled(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entangled(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn field_grid(upper: f64, step: f64) -> Vec<f64> {
    let steps = (upper / step).round() as usize;
    (0..=steps).map(|k| (k as f64 * step).min(upper)).collect()
}

/// Every field on `[0, h_c]` where the zero-temperature pair switches from
/// separable to entangled.
pub fn entanglement_onsets(m: usize, coupling: f64) -> Result<Vec<CriticalPoint>> {
    let base = ChainParams::new(coupling, 0.0, 0.0)?;
    let upper = base.critical_field();
    let fields = field_grid(upper, ONSET_FIELD_STEP * coupling);
    let witnesses = fields
        .iter()
        .map(|&h| witness(m, &base.with_field(h)?))
        .collect::<Result<Vec<f64>>>()?;

    let w_at = |h: f64| witness(m, &base.with_field(h)?);
    let mut onsets = Vec::new();
    if is_entangled(witnesses[0]) {
        onsets.push(CriticalPoint {
            kind: CriticalKind::EntangledField,
            location: 0.0,
            bracket: (0.0, 0.0),
            residual_witness: witnesses[0],
        });
    }
    for k in 1..fields.len() {
        if !is_entangled(witnesses[k - 1]) && is_entangled(witnesses[k]) {
            let (lo, hi) = refine(fields[k - 1], fields[k], |h| Ok(is_entangled(w_at(h)?)))?;
            let location = 0.5 * (lo + hi);
            onsets.push(CriticalPoint {
                kind: CriticalKind::EntangledField,
                location,
                bracket: (lo, hi),
                residual_witness: w_at(location)?,
            });
        }
    }
    if onsets.is_empty() {
        return Err(Error::NoOnset {
            distance: m,
            upper,
            points: fields.len(),
            max_witness: witnesses.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        });
    }
    Ok(onsets)
}

/// Critical entangled field `h_c^E(m)`: the smallest zero-temperature field
/// at which the pair at distance `m` is entangled.
pub fn entangled_field(m: usize, coupling: f64) -> Result<CriticalPoint> {
    Ok(entanglement_onsets(m, coupling)?[0])
}

/// The log-spaced temperature scan grid for coupling `J`.
pub fn temperature_grid(coupling: f64) -> Vec<f64> {
    let (lo, hi) = (
        TEMPERATURE_SCAN_MIN * coupling,
        TEMPERATURE_SCAN_MAX * coupling,
    );
    let ratio = (hi / lo).ln();
    let last = (TEMPERATURE_SCAN_POINTS - 1) as f64;
    (0..TEMPERATURE_SCAN_POINTS)
        .map(|i| match i {
            0 => lo,
            i if i == TEMPERATURE_SCAN_POINTS - 1 => hi,
            i => lo * (ratio * i as f64 / last).exp(),
        })
        .collect()
}

/// All temperatures on the scan window where the pair at distance `m`
/// changes between entangled and separable, in increasing order.
pub fn critical_temperatures(m: usize, field: f64, coupling: f64) -> Result<Vec<CriticalPoint>> {
    let base = ChainParams::new(coupling, field, 0.0)?;
    let temps = temperature_grid(coupling);
    let w_at = |t: f64| witness(m, &base.with_temperature(t)?);
    let entangled = temps
        .par_iter()
        .map(|&t| Ok(is_entangled(w_at(t)?)))
        .collect::<Result<Vec<bool>>>()?;

    let mut roots = Vec::new();
    for k in 1..temps.len() {
        if entangled[k - 1] == entangled[k] {
            continue;
        }
        let (lo, hi) = refine(temps[k - 1], temps[k], |t| Ok(is_entangled(w_at(t)?)))?;
        let location = 0.5 * (lo + hi);
        let kind = if entangled[k] {
            CriticalKind::TcLower
        } else {
            CriticalKind::TcUpper
        };
        roots.push(CriticalPoint {
            kind,
            location,
            bracket: (lo, hi),
            residual_witness: w_at(location)?,
        });
    }
    if roots.len() == 1 && roots[0].kind == CriticalKind::TcUpper {
        roots[0].kind = CriticalKind::TcSingle;
    }
    Ok(roots)
}

/// Maximum of the single-valued critical temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TcPeak {
    pub field: f64,
    pub temperature: f64,
    /// Field interval on which exactly one critical temperature exists.
    pub single_branch: (f64, f64),
}

fn single_tc(m: usize, field: f64, coupling: f64) -> Result<Option<f64>> {
    let roots = critical_temperatures(m, field, coupling)?;
    Ok(match roots.as_slice() {
        [only] if only.kind == CriticalKind::TcSingle => Some(only.location),
        _ => None,
    })
}

/// Locates the maximum of `T_c(h)` over the fields between `h_c^E` and
/// `1.2 J` where the pair has a single critical temperature.
///
/// Above that interval a second, lower critical temperature appears and
/// `T_c` is no longer single-valued.
pub fn tc_max(m: usize, coupling: f64) -> Result<TcPeak> {
    let onset = entangled_field(m, coupling)?.location;
    let upper = TC_MAX_FIELD_LIMIT * coupling;
    let step = TC_MAX_COARSE_STEP * coupling;

    let mut fields = vec![onset];
    let mut h = (onset / step).floor() * step + step;
    while h < upper {
        fields.push(h);
        h += step;
    }
    fields.push(upper);

    let coarse = fields
        .iter()
        .map(|&h| single_tc(m, h, coupling))
        .collect::<Result<Vec<Option<f64>>>>()?;
    let first = coarse
        .iter()
        .position(Option::is_some)
        .ok_or(Error::NoOnset {
            distance: m,
            upper,
            points: fields.len(),
            max_witness: f64::NAN,
        })?;
    let last = first + coarse[first..].iter().take_while(|v| v.is_some()).count() - 1;

    let lo = fields[first];
    let hi = if last + 1 < fields.len() {
        let (mut a, mut b) = (fields[last], fields[last + 1]);
        while b - a > TC_MAX_FIELD_TOLERANCE * coupling {
            let mid = 0.5 * (a + b);
            if single_tc(m, mid, coupling)?.is_some() {
                a = mid;
            } else {
                b = mid;
            }
        }
        a
    } else {
        fields[last]
    };

    let objective =
        |h: f64| -> Result<f64> { Ok(single_tc(m, h, coupling)?.unwrap_or(f64::NEG_INFINITY)) };
    let (field, temperature) =
        golden_section_max(lo, hi, TC_MAX_FIELD_TOLERANCE * coupling, objective)?;
    Ok(TcPeak {
        field,
        temperature,
        single_branch: (lo, hi),
    })
}

/// Golden-section search for the maximum of `f` on `[a, b]`; the end points
/// are candidates too.
fn golden_section_max<F>(mut a: f64, mut b: f64, tol: f64, mut f: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (fa0, fb0) = (f(a)?, f(b)?);
    let ends = [(a, fa0), (b, fb0)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let interior = if fc >= fd { (c, fc) } else { (d, fd) };
    Ok(ends.into_iter().chain(std::iter::once(interior)).fold(
        (f64::NAN, f64::NEG_INFINITY),
        |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        },
    ))
}

fn check_grid(name: &str, grid: &[f64], lo: f64, hi: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !v.is_finite() || *v < lo || *v > hi) {
        return Err(Error::InvalidGrid(format!(
            "{name} grid leaves [{lo}, {hi}]"
        )));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid(format!("{name} grid is not sorted")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub field: f64,
    pub temperature: f64,
    pub distance: usize,
    /// `(C, W)`, or the error that point produced.
    pub outcome: Result<(f64, f64)>,
}

/// Concurrence and witness on the `h × T` grid, `h`-major.
pub fn sweep(
    m: usize,
    fields: &[f64],
    temperatures: &[f64],
    coupling: f64,
) -> Result<Vec<SweepPoint>> {
    ChainParams::new(coupling, 0.0, 0.0)?;
    check_grid("field", fields, 0.0, 4.0 * coupling)?;
    check_grid("temperature", temperatures, 0.0, 4.0 * coupling)?;
    let cells: Vec<(f64, f64)> = fields
        .iter()
        .flat_map(|&h| temperatures.iter().map(move |&t| (h, t)))
        .collect();
    Ok(cells
        .into_par_iter()
        .map(|(h, t)| SweepPoint {
            field: h,
            temperature: t,
            distance: m,
            outcome: ChainParams::new(coupling, h, t)
                .and_then(|p| concurrence(m, &p))
                .map(|c| (c.value, c.witness)),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `T_c` where only one critical temperature exists.
    Single,
    /// `T_c1`
    Lower,
    /// `T_c2`
    Upper,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Single => "single",
            Branch::Lower => "lower",
            Branch::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub field: f64,
    pub temperature: f64,
    pub branch: Branch,
    pub residual_witness: f64,
}

/// Critical temperatures along a field grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseBoundary {
    pub distance: usize,
    /// `(h, critical points at h)` in grid order.
    pub slices: Vec<(f64, Vec<CriticalPoint>)>,
}

impl PhaseBoundary {
    pub fn points(&self) -> Vec<BoundaryPoint> {
        self.slices
            .iter()
            .flat_map(|(h, roots)| {
                roots.iter().map(move |r| BoundaryPoint {
                    field: *h,
                    temperature: r.location,
                    branch: match r.kind {
                        CriticalKind::TcLower => Branch::Lower,
                        CriticalKind::TcUpper => Branch::Upper,
                        _ => Branch::Single,
                    },
                    residual_witness: r.residual_witness,
                })
            })
            .collect()
    }

    pub fn branch(&self, branch: Branch) -> Vec<(f64, f64)> {
        self.points()
            .into_iter()
            .filter(|p| p.branch == branch)
            .map(|p| (p.field, p.temperature))
            .collect()
    }
}

/// Critical temperatures for every field in `fields` (within `[0, 1.3 J]`).
pub fn phase_boundary(m: usize, fields: &[f64], coupling: f64) -> Result<PhaseBoundary> {
    ChainParams::new(coupling, 0.0, 0.0)?;
    check_grid("field", fields, 0.0, PHASE_BOUNDARY_FIELD_LIMIT * coupling)?;
    let slices = fields
        .par_iter()
        .map(|&h| Ok((h, critical_temperatures(m, h, coupling)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseBoundary {
        distance: m,
        slices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn onset_fields() {
        let two = entangled_field(2, 1.0).unwrap();
        assert_eq!(two.kind, CriticalKind::EntangledField);
        assert!((two.location - 0.5).abs() <= 1e-3, "{two:?}");
        let three = entangled_field(3, 1.0).unwrap();
        assert!((three.location - 0.8).abs() <= 0.02, "{three:?}");
        let four = entangled_field(4, 1.0).unwrap();
        assert!((four.location - 0.9).abs() <= 0.02, "{four:?}");
        for p in [two, three, four] {
            assert!(p.bracket.1 - p.bracket.0 <= 1e-6);
            assert!(p.residual_witness.abs() <= 1e-8);
        }
    }

    #[test]
    fn nearest_neighbours_are_entangled_without_field() {
        let one = entangled_field(1, 1.0).unwrap();
        assert_eq!(one.location, 0.0);
    }

    #[test]
    fn onset_scales_with_coupling() {
        let a = entangled_field(2, 1.0).unwrap().location;
        let b = entangled_field(2, 2.0).unwrap().location;
        assert!((b - 2.0 * a).abs() < 2e-6);
    }

    #[test]
    fn temperature_grid_shape() {
        let grid = temperature_grid(1.0);
        assert_eq!(grid.len(), 400);
        assert_eq!(grid[0], 1e-4);
        assert_eq!(grid[399], 4.0);
        assert!(grid.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn critical_temperature_examples() {
        assert!(critical_temperatures(2, 0.2, 1.0).unwrap().is_empty());

        let single = critical_temperatures(2, 0.8, 1.0).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].kind, CriticalKind::TcSingle);
        assert!(single[0].location > 0.0);

        let double = critical_temperatures(2, 1.05, 1.0).unwrap();
        assert_eq!(double.len(), 2);
        assert_eq!(double[0].kind, CriticalKind::TcLower);
        assert_eq!(double[1].kind, CriticalKind::TcUpper);
        assert!(0.0 < double[0].location && double[0].location < double[1].location);

        for r in single.iter().chain(&double) {
            assert!(r.residual_witness.abs() <= 1e-8);
            assert!(r.bracket.1 - r.bracket.0 <= 1e-6);
        }
    }

    #[test]
    fn golden_section_finds_interior_and_boundary_maxima() {
        let (x, fx) = golden_section_max(0.0, 2.0, 1e-9, |x| Ok(-(x - 0.7f64).powi(2))).unwrap();
        assert!((x - 0.7).abs() < 1e-6 && fx <= 0.0);
        let (x, _) = golden_section_max(0.0, 1.0, 1e-9, Ok).unwrap();
        assert_eq!(x, 1.0);
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        assert!(sweep(2, &[], &[0.1], 1.0).is_err());
        assert!(sweep(2, &[0.5, 0.2], &[0.1], 1.0).is_err());
        assert!(sweep(2, &[0.5], &[5.0], 1.0).is_err());
        assert!(phase_boundary(2, &[1.4], 1.0).is_err());
    }

    #[test]
    fn sweep_examples() {
        let temps: Vec<f64> = (0..=40).map(|i| i as f64 * 0.1).collect();
        for p in sweep(2, &[0.0], &temps, 1.0).unwrap() {
            assert_eq!(p.outcome.unwrap().0, 0.0);
        }
        let rows = sweep(2, &[2.0], &[0.0], 1.0).unwrap();
        assert_eq!(rows[0].outcome.clone().unwrap().0, 0.0);
    }

    #[test]
    fn sweep_rows_are_field_major() {
        let rows = sweep(3, &[0.1, 0.9], &[0.0, 0.2, 0.4], 1.0).unwrap();
        let order: Vec<(f64, f64)> = rows.iter().map(|r| (r.field, r.temperature)).collect();
        assert_eq!(
            order,
            vec![
                (0.1, 0.0),
                (0.1, 0.2),
                (0.1, 0.4),
                (0.9, 0.0),
                (0.9, 0.2),
                (0.9, 0.4)
            ]
        );
    }

    #[test]
    fn high_temperature_disentangles_every_pair() {
        for m in 1..=4 {
            for h in [0.0, 0.5, 0.9, 1.0, 1.2, 2.0, 4.0] {
                let c = concurrence(m, &ChainParams::unit(h, 4.0).unwrap()).unwrap();
                assert!(c.value < 1e-10, "m = {m}, h = {h}");
            }
        }
    }
}
