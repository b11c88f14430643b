//! Grid syntax: `a:b:step`, a comma list, or a single number.
//!
//! `a:b:step` yields `a + k·step` for `k = 0, 1, ...` up to the point
//! nearest `b`; `b` itself is included when the grid lands within half a
//! step of it.

use crate::error::{CliError, Result};

pub const MAX_GRID_POINTS: usize = 10_000_000;

pub fn parse_grid(input: &str) -> Result<Vec<f64>> {
    let fail = |reason: &str| CliError::Range {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let number = |s: &str| -> Result<f64> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| fail(&format!("'{s}' is not a number")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail("values must be finite"))
        }
    };

    let parts: Vec<&str> = input.split(':').collect();
    let grid = match parts.as_slice() {
        [single] => single.split(',').map(number).collect::<Result<Vec<_>>>()?,
        [a, b, step] => {
            let (a, b, step) = (number(a)?, number(b)?, number(step)?);
            if step <= 0.0 {
                return Err(fail("step must be positive"));
            }
            if b < a {
                return Err(fail("end lies below start"));
            }
            let span = (b - a) / step;
            if span + 1.0 > MAX_GRID_POINTS as f64 {
                return Err(fail("too many points"));
            }
            let n = span.round() as usize;
            let mut grid: Vec<f64> = (0..=n).map(|k| a + k as f64 * step).collect();
            let last = grid.last_mut().expect("at least one point");
            if (*last - b).abs() <= 1e-9 * step {
                *last = b;
            }
            grid
        }
        _ => return Err(fail("expected a:b:step, a comma list, or a number")),
    };
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(fail("values must increase"));
    }
    Ok(grid)
}
