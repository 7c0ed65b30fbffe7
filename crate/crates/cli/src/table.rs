//! Angle-of-parallelism tables: closed form against the bisection oracle.

use std::io::Write;

use anyhow::{bail, Result};
use lobachevsky_core::parallels::{angle_of_parallelism, configuration_at_distance, secant_boundary_oracle};
use lobachevsky_core::verify::log_grid;
use lobachevsky_core::Curvature;
use serde::Serialize;

/// Bisection tolerance of the oracle column.
pub const ORACLE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Row {
    pub d: f64,
    pub analytic: f64,
    pub oracle: f64,
    pub abs_diff: f64,
}

/// Rows on a log-spaced grid of `steps` distances from `d_min` to `d_max`.
pub fn rows(d_min: f64, d_max: f64, steps: usize, k: Curvature) -> Result<Vec<Row>> {
    if !(d_min > 0.0 && d_min < d_max && d_max.is_finite()) || steps < 2 {
        bail!("bad range: need 0 < d_min < d_max and steps >= 2");
    }
    log_grid(d_min, d_max, steps)
        .map(|d| {
            let (p, l) = configuration_at_distance(d, 2, k)?;
            let analytic = angle_of_parallelism(d, k)?;
            let oracle = secant_boundary_oracle(&p, &l, ORACLE_TOL)?;
            Ok(Row { d, analytic, oracle, abs_diff: (analytic - oracle).abs() })
        })
        .collect()
}

/// Writes the rows as CSV with a header line.
pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
