//! Output formats behind the `lobachevsky` command: SVG figures, CSV
//! tables of the angle of parallelism and JSON reports.

pub mod duality;
pub mod svg;
pub mod table;
