use std::io::Write;

use crate::verify::ScalingReport;
use crate::Result;

pub const CSV_HEADER: &str = "eps,size,slope_so_far,millis";

/// One row per eps; the slope column is empty until two sizes are known.
pub fn write_scaling_csv(report: &ScalingReport, w: &mut impl Write) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in &report.rows {
        let slope = r.slope_so_far.map(|s| format!("{s:.6}")).unwrap_or_default();
        writeln!(w, "{},{},{},{}", r.eps, r.size, slope, r.millis)?;
    }
    Ok(())
}
