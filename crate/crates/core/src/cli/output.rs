//! Report serialization.
//!
//! Every numeric value is emitted with 17 significant digits so files
//! round-trip losslessly and identical invocations produce byte-identical
//! output.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::releq::{ScanCell, ScanOutcome};

/// Formats a double with 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

struct SigDigitFormatter;

impl Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a value as JSON with 17-significant-digit numbers and a
/// trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigitFormatter);
    value.serialize(&mut ser).expect("report types serialize infallibly");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// JSON form of one scan cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanCellReport {
    pub n: usize,
    pub r: f64,
    pub omega: f64,
    pub omega_t: f64,
    pub s: f64,
    pub max_term_gap: f64,
}

/// JSON form of a non-existence scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub n_min: usize,
    pub n_max: usize,
    pub r_grid: Vec<f64>,
    pub omega_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub max_s: f64,
    pub min_margin: f64,
    pub max_term_gap: f64,
    pub certified: bool,
    pub cells: Vec<ScanCellReport>,
}

impl ScanReport {
    pub fn from_outcome(
        n_min: usize,
        n_max: usize,
        r_grid: Vec<f64>,
        omega_grid: Vec<f64>,
        t_grid: Vec<f64>,
        outcome: &ScanOutcome,
    ) -> ScanReport {
        ScanReport {
            n_min,
            n_max,
            r_grid,
            omega_grid,
            t_grid,
            max_s: outcome.max_s,
            min_margin: outcome.min_margin,
            max_term_gap: outcome.max_term_gap,
            certified: outcome.certified(),
            cells: outcome.cells.iter().map(ScanCellReport::from).collect(),
        }
    }
}

impl From<&ScanCell> for ScanCellReport {
    fn from(c: &ScanCell) -> ScanCellReport {
        ScanCellReport {
            n: c.n,
            r: c.r,
            omega: c.omega,
            omega_t: c.phase,
            s: c.s,
            max_term_gap: c.max_term_gap,
        }
    }
}
