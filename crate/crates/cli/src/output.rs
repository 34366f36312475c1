use std::io::{self, Write};
use std::path::{Path, PathBuf};

use bosonic_synth::applications::DynamicsTrace;
use bosonic_synth::tensor_core::Operator;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{BenchError, Result};
use crate::report::{GridRow, SweepReport, SynthesisReport};

/// Column header of the sweep CSV.
pub const GRID_HEADER: [&str; 5] = ["t", "op_norm_error", "autocorr_error", "gate_count", "slices"];

/// `x` with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn guard(values: impl IntoIterator<Item = f64>) -> Result<()> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(BenchError::Synth(bosonic_synth::SynthError::NonFinite))
    }
}

fn csv_bytes(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let to_err = |source| BenchError::Csv { path: PathBuf::from("<memory>"), source };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(to_err)?;
    for row in rows {
        w.write_record(&row).map_err(to_err)?;
    }
    w.into_inner().map_err(|e| BenchError::io("<memory>", e.into_error()))
}

fn grid_record(row: &GridRow) -> Vec<String> {
    vec![
        format_float(row.t),
        format_float(row.op_norm_error),
        format_float(row.autocorr_error),
        row.gate_count.to_string(),
        row.slices.to_string(),
    ]
}

/// `t, op_norm_error, autocorr_error, gate_count, slices`, one row per grid point.
pub fn report_csv(report: &SynthesisReport) -> Result<Vec<u8>> {
    guard(report.floats())?;
    let header: Vec<String> = GRID_HEADER.iter().map(|s| s.to_string()).collect();
    csv_bytes(&header, report.rows.iter().map(grid_record))
}

/// The grid CSV of every order, prefixed by an `order` column.
pub fn sweep_csv(sweep: &SweepReport) -> Result<Vec<u8>> {
    let mut header = vec!["order".to_string()];
    header.extend(GRID_HEADER.iter().map(|s| s.to_string()));
    let mut rows = Vec::new();
    for (order, report) in sweep.orders.iter().zip(&sweep.reports) {
        guard(report.floats())?;
        for row in &report.rows {
            let mut record = vec![order.to_string()];
            record.extend(grid_record(row));
            rows.push(record);
        }
    }
    csv_bytes(&header, rows)
}

/// Exact and synthesized trajectories side by side.
pub fn dynamics_csv(exact: &DynamicsTrace, synthesized: &DynamicsTrace) -> Result<Vec<u8>> {
    let levels = exact.populations.first().map_or(0, Vec::len);
    let mut header: Vec<String> = ["t", "autocorr_exact", "autocorr_synthesized", "leakage_exact", "leakage_synthesized"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((0..levels).map(|n| format!("pop{n}_exact")));
    header.extend((0..levels).map(|n| format!("pop{n}_synthesized")));
    let mut rows = Vec::with_capacity(exact.times.len());
    for i in 0..exact.times.len() {
        let mut values = vec![
            exact.times[i],
            exact.autocorrelation[i],
            synthesized.autocorrelation[i],
            exact.leakage[i],
            synthesized.leakage[i],
        ];
        values.extend(&exact.populations[i]);
        values.extend(&synthesized.populations[i]);
        guard(values.iter().copied())?;
        rows.push(values.into_iter().map(format_float).collect());
    }
    csv_bytes(&header, rows)
}

/// `row, col, exact_modulus, synthesized_modulus` for every matrix element.
pub fn heatmap_csv(exact: &Operator, synthesized: &Operator) -> Result<Vec<u8>> {
    let header: Vec<String> = ["row", "col", "exact_modulus", "synthesized_modulus"].iter().map(|s| s.to_string()).collect();
    let dim = exact.layout().dim();
    let mut rows = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let (e, s) = (exact.get(i, j).norm(), synthesized.get(i, j).norm());
            guard([e, s])?;
            rows.push(vec![i.to_string(), j.to_string(), format_float(e), format_float(s)]);
        }
    }
    csv_bytes(&header, rows)
}

/// Pretty JSON writing every float with 17 significant digits.
struct SignificantDigits(PrettyFormatter<'static>);

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_float(value).as_bytes())
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// JSON with stable key order and 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

pub fn report_json(report: &SynthesisReport) -> Result<Vec<u8>> {
    guard(report.floats())?;
    to_json(report)
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| BenchError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| BenchError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| BenchError::io(path, e))?;
    tmp.persist(path).map_err(|e| BenchError::io(path, e.error))?;
    Ok(())
}

pub fn emit_csv(report: &SynthesisReport, path: &Path) -> Result<()> {
    write_atomic(path, &report_csv(report)?)
}

pub fn emit_json(report: &SynthesisReport, path: &Path) -> Result<()> {
    write_atomic(path, &report_json(report)?)
}
