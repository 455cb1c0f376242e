//! JSON and CSV artifacts.
//!
//! JSON documents are `{"schema": "1", "kind": ..., "data": ...}` with every
//! float written in scientific notation to 17 significant digits, so equal
//! inputs give byte-identical files. CSV files carry a fixed header row.

use std::io::{self, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::analysis::{ConcatCost, CostReport, RobustnessReport, EPSILON_FLOOR};
use crate::error::{CoreError, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema: String,
    pub kind: String,
    pub data: T,
}

impl<T> Document<T> {
    pub fn new(kind: impl Into<String>, data: T) -> Self {
        Document {
            schema: SCHEMA_VERSION.to_string(),
            kind: kind.into(),
            data,
        }
    }
}

/// Pretty printer that writes floats as `d.dddddddddddddddde±x`.
struct FixedFloats<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
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

/// Serializes any value with fixed-precision floats. Non-finite floats become `null`.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloats(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

pub fn document_string<T: Serialize>(kind: &str, data: &T) -> Result<String> {
    to_json_string(&Document::new(kind, data))
}

pub fn write_document<T: Serialize>(path: &Path, kind: &str, data: &T) -> Result<()> {
    std::fs::write(path, document_string(kind, data)?)?;
    Ok(())
}

/// Parses a document of the given kind. A bare `data` payload is accepted too.
pub fn parse_document<T: DeserializeOwned>(text: &str, kind: &str) -> Result<T> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(schema) = value.get("schema") {
        let doc: Document<serde_json::Value> = serde_json::from_value(value.clone())?;
        if doc.schema != SCHEMA_VERSION {
            return Err(CoreError::InvalidArgument(format!("unsupported schema {schema}")));
        }
        if doc.kind != kind {
            return Err(CoreError::InvalidArgument(format!(
                "expected a {kind} document, found {}",
                doc.kind
            )));
        }
        return Ok(serde_json::from_value(doc.data)?);
    }
    Ok(serde_json::from_value(value)?)
}

pub fn read_document<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<T> {
    parse_document(&std::fs::read_to_string(path)?, kind)
}

/// Spectrum files: a document of kind `spectrum`, an `{"energies": [...]}`
/// object, or a bare array.
pub fn parse_spectrum(text: &str) -> Result<crate::chain::Spectrum> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Bare(Vec<f64>),
        Object { energies: Vec<f64> },
    }
    let raw: Raw = parse_document(text, "spectrum")?;
    Ok(crate::chain::Spectrum::new(match raw {
        Raw::Bare(e) | Raw::Object { energies: e } => e,
    }))
}

pub const COST_CSV_HEADER: [&str; 9] = [
    "n",
    "free_evolutions",
    "swaps",
    "local_ops",
    "core_events",
    "switch_events",
    "core_time",
    "switched_time",
    "switched_transfer_time",
];

pub const ROBUSTNESS_CSV_HEADER: [&str; 3] = ["delta_t", "epsilon", "used_in_fit"];

pub const TROTTER_CSV_HEADER: [&str; 3] = ["dt", "steps", "error"];

pub const CONCAT_CSV_HEADER: [&str; 4] = ["levels", "targets_per_gate", "w_gate_count", "switched_ops"];

/// Cost sweep rows, one per system size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostRow {
    pub n: usize,
    pub free_evolutions: usize,
    pub swaps: usize,
    pub local_ops: usize,
    pub core_events: usize,
    pub switch_events: usize,
    pub core_time: f64,
    pub switched_time: f64,
    pub switched_transfer_time: f64,
}

impl CostRow {
    pub fn new(n: usize, report: &CostReport, transfer_time: f64) -> Self {
        CostRow {
            n,
            free_evolutions: report.free_evolutions,
            swaps: report.swaps,
            local_ops: report.local_ops,
            core_events: report.core_events(),
            switch_events: report.switch_events,
            core_time: report.core_time,
            switched_time: report.switched_time,
            switched_transfer_time: transfer_time,
        }
    }
}

fn csv_writer<W: Write>(out: W, header: &[&str]) -> Result<csv::Writer<W>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    Ok(w)
}

pub fn write_cost_csv<W: Write>(out: W, rows: &[CostRow]) -> Result<()> {
    let mut w = csv_writer(out, &COST_CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_robustness_csv<W: Write>(out: W, report: &RobustnessReport) -> Result<()> {
    let mut w = csv_writer(out, &ROBUSTNESS_CSV_HEADER)?;
    for (dt, eps) in report.delta_ts.iter().zip(&report.errors) {
        w.serialize((dt, eps, *eps >= EPSILON_FLOOR))?;
    }
    w.flush()?;
    Ok(())
}

/// Trotter sweep rows as `(dt, steps, error)`.
pub fn write_trotter_csv<W: Write>(out: W, rows: &[(f64, usize, f64)]) -> Result<()> {
    let mut w = csv_writer(out, &TROTTER_CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_concat_csv<W: Write>(out: W, rows: &[ConcatCost]) -> Result<()> {
    let mut w = csv_writer(out, &CONCAT_CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::CouplingProfile;
    use crate::dynamics::{Layout, StateVector};
    use crate::gates::{program_w, ProcessorCore, TargetSpec};
    use crate::linalg::pauli_x;
    use crate::GateProgram;

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json_string(&[std::f64::consts::PI, 0.5, -1e-300, f64::NAN]).unwrap();
        assert!(s.contains("3.1415926535897931e0"));
        assert!(s.contains("5.0000000000000000e-1"));
        assert!(s.contains("-1.0000000000000000e-300"));
        assert!(s.contains("null"));
        let back: Vec<Option<f64>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0], Some(std::f64::consts::PI));
    }

    #[test]
    fn documents_round_trip() {
        let p = CouplingProfile::christandl(5).unwrap();
        let text = document_string("profile", &p).unwrap();
        assert!(text.contains("\"schema\": \"1\""));
        let back: CouplingProfile = parse_document(&text, "profile").unwrap();
        assert_eq!(back, p);
        assert!(parse_document::<CouplingProfile>(&text, "spectrum").is_err());
        let bare: CouplingProfile = parse_document(&serde_json::to_string(&p).unwrap(), "profile").unwrap();
        assert_eq!(bare, p);

        let core = ProcessorCore::christandl(3).unwrap();
        let layout = Layout::new(3, 1, 0).unwrap();
        let w = program_w(&core, &TargetSpec::uniform(3, 2, pauli_x()), layout).unwrap();
        let back: GateProgram = parse_document(&document_string("program", &w).unwrap(), "program").unwrap();
        assert_eq!(back, w);

        let s = StateVector::zero(layout).unwrap();
        let back: StateVector = parse_document(&document_string("state", &s).unwrap(), "state").unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn output_is_deterministic() {
        let p = CouplingProfile::christandl(7).unwrap();
        assert_eq!(document_string("profile", &p).unwrap(), document_string("profile", &p).unwrap());
    }

    #[test]
    fn spectrum_formats() {
        assert_eq!(parse_spectrum("[0, 1, 2]").unwrap().energies, vec![0.0, 1.0, 2.0]);
        assert_eq!(parse_spectrum("{\"energies\": [1.5]}").unwrap().energies, vec![1.5]);
        let doc = "{\"schema\":\"1\",\"kind\":\"spectrum\",\"data\":[0,1]}";
        assert_eq!(parse_spectrum(doc).unwrap().energies, vec![0.0, 1.0]);
    }

    #[test]
    fn csv_headers_are_fixed() {
        let mut out = Vec::new();
        write_cost_csv(&mut out, &[CostRow::new(2, &CostReport::default(), 0.0)]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().next().unwrap(), COST_CSV_HEADER.join(","));
        assert_eq!(text.lines().count(), 2);

        let report = RobustnessReport {
            delta_ts: vec![0.1, 0.01],
            errors: vec![1e-3, 0.0],
            fitted_order: 2.0,
            samples_used: 1,
        };
        let mut out = Vec::new();
        write_robustness_csv(&mut out, &report).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "delta_t,epsilon,used_in_fit");
        assert_eq!(lines[2], "0.01,0.0,false");

        let mut out = Vec::new();
        write_concat_csv(&mut out, &[crate::analysis::concat_cost(1).unwrap()]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "levels,targets_per_gate,w_gate_count,switched_ops\n1,7,6,42\n");
        let mut out = Vec::new();
        write_trotter_csv(&mut out, &[(0.5, 2, 1e-3)]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "dt,steps,error\n0.5,2,0.001\n");
    }
}
