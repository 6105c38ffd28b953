//! Tabular output. Floats are written in their shortest round-trip form.

use std::io::Write;

use serde_json::{Map, Value};

use crate::dispersion::{GroupVelocityReport, NumeratorPoint};
use crate::error::Result;
use crate::susceptibility::SusceptibilityPoint;

use super::config::Format;
use super::sweep::{StopLightResult, SweepRow};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text))?;
        }
        w.flush()
    }

    fn objects(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(cell_json))
                    .collect();
                Value::Object(map)
            })
            .collect()
    }

    /// JSON array with one object per row.
    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.objects())?;
        writeln!(out)
    }

    /// JSON object for a single-row table.
    pub fn write_json_object<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let first = self.objects().into_iter().next().unwrap_or(Value::Null);
        serde_json::to_writer_pretty(&mut out, &first)?;
        writeln!(out)
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }
}

/// Shortest text that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || (1e-5..1e16).contains(&x.abs()) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Num(x) => format_float(*x),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn cell_json(cell: &Cell) -> Value {
    match cell {
        Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
        Cell::Int(i) => Value::from(*i),
        Cell::Text(s) => Value::from(s.as_str()),
        Cell::Empty => Value::Null,
    }
}

pub const SPECTRUM_COLUMNS: [&str; 5] = [
    "delta1_over_gamma",
    "re_chi",
    "im_chi",
    "dchi_re",
    "dchi_im",
];

pub fn spectrum_table(points: &[SusceptibilityPoint], gamma: f64) -> Table {
    let mut table = Table::new(&SPECTRUM_COLUMNS);
    for p in points {
        table.push(vec![
            Cell::Num(p.probe_detuning / gamma),
            Cell::Num(p.chi.re),
            Cell::Num(p.chi.im),
            Cell::Num(p.dchi_domega.re),
            Cell::Num(p.dchi_domega.im),
        ]);
    }
    table
}

pub fn numerator_table(points: &[NumeratorPoint], gamma: f64) -> Table {
    let mut table = Table::new(&[
        "delta1_over_gamma",
        "num_re",
        "num_im",
        "dchi_re",
        "dchi_im",
    ]);
    for p in points {
        table.push(vec![
            Cell::Num(p.probe_detuning / gamma),
            Cell::Num(p.numerator.re),
            Cell::Num(p.numerator.im),
            Cell::Num(p.dchi_domega.re),
            Cell::Num(p.dchi_domega.im),
        ]);
    }
    table
}

const REPORT_COLUMNS: [&str; 11] = [
    "vg",
    "vg_no_spatial",
    "num_re",
    "num_im",
    "den_re",
    "den_im",
    "chi_re",
    "chi_im",
    "absorption_coeff",
    "step",
    "error",
];

fn report_cells(result: &Result<GroupVelocityReport>) -> Vec<Cell> {
    match result {
        Ok(r) => vec![
            Cell::Num(r.vg),
            Cell::Num(r.vg_no_spatial),
            Cell::Num(r.numerator.re),
            Cell::Num(r.numerator.im),
            Cell::Num(r.denominator.re),
            Cell::Num(r.denominator.im),
            Cell::Num(r.chi_at_center.re),
            Cell::Num(r.chi_at_center.im),
            Cell::Num(r.absorption_coeff),
            Cell::Num(r.step),
            Cell::Empty,
        ],
        Err(e) => {
            let mut cells = vec![Cell::Empty; REPORT_COLUMNS.len() - 1];
            cells.push(Cell::Text(e.to_string()));
            cells
        }
    }
}

/// One row per sweep point; the first column holds the swept value.
pub fn sweep_table(value_column: &str, rows: &[SweepRow]) -> Table {
    let mut columns = vec![value_column];
    columns.extend(REPORT_COLUMNS);
    let mut table = Table::new(&columns);
    for row in rows {
        let mut cells = vec![Cell::Num(row.value)];
        cells.extend(report_cells(&row.result));
        table.push(cells);
    }
    table
}

pub fn report_table(report: &GroupVelocityReport) -> Table {
    let mut table = Table::new(&REPORT_COLUMNS);
    table.push(report_cells(&Ok(*report)));
    table
}

pub fn stop_light_table(result: &StopLightResult) -> Table {
    let mut table = Table::new(&[
        "omega_star",
        "omega_star_over_gamma",
        "bracket_lo",
        "bracket_hi",
        "iterations",
        "residual_numerator",
        "equivalent_b_field",
    ]);
    table.push(vec![
        Cell::Num(result.omega_star),
        Cell::Num(result.omega_star_over_gamma),
        Cell::Num(result.bracket.0),
        Cell::Num(result.bracket.1),
        Cell::Int(result.iterations as u64),
        Cell::Num(result.residual_numerator),
        Cell::Num(result.equivalent_b_field),
    ]);
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn float_text_switches_to_exponent_outside_range() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-50.0), "-50");
        assert_eq!(format_float(0.001741), "0.001741");
        assert_eq!(format_float(1.5e-9), "1.5e-9");
        assert_eq!(format_float(2.99792458e10), "29979245800");
        assert_eq!(format_float(1e20), "1e20");
    }

    #[test]
    fn csv_quotes_messages_and_leaves_failed_cells_blank() {
        let mut t = Table::new(&["x", "error"]);
        t.push(vec![Cell::Num(1.0), Cell::Empty]);
        t.push(vec![Cell::Empty, Cell::Text("bad, really".into())]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "x,error\n1,\n,\"bad, really\"\n"
        );
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = Table::new(&["z", "a"]);
        t.push(vec![Cell::Num(0.5), Cell::Empty]);
        let mut buf = Vec::new();
        t.write_json(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.find("\"z\"").unwrap() < text.find("\"a\"").unwrap());
        assert!(text.contains("null"));
    }

    proptest! {
        #[test]
        fn float_text_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = format_float(x);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
