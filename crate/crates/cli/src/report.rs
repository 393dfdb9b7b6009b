use serde::Serialize;
use serde_json::Value;

use tetra_ising::exactalg::format_exact;
use tetra_ising::exactalg::ExactScalar;
use tetra_ising::hpreal::{rational_to_decimal, HpReal};

/// What every command produces: a JSON document and, for tabular
/// commands, CSV rows.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    /// False when the command ran but reports a failed check.
    pub ok: bool,
}

pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: impl Serialize) -> Self {
        Report { json: serde_json::to_value(json).expect("serializable report"), table: None, ok: true }
    }

    pub fn with_table(mut self, header: &'static [&'static str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    pub fn csv(&self) -> Option<String> {
        let table = self.table.as_ref()?;
        let mut out = table.header.join(",");
        out.push('\n');
        for row in &table.rows {
            out.push_str(&row.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        Some(out)
    }
}

fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

#[derive(Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub precision_bits: usize,
    pub warnings: Vec<String>,
}

impl Provenance {
    pub fn new(precision_bits: usize) -> Self {
        Provenance { version: env!("CARGO_PKG_VERSION"), precision_bits, warnings: Vec::new() }
    }
}

pub fn exact(q: &ExactScalar) -> String {
    format_exact(q)
}

/// Significant decimal digits carried by `bits` binary digits.
pub fn digits_for_bits(bits: usize) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

pub fn decimal(q: &ExactScalar, digits: usize) -> String {
    rational_to_decimal(q, digits)
}

pub fn real(x: &HpReal, digits: usize) -> String {
    x.to_decimal(digits)
}

/// Shortest round-trip rendering of a double.
pub fn float(x: f64) -> String {
    format!("{x:e}")
}
