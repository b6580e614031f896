//! CSV, JSON and pretty-table rendering.
//!
//! Machine formats print every number with 17 significant digits, which
//! reads back to the identical `f64`. The pretty table rounds for display.

use std::io;

use autoces_core::SweepResult;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum EmissionFormat {
    #[default]
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// A value that does not exist at this point; empty in CSV, `null` in JSON.
    Null,
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::Num)
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(v) => s.serialize_f64(*v),
            Cell::Null => s.serialize_none(),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

/// Rows of named columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            &self
                .columns
                .iter()
                .map(|c| csv_field(c))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Num(v) => machine_number(*v),
                    Cell::Null => String::new(),
                    Cell::Text(t) => csv_field(t),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| match cell {
                        Cell::Num(v) => display_number(*v),
                        Cell::Null => "-".to_string(),
                        Cell::Text(t) => t.clone(),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: &[String]| {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(&self.columns);
        out.push('\n');
        out.push_str(
            &widths
                .iter()
                .map(|w| "-".repeat(*w))
                .collect::<Vec<_>>()
                .join("  "),
        );
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// 17 significant digits in scientific notation; reads back bit-exactly.
pub fn machine_number(v: f64) -> String {
    format!("{v:.16e}")
}

/// Four decimals in ordinary ranges, four-decimal mantissa otherwise.
pub fn display_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-3..1e6).contains(&a) {
        format!("{v:.4}")
    } else {
        format!("{v:.4e}")
    }
}

/// JSON formatter that indents like `PrettyFormatter` and writes floats
/// through [`machine_number`].
struct MachineFormatter(PrettyFormatter<'static>);

impl Formatter for MachineFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(machine_number(value).as_bytes())
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes with 17-significant-digit floats and a trailing newline.
pub fn to_machine_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, MachineFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory serialization");
    let mut text = String::from_utf8(buf).expect("serde_json writes UTF-8");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct Document<'a, M: Serialize> {
    metadata: M,
    #[serde(flatten)]
    table: &'a Table,
}

/// Renders a point-evaluation table; `metadata` is included in JSON only.
pub fn emit_table<M: Serialize>(table: &Table, metadata: M, format: EmissionFormat) -> String {
    match format {
        EmissionFormat::Csv => table.to_csv(),
        EmissionFormat::Pretty => table.to_pretty(),
        EmissionFormat::Json => to_machine_json(&Document { metadata, table }),
    }
}

/// Axis coordinates followed by the recorded columns.
///
/// A `(G, P)` surface with wages and premium has the header `G,P,w_s,w_u,premium`.
pub fn sweep_table(result: &SweepResult) -> Table {
    let mut table = Table::new(
        result
            .axis_factors()
            .iter()
            .map(|f| f.key())
            .chain(result.columns.iter().map(|c| c.column_name())),
    );
    for row in &result.rows {
        table.push(
            row.coords
                .iter()
                .map(|x| Cell::Num(*x))
                .chain(row.values.iter().map(|v| Cell::from(*v)))
                .collect(),
        );
    }
    table
}

/// Sweep results: JSON mirrors [`SweepResult`] so it parses straight back.
pub fn emit_sweep(result: &SweepResult, format: EmissionFormat) -> String {
    match format {
        EmissionFormat::Json => to_machine_json(result),
        EmissionFormat::Csv => sweep_table(result).to_csv(),
        EmissionFormat::Pretty => sweep_table(result).to_pretty(),
    }
}

pub fn parse_sweep_json(text: &str) -> serde_json::Result<SweepResult> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use autoces_core::{run_sweep, FactorBundle, OutputKind, SweepSpec, TechnologyParameters};

    fn curve() -> SweepResult {
        let mut spec =
            SweepSpec::ai_curve(TechnologyParameters::table1(), FactorBundle::table1(), 5);
        spec.outputs = vec![OutputKind::Premium, OutputKind::PremiumGradientAi];
        run_sweep(&spec).unwrap()
    }

    #[test]
    fn machine_numbers_have_17_digits_and_round_trip() {
        for v in [
            2.0040784502806422,
            -7.401_581_052_486_918e-12,
            0.1,
            6.9e13,
            0.0,
        ] {
            let s = machine_number(v);
            let digits = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(digits.len(), 17, "{s}");
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn pretty_numbers() {
        assert_eq!(display_number(1.6152001), "1.6152");
        assert_eq!(display_number(2.00407845), "2.0041");
        assert_eq!(display_number(0.0), "0.0000");
        assert_eq!(display_number(2.5825e10), "2.5825e10");
        assert_eq!(display_number(-7.4e-12), "-7.4000e-12");
    }

    #[test]
    fn csv_null_is_empty_field() {
        let csv = emit_sweep(&curve(), EmissionFormat::Csv);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "G,premium,premium_gradient_ai");
        let first = lines.next().unwrap();
        assert!(first.ends_with(','), "{first}");
        assert!(!first.contains(",0.0000000000000000e0,"));
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn surface_header() {
        let result = run_sweep(&SweepSpec::ai_robot_surface(
            TechnologyParameters::table1(),
            FactorBundle::table1(),
            3,
        ))
        .unwrap();
        let csv = emit_sweep(&result, EmissionFormat::Csv);
        assert_eq!(csv.lines().next().unwrap(), "G,P,w_s,w_u,premium");
        assert_eq!(csv.lines().count(), 10);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let result = curve();
        let text = emit_sweep(&result, EmissionFormat::Json);
        assert_eq!(parse_sweep_json(&text).unwrap(), result);
        assert!(text.contains("\"engine_version\""));
        assert!(text.contains("null"));
    }

    #[test]
    fn pretty_table_shape() {
        let mut t = Table::new(["multiplier", "premium"]);
        t.push(vec![Cell::Num(1.0), Cell::Num(1.6164070837838878)]);
        t.push(vec![Cell::Text("x".into()), Cell::Null]);
        let s = t.to_pretty();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[2].ends_with("1.6164"));
        assert!(lines[3].ends_with('-'));
    }

    #[test]
    fn csv_quotes_text_with_commas() {
        let mut t = Table::new(["a"]);
        t.push(vec![Cell::Text("x,y".into())]);
        assert_eq!(t.to_csv(), "a\n\"x,y\"\n");
    }
}
