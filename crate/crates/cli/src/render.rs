//! Output formats. Human tables round to 2 decimals (probabilities to 3);
//! CSV and JSON keep full precision.

use std::fmt::Write as _;

use ergofit::design::{OptimizationResult, WorkstationGuidelines};
use ergofit::fit::{DeltaRow, MismatchReport};
use ergofit::stats::CorrelationMatrix;
use ergofit::{Dimension, DimensionValue, FurnitureSpec};
use serde::Serialize;

use crate::analysis::{AnovaRow, DescribeRow, HistogramRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Table => "txt",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A cell that renders differently per format.
enum Cell {
    Text(String),
    Num(f64),
    /// Probabilities keep a third decimal in human mode.
    Prob(f64),
    Int(usize),
    Empty,
}

impl Cell {
    fn human(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => format!("{v:.2}"),
            Cell::Prob(v) => format!("{v:.3}"),
            Cell::Int(v) => v.to_string(),
            Cell::Empty => "-".into(),
        }
    }

    fn machine(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) | Cell::Prob(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

fn text(s: impl ToString) -> Cell {
    Cell::Text(s.to_string())
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Text columns left-aligned, numbers right-aligned.
    fn human(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::human).collect()).collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| cells.iter().map(|r| r[i].len()).chain([self.headers[i].len()]).max().unwrap_or(0))
            .collect();
        let left: Vec<bool> = (0..self.headers.len())
            .map(|i| self.rows.first().is_some_and(|r| matches!(r[i], Cell::Text(_))))
            .collect();
        let line = |out: &mut String, vals: &[String]| {
            let parts: Vec<String> = vals
                .iter()
                .enumerate()
                .map(|(i, v)| if left[i] { format!("{v:<w$}", w = widths[i]) } else { format!("{v:>w$}", w = widths[i]) })
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        let mut out = String::new();
        line(&mut out, &self.headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        let _ = writeln!(out, "{}", rule.join("  "));
        for r in &cells {
            line(&mut out, r);
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::machine)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    fn render<T: Serialize + ?Sized>(&self, fmt: Format, json: &T) -> String {
        match fmt {
            Format::Table => self.human(),
            Format::Csv => self.csv(),
            Format::Json => to_json(json),
        }
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn describe(rows: &[DescribeRow], fmt: Format) -> String {
    let mut t = Table::new(&["measure", "gender", "n", "min", "max", "mean", "sd", "p5", "p50", "p95"]);
    for r in rows {
        t.push(vec![
            text(r.measure),
            text(r.gender),
            Cell::Int(r.n),
            Cell::Num(r.min),
            Cell::Num(r.max),
            Cell::Num(r.mean),
            r.sd.into(),
            Cell::Num(r.p5),
            Cell::Num(r.p50),
            Cell::Num(r.p95),
        ]);
    }
    t.render(fmt, rows)
}

/// CSV output is exactly [`MismatchReport::to_csv`].
pub fn mismatch(report: &MismatchReport, fmt: Format) -> String {
    match fmt {
        Format::Csv => report.to_csv(),
        Format::Json => to_json(report),
        Format::Table => {
            let mut t = Table::new(&["criterion", "gender", "n", "match %", "low %", "high %", "total %"]);
            for r in &report.rows {
                t.push(vec![
                    text(r.criterion.id()),
                    text(r.gender),
                    Cell::Int(r.n),
                    r.match_pct.into(),
                    r.low_pct.into(),
                    r.high_pct.into(),
                    r.total_pct.into(),
                ]);
            }
            let mut out = format!("{} (male n={}, female n={})\n", report.spec_name, report.n_male, report.n_female);
            out.push_str(&t.human());
            for note in &report.notes {
                let _ = writeln!(out, "note: {note}");
            }
            out
        }
    }
}

pub fn deltas(before: &str, after: &str, rows: &[DeltaRow], fmt: Format) -> String {
    let mut t = Table::new(&["criterion", "gender", "before total %", "after total %", "change (pp)"]);
    for r in rows {
        t.push(vec![text(r.criterion.id()), text(r.gender), r.before_pct.into(), r.after_pct.into(), r.delta_pct.into()]);
    }
    match fmt {
        Format::Table => format!("{before} -> {after}\n{}", t.human()),
        _ => t.render(fmt, rows),
    }
}

pub fn anova(rows: &[AnovaRow], fmt: Format) -> String {
    let mut t = Table::new(&["comparison", "f_value", "df_between", "df_within", "p_value", "decision"]);
    for r in rows {
        t.push(vec![
            text(&r.label),
            Cell::Num(r.result.f_value),
            Cell::Int(r.result.df_between as usize),
            Cell::Int(r.result.df_within as usize),
            Cell::Prob(r.result.p_value),
            text(r.result.decision),
        ]);
    }
    t.render(fmt, rows)
}

fn spec_table(spec: &FurnitureSpec) -> Table {
    let mut t = Table::new(&["dimension", "name", "lo", "hi"]);
    for d in Dimension::ALL {
        let v = spec.get(d);
        let hi = match v {
            DimensionValue::Fixed(_) => Cell::Empty,
            DimensionValue::Adjustable { hi, .. } => Cell::Num(hi),
        };
        t.push(vec![text(d.acronym()), text(d.name()), Cell::Num(v.lo()), hi]);
    }
    t
}

/// Specs print as JSON in the same shape they are read from.
pub fn spec(spec: &FurnitureSpec, fmt: Format) -> String {
    match fmt {
        Format::Table => format!("{}\n{}", spec.name, spec_table(spec).human()),
        Format::Csv => spec_table(spec).csv(),
        Format::Json => to_json(spec),
    }
}

pub fn optimization(result: &OptimizationResult, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(result),
        Format::Csv => spec(&result.spec, fmt),
        Format::Table => format!(
            "{}objective: {:.2}\n\n{}",
            spec(&result.spec, fmt),
            result.objective,
            mismatch(&result.report, fmt)
        ),
    }
}

pub fn histograms(rows: &[HistogramRow], fmt: Format) -> String {
    let mut t = Table::new(&["measure", "gender", "bin", "lower", "upper", "count"]);
    for r in rows {
        t.push(vec![text(r.measure), text(r.gender), Cell::Int(r.bin), Cell::Num(r.lower), Cell::Num(r.upper), Cell::Int(r.count)]);
    }
    t.render(fmt, rows)
}

pub fn correlation(m: &CorrelationMatrix, fmt: Format) -> String {
    if fmt == Format::Json {
        return to_json(m);
    }
    let mut headers = vec![""];
    headers.extend(m.labels.iter().map(|l| l.acronym()));
    let mut t = Table::new(&headers);
    for (label, row) in m.labels.iter().zip(&m.values) {
        let mut cells = vec![text(label)];
        cells.extend(row.iter().map(|v| Cell::Num(*v)));
        t.push(cells);
    }
    t.render(fmt, m)
}

pub fn guidelines(g: &WorkstationGuidelines, fmt: Format) -> String {
    let mut t = Table::new(&["guideline", "min", "max", "unit"]);
    t.push(vec![text("keyboard zone depth"), Cell::Num(g.keyboard_zone_depth), Cell::Empty, text("mm")]);
    t.push(vec![text("keyboard zone length"), Cell::Num(g.keyboard_zone_length), Cell::Empty, text("mm")]);
    t.push(vec![text("monitor distance"), Cell::Num(g.monitor_distance[0]), Cell::Num(g.monitor_distance[1]), text("mm")]);
    t.push(vec![text("viewing angle below horizontal"), Cell::Num(g.viewing_angle[0]), Cell::Num(g.viewing_angle[1]), text("deg")]);
    t.render(fmt, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_table_aligns_and_rounds() {
        let mut t = Table::new(&["name", "value"]);
        t.push(vec![text("a"), Cell::Num(1.005)]);
        t.push(vec![text("longer"), Cell::Empty]);
        let out = t.human();
        assert_eq!(out, "name    value\n------  -----\na        1.00\nlonger      -\n");
    }

    #[test]
    fn csv_keeps_precision_and_quotes() {
        let mut t = Table::new(&["label", "v"]);
        t.push(vec![text("a, b"), Cell::Num(0.1 + 0.2)]);
        t.push(vec![text("c"), Cell::Empty]);
        assert_eq!(t.csv(), "label,v\n\"a, b\",0.30000000000000004\nc,\n");
    }
}
