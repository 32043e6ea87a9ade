//! Command results and their table and CSV renderings.

use filtreg::invariants::HilbertTable;

pub const CSV_COLUMNS: [&str; 9] = [
    "claim",
    "N",
    "sample",
    "n",
    "value_orig",
    "value_pert",
    "status",
    "certification",
    "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
}

/// One CSV line. Fields that do not apply are left empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportRow {
    pub claim: String,
    pub depth: Option<usize>,
    pub sample: Option<usize>,
    pub n: Option<usize>,
    pub value_orig: String,
    pub value_pert: String,
    pub status: String,
    pub certification: String,
    pub seed: Option<u64>,
}

impl ReportRow {
    fn fields(&self) -> [String; 9] {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.claim.clone(),
            opt(self.depth),
            opt(self.sample),
            opt(self.n),
            self.value_orig.clone(),
            self.value_pert.clone(),
            self.status.clone(),
            self.certification.clone(),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    /// Truncation order used.
    pub order: usize,
    /// The order was chosen by the default rule.
    pub auto_order: bool,
    /// Short result lines, printed first in table form.
    pub summary: Vec<String>,
    pub rows: Vec<ReportRow>,
    /// Hilbert tables available for plotting.
    pub tables: Vec<(String, HilbertTable)>,
    pub violated: bool,
    /// Errors of individual components; the report is otherwise complete.
    pub errors: Vec<String>,
}

impl Report {
    pub fn new(command: &str, order: usize, auto_order: bool) -> Self {
        Report {
            command: command.to_string(),
            order,
            auto_order,
            ..Report::default()
        }
    }

    fn order_line(&self) -> String {
        if self.auto_order {
            format!("order: {} (auto)", self.order)
        } else {
            format!("order: {}", self.order)
        }
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Table => emit_table(report),
        Format::Csv => emit_csv(&report.rows),
    }
}

pub fn emit_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in rows {
        w.write_record(r.fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn emit_table(report: &Report) -> String {
    let mut out = String::new();
    for line in &report.summary {
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&report.order_line());
    out.push('\n');
    for e in &report.errors {
        out.push_str("error: ");
        out.push_str(e);
        out.push('\n');
    }
    if report.rows.is_empty() {
        return out;
    }
    let cells: Vec<[String; 9]> = report.rows.iter().map(ReportRow::fields).collect();
    let used: Vec<usize> = (0..CSV_COLUMNS.len())
        .filter(|&c| c == 0 || cells.iter().any(|r| !r[c].is_empty()))
        .collect();
    let width = |c: usize| {
        cells
            .iter()
            .map(|r| r[c].chars().count())
            .chain([CSV_COLUMNS[c].len()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = used.iter().map(|&c| width(c)).collect();
    let line = |vals: Vec<&str>| {
        let padded: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    out.push('\n');
    out.push_str(&line(used.iter().map(|&c| CSV_COLUMNS[c]).collect()));
    out.push('\n');
    for r in &cells {
        out.push_str(&line(used.iter().map(|&c| r[c].as_str()).collect()));
        out.push('\n');
    }
    out
}

/// `(n, value)` pairs of every Hilbert table, as CSV with a table column.
pub fn emit_plot_data(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["table", "n", "value"]).expect("in-memory write");
    for (name, t) in &report.tables {
        for (n, e) in t.entries.iter().enumerate() {
            w.write_record([name.clone(), n.to_string(), e.value.to_string()])
                .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
