//! Tabular reports rendered as CSV or Markdown.

use crate::combiner::TradeoffPoint;
use crate::error::{Error, Result};
use crate::metrics::{AgreementMatrix, AgreementMode, MetricSet};

/// Shown wherever a value is undefined.
pub const UNDEFINED: &str = "n/a";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.headers.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let to_err = |e: csv::Error| Error::InvalidConfig(format!("csv: {e}"));
        writer.write_record(&self.headers).map_err(to_err)?;
        for row in &self.rows {
            writer.write_record(row).map_err(to_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::InvalidConfig(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_markdown(&self) -> String {
        let escape = |s: &str| s.replace('|', "\\|");
        let mut out = String::new();
        out.push_str(&format!("| {} |\n", self.headers.iter().map(|h| escape(h)).collect::<Vec<_>>().join(" | ")));
        out.push_str(&format!("|{}\n", " --- |".repeat(self.headers.len())));
        for row in &self.rows {
            out.push_str(&format!("| {} |\n", row.iter().map(|c| escape(c)).collect::<Vec<_>>().join(" | ")));
        }
        out
    }
}

pub fn fmt_value(value: Option<f64>, decimals: usize) -> String {
    match value {
        Some(v) => format!("{v:.decimals$}"),
        None => UNDEFINED.to_string(),
    }
}

pub fn fmt_percent(value: Option<f64>) -> String {
    fmt_value(value.map(|v| v * 100.0), 2)
}

type MetricGetter = fn(&MetricSet<f64>) -> Option<f64>;

/// Metrics as rows, one column per named method.
pub fn metric_table(columns: &[(String, MetricSet<f64>)]) -> Table {
    let mut table = Table::new(std::iter::once("Metric").chain(columns.iter().map(|(m, _)| m.as_str())));
    let rows: [(&str, MetricGetter); 4] = [
        ("Recall", |s| s.recall),
        ("Precision", |s| s.precision),
        ("Accuracy", |s| s.accuracy),
        ("F-measure", |s| s.fmeasure),
    ];
    for (name, get) in rows {
        table.push_row(std::iter::once(name.to_string()).chain(columns.iter().map(|(_, s)| fmt_value(get(s), 3))));
    }
    table
}

/// Rows of named values under one column per method.
pub fn series_table(first: &str, methods: &[String], rows: &[(String, Vec<Option<f64>>)], decimals: usize) -> Table {
    let mut table = Table::new(std::iter::once(first).chain(methods.iter().map(String::as_str)));
    for (name, values) in rows {
        table.push_row(std::iter::once(name.clone()).chain(values.iter().map(|v| fmt_value(*v, decimals))));
    }
    table
}

/// One row per dataset with each method's F-measure.
pub fn fmeasure_table(methods: &[String], datasets: &[(String, Vec<Option<f64>>)]) -> Table {
    series_table("Dataset", methods, datasets, 3)
}

/// Pairwise agreement in percent with row and column averages. The
/// diagonal is left blank.
pub fn agreement_table(matrix: &AgreementMatrix, mode: AgreementMode) -> Table {
    let n = matrix.methods.len();
    let mut table = Table::new(
        std::iter::once("Method")
            .chain(matrix.methods.iter().map(|m| m.display_name()))
            .chain(std::iter::once("Average")),
    );
    for i in 0..n {
        let mut row = vec![matrix.methods[i].display_name().to_string()];
        for j in 0..n {
            row.push(if i == j {
                "-".to_string()
            } else {
                fmt_percent(matrix.agreement(i, j, mode))
            });
        }
        row.push(fmt_percent(matrix.row_average(i, mode)));
        table.push_row(row);
    }
    let mut footer = vec!["Average".to_string()];
    for j in 0..n {
        let values: Vec<f64> = (0..n).filter(|&i| i != j).filter_map(|i| matrix.agreement(i, j, mode)).collect();
        let avg = (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64);
        footer.push(fmt_percent(avg));
    }
    footer.push("-".to_string());
    table.push_row(footer);
    table
}

pub fn coverage_table(rows: &[(String, f64)]) -> Table {
    let mut table = Table::new(["Method", "Coverage"]);
    for (name, cov) in rows {
        table.push_row([name.clone(), fmt_value(Some(*cov), 4)]);
    }
    table
}

/// Positive-minus-negative fraction per method and corpus.
pub fn polarity_delta_table(methods: &[String], series: &[(String, Vec<Option<f64>>)]) -> Table {
    series_table("Corpus", methods, series, 4)
}

pub fn tradeoff_table(points: &[TradeoffPoint]) -> Table {
    let mut table = Table::new(["Methods", "Added", "Coverage", "F-measure"]);
    for p in points {
        table.push_row([
            p.prefix_size.to_string(),
            p.added.display_name().to_string(),
            fmt_value(Some(p.coverage), 4),
            fmt_value(p.fmeasure, 3),
        ]);
    }
    table
}
