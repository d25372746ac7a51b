//! Deterministic CSV rendering: `#`-prefixed self-describing header, one
//! header row, rows in grid order, scientific notation with 17 significant
//! digits, and a trailing per-row status column.

pub struct CsvDoc {
    /// `key = value` lines echoed into the comment header (pre-sorted).
    pub header: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Result<Vec<f64>, String>>,
    /// `key = value` lines appended after the data (derived results).
    pub footer: Vec<(String, String)>,
}

fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn sanitize(msg: &str) -> String {
    msg.replace(['\n', '\r'], " ").replace(',', ";")
}

impl CsvDoc {
    pub fn render(&self, command: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("# blockade {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("# command = {command}\n"));
        for (k, v) in &self.header {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push_str(",status\n");
        for row in &self.rows {
            match row {
                Ok(values) => {
                    debug_assert_eq!(values.len(), self.columns.len());
                    let cells: Vec<String> = values.iter().map(|&v| fmt_value(v)).collect();
                    out.push_str(&cells.join(","));
                    out.push_str(",ok\n");
                }
                Err(msg) => {
                    // Keep the row count: pad the numeric cells with nan.
                    let cells: Vec<String> =
                        (0..self.columns.len()).map(|_| "nan".to_string()).collect();
                    out.push_str(&cells.join(","));
                    out.push_str(&format!(",error: {}\n", sanitize(msg)));
                }
            }
        }
        for (k, v) in &self.footer {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out
    }

    pub fn any_row_failed(&self) -> bool {
        self.rows.iter().any(|r| r.is_err())
    }
}
