//! Artifact assembly: typed tables rendered as CSV with `#` headers or as one JSON object.

use crate::config::{Format, RunConfig};
use bilap_core::coefficients::{LedgerEntry, Sigma};
use bilap_core::fmt::fmt_f;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Num(f64),
    Int(i64),
    Bool(bool),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Num(x) => fmt_f(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => "NA".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Num(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Missing => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.into())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map(Into::into).unwrap_or(Cell::Missing)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(
            row.len(),
            self.columns.len(),
            "row width in table {}",
            self.name
        );
        self.rows.push(row);
    }
}

/// One command's output.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub sigma: Sigma,
    pub extra_header: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub ledger: Vec<LedgerEntry>,
    /// Human-readable lines, also echoed to standard error.
    pub summary: Vec<String>,
}

impl Artifact {
    pub fn new(sigma: Sigma) -> Self {
        Self {
            sigma,
            extra_header: vec![],
            tables: vec![],
            ledger: vec![],
            summary: vec![],
        }
    }

    pub fn header(&mut self, key: &str, value: impl ToString) {
        self.extra_header.push((key.into(), value.to_string()));
    }

    pub fn render(&self, cfg: &RunConfig) -> Result<String, String> {
        match cfg.format {
            Format::Csv => self.render_csv(cfg),
            Format::Json => self.render_json(cfg),
        }
    }

    fn render_csv(&self, cfg: &RunConfig) -> Result<String, String> {
        let mut out = String::new();
        for line in cfg.header_lines(self.sigma, &self.extra_header) {
            out.push_str(&format!("# {line}\n"));
        }
        for line in &self.summary {
            out.push_str(&format!("# summary: {line}\n"));
        }
        let mut tables: Vec<&Table> = self.tables.iter().collect();
        let ledger = ledger_table(&self.ledger);
        if !self.ledger.is_empty() {
            tables.push(&ledger);
        }
        for (i, t) in tables.iter().enumerate() {
            if i > 0 {
                // two blank lines separate gnuplot data blocks
                out.push_str("\n\n");
            }
            out.push_str(&format!("# table: {}\n", t.name));
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(vec![]);
            w.write_record(&t.columns).map_err(|e| e.to_string())?;
            for r in &t.rows {
                w.write_record(r.iter().map(Cell::csv))
                    .map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            out.push_str(&String::from_utf8(bytes).map_err(|e| e.to_string())?);
        }
        Ok(out)
    }

    fn render_json(&self, cfg: &RunConfig) -> Result<String, String> {
        let mut config = serde_json::to_value(cfg).map_err(|e| e.to_string())?;
        if let Value::Object(m) = &mut config {
            m.insert(
                "sigma_used".into(),
                json!(if self.sigma.value() > 0 { "+1" } else { "-1" }),
            );
            for (k, v) in &self.extra_header {
                m.insert(k.clone(), json!(v));
            }
        }
        let mut results = Map::new();
        for t in &self.tables {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    Value::Object(
                        t.columns
                            .iter()
                            .cloned()
                            .zip(r.iter().map(Cell::json))
                            .collect(),
                    )
                })
                .collect();
            results.insert(t.name.clone(), Value::Array(rows));
        }
        if !self.summary.is_empty() {
            results.insert("summary".into(), json!(self.summary));
        }
        let ledger: Vec<Value> = self
            .ledger
            .iter()
            .map(|e| {
                json!({
                    "symbol": e.symbol,
                    "location": e.location,
                    "printed": e.printed,
                    "oracle": e.oracle,
                    "verdict": e.verdict.label(),
                    "note": e.note,
                })
            })
            .collect();
        let doc = json!({ "config": config, "results": results, "ledger": ledger });
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
        s.push('\n');
        Ok(s)
    }

    /// A plain-text gnuplot script: every floating column of a table against
    /// its abscissa (`t`, `r`, `s_f64` or `a_over_a0`); tables without one are skipped.
    pub fn gnuplot_script(&self, data: &Path) -> String {
        let mut s = String::from("set datafile separator ','\nset key autotitle columnhead\n");
        for (i, t) in self.tables.iter().enumerate() {
            let Some(x) = ["t", "r", "s_f64", "a_over_a0"]
                .iter()
                .find_map(|name| t.columns.iter().position(|c| c == name))
            else {
                continue;
            };
            let ys: Vec<usize> = (0..t.columns.len())
                .filter(|&c| c != x && t.rows.first().is_some_and(|r| matches!(r[c], Cell::Num(_))))
                .collect();
            if ys.is_empty() {
                continue;
            }
            s.push_str(&format!("# {}\n", t.name));
            let cols: Vec<String> = ys
                .iter()
                .map(|c| {
                    format!(
                        "'{}' index {i} using {}:{} with linespoints",
                        data.display(),
                        x + 1,
                        c + 1
                    )
                })
                .collect();
            s.push_str(&format!("plot {}\npause -1\n", cols.join(", \\\n     ")));
        }
        s
    }
}

pub fn ledger_table(entries: &[LedgerEntry]) -> Table {
    let mut t = Table::new(
        "ledger",
        &["symbol", "location", "printed", "oracle", "verdict", "note"],
    );
    for e in entries {
        t.push(vec![
            e.symbol.clone().into(),
            e.location.clone().into(),
            e.printed.clone().into(),
            e.oracle.clone().into(),
            e.verdict.label().into(),
            e.note.clone().into(),
        ]);
    }
    t
}

/// Writes the artifact to `--out` or standard output.
pub fn emit(art: &Artifact, cfg: &RunConfig) -> Result<(), String> {
    let text = art.render(cfg)?;
    for line in &art.summary {
        eprintln!("{line}");
    }
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            if cfg.gnuplot {
                let gp = path.with_extension("gp");
                std::fs::write(&gp, art.gnuplot_script(path))
                    .map_err(|e| format!("cannot write {}: {e}", gp.display()))?;
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}
