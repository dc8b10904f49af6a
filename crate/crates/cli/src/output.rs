//! Rendering of reports as text, CSV or JSON, to standard output or a file.

use std::env;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use quadwalk::asymptotics::{Comparison, Growth, Outcome, DISPLAY_DIGITS, PRECISION_BITS};
use quadwalk::enumerator::{Aggregate, WalkTable};
use quadwalk::kernel::{Involution, Orbit};
use quadwalk::series::TSeries;
use quadwalk::stepsets::{CriterionReport, StepSet};
use quadwalk::verify::VerifyReport;
use serde::{Deserialize, Serialize};

use crate::{CliResult, OutputArgs};

/// Digits after the point in the text table of extrapolants.
const TABLE_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub type Rows = (Vec<&'static str>, Vec<Vec<String>>);

pub trait Emit: Serialize {
    fn text(&self) -> String;
    fn rows(&self) -> Rows;

    fn emit(&self, out: &OutputArgs) -> CliResult<()> {
        let body = match out.format {
            Format::Text => self.text(),
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => {
                let (header, rows) = self.rows();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&header)?;
                for r in rows {
                    w.write_record(&r)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8")
            }
        };
        match &out.output {
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(body.as_bytes())?;
                stdout.flush()?;
            }
            Some(path) => fs::write(resolve(path), body)?,
        }
        Ok(())
    }
}

/// Relative paths go under `$QUADWALK_OUTPUT_DIR` when it is set.
fn resolve(path: &PathBuf) -> PathBuf {
    match env::var_os("QUADWALK_OUTPUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub n: usize,
    pub i: i32,
    pub j: i32,
    pub count: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub steps: StepSet,
    pub start: (i32, i32),
    pub max_len: usize,
    pub aggregate: Option<Aggregate>,
    /// Per-length totals when aggregating.
    pub counts: Option<Vec<String>>,
    /// Nonzero cells otherwise.
    pub cells: Option<Vec<Cell>>,
}

impl EnumerateReport {
    pub fn new(table: &WalkTable, aggregate: Option<Aggregate>) -> CliResult<Self> {
        let (counts, cells) = match aggregate {
            Some(kind) => (Some(table.aggregate(kind)?.iter().map(|c| c.to_string()).collect()), None),
            None => {
                let mut cells = Vec::new();
                for n in 0..=table.max_len() {
                    for (i, j, c) in table.layer(n).iter() {
                        if c.bits() > 0 {
                            cells.push(Cell { n, i, j, count: c.to_string() });
                        }
                    }
                }
                (None, Some(cells))
            }
        };
        Ok(EnumerateReport {
            steps: table.steps().clone(),
            start: table.start(),
            max_len: table.max_len(),
            aggregate,
            counts,
            cells,
        })
    }
}

impl Emit for EnumerateReport {
    fn text(&self) -> String {
        if let Some(counts) = &self.counts {
            return counts.join(",") + "\n";
        }
        let mut out = String::new();
        let cells = self.cells.as_deref().unwrap_or_default();
        for n in 0..=self.max_len {
            let row: Vec<String> =
                cells.iter().filter(|c| c.n == n).map(|c| format!("({},{})={}", c.i, c.j, c.count)).collect();
            out += &format!("n={n}: {}\n", row.join(" "));
        }
        out
    }

    fn rows(&self) -> Rows {
        let header = vec!["n", "i", "j", "count"];
        if let Some(counts) = &self.counts {
            let (i, j) = match self.aggregate {
                Some(Aggregate::Endpoint(i, j)) => (i.to_string(), j.to_string()),
                Some(Aggregate::Origin) => ("0".into(), "0".into()),
                Some(Aggregate::XAxis) => (String::new(), "0".into()),
                _ => (String::new(), String::new()),
            };
            let rows = counts.iter().enumerate().map(|(n, c)| vec![n.to_string(), i.clone(), j.clone(), c.clone()]);
            return (header, rows.collect());
        }
        let cells = self.cells.as_deref().unwrap_or_default();
        (header, cells.iter().map(|c| vec![c.n.to_string(), c.i.to_string(), c.j.to_string(), c.count.clone()]).collect())
    }
}

impl Emit for VerifyReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let order = match c.order {
                Some(n) => format!("through t^{n}"),
                None => "nothing checkable".into(),
            };
            out += &format!("{status} {} ({order})", c.name);
            if let Some(note) = &c.note {
                out += &format!(": {note}");
            }
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out += &if failed == 0 {
            format!("{}: all {} checks passed at order {}\n", self.model, self.checks.len(), self.order)
        } else {
            format!("{}: {failed} of {} checks failed at order {}\n", self.model, self.checks.len(), self.order)
        };
        out
    }

    fn rows(&self) -> Rows {
        let rows = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    c.order.map(|n| n.to_string()).unwrap_or_default(),
                    c.passed.to_string(),
                    c.note.clone().unwrap_or_default(),
                ]
            })
            .collect();
        (vec!["name", "order", "passed", "note"], rows)
    }
}

fn series_rows(s: &TSeries, prefix: &[String]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for (n, poly) in s.iter() {
        for (&(i, j), c) in poly.terms() {
            let mut r = prefix.to_vec();
            r.extend([n.to_string(), i.to_string(), j.to_string(), c.to_string()]);
            rows.push(r);
        }
    }
    rows
}

impl Emit for TSeries {
    fn text(&self) -> String {
        format!("{self}\n")
    }

    fn rows(&self) -> Rows {
        (vec!["n", "i", "j", "c"], series_rows(self, &[]))
    }
}

fn origin_label(p: Option<Involution>) -> &'static str {
    match p {
        None => "start",
        Some(Involution::Phi) => "phi",
        Some(Involution::Psi) => "psi",
    }
}

impl Emit for Orbit {
    fn text(&self) -> String {
        let mut out = format!("{} pairs{}\n", self.pairs.len(), if self.closed { "" } else { " (not closed)" });
        for (k, p) in self.pairs.iter().enumerate() {
            let sub = if p.substitutable { "substitutable" } else { "not substitutable" };
            out += &format!("pair {k} ({}, {sub})\n  X = {}\n  Y = {}\n", origin_label(p.produced_by), p.x, p.y);
        }
        out
    }

    fn rows(&self) -> Rows {
        let mut rows = Vec::new();
        for (k, p) in self.pairs.iter().enumerate() {
            rows.extend(series_rows(&p.x, &[k.to_string(), "X".into()]));
            rows.extend(series_rows(&p.y, &[k.to_string(), "Y".into()]));
        }
        (vec!["pair", "coordinate", "n", "i", "j", "c"], rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutput {
    pub steps: StepSet,
    pub report: CriterionReport,
}

impl CriterionOutput {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let r = &self.report;
        let poly = |p: &Option<quadwalk::series::LaurentPoly>| p.as_ref().map(|p| p.to_string()).unwrap_or_default();
        vec![
            ("steps", self.steps.to_string()),
            ("y_symmetric", r.y_symmetric.to_string()),
            ("small_horizontal", r.small_horizontal.to_string()),
            ("holonomy_sufficient", r.holonomy_sufficient.to_string()),
            ("p0", poly(&r.p0)),
            ("p1", poly(&r.p1)),
        ]
    }
}

impl Emit for CriterionOutput {
    fn text(&self) -> String {
        self.fields().iter().filter(|(_, v)| !v.is_empty()).map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    fn rows(&self) -> Rows {
        (vec!["field", "value"], self.fields().into_iter().map(|(k, v)| vec![k.to_string(), v]).collect())
    }
}

fn growth_label(g: &Growth) -> String {
    match g {
        Growth::Vanishing => "eventually zero".into(),
        Growth::Power { mu_base, mu_root, alpha } => {
            let mu = if *mu_root == 1 { mu_base.to_string() } else { format!("({mu_base})^(1/{mu_root})") };
            format!("mu = {mu}, alpha = {alpha}")
        }
    }
}

impl Emit for Comparison {
    fn text(&self) -> String {
        let t = &self.target;
        let mut out = format!("{} {} up to n = {}\ntarget: {}\n", t.model, self.aggregate, self.max_n, growth_label(&t.growth));
        match &self.outcome {
            Outcome::Fitted { fit, mu_target, mu_rel_error, alpha_error, windows, improving } => {
                out += &format!(
                    "precision: {DISPLAY_DIGITS} decimal digits ({PRECISION_BITS}-bit fixed point); table to {TABLE_DIGITS}\n"
                );
                out += &format!("mu    = {}  (target {mu_target})\n", fit.mu);
                out += &format!("alpha = {}\n", fit.alpha);
                out += &format!("relative error in mu = {mu_rel_error:.12}, error in alpha = {alpha_error:.12}\n");
                out += &format!(
                    "indices {} mod {} (support period {}), {} terms, Richardson depth {}\n",
                    fit.offset, fit.step, fit.period, fit.terms_used, fit.depth
                );
                for w in windows {
                    out += &format!(
                        "window n <= {}: mu error {:.12}, alpha error {:.12}\n",
                        w.n_max, w.mu_rel_error, w.alpha_error
                    );
                }
                out += &format!("errors shrink across windows: {improving}\n");
                out += "n mu_n alpha_n\n";
                for r in &fit.table {
                    let alpha = r.alpha_n.as_ref().map(|a| a.to_decimal(TABLE_DIGITS)).unwrap_or_else(|| "-".into());
                    out += &format!("{} {} {alpha}\n", r.n, r.mu_n.to_decimal(TABLE_DIGITS));
                }
            }
            Outcome::Vanishing { nonzero_at, nonzero_counts, expected_nonzero_at, matches } => {
                out += &format!(
                    "nonzero at n = {nonzero_at:?} (counts {nonzero_counts:?}), expected {expected_nonzero_at:?}: {}\n",
                    if *matches { "as expected" } else { "MISMATCH" }
                );
            }
        }
        out
    }

    fn rows(&self) -> Rows {
        let header = vec!["n", "a_n", "mu_n", "alpha_n"];
        let rows = match &self.outcome {
            Outcome::Fitted { fit, .. } => fit
                .table
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.a_n.to_string(),
                        r.mu_n.to_string(),
                        r.alpha_n.as_ref().map(|a| a.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
            Outcome::Vanishing { nonzero_at, nonzero_counts, .. } => nonzero_at
                .iter()
                .zip(nonzero_counts)
                .map(|(n, c)| vec![n.to_string(), c.clone(), String::new(), String::new()])
                .collect(),
        };
        (header, rows)
    }
}
