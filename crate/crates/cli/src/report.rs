//! Text and JSON rendering of command results.

use std::io::Write;

use clap::ValueEnum;
use polyharm::families::{AnsatzSystem, FAMILIES};
use polyharm::oracle::ResidualReport;
use polyharm::suite::{LemmaReport, Outcome, SuiteReport};
use polyharm::{Convention, Expr, Geometry, Order};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Fail,
    ExpectedMismatch,
}

pub struct Report {
    format: Format,
    pub status: Status,
    fields: Map<String, Value>,
    text: Vec<String>,
}

fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::ExpectedMismatch => "expected-mismatch",
        Outcome::ExceedsBound => "exceeds-bound",
    }
}

impl Report {
    fn empty(command: &str, format: Format) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        Report { format, status: Status::Ok, fields, text: Vec::new() }
    }

    pub fn new(command: &str, g: &Geometry, format: Format, input: &Expr) -> Self {
        let mut r = Self::empty(command, format);
        r.fields.insert("geometry".into(), json!(g.id()));
        r.fields.insert("convention".into(), json!(g.convention().name()));
        r.fields.insert("input".into(), json!(input.to_string()));
        r.text.push(format!("geometry: {} ({} convention)", g.id(), g.convention().name()));
        r.text.push(format!("input: {input}"));
        r
    }

    pub fn extra(mut self, key: &str, value: Value) -> Self {
        let line = match &value {
            Value::String(s) => format!("{}: {s}", key.replace('_', " ")),
            v => format!("{}: {v}", key.replace('_', " ")),
        };
        self.text.push(line);
        self.fields.insert(key.into(), value);
        self
    }

    pub fn chain(mut self, chain: &[Expr]) -> Self {
        let printed: Vec<String> = chain.iter().map(ToString::to_string).collect();
        for (k, e) in printed.iter().enumerate() {
            self.text.push(format!("tau^{k}: {e}"));
        }
        self.fields.insert("chain".into(), json!(printed));
        self
    }

    pub fn order(mut self, order: Order) -> Self {
        self.text.push(format!("order: {order}"));
        self.fields.insert("order".into(), json!(order.as_i64()));
        self.fields.insert("order_text".into(), json!(order.to_string()));
        self
    }

    pub fn residuals(mut self, r: ResidualReport) -> Self {
        self.text.push(format!(
            "residuals: max rel {:.3e}, max abs {:.3e} over {} points (tolerance {:.0e}){}",
            r.max_rel,
            r.max_abs,
            r.points,
            r.tolerance,
            if r.passed { "" } else { " EXCEEDED" }
        ));
        self.fields.insert(
            "residuals".into(),
            json!({
                "max_rel": r.max_rel,
                "max_abs": r.max_abs,
                "points": r.points,
                "tolerance": r.tolerance,
                "passed": r.passed,
                "worst_point": r.worst_point,
            }),
        );
        self
    }

    pub fn listing(format: Format) -> Self {
        let mut r = Self::empty("generate", format);
        let mut list = Vec::new();
        for d in FAMILIES {
            r.text.push(format!("{:<16} {:<8} [{}] {}", d.id, d.geometry, d.params.join(","), d.summary));
            list.push(json!({"id": d.id, "geometry": d.geometry, "params": d.params, "summary": d.summary}));
        }
        r.fields.insert("families".into(), json!(list));
        r
    }

    pub fn ansatz(g: &Geometry, format: Format, sys: &AnsatzSystem, kernel: &[Expr]) -> Self {
        let basis: Vec<String> = sys.basis().iter().map(ToString::to_string).collect();
        let rows = |m: &polyharm::ExactMatrix| -> Vec<Vec<String>> {
            m.row_vecs().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
        };
        let primitive = sys.primitive_rows();
        let kernel: Vec<String> = kernel.iter().map(|f| polyharm::families::primitive_expr(f).to_string()).collect();
        let mut r = Self::empty("generate", format);
        r.fields.insert("geometry".into(), json!(g.id()));
        r.fields.insert("convention".into(), json!(g.convention().name()));
        r.fields.insert("input".into(), json!(basis.join(", ")));
        r.fields.insert("order".into(), json!(sys.order()));
        r.fields.insert("basis".into(), json!(basis));
        r.fields.insert("matrix".into(), json!(rows(sys.matrix())));
        r.fields.insert("primitive_matrix".into(), json!(rows(&primitive)));
        r.fields.insert("kernel".into(), json!(kernel));
        r.text.push(format!("geometry: {}", g.id()));
        r.text.push(format!("basis: {}", basis.join(", ")));
        r.text.push(format!("system (tau^{}, rows scaled to primitive integers):", sys.order()));
        for row in rows(&primitive) {
            r.text.push(format!("  [{}]", row.join(", ")));
        }
        if kernel.is_empty() {
            r.text.push("kernel: empty".into());
        } else {
            r.text.push(format!("kernel (dimension {}):", kernel.len()));
            for f in &kernel {
                r.text.push(format!("  {f}"));
            }
        }
        r
    }

    pub fn lemma(format: Format, convention: Convention, rep: &LemmaReport) -> Self {
        let mut r = Self::empty("lemma-check", format);
        r.fields.insert("convention".into(), json!(convention.name()));
        r.fields.insert("geometry".into(), json!(["product:h2xline", "product:linexline"]));
        r.fields.insert("report".into(), serde_json::to_value(rep).expect("serializable"));
        r.text.push(rep.summary());
        for w in &rep.counterexamples {
            r.text.push(format!("counterexample on {} at n = {}: f1 = {}, f2 = {}", w.product, w.n, w.f1, w.f2));
            r.text.push(format!("  direct:    {}", w.direct));
            r.text.push(format!("  expansion: {}", w.expansion));
        }
        if !rep.passed() {
            r.status = Status::Fail;
        }
        r
    }

    pub fn suite(format: Format, rep: &SuiteReport) -> Self {
        let mut r = Self::empty("verify-paper", format);
        r.fields.insert("identities".into(), serde_json::to_value(&rep.entries).expect("serializable"));
        for e in &rep.entries {
            let conv = e.convention.map(|c| format!(" [{}]", c.name())).unwrap_or_default();
            r.text.push(format!("{:<18} {}{conv}: {}", outcome_label(e.outcome), e.anchor, e.detail));
        }
        r.text.push(format!(
            "{} passed, {} failed, {} expected mismatches, {} beyond the order bound",
            rep.count(Outcome::Pass),
            rep.count(Outcome::Fail),
            rep.count(Outcome::ExpectedMismatch),
            rep.count(Outcome::ExceedsBound)
        ));
        for f in rep.failures() {
            r.text.push(format!("failed: {}", f.anchor));
        }
        if !rep.passed() {
            r.status = Status::Fail;
        }
        r
    }

    /// Writes to stdout; a closed pipe (`| head`) is not an error.
    pub fn print(&self) {
        let mut out = std::io::stdout().lock();
        let _ = match self.format {
            Format::Text => self
                .text
                .iter()
                .try_for_each(|line| writeln!(out, "{line}"))
                .and_then(|()| {
                    let status = serde_json::to_value(self.status).expect("serializable");
                    writeln!(out, "status: {}", status.as_str().unwrap_or(""))
                }),
            Format::Json => {
                let mut fields = self.fields.clone();
                fields.insert("status".into(), json!(self.status));
                writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(fields)).expect("serializable"))
            }
        };
    }
}
