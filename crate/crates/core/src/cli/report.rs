use serde::Serialize;

use crate::glie::Check;

/// A titled table; `truncation` records the degree window and block bounds
/// the values were computed on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub truncation: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, truncation: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            truncation: truncation.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, out: &mut String) {
        out.push_str(&format!("{} [{}]\n", self.name, self.truncation));
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("  {}\n", parts.join("  ").trim_end())
        };
        out.push_str(&line(&self.columns));
        for r in &self.rows {
            out.push_str(&line(r));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: String,
    pub fingerprint: String,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(fingerprint: impl Into<String>) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            fingerprint: fingerprint.into(),
            checks: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("version {}\nfingerprint {}\n", self.version, self.fingerprint);
        if !self.checks.is_empty() {
            out.push_str("checks\n");
            let w = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            for c in &self.checks {
                let pad = " ".repeat(w - c.name.chars().count());
                let status = if c.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("  {}{pad}  {status}", c.name));
                if !c.details.is_empty() {
                    out.push_str(&format!("  {}", c.details));
                }
                if let Some(wit) = &c.witness {
                    out.push_str(&format!("  witness: {}", wit.join(", ")));
                }
                out.push('\n');
            }
        }
        for t in &self.tables {
            out.push('\n');
            t.render(&mut out);
        }
        out
    }
}
