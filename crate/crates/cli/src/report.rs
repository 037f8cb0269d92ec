//! Report rendering: human-readable text, CSV, and a line-based structured
//! format that round-trips through serde.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Records,
}

/// One verified instance inside a suite: the inputs, both sides, and the
/// verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub suite: String,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: bool,
}

/// Output of one job: the rule tag of the formula used, the parsed inputs,
/// the result values, and (for verify suites) the per-instance records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub rule: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<VerifyRecord>,
}

impl Report {
    pub fn new(rule: &str) -> Self {
        Report {
            rule: rule.to_string(),
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn output(mut self, key: &str, value: impl ToString) -> Self {
        self.outputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn all_verdicts_hold(&self) -> bool {
        self.records.iter().all(|r| r.verdict)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Records => self.render_records(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if self.records.is_empty() {
            // The primary value prints bare; auxiliary outputs (structured
            // coefficient encodings) appear only in csv/records.
            if let Some((_, v)) = self.outputs.iter().find(|(k, _)| k == "value") {
                out.push_str(v);
                out.push('\n');
            } else {
                for (k, v) in &self.outputs {
                    out.push_str(&format!("{} = {}\n", k, v));
                }
            }
        } else {
            let failed: Vec<&VerifyRecord> =
                self.records.iter().filter(|r| !r.verdict).collect();
            out.push_str(&format!(
                "suite={} checked={} failed={}\n",
                self.rule.trim_start_matches("verify-"),
                self.records.len(),
                failed.len()
            ));
            for r in failed {
                out.push_str(&format!(
                    "FAIL {} | lhs={} rhs={}\n",
                    r.inputs, r.lhs, r.rhs
                ));
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if self.records.is_empty() {
            let mut header: Vec<String> = vec!["rule".into()];
            let mut row: Vec<String> = vec![self.rule.clone()];
            for (k, v) in &self.inputs {
                header.push(k.clone());
                row.push(v.clone());
            }
            for (k, v) in &self.outputs {
                header.push(k.clone());
                row.push(v.clone());
            }
            out.push_str(&csv_line(&header));
            out.push_str(&csv_line(&row));
        } else {
            out.push_str(&csv_line(&[
                "suite".into(),
                "inputs".into(),
                "lhs".into(),
                "rhs".into(),
                "verdict".into(),
            ]));
            for r in &self.records {
                out.push_str(&csv_line(&[
                    r.suite.clone(),
                    r.inputs.clone(),
                    r.lhs.clone(),
                    r.rhs.clone(),
                    r.verdict.to_string(),
                ]));
            }
        }
        out
    }

    fn render_records(&self) -> String {
        let mut out = String::new();
        if self.records.is_empty() {
            out.push_str(&serde_json::to_string(self).expect("report serializes"));
            out.push('\n');
        } else {
            for r in &self.records {
                out.push_str(&serde_json::to_string(r).expect("record serializes"));
                out.push('\n');
            }
        }
        out
    }
}

fn csv_field(v: &str) -> String {
    if v.contains(',') || v.contains('"') || v.contains('\n') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let cooked: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    format!("{}\n", cooked.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let report = Report::new("f")
            .input("n", 1)
            .output("value", "q - 2");
        let line = report.render(Format::Records);
        let back: Report = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(back, report);

        let rec = VerifyRecord {
            suite: "green".into(),
            inputs: "M=(0,1);N=0".into(),
            lhs: "1/2".into(),
            rhs: "1/2".into(),
            verdict: true,
        };
        let line = serde_json::to_string(&rec).unwrap();
        let back: VerifyRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn csv_quotes_commas() {
        let report = Report::new("normal-form")
            .input("raw", "1,2,3;0")
            .output("value", "1,2,3;0");
        let csv = report.render(Format::Csv);
        assert!(csv.contains("\"1,2,3;0\""));
    }
}
