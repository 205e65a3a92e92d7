use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "dmrb-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        let status = if pass { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, detail: detail.into(), data: Value::Null }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Skipped, detail: detail.into(), data: Value::Null }
    }

    /// An engine error inside a check counts as a failure of that check.
    pub fn from_result(name: impl Into<String>, r: dmrb::Result<bool>, detail: impl Into<String>) -> Check {
        match r {
            Ok(b) => Check::new(name, b, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }

    pub fn with_data(mut self, data: Value) -> Check {
        self.data = data;
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Config {
    pub ring: String,
    pub degree: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: Config,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub input: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    /// Checks are ordered by name.
    pub fn new(command: &str, config: Config, input: Value, mut checks: Vec<Check>) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) };
        Report { schema: SCHEMA, command: command.into(), config, input, checks, summary }
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            s.push_str(&format!("{tag:<4}  {}  {}\n", c.name, c.detail));
        }
        s.push_str(&format!(
            "{}: {} pass, {} fail, {} skipped\n",
            self.command, self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        s
    }
}
