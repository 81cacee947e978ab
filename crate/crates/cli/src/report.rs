use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    /// Hash of the graph's vertex count and edge multiset.
    pub id: String,
    pub source: String,
    pub command: &'static str,
    pub params: Value,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Short human summary, also the TSV detail column.
    pub detail: String,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(records: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.outcome {
                Outcome::Pass => summary.pass += 1,
                Outcome::Fail => summary.fail += 1,
                Outcome::Skip => summary.skip += 1,
            }
        }
        Report { records, summary }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id\tcommand\toutcome\tdetail\n");
        for r in &self.records {
            let detail = match &r.reason {
                Some(reason) if !r.detail.is_empty() => format!("{reason}; {}", r.detail),
                Some(reason) => reason.clone(),
                None => r.detail.clone(),
            };
            let detail = detail.replace(['\t', '\n'], " ");
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.id, r.command, r.outcome.as_str(), detail));
        }
        out
    }
}
