use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "invgal-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Unknown,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Unknown => "unknown",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Unknown => 2,
        }
    }
}

pub struct Report {
    pub status: Status,
    pub result: Value,
    pub tsv: Option<Tsv>,
}

impl Report {
    pub fn ok(result: Value) -> Self {
        Report {
            status: Status::Ok,
            result,
            tsv: None,
        }
    }

    pub fn with_tsv(mut self, tsv: Tsv) -> Self {
        self.tsv = Some(tsv);
        self
    }
}

pub fn envelope(command: &str, config: Value, status: Status, result: Value) -> String {
    let doc = json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "status": status.as_str(),
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("reports are plain JSON");
    text.push('\n');
    text
}

/// Tab-separated table; cells have tabs and newlines replaced by spaces.
pub struct Tsv {
    lines: Vec<String>,
}

impl Tsv {
    pub fn new(header: &[&str]) -> Self {
        Tsv {
            lines: vec![header.join("\t")],
        }
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let cells: Vec<String> = cells.into_iter().map(|c| c.replace(['\t', '\n'], " ")).collect();
        self.lines.push(cells.join("\t"));
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}
