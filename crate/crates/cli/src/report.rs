//! Output of one command: human text or a JSON envelope
//! `{"command": …, "status": "ok" | "negative" | "error", …}`.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Negative => "negative",
        }
    }
}

pub struct Report {
    pub status: Status,
    /// Printed as is in text mode; should end with a newline.
    pub text: String,
    /// Command-specific fields merged into the envelope.
    pub fields: Map<String, Value>,
}

impl Report {
    pub fn ok(text: impl Into<String>, fields: Value) -> Self {
        Self::new(Status::Ok, text, fields)
    }

    pub fn negative(text: impl Into<String>, fields: Value) -> Self {
        Self::new(Status::Negative, text, fields)
    }

    /// Output already went to stdout; only the status remains.
    pub fn streamed(status: Status) -> Self {
        Self::new(status, String::new(), json!({}))
    }

    fn new(status: Status, text: impl Into<String>, fields: Value) -> Self {
        let fields = match fields {
            Value::Object(map) => map,
            other => panic!("report fields must be an object, got {other}"),
        };
        Report {
            status,
            text: text.into(),
            fields,
        }
    }

    pub fn print(&self, command: &str, as_json: bool) {
        if as_json {
            let mut out = envelope(command, self.status.as_str());
            out.extend(self.fields.clone());
            println!("{}", Value::Object(out));
        } else {
            print!("{}", self.text);
        }
    }
}

fn envelope(command: &str, status: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    m.insert("status".into(), status.into());
    m
}

pub fn print_error(command: &str, err: &anyhow::Error, as_json: bool) {
    let message = format!("{err:#}");
    if as_json {
        let mut out = envelope(command, "error");
        out.insert("error".into(), message.clone().into());
        println!("{}", Value::Object(out));
    }
    eprintln!("error: {message}");
}

pub fn print_usage_error(command: Option<&str>, message: &str) {
    let mut out = Map::new();
    out.insert("command".into(), command.map_or(Value::Null, Value::from));
    out.insert("status".into(), "error".into());
    out.insert("error".into(), message.trim_end().into());
    println!("{}", Value::Object(out));
    eprint!("{message}");
}
