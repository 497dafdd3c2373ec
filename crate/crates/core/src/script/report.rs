use std::fmt::Write;

use serde_json::{Map, Value as Json};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    InputError,
    Aborted,
    Precondition,
}

impl Status {
    pub fn of(e: &Error) -> Status {
        match e {
            Error::Aborted { .. } => Status::Aborted,
            Error::Precondition(_) => Status::Precondition,
            _ => Status::InputError,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InputError => "input_error",
            Status::Aborted => "aborted",
            Status::Precondition => "precondition_violated",
        }
    }

    /// Process exit code: 0 ok, 1 input error, 2 resource abort, 3 precondition violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::Aborted => 2,
            Status::Precondition => 3,
        }
    }
}

/// Outcome of one statement.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Option<String>,
    pub field: Option<String>,
    pub ring: Option<String>,
    pub status: Status,
    pub result: Json,
    pub stats: Option<Json>,
}

impl Report {
    /// A report for an error raised before any statement ran.
    pub fn failure(command: Option<String>, e: &Error) -> Report {
        let mut m = Map::new();
        m.insert("error".into(), Json::String(e.to_string()));
        if let Error::Syntax { line, column, message } = e {
            m.insert("column".into(), Json::from(*column));
            m.insert("line".into(), Json::from(*line));
            m.insert("message".into(), Json::String(message.clone()));
        }
        Report {
            command,
            field: None,
            ring: None,
            status: Status::of(e),
            result: Json::Object(m),
            stats: None,
        }
    }

    pub fn to_json(&self) -> Json {
        let opt = |s: &Option<String>| s.clone().map_or(Json::Null, Json::String);
        let mut m = Map::new();
        m.insert("command".into(), opt(&self.command));
        m.insert("field".into(), opt(&self.field));
        m.insert("ring".into(), opt(&self.ring));
        m.insert("result".into(), self.result.clone());
        m.insert("stats".into(), self.stats.clone().unwrap_or(Json::Null));
        m.insert("status".into(), Json::String(self.status.as_str().into()));
        Json::Object(m)
    }

    /// One compact JSON line.
    pub fn json_line(&self) -> String {
        self.to_json().to_string()
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.command {
            Some(c) => writeln!(out, "> {c}").unwrap(),
            None => writeln!(out, "> (script)").unwrap(),
        }
        if self.status != Status::Ok {
            writeln!(out, "  status: {}", self.status.as_str()).unwrap();
        }
        if let Json::Object(m) = &self.result {
            for (k, v) in m {
                render(&mut out, k, v, 1);
            }
        }
        if let Some(Json::Object(s)) = &self.stats {
            let parts: Vec<String> = s.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "  stats: {}", parts.join(" ")).unwrap();
        }
        out
    }
}

fn scalar(v: &Json) -> Option<String> {
    match v {
        Json::String(s) => Some(s.clone()),
        Json::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Json::Array(_) | Json::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn render(out: &mut String, key: &str, v: &Json, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        writeln!(out, "{pad}{key}: {s}").unwrap();
        return;
    }
    writeln!(out, "{pad}{key}:").unwrap();
    match v {
        Json::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render(out, &format!("[{}]", i + 1), x, depth + 1);
            }
        }
        Json::Object(m) => {
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}
