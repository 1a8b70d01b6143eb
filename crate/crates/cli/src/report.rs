//! Report envelope, error reporting and the text rendering.

use std::io::Write;
use std::process::ExitCode;

use bjlevel::Mode;
use serde_json::{json, Map, Value as Json};

pub struct Report {
    pub command: String,
    pub inputs: Json,
    pub result: Json,
    pub mode: Mode,
    pub tolerance: f64,
    pub seed: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> Json {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("inputs".into(), self.inputs.clone());
        obj.insert("result".into(), self.result.clone());
        obj.insert("arithmetic_mode".into(), json!(self.mode.as_str()));
        if self.mode == Mode::Float {
            obj.insert("tolerance".into(), json!(self.tolerance));
        }
        obj.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
        obj.insert("seed".into(), json!(self.seed));
        Json::Object(obj)
    }

    pub fn print(&self, text: bool) {
        let body = if text {
            let mut lines = Vec::new();
            render(&self.to_json(), "", &mut lines);
            lines.join("\n")
        } else {
            serde_json::to_string(&self.to_json()).expect("reports serialize")
        };
        // A closed pipe (e.g. `| head`) is not an error for a report writer.
        let _ = writeln!(std::io::stdout(), "{body}");
    }
}

pub enum Failure {
    Input { code: String, message: String },
    Internal(String),
    Regression(Box<Report>),
}

impl Failure {
    pub fn input(code: &str, message: String) -> Self {
        Failure::Input {
            code: code.into(),
            message,
        }
    }

    pub fn regression(report: Report) -> Self {
        Failure::Regression(Box::new(report))
    }

    pub fn emit(self, text: bool) -> ExitCode {
        let (code, message, exit) = match self {
            Failure::Regression(report) => {
                report.print(text);
                return ExitCode::from(1);
            }
            Failure::Input { code, message } => (code, message, 2),
            Failure::Internal(message) => ("internal".to_string(), message, 3),
        };
        if text {
            eprintln!("error[{code}]: {message}");
        } else {
            println!("{}", json!({"error": {"code": code, "message": message}}));
        }
        ExitCode::from(exit)
    }
}

impl From<bjlevel::Error> for Failure {
    fn from(e: bjlevel::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::input(e.code(), e.to_string())
        }
    }
}

/// Flattens JSON into `path: value` lines; arrays of scalars stay inline.
fn render(v: &Json, path: &str, out: &mut Vec<String>) {
    let scalar_array = |a: &[Json]| a.iter().all(|e| !e.is_object() && !e.is_array());
    match v {
        Json::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                render(child, &p, out);
            }
        }
        Json::Array(items) if !scalar_array(items) => {
            for (i, child) in items.iter().enumerate() {
                render(child, &format!("{path}[{i}]"), out);
            }
        }
        Json::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push(format!("{path}: ({})", parts.join(", ")));
        }
        other => out.push(format!("{path}: {}", scalar_text(other))),
    }
}

fn scalar_text(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => "-".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn internal_errors_map_to_exit_3() {
        let f = Failure::from(bjlevel::Error::Internal("scale mismatch".into()));
        assert!(matches!(f, Failure::Internal(_)));
        let f = Failure::from(bjlevel::Error::NotUnitVector);
        assert!(matches!(f, Failure::Input { ref code, .. } if code == "not_unit_vector"));
    }

    #[test]
    fn text_rendering_flattens() {
        let mut lines = Vec::new();
        render(
            &json!({"a": {"b": [1, 2]}, "c": [{"d": null}]}),
            "",
            &mut lines,
        );
        assert_eq!(lines, ["a.b: (1, 2)", "c[0].d: -"]);
    }
}
