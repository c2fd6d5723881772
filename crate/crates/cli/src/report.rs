use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

/// A failed check with where it failed and the offending value.
#[derive(Clone, Debug)]
pub struct Violation {
    pub check: String,
    pub location: String,
    pub value: String,
}

impl Violation {
    pub fn new(check: impl Into<String>, location: impl Into<String>, value: impl ToString) -> Self {
        Violation {
            check: check.into(),
            location: location.into(),
            value: value.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        json!({ "check": self.check, "location": self.location, "value": self.value })
    }
}

/// Output of one command in every format it supports.
pub struct Report {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub body: Map<String, Value>,
    pub text: String,
    pub csv: Option<String>,
    pub latex: Option<String>,
    /// `None` for commands that do not verify anything.
    pub violations: Option<Vec<Violation>>,
}

impl Report {
    pub fn new(command: &'static str, params: Map<String, Value>) -> Self {
        Report {
            command,
            params,
            body: Map::new(),
            text: String::new(),
            csv: None,
            latex: None,
            violations: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.as_ref().map(|v| v.is_empty()).unwrap_or(true)
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("params".into(), Value::Object(self.params.clone()));
        for (k, v) in &self.body {
            out.insert(k.clone(), v.clone());
        }
        if let Some(vs) = &self.violations {
            out.insert("passed".into(), json!(vs.is_empty()));
            out.insert("violations".into(), Value::Array(vs.iter().map(Violation::to_json).collect()));
        }
        Value::Object(out)
    }

    fn text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.params {
            out.push_str(&format!("  {k} = {}\n", v.as_str().unwrap_or_default()));
        }
        out.push_str(&self.text);
        if let Some(vs) = &self.violations {
            if vs.is_empty() {
                out.push_str("passed\n");
            } else {
                out.push_str(&format!("failed: {} violations\n", vs.len()));
                for v in vs {
                    out.push_str(&format!("  {} at {}: {}\n", v.check, v.location, v.value));
                }
            }
        }
        out
    }

    /// The report in `format`, or an error if the command has no such rendering.
    pub fn render(&self, format: Format) -> Result<String, String> {
        let unsupported = || format!("{} has no {:?} output", self.command, format).to_lowercase();
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"),
            Format::Text => Ok(self.text()),
            Format::Csv => self.csv.clone().ok_or_else(unsupported),
            Format::Latex => self.latex.clone().ok_or_else(unsupported),
        }
    }
}
