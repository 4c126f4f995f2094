use serde_json::{json, Map, Value};
use trellis_core::tnorm::{Flag, TnormReport};
use trellis_core::{BinaryOpTable, ElementSet, Psoset};

use crate::{Cli, Command, EXIT_INPUT, EXIT_LIMIT, EXIT_PRECONDITION};

pub const SCHEMA: &str = "trellis-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// Unreadable file, malformed document or unknown label.
    Input,
    /// The input is well formed but the operation does not apply to it.
    Precondition,
    /// A search cap or limit stopped the command.
    Limit,
}

impl FailureKind {
    fn label(self) -> &'static str {
        match self {
            FailureKind::Input => "input",
            FailureKind::Precondition => "precondition",
            FailureKind::Limit => "limit",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure { kind: FailureKind::Input, message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Failure {
        Failure { kind: FailureKind::Precondition, message: message.into() }
    }

    pub fn limit(message: impl Into<String>) -> Failure {
        Failure { kind: FailureKind::Limit, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            FailureKind::Input => EXIT_INPUT,
            FailureKind::Precondition => EXIT_PRECONDITION,
            FailureKind::Limit => EXIT_LIMIT,
        }
    }
}

/// Text lines and JSON fields collected side by side.
#[derive(Debug, Default)]
pub struct Report {
    pub command: &'static str,
    lines: Vec<String>,
    data: Map<String, Value>,
    pub violations: bool,
    pub failure: Option<Failure>,
}

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Classify { .. } => "classify",
        Command::Structure { .. } => "structure",
        Command::Construct { .. } => "construct",
        Command::Enumerate { .. } => "enumerate",
        Command::VerifyPaper => "verify-paper",
    }
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report { command, ..Report::default() }
    }

    pub fn from_failure(cli: &Cli, f: &Failure) -> Report {
        Report { failure: Some(f.clone()), ..Report::new(command_name(&cli.command)) }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(self.command));
        m.insert("ok".into(), json!(!self.violations && self.failure.is_none()));
        for (k, v) in &self.data {
            m.insert(k.clone(), v.clone());
        }
        if let Some(f) = &self.failure {
            m.insert("error".into(), json!({ "kind": f.kind.label(), "message": f.message }));
        }
        Value::Object(m)
    }
}

pub fn names_of(p: &Psoset, s: ElementSet) -> Value {
    json!(s.iter().map(|x| p.name(x)).collect::<Vec<_>>())
}

pub fn table_json(p: &Psoset, t: &BinaryOpTable) -> Value {
    json!(t.rows().map(|r| r.iter().map(|&v| p.name(v)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn table_lines(p: &Psoset, t: &BinaryOpTable) -> Vec<String> {
    t.render(p).lines().map(|l| format!("  {l}")).collect()
}

fn flag_text(p: &Psoset, f: &Flag) -> String {
    match f {
        Flag::Holds => "yes".into(),
        Flag::Fails(w) => format!("no {}", w.render(p)),
        Flag::NotApplicable => "n/a".into(),
    }
}

fn flag_json(p: &Psoset, f: &Flag) -> Value {
    match f {
        Flag::Holds => json!({ "holds": true }),
        Flag::Fails(w) => json!({
            "holds": false,
            "witness": w.elements().into_iter().map(|x| p.name(x)).collect::<Vec<_>>(),
        }),
        Flag::NotApplicable => json!({ "holds": null }),
    }
}

pub fn tnorm_report(rep: &mut Report, p: &Psoset, r: &TnormReport) -> Value {
    let mut m = Map::new();
    for (name, f) in r.entries() {
        rep.line(format!("  {name:<17} {}", flag_text(p, &f)));
        m.insert(name.to_string(), flag_json(p, &f));
    }
    rep.line(format!("  {:<17} {}", "t-norm", if r.is_tnorm() { "yes" } else { "no" }));
    m.insert("is_tnorm".into(), json!(r.is_tnorm()));
    Value::Object(m)
}
