use std::fmt;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of one command.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub command: String,
    pub verdict: Verdict,
    /// Identifier of the violated condition when the verdict is not `holds`.
    pub condition: Option<String>,
    /// Witness on success, counterexample on failure; one item per line.
    pub witness: Vec<String>,
    pub notes: Vec<String>,
    pub config: Vec<(String, String)>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn new(command: &str, verdict: Verdict) -> Self {
        Self {
            command: command.to_string(),
            verdict,
            condition: None,
            witness: Vec::new(),
            notes: Vec::new(),
            config: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn condition(mut self, id: impl Into<String>) -> Self {
        self.condition = Some(id.into());
        self
    }

    pub fn witness_lines(mut self, text: &str) -> Self {
        self.witness.extend(text.lines().map(str::to_string));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn config(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    /// The report without timing; identical across runs on the same input.
    pub fn render_body(&self) -> String {
        let mut out = format!("command: {}\nverdict: {}\n", self.command, self.verdict);
        if let Some(c) = &self.condition {
            out += &format!("condition: {c}\n");
        }
        if !self.witness.is_empty() {
            let label = if self.verdict == Verdict::Holds { "witness" } else { "counterexample" };
            out += &format!("{label}:\n");
            for line in &self.witness {
                out += &format!("  {line}\n");
            }
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        if !self.config.is_empty() {
            let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out += &format!("config: {}\n", cfg.join(" "));
        }
        out
    }

    pub fn render(&self) -> String {
        format!("{}time: {:.3} ms\n", self.render_body(), self.elapsed.as_secs_f64() * 1e3)
    }
}
