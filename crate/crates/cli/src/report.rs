//! Line-oriented `key=value` run reports.

use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    /// A report whose first line echoes the command.
    pub fn new(command: &str) -> Report {
        let mut r = Report::default();
        r.push("command", command);
        r
    }

    /// Appends `key=value`. Newlines in the value become spaces so every
    /// entry stays on one line.
    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.entries.push((key.to_string(), value.to_string().replace('\n', " ")));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
