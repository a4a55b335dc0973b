use std::fmt::Write;

/// One output line. The machine form is `key=value` pairs in a fixed order;
/// the human form, when present, renders the same values more readably.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    human: Option<String>,
    fields: Vec<(&'static str, String)>,
}

impl Record {
    pub fn new(fields: Vec<(&'static str, String)>) -> Self {
        Record { human: None, fields }
    }

    pub fn with_human(mut self, text: impl Into<String>) -> Self {
        self.human = Some(text.into());
        self
    }

    pub fn fields(&self) -> &[(&'static str, String)] {
        &self.fields
    }

    pub fn machine(&self) -> String {
        let mut out = String::new();
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{k}={}", quote(v)).expect("writing to a string");
        }
        out
    }

    pub fn human(&self) -> String {
        self.human.clone().unwrap_or_else(|| self.machine())
    }
}

fn quote(v: &str) -> String {
    if !v.is_empty() && !v.contains(|c: char| c.is_whitespace() || c == '"' || c == '=') {
        return v.to_string();
    }
    format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Splits a machine line back into its pairs.
pub fn parse_machine_line(line: &str) -> Option<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut chars = line.trim().chars().peekable();
    while chars.peek().is_some() {
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next()? {
                    '\\' => value.push(chars.next()?),
                    '"' => break,
                    c => value.push(c),
                }
            }
            if chars.next().is_some_and(|c| c != ' ') {
                return None;
            }
        } else {
            value = chars.by_ref().take_while(|&c| c != ' ').collect();
        }
        if key.is_empty() || key.contains(' ') {
            return None;
        }
        out.push((key, value));
    }
    Some(out)
}
