use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Outcome of one command: human text, machine results and the exit code.
///
/// Exit codes: 0 success, 1 negative finding (invalid metric, non-member,
/// falsification, no fixed point), 2 usage or parse error.
#[derive(Debug)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub text: String,
    pub results: Value,
    pub exit_code: u8,
}

impl RunReport {
    pub fn new(command: &str, input_digest: String) -> Self {
        RunReport {
            command: command.to_string(),
            input_digest,
            text: String::new(),
            results: Value::Null,
            exit_code: EXIT_OK,
        }
    }

    pub fn error(mut self, exit_code: u8, message: impl Into<String>) -> Self {
        let message = message.into();
        self.results = json!({ "error": message });
        self.text = format!("error: {message}\n");
        self.exit_code = exit_code;
        self
    }

    /// Prints the report and passes it through. Errors go to standard error
    /// in text mode.
    pub fn emit(self, json: bool) -> Self {
        if json {
            let doc = json!({
                "command": self.command,
                "input_digest": self.input_digest,
                "results": self.results,
                "exit_code": self.exit_code,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        } else if self.results.get("error").is_some() {
            eprint!("{}", self.text);
        } else {
            print!("{}", self.text);
        }
        self
    }
}

/// serde value with map keys in sorted order.
pub fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}
