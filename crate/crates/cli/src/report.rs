use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "torelli-graphs/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub tool_version: &'static str,
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub payload: Value,
}

impl Report {
    pub fn new(command: &'static str, config: Value, payload: Value) -> Self {
        Report { schema: SCHEMA, command, tool_version: TOOL_VERSION, config, timing_ms: None, payload }
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
