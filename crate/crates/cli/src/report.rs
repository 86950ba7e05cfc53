//! Versioned JSON report envelope and the exit-code contract.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use rk_core::schema::SCHEMA_VERSION;

pub const EXIT_OK: u8 = 0;
pub const EXIT_OTHER: u8 = 1;
pub const EXIT_SCHEMA: u8 = 2;
pub const EXIT_INVALID_ENDO: u8 = 3;
pub const EXIT_NO_LINE: u8 = 4;
pub const EXIT_SURVIVAL: u8 = 5;

pub enum Output {
    Json(Report),
    Svg(String),
}

#[derive(Debug)]
pub struct Failure {
    pub exit: u8,
    pub command: String,
    pub message: String,
    pub details: Value,
}

impl Failure {
    pub fn new(exit: u8, command: &str, message: impl Into<String>) -> Self {
        Self { exit, command: command.into(), message: message.into(), details: Value::Null }
    }

    pub fn schema(command: &str, message: impl std::fmt::Display) -> Self {
        Self::new(EXIT_SCHEMA, command, message.to_string())
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

pub struct Report {
    pub exit: u8,
    value: Value,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: &str, input: &[u8], ctx: &crate::Ctx, result: Value) -> Self {
        let value = json!({
            "schema": SCHEMA_VERSION,
            "command": command,
            "input_sha256": digest(input),
            "seed": ctx.seed,
            "bits": ctx.bits,
            "result": result,
        });
        Self { exit: EXIT_OK, value }
    }

    pub fn with_exit(mut self, exit: u8) -> Self {
        self.exit = exit;
        self
    }

    pub fn failure(f: &Failure) -> Self {
        let value = json!({
            "schema": SCHEMA_VERSION,
            "command": f.command,
            "error": {"exit": f.exit, "message": f.message, "details": f.details},
        });
        Self { exit: f.exit, value }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("JSON values serialize")
    }
}

/// Membership and three-valued truth as report strings.
pub fn membership(m: rk_core::tri::Membership) -> &'static str {
    use rk_core::tri::Membership::*;
    match m {
        In => "in",
        Out => "out",
        Boundary => "uncertain",
    }
}

pub fn tri(t: rk_core::tri::Tri) -> &'static str {
    use rk_core::tri::Tri::*;
    match t {
        True => "true",
        False => "false",
        Uncertain => "uncertain",
    }
}
