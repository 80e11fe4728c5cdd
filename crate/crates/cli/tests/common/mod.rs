#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub doc: Value,
}

impl Run {
    pub fn payload(&self) -> &Value {
        &self.doc["payload"]
    }

    pub fn error_code(&self) -> &str {
        self.doc["error"]["code"].as_str().unwrap()
    }
}

/// Runs `socc` with `args`, feeding `input` on standard input.
pub fn socc(args: &[&str], input: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_socc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {stdout}"));
    Run {
        code: out.status.code().unwrap(),
        stdout,
        stderr: String::from_utf8(out.stderr).unwrap(),
        doc,
    }
}

pub fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|a| a.as_f64().unwrap()).collect()
}

pub const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The boundary-boundary worked example with a given cone.
pub fn bd_bd_query(cone: &str) -> String {
    format!(
        r#"{{"m":3,"x":[1,{S},{S}],"y":[2,{},{}],"u":[{S},-1,0],"v":[{},0,0.5],"cone":"{cone}"}}"#,
        -2.0 * S,
        -2.0 * S,
        S / 2.0
    )
}
