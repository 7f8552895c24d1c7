//! Helpers for driving the built binary and its HTTP service from tests.
//! Each integration-test target compiles its own copy, so not every helper
//! is used everywhere.
#![allow(dead_code)]

use std::io::{BufRead, BufReader};
use std::path::Path;
use std::process::{Child, Command, Output, Stdio};

pub fn varbench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_varbench"))
}

pub fn run_ok(args: &[&str]) -> Output {
    let output = varbench().args(args).output().expect("binary runs");
    assert!(
        output.status.success(),
        "varbench {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

pub fn stdout_of(args: &[&str]) -> String {
    String::from_utf8(run_ok(args).stdout).unwrap()
}

/// A `varbench serve` child bound to an ephemeral port; killed on drop.
pub struct ServerGuard {
    child: Child,
    pub base: String,
}

impl ServerGuard {
    pub fn spawn(extra_args: &[&str]) -> ServerGuard {
        let mut child = varbench()
            .args(["serve", "--bind", "127.0.0.1:0"])
            .args(extra_args)
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .expect("serve starts");
        let stdout = child.stdout.take().unwrap();
        let mut line = String::new();
        BufReader::new(stdout).read_line(&mut line).expect("serve announces its address");
        let base = line
            .trim()
            .strip_prefix("listening on ")
            .unwrap_or_else(|| panic!("unexpected serve banner: {line:?}"))
            .to_string();
        ServerGuard { child, base }
    }

    /// POST JSON; returns (status, body) for both success and error statuses.
    pub fn post(&self, path: &str, body: serde_json::Value) -> (u16, serde_json::Value) {
        let url = format!("{}{}", self.base, path);
        match ureq::post(&url).send_json(body) {
            Ok(response) => {
                let status = response.status();
                (status, response.into_json().expect("json body"))
            }
            Err(ureq::Error::Status(status, response)) => {
                (status, response.into_json().unwrap_or(serde_json::json!({})))
            }
            Err(e) => panic!("transport failure to {url}: {e}"),
        }
    }

    pub fn get(&self, path: &str) -> (u16, serde_json::Value) {
        let url = format!("{}{}", self.base, path);
        match ureq::get(&url).call() {
            Ok(response) => {
                let status = response.status();
                (status, response.into_json().expect("json body"))
            }
            Err(ureq::Error::Status(status, response)) => {
                (status, response.into_json().unwrap_or(serde_json::json!({})))
            }
            Err(e) => panic!("transport failure to {url}: {e}"),
        }
    }
}

impl Drop for ServerGuard {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

pub fn read_bytes(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}
