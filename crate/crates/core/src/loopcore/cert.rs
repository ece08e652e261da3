use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const CERTIFICATE_VERSION: u32 = 1;

/// One named check with its verdict and a concrete witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
    /// Elapsed milliseconds; cleared before serialization unless timings are requested.
    pub ms: Option<u64>,
}

/// A list of named checks. The overall verdict is their conjunction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub artifact: String,
    pub version: u32,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(default)]
    pub summary: BTreeMap<String, Value>,
}

impl Certificate {
    pub fn new(artifact: impl Into<String>) -> Certificate {
        Certificate {
            artifact: artifact.into(),
            version: CERTIFICATE_VERSION,
            params: BTreeMap::new(),
            checks: Vec::new(),
            pass: true,
            summary: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    pub fn record(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) -> bool {
        self.push(Check {
            name: name.into(),
            pass,
            witness: witness.into(),
            ms: None,
        });
        pass
    }

    /// Runs `f`, recording its verdict, witness and elapsed time.
    pub fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> (bool, String)) -> bool {
        let start = Instant::now();
        let (pass, witness) = f();
        self.push(Check {
            name: name.into(),
            pass,
            witness,
            ms: Some(start.elapsed().as_millis() as u64),
        });
        pass
    }

    /// Records an equality between a measured and an expected value.
    pub fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, actual: T, expected: T) -> bool {
        let pass = actual == expected;
        let witness = if pass {
            format!("{actual:?}")
        } else {
            format!("expected {expected:?}, got {actual:?}")
        };
        self.record(name, pass, witness)
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Certificate) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.ms = None;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", c.name)?;
            if !c.witness.is_empty() {
                write!(f, ": {}", c.witness)?;
            }
            writeln!(f)?;
        }
        write!(f, "{}: {}", self.artifact, if self.pass { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_conjunction() {
        let mut c = Certificate::new("t");
        assert!(c.passed());
        c.record("a", true, "");
        c.expect_eq("b", 3, 3);
        assert!(c.passed());
        c.expect_eq("c", 2, 3);
        assert!(!c.passed());
        assert_eq!(c.check("c").unwrap().witness, "expected 3, got 2");
        assert_eq!(c.failures().count(), 1);
    }

    #[test]
    fn json_round_trip_without_timings() {
        let mut c = Certificate::new("t");
        c.run("timed", || (true, "w".into()));
        c.param("k", 1).summary("order", 96);
        c.strip_timings();
        let back: Certificate = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(c.to_json().contains("\"ms\": null"));
    }
}
