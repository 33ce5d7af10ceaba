use serde::{Deserialize, Serialize};

/// Outcome of an exact identity check over a finite family of instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub instances: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub degrees_checked: Vec<u32>,
    pub pass: bool,
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>) -> Self {
        VerificationReport {
            identity: identity.into(),
            order: None,
            instances: 0,
            degrees_checked: Vec::new(),
            pass: true,
            witness: None,
        }
    }

    pub fn with_order(mut self, l: usize) -> Self {
        self.order = Some(l);
        self
    }

    /// Record a failure; only the first witness is kept.
    pub fn fail(&mut self, witness: String) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }

    pub fn summary(&self) -> String {
        let scope = match self.order {
            Some(l) => format!("{} (order {l})", self.identity),
            None => self.identity.clone(),
        };
        let status = if self.pass { "pass" } else { "FAIL" };
        let mut s = format!("{scope}: {status}, {} instances", self.instances);
        if !self.degrees_checked.is_empty() {
            s.push_str(&format!(", degrees {:?}", self.degrees_checked));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!("\n  witness: {w}"));
        }
        s
    }
}
