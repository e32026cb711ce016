//! JSON substitution files.
//!
//! ```json
//! {
//!   "name": "fibonacci",
//!   "alphabet": ["a", "b"],
//!   "rules": { "a": ["a", "b"], "b": ["a"] },
//!   "expected": { "overlap_coincidence": true, "msc": true }
//! }
//! ```

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::substitution::Substitution;

/// Recorded verdicts for regression checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overlap_coincidence: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub msc: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dekking: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubstitutionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, Vec<String>>,
    /// Kept raw so that a malformed expectation is reported as a fixture
    /// error rather than a parse error of the substitution itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<serde_json::Value>,
}

impl SubstitutionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Validated substitution, letters numbered in alphabet order.
    pub fn substitution(&self) -> Result<Substitution> {
        if self.alphabet.is_empty() {
            return Err(Error::Parse("alphabet is empty".into()));
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, a) in self.alphabet.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(Error::Parse(format!("letter '{a}' is declared twice")));
            }
        }
        if let Some(extra) = self.rules.keys().find(|k| !index.contains_key(k.as_str())) {
            return Err(Error::Parse(format!("rule given for undeclared letter '{extra}'")));
        }
        let mut rules = Vec::with_capacity(self.alphabet.len());
        for a in &self.alphabet {
            let word = self
                .rules
                .get(a)
                .ok_or_else(|| Error::Parse(format!("no rule for letter '{a}'")))?;
            if word.is_empty() {
                return Err(Error::Parse(format!("empty rule for letter '{a}'")));
            }
            let w = word
                .iter()
                .map(|b| {
                    index
                        .get(b.as_str())
                        .copied()
                        .ok_or_else(|| Error::Parse(format!("rule for letter '{a}' uses undeclared letter '{b}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            rules.push(w);
        }
        Substitution::new(rules)
    }

    pub fn expected(&self) -> Result<Option<Expected>> {
        self.expected
            .clone()
            .map(|v| serde_json::from_value(v).map_err(|e| Error::Fixture(format!("expected verdicts: {e}"))))
            .transpose()
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            let rules: Vec<String> = self
                .alphabet
                .iter()
                .map(|a| format!("{a}->{}", self.rules.get(a).map(|w| w.concat()).unwrap_or_default()))
                .collect();
            rules.join(", ")
        })
    }
}
