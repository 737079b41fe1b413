use std::fmt::Display;

use serde::{Deserialize, Serialize};

/// One expected-vs-computed comparison. Values are compared by their
/// canonical string form, so re-parsing a serialized check and comparing the
/// two strings reproduces `pass`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Display, computed: impl Display) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        Self {
            name: name.into(),
            pass: expected == computed,
            expected,
            computed,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, true, ok)
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
